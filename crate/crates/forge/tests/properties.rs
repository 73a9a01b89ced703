use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use eulerian_forge::algebra::{Polynomial, TruncatedSeries, VarTable};
use eulerian_forge::bijections::{
    banner_to_word_f, banners, is_banner, lyndon_factorize, necklaces, psi_inverse, psi_necklace,
    theta_banner, word_to_banner_f,
};
use eulerian_forge::perm::ColoredPermutation;
use eulerian_forge::stats::{
    colored_stats, descent_set, fdes_abs, hook_factorize, is_colored_hook, rawlings_stats,
};

fn colored_permutation() -> impl Strategy<Value = ColoredPermutation> {
    (1usize..=8, 1usize..=4)
        .prop_flat_map(|(n, l)| {
            (
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(0..l, n),
                Just(l),
            )
        })
        .prop_map(|(values, colors, l)| ColoredPermutation::new(l, values, colors).unwrap())
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..5).prop_map(|terms| {
        let table = VarTable::new(["x", "y"]);
        terms.into_iter().fold(Polynomial::zero(&table), |acc, ((a, b), c)| {
            &acc + &Polynomial::monomial(&table, vec![a, b], c)
        })
    })
}

fn rev_lex(a: &[u8], b: &[u8]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.cmp(x) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

proptest! {
    #[test]
    fn flag_statistics(pi in colored_permutation()) {
        let s = colored_stats(&pi);
        let exc = (0..pi.len()).filter(|&j| pi.colors()[j] == 0 && pi.values()[j] > j + 1).count();
        prop_assert_eq!(s.exc, exc);
        prop_assert_eq!(s.fexc, pi.l() * s.exc + pi.color_sum());
        prop_assert_eq!(s.fmaj, pi.l() * s.maj + pi.color_sum());
        prop_assert_eq!(s.maj, descent_set(&pi).iter().sum::<usize>());
        prop_assert_eq!(s.fixvec[0], s.fix);
        prop_assert_eq!(s.fixvec.len(), pi.l());
    }

    #[test]
    fn inverse_is_an_involution(pi in colored_permutation()) {
        let inv = pi.inverse();
        prop_assert_eq!(inv.inverse(), pi.clone());
        prop_assert_eq!(inv.color_sum() % pi.l(), (pi.l() * pi.len() - pi.color_sum()) % pi.l());
    }

    #[test]
    fn hook_factorization_reassembles(pi in colored_permutation()) {
        let f = hook_factorize(&pi);
        prop_assert_eq!(f.concat(), pi.letters().collect::<Vec<_>>());
        prop_assert!(f.prefix.iter().all(|x| x.color == 0));
        prop_assert!(f.prefix.windows(2).all(|p| p[0].value < p[1].value));
        prop_assert!(f.hooks.iter().all(|h| is_colored_hook(h)));
    }

    #[test]
    fn gap_one_rawlings_is_absolute_descents(pi in colored_permutation()) {
        let r = rawlings_stats(&pi, 1).unwrap();
        let abs: Vec<usize> = (1..pi.len()).filter(|&i| pi.values()[i - 1] > pi.values()[i]).collect();
        prop_assert_eq!(r.small_inversions, 0);
        prop_assert_eq!(r.maj, abs.iter().sum::<usize>());
        prop_assert_eq!(r.descents, abs);
        prop_assert!(fdes_abs(&pi).1 >= pi.color_sum());
    }

    #[test]
    fn cycle_type_has_full_size(pi in colored_permutation()) {
        let cv = pi.cv_cycle_type();
        prop_assert_eq!(cv.size(), pi.len());
        prop_assert_eq!(cv.total_color_vector(), pi.color_vector());
    }

    #[test]
    fn word_map_round_trip(l in 1usize..=3, w in proptest::collection::vec(0usize..10, 0..9)) {
        let b = word_to_banner_f(&w, l).unwrap();
        prop_assert!(is_banner(&b));
        prop_assert_eq!(banner_to_word_f(&b, l).unwrap(), w);
    }

    #[test]
    fn theta_is_an_involution(n in 1usize..=5, l in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let all = banners(n, l, 3);
        let b = &all[pick.index(all.len())];
        let t = theta_banner(b, l).unwrap();
        prop_assert!(is_banner(&t));
        prop_assert_eq!(&theta_banner(&t, l).unwrap(), b);
    }

    #[test]
    fn psi_inverse_undoes_psi(n in 1usize..=6, l in 1usize..=2, k in 1usize..=2, pick in any::<prop::sample::Index>()) {
        let all = necklaces(n, l, 3);
        prop_assume!(!all.is_empty());
        let r = &all[pick.index(all.len())];
        let image = psi_necklace(r, k);
        prop_assert_eq!(image.value_count(k), r.value_count(k + 1));
        prop_assert_eq!(image.value_count(k + 1), r.value_count(k));
        prop_assert_eq!(&psi_inverse(&image, k), r);
        prop_assert_eq!(&psi_necklace(&psi_inverse(r, k), k), r);
    }

    #[test]
    fn lyndon_factorization(w in proptest::collection::vec(0u8..4, 0..12)) {
        let factors = lyndon_factorize(&w, |a, b| a.cmp(b));
        prop_assert_eq!(factors.concat(), w);
        for f in &factors {
            for s in 1..f.len() {
                let rot: Vec<u8> = f[s..].iter().chain(&f[..s]).copied().collect();
                prop_assert!(rot < *f, "{:?} is not strictly above its rotation {:?}", f, rot);
            }
        }
        for p in factors.windows(2) {
            prop_assert_ne!(rev_lex(&p[0], &p[1]), Ordering::Less);
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(
        a in small_poly(),
        b in small_poly(),
        low in proptest::collection::vec(-3i64..=3, 0..3),
        x in -3i64..=3,
        y in -3i64..=3,
    ) {
        let at = |p: &Polynomial| p.evaluate(&[x, y]);
        prop_assert_eq!(at(&(&a + &b)), at(&a) + at(&b));
        prop_assert_eq!(at(&(&a * &b)), at(&a) * at(&b));
        let table = a.table().clone();
        let monic = low.iter().enumerate().fold(
            Polynomial::monomial(&table, vec![low.len() as u32, 0], 1),
            |acc, (i, &c)| &acc + &Polynomial::monomial(&table, vec![i as u32, 0], c),
        );
        prop_assert_eq!((&a * &monic).div_exact(&monic).unwrap(), a);
    }

    #[test]
    fn series_inverse(tail in proptest::collection::vec(small_poly(), 0..5)) {
        let table = VarTable::new(["x", "y"]);
        let cap = 5;
        let mut coeffs = vec![Polynomial::one(&table)];
        coeffs.extend(tail);
        let s = TruncatedSeries::new(coeffs, cap, &Polynomial::zero(&table));
        let product = s.mul(&s.invert().unwrap());
        prop_assert_eq!(product.coeff(0).evaluate(&[0, 0]), BigInt::from(1));
        prop_assert!(product.coeff(0).is_constant());
        prop_assert!((1..=cap).all(|i| product.coeff(i).is_zero()));
    }
}
