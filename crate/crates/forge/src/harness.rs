//! Exhaustive property checks for the maps in [`crate::bijections`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Polynomial, VarTable};
use crate::bijections::{
    banner_counts, banner_fstat, banner_to_word_f, banners, is_banner, is_valid_necklace, lyndon_factorize,
    necklaces, phi_twofix, psi_inverse, psi_necklace, show_word, theta_banner, two_fix_banners, upsilon,
    upsilon_inverse, word_to_banner_f, Banner, BannerLetter, Necklace,
};
use crate::report::Verdict;

fn first_failure<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<Value> + Sync + Send) -> Option<Value> {
    items.par_iter().find_map_first(check)
}

fn value_multiset(w: &[BannerLetter]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for x in w {
        *m.entry(x.value).or_insert(0) += 1;
    }
    m
}

/// ψ on all necklaces of length `1..=max_len` and every admissible `k`.
///
/// Bijectivity is checked through [`psi_inverse`]; the involution property
/// ψ∘ψ = id is reported separately.
pub fn verify_psi(max_len: usize, l: usize, max_value: usize) -> Vec<Verdict> {
    let mut domain = Vec::new();
    for n in 1..=max_len {
        for r in necklaces(n, l, max_value) {
            for k in 1..max_value {
                domain.push((r.clone(), k));
            }
        }
    }
    let exchange = first_failure(&domain, |(r, k)| {
        let image = psi_necklace(r, *k);
        let (bars, col) = banner_counts(r.letters(), l);
        let (bars2, col2) = banner_counts(image.letters(), l);
        let counts_ok = (1..=max_value).all(|v| {
            let expected = if v == *k {
                r.value_count(k + 1)
            } else if v == k + 1 {
                r.value_count(*k)
            } else {
                r.value_count(v)
            };
            image.value_count(v) == expected
        });
        let valid = is_valid_necklace(image.letters()) && Necklace::new(image.letters().to_vec()).is_ok();
        (!(valid && counts_ok && bars == bars2 && col == col2))
            .then(|| json!({"necklace": r.to_string(), "k": k, "image": image.to_string()}))
    });
    let inverse = first_failure(&domain, |(r, k)| {
        let back = psi_inverse(&psi_necklace(r, *k), *k);
        let forth = psi_necklace(&psi_inverse(r, *k), *k);
        (back != *r || forth != *r).then(|| json!({"necklace": r.to_string(), "k": k}))
    });
    let involution = first_failure(&domain, |(r, k)| {
        let image = psi_necklace(r, *k);
        let twice = psi_necklace(&image, *k);
        (twice != *r).then(|| {
            json!({"necklace": r.to_string(), "k": k, "image": image.to_string(), "twice": twice.to_string()})
        })
    });
    let params = format!("n <= {max_len}, l = {l}, values <= {max_value}");
    vec![
        Verdict::from_check(format!("psi exchanges k/k+1 counts, keeps bars and colors ({params})"), exchange),
        Verdict::from_check(format!("psi is a bijection with inverse psi_inverse ({params})"), inverse),
        Verdict::from_check(format!("psi o psi = id ({params})"), involution),
        verify_ornament_symmetry(max_len, l, max_value),
    ]
}

fn ornament_table(l: usize, max_value: usize) -> VarTable {
    let mut names = vec!["t".to_string()];
    names.extend((1..l).map(|m| format!("c{m}")));
    names.extend((1..=max_value).map(|v| format!("x{v}")));
    VarTable::new(names)
}

fn necklace_weight(r: &Necklace, l: usize, max_value: usize, table: &VarTable) -> Polynomial {
    let (bars, col) = banner_counts(r.letters(), l);
    let mut exps = vec![bars as u32];
    exps.extend(col.iter().map(|&c| c as u32));
    exps.extend((1..=max_value).map(|v| r.value_count(v) as u32));
    Polynomial::monomial(table, exps, 1)
}

/// Generating polynomial of ornaments of total length `<= max_len`.
pub fn ornament_polynomial(max_len: usize, l: usize, max_value: usize) -> Polynomial {
    let table = ornament_table(l, max_value);
    let xs: Vec<usize> = (l..l + max_value).collect();
    let mut total = Polynomial::one(&table);
    for n in 1..=max_len {
        for r in necklaces(n, l, max_value) {
            let w = necklace_weight(&r, l, max_value, &table);
            let mut factor = Polynomial::one(&table);
            let mut power = Polynomial::one(&table);
            for _ in 0..max_len / n {
                power = power.mul_truncated(&w, &xs, max_len as u32);
                factor = factor.checked_add(&power).expect("same table");
            }
            total = total.mul_truncated(&factor, &xs, max_len as u32);
        }
    }
    total
}

/// The ornament polynomial is invariant under swapping `x_k` and `x_{k+1}`.
pub fn verify_ornament_symmetry(max_len: usize, l: usize, max_value: usize) -> Verdict {
    let poly = ornament_polynomial(max_len, l, max_value);
    let failure = (1..max_value).find_map(|k| {
        let (a, b) = (l + k - 1, l + k);
        let swapped = Polynomial::from_terms(
            poly.table(),
            poly.terms().map(|(e, c)| {
                let mut e = e.to_vec();
                e.swap(a, b);
                (e, c.clone())
            }),
        );
        (swapped != poly).then(|| json!({"k": k}))
    });
    Verdict::from_check(
        format!("ornament polynomial symmetric in the values (n <= {max_len}, l = {l}, values <= {max_value})"),
        failure,
    )
}

/// θ on all banners of length `1..=max_len`.
pub fn verify_theta(max_len: usize, l: usize, max_value: usize) -> Vec<Verdict> {
    let domain: Vec<Banner> = (1..=max_len).flat_map(|n| banners(n, l, max_value)).collect();
    let failure = first_failure(&domain, |b| {
        let n = b.len();
        let image = match theta_banner(b, l) {
            Ok(x) => x,
            Err(e) => return Some(json!({"banner": show_word(b), "error": e.to_string()})),
        };
        let back = theta_banner(&image, l).ok();
        let mults: Vec<usize> = value_multiset(b).into_values().collect();
        let mut mults2: Vec<usize> = value_multiset(&image).into_values().collect();
        mults2.reverse();
        let values: BTreeSet<usize> = b.iter().map(|x| x.value).collect();
        let values2: BTreeSet<usize> = image.iter().map(|x| x.value).collect();
        let ok = is_banner(&image)
            && back.as_deref() == Some(b.as_slice())
            && banner_fstat(b, l) + banner_fstat(&image, l) == l * n - 1
            && mults == mults2
            && values == values2;
        (!ok).then(|| json!({"banner": show_word(b), "image": show_word(&image)}))
    });
    vec![Verdict::from_check(
        format!("theta involution, fstat complement, value reversal (n <= {max_len}, l = {l}, values <= {max_value})"),
        failure,
    )]
}

/// Φ on all two-fix-banners of length `2..=max_len`.
pub fn verify_phi(max_len: usize, l: usize, max_value: usize) -> Vec<Verdict> {
    let domain: Vec<_> = (2..=max_len)
        .flat_map(|n| two_fix_banners(n, max_value, l))
        .filter(|v| v.fexc(l) != l * v.len() - 1)
        .collect();
    let failure = first_failure(&domain, |v| {
        let n = v.len();
        let image = match phi_twofix(v, l) {
            Ok(x) => x,
            Err(e) => return Some(json!({"banner": format!("{v:?}"), "error": e.to_string()})),
        };
        let mut letters = v.letters();
        let mut letters2 = image.letters();
        letters.sort_unstable();
        letters2.sort_unstable();
        let ok = image.validate(l).is_ok()
            && image.len() == n
            && phi_twofix(&image, l).ok().as_ref() == Some(v)
            && v.fexc(l) + image.fexc(l) == l * n - 2
            && letters == letters2;
        (!ok).then(|| json!({"banner": format!("{v:?}"), "image": format!("{image:?}")}))
    });
    vec![Verdict::from_check(
        format!(
            "Phi involution, fexc complement, weight preserved ({} two-fix-banners, n <= {max_len}, l = {l}, values <= {max_value})",
            domain.len()
        ),
        failure,
    )]
}

/// Υ round trip on all banners of length `1..=max_len` with a positively
/// colored final head.
pub fn verify_upsilon(max_len: usize, l: usize, max_value: usize) -> Vec<Verdict> {
    let domain: Vec<(Banner, (Banner, crate::bijections::MarkedSequence))> = (1..=max_len)
        .flat_map(|n| banners(n, l, max_value))
        .filter_map(|b| upsilon(&b).ok().map(|image| (b, image)))
        .collect();
    let failure = first_failure(&domain, |(b, (rest, seq))| {
        let mut weight = value_multiset(rest);
        *weight.entry(seq.word[0]).or_insert(0) += 1;
        let (_, col) = banner_counts(b, l);
        let (_, mut col2) = banner_counts(rest, l);
        col2[seq.color - 1] += 1;
        let ok = is_banner(rest)
            && rest.len() + 1 == b.len()
            && upsilon_inverse(rest, seq).ok().as_ref() == Some(b)
            && weight == value_multiset(b)
            && col == col2;
        (!ok).then(|| json!({"banner": show_word(b), "rest": show_word(rest), "sequence": format!("{seq:?}")}))
    });
    let identity = format!(
        "Upsilon round trip, weight and colors kept ({} banners, n <= {max_len}, l = {l}, values <= {max_value})",
        domain.len()
    );
    if domain.is_empty() {
        return vec![Verdict::fail(identity, json!("empty domain"))];
    }
    vec![Verdict::from_check(identity, failure)]
}

fn words(len: usize, max_letter: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (0..=max_letter).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

/// The map `f` on all words of length `1..=max_len` over `[0, 2l]`.
pub fn verify_word_map(max_len: usize, l: usize) -> Vec<Verdict> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let domain = words(n, 2 * l);
        let images: Vec<Option<Banner>> = domain.par_iter().map(|w| word_to_banner_f(w, l).ok()).collect();
        let round = domain.iter().zip(&images).find_map(|(w, b)| {
            let ok = b.as_ref().is_some_and(|b| {
                let bars = b.iter().filter(|x| x.barred).count();
                let dec = crate::bijections::decrease_flags(w);
                let zero_dec = w.iter().zip(&dec).filter(|(&x, &d)| d && x % l == 0).count();
                let colors: Vec<usize> = w.iter().map(|x| x % l).collect();
                let colors2: Vec<usize> = b.iter().map(|x| x.color).collect();
                let lens = |fs: Vec<Vec<usize>>| fs.iter().map(Vec::len).collect::<Vec<_>>();
                let natural = lyndon_factorize(w, |a, b| a.cmp(b));
                let banner_type: Vec<usize> = lyndon_factorize(b, |x, y| x.cmp(y)).iter().map(Vec::len).collect();
                is_banner(b)
                    && banner_to_word_f(b, l).ok().as_ref() == Some(w)
                    && bars == zero_dec
                    && colors == colors2
                    && lens(natural) == banner_type
            });
            (!ok).then(|| json!({"word": w}))
        });
        let image_set: BTreeSet<&Banner> = images.iter().flatten().collect();
        let target: Vec<Banner> = banners(n, l, 3)
            .into_iter()
            .filter(|b| banner_to_word_f(b, l).is_ok_and(|w| w.iter().all(|&x| x <= 2 * l)))
            .collect();
        let onto = (image_set.len() != domain.len() || target.len() != domain.len() || target.iter().any(|b| !image_set.contains(b)))
            .then(|| json!({"n": n, "words": domain.len(), "images": image_set.len(), "banners": target.len()}));
        out.push(Verdict::from_check(
            format!("f inverts, keeps bars, colors and Lyndon type (n = {n}, l = {l})"),
            round,
        ));
        out.push(Verdict::from_check(format!("f is onto bounded banners (n = {n}, l = {l})"), onto));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_domains() {
        for v in verify_theta(3, 2, 2)
            .into_iter()
            .chain(verify_phi(3, 2, 2))
            .chain(verify_upsilon(3, 2, 2))
            .chain(verify_word_map(3, 2))
        {
            assert!(v.passed, "{v:?}");
        }
    }

    #[test]
    fn psi_bijective_small() {
        let vs = verify_psi(3, 2, 2);
        assert!(vs[0].passed && vs[1].passed && vs[3].passed, "{vs:?}");
    }
}
