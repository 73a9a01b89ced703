//! Library results against independent computations written here from
//! the definitions, with the frozen values they produced.

use num_bigint::BigInt;

use eulerian_forge::algebra::{q_binomial, Polynomial, VarTable};
use eulerian_forge::bijections::{banners, necklaces, two_fix_banners};
use eulerian_forge::eulerqsym::{flag_table, flagq_recurrence};
use eulerian_forge::qeuler::{a_brute, a_recurrence, APoly};
use eulerian_forge::symfunc::SymFuncH;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// All permutations of `1..=n` by Heap's algorithm.
fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            rec(k - 1, a, out);
            let j = if k % 2 == 0 { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    rec(n, &mut a, &mut out);
    out
}

fn eulerian_numbers(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for m in 1..=n {
        let mut next = vec![0i64; m];
        for k in 0..m {
            let keep = if k < row.len() { (k as i64 + 1) * row[k] } else { 0 };
            let grow = if k >= 1 && k - 1 < row.len() { (m - k) as i64 * row[k - 1] } else { 0 };
            next[k] = keep + grow;
        }
        row = next;
    }
    row
}

#[test]
fn classical_eulerian_numbers() {
    for n in 1..=7 {
        let a = a_recurrence(n, 1);
        assert_eq!(APoly::t_coefficients(&a.eulerian()), ints(&eulerian_numbers(n)), "n = {n}");
    }
    assert_eq!(eulerian_numbers(5), [1, 26, 66, 26, 1]);
}

#[test]
fn group_orders_and_colored_derangements() {
    for l in 1..=3usize {
        for n in 0..=6usize {
            let a = a_recurrence(n, l);
            let fact: i64 = (1..=n as i64).product();
            let order = (l as i64).pow(n as u32) * fact;
            assert_eq!(a.poly.evaluate(&[1, 1, 1]), BigInt::from(order));
            let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
            let derangements: i64 = (0..=n as i64)
                .map(|k| {
                    let rest: i64 = (1..=n as i64 - k).product();
                    (-1i64).pow(k as u32) * binom(n as i64, k) * (l as i64).pow((n as i64 - k) as u32) * rest
                })
                .sum();
            assert_eq!(a.poly.evaluate(&[1, 0, 1]), BigInt::from(derangements), "n = {n}, l = {l}");
        }
    }
}

/// `d_n^B(t)` by direct enumeration of signed permutations: a letter `π_j`
/// is an excedance when positive with `π_j > j`, and `fexc = 2 exc + #neg`.
fn type_b_derangement_polynomial(n: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; 2 * n + 1];
    for p in heap_permutations(n) {
        for signs in 0..1u32 << n {
            let neg = |j: usize| signs >> j & 1 == 1;
            if (0..n).any(|j| !neg(j) && p[j] == j + 1) {
                continue;
            }
            let exc = (0..n).filter(|&j| !neg(j) && p[j] > j + 1).count();
            let negs = signs.count_ones() as usize;
            coeffs[2 * exc + negs] += 1;
        }
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

#[test]
fn type_b_derangements() {
    assert_eq!(type_b_derangement_polynomial(4), [0, 1, 15, 57, 87, 57, 15, 1]);
    for n in 1..=6 {
        let a = a_recurrence(n, 2);
        let d = a.poly.specialize(1, 0).specialize(2, 1);
        assert_eq!(APoly::t_coefficients(&d), ints(&type_b_derangement_polynomial(n)), "n = {n}");
    }
}

#[test]
fn small_polynomials_frozen() {
    assert_eq!(a_brute(1, 2).poly.to_string(), "r+t");
    let table = VarTable::new(["t", "r", "q"]);
    let (t, r) = (table.var("t"), table.var("r"));
    let a2 = &r.pow(2) + &t;
    assert_eq!(a_brute(2, 1).poly, a2);
    // A_3 for l = 1: 123 ↦ r^3, 132 ↦ trq, 213 ↦ tr, 321 ↦ trq^2, 231 ↦ t^2, 312 ↦ t.
    let brute = a_brute(3, 1).poly;
    let by_hand = [((0, 3, 0), 1), ((1, 1, 0), 1), ((1, 1, 1), 1), ((1, 1, 2), 1), ((2, 0, 0), 1), ((1, 0, 0), 1)];
    let hand = by_hand.iter().fold(Polynomial::zero(&table), |acc, &((e, f, m), c)| {
        &acc + &Polynomial::monomial(&table, vec![e, f, m], c)
    });
    assert_eq!(brute.evaluate(&[1, 1, 1]), BigInt::from(6));
    assert_eq!(brute, hand, "{brute}");
}

#[test]
fn flag_q_frozen() {
    let table = flag_table();
    let (t, r) = (table.var("t"), table.var("r"));
    let q2 = flagq_recurrence(2, 1);
    assert_eq!(q2.total, SymFuncH::h(&table, 2).scale(&(&r.pow(2) + &t)));
    let q2b = flagq_recurrence(2, 2);
    assert_eq!(q2b.total.homogeneous_degree(), Some(2));
    let sum: BigInt = q2b.total.terms().map(|(_, c)| c.evaluate(&[1, 1])).sum();
    assert_eq!(sum, BigInt::from(6));
}

#[test]
fn q_binomials_at_one_and_pascal() {
    let table = VarTable::new(["q"]);
    let q = table.var("q");
    for n in 0..=7usize {
        for k in 0..=n {
            let b = q_binomial(&table, 0, n, k as i64).unwrap();
            let plain = (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1));
            assert_eq!(b.evaluate(&[1]), BigInt::from(plain));
            if n >= 1 && k >= 1 && k < n {
                let lhs = &q_binomial(&table, 0, n - 1, k as i64 - 1).unwrap()
                    + &(&q.pow(k as u32) * &q_binomial(&table, 0, n - 1, k as i64).unwrap());
                assert_eq!(b, lhs);
            }
        }
    }
}

#[test]
fn enumeration_counts_frozen() {
    // Banners with l = 1 over values {1, 2}: words over 1 < 1̄ < 2 < 2̄ with
    // a barred letter never last and never followed by a larger value.
    let counts: Vec<usize> = (1..=3).map(|n| banners(n, 1, 2).len()).collect();
    let brute: Vec<usize> = (1..=3)
        .map(|n| {
            (0..4usize.pow(n as u32))
                .filter(|&code| {
                    let w: Vec<(usize, bool)> = (0..n).map(|i| {
                        let x = code / 4usize.pow(i as u32) % 4;
                        (x / 2 + 1, x % 2 == 1)
                    }).collect();
                    let last_ok = !w[n - 1].1;
                    last_ok && w.windows(2).all(|p| if p[0].1 { p[0].0 >= p[1].0 } else { p[0].0 <= p[1].0 })
                })
                .count()
        })
        .collect();
    assert_eq!(counts, brute);
    assert_eq!(counts, [2, 6, 18]);
    assert_eq!(necklaces(1, 1, 2).len(), 2);
    // (ω₀, ω₀′) lengths (0,0): 3 + 1, (1,0), (0,1), (2,0), (1,1): one each.
    assert_eq!(two_fix_banners(2, 1, 2).len(), 8);
}
