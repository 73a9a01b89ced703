//! Statistics on colored permutations.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::perm::{color_order_cmp, ColoredLetter, ColoredPermutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatRecord {
    #[serde(rename = "DES")]
    pub descent_set: Vec<usize>,
    pub des: usize,
    pub maj: usize,
    pub exc: usize,
    pub fexc: usize,
    pub fmaj: usize,
    pub fixvec: Vec<usize>,
    pub colvec: Vec<usize>,
    pub fix: usize,
}

/// Descent positions under the color order.
pub fn descent_set(pi: &ColoredPermutation) -> Vec<usize> {
    (1..pi.len())
        .filter(|&i| color_order_cmp(pi.letter(i), pi.letter(i + 1)) == Ordering::Greater)
        .collect()
}

/// Positions `j` with `π_j > j^0` in the color order, i.e. `ε_j = 0` and `|π_j| > j`.
pub fn excedances(pi: &ColoredPermutation) -> usize {
    (1..=pi.len())
        .filter(|&j| pi.colors()[j - 1] == 0 && pi.values()[j - 1] > j)
        .count()
}

/// `fix_m` for `m = 0..l-1`: positions holding `j^m` at position `j`.
pub fn fixed_point_vector(pi: &ColoredPermutation) -> Vec<usize> {
    let mut out = vec![0; pi.l()];
    for (j, letter) in pi.letters().enumerate() {
        if letter.value == j + 1 {
            out[letter.color] += 1;
        }
    }
    out
}

pub fn colored_stats(pi: &ColoredPermutation) -> StatRecord {
    let descent_set = descent_set(pi);
    let maj = descent_set.iter().sum();
    let exc = excedances(pi);
    let fixvec = fixed_point_vector(pi);
    let l = pi.l();
    let sum = pi.color_sum();
    StatRecord {
        des: descent_set.len(),
        descent_set,
        maj,
        exc,
        fexc: l * exc + sum,
        fmaj: l * maj + sum,
        fix: fixvec[0],
        fixvec,
        colvec: pi.color_vector(),
    }
}

/// `maj - exc`, which is never negative.
pub fn maj_minus_exc(pi: &ColoredPermutation) -> usize {
    let maj: usize = descent_set(pi).iter().sum();
    maj - excedances(pi)
}

fn inversions(values: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                count += 1;
            }
        }
    }
    count
}

/// `π = p τ_1 ... τ_r` with `p` increasing and 0-colored and each `τ_i` a
/// colored hook.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookFactorization {
    pub prefix: Vec<ColoredLetter>,
    pub hooks: Vec<Vec<ColoredLetter>>,
}

impl HookFactorization {
    pub fn concat(&self) -> Vec<ColoredLetter> {
        let mut out = self.prefix.clone();
        for h in &self.hooks {
            out.extend_from_slice(h);
        }
        out
    }
}

/// True when `w` is a colored hook: a hook or an increasing word whose
/// letters after the first are all 0-colored.
pub fn is_colored_hook(w: &[ColoredLetter]) -> bool {
    let Some((head, tail)) = w.split_first() else {
        return false;
    };
    if tail.iter().any(|x| x.color != 0) || tail.windows(2).any(|p| p[0].value > p[1].value) {
        return false;
    }
    match tail.first() {
        Some(second) if head.value > second.value => true,
        _ => head.color != 0,
    }
}

/// Factors colored hooks off the right end until an increasing 0-colored
/// prefix remains.
pub fn hook_factorize(pi: &ColoredPermutation) -> HookFactorization {
    let mut rest: Vec<ColoredLetter> = pi.letters().collect();
    let mut hooks = Vec::new();
    loop {
        let n = rest.len();
        let mut start = n;
        while start > 0
            && rest[start - 1].color == 0
            && (start == n || rest[start - 1].value < rest[start].value)
        {
            start -= 1;
        }
        if start == 0 {
            break;
        }
        hooks.push(rest.split_off(start - 1));
    }
    hooks.reverse();
    HookFactorization {
        prefix: rest,
        hooks,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HookStats {
    pub inv: usize,
    pub lec: usize,
    pub flec: usize,
    pub pix: usize,
}

pub fn hook_stats(pi: &ColoredPermutation) -> HookStats {
    let fact = hook_factorize(pi);
    let lec = fact
        .hooks
        .iter()
        .map(|h| inversions(&h.iter().map(|x| x.value).collect::<Vec<_>>()))
        .sum();
    HookStats {
        inv: inversions(pi.values()),
        lec,
        flec: pi.l() * lec + pi.color_sum(),
        pix: fact.prefix.len(),
    }
}

/// Number of colored admissible inversions.
pub fn admissible_inversions(pi: &ColoredPermutation) -> usize {
    let n = pi.len();
    let v = |i: usize| if i > n { usize::MAX } else { pi.values()[i - 1] };
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let first = i > 1 && v(i - 1) < v(i) && v(i) > v(j);
            let second = || (i + 1..j).any(|k| v(j) < v(i) && v(i) < v(k));
            let third = || {
                pi.colors()[j - 1] > 0
                    && (i..j).all(|k| v(k) < v(j))
                    && v(j) < v(j + 1)
            };
            if first || second() || third() {
                count += 1;
            }
        }
    }
    count
}

/// The `rix` statistic, driven by the rightmost maximal letter.
///
/// Letters must have distinct absolute values.
pub fn rix(word: &[ColoredLetter]) -> usize {
    let mut w = word;
    let mut acc = 0;
    loop {
        let n = w.len();
        if n == 0 {
            return acc;
        }
        let max = w.iter().map(|x| x.value).max().unwrap();
        let i = w.iter().rposition(|x| x.value == max).unwrap() + 1;
        if i == n {
            if w[n - 1].color == 0 {
                acc += 1;
            }
            w = &w[..n - 1];
        } else if i == 1 {
            return acc;
        } else {
            w = &w[i..];
        }
    }
}

/// `(des^Abs, fdes^Abs)`.
pub fn fdes_abs(pi: &ColoredPermutation) -> (usize, usize) {
    let d = (1..pi.len())
        .filter(|&i| pi.colors()[i - 1] == 0 && pi.values()[i - 1] > pi.values()[i])
        .count();
    (d, pi.l() * d + pi.color_sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RawlingsStats {
    pub descents: Vec<usize>,
    pub small_inversions: usize,
    pub maj: usize,
    pub rmaj: usize,
    pub fmaj: usize,
}

/// Rawlings statistics with gap `k`.
///
/// A descent `|π_i| > |π_{i+1}|` counts when the gap is at least `k` or the
/// smaller letter `π_{i+1}` is positively colored; an inversion `i < j`
/// counts when its gap is below `k` and the smaller letter `π_j` is 0-colored.
pub fn rawlings_stats(pi: &ColoredPermutation, k: usize) -> Result<RawlingsStats> {
    if k < 1 {
        return Err(ForgeError::OutOfRange("Rawlings gap k must be at least 1".into()));
    }
    let v = pi.values();
    let c = pi.colors();
    let n = pi.len();
    let descents: Vec<usize> = (1..n)
        .filter(|&i| v[i - 1] > v[i] && (c[i] != 0 || v[i - 1] - v[i] >= k))
        .collect();
    let mut small_inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            if c[j] == 0 && v[i] > v[j] && v[i] - v[j] < k {
                small_inversions += 1;
            }
        }
    }
    let maj: usize = descents.iter().sum();
    let rmaj = maj + small_inversions;
    Ok(RawlingsStats {
        descents,
        small_inversions,
        maj,
        rmaj,
        fmaj: pi.l() * rmaj + pi.color_sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, l: usize) -> ColoredPermutation {
        ColoredPermutation::parse(s, l).unwrap()
    }

    #[test]
    fn basic_statistics() {
        let s = colored_stats(&p("5^2 2^1 4^0 3^2 1^2 6^0", 3));
        assert_eq!(s.descent_set, vec![3, 4]);
        assert_eq!((s.des, s.maj, s.exc), (2, 7, 1));
        assert_eq!(s.fixvec, vec![1, 1, 0]);
        assert_eq!(s.colvec, vec![1, 3]);
        assert_eq!((s.fexc, s.fmaj), (3 + 7, 21 + 7));
        let id = colored_stats(&ColoredPermutation::identity(4, 2));
        assert_eq!((id.des, id.maj, id.exc, id.fix), (0, 0, 0, 4));
        let swap = colored_stats(&p("2 1", 1));
        assert_eq!((swap.exc, swap.maj), (1, 1));
    }

    #[test]
    fn excedance_matches_color_order() {
        for pi in crate::perm::enumerate(3, 3) {
            let by_order = (1..=3)
                .filter(|&j| color_order_cmp(pi.letter(j), ColoredLetter::new(j, 0)) == Ordering::Greater)
                .count();
            assert_eq!(excedances(&pi), by_order);
        }
    }

    #[test]
    fn hook_factorization_example() {
        let pi = p("2^0 4^0 5^1 8^0 3^0 7^0 10^1 1^0 9^0 6^1", 2);
        let f = hook_factorize(&pi);
        let show = |w: &[ColoredLetter]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(show(&f.prefix), "2^0 4^0");
        let hooks: Vec<String> = f.hooks.iter().map(|h| show(h)).collect();
        assert_eq!(hooks, ["5^1", "8^0 3^0 7^0", "10^1 1^0 9^0", "6^1"]);
        assert_eq!(
            hook_stats(&pi),
            HookStats { inv: 16, lec: 4, flec: 11, pix: 2 }
        );
    }

    #[test]
    fn hook_edge_cases() {
        let inc = hook_stats(&ColoredPermutation::identity(4, 2));
        assert_eq!((inc.lec, inc.pix), (0, 4));
        let f = hook_factorize(&p("2 1", 1));
        assert!(f.prefix.is_empty());
        assert_eq!(f.hooks.len(), 1);
        assert_eq!(hook_stats(&p("2 1", 1)).lec, 1);
    }

    #[test]
    fn admissible_inversion_example() {
        assert_eq!(admissible_inversions(&p("4^0 1^0 2^1 5^0 3^1", 2)), 3);
        assert_eq!(admissible_inversions(&ColoredPermutation::identity(5, 2)), 0);
        // 3 1 2: pair (1,3) via 3 < ... no middle larger; (1,2) no predecessor.
        assert_eq!(admissible_inversions(&p("3 1 2", 1)), 0);
        // 1 3 2: pair (2,3) has 1 < 3 > 2.
        assert_eq!(admissible_inversions(&p("1 3 2", 1)), 1);
    }

    #[test]
    fn rix_examples() {
        let pi = p("1^0 6^1 2^0 5^1 3^0 4^1 7^0", 2);
        assert_eq!(rix(&pi.letters().collect::<Vec<_>>()), 2);
        assert_eq!(rix(&[ColoredLetter::new(1, 0)]), 1);
        assert_eq!(rix(&[ColoredLetter::new(1, 1)]), 0);
        assert_eq!(rix(&[]), 0);
    }

    #[test]
    fn absolute_descents() {
        assert_eq!(fdes_abs(&p("2^0 1^0", 2)), (1, 2));
        assert_eq!(fdes_abs(&p("2^1 1^1 3^1", 2)), (0, 3));
        assert_eq!(fdes_abs(&p("4^0 1^0 2^1 5^0 3^1", 2)), (2, 6));
    }

    #[test]
    fn rawlings_values() {
        let pi = p("2^0 6^1 1^0 5^0 4^1 3^1 7^0", 2);
        let r = rawlings_stats(&pi, 2).unwrap();
        assert_eq!(r.descents, vec![2, 4, 5]);
        assert_eq!((r.small_inversions, r.maj, r.rmaj), (2, 11, 13));
        let id = rawlings_stats(&ColoredPermutation::identity(4, 2), 3).unwrap();
        assert_eq!((id.maj, id.small_inversions, id.rmaj), (0, 0, 0));
        assert!(rawlings_stats(&pi, 0).is_err());
        for pi in crate::perm::enumerate(3, 1) {
            let r = rawlings_stats(&pi, 3).unwrap();
            assert_eq!(r.rmaj, inversions(pi.values()));
        }
    }
}
