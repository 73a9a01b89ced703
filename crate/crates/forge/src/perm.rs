//! Colored permutations of `C_l ≀ S_n`, their enumeration and cycle data.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ForgeError, Result};

/// A letter `value^color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredLetter {
    pub value: usize,
    pub color: usize,
}

impl ColoredLetter {
    pub fn new(value: usize, color: usize) -> Self {
        ColoredLetter { value, color }
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.value, self.color)
    }
}

/// Total order on colored letters: higher colors come first, then values.
///
/// `1^{l-1} < ... < n^{l-1} < ... < 1^0 < ... < n^0`.
pub fn color_order_cmp(a: ColoredLetter, b: ColoredLetter) -> Ordering {
    b.color.cmp(&a.color).then(a.value.cmp(&b.value))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    l: usize,
    values: Vec<usize>,
    colors: Vec<usize>,
}

impl ColoredPermutation {
    pub fn new(l: usize, values: Vec<usize>, colors: Vec<usize>) -> Result<Self> {
        if l == 0 {
            return Err(ForgeError::InvalidInput("modulus l must be at least 1".into()));
        }
        if values.len() != colors.len() {
            return Err(ForgeError::InvalidInput("values and colors differ in length".into()));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(ForgeError::InvalidInput(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        if let Some(c) = colors.iter().find(|&&c| c >= l) {
            return Err(ForgeError::InvalidInput(format!("color {c} not below l={l}")));
        }
        Ok(ColoredPermutation { l, values, colors })
    }

    /// Parses the text form `"5^2 2^1 4^0"`; a bare value means color 0.
    pub fn parse(text: &str, l: usize) -> Result<Self> {
        let mut values = Vec::new();
        let mut colors = Vec::new();
        for token in text.split_whitespace() {
            let letter: ColoredLetter = parse_letter(token)?;
            values.push(letter.value);
            colors.push(letter.color);
        }
        Self::new(l, values, colors)
    }

    pub fn identity(n: usize, l: usize) -> Self {
        ColoredPermutation {
            l,
            values: (1..=n).collect(),
            colors: vec![0; n],
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> ColoredLetter {
        ColoredLetter::new(self.values[i - 1], self.colors[i - 1])
    }

    pub fn letters(&self) -> impl Iterator<Item = ColoredLetter> + '_ {
        self.values
            .iter()
            .zip(&self.colors)
            .map(|(&v, &c)| ColoredLetter::new(v, c))
    }

    pub fn color_sum(&self) -> usize {
        self.colors.iter().sum()
    }

    /// `col_m` for `m = 1..l-1`.
    pub fn color_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.l.saturating_sub(1)];
        for &c in &self.colors {
            if c > 0 {
                out[c - 1] += 1;
            }
        }
        out
    }

    /// Color carried by each value: entry `v-1` is the color of the letter `v^c`.
    pub fn color_of_values(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (&v, &c) in self.values.iter().zip(&self.colors) {
            out[v - 1] = c;
        }
        out
    }

    /// Wreath-product inverse: the letter at position `|π_i|` is `i^{(l-ε_i) mod l}`.
    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut values = vec![0; n];
        let mut colors = vec![0; n];
        for i in 0..n {
            let p = self.values[i] - 1;
            values[p] = i + 1;
            colors[p] = (self.l - self.colors[i]) % self.l;
        }
        ColoredPermutation {
            l: self.l,
            values,
            colors,
        }
    }

    /// Cycles of `|π|`, each value tagged with the color it carries as an
    /// image. Each cycle starts at its smallest value; cycles are sorted by it.
    pub fn cycle_decomposition(&self) -> Vec<Vec<ColoredLetter>> {
        let n = self.len();
        let carried = self.color_of_values();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(ColoredLetter::new(v, carried[v - 1]));
                v = self.values[v - 1];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cv_cycle_type(&self) -> CvCycleType {
        let k = self.l.saturating_sub(1);
        CvCycleType::new(
            self.cycle_decomposition()
                .into_iter()
                .map(|cycle| {
                    let mut vec = vec![0; k];
                    for letter in &cycle {
                        if letter.color > 0 {
                            vec[letter.color - 1] += 1;
                        }
                    }
                    (cycle.len(), vec)
                })
                .collect(),
        )
    }
}

fn parse_letter(token: &str) -> Result<ColoredLetter> {
    let bad = || ForgeError::InvalidInput(format!("bad letter `{token}`"));
    let (v, c) = match token.split_once('^') {
        Some((v, c)) => (v, c),
        None => (token, "0"),
    };
    Ok(ColoredLetter::new(
        v.parse().map_err(|_| bad())?,
        c.parse().map_err(|_| bad())?,
    ))
}

impl FromStr for ColoredLetter {
    type Err = ForgeError;
    fn from_str(s: &str) -> Result<Self> {
        parse_letter(s)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Multiset of `(cycle length, color vector)` pairs, stored sorted by length
/// descending and then color vector descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CvCycleType(Vec<(usize, Vec<usize>)>);

impl CvCycleType {
    pub fn new(mut parts: Vec<(usize, Vec<usize>)>) -> Self {
        parts.sort_by(|a, b| b.cmp(a));
        CvCycleType(parts)
    }

    pub fn parts(&self) -> &[(usize, Vec<usize>)] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|(len, _)| len).sum()
    }

    /// Number of cycles of length one carrying color `m` (`m = 0` means no color).
    pub fn fixed_points_of_color(&self, m: usize) -> usize {
        self.0
            .iter()
            .filter(|(len, vec)| {
                *len == 1
                    && if m == 0 {
                        vec.iter().all(|&x| x == 0)
                    } else {
                        vec[m - 1] == 1
                    }
            })
            .count()
    }

    pub fn total_color_vector(&self) -> Vec<usize> {
        let k = self.0.first().map_or(0, |(_, v)| v.len());
        let mut out = vec![0; k];
        for (_, v) in &self.0 {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        out
    }
}

/// All `l^n n!` colored permutations, in lexicographic order of
/// `(values, colors)`.
pub fn enumerate(n: usize, l: usize) -> impl Iterator<Item = ColoredPermutation> {
    let perms = Permutations::new(n);
    perms.flat_map(move |values| {
        ColorVectors::new(n, l).map(move |colors| ColoredPermutation {
            l,
            values: values.clone(),
            colors,
        })
    })
}

/// The colored permutations whose first value is `first` (for partitioned
/// parallel sums). For `n = 0` only `first = 0` yields the empty permutation.
pub fn enumerate_with_first(n: usize, l: usize, first: usize) -> Box<dyn Iterator<Item = ColoredPermutation>> {
    if n == 0 {
        let empty = ColoredPermutation { l, values: vec![], colors: vec![] };
        return Box::new((first == 0 && l > 0).then_some(empty).into_iter());
    }
    if first == 0 || first > n {
        return Box::new(std::iter::empty());
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
    Box::new(Permutations::new(n - 1).flat_map(move |tail| {
        let mut values = Vec::with_capacity(n);
        values.push(first);
        values.extend(tail.iter().map(|&i| rest[i - 1]));
        ColorVectors::new(n, l).map(move |colors| ColoredPermutation {
            l,
            values: values.clone(),
            colors,
        })
    }))
}

/// Counts colored permutations of `C_l ≀ S_n` by `key`, in parallel over the
/// first value.
pub fn tally<K, F>(n: usize, l: usize, key: F) -> HashMap<K, u64>
where
    K: Eq + Hash + Send,
    F: Fn(&ColoredPermutation) -> K + Sync,
{
    let firsts: Vec<usize> = if n == 0 { vec![0] } else { (1..=n).collect() };
    firsts
        .into_par_iter()
        .map(|first| {
            let mut counts = HashMap::new();
            for pi in enumerate_with_first(n, l, first) {
                *counts.entry(key(&pi)).or_insert(0) += 1;
            }
            counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        })
}

/// Lexicographic permutations of `1..=n` (one empty permutation for `n = 0`).
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            next: Some((1..=n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut p = current.clone();
        if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
            self.next = Some(p);
        }
        Some(current)
    }
}

/// Odometer over `{0..l-1}^n`.
struct ColorVectors {
    l: usize,
    next: Option<Vec<usize>>,
}

impl ColorVectors {
    fn new(n: usize, l: usize) -> Self {
        ColorVectors {
            l,
            next: (l > 0).then(|| vec![0; n]),
        }
    }
}

impl Iterator for ColorVectors {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut c = current.clone();
        for i in (0..c.len()).rev() {
            if c[i] + 1 < self.l {
                c[i] += 1;
                c[i + 1..].iter_mut().for_each(|x| *x = 0);
                self.next = Some(c);
                break;
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ColoredPermutation {
        ColoredPermutation::parse("5^2 2^1 4^0 3^2 1^2 6^0", 3).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate(1, 2).count(), 2);
        assert_eq!(enumerate(2, 1).count(), 2);
        assert_eq!(enumerate(3, 3).count(), 162);
        assert_eq!(enumerate(0, 3).count(), 1);
        let first: Vec<String> = enumerate(1, 2).map(|p| p.to_string()).collect();
        assert_eq!(first, ["1^0", "1^1"]);
    }

    #[test]
    fn color_order() {
        let l = 4;
        assert_eq!(
            color_order_cmp(ColoredLetter::new(1, l - 1), ColoredLetter::new(7, 0)),
            Ordering::Less
        );
        assert_eq!(
            color_order_cmp(ColoredLetter::new(3, 1), ColoredLetter::new(5, 1)),
            Ordering::Less
        );
        assert_eq!(
            color_order_cmp(ColoredLetter::new(4, 0), ColoredLetter::new(3, 0)),
            Ordering::Greater
        );
    }

    #[test]
    fn cycles_of_worked_example() {
        let cycles: Vec<Vec<String>> = example()
            .cycle_decomposition()
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(
            cycles,
            vec![vec!["1^2", "5^2"], vec!["2^1"], vec!["3^2", "4^0"], vec!["6^0"]]
        );
        assert_eq!(
            example().cv_cycle_type().parts(),
            &[(2, vec![0, 2]), (2, vec![0, 1]), (1, vec![1, 0]), (1, vec![0, 0])]
        );
    }

    #[test]
    fn small_cycle_types() {
        let id = ColoredPermutation::identity(3, 1);
        assert_eq!(id.cv_cycle_type().parts(), &[(1, vec![]), (1, vec![]), (1, vec![])]);
        let p = ColoredPermutation::parse("1^1", 2).unwrap();
        assert_eq!(p.cv_cycle_type().parts(), &[(1, vec![1])]);
        let swap = ColoredPermutation::parse("2 1", 1).unwrap();
        assert_eq!(swap.cycle_decomposition().len(), 1);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(ColoredPermutation::parse("1^0 1^0", 2).is_err());
        assert!(ColoredPermutation::parse("1^2", 2).is_err());
        assert!(ColoredPermutation::parse("x", 2).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        for p in enumerate(3, 3) {
            assert_eq!(p.inverse().inverse(), p);
        }
    }

    #[test]
    fn partitioned_enumeration_covers_group() {
        for (n, l) in [(0, 2), (1, 3), (3, 2), (4, 1)] {
            let whole: Vec<_> = enumerate(n, l).collect();
            let parts: Vec<_> = (0..=n).flat_map(|f| enumerate_with_first(n, l, f)).collect();
            assert_eq!(whole, parts);
            let total: u64 = tally(n, l, |p| p.color_sum()).values().sum();
            assert_eq!(total as usize, whole.len());
        }
    }
}
