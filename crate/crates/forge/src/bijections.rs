//! Banners, necklaces, marked sequences and the maps between them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ForgeError, Result};
use crate::perm::CvCycleType;

/// A letter `u^m` or the barred letter `ū⁰`.
///
/// The derived order is the banner alphabet order
/// `1⁰ < 1¹ < ... < 1^{l-1} < 1̄⁰ < 2⁰ < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BannerLetter {
    pub value: usize,
    #[serde(default)]
    pub barred: bool,
    #[serde(default)]
    pub color: usize,
}

impl BannerLetter {
    pub fn new(value: usize, color: usize) -> Self {
        BannerLetter {
            value,
            barred: false,
            color,
        }
    }

    pub fn barred(value: usize) -> Self {
        BannerLetter {
            value,
            barred: true,
            color: 0,
        }
    }

    fn decoration(&self) -> (usize, bool) {
        (self.color, self.barred)
    }

    fn set_decoration(&mut self, (color, barred): (usize, bool)) {
        self.color = color;
        self.barred = barred;
    }
}

impl fmt::Display for BannerLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            f.write_str("~")?;
        }
        write!(f, "{}^{}", self.value, self.color)
    }
}

impl FromStr for BannerLetter {
    type Err = ForgeError;

    /// Parses `v^c`, `v` (color 0) or `~v^0` (barred).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || ForgeError::InvalidInput(format!("bad banner letter `{s}`"));
        let (barred, body) = match s.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (v, c) = body.split_once('^').unwrap_or((body, "0"));
        let value: usize = v.parse().map_err(|_| bad())?;
        let color: usize = c.parse().map_err(|_| bad())?;
        if value == 0 || (barred && color != 0) {
            return Err(bad());
        }
        Ok(BannerLetter {
            value,
            barred,
            color,
        })
    }
}

pub type Banner = Vec<BannerLetter>;

pub fn parse_word(text: &str) -> Result<Banner> {
    text.split_whitespace().map(str::parse).collect()
}

pub fn show_word(w: &[BannerLetter]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Sort key of the order `<_B`: all positively colored letters first
/// (by value, then color), then `1⁰ < 1̄⁰ < 2⁰ < 2̄⁰ < ...`.
pub fn hyatt_key(x: &BannerLetter) -> (u8, usize, usize, bool) {
    if x.color > 0 {
        (0, x.value, x.color, false)
    } else {
        (1, x.value, 0, x.barred)
    }
}

pub fn hyatt_cmp(a: &BannerLetter, b: &BannerLetter) -> Ordering {
    hyatt_key(a).cmp(&hyatt_key(b))
}

/// Lyndon factorization where a Lyndon word is strictly larger than its
/// proper rotations; factors come out lexicographically weakly increasing.
pub fn lyndon_factorize<T: Clone>(w: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Vec<Vec<T>> {
    // Duval's algorithm run with every comparison reversed.
    let rev = |a: &T, b: &T| cmp(b, a);
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && rev(&w[k], &w[j]) != Ordering::Greater {
            if rev(&w[k], &w[j]) == Ordering::Less {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(w[i..i + j - k].to_vec());
            i += j - k;
        }
    }
    out
}

/// True when `w` satisfies the three banner conditions.
pub fn is_banner(w: &[BannerLetter]) -> bool {
    let Some(last) = w.last() else {
        return true;
    };
    !last.barred && w.windows(2).all(|p| banner_step_ok(&p[0], &p[1]))
}

fn banner_step_ok(a: &BannerLetter, b: &BannerLetter) -> bool {
    if a.barred {
        a.value >= b.value
    } else if a.color == 0 {
        a.value <= b.value
    } else {
        true
    }
}

fn alphabet(l: usize, max_value: usize) -> Vec<BannerLetter> {
    let mut out = Vec::new();
    for v in 1..=max_value {
        for c in 0..l {
            out.push(BannerLetter::new(v, c));
        }
        out.push(BannerLetter::barred(v));
    }
    out
}

/// All banners of length `n` with colors below `l` and values at most `max_value`.
pub fn banners(n: usize, l: usize, max_value: usize) -> Vec<Banner> {
    let letters = alphabet(l, max_value);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, letters: &[BannerLetter], cur: &mut Banner, out: &mut Vec<Banner>) {
        if cur.len() == n {
            if cur.last().map_or(true, |x| !x.barred) {
                out.push(cur.clone());
            }
            return;
        }
        for &x in letters {
            if cur.last().map_or(true, |p| banner_step_ok(p, &x)) {
                cur.push(x);
                rec(n, letters, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &letters, &mut cur, &mut out);
    out
}

/// Number of bars, color vector `col_1..col_{l-1}`.
pub fn banner_counts(w: &[BannerLetter], l: usize) -> (usize, Vec<usize>) {
    let bars = w.iter().filter(|x| x.barred).count();
    let mut col = vec![0; l.saturating_sub(1)];
    for x in w {
        if x.color > 0 {
            col[x.color - 1] += 1;
        }
    }
    (bars, col)
}

/// `l·#bars + Σ colors`.
pub fn banner_fstat(w: &[BannerLetter], l: usize) -> usize {
    let (bars, _) = banner_counts(w, l);
    l * bars + w.iter().map(|x| x.color).sum::<usize>()
}

/// Lyndon data of a banner under the alphabet order: the cv-cycle type and
/// the number of one-letter factors that are 0-colored and unbarred.
pub fn banner_cycle_data(w: &[BannerLetter], l: usize) -> (CvCycleType, usize) {
    let factors = lyndon_factorize(w, |a, b| a.cmp(b));
    let mut fixed = 0;
    let parts = factors
        .iter()
        .map(|f| {
            if f.len() == 1 && f[0].color == 0 && !f[0].barred {
                fixed += 1;
            }
            (f.len(), banner_counts(f, l).1)
        })
        .collect();
    (CvCycleType::new(parts), fixed)
}

/// Refinement of the `<_B` Lyndon factorization into pieces `a^p u` with
/// every letter of `u` strictly below `a`.
pub fn increasing_factorize(w: &[BannerLetter]) -> Vec<Banner> {
    let mut out = Vec::new();
    for factor in lyndon_factorize(w, hyatt_cmp) {
        let a = *factor.iter().max_by(|x, y| hyatt_cmp(x, y)).unwrap();
        let mut i = 0;
        while i < factor.len() {
            let mut j = i;
            while j < factor.len() && factor[j] == a {
                j += 1;
            }
            while j < factor.len() && factor[j] != a {
                j += 1;
            }
            let piece = &factor[i..j];
            if piece.iter().all(|x| *x == a) {
                out.extend(piece.iter().map(|&x| vec![x]));
            } else {
                out.push(piece.to_vec());
            }
            i = j;
        }
    }
    out
}

/// The map `f` from words over ℕ to banners.
pub fn word_to_banner_f(w: &[usize], l: usize) -> Result<Banner> {
    if l == 0 {
        return Err(ForgeError::OutOfRange("l must be at least 1".into()));
    }
    let dec = decrease_flags(w);
    Ok(w.iter()
        .zip(&dec)
        .map(|(&x, &is_dec)| {
            let (u, m) = (x / l, x % l);
            if is_dec && m == 0 && u >= 1 {
                BannerLetter::barred(u)
            } else {
                BannerLetter::new(u + 1, m)
            }
        })
        .collect())
}

/// Inverse of [`word_to_banner_f`].
pub fn banner_to_word_f(b: &[BannerLetter], l: usize) -> Result<Vec<usize>> {
    if !is_banner(b) {
        return Err(ForgeError::InvalidInput(format!("`{}` is not a banner", show_word(b))));
    }
    b.iter()
        .map(|x| {
            if x.color >= l {
                Err(ForgeError::OutOfRange(format!("color {} with l = {l}", x.color)))
            } else if x.barred {
                Ok(x.value * l)
            } else {
                Ok((x.value - 1) * l + x.color)
            }
        })
        .collect()
}

/// `flags[i]` tells whether position `i` is a decrease: `w_i = ... = w_j > w_{j+1}`.
pub fn decrease_flags(w: &[usize]) -> Vec<bool> {
    let n = w.len();
    let mut out = vec![false; n];
    for i in (0..n.saturating_sub(1)).rev() {
        out[i] = w[i] > w[i + 1] || (w[i] == w[i + 1] && out[i + 1]);
    }
    out
}

/// A primitive circular word stored at its largest rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Necklace(Vec<BannerLetter>);

impl Necklace {
    /// Validates the necklace conditions and primitivity.
    pub fn new(letters: Vec<BannerLetter>) -> Result<Self> {
        if !is_valid_necklace(&letters) {
            return Err(ForgeError::InvalidInput(format!(
                "`{}` violates the necklace conditions",
                show_word(&letters)
            )));
        }
        if !is_primitive(&letters) {
            return Err(ForgeError::InvalidInput(format!(
                "`{}` is not primitive",
                show_word(&letters)
            )));
        }
        Ok(Necklace(canonical_rotation(&letters)))
    }

    pub fn letters(&self) -> &[BannerLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value_count(&self, v: usize) -> usize {
        self.0.iter().filter(|x| x.value == v).count()
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", show_word(&self.0))
    }
}

pub fn is_valid_necklace(w: &[BannerLetter]) -> bool {
    let n = w.len();
    if n == 0 || (n == 1 && w[0].barred) {
        return false;
    }
    (0..n).all(|i| {
        let (a, b) = (&w[i], &w[(i + 1) % n]);
        !(a.barred && a.value < b.value) && !(a.color == 0 && !a.barred && a.value > b.value)
    })
}

pub fn is_primitive<T: PartialEq>(w: &[T]) -> bool {
    let n = w.len();
    (1..n).all(|d| n % d != 0 || (0..n).any(|i| w[i] != w[(i + d) % n]))
}

fn canonical_rotation(w: &[BannerLetter]) -> Vec<BannerLetter> {
    (0..w.len())
        .map(|d| {
            let mut r = w[d..].to_vec();
            r.extend_from_slice(&w[..d]);
            r
        })
        .max()
        .unwrap_or_default()
}

/// All necklaces of length `n` with colors below `l` and values at most `max_value`.
pub fn necklaces(n: usize, l: usize, max_value: usize) -> Vec<Necklace> {
    let letters = alphabet(l, max_value);
    let mut set = BTreeSet::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, letters: &[BannerLetter], cur: &mut Vec<BannerLetter>, set: &mut BTreeSet<Necklace>) {
        if cur.len() == n {
            if let Ok(r) = Necklace::new(cur.clone()) {
                set.insert(r);
            }
            return;
        }
        for &x in letters {
            let ok = cur.last().map_or(true, |a: &BannerLetter| {
                !(a.barred && a.value < x.value) && !(a.color == 0 && !a.barred && a.value > x.value)
            });
            if ok {
                cur.push(x);
                rec(n, letters, cur, set);
                cur.pop();
            }
        }
    }
    rec(n, &letters, &mut cur, &mut set);
    set.into_iter().collect()
}

fn exchange_decorations(w: &mut [BannerLetter], i: usize, j: usize) {
    let (a, b) = (w[i].decoration(), w[j].decoration());
    w[i].set_decoration(b);
    w[j].set_decoration(a);
}

fn swap_values(w: &mut [BannerLetter], k: usize) {
    for x in w.iter_mut() {
        if x.value == k {
            x.value = k + 1;
        } else if x.value == k + 1 {
            x.value = k;
        }
    }
}

/// Pairs each rising `k` (a `k` followed by `k+1`) with the next falling
/// `k+1` clockwise, on a circular word using only the values `k` and `k+1`.
fn circular_pairs(w: &[BannerLetter], k: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let rising = |i: usize| w[i].value == k && w[(i + 1) % n].value == k + 1;
    let falling = |i: usize| w[i].value == k + 1 && w[(i + 1) % n].value == k;
    (0..n)
        .filter(|&i| rising(i))
        .map(|i| {
            let mut j = (i + 1) % n;
            while !falling(j) {
                j = (j + 1) % n;
            }
            (i, j)
        })
        .collect()
}

/// Maximal runs of `{k, k+1}` letters, read clockwise from just after an
/// intruder; `None` when there is no intruder.
fn segments(w: &[BannerLetter], k: usize) -> Option<Vec<Vec<usize>>> {
    let n = w.len();
    let inside = |i: usize| w[i].value == k || w[i].value == k + 1;
    let start = (0..n).find(|&i| !inside(i))?;
    let mut segs = Vec::new();
    let mut cur = Vec::new();
    for t in 1..=n {
        let i = (start + t) % n;
        if inside(i) {
            cur.push(i);
        } else if !cur.is_empty() {
            segs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        segs.push(cur);
    }
    Some(segs)
}

fn runs(vals: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &v in vals {
        match out.last_mut() {
            Some((x, len)) if *x == v => *len += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn transform_segment(w: &mut [BannerLetter], seg: &[usize], k: usize) {
    let vals: Vec<usize> = seg.iter().map(|&i| w[i].value).collect();
    let switches = vals.windows(2).filter(|p| p[0] != p[1]).count();
    if switches % 2 == 0 {
        for &i in seg {
            swap_values(std::slice::from_mut(&mut w[i]), k);
        }
        let vals: Vec<usize> = seg.iter().map(|&i| w[i].value).collect();
        let rising = (0..vals.len().saturating_sub(1)).filter(|&t| vals[t] == k && vals[t + 1] == k + 1);
        let falling = (0..vals.len().saturating_sub(1)).filter(|&t| vals[t] == k + 1 && vals[t + 1] == k);
        let pairs: Vec<(usize, usize)> = rising.zip(falling).collect();
        for (a, b) in pairs {
            exchange_decorations(w, seg[a], seg[b]);
        }
    } else {
        let rs = runs(&vals);
        let (first, second) = (rs[0].0, rs[1].0);
        let mut new_vals = Vec::with_capacity(vals.len());
        let mut offset = 0;
        let mut exchanges = Vec::new();
        for pair in rs.chunks(2) {
            let (m, n) = (pair[0].1, pair[1].1);
            new_vals.extend(std::iter::repeat(first).take(n));
            new_vals.extend(std::iter::repeat(second).take(m));
            if m != n {
                exchanges.push((offset + n - 1, offset + m - 1));
            }
            offset += m + n;
        }
        for (t, &i) in seg.iter().enumerate() {
            w[i].value = new_vals[t];
        }
        for (a, b) in exchanges {
            exchange_decorations(w, seg[a], seg[b]);
        }
    }
}

/// The map ψ exchanging the multiplicities of `k` and `k+1` in a necklace.
pub fn psi_necklace(r: &Necklace, k: usize) -> Necklace {
    let mut w = r.0.clone();
    match segments(&w, k) {
        None => {
            swap_values(&mut w, k);
            for (i, j) in circular_pairs(&w, k) {
                exchange_decorations(&mut w, i, j);
            }
        }
        Some(segs) => {
            for seg in segs {
                transform_segment(&mut w, &seg, k);
            }
        }
    }
    Necklace(canonical_rotation(&w))
}

/// Inverse of [`psi_necklace`].
///
/// Away from the two-value case ψ undoes itself. With only the values `k`
/// and `k+1` present, the decoration exchanges are replayed on the input's
/// own rising/falling structure before the values are swapped back.
pub fn psi_inverse(r: &Necklace, k: usize) -> Necklace {
    let mut w = r.0.clone();
    match segments(&w, k) {
        None => {
            for (i, j) in circular_pairs(&w, k) {
                exchange_decorations(&mut w, i, j);
            }
            swap_values(&mut w, k);
            Necklace(canonical_rotation(&w))
        }
        Some(_) => psi_necklace(r, k),
    }
}

/// The involution θ on banners: bars toggled, colors complemented and
/// values reversed.
pub fn theta_banner(b: &[BannerLetter], l: usize) -> Result<Banner> {
    if !is_banner(b) {
        return Err(ForgeError::InvalidInput(format!("`{}` is not a banner", show_word(b))));
    }
    if let Some(x) = b.iter().find(|x| x.color >= l) {
        return Err(ForgeError::OutOfRange(format!("color {} with l = {l}", x.color)));
    }
    let values: BTreeSet<usize> = b.iter().map(|x| x.value).collect();
    let values: Vec<usize> = values.into_iter().collect();
    let mirror = |v: usize| {
        let i = values.binary_search(&v).unwrap();
        values[values.len() - 1 - i]
    };
    let n = b.len();
    Ok(b.iter()
        .enumerate()
        .map(|(i, x)| {
            let value = mirror(x.value);
            if i + 1 == n {
                BannerLetter::new(value, l - 1 - x.color)
            } else if x.color == 0 {
                BannerLetter {
                    value,
                    barred: !x.barred,
                    color: 0,
                }
            } else {
                BannerLetter::new(value, l - x.color)
            }
        })
        .collect())
}

/// `(ω, b, m)`: a weakly increasing word with mark `b` and color `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedSequence {
    pub word: Vec<usize>,
    pub mark: usize,
    pub color: usize,
}

impl MarkedSequence {
    pub fn new(word: Vec<usize>, mark: usize, color: usize, l: usize) -> Result<Self> {
        let s = MarkedSequence { word, mark, color };
        s.validate(l)?;
        Ok(s)
    }

    pub fn validate(&self, l: usize) -> Result<()> {
        let len = self.word.len();
        let ok = is_weakly_increasing(&self.word)
            && self.word.iter().all(|&x| x >= 1)
            && self.color < l
            && self.mark < len
            && (self.color > 0 || self.mark >= 1);
        if ok {
            Ok(())
        } else {
            Err(ForgeError::InvalidInput(format!("invalid marked sequence {self:?} for l = {l}")))
        }
    }
}

pub fn is_weakly_increasing(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// Weakly increasing words of length `len` over `1..=max_value`.
pub fn weakly_increasing_words(len: usize, max_value: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(len, v, max, cur, out);
            cur.pop();
        }
    }
    rec(len, 1, max_value, &mut cur, &mut out);
    out
}

/// All marked sequences of length `len`.
pub fn marked_sequences(len: usize, max_value: usize, l: usize) -> Vec<MarkedSequence> {
    let mut out = Vec::new();
    for word in weakly_increasing_words(len, max_value) {
        for color in 0..l {
            for mark in usize::from(color == 0)..len {
                out.push(MarkedSequence {
                    word: word.clone(),
                    mark,
                    color,
                });
            }
        }
    }
    out
}

/// `(ω₀, (ω₁,b₁,m₁), ..., (ω_r,b_r,m_r), ω₀′)` with `|ω₀′| < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoFixBanner {
    pub start: Vec<usize>,
    pub middle: Vec<MarkedSequence>,
    pub end: Vec<usize>,
}

impl TwoFixBanner {
    pub fn len(&self) -> usize {
        self.start.len() + self.end.len() + self.middle.iter().map(|s| s.word.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fexc(&self, l: usize) -> usize {
        self.middle.iter().map(|s| l * s.mark + s.color).sum()
    }

    pub fn validate(&self, l: usize) -> Result<()> {
        let n = self.len();
        if !is_weakly_increasing(&self.start) || !is_weakly_increasing(&self.end) {
            return Err(ForgeError::InvalidInput("fixed words must be weakly increasing".into()));
        }
        if n > 0 && self.end.len() >= n {
            return Err(ForgeError::InvalidInput("the final word must be shorter than n".into()));
        }
        self.middle.iter().try_for_each(|s| s.validate(l))
    }

    /// All letters, in order.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = self.start.clone();
        for s in &self.middle {
            out.extend(&s.word);
        }
        out.extend(&self.end);
        out
    }
}

/// Two-fix-banners of length `n` over `1..=max_value`.
pub fn two_fix_banners(n: usize, max_value: usize, l: usize) -> Vec<TwoFixBanner> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            if b == n && n > 0 {
                continue;
            }
            let starts = weakly_increasing_words(a, max_value);
            let ends = weakly_increasing_words(b, max_value);
            for comp in compositions(n - a - b) {
                let choices: Vec<Vec<MarkedSequence>> =
                    comp.iter().map(|&len| marked_sequences(len, max_value, l)).collect();
                for middle in cartesian(&choices) {
                    for s in &starts {
                        for e in &ends {
                            out.push(TwoFixBanner {
                                start: s.clone(),
                                middle: middle.clone(),
                                end: e.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Plain(Vec<usize>),
    Marked(MarkedSequence),
}

fn compact(v: &TwoFixBanner) -> Vec<Item> {
    let mut items = Vec::new();
    if !v.start.is_empty() {
        items.push(Item::Plain(v.start.clone()));
    }
    items.extend(v.middle.iter().cloned().map(Item::Marked));
    if !v.end.is_empty() {
        items.push(Item::Plain(v.end.clone()));
    }
    items
}

fn expand(mut items: Vec<Item>) -> TwoFixBanner {
    let mut start = Vec::new();
    let mut end = Vec::new();
    if let Some(Item::Plain(_)) = items.first() {
        if let Item::Plain(w) = items.remove(0) {
            start = w;
        }
    }
    if let Some(Item::Plain(_)) = items.last() {
        if let Some(Item::Plain(w)) = items.pop() {
            end = w;
        }
    }
    let middle = items
        .into_iter()
        .map(|x| match x {
            Item::Marked(s) => s,
            Item::Plain(_) => unreachable!("plain words only sit at the ends"),
        })
        .collect();
    TwoFixBanner { start, middle, end }
}

fn d_inner(s: &MarkedSequence, l: usize) -> MarkedSequence {
    let k = s.word.len();
    if s.color == 0 {
        MarkedSequence {
            word: s.word.clone(),
            mark: k - s.mark,
            color: 0,
        }
    } else {
        MarkedSequence {
            word: s.word.clone(),
            mark: k - 1 - s.mark,
            color: l - s.color,
        }
    }
}

fn d_end(x: &Item, l: usize) -> Item {
    match x {
        Item::Plain(w) => Item::Marked(MarkedSequence {
            word: w.clone(),
            mark: w.len() - 1,
            color: l - 1,
        }),
        Item::Marked(s) => {
            let k = s.word.len();
            if s.mark == k - 1 && s.color == l - 1 {
                Item::Plain(s.word.clone())
            } else {
                Item::Marked(MarkedSequence {
                    word: s.word.clone(),
                    mark: k - 1 - s.mark,
                    color: l - 1 - s.color,
                })
            }
        }
    }
}

/// The involution Φ on two-fix-banners with `fexc(v) + fexc(Φ(v)) = ln - 2`.
///
/// Needs `l >= 2` and `n >= 2`; the lone banner `(∅, (ω,n-1,l-1), ∅)` of
/// flag excedance `ln-1` has no partner and is rejected.
pub fn phi_twofix(v: &TwoFixBanner, l: usize) -> Result<TwoFixBanner> {
    let n = v.len();
    if n < 2 {
        return Err(ForgeError::OutOfRange("Φ needs n >= 2".into()));
    }
    if l < 2 {
        return Err(ForgeError::OutOfRange("Φ needs l >= 2".into()));
    }
    v.validate(l)?;
    if v.fexc(l) == l * n - 1 {
        return Err(ForgeError::OutOfRange(
            "flag excedance ln-1 has no complement".into(),
        ));
    }
    let items = compact(v);
    let out = if let [only] = items.as_slice() {
        let single = match only {
            Item::Plain(w) => Item::Marked(MarkedSequence {
                word: w.clone(),
                mark: n - 1,
                color: l - 2,
            }),
            Item::Marked(s) if s.mark == n - 1 && s.color == l - 2 => Item::Plain(s.word.clone()),
            Item::Marked(s) if s.color == l - 1 => Item::Marked(MarkedSequence {
                word: s.word.clone(),
                mark: n - 2 - s.mark,
                color: l - 1,
            }),
            Item::Marked(s) => Item::Marked(MarkedSequence {
                word: s.word.clone(),
                mark: n - 1 - s.mark,
                color: l - 2 - s.color,
            }),
        };
        vec![single]
    } else {
        let last = items.len() - 1;
        items
            .iter()
            .enumerate()
            .map(|(i, x)| match x {
                _ if i == 0 || i == last => d_end(x, l),
                Item::Marked(s) => Item::Marked(d_inner(s, l)),
                Item::Plain(_) => unreachable!("plain words only sit at the ends"),
            })
            .collect()
    };
    Ok(expand(out))
}

/// The map Υ on banners whose last increasing factor has a positively
/// colored head.
pub fn upsilon(b: &[BannerLetter]) -> Result<(Banner, MarkedSequence)> {
    if b.is_empty() || !is_banner(b) {
        return Err(ForgeError::InvalidInput(format!("`{}` is not a nonempty banner", show_word(b))));
    }
    let mut pieces = increasing_factorize(b);
    let last = pieces.pop().unwrap();
    let a = last[0];
    if a.color == 0 {
        return Err(ForgeError::Unsupported(
            "Υ with a 0-colored head needs the external bijection γ".into(),
        ));
    }
    let p = last.iter().take_while(|&&x| x == a).count();
    let u = &last[p..];
    let mut rest: Banner = pieces.concat();
    let removed = match u.len() {
        0 => a,
        1 => {
            rest.extend_from_slice(&last[..p]);
            u[0]
        }
        _ => {
            rest.extend_from_slice(&last[..p]);
            rest.extend_from_slice(&u[1..]);
            u[0]
        }
    };
    let seq = MarkedSequence {
        word: vec![removed.value],
        mark: 0,
        color: removed.color,
    };
    Ok((rest, seq))
}

/// Inverse of [`upsilon`] on its positively colored cases.
pub fn upsilon_inverse(b: &[BannerLetter], seq: &MarkedSequence) -> Result<Banner> {
    if seq.word.len() != 1 || seq.color == 0 || seq.mark != 0 {
        return Err(ForgeError::Unsupported(
            "Υ⁻¹ on this marked sequence needs the external bijection γ".into(),
        ));
    }
    let j0 = BannerLetter::new(seq.word[0], seq.color);
    if b.is_empty() {
        return Ok(vec![j0]);
    }
    if !is_banner(b) {
        return Err(ForgeError::InvalidInput(format!("`{}` is not a banner", show_word(b))));
    }
    let pieces = increasing_factorize(b);
    let last = pieces.last().unwrap();
    let a = last[0];
    if a.color == 0 {
        return Err(ForgeError::Unsupported(
            "Υ⁻¹ with a 0-colored head needs the external bijection γ".into(),
        ));
    }
    if hyatt_cmp(&j0, &a) != Ordering::Less {
        let mut out = b.to_vec();
        out.push(j0);
        return Ok(out);
    }
    if last.len() > 1 {
        let p = last.iter().take_while(|&&x| x == a).count();
        let mut out: Banner = pieces[..pieces.len() - 1].concat();
        out.extend_from_slice(&last[..p]);
        out.push(j0);
        out.extend_from_slice(&last[p..]);
        return Ok(out);
    }
    let singles = pieces.iter().rev().take_while(|f| f.as_slice() == [a]).count();
    let mut out: Banner = pieces[..pieces.len() - singles].concat();
    out.extend(std::iter::repeat(a).take(singles));
    out.push(j0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Banner {
        parse_word(s).unwrap()
    }

    fn show_factors(fs: &[Banner]) -> Vec<String> {
        fs.iter().map(|f| show_word(f)).collect()
    }

    const WORKED: &str = "6^1 1^2 5^1 6^1 6^1 ~4^0 ~4^0 4^1 4^0 ~4^0 3^2 5^0 7^1";

    #[test]
    fn worked_factorizations() {
        let b = w(WORKED);
        assert_eq!(
            show_factors(&lyndon_factorize(&b, hyatt_cmp)),
            ["6^1 1^2 5^1", "6^1", "6^1", "~4^0 ~4^0 4^1 4^0 ~4^0 3^2", "5^0 7^1"]
        );
        assert_eq!(
            show_factors(&increasing_factorize(&b)),
            ["6^1 1^2 5^1", "6^1", "6^1", "~4^0 ~4^0 4^1 4^0", "~4^0 3^2", "5^0 7^1"]
        );
    }

    #[test]
    fn lyndon_small_cases() {
        let cmp = |a: &usize, b: &usize| a.cmp(b);
        assert_eq!(lyndon_factorize(&[3], cmp), vec![vec![3]]);
        assert_eq!(lyndon_factorize(&[2, 1, 2, 1], cmp), vec![vec![2, 1], vec![2, 1]]);
        assert_eq!(lyndon_factorize(&[1, 2], cmp), vec![vec![1], vec![2]]);
        assert!(lyndon_factorize::<usize>(&[], cmp).is_empty());
        let aa = w("3^1 3^1");
        assert_eq!(increasing_factorize(&aa).len(), 2);
    }

    #[test]
    fn map_f_example() {
        let word = [12, 10, 9, 12, 8, 12, 16, 2, 13, 19];
        let b = word_to_banner_f(&word, 3).unwrap();
        assert_eq!(show_word(&b), "~4^0 4^1 4^0 ~4^0 3^2 5^0 6^1 1^2 5^1 7^1");
        assert_eq!(banner_to_word_f(&b, 3).unwrap(), word);
        let inc = word_to_banner_f(&[0, 2, 4], 2).unwrap();
        assert_eq!(show_word(&inc), "1^0 2^0 3^0");
    }

    #[test]
    fn banner_conditions() {
        assert!(is_banner(&w("1^0")));
        assert!(!is_banner(&w("2^0 ~1^0")));
        assert!(is_banner(&w("~2^0 1^0")));
        assert!(!is_banner(&w("~1^0 2^0")));
        assert!(!is_banner(&w("2^0 1^0")));
        assert!(is_banner(&w("2^1 1^0")));
        assert_eq!(banners(1, 2, 1).len(), 2);
    }

    #[test]
    fn psi_worked_examples() {
        let r = Necklace::new(w("2^2 ~2^0 1^1 ~1^0 1^0 ~2^0 2^3 ~2^0 2^1 1^0 1^0 ~2^0 1^2 ~1^0 1^0")).unwrap();
        let expected = Necklace::new(w("1^2 1^0 2^1 ~2^0 ~2^0 ~1^0 1^3 ~1^0 1^0 2^0 2^1 1^0 2^2 ~2^0 ~2^0")).unwrap();
        let image = psi_necklace(&r, 1);
        assert_eq!(image, expected);
        assert_eq!(psi_inverse(&image, 1), r);

        let r = Necklace::new(w("~5^0 3^1 3^0 4^2 ~4^0 ~3^0 3^1 ~3^0 3^2 6^2 ~6^0 ~3^0 3^0 3^1 ~4^0 2^0 4^3 4^0")).unwrap();
        let expected = Necklace::new(w("~5^0 4^1 ~4^0 3^2 3^0 ~4^0 4^1 ~4^0 4^2 6^2 ~6^0 3^1 4^0 ~4^0 ~4^0 2^0 3^3 3^0")).unwrap();
        assert_eq!(psi_necklace(&r, 3), expected);
        assert_eq!(psi_inverse(&expected, 3), r);

        let plain = Necklace::new(w("5^0 7^1")).unwrap();
        assert_eq!(psi_necklace(&plain, 1), plain);
    }

    #[test]
    fn odd_segment_example() {
        let mut seg = w("~3^0 3^0 3^1 ~4^0");
        transform_segment(&mut seg, &[0, 1, 2, 3], 3);
        assert_eq!(show_word(&seg), "3^1 4^0 ~4^0 ~4^0");
    }

    #[test]
    fn theta_examples() {
        assert_eq!(show_word(&theta_banner(&w("1^0"), 2).unwrap()), "1^1");
        let b = w("~1^0 1^0");
        let t = theta_banner(&b, 2).unwrap();
        assert_eq!(show_word(&t), "1^0 1^1");
        assert_eq!(banner_fstat(&b, 2) + banner_fstat(&t, 2), 3);
        assert_eq!(theta_banner(&t, 2).unwrap(), b);
    }

    #[test]
    fn phi_examples() {
        let v = TwoFixBanner {
            start: vec![1, 1, 2],
            middle: vec![],
            end: vec![],
        };
        let image = phi_twofix(&v, 2).unwrap();
        assert_eq!(image.middle, vec![MarkedSequence { word: vec![1, 1, 2], mark: 2, color: 0 }]);
        assert_eq!(image.fexc(2), 2 * 3 - 2);
        assert_eq!(phi_twofix(&image, 2).unwrap(), v);
        let s = MarkedSequence::new(vec![1, 2, 2], 1, 0, 2).unwrap();
        assert_eq!(d_inner(&s, 2).mark, 2);
        assert!(phi_twofix(&TwoFixBanner { start: vec![1], middle: vec![], end: vec![] }, 2).is_err());
    }

    #[test]
    fn upsilon_cases() {
        let (rest, seq) = upsilon(&w("2^1")).unwrap();
        assert!(rest.is_empty());
        assert_eq!(seq, MarkedSequence { word: vec![2], mark: 0, color: 1 });
        let b = w("3^1 3^1 1^1");
        let (rest, seq) = upsilon(&b).unwrap();
        assert_eq!(show_word(&rest), "3^1 3^1");
        assert_eq!(show_factors(&increasing_factorize(&rest)), ["3^1", "3^1"]);
        assert_eq!(upsilon_inverse(&rest, &seq).unwrap(), b);
        assert!(matches!(upsilon(&w("1^1 2^0")), Err(ForgeError::Unsupported(_))));
    }
}
