//! Symmetric functions in the complete homogeneous basis and quasisymmetric
//! functions in the fundamental basis.
//!
//! Fundamental quasisymmetric functions follow the decreasing-chain
//! convention: `F_{n,S}` sums `x_{i_1}...x_{i_n}` over `i_1 >= ... >= i_n >= 1`
//! with `i_j > i_{j+1}` whenever `j ∈ S`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::algebra::{q_multinomial, Polynomial, Ring, VarTable};
use crate::error::{ForgeError, Result};

/// Partition stored with parts in weakly decreasing order.
pub type Partition = Vec<usize>;

fn normalize(mut parts: Vec<usize>) -> Partition {
    parts.retain(|&p| p > 0);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// `Σ_λ c_λ h_λ` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFuncH {
    table: VarTable,
    terms: BTreeMap<Partition, Polynomial>,
}

impl SymFuncH {
    pub fn zero(table: &VarTable) -> Self {
        SymFuncH {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &VarTable) -> Self {
        Self::term(table, Vec::new(), Polynomial::one(table))
    }

    /// `h_n`, with `h_0 = 1`.
    pub fn h(table: &VarTable, n: usize) -> Self {
        Self::term(table, vec![n], Polynomial::one(table))
    }

    pub fn h_partition(table: &VarTable, parts: &[usize]) -> Self {
        Self::term(table, parts.to_vec(), Polynomial::one(table))
    }

    pub fn term(table: &VarTable, parts: Vec<usize>, coeff: Polynomial) -> Self {
        let mut out = Self::zero(table);
        out.add_term(normalize(parts), coeff);
        out
    }

    /// A coefficient polynomial times the unit.
    pub fn scalar(coeff: Polynomial) -> Self {
        let table = coeff.table().clone();
        Self::term(&table, Vec::new(), coeff)
    }

    fn add_term(&mut self, parts: Partition, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&parts) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&parts);
                }
            }
            None => {
                self.terms.insert(parts, coeff);
            }
        }
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, parts: &[usize]) -> Polynomial {
        self.terms
            .get(&normalize(parts.to_vec()))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.table))
    }

    /// The common degree of all partitions, or `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|p| p.iter().sum::<usize>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when every coefficient has nonnegative integer coefficients.
    pub fn is_h_positive(&self) -> bool {
        self.terms.values().all(Polynomial::is_nonnegative)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.neg_ref());
        }
        out
    }

    /// Product in the h-basis: `h_λ h_μ = h_{λ∪μ}`.
    pub fn h_mul(&self, other: &Self) -> Self {
        assert_eq!(self.table, other.table, "symmetric functions over different tables");
        let mut out = Self::zero(&self.table);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let mut parts = p.clone();
                parts.extend_from_slice(q);
                out.add_term(normalize(parts), a * b);
            }
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Polynomial) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.table);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    /// Coefficient of `var^deg` taken in every h-coefficient.
    pub fn coefficient_in(&self, var: usize, deg: u32) -> Self {
        self.map_coeffs(|c| c.coefficient(var, deg))
    }

    /// Rewrites all coefficients over `target`.
    pub fn embed(&self, target: &VarTable) -> Result<Self> {
        let mut out = Self::zero(target);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.embed(target)?);
        }
        Ok(out)
    }
}

impl Ring for SymFuncH {
    fn zero_like(&self) -> Self {
        Self::zero(&self.table)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.table)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.h_mul(other)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (parts, c) = self.terms.iter().next()?;
        (self.terms.len() == 1 && parts.is_empty())
            .then(|| c.unit_inverse().map(Self::scalar))
            .flatten()
    }
}

impl fmt::Display for SymFuncH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            write!(f, "({c})*h[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFuncH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct HTermJson<'a> {
    partition: &'a [usize],
    coef: &'a Polynomial,
}

impl Serialize for SymFuncH {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (p, c) in &self.terms {
            seq.serialize_element(&HTermJson { partition: p, coef: c })?;
        }
        seq.end()
    }
}

/// `e_n` in the h-basis from `Σ_{i=0}^n (-1)^i e_i h_{n-i} = 0`.
pub fn e_in_h(table: &VarTable, n: usize) -> SymFuncH {
    let mut es = vec![SymFuncH::one(table)];
    for m in 1..=n {
        let mut acc = SymFuncH::zero(table);
        for i in 1..=m {
            let term = es[m - i].h_mul(&SymFuncH::h(table, i));
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        es.push(acc);
    }
    es.pop().unwrap()
}

/// `Σ_S c_S F_{n,S}` with `S ⊆ [n-1]` stored as a bitmask (bit `i-1` for `i`).
#[derive(Clone, PartialEq, Eq)]
pub struct QSymF {
    n: usize,
    table: VarTable,
    coeffs: BTreeMap<u64, Polynomial>,
}

pub fn subset_to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

pub fn mask_to_subset(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl QSymF {
    pub fn zero(n: usize, table: &VarTable) -> Self {
        QSymF {
            n,
            table: table.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `F_{n,S}` with coefficient 1.
    pub fn fundamental(n: usize, set: &[usize], table: &VarTable) -> Result<Self> {
        let mut out = Self::zero(n, table);
        out.add_term(set, Polynomial::one(table))?;
        Ok(out)
    }

    pub fn add_term(&mut self, set: &[usize], coeff: Polynomial) -> Result<()> {
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i >= self.n) {
            return Err(ForgeError::OutOfRange(format!(
                "descent {bad} is not in [{}]",
                self.n.saturating_sub(1)
            )));
        }
        self.add_mask(subset_to_mask(set), coeff);
        Ok(())
    }

    fn add_mask(&mut self, mask: u64, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(mask)
            .or_insert_with(|| Polynomial::zero(&self.table));
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, set: &[usize]) -> Polynomial {
        self.coeffs
            .get(&subset_to_mask(set))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.table))
    }

    /// `(subset, coefficient)` pairs in increasing bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> + '_ {
        self.coeffs.iter().map(|(&m, c)| (mask_to_subset(m), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "quasisymmetric functions of different degrees");
        let mut out = self.clone();
        for (&m, c) in &other.coeffs {
            out.add_mask(m, c.clone());
        }
        out
    }
}

impl fmt::Debug for QSymF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(s, c)| format!("({c})*F{s:?}"))
            .collect();
        write!(f, "QSymF[n={}] {}", self.n, parts.join(" + "))
    }
}

/// `ω(F_{n,S}) = F_{n,[n-1]∖S}`.
pub fn omega_f(f: &QSymF) -> QSymF {
    let full = if f.n == 0 { 0 } else { (1u64 << (f.n - 1)) - 1 };
    let mut out = QSymF::zero(f.n, &f.table);
    for (&m, c) in &f.coeffs {
        out.add_mask(full & !m, c.clone());
    }
    out
}

/// `(q;q)_n ps(F_{n,S}) = q^{ΣS}`, with `q` an index into the coefficient table.
pub fn nps_f(f: &QSymF, q: usize) -> Polynomial {
    let mut acc = Polynomial::zero(&f.table);
    for (set, c) in f.terms() {
        acc = &acc + &c.shift_var(q, set.iter().sum::<usize>() as u32);
    }
    acc
}

/// `(q;q)_n ps(h_λ)`, a q-multinomial per partition.
pub fn nps_h(f: &SymFuncH, q: usize) -> Result<Polynomial> {
    if f.is_zero() {
        return Ok(Polynomial::zero(&f.table));
    }
    let n = f.homogeneous_degree().ok_or_else(|| {
        ForgeError::InvalidInput("stable principal specialization needs a homogeneous input".into())
    })?;
    let mut acc = Polynomial::zero(&f.table);
    for (p, c) in &f.terms {
        acc = &acc + &(c * &q_multinomial(&f.table, q, n, p)?);
    }
    Ok(acc)
}

/// The table `table ∪ {x1, ..., xN}` used by monomial expansions.
pub fn monomial_table(table: &VarTable, n_vars: usize) -> VarTable {
    table.extended((1..=n_vars).map(|i| format!("x{i}")))
}

fn x_indices(table: &VarTable, n_vars: usize) -> Vec<usize> {
    (1..=n_vars).map(|i| table.idx(&format!("x{i}"))).collect()
}

/// Complete homogeneous `h_d(x_1..x_N)` as a polynomial over `target`.
fn h_monomials(target: &VarTable, xs: &[usize], d: usize) -> Polynomial {
    let mut acc = Polynomial::zero(target);
    let mut exps = vec![0u32; target.len()];
    fn rec(target: &VarTable, xs: &[usize], d: usize, exps: &mut Vec<u32>, acc: &mut Polynomial) {
        match xs.split_first() {
            None => {
                if d == 0 {
                    *acc = &*acc + &Polynomial::monomial(target, exps.clone(), 1);
                }
            }
            Some((&x, rest)) => {
                for k in 0..=d {
                    exps[x] = k as u32;
                    rec(target, rest, d - k, exps, acc);
                }
                exps[x] = 0;
            }
        }
    }
    rec(target, xs, d, &mut exps, &mut acc);
    acc
}

/// Expansion of `h`-basis input in `x_1..x_N`, over [`monomial_table`].
pub fn monomial_expand_h(f: &SymFuncH, n_vars: usize) -> Polynomial {
    let target = monomial_table(&f.table, n_vars);
    let xs = x_indices(&target, n_vars);
    let mut cache: BTreeMap<usize, Polynomial> = BTreeMap::new();
    let mut acc = Polynomial::zero(&target);
    for (p, c) in &f.terms {
        let mut term = c.embed(&target).expect("coefficient table embeds");
        for &part in p {
            let hp = cache
                .entry(part)
                .or_insert_with(|| h_monomials(&target, &xs, part));
            term = &term * hp;
        }
        acc = &acc + &term;
    }
    acc
}

/// Expansion of `F`-basis input in `x_1..x_N`, over [`monomial_table`].
pub fn monomial_expand_f(f: &QSymF, n_vars: usize) -> Polynomial {
    let target = monomial_table(&f.table, n_vars);
    let xs = x_indices(&target, n_vars);
    let mut acc = Polynomial::zero(&target);
    for (&mask, c) in &f.coeffs {
        let chains = fundamental_chains(f.n, mask, &target, &xs);
        acc = &acc + &(&c.embed(&target).expect("coefficient table embeds") * &chains);
    }
    acc
}

fn fundamental_chains(n: usize, mask: u64, target: &VarTable, xs: &[usize]) -> Polynomial {
    let mut acc = Polynomial::zero(target);
    let mut exps = vec![0u32; target.len()];
    // Chooses i_1 >= ... >= i_n from position `pos` with `prev` the last index.
    fn rec(
        pos: usize,
        n: usize,
        prev: usize,
        mask: u64,
        xs: &[usize],
        target: &VarTable,
        exps: &mut Vec<u32>,
        acc: &mut Polynomial,
    ) {
        if pos == n {
            *acc = &*acc + &Polynomial::monomial(target, exps.clone(), 1);
            return;
        }
        let strict = pos > 0 && mask >> (pos - 1) & 1 == 1;
        let top = if strict { prev - 1 } else { prev };
        for i in 1..=top {
            exps[xs[i - 1]] += 1;
            rec(pos + 1, n, i, mask, xs, target, exps, acc);
            exps[xs[i - 1]] -= 1;
        }
    }
    rec(0, n, xs.len(), mask, xs, target, &mut exps, &mut acc);
    acc
}

/// Recovers the F-expansion of a homogeneous quasisymmetric polynomial of
/// degree `n` in the variables `x1..xN` (with `N >= n`) of its table.
///
/// The coefficient of `F_{n,S}` comes out of Möbius inversion over subsets
/// of the monomial coefficients; the input is then re-expanded to make sure
/// nothing is left over.
pub fn qsym_from_polynomial(p: &Polynomial, n: usize, n_vars: usize) -> Result<QSymF> {
    if n_vars < n {
        return Err(ForgeError::InvalidInput(format!(
            "need at least {n} variables to recover a degree-{n} function"
        )));
    }
    let table = p.table().clone();
    let xs = x_indices(&table, n_vars);
    let coeff_of = |exps: &[u32]| -> Polynomial {
        let terms: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .filter(|(e, _)| xs.iter().zip(exps).all(|(&x, &k)| e[x] == k))
            .map(|(e, c)| {
                let mut e = e.to_vec();
                for &x in &xs {
                    e[x] = 0;
                }
                (e, c.clone())
            })
            .collect();
        Polynomial::from_terms(&table, terms)
    };
    let full: u64 = if n == 0 { 0 } else { (1u64 << (n - 1)) - 1 };
    // Monomial coefficient for composition read along x_k, x_{k-1}, ..., x_1.
    let mut m_coeffs: BTreeMap<u64, Polynomial> = BTreeMap::new();
    for mask in 0..=full {
        let cuts: Vec<usize> = mask_to_subset(mask);
        let mut bounds = vec![0];
        bounds.extend(&cuts);
        bounds.push(n);
        let parts: Vec<u32> = bounds.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        let k = parts.len();
        let mut exps = vec![0u32; n_vars];
        for (i, &a) in parts.iter().enumerate() {
            exps[k - 1 - i] = a;
        }
        m_coeffs.insert(mask, coeff_of(&exps));
    }
    let mut out = QSymF::zero(n, &table);
    for mask in 0..=full {
        let mut acc = Polynomial::zero(&table);
        let mut sub = mask;
        loop {
            let c = &m_coeffs[&sub];
            let sign = (mask & !sub).count_ones() % 2 == 1;
            acc = if sign { &acc - c } else { &acc + c };
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        out.add_mask(mask, acc);
    }
    let residual = p - &monomial_expand_f(&out, n_vars).embed(&table)?;
    if !residual.is_zero() {
        return Err(ForgeError::NotQuasisymmetric(format!(
            "residual {residual} after F-expansion"
        )));
    }
    Ok(out)
}

/// Serializes a coefficient list as `[[subset], "poly"]` pairs.
impl Serialize for QSymF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (set, c) in self.terms() {
            seq.serialize_element(&(set, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab() -> VarTable {
        VarTable::new(["q"])
    }

    #[test]
    fn h_products() {
        let v = tab();
        let h1 = SymFuncH::h(&v, 1);
        let h2 = SymFuncH::h(&v, 2);
        assert_eq!(h2.h_mul(&h1), SymFuncH::h_partition(&v, &[2, 1]));
        assert_eq!(SymFuncH::one(&v).h_mul(&h2), h2);
        let sum = h1.add(&h2).h_mul(&h1);
        assert_eq!(
            sum,
            SymFuncH::h_partition(&v, &[1, 1]).add(&SymFuncH::h_partition(&v, &[2, 1]))
        );
        assert_eq!(SymFuncH::h(&v, 0), SymFuncH::one(&v));
    }

    #[test]
    fn elementary_in_h() {
        let v = tab();
        assert_eq!(e_in_h(&v, 0), SymFuncH::one(&v));
        assert_eq!(e_in_h(&v, 1), SymFuncH::h(&v, 1));
        assert_eq!(
            e_in_h(&v, 2),
            SymFuncH::h_partition(&v, &[1, 1]).sub(&SymFuncH::h(&v, 2))
        );
    }

    #[test]
    fn omega_and_nps() {
        let v = tab();
        let f = QSymF::fundamental(3, &[1], &v).unwrap();
        assert_eq!(omega_f(&f), QSymF::fundamental(3, &[2], &v).unwrap());
        let f0 = QSymF::fundamental(4, &[], &v).unwrap();
        assert_eq!(omega_f(&f0), QSymF::fundamental(4, &[1, 2, 3], &v).unwrap());
        assert_eq!(nps_f(&QSymF::fundamental(2, &[1], &v).unwrap(), 0).to_string(), "q");
        assert_eq!(nps_h(&SymFuncH::h(&v, 4), 0).unwrap().to_string(), "1");
        assert_eq!(
            nps_h(&SymFuncH::h_partition(&v, &[1, 1]), 0).unwrap().to_string(),
            "1+q"
        );
        let mixed = SymFuncH::h(&v, 1).add(&SymFuncH::h(&v, 2));
        assert!(nps_h(&mixed, 0).is_err());
        assert!(QSymF::fundamental(3, &[3], &v).is_err());
    }

    #[test]
    fn monomial_expansions() {
        let v = VarTable::new(Vec::<String>::new());
        let f1 = QSymF::fundamental(1, &[], &v).unwrap();
        assert_eq!(monomial_expand_f(&f1, 2).to_string(), "x2+x1");
        assert_eq!(
            monomial_expand_h(&SymFuncH::h(&v, 2), 2).to_string(),
            "x2^2+x1*x2+x1^2"
        );
        let f21 = QSymF::fundamental(2, &[1], &v).unwrap();
        assert_eq!(monomial_expand_f(&f21, 2).to_string(), "x1*x2");
    }

    #[test]
    fn recover_f_expansion() {
        let v = VarTable::new(Vec::<String>::new());
        let t = monomial_table(&v, 2);
        let sum = &t.var("x1") + &t.var("x2");
        let f = qsym_from_polynomial(&(&sum * &sum), 2, 2).unwrap();
        let expected = QSymF::fundamental(2, &[], &t)
            .unwrap()
            .add(&QSymF::fundamental(2, &[1], &t).unwrap());
        assert_eq!(f, expected);
        assert!(matches!(
            qsym_from_polynomial(&t.var("x1"), 1, 2),
            Err(ForgeError::NotQuasisymmetric(_))
        ));
        for n in 1..=4usize {
            let xt = monomial_table(&v, n);
            for mask in 0..(1u64 << (n - 1)) {
                let f = QSymF::fundamental(n, &mask_to_subset(mask), &xt).unwrap();
                let back = qsym_from_polynomial(&monomial_expand_f(&f, n), n, n).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn unit_detection() {
        let v = tab();
        assert!(SymFuncH::one(&v).unit_inverse().is_some());
        assert!(SymFuncH::h(&v, 1).unit_inverse().is_none());
    }
}
