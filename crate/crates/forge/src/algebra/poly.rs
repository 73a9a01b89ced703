//! Sparse multivariate polynomials over the integers.
//!
//! Every polynomial is tied to a [`VarTable`]; arithmetic between
//! polynomials over different tables is refused. Terms are kept in
//! graded-lexicographic order, which fixes both `Display` and the JSON form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ForgeError, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug)]
pub struct VarTable {
    names: Arc<[String]>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        VarTable { names: names.into() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of a variable known to exist.
    ///
    /// Panics when `name` is missing; use [`VarTable::index`] for lookups
    /// driven by user input.
    pub fn idx(&self, name: &str) -> usize {
        self.index(name)
            .unwrap_or_else(|| panic!("variable `{name}` is not registered"))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(&self, name: &str) -> Polynomial {
        Polynomial::variable(self, self.idx(name))
    }

    /// A new table with `extra` appended (names already present are skipped).
    pub fn extended<I, S>(&self, extra: I) -> VarTable
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = self.names.to_vec();
        for name in extra {
            let name = name.into();
            if !names.contains(&name) {
                names.push(name);
            }
        }
        VarTable::new(names)
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarTable {}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    table: VarTable,
    terms: BTreeMap<Exponents, BigInt>,
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Polynomial {
    pub fn zero(table: &VarTable) -> Self {
        Polynomial {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &VarTable) -> Self {
        Self::constant(table, 1)
    }

    pub fn constant(table: &VarTable, c: impl Into<BigInt>) -> Self {
        Self::monomial(table, vec![0; table.len()], c)
    }

    pub fn variable(table: &VarTable, index: usize) -> Self {
        let mut exps = vec![0; table.len()];
        exps[index] = 1;
        Self::monomial(table, exps, 1)
    }

    pub fn monomial(table: &VarTable, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), table.len(), "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents(exps), c);
        }
        Polynomial {
            table: table.clone(),
            terms,
        }
    }

    /// Sums the given terms, merging equal exponents.
    pub fn from_terms<I>(table: &VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), table.len(), "exponent vector length");
            *acc.entry(exps).or_default() += c;
        }
        Self::from_map(table, acc)
    }

    fn from_map(table: &VarTable, acc: HashMap<Vec<u32>, BigInt>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Exponents(e), c))
            .collect();
        Polynomial {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Exponents(vec![0; self.table.len()]))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` among the terms (0 for the zero polynomial).
    pub fn low_degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).min().unwrap_or(0)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if self.table == other.table {
            Ok(())
        } else {
            Err(ForgeError::MismatchedVariables)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_default();
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Ok(Polynomial {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    fn mul_filtered(&self, other: &Self, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exps(&ea.0, &eb.0);
                if keep(&e) {
                    *acc.entry(e).or_default() += ca * cb;
                }
            }
        }
        Self::from_map(&self.table, acc)
    }

    /// Product keeping only terms whose degree in `vars` is at most `max`.
    pub fn mul_truncated(&self, other: &Self, vars: &[usize], max: u32) -> Self {
        self.check_table(other).expect("polynomials over different variable tables");
        self.mul_filtered(other, |e| vars.iter().map(|&v| e[v]).sum::<u32>() <= max)
    }

    /// Drops the terms whose degree in `vars` exceeds `max`.
    pub fn truncate_degree(&self, vars: &[usize], max: u32) -> Self {
        self.filter_terms(|e| vars.iter().map(|&v| e[v]).sum::<u32>() <= max)
    }

    pub fn filter_terms(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        Polynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(&e.0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn neg_ref(&self) -> Self {
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[u32]) -> Self {
        Polynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponents(add_exps(&e.0, exps)), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `var^power`.
    pub fn shift_var(&self, var: usize, power: u32) -> Self {
        let mut exps = vec![0; self.table.len()];
        exps[var] = power;
        self.shift(&exps)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.table);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `var^deg`, as a polynomial free of `var`.
    pub fn coefficient(&self, var: usize, deg: u32) -> Self {
        Polynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[var] == deg)
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.0[var] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Splits into coefficients of the powers of `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, BTreeMap<Exponents, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = std::mem::take(&mut rest.0[var]);
            out.entry(d).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(d, terms)| {
                (
                    d,
                    Polynomial {
                        table: self.table.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Replaces `var` by `value` (a polynomial over the same table).
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        self.check_table(value).expect("polynomials over different variable tables");
        let parts = self.coefficients_in(var);
        let mut acc = Self::zero(&self.table);
        let mut power = Self::one(&self.table);
        let mut current = 0;
        for (d, coeff) in parts {
            while current < d {
                power = &power * value;
                current += 1;
            }
            acc = &acc + &(&coeff * &power);
        }
        acc
    }

    /// Replaces `var` by an integer constant.
    pub fn specialize(&self, var: usize, value: i64) -> Self {
        self.substitute(var, &Self::constant(&self.table, value))
    }

    /// Rewrites the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &VarTable) -> Result<Self> {
        let mut map = Vec::with_capacity(self.table.len());
        for name in self.table.names() {
            map.push(target.index(name));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut out = vec![0; target.len()];
            for (i, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => out[j] = x,
                    None => {
                        return Err(ForgeError::UnknownVariable(self.table.name(i).to_string()))
                    }
                }
            }
            terms.insert(Exponents(out), c.clone());
        }
        Ok(Polynomial {
            table: target.clone(),
            terms,
        })
    }

    /// Exact division by a polynomial in a single variable whose leading
    /// coefficient is ±1.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Self> {
        self.check_table(divisor)?;
        if divisor.is_zero() {
            return Err(ForgeError::InexactDivision);
        }
        let active: Vec<usize> = (0..self.table.len())
            .filter(|&v| divisor.degree_in(v) > 0)
            .collect();
        if active.len() > 1 {
            return Err(ForgeError::InvalidInput(
                "divisor must involve at most one variable".into(),
            ));
        }
        let Some(&v) = active.first() else {
            let c = divisor.constant_term();
            if c.abs() != BigInt::one() {
                return Err(ForgeError::NonUnitConstant);
            }
            return Ok(self.scale(&c));
        };
        let d = divisor.degree_in(v);
        let lead = divisor.coefficient(v, d).constant_term();
        if lead.abs() != BigInt::one() {
            return Err(ForgeError::NonUnitConstant);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.table);
        while !rem.is_zero() {
            let top = rem.degree_in(v);
            if top < d {
                return Err(ForgeError::InexactDivision);
            }
            let step = rem.coefficient(v, top).scale(&lead).shift_var(v, top - d);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }

    /// Evaluates the polynomial with every variable set to the given integers.
    pub fn evaluate(&self, values: &[i64]) -> BigInt {
        assert_eq!(values.len(), self.table.len());
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = c.clone();
                for (x, &p) in values.iter().zip(&e.0) {
                    m *= BigInt::from(*x).pow(p);
                }
                m
            })
            .sum()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let factors: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    if p == 1 {
                        self.table.name(v).to_string()
                    } else {
                        format!("{}^{}", self.table.name(v), p)
                    }
                })
                .collect();
            let negative = c.is_negative();
            if i > 0 {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            } else if negative {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs)
                    .expect("polynomials over different variable tables")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: String,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.table.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.0.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PolyRepr::deserialize(deserializer)?;
        let table = VarTable::new(repr.vars);
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            if t.exp.len() != table.len() {
                return Err(D::Error::custom("exponent length does not match vars"));
            }
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient `{}`", t.coef)))?;
            terms.push((t.exp, c));
        }
        Ok(Polynomial::from_terms(&table, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tq() -> VarTable {
        VarTable::new(["t", "r", "q"])
    }

    #[test]
    fn products_expand() {
        let v = tq();
        let q = v.var("q");
        let t = v.var("t");
        let one = Polynomial::one(&v);
        assert_eq!((&q * &q).to_string(), "q^2");
        assert_eq!(((&one - &t) * (&one + &t)).to_string(), "1-t^2");
        let a = &one + &q;
        let b = &(&one + &q) + &(&q * &q);
        assert_eq!((&a * &b).to_string(), "1+2*q+2*q^2+q^3");
    }

    #[test]
    fn display_orders_graded_lex() {
        let v = tq();
        assert_eq!((v.var("t") + v.var("r")).to_string(), "r+t");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
        assert_eq!((-v.var("q")).to_string(), "-q");
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = VarTable::new(["q"]).var("q");
        let b = VarTable::new(["t"]).var("t");
        assert_eq!(a.checked_add(&b), Err(ForgeError::MismatchedVariables));
        assert_eq!(a.checked_mul(&b), Err(ForgeError::MismatchedVariables));
    }

    #[test]
    fn exact_division_and_remainder() {
        let v = tq();
        let one = Polynomial::one(&v);
        let q = v.var("q");
        let t = v.var("t");
        let num = &(&one - &q.pow(3)) * &(&t + &one);
        let den = &one - &q;
        let quot = num.div_exact(&den).unwrap();
        assert_eq!(&quot * &den, num);
        assert_eq!(
            (&one + &q).div_exact(&(&one - &q)).unwrap_err(),
            ForgeError::InexactDivision
        );
    }

    #[test]
    fn substitution_and_embedding() {
        let v = tq();
        let t = v.var("t");
        let q = v.var("q");
        let p = &(&t * &t) + &q;
        let s = p.substitute(v.idx("t"), &(&q + &Polynomial::one(&v)));
        assert_eq!(s.to_string(), "1+3*q+q^2");
        let wide = VarTable::new(["x", "q", "t", "r"]);
        let e = p.embed(&wide).unwrap();
        assert_eq!(e.to_string(), "q+t^2");
        assert!(p.embed(&VarTable::new(["q"])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = tq();
        let p = &(&v.var("t") * &v.var("r")).scale(&BigInt::from(-3)) + &v.var("q");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["t","r","q"],"terms":[{"exp":[0,0,1],"coef":"1"},{"exp":[1,1,0],"coef":"-3"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
