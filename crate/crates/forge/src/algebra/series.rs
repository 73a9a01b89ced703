//! Power series in one distinguished variable `z`, truncated at a fixed cap.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::Polynomial;
use crate::error::{ForgeError, Result};

/// The coefficient rings used by [`TruncatedSeries`].
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Inverse of a unit constant (±1), if `self` is one.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.table())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.table())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.constant_term();
        (self.is_constant() && c.abs() == BigInt::one()).then(|| self.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds a series with the given cap; missing coefficients are zero and
    /// coefficients past the cap are dropped.
    pub fn new(mut coeffs: Vec<R>, cap: usize, zero: &R) -> Self {
        coeffs.resize_with(cap + 1, || zero.zero_like());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(cap: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncatedSeries {
            coeffs: (0..=cap).map(f).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn check_caps(&self, other: &Self) {
        assert_eq!(self.cap(), other.cap(), "series caps differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_caps(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_caps(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_caps(other);
        let cap = self.cap();
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=cap)
            .map(|n| {
                (0..=n).fold(zero.clone(), |acc, k| {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&a.mul_ref(b))
                    }
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        Self::new(self.coeffs.iter().take(cap + 1).cloned().collect(), cap, &zero)
    }

    /// Multiplicative inverse up to the cap; needs a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0inv = self.coeffs[0]
            .unit_inverse()
            .ok_or(ForgeError::NonUnitConstant)?;
        let mut inv: Vec<R> = vec![c0inv.clone()];
        for n in 1..=self.cap() {
            let mut acc = c0inv.zero_like();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add_ref(&self.coeffs[k].mul_ref(&inv[n - k]));
                }
            }
            inv.push(acc.zero_like().sub_ref(&acc.mul_ref(&c0inv)));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }
}

impl TruncatedSeries<Polynomial> {
    /// `(f(z) - f(qz)) / z`, with `q` the given variable of the coefficient table.
    ///
    /// The result has cap one less than the input (cap 0 stays 0 and is zero).
    pub fn euler_diff(&self, q: usize) -> Self {
        let table = self.coeffs[0].table().clone();
        let one = Polynomial::one(&table);
        let cap = self.cap();
        if cap == 0 {
            return Self::new(Vec::new(), 0, &one);
        }
        let coeffs = (1..=cap)
            .map(|n| {
                let factor = &one - &one.shift_var(q, n as u32);
                &self.coeffs[n] * &factor
            })
            .collect();
        Self::new(coeffs, cap - 1, &one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::VarTable;

    #[test]
    fn geometric_series() {
        let v = VarTable::new(["q"]);
        let one = Polynomial::one(&v);
        let s = TruncatedSeries::new(vec![one.clone(), -one.clone()], 5, &one);
        let inv = s.invert().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == one));
        let unit = TruncatedSeries::new(vec![one.clone()], 3, &one);
        assert_eq!(unit.invert().unwrap(), unit);
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let v = VarTable::new(["q"]);
        let two = Polynomial::constant(&v, 2);
        let s = TruncatedSeries::new(vec![two.clone()], 2, &two);
        assert_eq!(s.invert().unwrap_err(), ForgeError::NonUnitConstant);
    }

    #[test]
    fn euler_diff_of_z_is_one_minus_q() {
        let v = VarTable::new(["q"]);
        let one = Polynomial::one(&v);
        let z = TruncatedSeries::new(vec![Polynomial::zero(&v), one.clone()], 3, &one);
        let d = z.euler_diff(0);
        assert_eq!(d.cap(), 2);
        assert_eq!(d.coeff(0).to_string(), "1-q");
        assert!(d.coeff(1).is_zero());
        let c = TruncatedSeries::new(vec![one.clone()], 3, &one);
        assert!(c.euler_diff(0).coeffs().iter().all(|x| x.is_zero()));
    }
}
