//! q-integers, q-factorials and q-binomial coefficients in a chosen variable.

use super::poly::{Polynomial, VarTable};
use crate::error::{ForgeError, Result};

/// `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn q_int(table: &VarTable, q: usize, n: usize) -> Polynomial {
    let one = Polynomial::one(table);
    (0..n).fold(Polynomial::zero(table), |acc, i| &acc + &one.shift_var(q, i as u32))
}

/// `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`.
pub fn q_pochhammer(table: &VarTable, q: usize, n: usize) -> Polynomial {
    let one = Polynomial::one(table);
    (1..=n).fold(one.clone(), |acc, i| &acc * &(&one - &one.shift_var(q, i as u32)))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(table: &VarTable, q: usize, n: usize) -> Polynomial {
    (1..=n).fold(Polynomial::one(table), |acc, i| &acc * &q_int(table, q, i))
}

/// Gaussian binomial coefficient, obtained by exact division of q-factorials.
pub fn q_binomial(table: &VarTable, q: usize, n: usize, k: i64) -> Result<Polynomial> {
    if k < 0 || k as usize > n {
        return Err(ForgeError::OutOfRange(format!("q-binomial ({n} choose {k})")));
    }
    q_multinomial(table, q, n, &[k as usize, n - k as usize])
}

/// q-multinomial coefficient `(q;q)_n / prod (q;q)_{parts_i}`.
pub fn q_multinomial(table: &VarTable, q: usize, n: usize, parts: &[usize]) -> Result<Polynomial> {
    if parts.iter().sum::<usize>() != n {
        return Err(ForgeError::OutOfRange(format!(
            "parts {parts:?} do not sum to {n}"
        )));
    }
    parts.iter().try_fold(q_pochhammer(table, q, n), |acc, &p| {
        acc.div_exact(&q_pochhammer(table, q, p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let v = VarTable::new(["q"]);
        assert!(q_int(&v, 0, 0).is_zero());
        assert_eq!(q_int(&v, 0, 1).to_string(), "1");
        assert_eq!(q_int(&v, 0, 3).to_string(), "1+q+q^2");
        assert_eq!(q_binomial(&v, 0, 5, 0).unwrap().to_string(), "1");
        assert_eq!(q_binomial(&v, 0, 2, 1).unwrap().to_string(), "1+q");
        assert_eq!(
            q_multinomial(&v, 0, 4, &[2, 2]).unwrap().to_string(),
            "1+q+2*q^2+q^3+q^4"
        );
    }

    #[test]
    fn out_of_range() {
        let v = VarTable::new(["q"]);
        assert!(q_binomial(&v, 0, 3, 4).is_err());
        assert!(q_binomial(&v, 0, 3, -1).is_err());
        assert!(q_multinomial(&v, 0, 3, &[1, 1]).is_err());
    }
}
