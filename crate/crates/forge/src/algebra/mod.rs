//! Exact polynomial and truncated power-series arithmetic.

pub mod poly;
pub mod qanalog;
pub mod series;

pub use poly::{Polynomial, VarTable};
pub use qanalog::{q_binomial, q_factorial, q_int, q_multinomial, q_pochhammer};
pub use series::{Ring, TruncatedSeries};
