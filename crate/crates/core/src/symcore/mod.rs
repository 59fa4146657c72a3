//! Exact arithmetic: rationals, univariate polynomials, rational functions of
//! `z`, differentiation and integer root extraction.
//!
//! Everything here is immutable after construction and free of floating point.

mod poly;
mod ratfunc;
mod roots;

pub use num_rational::BigRational;
pub use poly::{Polynomial, Var};
pub use ratfunc::RationalFunction;
pub use roots::{integer_roots, IntegerRoots};

pub(crate) use poly::rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("integer root does not fit in 64 bits")]
    RootOutOfRange,
}

/// `d f / dz`.
pub fn derivative(f: &RationalFunction) -> RationalFunction {
    f.derivative()
}

/// Constant value of `f`, if it does not depend on `z`.
pub fn is_constant(f: &RationalFunction) -> Option<BigRational> {
    f.is_constant()
}

/// `[f, f', f''/2!, ..., f^(m)/m!]` around a symbolic expansion point.
pub fn taylor_coefficients(f: &RationalFunction, m: usize) -> Vec<RationalFunction> {
    f.taylor_coefficients(m)
}

/// Rational number `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(rat(1), |acc, k| acc * rat(k))
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return rat(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
