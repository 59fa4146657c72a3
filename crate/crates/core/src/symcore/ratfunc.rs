//! Rational functions of `z` in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{rat, Polynomial, Var};

/// `num / den` with `den` monic and `gcd(num, den) = 1`. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Normalizes the pair. Returns `None` when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let var = den.var();
        let num = num.with_var(var);
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.is_constant() {
            let inv = den.leading_coeff().recip();
            return Some(RationalFunction {
                num: num.scale(&inv),
                den: Polynomial::one(var),
            });
        }
        let g = Polynomial::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lc = d.leading_coeff().recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        Some(RationalFunction { num: n, den: d })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(Var::Z),
            den: Polynomial::one(Var::Z),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction {
            num: Polynomial::constant(c, Var::Z),
            den: Polynomial::one(Var::Z),
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn z() -> Self {
        Self::from_poly(Polynomial::x(Var::Z))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p.with_var(Var::Z),
            den: Polynomial::one(Var::Z),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if numerator and denominator are both of degree 0
    /// (or the function is zero).
    pub fn is_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn both_constant(&self, other: &Self) -> Option<(BigRational, BigRational)> {
        Some((self.is_constant()?, other.is_constant()?))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if let Some((a, b)) = self.both_constant(other) {
            return Some(Self::constant(a / b));
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(RationalFunction {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.recip()?.pow(-e)
        }
    }

    /// d/dz, by the quotient rule.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// `[f, f', f''/2!, ..., f^(m)/m!]`: entry `k` is the coefficient of
    /// `tau^k` in `f(z0 + tau)`, as a function of `z0`.
    pub fn taylor_coefficients(&self, m: usize) -> Vec<RationalFunction> {
        let mut out = Vec::with_capacity(m + 1);
        let mut d = self.clone();
        let mut fact = BigRational::one();
        for k in 0..=m {
            if k > 0 {
                d = d.derivative();
                fact *= rat(k as i64);
            }
            out.push(d.scale(&fact.recip()));
        }
        out
    }

    pub fn display_with(&self, name: &str) -> String {
        let n = self.num.display_with(name);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.term_count() > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = self.den.display_with(name);
        if self.den.term_count() > 1 || !self.den.leading_coeff().is_one() {
            format!("{n}/({d})")
        } else {
            format!("{n}/{d}")
        }
    }

    /// Whether the leading numerator coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("z"))
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = self.is_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.is_constant() {
            return self.scale(&c);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by the zero function; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
