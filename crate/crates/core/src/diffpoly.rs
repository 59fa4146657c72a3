//! Polynomials in the derivatives ("jets") of one or more dependent variables,
//! with rational-function coefficients in `z`.
//!
//! This is the working representation for substitutions such as
//! `w = -12 v / A(z)` or `u = w' - A w^2 - B w`, where total derivatives have
//! to be pushed through products and coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::symcore::{rat, BigRational, RationalFunction};

/// The `order`-th derivative of dependent variable number `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    pub var: u8,
    pub order: u32,
}

impl Jet {
    pub const fn new(var: u8, order: u32) -> Self {
        Jet { var, order }
    }

    pub fn next(self) -> Self {
        Jet::new(self.var, self.order + 1)
    }
}

/// Product of jets with positive exponents, sorted by jet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Jet, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn jet(j: Jet) -> Self {
        Monomial(vec![(j, 1)])
    }

    pub fn from_factors(factors: &[Jet]) -> Self {
        factors
            .iter()
            .fold(Monomial::one(), |m, &j| m.mul(&Monomial::jet(j)))
    }

    pub fn factors(&self) -> &[(Jet, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, var: u8) -> u32 {
        self.0
            .iter()
            .filter(|(j, _)| j.var == var)
            .map(|(_, e)| e)
            .sum()
    }

    pub fn exponent(&self, j: Jet) -> u32 {
        self.0
            .iter()
            .find(|(x, _)| *x == j)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Jet, u32> = self.0.iter().copied().collect();
        for &(j, e) in &other.0 {
            *map.entry(j).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    /// Removes one power of `j`; `None` if `j` does not divide the monomial.
    pub fn without_one(&self, j: Jet) -> Option<Monomial> {
        let mut v = self.0.clone();
        let idx = v.iter().position(|(x, _)| *x == j)?;
        if v[idx].1 == 1 {
            v.remove(idx);
        } else {
            v[idx].1 -= 1;
        }
        Some(Monomial(v))
    }

    /// Jets as a flat list with repetition, ascending.
    pub fn jets(&self) -> Vec<Jet> {
        self.0
            .iter()
            .flat_map(|&(j, e)| std::iter::repeat_n(j, e as usize))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(RationalFunction::from_i64(c))
    }

    pub fn jet(var: u8, order: u32) -> Self {
        Self::term(Monomial::jet(Jet::new(var, order)), RationalFunction::one())
    }

    pub fn term(m: Monomial, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rat(&self, c: &BigRational) -> DiffPoly {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        (0..e).fold(DiffPoly::from_i64(1), |acc, _| acc.mul(self))
    }

    /// Highest total degree over all jets; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: u8) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(var))
            .max()
            .unwrap_or(0)
    }

    /// Highest derivative order of `var` present, if any.
    pub fn max_order(&self, var: u8) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter(|(j, _)| j.var == var)
            .map(|(j, _)| j.order)
            .max()
    }

    /// Total derivative, where `jet_derivative(j)` gives `d j / dz`.
    pub fn derivative_with(&self, jet_derivative: &dyn Fn(Jet) -> DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let dc = c.derivative();
            out.add_term(m.clone(), &dc);
            for &(j, e) in m.factors() {
                let rest = m.without_one(j).expect("factor present");
                let piece = DiffPoly::term(rest, c.scale(&rat(e as i64)));
                out = out.add(&piece.mul(&jet_derivative(j)));
            }
        }
        out
    }

    /// Plain total derivative: `d/dz` of jet `(v, k)` is `(v, k+1)`.
    pub fn derivative(&self) -> DiffPoly {
        self.derivative_with(&|j: Jet| DiffPoly::jet(j.var, j.order + 1))
    }

    /// Replaces every occurrence of each jet in `rules` by its image.
    pub fn substitute(&self, rules: &dyn Fn(Jet) -> Option<DiffPoly>) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for &(j, e) in m.factors() {
                let image = rules(j).unwrap_or_else(|| DiffPoly::jet(j.var, j.order));
                acc = acc.mul(&image.pow(e));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn display_with(&self, names: &dyn Fn(Jet) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .factors()
                .iter()
                .map(|&(j, e)| {
                    if e == 1 {
                        names(j)
                    } else {
                        format!("{}^{e}", names(j))
                    }
                })
                .collect();
            let coef = if c.numer().term_count() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            if mono.is_empty() {
                parts.push(coef);
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{coef}*{}", mono.join("*")));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Default jet names: `w, w', w'', ...` for var 0, `u, u', ...` for var 1.
pub fn default_jet_name(j: Jet) -> String {
    let base = match j.var {
        0 => "w",
        1 => "u",
        2 => "v",
        _ => "y",
    };
    match j.order {
        0..=4 => format!("{base}{}", "'".repeat(j.order as usize)),
        k => format!("{base}^({k})"),
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_jet_name))
    }
}
