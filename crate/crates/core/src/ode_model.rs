//! The quadratic equation `w^(n) = sum a_kj w^(k) w^(j) + sum b_j w^(j) + c`,
//! the Bureau-number gate, shape checks, the singular set and syntactic
//! matching against the seven canonical forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::diffpoly::{DiffPoly, Jet, Monomial};
use crate::symcore::{binomial, rat, BigRational, Polynomial, RationalFunction, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("equation order must be at least 2, got {0}")]
    OrderTooLow(usize),
    #[error("derivative index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("term of degree {0} in w is not quadratic")]
    NotQuadratic(u32),
}

/// Coefficients are exact rational functions of `z`. Quadratic slots are
/// stored once with `k >= j`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticODE {
    n: usize,
    a: BTreeMap<(usize, usize), RationalFunction>,
    b: BTreeMap<usize, RationalFunction>,
    c: RationalFunction,
}

fn ordered(k: usize, j: usize) -> (usize, usize) {
    if k >= j {
        (k, j)
    } else {
        (j, k)
    }
}

impl QuadraticODE {
    pub fn new(n: usize) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::OrderTooLow(n));
        }
        Ok(QuadraticODE {
            n,
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            c: RationalFunction::zero(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn check(&self, idx: usize) -> Result<(), ModelError> {
        if idx >= self.n {
            Err(ModelError::IndexOutOfRange {
                index: idx,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// `a_{k,j}`, symmetric in its indices.
    pub fn quadratic(&self, k: usize, j: usize) -> RationalFunction {
        self.a.get(&ordered(k, j)).cloned().unwrap_or_default()
    }

    pub fn linear(&self, j: usize) -> RationalFunction {
        self.b.get(&j).cloned().unwrap_or_default()
    }

    pub fn free_term(&self) -> &RationalFunction {
        &self.c
    }

    pub fn set_quadratic(
        &mut self,
        k: usize,
        j: usize,
        coef: RationalFunction,
    ) -> Result<(), ModelError> {
        self.check(k)?;
        self.check(j)?;
        let key = ordered(k, j);
        if coef.is_zero() {
            self.a.remove(&key);
        } else {
            self.a.insert(key, coef);
        }
        Ok(())
    }

    pub fn set_linear(&mut self, j: usize, coef: RationalFunction) -> Result<(), ModelError> {
        self.check(j)?;
        if coef.is_zero() {
            self.b.remove(&j);
        } else {
            self.b.insert(j, coef);
        }
        Ok(())
    }

    pub fn set_free_term(&mut self, coef: RationalFunction) {
        self.c = coef;
    }

    /// Builder form of [`set_quadratic`](Self::set_quadratic); panics on an
    /// out-of-range index.
    pub fn with_quadratic(mut self, k: usize, j: usize, coef: RationalFunction) -> Self {
        self.set_quadratic(k, j, coef).expect("index in range");
        self
    }

    pub fn with_linear(mut self, j: usize, coef: RationalFunction) -> Self {
        self.set_linear(j, coef).expect("index in range");
        self
    }

    pub fn with_free_term(mut self, coef: RationalFunction) -> Self {
        self.c = coef;
        self
    }

    /// Nonzero quadratic coefficients keyed by `(k, j)` with `k >= j`.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), &RationalFunction)> {
        self.a.iter().map(|(&kj, c)| (kj, c))
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, &RationalFunction)> {
        self.b.iter().map(|(&j, c)| (j, c))
    }

    /// All nonzero coefficient functions.
    pub fn coefficients(&self) -> impl Iterator<Item = &RationalFunction> {
        self.a
            .values()
            .chain(self.b.values())
            .chain(std::iter::once(&self.c).filter(|c| !c.is_zero()))
    }

    pub fn is_linear(&self) -> bool {
        self.a.is_empty()
    }

    /// Multiplies every quadratic coefficient by `lambda`.
    pub fn scale_quadratic(&self, lambda: &BigRational) -> Self {
        let mut out = self.clone();
        for c in out.a.values_mut() {
            *c = c.scale(lambda);
        }
        out.a.retain(|_, c| !c.is_zero());
        out
    }

    /// Right-hand side as a differential polynomial in jets of variable `var`.
    pub fn rhs_diffpoly(&self, var: u8) -> DiffPoly {
        let mut p = DiffPoly::constant(self.c.clone());
        for (&(k, j), c) in &self.a {
            let m = Monomial::from_factors(&[Jet::new(var, k as u32), Jet::new(var, j as u32)]);
            p.add_term(m, c);
        }
        for (&j, c) in &self.b {
            p.add_term(Monomial::jet(Jet::new(var, j as u32)), c);
        }
        p
    }

    /// Rebuilds an equation of order `n` from a right-hand side given as a
    /// differential polynomial in variable `var`.
    pub fn from_rhs_diffpoly(n: usize, rhs: &DiffPoly, var: u8) -> Result<Self, ModelError> {
        let mut eq = QuadraticODE::new(n)?;
        for (m, c) in rhs.terms() {
            let jets = m.jets();
            if jets.iter().any(|j| j.var != var) {
                return Err(ModelError::NotQuadratic(m.degree()));
            }
            match jets.as_slice() {
                [] => eq.c = c.clone(),
                [j] => {
                    eq.check(j.order as usize)?;
                    eq.b.insert(j.order as usize, c.clone());
                }
                [j1, j2] => {
                    eq.check(j1.order as usize)?;
                    eq.check(j2.order as usize)?;
                    eq.a.insert(ordered(j1.order as usize, j2.order as usize), c.clone());
                }
                _ => return Err(ModelError::NotQuadratic(m.degree())),
            }
        }
        Ok(eq)
    }
}

/// Classification tags: the seven admissible classes and the rejection
/// reasons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    C4FI,
    C3ChazyXIII,
    C2Ia,
    C5FifthOrder,
    C4FVII,
    C3ChazyI,
    CNLinearizable,
    NotQuadraticShape,
    BadBureau,
    IncompleteResonances,
    NonConstantResonances,
    FailsViete,
    FailsConditions,
    LinearEquation,
}

impl ClassTag {
    pub const SEVEN: [ClassTag; 7] = [
        ClassTag::C4FI,
        ClassTag::C3ChazyXIII,
        ClassTag::C2Ia,
        ClassTag::C5FifthOrder,
        ClassTag::C4FVII,
        ClassTag::C3ChazyI,
        ClassTag::CNLinearizable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::C4FI => "C4_FI",
            ClassTag::C3ChazyXIII => "C3_ChazyXIII",
            ClassTag::C2Ia => "C2_Ia",
            ClassTag::C5FifthOrder => "C5_FifthOrder",
            ClassTag::C4FVII => "C4_FVII",
            ClassTag::C3ChazyI => "C3_ChazyI",
            ClassTag::CNLinearizable => "CN_Linearizable",
            ClassTag::NotQuadraticShape => "NotQuadraticShape",
            ClassTag::BadBureau => "BadBureau",
            ClassTag::IncompleteResonances => "IncompleteResonances",
            ClassTag::NonConstantResonances => "NonConstantResonances",
            ClassTag::FailsViete => "FailsViete",
            ClassTag::FailsConditions => "FailsConditions",
            ClassTag::LinearEquation => "LinearEquation",
        }
    }

    pub fn parse(s: &str) -> Option<ClassTag> {
        [
            ClassTag::C4FI,
            ClassTag::C3ChazyXIII,
            ClassTag::C2Ia,
            ClassTag::C5FifthOrder,
            ClassTag::C4FVII,
            ClassTag::C3ChazyI,
            ClassTag::CNLinearizable,
            ClassTag::NotQuadraticShape,
            ClassTag::BadBureau,
            ClassTag::IncompleteResonances,
            ClassTag::NonConstantResonances,
            ClassTag::FailsViete,
            ClassTag::FailsConditions,
            ClassTag::LinearEquation,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }

    pub fn is_class(self) -> bool {
        Self::SEVEN.contains(&self)
    }

    /// Order fixed by the class, `None` for the arbitrary-order class and for
    /// rejection tags.
    pub fn fixed_order(self) -> Option<usize> {
        match self {
            ClassTag::C2Ia => Some(2),
            ClassTag::C3ChazyXIII | ClassTag::C3ChazyI => Some(3),
            ClassTag::C4FI | ClassTag::C4FVII => Some(4),
            ClassTag::C5FifthOrder => Some(5),
            _ => None,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `B = n - max{k + j : a_kj != 0}`; `None` for a linear equation.
pub fn bureau_number(eq: &QuadraticODE) -> Option<i64> {
    eq.a
        .keys()
        .map(|&(k, j)| k + j)
        .max()
        .map(|m| eq.n as i64 - m as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeRejection {
    Linear,
    BureauOutOfRange(i64),
    /// No leading coefficient with `k >= n - 2`.
    LeadingTermRule,
}

impl fmt::Display for ShapeRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeRejection::Linear => write!(f, "equation is linear"),
            ShapeRejection::BureauOutOfRange(b) => write!(f, "Bureau number {b} is not 1 or 2"),
            ShapeRejection::LeadingTermRule => write!(
                f,
                "leading terms must involve w^(n-1) or w^(n-2)"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeadingShape {
    B1Form,
    B2Form,
    Rejected(ShapeRejection),
}

pub fn leading_shape_check(eq: &QuadraticODE) -> LeadingShape {
    let b = match bureau_number(eq) {
        None => return LeadingShape::Rejected(ShapeRejection::Linear),
        Some(b) => b,
    };
    if b != 1 && b != 2 {
        return LeadingShape::Rejected(ShapeRejection::BureauOutOfRange(b));
    }
    let n = eq.n;
    let weight = n - b as usize;
    let has_high = leading_terms(eq).any(|((k, _), _)| k + 2 >= n);
    debug_assert!(leading_terms(eq).all(|((k, j), _)| k + j == weight));
    if !has_high {
        return LeadingShape::Rejected(ShapeRejection::LeadingTermRule);
    }
    if b == 1 {
        LeadingShape::B1Form
    } else {
        LeadingShape::B2Form
    }
}

/// Quadratic terms of maximal weight `k + j`.
pub fn leading_terms(eq: &QuadraticODE) -> impl Iterator<Item = ((usize, usize), &RationalFunction)> {
    let top = eq.a.keys().map(|&(k, j)| k + j).max();
    eq.a.iter()
        .filter(move |(&(k, j), _)| Some(k + j) == top)
        .map(|(&kj, c)| (kj, c))
}

/// Zeros and poles of all nonzero coefficients, as the roots of one monic
/// squarefree polynomial in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSet {
    poly: Polynomial,
}

impl SingularSet {
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn contains(&self, z: &BigRational) -> bool {
        !self.is_empty() && self.poly.eval(z) == rat(0)
    }
}

impl fmt::Display for SingularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "roots of {}", self.poly)
        }
    }
}

pub fn singular_points(eq: &QuadraticODE) -> SingularSet {
    let mut prod = Polynomial::one(Var::Z);
    for c in eq.coefficients() {
        prod = &(&prod * c.numer()) * c.denom();
    }
    SingularSet {
        poly: prod.squarefree(),
    }
}

/// One syntactic match of a canonical form with its leading function `A(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatch {
    pub tag: ClassTag,
    pub leading: RationalFunction,
}

/// Leading block of `A (w^2)^(n-1)` as stored coefficients: by Leibniz,
/// `a_{k, n-1-k} = A * C(n-1, k)` on the diagonal and twice that off it.
pub fn leibniz_square_block(n: usize) -> Vec<((usize, usize), BigRational)> {
    let m = n - 1;
    (0..=m)
        .filter(|&k| 2 * k >= m)
        .map(|k| {
            let j = m - k;
            let mult = if k == j { rat(1) } else { rat(2) };
            ((k, j), binomial(m, k) * mult)
        })
        .collect()
}

/// Purely syntactic matching against the seven canonical forms.
pub fn canonical_match(eq: &QuadraticODE) -> Vec<FormMatch> {
    let n = eq.n;
    let mut out = Vec::new();

    // (tag, order, leading slots with weights, extra allowed slot predicate)
    type Allowed = fn(usize, usize, usize) -> bool;
    let fixed: [(ClassTag, usize, &[((usize, usize), i64)], Allowed); 6] = [
        (ClassTag::C4FI, 4, &[((2, 0), 1), ((1, 1), 1)], |k, j, n| k + j < n - 2),
        (ClassTag::C3ChazyXIII, 3, &[((1, 0), 1)], |k, j, n| k + j < n - 2),
        (ClassTag::C2Ia, 2, &[((0, 0), 1)], |_, _, _| false),
        (ClassTag::C5FifthOrder, 5, &[((3, 1), 1), ((2, 2), 1)], |k, j, _| k + j <= 3),
        (ClassTag::C4FVII, 4, &[((2, 1), 1)], |k, j, _| k + j <= 2),
        (ClassTag::C3ChazyI, 3, &[((1, 1), 1)], |k, j, _| k + j <= 1),
    ];
    for (tag, order, slots, allowed) in fixed {
        if n != order {
            continue;
        }
        let weighted: Vec<((usize, usize), BigRational)> =
            slots.iter().map(|&(kj, w)| (kj, rat(w))).collect();
        if let Some(a) = match_block(eq, &weighted, allowed) {
            out.push(FormMatch { tag, leading: a });
        }
    }
    if let Some(a) = match_block(eq, &leibniz_square_block(n), |k, j, n| k + j < n - 1) {
        out.push(FormMatch {
            tag: ClassTag::CNLinearizable,
            leading: a,
        });
    }
    out
}

/// Checks `a_kj = A * weight` on the block, `A != 0`, and that every other
/// nonzero quadratic slot is allowed.
fn match_block(
    eq: &QuadraticODE,
    block: &[((usize, usize), BigRational)],
    allowed: fn(usize, usize, usize) -> bool,
) -> Option<RationalFunction> {
    let ((k0, j0), w0) = block.first()?;
    let a = eq.quadratic(*k0, *j0).scale(&w0.recip());
    if a.is_zero() {
        return None;
    }
    for ((k, j), w) in block {
        if eq.quadratic(*k, *j) != a.scale(w) {
            return None;
        }
    }
    for &(k, j) in eq.a.keys() {
        if block.iter().any(|(kj, _)| *kj == (k, j)) {
            continue;
        }
        if !allowed(k, j, eq.n) {
            return None;
        }
    }
    Some(a)
}
