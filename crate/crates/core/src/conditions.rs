//! Explicit strong-Painlevé conditions for three of the seven classes: the
//! fifth-order reduction to a Chazy-I system, the Chazy-I identities, and the
//! linearization of `w^(n) = A (w^2)^(n-1) + ...`.

use std::collections::BTreeMap;
use std::fmt;

use crate::classifier::ClassificationReport;
use crate::diffpoly::{DiffPoly, Jet, Monomial};
use crate::ode_model::{canonical_match, ClassTag, QuadraticODE};
use crate::painleve_test::{expand_solution, ExpansionError, ExpansionPoint};
use crate::symcore::{factorial, rat, ratio, Polynomial, RationalFunction};

const V: u8 = 0;
const U: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error("equation does not have the {0} shape")]
    ShapeMismatch(ClassTag),
    #[error("reduction failed: {reason}; residual {residual}")]
    ReductionFailure { reason: String, residual: DiffPoly },
}

/// Coefficients of
/// `u'' = L1 u' + L2 u + L3 + h1 v v' + h2 v' + h3 v`,
/// `v''' = -6 v'^2 + K1 v'' + K2 v v' + K3 v^2 + K4 v' + K5 v + u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChazySystem {
    pub k: [RationalFunction; 5],
    pub l: [RationalFunction; 3],
    pub h: [RationalFunction; 3],
}

fn jet(var: u8, order: u32) -> DiffPoly {
    DiffPoly::jet(var, order)
}

fn mono(jets: &[(u8, u32)]) -> Monomial {
    let js: Vec<Jet> = jets.iter().map(|&(v, o)| Jet::new(v, o)).collect();
    Monomial::from_factors(&js)
}

/// `d^k/dz^k (s * v)` for every `k <= n`, as polynomials in the jets of `v`.
fn scaled_derivatives(s: &RationalFunction, n: usize) -> Vec<DiffPoly> {
    let mut out = vec![jet(V, 0).scale(s)];
    for k in 1..=n {
        let next = out[k - 1].derivative();
        out.push(next);
    }
    out
}

/// Solves the equation for its top derivative after `w = s * v`: returns the
/// right-hand side for `v^(n)`.
fn solved_top_derivative(eq: &QuadraticODE, s: &RationalFunction) -> DiffPoly {
    let n = eq.order();
    let ws = scaled_derivatives(s, n);
    let rhs = eq
        .rhs_diffpoly(V)
        .substitute(&|j| (j.var == V).then(|| ws[j.order as usize].clone()));
    let top = Monomial::jet(Jet::new(V, n as u32));
    let lead = ws[n].coeff(&top);
    let rest = ws[n].sub(&DiffPoly::term(top, lead.clone()));
    rhs.sub(&rest).scale(&lead.recip().expect("s is nonzero"))
}

fn fifth_order_u(k: &[RationalFunction; 5]) -> DiffPoly {
    jet(V, 3)
        .add(&jet(V, 1).pow(2).scale_rat(&rat(6)))
        .sub(&jet(V, 2).scale(&k[0]))
        .sub(&jet(V, 1).mul(&jet(V, 0)).scale(&k[1]))
        .sub(&jet(V, 0).pow(2).scale(&k[2]))
        .sub(&jet(V, 1).scale(&k[3]))
        .sub(&jet(V, 0).scale(&k[4]))
}

/// `u'' - L1 u' - L2 u - L3` with `v^(5)` eliminated.
fn fifth_order_defect(
    v5: &DiffPoly,
    k: &[RationalFunction; 5],
    l: &[RationalFunction; 3],
) -> DiffPoly {
    let u = fifth_order_u(k);
    let u1 = u.derivative();
    let u2 = u1.derivative();
    let top = Jet::new(V, 5);
    let u2 = u2.substitute(&|j| (j == top).then(|| v5.clone()));
    u2.sub(&u1.scale(&l[0]))
        .sub(&u.scale(&l[1]))
        .sub(&DiffPoly::constant(l[2].clone()))
}

#[derive(Clone, Copy)]
enum Unknown {
    K(usize),
    L(usize),
}

/// Reduces a fifth-order equation of shape `A (w' w''' + w''^2) + ...` to a
/// Chazy-I system by `w = -12 v / A` and coefficient matching.
pub fn reduce_fifth_order(eq: &QuadraticODE) -> Result<ChazySystem, ConditionError> {
    let a = canonical_match(eq)
        .into_iter()
        .find(|m| m.tag == ClassTag::C5FifthOrder)
        .ok_or(ConditionError::ShapeMismatch(ClassTag::C5FifthOrder))?
        .leading;
    let s = RationalFunction::from_i64(-12) / &a;
    let v5 = solved_top_derivative(eq, &s);

    let mut k: [RationalFunction; 5] = Default::default();
    let mut l: [RationalFunction; 3] = Default::default();
    // each pivot coefficient is affine in its unknown, with a constant slope,
    // once the earlier unknowns are fixed
    let steps: [(Monomial, Unknown); 8] = [
        (mono(&[(V, 0), (V, 3)]), Unknown::K(1)),
        (mono(&[(V, 1), (V, 2)]), Unknown::L(0)),
        (mono(&[(V, 4)]), Unknown::K(0)),
        (mono(&[(V, 0), (V, 2)]), Unknown::K(2)),
        (mono(&[(V, 1), (V, 1)]), Unknown::L(1)),
        (mono(&[(V, 3)]), Unknown::K(3)),
        (mono(&[(V, 2)]), Unknown::K(4)),
        (Monomial::one(), Unknown::L(2)),
    ];
    for (pivot, unknown) in &steps {
        let set = |k: &mut [RationalFunction; 5], l: &mut [RationalFunction; 3], x: RationalFunction| match unknown {
            Unknown::K(i) => k[*i] = x,
            Unknown::L(i) => l[*i] = x,
        };
        set(&mut k, &mut l, RationalFunction::zero());
        let c0 = fifth_order_defect(&v5, &k, &l).coeff(pivot);
        set(&mut k, &mut l, RationalFunction::one());
        let c1 = fifth_order_defect(&v5, &k, &l).coeff(pivot);
        let slope = &c1 - &c0;
        let Some(inv) = slope.recip() else {
            return Err(ConditionError::ReductionFailure {
                reason: "pivot coefficient does not depend on its unknown".into(),
                residual: DiffPoly::term(pivot.clone(), c0),
            });
        };
        set(&mut k, &mut l, -(&c0 * &inv));
    }

    let d = fifth_order_defect(&v5, &k, &l);
    let allowed = [
        mono(&[(V, 0), (V, 1)]),
        mono(&[(V, 1)]),
        mono(&[(V, 0)]),
    ];
    let mut residual = DiffPoly::zero();
    for (m, c) in d.terms() {
        if !allowed.contains(m) {
            residual.add_term(m.clone(), c);
        }
    }
    if !residual.is_zero() {
        return Err(ConditionError::ReductionFailure {
            reason: "terms outside the Chazy-I system remain".into(),
            residual,
        });
    }
    let h = [d.coeff(&allowed[0]), d.coeff(&allowed[1]), d.coeff(&allowed[2])];
    Ok(ChazySystem { k, l, h })
}

impl ChazySystem {
    /// Undoes the reduction: eliminates `u` and substitutes `v = -A w / 12`,
    /// giving back a fifth-order equation in `w`.
    pub fn reconstruct(&self, a: &RationalFunction) -> QuadraticODE {
        let u = fifth_order_u(&self.k);
        let u1 = u.derivative();
        let p = u1
            .derivative()
            .sub(&u1.scale(&self.l[0]))
            .sub(&u.scale(&self.l[1]))
            .sub(&DiffPoly::constant(self.l[2].clone()))
            .sub(&jet(V, 0).mul(&jet(V, 1)).scale(&self.h[0]))
            .sub(&jet(V, 1).scale(&self.h[1]))
            .sub(&jet(V, 0).scale(&self.h[2]));
        let vs = scaled_derivatives(&a.scale(&ratio(-1, 12)), 5);
        let pw = p.substitute(&|j| (j.var == V).then(|| vs[j.order as usize].clone()));
        let top = Monomial::jet(Jet::new(V, 5));
        let lead = pw.coeff(&top);
        let rhs = pw
            .sub(&DiffPoly::term(top, lead.clone()))
            .scale(&-(lead.recip().expect("A is nonzero")));
        QuadraticODE::from_rhs_diffpoly(5, &rhs, V).expect("quadratic by construction")
    }
}

/// `Ok` when `h1 = h2 = h3 = 0`; otherwise the first nonzero `h_i` (1-based).
pub fn lemma1_check(sys: &ChazySystem) -> Result<(), (usize, RationalFunction)> {
    match sys.h.iter().position(|h| !h.is_zero()) {
        None => Ok(()),
        Some(i) => Err((i + 1, sys.h[i].clone())),
    }
}

/// A violated identity `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: {} != {}", self.identity, self.lhs, self.rhs)
    }
}

fn k_identities(k: &[RationalFunction; 5]) -> Vec<(&'static str, RationalFunction, RationalFunction)> {
    let zero = RationalFunction::zero;
    vec![
        ("K1 = 0", k[0].clone(), zero()),
        ("K2 = 0", k[1].clone(), zero()),
        ("K3 = K4", k[2].clone(), k[3].clone()),
        ("K4'' = K4^2", k[3].derivative().derivative(), &k[3] * &k[3]),
        ("K5'' = K4*K5", k[4].derivative().derivative(), &k[3] * &k[4]),
    ]
}

fn first_failure(
    list: Vec<(&'static str, RationalFunction, RationalFunction)>,
) -> Result<(), IdentityFailure> {
    for (identity, lhs, rhs) in list {
        if lhs != rhs {
            return Err(IdentityFailure { identity, lhs, rhs });
        }
    }
    Ok(())
}

/// The Chazy-I identities, checked in order.
pub fn chazy1_conditions(sys: &ChazySystem) -> Result<(), IdentityFailure> {
    let mut list = k_identities(&sys.k);
    let k5_6 = sys.k[4].scale(&ratio(1, 6));
    list.extend([
        ("L1 = 0", sys.l[0].clone(), RationalFunction::zero()),
        ("L2 = K4/3", sys.l[1].clone(), sys.k[3].scale(&ratio(1, 3))),
        ("L3 = (K5/6)^2", sys.l[2].clone(), &k5_6 * &k5_6),
    ]);
    first_failure(list)
}

/// Third-order equation `A w'^2 + ...` normalized by `w = -6 v / A` to
/// `v''' = -6 v'^2 + K1 v'' + K2 v v' + K3 v^2 + K4 v' + K5 v + u(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChazyNormalForm {
    pub k: [RationalFunction; 5],
    pub u: RationalFunction,
    pub notes: Vec<String>,
}

pub fn chazy1_normal_form(eq: &QuadraticODE) -> Result<ChazyNormalForm, ConditionError> {
    let a = canonical_match(eq)
        .into_iter()
        .find(|m| m.tag == ClassTag::C3ChazyI)
        .ok_or(ConditionError::ShapeMismatch(ClassTag::C3ChazyI))?
        .leading;
    let s = RationalFunction::from_i64(-6) / &a;
    let v3 = solved_top_derivative(eq, &s);
    let slots = [
        mono(&[(V, 2)]),
        mono(&[(V, 0), (V, 1)]),
        mono(&[(V, 0), (V, 0)]),
        mono(&[(V, 1)]),
        mono(&[(V, 0)]),
    ];
    let k: [RationalFunction; 5] = std::array::from_fn(|i| v3.coeff(&slots[i]));
    let u = v3.coeff(&Monomial::one());
    let lead = mono(&[(V, 1), (V, 1)]);
    let mut rest = v3.clone();
    for m in slots.iter().chain([&lead, &Monomial::one()]) {
        rest = rest.sub(&DiffPoly::term(m.clone(), v3.coeff(m)));
    }
    if v3.coeff(&lead) != RationalFunction::from_i64(-6) || !rest.is_zero() {
        return Err(ConditionError::ReductionFailure {
            reason: "normalization did not produce the Chazy-I form".into(),
            residual: rest,
        });
    }
    let mut notes = Vec::new();
    if !a.numer().is_constant() {
        notes.push(format!(
            "A = {a} has zeros; the normalization w = -6 v / A is singular there"
        ));
    }
    Ok(ChazyNormalForm { k, u, notes })
}

/// K identities and `u'' = K4 u / 3 + (K5/6)^2` for the normal form.
pub fn chazy1_equation_conditions(nf: &ChazyNormalForm) -> Result<(), IdentityFailure> {
    let mut list = k_identities(&nf.k);
    let k5_6 = nf.k[4].scale(&ratio(1, 6));
    list.push((
        "u'' = K4*u/3 + (K5/6)^2",
        nf.u.derivative().derivative(),
        &(&nf.k[3] * &nf.u).scale(&ratio(1, 3)) + &(&k5_6 * &k5_6),
    ));
    first_failure(list)
}

/// Terms `a_chi w^chi0 prod u^(j-1)^chi_j` of the transformed first equation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformedSystem {
    pub terms: BTreeMap<Vec<u32>, RationalFunction>,
}

impl TransformedSystem {
    fn from_diffpoly(p: &DiffPoly, n: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut chi = vec![0u32; n];
            for &(j, e) in m.factors() {
                match j.var {
                    V => chi[0] += e,
                    _ => chi[j.order as usize + 1] += e,
                }
            }
            terms.insert(chi, c.clone());
        }
        TransformedSystem { terms }
    }

    /// `p(chi) = sum (j + 1) chi_j`.
    pub fn weight(chi: &[u32]) -> u32 {
        chi.iter().enumerate().map(|(j, &c)| (j as u32 + 1) * c).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|c| Self::weight(c)).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationResult {
    pub order: usize,
    pub b: RationalFunction,
    /// Coefficients `c_j` of `u^(n-1) = sum_j c_j u^(j) + c`, for `j < n - 1`.
    pub u_coefficients: Vec<RationalFunction>,
    pub free_term: RationalFunction,
    pub residual_degree_in_w: u32,
    pub transformed: TransformedSystem,
}

fn u_name(k: usize) -> String {
    if k <= 4 {
        format!("u{}", "'".repeat(k))
    } else {
        format!("u^({k})")
    }
}

impl LinearizationResult {
    /// The linear equation for `u`, e.g. `u'' = u`.
    pub fn equation_text(&self) -> String {
        if self.order - 1 < 2 {
            let mut parts = Vec::new();
            for (j, c) in self.u_coefficients.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!("({c})*{}", u_name(j)));
                }
            }
            if !self.free_term.is_zero() {
                parts.push(format!("{}", self.free_term));
            }
            let rhs = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
            return format!("{} = {rhs}", u_name(self.order - 1));
        }
        let mut q = QuadraticODE::new(self.order - 1).expect("order at least 2");
        for (j, c) in self.u_coefficients.iter().enumerate() {
            q.set_linear(j, c.clone()).expect("index in range");
        }
        q.set_free_term(self.free_term.clone());
        crate::odeparse::render(&q).replace('w', "u")
    }

    /// Poles of `B(z)`, as the monic denominator.
    pub fn b_poles(&self) -> &Polynomial {
        self.b.denom()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearizeError {
    #[error("equation does not have the (w^2)^(n-1) leading block")]
    ShapeMismatch,
    #[error("not linearizable with B = {b}: residual {residual}")]
    NotLinearizable { b: RationalFunction, residual: DiffPoly },
}

/// `u^(n-1) = G(w, u, ..., u^(n-2))` after `u = w' - A w^2 - B w`.
fn linearized_rhs(eq: &QuadraticODE, a: &RationalFunction, b: &RationalFunction) -> DiffPoly {
    let n = eq.order();
    let w = jet(V, 0);
    let dw = jet(U, 0).add(&w.pow(2).scale(a)).add(&w.scale(b));
    let d = |p: &DiffPoly| {
        p.derivative_with(&|j: Jet| {
            if j.var == V {
                dw.clone()
            } else {
                jet(U, j.order + 1)
            }
        })
    };
    let mut e = vec![w.clone()];
    for k in 1..=n {
        let next = d(&e[k - 1]);
        e.push(next);
    }
    let rhs = eq
        .rhs_diffpoly(V)
        .substitute(&|j| (j.var == V).then(|| e[j.order as usize].clone()));
    rhs.sub(&e[n]).add(&jet(U, n as u32 - 1))
}

/// Finds `B` from the `w^n` coefficient and checks that the transformed
/// equation is free of `w` and linear in `u`.
pub fn linearize(eq: &QuadraticODE) -> Result<LinearizationResult, LinearizeError> {
    let a = canonical_match(eq)
        .into_iter()
        .find(|m| m.tag == ClassTag::CNLinearizable)
        .ok_or(LinearizeError::ShapeMismatch)?
        .leading;
    let n = eq.order();
    let top = Monomial::from_factors(&vec![Jet::new(V, 0); n]);
    let c0 = linearized_rhs(eq, &a, &RationalFunction::zero()).coeff(&top);
    let c1 = linearized_rhs(eq, &a, &RationalFunction::one()).coeff(&top);
    let slope = &c1 - &c0;
    debug_assert_eq!(
        slope,
        a.pow(n as i32 - 1).unwrap().scale(&-factorial(n - 1))
    );
    let b = -(&c0 / &slope);
    let g = linearized_rhs(eq, &a, &b);
    let transformed = TransformedSystem::from_diffpoly(&g, n);
    debug_assert!(transformed.max_weight() <= n as u32);

    let mut residual = DiffPoly::zero();
    let mut u_coefficients = vec![RationalFunction::zero(); n - 1];
    let mut free_term = RationalFunction::zero();
    for (m, c) in g.terms() {
        let jets = m.jets();
        match jets.as_slice() {
            [] => free_term = c.clone(),
            [j] if j.var == U => u_coefficients[j.order as usize] = c.clone(),
            _ => residual.add_term(m.clone(), c),
        }
    }
    if !residual.is_zero() {
        return Err(LinearizeError::NotLinearizable { b, residual });
    }
    Ok(LinearizationResult {
        order: n,
        b,
        u_coefficients,
        free_term,
        residual_degree_in_w: 0,
        transformed,
    })
}

/// Expands `u = w' - A w^2 - B w` inside the linear equation, recovering an
/// order-`n` equation in `w`.
pub fn expand_linearization(a: &RationalFunction, res: &LinearizationResult) -> QuadraticODE {
    let n = res.order;
    let u = jet(V, 1)
        .sub(&jet(V, 0).pow(2).scale(a))
        .sub(&jet(V, 0).scale(&res.b));
    let mut du = vec![u];
    for k in 1..n {
        let next = du[k - 1].derivative();
        du.push(next);
    }
    // w^(n) appears in u^(n-1) with coefficient 1
    let top = Monomial::jet(Jet::new(V, n as u32));
    let mut rhs = du[n - 1].sub(&jet(V, n as u32)).neg();
    for (j, c) in res.u_coefficients.iter().enumerate() {
        rhs = rhs.add(&du[j].scale(c));
    }
    rhs = rhs.add(&DiffPoly::constant(res.free_term.clone()));
    debug_assert!(rhs.coeff(&top).is_zero());
    QuadraticODE::from_rhs_diffpoly(n, &rhs, V).expect("quadratic by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    StrongPainleve,
    NotStrongPainleve,
    ClassIdentified,
    ReductionFailed,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StrongPainleve => "StrongPainleve",
            Verdict::NotStrongPainleve => "NotStrongPainleve",
            Verdict::ClassIdentified => "ClassIdentified",
            Verdict::ReductionFailed => "ReductionFailed",
            Verdict::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the resonance-condition screen used for classes whose full
/// conditions are external.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Screen {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NscReport {
    pub verdict: Verdict,
    pub detail: String,
    pub reference: Option<&'static str>,
    pub system: Option<ChazySystem>,
    pub linearization: Option<LinearizationResult>,
    pub screen: Option<Screen>,
    pub notes: Vec<String>,
}

impl NscReport {
    fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        NscReport {
            verdict,
            detail: detail.into(),
            reference: None,
            system: None,
            linearization: None,
            screen: None,
            notes: Vec::new(),
        }
    }
}

fn external_reference(tag: ClassTag) -> Option<&'static str> {
    match tag {
        ClassTag::C4FI => Some("Cosgrove class F-I"),
        ClassTag::C3ChazyXIII => Some("Chazy class XIII"),
        ClassTag::C2Ia => Some("Ince, second-order case I(a)"),
        ClassTag::C4FVII => Some("Cosgrove class F-VII"),
        _ => None,
    }
}

/// Resonance conditions at a generic point, as a necessary-condition screen.
pub fn compatibility_screen(eq: &QuadraticODE) -> Screen {
    match expand_solution(eq, ExpansionPoint::Generic, None) {
        Ok((_, log)) => Screen {
            passed: true,
            detail: format!("all {} resonance conditions hold", log.len()),
        },
        Err(ExpansionError::ResonanceObstruction { index, residual, .. }) => Screen {
            passed: false,
            detail: format!("resonance condition fails at j = {index}: Q = {residual}"),
        },
        Err(e) => Screen {
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Dispatches to the condition check for the classified form.
pub fn nsc_check(eq: &QuadraticODE, cls: &ClassificationReport) -> NscReport {
    match cls.tag {
        ClassTag::C5FifthOrder => match reduce_fifth_order(eq) {
            Err(e) => NscReport::new(Verdict::ReductionFailed, e.to_string()),
            Ok(sys) => {
                let mut r = match lemma1_check(&sys) {
                    Err((i, h)) => NscReport::new(
                        Verdict::NotStrongPainleve,
                        format!("h{i} = {h} does not vanish"),
                    ),
                    Ok(()) => match chazy1_conditions(&sys) {
                        Ok(()) => NscReport::new(
                            Verdict::StrongPainleve,
                            "h1 = h2 = h3 = 0 and the Chazy-I identities hold",
                        ),
                        Err(f) => NscReport::new(Verdict::NotStrongPainleve, f.to_string()),
                    },
                };
                r.system = Some(sys);
                r
            }
        },
        ClassTag::CNLinearizable => match linearize(eq) {
            Ok(lin) => {
                let mut r = NscReport::new(
                    Verdict::StrongPainleve,
                    format!("B = {}, {}", lin.b, lin.equation_text()),
                );
                if !lin.b.is_polynomial() {
                    r.notes.push(format!("B has poles at the roots of {}", lin.b_poles()));
                }
                r.linearization = Some(lin);
                r
            }
            Err(e) => NscReport::new(Verdict::NotStrongPainleve, e.to_string()),
        },
        ClassTag::C3ChazyI => match chazy1_normal_form(eq) {
            Err(e) => NscReport::new(Verdict::ReductionFailed, e.to_string()),
            Ok(nf) => {
                let mut r = match chazy1_equation_conditions(&nf) {
                    Ok(()) => NscReport::new(Verdict::StrongPainleve, "Chazy-I identities hold"),
                    Err(f) => NscReport::new(Verdict::NotStrongPainleve, f.to_string()),
                };
                r.notes = nf.notes;
                r
            }
        },
        tag if external_reference(tag).is_some() => {
            let screen = compatibility_screen(eq);
            let mut r = NscReport::new(
                Verdict::ClassIdentified,
                format!("resonance screen {}", if screen.passed { "passed" } else { "failed" }),
            );
            r.reference = external_reference(tag);
            r.screen = Some(screen);
            r
        }
        tag => NscReport::new(Verdict::NotApplicable, format!("{tag} is not one of the seven classes")),
    }
}
