//! Numeric continuation in the complex plane: adaptive Dormand-Prince 5(4)
//! integration along polylines and arcs, pole location, monodromy loops and
//! Laurent-series cross-checks.
//!
//! A finite set of loops can only falsify single-valuedness. A single-valued
//! verdict is evidence, not proof.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::diffpoly::{DiffPoly, Jet};
use crate::ode_model::QuadraticODE;
use crate::painleve_test::{ExpansionPoint, LaurentExpansion};
use crate::symcore::{BigRational, RationalFunction};

pub const DEFAULT_BLOWUP: f64 = 1e8;
pub const MULTI_VALUED_THRESHOLD: f64 = 1e-4;
pub const SINGLE_VALUED_THRESHOLD: f64 = 1e-6;
pub const ERROR_RATIO: f64 = 10.0;
const UNDERFLOW: f64 = 1e-13;
const ARC_STEP: f64 = 1.0 / 32.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexState {
    pub z: Complex64,
    /// `w, w', ..., w^(n-1)`.
    pub y: Vec<Complex64>,
}

impl ComplexState {
    pub fn new(z: Complex64, y: Vec<Complex64>) -> Self {
        ComplexState { z, y }
    }

    /// Largest componentwise modulus of the difference.
    pub fn distance(&self, other: &ComplexState) -> f64 {
        self.y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn norm(&self) -> f64 {
        self.y.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PathShape {
    Polyline(Vec<Complex64>),
    /// `z = center + radius * exp(i theta)`, theta from `start_angle` through
    /// `start_angle + sweep`.
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub shape: PathShape,
    /// Largest step, as arc length.
    pub max_step: f64,
    pub tolerance: f64,
    pub blowup: f64,
}

impl PathSpec {
    pub fn polyline(points: Vec<Complex64>, tolerance: f64) -> Self {
        PathSpec {
            shape: PathShape::Polyline(points),
            max_step: f64::INFINITY,
            tolerance,
            blowup: DEFAULT_BLOWUP,
        }
    }

    pub fn segment(from: Complex64, to: Complex64, tolerance: f64) -> Self {
        Self::polyline(vec![from, to], tolerance)
    }

    pub fn circle(center: Complex64, radius: f64, winding: i32, start_angle: f64, tolerance: f64) -> Self {
        Self::arc(center, radius, start_angle, 2.0 * PI * winding as f64, tolerance)
    }

    pub fn arc(center: Complex64, radius: f64, start_angle: f64, sweep: f64, tolerance: f64) -> Self {
        PathSpec {
            shape: PathShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            },
            max_step: f64::INFINITY,
            tolerance,
            blowup: DEFAULT_BLOWUP,
        }
    }

    pub fn start(&self) -> Option<Complex64> {
        match &self.shape {
            PathShape::Polyline(p) => p.first().copied(),
            PathShape::Arc {
                center,
                radius,
                start_angle,
                ..
            } => Some(center + Complex64::from_polar(*radius, *start_angle)),
        }
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Self {
        let shape = match &self.shape {
            PathShape::Polyline(p) => PathShape::Polyline(p.iter().rev().copied().collect()),
            PathShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => PathShape::Arc {
                center: *center,
                radius: *radius,
                start_angle: start_angle + sweep,
                sweep: -sweep,
            },
        };
        PathSpec { shape, ..self.clone() }
    }

    fn validate(&self) -> Result<(), NumError> {
        let bad = |m: &str| Err(NumError::InvalidPath(m.to_string()));
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive");
        }
        if !(self.max_step > 0.0) {
            return bad("max step must be positive");
        }
        match &self.shape {
            PathShape::Polyline(p) if p.len() < 2 => bad("a polyline needs at least two points"),
            PathShape::Arc { radius, sweep, .. } if !(*radius > 0.0) || *sweep == 0.0 => {
                bad("an arc needs a positive radius and a nonzero sweep")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<ComplexState>,
    /// Sum of local error estimates over accepted steps.
    pub error_estimate: f64,
}

impl Trajectory {
    pub fn last(&self) -> &ComplexState {
        self.states.last().expect("trajectory is never empty")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumError {
    #[error("solution blows up near z = {z}")]
    BlowUp { z: Complex64, trajectory: Box<Trajectory> },
    #[error("step size underflow at z = {z}")]
    StepUnderflow { z: Complex64 },
    #[error("path meets a pole of the coefficients at z = {z}")]
    CoefficientPole { z: Complex64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("initial state has {got} components, expected {expected}")]
    InvalidState { expected: usize, got: usize },
    #[error("no blow-up within distance {0}")]
    NoBlowUp(f64),
    #[error("log-log slope {slope:.4} is not an integer pole order")]
    NonIntegerOrder { slope: f64 },
    #[error("expansion must be at a rational point with numeric coefficients")]
    InvalidSeries,
}

struct NumCoef {
    num: Vec<f64>,
    den: Vec<f64>,
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

impl NumCoef {
    fn new(f: &RationalFunction) -> Self {
        NumCoef {
            num: f.numer().to_f64_coeffs(),
            den: f.denom().to_f64_coeffs(),
        }
    }

    fn eval(&self, z: Complex64) -> Result<Complex64, NumError> {
        let d = horner(&self.den, z);
        let scale = self
            .den
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * z.norm().powi(i as i32))
            .sum::<f64>()
            .max(1.0);
        if d.norm() < 1e-12 * scale {
            return Err(NumError::CoefficientPole { z });
        }
        Ok(horner(&self.num, z) / d)
    }
}

/// A differential polynomial compiled for numeric evaluation.
struct NumPoly {
    terms: Vec<(NumCoef, Vec<usize>)>,
}

impl NumPoly {
    fn new(p: &DiffPoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let jets = m.jets().iter().map(|j| j.order as usize).collect();
                (NumCoef::new(c), jets)
            })
            .collect();
        NumPoly { terms }
    }

    fn eval(&self, z: Complex64, y: &[Complex64]) -> Result<Complex64, NumError> {
        let mut s = Complex64::new(0.0, 0.0);
        for (c, jets) in &self.terms {
            let mut t = c.eval(z)?;
            for &j in jets {
                t *= y[j];
            }
            s += t;
        }
        Ok(s)
    }
}

/// The equation as a first-order system, with `w^(n)` and `w^(n+1)` as
/// functions of the state.
pub struct NumericODE {
    n: usize,
    rhs: NumPoly,
    rhs_prime: NumPoly,
    singular: Vec<f64>,
}

impl NumericODE {
    pub fn new(eq: &QuadraticODE) -> Self {
        let n = eq.order();
        let rhs = eq.rhs_diffpoly(0);
        let top = Jet::new(0, n as u32);
        let d = rhs.derivative().substitute(&|j| (j == top).then(|| rhs.clone()));
        NumericODE {
            n,
            rhs: NumPoly::new(&rhs),
            rhs_prime: NumPoly::new(&d),
            singular: crate::ode_model::singular_points(eq).polynomial().to_f64_coeffs(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Newton iteration on the singular-set polynomial from `z`; returns the
    /// zero if it lies within `radius`.
    fn nearby_singularity(&self, z: Complex64, radius: f64) -> Option<Complex64> {
        if self.singular.len() < 2 {
            return None;
        }
        let d: Vec<f64> = (1..self.singular.len())
            .map(|i| self.singular[i] * i as f64)
            .collect();
        let mut x = z;
        for _ in 0..100 {
            let step = horner(&self.singular, x) / horner(&d, x);
            if !step.is_finite() {
                return None;
            }
            x -= step;
            if step.norm() < 1e-15 * x.norm().max(1.0) {
                break;
            }
        }
        ((x - z).norm() <= radius).then_some(x)
    }

    /// `w^(n)` at `(z, y)`.
    pub fn top_derivative(&self, z: Complex64, y: &[Complex64]) -> Result<Complex64, NumError> {
        self.rhs.eval(z, y)
    }

    /// `w, w', ..., w^(n+1)` at a state.
    pub fn jets(&self, s: &ComplexState) -> Result<Vec<Complex64>, NumError> {
        let mut out = s.y.clone();
        out.push(self.rhs.eval(s.z, &s.y)?);
        out.push(self.rhs_prime.eval(s.z, &s.y)?);
        Ok(out)
    }

    fn field(&self, z: Complex64, y: &[Complex64], dz: Complex64, out: &mut [Complex64]) -> Result<(), NumError> {
        for i in 0..self.n - 1 {
            out[i] = y[i + 1] * dz;
        }
        out[self.n - 1] = self.rhs.eval(z, y)? * dz;
        Ok(())
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One leg of a path, parametrized by a real `t` in `[0, len]`.
struct Leg<'a> {
    len: f64,
    max_dt: f64,
    z: Box<dyn Fn(f64) -> Complex64 + 'a>,
    dz: Box<dyn Fn(f64) -> Complex64 + 'a>,
}

fn legs(path: &PathSpec) -> Vec<Leg<'_>> {
    match &path.shape {
        PathShape::Polyline(p) => p
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let len = (b - a).norm();
                let dir = (b - a) / len;
                Leg {
                    len,
                    max_dt: path.max_step,
                    z: Box::new(move |t| if t >= len { b } else { a + dir * t }),
                    dz: Box::new(move |_| dir),
                }
            })
            .collect(),
        &PathShape::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } => {
            let sign = sweep.signum();
            vec![Leg {
                len: sweep.abs(),
                max_dt: ARC_STEP.min(path.max_step / radius),
                z: Box::new(move |t| center + Complex64::from_polar(radius, start_angle + sign * t)),
                dz: Box::new(move |t| {
                    Complex64::i() * sign * Complex64::from_polar(radius, start_angle + sign * t)
                }),
            }]
        }
    }
}

fn integrate_leg(
    ode: &NumericODE,
    leg: &Leg<'_>,
    path: &PathSpec,
    traj: &mut Trajectory,
) -> Result<(), NumError> {
    let n = ode.n;
    let zero = Complex64::new(0.0, 0.0);
    let mut k = vec![vec![zero; n]; 7];
    let mut y = traj.last().y.clone();
    let mut t = 0.0;
    let mut h = (leg.len / 100.0).min(leg.max_dt);
    let mut tmp = vec![zero; n];
    let mut y5 = vec![zero; n];
    while t < leg.len {
        h = h.min(leg.len - t).min(leg.max_dt);
        if h < UNDERFLOW * leg.len {
            let z = (leg.z)(t);
            if let Some(z) = ode.nearby_singularity(z, 1e-6 * leg.len.max(1.0)) {
                return Err(NumError::CoefficientPole { z });
            }
            return Err(NumError::StepUnderflow { z });
        }
        for s in 0..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (r, kr) in k.iter().enumerate().take(s) {
                    acc += kr[i] * (A[s][r] * h);
                }
                tmp[i] = acc;
            }
            if s == 6 {
                y5.copy_from_slice(&tmp);
            }
            let ts = t + C[s] * h;
            ode.field((leg.z)(ts), &tmp, (leg.dz)(ts), &mut k[s])?;
        }
        let mut err: f64 = 0.0;
        let mut abs_err: f64 = 0.0;
        for i in 0..n {
            let mut e = zero;
            for (s, ks) in k.iter().enumerate() {
                e += ks[i] * (E[s] * h);
            }
            let scale = path.tolerance * (1.0 + y[i].norm().max(y5[i].norm()));
            err = err.max(e.norm() / scale);
            abs_err = abs_err.max(e.norm());
        }
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y5);
            traj.error_estimate += abs_err;
            let state = ComplexState::new((leg.z)(t.min(leg.len)), y.clone());
            let big = state.norm() > path.blowup;
            traj.states.push(state);
            if big {
                return Err(NumError::BlowUp {
                    z: traj.last().z,
                    trajectory: Box::new(traj.clone()),
                });
            }
        }
        let factor = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
        h *= factor.clamp(0.2, 5.0);
    }
    Ok(())
}

/// Integrates the order-`n` system along `path` starting from `init`.
pub fn integrate_path(
    eq: &QuadraticODE,
    init: &ComplexState,
    path: &PathSpec,
) -> Result<Trajectory, NumError> {
    integrate_numeric(&NumericODE::new(eq), init, path)
}

pub fn integrate_numeric(
    ode: &NumericODE,
    init: &ComplexState,
    path: &PathSpec,
) -> Result<Trajectory, NumError> {
    path.validate()?;
    if init.y.len() != ode.n {
        return Err(NumError::InvalidState {
            expected: ode.n,
            got: init.y.len(),
        });
    }
    let start = path.start().expect("validated");
    if (start - init.z).norm() > 1e-9 * start.norm().max(1.0) {
        return Err(NumError::InvalidPath(format!(
            "path starts at {start}, initial state is at {}",
            init.z
        )));
    }
    let mut traj = Trajectory {
        states: vec![ComplexState::new(start, init.y.clone())],
        error_estimate: 0.0,
    };
    for leg in legs(path) {
        integrate_leg(ode, &leg, path, &mut traj)?;
    }
    Ok(traj)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleEstimate {
    pub location: Complex64,
    pub order: u32,
    pub leading_coefficient: Complex64,
    /// RMS residual of the log-log fit.
    pub fit_residual: f64,
    pub slope: f64,
}

/// Local order `m` and location of a pole of `f` from `f, f', f''`.
fn local_pole(z: Complex64, f: Complex64, f1: Complex64, f2: Complex64) -> Option<(f64, Complex64)> {
    let m = 1.0 / (f * f2 / (f1 * f1) - 1.0).re;
    (m.is_finite() && m > 0.5).then(|| (m, z + f / f1 * m.round()))
}

fn loglog_slope(samples: &[(f64, f64)]) -> (f64, f64) {
    let k = samples.len() as f64;
    let (sx, sy) = samples.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = samples.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let rms = (samples
        .iter()
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    (slope, rms)
}

/// Integrates from `init` along the ray in `direction` until the solution
/// blows up, then estimates the pole location, order and leading coefficient.
pub fn locate_pole(
    eq: &QuadraticODE,
    init: &ComplexState,
    direction: Complex64,
    max_distance: f64,
) -> Result<PoleEstimate, NumError> {
    let ode = NumericODE::new(eq);
    let end = init.z + direction / direction.norm() * max_distance;
    let path = PathSpec::segment(init.z, end, 1e-12);
    let traj = match integrate_numeric(&ode, init, &path) {
        Ok(_) => return Err(NumError::NoBlowUp(max_distance)),
        Err(NumError::BlowUp { trajectory, .. }) => *trajectory,
        Err(e) => return Err(e),
    };
    let last = traj.last();
    let jets = ode.jets(last)?;
    // the first derivative with a clean local pole fixes the location
    let mut found = None;
    for i in 0..jets.len() - 2 {
        if let Some((m, z0)) = local_pole(last.z, jets[i], jets[i + 1], jets[i + 2]) {
            if (m - m.round()).abs() <= 0.2 {
                found = Some(z0);
                break;
            }
        }
    }
    let location = found.unwrap_or(last.z);
    let d_min = (last.z - location).norm();
    let mut samples: Vec<(f64, f64)> = traj
        .states
        .iter()
        .map(|s| ((s.z - location).norm(), s.y[0].norm()))
        .filter(|&(d, _)| d >= d_min && d <= 10.0 * d_min && d > 0.0)
        .map(|(d, w)| (d.ln(), w.ln()))
        .collect();
    if samples.len() < 3 {
        samples = traj
            .states
            .iter()
            .rev()
            .take(3)
            .map(|s| ((s.z - location).norm().ln(), s.y[0].norm().ln()))
            .collect();
    }
    let (slope, fit_residual) = loglog_slope(&samples);
    let slope = -slope;
    let order = slope.round();
    if !slope.is_finite() || (slope - order).abs() > 0.2 || order < 1.0 {
        return Err(NumError::NonIntegerOrder { slope });
    }
    let leading_coefficient = last.y[0] * (last.z - location).powi(order as i32);
    Ok(PoleEstimate {
        location,
        order: order as u32,
        leading_coefficient,
        fit_residual,
        slope,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum MonodromyVerdict {
    SingleValued,
    MultiValued,
    Inconclusive(String),
}

impl fmt::Display for MonodromyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyVerdict::SingleValued => f.write_str("single-valued"),
            MonodromyVerdict::MultiValued => f.write_str("multi-valued"),
            MonodromyVerdict::Inconclusive(r) => write!(f, "inconclusive ({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyResult {
    pub start: ComplexState,
    pub end: Option<ComplexState>,
    pub discrepancy: f64,
    pub error_estimate: f64,
    pub verdict: MonodromyVerdict,
}

impl MonodromyResult {
    /// `w(end) - w(start)`.
    pub fn delta_w(&self) -> Option<Complex64> {
        self.end.as_ref().map(|e| e.y[0] - self.start.y[0])
    }
}

/// Applies the verdict thresholds to a measured discrepancy.
pub fn monodromy_verdict(discrepancy: f64, error_estimate: f64) -> MonodromyVerdict {
    if discrepancy > MULTI_VALUED_THRESHOLD && error_estimate * ERROR_RATIO < discrepancy {
        MonodromyVerdict::MultiValued
    } else if discrepancy < SINGLE_VALUED_THRESHOLD {
        MonodromyVerdict::SingleValued
    } else {
        MonodromyVerdict::Inconclusive(format!(
            "discrepancy {discrepancy:.3e} with error estimate {error_estimate:.3e}"
        ))
    }
}

/// Continues `init` around the circle `|z - center| = radius`, `winding`
/// times, and compares the final state with the initial one.
pub fn monodromy_loop(
    eq: &QuadraticODE,
    init: &ComplexState,
    center: Complex64,
    radius: f64,
    winding: i32,
    tolerance: f64,
) -> Result<MonodromyResult, NumError> {
    let offset = init.z - center;
    if (offset.norm() - radius).abs() > 1e-9 * radius.max(1.0) {
        return Err(NumError::InvalidPath(format!(
            "initial point {} is not on the circle",
            init.z
        )));
    }
    let path = PathSpec::circle(center, radius, winding, offset.arg(), tolerance);
    let mut seeded = init.clone();
    seeded.z = path.start().expect("circle has a start");
    match integrate_path(eq, &seeded, &path) {
        Ok(traj) => {
            let end = traj.last().clone();
            let discrepancy = end.distance(init);
            Ok(MonodromyResult {
                start: init.clone(),
                end: Some(end),
                discrepancy,
                error_estimate: traj.error_estimate,
                verdict: monodromy_verdict(discrepancy, traj.error_estimate),
            })
        }
        Err(e @ (NumError::InvalidPath(_) | NumError::InvalidState { .. })) => Err(e),
        Err(e) => Ok(MonodromyResult {
            start: init.clone(),
            end: None,
            discrepancy: f64::NAN,
            error_estimate: f64::NAN,
            verdict: MonodromyVerdict::Inconclusive(e.to_string()),
        }),
    }
}

/// `w, w', ..., w^(n-1)` of the truncated series `sum q_j tau^(j-p)`.
pub fn series_state(coeffs: &[Complex64], p: usize, z0: Complex64, z: Complex64, n: usize) -> ComplexState {
    let tau = z - z0;
    let y = (0..n)
        .map(|d| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, q)| {
                    let e = j as i64 - p as i64;
                    let ff: f64 = (0..d as i64).map(|i| (e - i) as f64).product();
                    if ff == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        q * ff * tau.powi((e - d as i64) as i32)
                    }
                })
                .sum()
        })
        .collect();
    ComplexState::new(z, y)
}

/// Seeds an integration from the series at radius `annulus.1` and compares
/// numeric continuation with the series at `samples` points of the annulus.
/// Returns the largest relative deviation in `w`.
pub fn series_crosscheck_coeffs(
    eq: &QuadraticODE,
    z0: Complex64,
    p: usize,
    coeffs: &[Complex64],
    samples: usize,
    annulus: (f64, f64),
    tolerance: f64,
) -> Result<f64, NumError> {
    let ode = NumericODE::new(eq);
    let n = ode.order();
    let (r_in, r_out) = annulus;
    let seed = series_state(coeffs, p, z0, z0 + r_out, n);
    let mut worst: f64 = 0.0;
    for k in 0..samples.max(1) {
        let theta = 2.0 * PI * k as f64 / samples.max(1) as f64;
        let frac = if samples > 1 { k as f64 / (samples - 1) as f64 } else { 0.0 };
        let rho = r_out + (r_in - r_out) * frac;
        let mut state = seed.clone();
        if theta > 0.0 {
            let arc = PathSpec::arc(z0, r_out, 0.0, theta, tolerance);
            state = integrate_numeric(&ode, &state, &arc)?.last().clone();
        }
        let target = z0 + Complex64::from_polar(rho, theta);
        if (target - state.z).norm() > 0.0 {
            let seg = PathSpec::segment(state.z, target, tolerance);
            state = integrate_numeric(&ode, &state, &seg)?.last().clone();
        }
        let exact = series_state(coeffs, p, z0, target, n).y[0];
        worst = worst.max((state.y[0] - exact).norm() / exact.norm());
    }
    Ok(worst)
}

/// Series cross-check for an expansion at a rational point, with the free
/// parameters fixed by `params`.
pub fn series_crosscheck(
    eq: &QuadraticODE,
    exp: &LaurentExpansion,
    params: &BTreeMap<usize, BigRational>,
    samples: usize,
    annulus: (f64, f64),
    tolerance: f64,
) -> Result<f64, NumError> {
    let ExpansionPoint::Rational(x) = &exp.z0 else {
        return Err(NumError::InvalidSeries);
    };
    let coeffs = exp
        .numeric_coefficients(params)
        .ok_or(NumError::InvalidSeries)?
        .iter()
        .map(|c| c.to_f64().map(|v| Complex64::new(v, 0.0)))
        .collect::<Option<Vec<_>>>()
        .ok_or(NumError::InvalidSeries)?;
    let z0 = Complex64::new(x.to_f64().ok_or(NumError::InvalidSeries)?, 0.0);
    series_crosscheck_coeffs(eq, z0, exp.p, &coeffs, samples, annulus, tolerance)
}
