//! Random equation generators shared by the integration tests.
#![allow(dead_code)]

use painleve_core::symcore::{Polynomial, Var};
use painleve_core::{BigRational, QuadraticODE, RationalFunction};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let r = random_rational(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::from_coeffs((0..=d).map(|_| random_rational(rng)).collect(), Var::Z)
}

/// Constant, polynomial or rational coefficient.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> RationalFunction {
    match rng.gen_range(0..4) {
        0 | 1 => RationalFunction::constant(random_rational(rng)),
        2 => RationalFunction::from_poly(random_poly(rng, 2)),
        _ => {
            let den = Polynomial::from_coeffs(vec![random_rational(rng), nonzero_rational(rng)], Var::Z);
            RationalFunction::new(random_poly(rng, 2), den).unwrap()
        }
    }
}

pub fn nonzero_coefficient<R: Rng>(rng: &mut R) -> RationalFunction {
    loop {
        let c = random_coefficient(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Any quadratic equation of order `n`, with each slot present with
/// probability `density`.
pub fn random_equation<R: Rng>(rng: &mut R, n: usize, density: f64) -> QuadraticODE {
    let mut eq = QuadraticODE::new(n).unwrap();
    for k in 0..n {
        for j in 0..=k {
            if rng.gen_bool(density) {
                eq.set_quadratic(k, j, nonzero_coefficient(rng)).unwrap();
            }
        }
        if rng.gen_bool(density) {
            eq.set_linear(k, nonzero_coefficient(rng)).unwrap();
        }
    }
    if rng.gen_bool(density) {
        eq.set_free_term(nonzero_coefficient(rng));
    }
    eq
}

/// Equation with Bureau number `bureau` whose leading slot `(n-bureau, 0)` is
/// nonzero, other leading slots random and lower slots random.
pub fn random_shaped<R: Rng>(rng: &mut R, n: usize, bureau: usize) -> QuadraticODE {
    let top = n - bureau;
    let mut eq = QuadraticODE::new(n).unwrap();
    for k in 0..n {
        for j in 0..=k {
            let w = k + j;
            if w > top {
                continue;
            }
            let c = if (k, j) == (top, 0) {
                RationalFunction::constant(nonzero_rational(rng))
            } else if w == top {
                if rng.gen_bool(0.6) {
                    RationalFunction::constant(random_rational(rng))
                } else {
                    random_coefficient(rng)
                }
            } else if rng.gen_bool(0.3) {
                random_coefficient(rng)
            } else {
                continue;
            };
            eq.set_quadratic(k, j, c).unwrap();
        }
    }
    for j in 0..n {
        if rng.gen_bool(0.3) {
            eq.set_linear(j, random_coefficient(rng)).unwrap();
        }
    }
    if rng.gen_bool(0.5) {
        eq.set_free_term(random_coefficient(rng));
    }
    eq
}

/// `w^(n) = (w^2)^(n-1)`, built by differentiating `w^2` directly.
pub fn leibniz_family(n: usize) -> QuadraticODE {
    let mut p = painleve_core::diffpoly::DiffPoly::jet(0, 0).pow(2);
    for _ in 1..n {
        p = p.derivative();
    }
    QuadraticODE::from_rhs_diffpoly(n, &p, 0).unwrap()
}

/// `f(z + c)`.
pub fn shift(f: &RationalFunction, c: &BigRational) -> RationalFunction {
    let shift_poly = |p: &Polynomial| {
        let zc = Polynomial::from_coeffs(vec![c.clone(), rat(1, 1)], Var::Z);
        p.coeffs()
            .iter()
            .rev()
            .fold(Polynomial::zero(Var::Z), |acc, a| &(&acc * &zc) + &Polynomial::constant(a.clone(), Var::Z))
    };
    RationalFunction::new(shift_poly(f.numer()), shift_poly(f.denom())).unwrap()
}

/// Rational function with numerator and denominator of degree at most `d`.
pub fn random_ratfunc<R: Rng>(rng: &mut R, d: usize) -> RationalFunction {
    loop {
        let den = random_poly(rng, d);
        if !den.is_zero() {
            return RationalFunction::new(random_poly(rng, d), den).unwrap();
        }
    }
}

/// Equations of the `.ode` corpus that parse, with their file names.
pub fn corpus_equations() -> Vec<(String, QuadraticODE)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ode"))
        .collect();
    files.sort();
    files
        .into_iter()
        .filter_map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let body: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            painleve_core::parse(&body.join(" ")).ok().map(|eq| (name, eq))
        })
        .collect()
}
