//! Painlevé analysis of polynomial ODEs with quadratic right-hand side.
//!
//! The pipeline is: parse an equation, check the Bureau number and leading
//! shape, build and solve the resonance polynomial, run the Viète case
//! analysis, match one of the seven canonical forms, and check the explicit
//! conditions where they are known. Numeric monodromy experiments in
//! [`numverify`] give independent evidence.

pub mod classifier;
pub mod conditions;
pub mod diffpoly;
pub mod numverify;
pub mod ode_model;
pub mod odeparse;
pub mod symcore;

pub use classifier::{
    classify, delta_scan, viete_case_analysis, CaseBranch, CaseOutcome, ClassificationReport,
};
pub use conditions::{
    linearize, nsc_check, reduce_fifth_order, ChazySystem, LinearizationResult, NscReport, Verdict,
};
pub use numverify::{
    integrate_path, locate_pole, monodromy_loop, series_crosscheck, ComplexState, MonodromyResult,
    MonodromyVerdict, PathSpec, PoleEstimate,
};
pub use ode_model::{ClassTag, QuadraticODE};
pub use odeparse::{parse, render, ParseError};
pub use painleve_test::{
    expand_solution, resonance_report, ExpansionPoint, LaurentExpansion, ResonanceReport,
};
pub use symcore::{BigRational, Polynomial, RationalFunction};
