//! Report assembly and rendering for the subcommands.

use std::fmt::Write as _;

use num_complex::Complex64;
use painleve_core::classifier::ClassificationReport;
use painleve_core::conditions::{LinearizeError, NscReport};
use painleve_core::painleve_test::{CompatibilityLog, ExpansionError};
use painleve_core::{
    classify, expand_solution, linearize, nsc_check, BigRational, ComplexState,
    ExpansionPoint, MonodromyResult, MonodromyVerdict, QuadraticODE,
};
use serde::Serialize;

/// One resonance-condition check.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CompatibilityJson {
    pub index: usize,
    pub residual: String,
    pub passed: bool,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct ConditionsJson {
    pub verdict: String,
    pub detail: String,
    pub reference: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(c: Complex64) -> Self {
        ComplexJson { re: c.re, im: c.im }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct MonodromyJson {
    pub input: String,
    pub center: ComplexJson,
    pub radius: f64,
    pub winding: i32,
    pub start: Vec<ComplexJson>,
    pub end: Option<Vec<ComplexJson>>,
    pub delta_w: Option<ComplexJson>,
    pub discrepancy: Option<f64>,
    pub error_estimate: Option<f64>,
    pub verdict: String,
    pub note: String,
}

/// The `analyze` report. Field order is the JSON field order.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub input: String,
    pub bureau: Option<i64>,
    pub f: Option<String>,
    pub q0: Option<String>,
    pub h: Option<String>,
    pub resonances: Vec<i64>,
    pub complete: bool,
    pub constant: bool,
    pub compatibility: Vec<CompatibilityJson>,
    pub class: String,
    pub conditions: Option<ConditionsJson>,
    pub monodromy: Vec<MonodromyJson>,
    #[serde(skip)]
    pub compatibility_status: CompatStatus,
    #[serde(skip)]
    pub summary: String,
    #[serde(skip)]
    pub messages: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompatStatus {
    Pass,
    Fail,
    Skipped,
}

impl CompatStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CompatStatus::Pass => "pass",
            CompatStatus::Fail => "fail",
            CompatStatus::Skipped => "skipped",
        }
    }
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn compat_json(log: &CompatibilityLog) -> Vec<CompatibilityJson> {
    log.iter()
        .map(|e| CompatibilityJson {
            index: e.index,
            residual: e.residual.to_string(),
            passed: e.passed,
        })
        .collect()
}

pub fn conditions_json(r: &NscReport) -> ConditionsJson {
    ConditionsJson {
        verdict: r.verdict.to_string(),
        detail: r.detail.clone(),
        reference: r.reference.map(str::to_string),
        notes: r.notes.clone(),
    }
}

pub fn analyze(input: &str, eq: &QuadraticODE, z0: Option<BigRational>, depth: Option<usize>) -> AnalysisReport {
    let cls = classify(eq);
    let mut messages = Vec::new();
    let res = cls.resonance.as_ref();
    let point = match z0 {
        Some(x) => ExpansionPoint::Rational(x),
        None => ExpansionPoint::Generic,
    };
    let (compatibility, compatibility_status) = if res.is_some() {
        match expand_solution(eq, point, depth) {
            Ok((_, log)) => (compat_json(&log), CompatStatus::Pass),
            Err(ExpansionError::ResonanceObstruction { log, .. }) => (compat_json(&log), CompatStatus::Fail),
            Err(e) => {
                messages.push(format!("expansion skipped: {e}"));
                (Vec::new(), CompatStatus::Skipped)
            }
        }
    } else {
        (Vec::new(), CompatStatus::Skipped)
    };
    let conditions = cls.tag.is_class().then(|| conditions_json(&nsc_check(eq, &cls)));
    if let Some(r) = res {
        messages.extend(r.notes.iter().cloned());
    }
    AnalysisReport {
        input: input.to_string(),
        bureau: cls.bureau,
        f: res.map(|r| r.f.to_string()),
        q0: res.map(|r| r.q0.to_string()),
        h: res.and_then(|r| r.h.as_ref()).map(rational),
        resonances: res.map(|r| r.roots()).unwrap_or_default(),
        complete: res.is_some_and(|r| r.complete),
        constant: res.is_some_and(|r| r.constant),
        compatibility,
        class: cls.tag.as_str().to_string(),
        conditions,
        monodromy: Vec::new(),
        compatibility_status,
        summary: cls.summary.clone(),
        messages,
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input:         {}", r.input);
    let _ = writeln!(s, "bureau:        {}", opt(&r.bureau));
    let _ = writeln!(s, "f:             {}", opt(&r.f));
    let _ = writeln!(s, "q0:            {}", opt(&r.q0));
    let _ = writeln!(s, "h:             {}", opt(&r.h));
    let roots: Vec<String> = r.resonances.iter().map(i64::to_string).collect();
    let _ = writeln!(
        s,
        "resonances:    [{}] complete={} constant={}",
        roots.join(", "),
        r.complete,
        r.constant
    );
    let _ = writeln!(s, "compatibility: {}", r.compatibility_status.as_str());
    for c in &r.compatibility {
        let _ = writeln!(
            s,
            "  j = {}: Q = {} ({})",
            c.index,
            c.residual,
            if c.passed { "pass" } else { "fail" }
        );
    }
    let _ = writeln!(s, "class:         {}", r.class);
    let _ = writeln!(s, "summary:       {}", r.summary);
    if let Some(c) = &r.conditions {
        let _ = writeln!(s, "conditions:    {}: {}", c.verdict, c.detail);
        if let Some(reference) = &c.reference {
            let _ = writeln!(s, "  reference: {reference}");
        }
        for n in &c.notes {
            let _ = writeln!(s, "  note: {n}");
        }
    }
    for m in &r.messages {
        let _ = writeln!(s, "note:          {m}");
    }
    s
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct EvidenceJson {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CaseJson {
    pub branch: String,
    pub required_order: Option<usize>,
    pub predicted_resonances: Vec<i64>,
    pub predicted_h: Option<String>,
    pub deltas: Vec<i64>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct ClassifyJson {
    pub input: String,
    pub class: String,
    pub summary: String,
    pub evidence: Vec<EvidenceJson>,
    pub case: Option<CaseJson>,
}

pub fn classify_json(input: &str, cls: &ClassificationReport) -> ClassifyJson {
    ClassifyJson {
        input: input.to_string(),
        class: cls.tag.as_str().to_string(),
        summary: cls.summary.clone(),
        evidence: cls
            .evidence
            .iter()
            .map(|e| EvidenceJson {
                check: e.check.to_string(),
                passed: e.passed,
                detail: e.detail.clone(),
            })
            .collect(),
        case: cls.case.as_ref().map(|c| CaseJson {
            branch: c.branch.to_string(),
            required_order: c.required_order,
            predicted_resonances: c.predicted_resonances.clone(),
            predicted_h: c.predicted_h.as_ref().map(rational),
            deltas: c.deltas.clone(),
        }),
    }
}

pub fn classify_text(j: &ClassifyJson) -> String {
    let mut s = format!("class: {}\n{}\n", j.class, j.summary);
    for e in &j.evidence {
        let _ = writeln!(
            s,
            "  [{}] {}: {}",
            if e.passed { "ok" } else { "fail" },
            e.check,
            e.detail
        );
    }
    if let Some(c) = &j.case {
        let _ = writeln!(
            s,
            "case: {} deltas={:?} predicted resonances={:?}",
            c.branch, c.deltas, c.predicted_resonances
        );
    }
    s
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct LinearizeJson {
    pub input: String,
    pub status: String,
    pub b: Option<String>,
    pub equation: Option<String>,
    pub residual: Option<String>,
}

pub fn linearize_report(input: &str, eq: &QuadraticODE) -> LinearizeJson {
    let mut j = LinearizeJson {
        input: input.to_string(),
        status: String::new(),
        b: None,
        equation: None,
        residual: None,
    };
    match linearize(eq) {
        Ok(lin) => {
            j.status = "Linearized".into();
            j.b = Some(lin.b.to_string());
            j.equation = Some(lin.equation_text());
        }
        Err(LinearizeError::NotLinearizable { b, residual }) => {
            j.status = "NotLinearizable".into();
            j.b = Some(b.to_string());
            j.residual = Some(residual.to_string());
        }
        Err(LinearizeError::ShapeMismatch) => j.status = "ShapeMismatch".into(),
    }
    j
}

pub fn linearize_text(j: &LinearizeJson) -> String {
    let mut s = format!("{}\n", j.status);
    if let Some(b) = &j.b {
        let _ = writeln!(s, "B = {b}");
    }
    if let Some(e) = &j.equation {
        let _ = writeln!(s, "{e}");
    }
    if let Some(r) = &j.residual {
        let _ = writeln!(s, "residual: {r}");
    }
    if j.status == "ShapeMismatch" {
        let _ = writeln!(s, "the equation does not have the A (w^2)^(n-1) leading block");
    }
    s
}

const MONODROMY_NOTE: &str =
    "numeric loops can only falsify single-valuedness; a single-valued verdict is evidence, not proof";

pub fn monodromy_json(input: &str, center: Complex64, radius: f64, winding: i32, r: &MonodromyResult) -> MonodromyJson {
    let fin = |x: f64| x.is_finite().then_some(x);
    MonodromyJson {
        input: input.to_string(),
        center: center.into(),
        radius,
        winding,
        start: r.start.y.iter().map(|&c| c.into()).collect(),
        end: r.end.as_ref().map(|e| e.y.iter().map(|&c| c.into()).collect()),
        delta_w: r.delta_w().map(Into::into),
        discrepancy: fin(r.discrepancy),
        error_estimate: fin(r.error_estimate),
        verdict: match &r.verdict {
            MonodromyVerdict::SingleValued => "single-valued".into(),
            MonodromyVerdict::MultiValued => "multi-valued".into(),
            MonodromyVerdict::Inconclusive(_) => "inconclusive".into(),
        },
        note: match &r.verdict {
            MonodromyVerdict::Inconclusive(why) => format!("{why}; {MONODROMY_NOTE}"),
            _ => MONODROMY_NOTE.into(),
        },
    }
}

pub fn monodromy_text(m: &MonodromyJson) -> String {
    let mut s = format!("verdict:        {}\n", m.verdict);
    if let Some(d) = m.discrepancy {
        let _ = writeln!(s, "discrepancy:    {d:.6e}");
    }
    if let Some(e) = m.error_estimate {
        let _ = writeln!(s, "error estimate: {e:.6e}");
    }
    if let Some(d) = &m.delta_w {
        let _ = writeln!(s, "delta w:        {:.12} {:+.12}i", d.re, d.im);
    }
    let _ = writeln!(s, "note:           {}", m.note);
    s
}

/// The seed state on the circle at `start_angle`.
pub fn seed_on_circle(center: Complex64, radius: f64, start_angle: f64, y: Vec<Complex64>) -> ComplexState {
    ComplexState::new(center + Complex64::from_polar(radius, start_angle), y)
}
