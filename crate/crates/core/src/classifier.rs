//! The Viète/δ-case analysis of the resonance roots and the decision tree that
//! assigns one of the seven classes or a rejection tag.

use std::fmt;

use num_traits::{One, Zero};

use crate::ode_model::{
    bureau_number, canonical_match, leading_shape_check, ClassTag, FormMatch, LeadingShape,
    QuadraticODE, ShapeRejection,
};
use crate::painleve_test::{resonance_report, ResonanceReport, TestError};
use crate::symcore::{factorial, rat, BigRational, Polynomial, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseBranch {
    B2Case1,
    B2Case2,
    B2Case3,
    /// `B = 1`, `a_{n-1,0} = 0`: the `B = 2` analysis at order `n - 1`, with
    /// its case number 1, 2 or 3.
    B1Reduced(u8),
    B1Case2,
    Inadmissible(String),
}

impl CaseBranch {
    pub fn predicted_class(&self) -> Option<ClassTag> {
        match self {
            CaseBranch::B2Case1 => Some(ClassTag::C4FI),
            CaseBranch::B2Case2 => Some(ClassTag::C3ChazyXIII),
            CaseBranch::B2Case3 => Some(ClassTag::C2Ia),
            CaseBranch::B1Reduced(1) => Some(ClassTag::C5FifthOrder),
            CaseBranch::B1Reduced(2) => Some(ClassTag::C4FVII),
            CaseBranch::B1Reduced(3) => Some(ClassTag::C3ChazyI),
            CaseBranch::B1Case2 => Some(ClassTag::CNLinearizable),
            _ => None,
        }
    }
}

impl fmt::Display for CaseBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseBranch::B2Case1 => write!(f, "B2-case1"),
            CaseBranch::B2Case2 => write!(f, "B2-case2"),
            CaseBranch::B2Case3 => write!(f, "B2-case3"),
            CaseBranch::B1Reduced(c) => write!(f, "B1-reduced-case{c}"),
            CaseBranch::B1Case2 => write!(f, "B1-case2"),
            CaseBranch::Inadmissible(why) => write!(f, "inadmissible ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub branch: CaseBranch,
    pub required_order: Option<usize>,
    pub predicted_resonances: Vec<i64>,
    pub predicted_h: Option<BigRational>,
    pub deltas: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("inadmissible resonance pattern: {}", .outcome.branch)]
pub struct InadmissiblePattern {
    pub outcome: CaseOutcome,
}

/// Both expressions for `h` when `B = 2`: from the sum of squares of the
/// roots, and from `R(2)`.
pub fn b2_h_relations(deltas: &[i64]) -> (BigRational, BigRational) {
    let n = deltas.len() + 1;
    let sq: i64 = deltas.iter().map(|d| d * d).sum();
    let lin: i64 = deltas.iter().enumerate().map(|(i, d)| (i as i64 + 1) * d).sum();
    let h1 = rat(9 + sq + 2 * lin) / rat(2);
    let prod = deltas
        .iter()
        .enumerate()
        .fold(BigRational::one(), |acc, (i, d)| acc * rat(i as i64 + 1 + d));
    let h2 = rat(3) * prod / factorial(n - 1);
    (h1, h2)
}

/// Both expressions for `h` when `B = 1` and `a_{n-1,0} != 0`: from the sum
/// of the roots, and from `R(1)`.
pub fn b1_h_relations(deltas: &[i64]) -> (BigRational, BigRational) {
    let n = deltas.len() + 1;
    let h1 = rat(-2 + deltas.iter().sum::<i64>());
    let prod = deltas
        .iter()
        .enumerate()
        .fold(BigRational::one(), |acc, (i, d)| acc * rat(i as i64 + 1 + d));
    let h2 = rat(-2) * prod / factorial(n - 1);
    (h1, h2)
}

/// Which of the three `B = 2` δ-patterns a nondecreasing sequence with sum 3
/// is: 1 for `(.., 1, 1, 1)`, 2 for `(.., 1, 2)`, 3 for `(.., 3)`.
pub fn b2_pattern(deltas: &[i64]) -> Option<u8> {
    let m = deltas.len();
    let zeros_before = |k: usize| m >= k && deltas[..m - k].iter().all(|&d| d == 0);
    if m >= 3 && deltas[m - 3..] == [1, 1, 1] && zeros_before(3) {
        Some(1)
    } else if m >= 2 && deltas[m - 2..] == [1, 2] && zeros_before(2) {
        Some(2)
    } else if m >= 1 && deltas[m - 1] == 3 && zeros_before(1) {
        Some(3)
    } else {
        None
    }
}

fn inadmissible(why: impl Into<String>, deltas: Vec<i64>, h: Option<BigRational>) -> InadmissiblePattern {
    InadmissiblePattern {
        outcome: CaseOutcome {
            branch: CaseBranch::Inadmissible(why.into()),
            required_order: None,
            predicted_resonances: Vec::new(),
            predicted_h: h,
            deltas,
        },
    }
}

/// `B = 2` analysis at order `n` on the positive roots `r_1 < ... < r_{n-1}`.
fn b2_analysis(n: usize, positive: &[i64], h: &BigRational) -> Result<(u8, Vec<i64>, BigRational), InadmissiblePattern> {
    let deltas: Vec<i64> = positive
        .iter()
        .enumerate()
        .map(|(i, r)| r - 2 - (i as i64 + 1))
        .collect();
    if h.is_zero() {
        return Err(inadmissible("h = 0", deltas, Some(h.clone())));
    }
    if h < &BigRational::zero() {
        return Err(inadmissible("h < 0", deltas, Some(h.clone())));
    }
    if deltas.iter().any(|&d| d < 0) {
        return Err(inadmissible("a resonance lies below 3", deltas, Some(h.clone())));
    }
    if deltas.iter().sum::<i64>() != 3 {
        return Err(inadmissible("sum of deltas is not 3", deltas, Some(h.clone())));
    }
    let case = b2_pattern(&deltas)
        .ok_or_else(|| inadmissible("delta pattern matches no case", deltas.clone(), Some(h.clone())))?;
    let (h1, h2) = b2_h_relations(&deltas);
    if h1 != h2 {
        let need = [4, 3, 2][case as usize - 1];
        return Err(inadmissible(
            format!("case {case} h-relations give {h1} and {h2}; only n = {need} is consistent"),
            deltas,
            Some(h.clone()),
        ));
    }
    if &h1 != h {
        return Err(inadmissible(
            format!("h from the resonance polynomial is {h}, the roots require {h1}"),
            deltas,
            Some(h.clone()),
        ));
    }
    let _ = n;
    Ok((case, deltas, h1))
}

/// Reconstructs the δ's from the sorted roots and matches the admissible
/// cases of the Viète analysis.
pub fn viete_case_analysis(
    bureau: i64,
    n: usize,
    report: &ResonanceReport,
    a_top_vanishes: bool,
) -> Result<CaseOutcome, InadmissiblePattern> {
    if !report.constant || !report.complete {
        return Err(inadmissible("resonance set is not constant and complete", Vec::new(), report.h.clone()));
    }
    let h = report
        .h
        .clone()
        .expect("h is defined for a constant resonance polynomial");
    let positive: Vec<i64> = report.integer_roots.keys().copied().filter(|&r| r >= 0).collect();
    let with_trivial = |rest: &[i64]| {
        let mut v = vec![-1];
        v.extend_from_slice(rest);
        v
    };
    match bureau {
        2 => {
            let (case, deltas, h1) = b2_analysis(n, &positive, &h)?;
            let branch = [CaseBranch::B2Case1, CaseBranch::B2Case2, CaseBranch::B2Case3][case as usize - 1].clone();
            Ok(CaseOutcome {
                branch,
                required_order: Some([4, 3, 2][case as usize - 1]),
                predicted_resonances: with_trivial(&positive),
                predicted_h: Some(h1),
                deltas,
            })
        }
        1 if a_top_vanishes => {
            let poly = report.rpoly.as_constant().expect("constant");
            if !poly.eval(&rat(1)).is_zero() {
                return Err(inadmissible("R(1) does not vanish although a_{n-1,0} = 0", Vec::new(), Some(h)));
            }
            let (reduced, rem) = poly.div_rem(&Polynomial::from_i64(&[-1, 1], Var::R));
            debug_assert!(rem.is_zero());
            let m = n - 1;
            let parity = if (m - 1).is_multiple_of(2) { rat(1) } else { rat(-1) };
            let h_reduced = reduced.eval(&rat(2)) / (parity * factorial(m - 1));
            let rest: Vec<i64> = positive.iter().copied().filter(|&r| r != 1).collect();
            if rest.len() + 1 != positive.len() {
                return Err(inadmissible("r = 1 is not a resonance", Vec::new(), Some(h)));
            }
            let (case, deltas, h1) = b2_analysis(m, &rest, &h_reduced)?;
            Ok(CaseOutcome {
                branch: CaseBranch::B1Reduced(case),
                required_order: Some([5, 4, 3][case as usize - 1]),
                predicted_resonances: with_trivial(&positive),
                predicted_h: Some(h1),
                deltas,
            })
        }
        1 => {
            let deltas: Vec<i64> = positive
                .iter()
                .enumerate()
                .map(|(i, r)| r - 1 - (i as i64 + 1))
                .collect();
            if h >= BigRational::zero() {
                return Err(inadmissible("h must be negative", deltas, Some(h)));
            }
            if deltas.iter().any(|&d| d < 0) {
                return Err(inadmissible("a resonance lies below 2", deltas, Some(h)));
            }
            let (h1, h2) = b1_h_relations(&deltas);
            if h1 != h {
                return Err(inadmissible(
                    format!("h from the resonance polynomial is {h}, the roots require {h1}"),
                    deltas,
                    Some(h),
                ));
            }
            if h1 != h2 {
                return Err(inadmissible(
                    format!("h = {h1} contradicts R(1), which requires h = {h2}"),
                    deltas,
                    Some(h),
                ));
            }
            if deltas.iter().any(|&d| d != 0) {
                return Err(inadmissible("delta pattern matches no case", deltas, Some(h)));
            }
            Ok(CaseOutcome {
                branch: CaseBranch::B1Case2,
                required_order: None,
                predicted_resonances: with_trivial(&positive),
                predicted_h: Some(h1),
                deltas,
            })
        }
        b => Err(inadmissible(format!("Bureau number {b}"), Vec::new(), Some(h))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Bureau,
    Shape,
    Resonances,
    Viete,
    CanonicalMatch,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Bureau => "bureau",
            Check::Shape => "shape",
            Check::Resonances => "resonances",
            Check::Viete => "viete",
            Check::CanonicalMatch => "canonical-match",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub tag: ClassTag,
    pub evidence: Vec<Evidence>,
    pub summary: String,
    pub bureau: Option<i64>,
    pub resonance: Option<ResonanceReport>,
    pub case: Option<CaseOutcome>,
    pub matches: Vec<FormMatch>,
}

impl ClassificationReport {
    /// Leading function `A(z)` of the matched canonical form.
    pub fn leading(&self) -> Option<&crate::symcore::RationalFunction> {
        self.matches
            .iter()
            .find(|m| m.tag == self.tag)
            .map(|m| &m.leading)
    }
}

struct Builder {
    evidence: Vec<Evidence>,
    bureau: Option<i64>,
    resonance: Option<ResonanceReport>,
    case: Option<CaseOutcome>,
    matches: Vec<FormMatch>,
}

impl Builder {
    fn push(&mut self, check: Check, passed: bool, detail: impl Into<String>) {
        self.evidence.push(Evidence {
            check,
            passed,
            detail: detail.into(),
        });
    }

    fn finish(self, tag: ClassTag) -> ClassificationReport {
        let summary = match self.evidence.iter().find(|e| !e.passed) {
            Some(e) => format!("{tag}: {} check failed ({})", e.check, e.detail),
            None => format!("{tag}: all checks passed"),
        };
        ClassificationReport {
            tag,
            evidence: self.evidence,
            summary,
            bureau: self.bureau,
            resonance: self.resonance,
            case: self.case,
            matches: self.matches,
        }
    }
}

/// Runs the gates in order; the first failure decides the rejection tag.
pub fn classify(eq: &QuadraticODE) -> ClassificationReport {
    let matches = canonical_match(eq);
    let mut b = Builder {
        evidence: Vec::new(),
        bureau: bureau_number(eq),
        resonance: None,
        case: None,
        matches,
    };
    let match_detail = if b.matches.is_empty() {
        "no canonical form".to_string()
    } else {
        let tags: Vec<String> = b.matches.iter().map(|m| format!("{} (A = {})", m.tag, m.leading)).collect();
        tags.join(", ")
    };

    let bureau = match b.bureau {
        None => {
            b.push(Check::Bureau, false, "all quadratic coefficients vanish");
            return b.finish(ClassTag::LinearEquation);
        }
        Some(x) => x,
    };
    if bureau != 1 && bureau != 2 {
        b.push(Check::Bureau, false, format!("B = {bureau}"));
        return b.finish(ClassTag::BadBureau);
    }
    b.push(Check::Bureau, true, format!("B = {bureau}"));

    match leading_shape_check(eq) {
        LeadingShape::Rejected(why) => {
            b.push(Check::Shape, false, why.to_string());
            b.push(Check::CanonicalMatch, false, match_detail);
            return b.finish(match why {
                ShapeRejection::Linear => ClassTag::LinearEquation,
                ShapeRejection::BureauOutOfRange(_) => ClassTag::BadBureau,
                ShapeRejection::LeadingTermRule => ClassTag::NotQuadraticShape,
            });
        }
        shape => b.push(Check::Shape, true, format!("{shape:?}")),
    }

    let report = match resonance_report(eq) {
        Ok(r) => r,
        Err(e) => {
            b.push(Check::Resonances, false, e.to_string());
            b.push(Check::CanonicalMatch, false, match_detail);
            return b.finish(match e {
                TestError::DegenerateLeading | TestError::Shape(_) => ClassTag::NotQuadraticShape,
            });
        }
    };
    let roots_text = format!("R(r) = {}, integer roots {:?}", report.rpoly, report.roots());
    let constant = report.constant;
    let complete = report.complete;
    b.resonance = Some(report);
    if !constant {
        b.push(Check::Resonances, false, roots_text);
        b.push(Check::CanonicalMatch, false, match_detail);
        return b.finish(ClassTag::NonConstantResonances);
    }
    if !complete {
        b.push(Check::Resonances, false, roots_text);
        b.push(Check::CanonicalMatch, false, match_detail);
        return b.finish(ClassTag::IncompleteResonances);
    }
    b.push(Check::Resonances, true, roots_text);

    let n = eq.order();
    let a_top_vanishes = eq.quadratic(n - 1, 0).is_zero();
    let report = b.resonance.as_ref().expect("set above");
    let outcome = match viete_case_analysis(bureau, n, report, a_top_vanishes) {
        Ok(o) => o,
        Err(e) => {
            b.push(Check::Viete, false, e.outcome.branch.to_string());
            b.case = Some(e.outcome);
            b.push(Check::CanonicalMatch, false, match_detail);
            return b.finish(ClassTag::FailsViete);
        }
    };
    let predicted = outcome.predicted_class().expect("admissible branch");
    b.push(
        Check::Viete,
        true,
        format!("{} with deltas {:?}", outcome.branch, outcome.deltas),
    );
    b.case = Some(outcome);

    if b.matches.iter().any(|m| m.tag == predicted) {
        b.push(Check::CanonicalMatch, true, match_detail);
        b.finish(predicted)
    } else {
        b.push(
            Check::CanonicalMatch,
            false,
            format!("resonances predict {predicted}, but the equation has {match_detail}"),
        );
        b.finish(ClassTag::FailsViete)
    }
}

impl CaseOutcome {
    pub fn predicted_class(&self) -> Option<ClassTag> {
        self.branch.predicted_class()
    }
}

/// One δ-pattern visited by [`delta_scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub bureau: i64,
    /// `B = 1` with `a_{n-1,0} = 0`, analysed at order `n - 1`.
    pub reduced: bool,
    pub n: usize,
    /// Case number within its branch (1, 2 or 3).
    pub case: u8,
    pub deltas: Vec<i64>,
    pub h_from_roots: BigRational,
    pub h_from_r: BigRational,
    pub admissible: bool,
}

impl ScanEntry {
    /// `-1` followed by the positive resonances.
    pub fn resonances(&self) -> Vec<i64> {
        let base = if self.bureau == 2 || self.reduced { 2 } else { 1 };
        let mut v = vec![-1];
        if self.reduced {
            v.push(1);
        }
        v.extend(self.deltas.iter().enumerate().map(|(i, d)| base + i as i64 + 1 + d));
        v
    }
}

/// Nondecreasing sequences of nonnegative integers of length `len` and sum
/// `sum`.
fn nondecreasing(len: usize, sum: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, sum: i64, min: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut v = min;
        while v * len as i64 <= sum {
            prefix.push(v);
            go(len - 1, sum - v, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    go(len, sum, 0, &mut Vec::new(), &mut out);
    out
}

/// Every δ-pattern allowed by the sum relation for orders `2..=n_max`, with
/// both expressions for `h` and whether they agree.
pub fn delta_scan(n_max: usize) -> Vec<ScanEntry> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for deltas in nondecreasing(n - 1, 3) {
            let (h1, h2) = b2_h_relations(&deltas);
            if let Some(case) = b2_pattern(&deltas) {
                out.push(ScanEntry {
                    bureau: 2,
                    reduced: false,
                    n,
                    case,
                    admissible: h1 == h2 && h1 > BigRational::zero(),
                    deltas: deltas.clone(),
                    h_from_roots: h1.clone(),
                    h_from_r: h2.clone(),
                });
            }
            if n < n_max {
                if let Some(case) = b2_pattern(&deltas) {
                    out.push(ScanEntry {
                        bureau: 1,
                        reduced: true,
                        n: n + 1,
                        case,
                        admissible: h1 == h2 && h1 > BigRational::zero(),
                        deltas,
                        h_from_roots: h1,
                        h_from_r: h2,
                    });
                }
            }
        }
        // h = -2 + sum(delta) < 0 leaves sums 0 and 1
        for (sum, case) in [(1, 1u8), (0, 2u8)] {
            for deltas in nondecreasing(n - 1, sum) {
                let (h1, h2) = b1_h_relations(&deltas);
                out.push(ScanEntry {
                    bureau: 1,
                    reduced: false,
                    n,
                    case,
                    admissible: h1 == h2,
                    deltas,
                    h_from_roots: h1,
                    h_from_r: h2,
                });
            }
        }
    }
    out
}
