//! Tight / overtwisted decisions with exact justification traces.
//!
//! Three criteria are implemented, each a decision rule with a fixed id:
//!
//! - `thm1`: in a tight manifold, contact `(+1/n)`-surgery on a knot with
//!   `tb < 0` and `rot > −χ` is overtwisted. The classifier re-runs the
//!   mechanism: it computes the dual knot's `tb_Q`, `rot_Q` and checks that
//!   they violate the rational Bennequin bound.
//! - `thm2`: in an overtwisted manifold, contact `(+1/n)`-surgery is
//!   overtwisted.
//! - `lemma-tight`: if contact (+1)-surgery on a knot is tight, so is contact
//!   `(+p/q)`-surgery for coprime `p > q ≥ 1`.
//!
//! `bennequin-violation` is reported when explicit dual invariants break
//! `tb_Q + |rot_Q| ≤ −χ(Σ)/r`. Anything else is `Inconclusive`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{AmbientStatus, LegendrianKnotData, SurgeryComponent, SurgeryDiagram};
use crate::dual::{
    dual_invariants_closed_form, dual_invariants_matrix, DualError, DualKnotInvariants,
};
use crate::exact::Rational;
use crate::expansion::{expand_diagram, negative_continued_fraction, ExpansionError, ZigzagPolicy};

/// Trace prefix marking a counterexample to the conjecture that contact
/// `(+n)`-surgery on a `tb ≤ −2` knot is overtwisted for `n < |tb|`.
pub const CONWAY_FLAG: &str = "conway-counterexample";

const BENNEQUIN_FORM: &str =
    "rational Bennequin bound tb_Q + |rot_Q| <= -chi(Sigma)/r (reconstructed rational form; holds for every knot in a tight manifold)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("p and q must be positive")]
    NonPositive,
    #[error("no component `{0}`")]
    UnknownComponent(String),
    #[error("conflicting assumptions on `{id}`: {reason}")]
    ConflictingAssumptions { id: String, reason: String },
    #[error("rules disagree on `{0}`: both tight and overtwisted")]
    Contradiction(String),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Overtwisted,
    Tight,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Overtwisted => "overtwisted",
            Conclusion::Tight => "tight",
            Conclusion::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "thm2")]
    Thm2,
    #[serde(rename = "lemma-tight")]
    LemmaTight,
    #[serde(rename = "bennequin-violation")]
    BennequinViolation,
    #[serde(rename = "none")]
    None,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Thm1 => "thm1",
            Rule::Thm2 => "thm2",
            Rule::LemmaTight => "lemma-tight",
            Rule::BennequinViolation => "bennequin-violation",
            Rule::None => "none",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A conclusion, the rule that produced it, and the exact facts behind it.
/// `conclusion` is `Inconclusive` exactly when `rule` is `none`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(skip_serializing_if = "Option::is_none")]
    subject: Option<String>,
    conclusion: Conclusion,
    rule: Rule,
    trace: Vec<String>,
}

impl Verdict {
    fn fired(rule: Rule, conclusion: Conclusion, trace: Vec<String>) -> Self {
        debug_assert!(rule != Rule::None && conclusion != Conclusion::Inconclusive);
        Verdict {
            subject: None,
            conclusion,
            rule,
            trace,
        }
    }

    fn inconclusive(trace: Vec<String>) -> Self {
        Verdict {
            subject: None,
            conclusion: Conclusion::Inconclusive,
            rule: Rule::None,
            trace,
        }
    }

    pub fn conclusion(&self) -> Conclusion {
        self.conclusion
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn trace(&self) -> &[String] {
        &self.trace
    }

    pub fn subject(&self) -> Option<&str> {
        self.subject.as_deref()
    }

    pub fn is_conway_counterexample(&self) -> bool {
        self.trace.iter().any(|t| t.starts_with(CONWAY_FLAG))
    }

    fn with_subject(mut self, subject: String) -> Self {
        self.subject = Some(subject);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BennequinReport {
    /// `tb_Q + |rot_Q|`
    pub lhs: Rational,
    /// `−χ(Σ)/r`
    pub rhs: Rational,
    pub satisfied: bool,
}

/// Exact comparison `tb_Q + |rot_Q| ≤ −χ(Σ)/r`. A failed comparison
/// certifies that the manifold containing the dual knot is overtwisted.
pub fn bennequin_check(inv: &DualKnotInvariants) -> BennequinReport {
    assert!(inv.order >= 1, "homological order must be positive");
    let lhs = inv.tb_q.clone() + inv.rot_q.abs();
    let rhs = Rational::new(-inv.euler_char, inv.order);
    let satisfied = lhs <= rhs;
    BennequinReport {
        lhs,
        rhs,
        satisfied,
    }
}

/// Verdict form of [`bennequin_check`].
pub fn classify_bennequin(inv: &DualKnotInvariants) -> (BennequinReport, Verdict) {
    let report = bennequin_check(inv);
    let line = format!(
        "tb_Q + |rot_Q| = {} + |{}| = {}; -chi/r = {}/{} = {}",
        inv.tb_q, inv.rot_q, report.lhs, -inv.euler_char, inv.order, report.rhs
    );
    let verdict = if report.satisfied {
        Verdict::inconclusive(vec![line, format!("{BENNEQUIN_FORM}: satisfied")])
    } else {
        Verdict::fired(
            Rule::BennequinViolation,
            Conclusion::Overtwisted,
            vec![
                line,
                format!("{BENNEQUIN_FORM}: violated, so the ambient manifold of the knot is overtwisted"),
            ],
        )
    };
    (report, verdict)
}

/// The inequality chain behind `thm1` for the `(+1/n)` chain on a knot
/// with `tb < 0`:
/// `tb_Q + |rot_Q| ≥ (χ + 2·rot)/r` and `(χ + 2·rot)/r` vs `−χ/r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BennequinChain {
    pub lhs: Rational,
    pub middle: Rational,
    pub rhs: Rational,
    /// `lhs ≥ middle`; relies on the classical bound `tb + |rot| ≤ −χ`.
    pub lower_bound_holds: bool,
    /// `middle > rhs`; equivalent to `rot > −χ`.
    pub final_strict: bool,
}

pub fn bennequin_chain(
    tb: i64,
    rot: i64,
    euler_char: i64,
    n: u32,
) -> Result<BennequinChain, DualError> {
    let inv = dual_invariants_closed_form(tb, rot, euler_char, n)?;
    let lhs = inv.tb_q.clone() + inv.rot_q.abs();
    let middle = Rational::new(euler_char + 2 * rot, inv.order);
    let rhs = Rational::new(-euler_char, inv.order);
    Ok(BennequinChain {
        lower_bound_holds: lhs >= middle,
        final_strict: middle > rhs,
        lhs,
        middle,
        rhs,
    })
}

/// `classify_thm1` plus the Bennequin report it re-executed, when it got
/// that far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Outcome {
    pub verdict: Verdict,
    pub report: Option<BennequinReport>,
}

pub fn classify_thm1(
    ambient: AmbientStatus,
    k: &LegendrianKnotData,
    n: u32,
    both_orientations: bool,
) -> Verdict {
    classify_thm1_detailed(ambient, k, n, both_orientations).verdict
}

pub fn classify_thm1_detailed(
    ambient: AmbientStatus,
    k: &LegendrianKnotData,
    n: u32,
    both_orientations: bool,
) -> Thm1Outcome {
    let no = |why: String| Thm1Outcome {
        verdict: Verdict::inconclusive(vec![format!("thm1 not applicable: {why}")]),
        report: None,
    };
    if n == 0 {
        return no("n must be a positive integer".into());
    }
    if ambient != AmbientStatus::Tight {
        return no(format!("ambient manifold is {ambient:?}, not known tight"));
    }
    if k.euler_char > 0 {
        return no(format!("chi = {} > 0", k.euler_char));
    }
    if k.tb >= 0 {
        return no(format!("tb = {} is not negative", k.tb));
    }
    let bound = -k.euler_char;
    let rot = if k.rot > bound {
        k.rot
    } else if both_orientations && -k.rot > bound {
        -k.rot
    } else {
        return no(format!(
            "rot = {} does not exceed -chi = {bound}{}",
            k.rot,
            if both_orientations {
                " in either orientation"
            } else {
                ""
            }
        ));
    };

    let mut trace = vec![format!(
        "hypotheses: ambient tight, tb = {} < 0, chi = {} <= 0, rot = {} > -chi = {bound}",
        k.tb, k.euler_char, rot
    )];
    if rot != k.rot {
        trace.push(format!(
            "orientation of `{}` reversed: rot {} -> {rot}; tb, chi and the surgered manifold are unchanged",
            k.id, k.rot
        ));
    }
    trace.push(format!(
        "contact (+1/{n})-surgery = {n} contact (+1)-surgeries on push-offs; det M = n*tb + 1 = {}, det M0 = -n*tb^2 = {}",
        i128::from(n) * i128::from(k.tb) + 1,
        -(i128::from(n) * i128::from(k.tb) * i128::from(k.tb))
    ));
    let inv = match dual_invariants_closed_form(k.tb, rot, k.euler_char, n) {
        Ok(inv) => inv,
        Err(_) => {
            trace.push(
                "n*tb + 1 = 0: the dual knot is not rationally nullhomologous, the Bennequin mechanism cannot run".into(),
            );
            return Thm1Outcome {
                verdict: Verdict::inconclusive(trace),
                report: None,
            };
        }
    };
    trace.push(format!(
        "dual knot: tb_Q = tb/(n*tb+1) = {}, rot_Q = rot/(n*tb+1) = {}, order r = {}, chi(Sigma) = {}",
        inv.tb_q, inv.rot_q, inv.order, inv.euler_char
    ));
    let (report, bennequin) = classify_bennequin(&inv);
    trace.extend(bennequin.trace.iter().cloned());
    if report.satisfied {
        return Thm1Outcome {
            verdict: Verdict::inconclusive(trace),
            report: Some(report),
        };
    }
    if let Ok(chain) = bennequin_chain(k.tb, rot, k.euler_char, n) {
        trace.push(format!(
            "chain: {} >= (chi + 2 rot)/r = {} > -chi/r = {}",
            chain.lhs, chain.middle, chain.rhs
        ));
    }
    trace.push(format!(
        "contact (+1/{n})-surgery on `{}` is overtwisted",
        k.id
    ));
    Thm1Outcome {
        verdict: Verdict::fired(Rule::Thm1, Conclusion::Overtwisted, trace),
        report: Some(report),
    }
}

fn unit_fraction_denominator(r: &Rational) -> Option<u32> {
    if r.is_positive() && *r.numer() == 1.into() {
        r.denom().to_u32()
    } else {
        None
    }
}

pub fn classify_thm2(ambient: AmbientStatus, coefficient: &Rational) -> Verdict {
    if ambient != AmbientStatus::Overtwisted {
        return Verdict::inconclusive(vec![format!(
            "thm2 not applicable: ambient manifold is {ambient:?}, not known overtwisted"
        )]);
    }
    let Some(n) = unit_fraction_denominator(coefficient) else {
        return Verdict::inconclusive(vec![format!(
            "thm2 not applicable: coefficient {coefficient} is not of the form +1/n"
        )]);
    };
    Verdict::fired(
        Rule::Thm2,
        Conclusion::Overtwisted,
        vec![
            format!("contact (+1/{n})-surgery = {n} contact (+1)-surgeries on push-offs"),
            "contact (+1)-surgery in an overtwisted manifold is overtwisted: otherwise (-1)-surgery on the dual knot would recover the overtwisted manifold from a tight one, against preservation of tightness under Legendrian surgery".into(),
            format!("contact ({coefficient})-surgery is overtwisted"),
        ],
    )
}

pub fn classify_lemma_tight(
    plus_one_known_tight: bool,
    p: u64,
    q: u64,
) -> Result<Verdict, ClassifyError> {
    if p == 0 || q == 0 {
        return Err(ClassifyError::NonPositive);
    }
    if p.gcd(&q) != 1 {
        return Err(ClassifyError::NotCoprime { p, q });
    }
    if !plus_one_known_tight {
        return Ok(Verdict::inconclusive(vec![
            "lemma-tight not applicable: contact (+1)-surgery is not known to be tight".into(),
        ]));
    }
    if q >= p {
        return Ok(Verdict::inconclusive(vec![format!(
            "lemma-tight not applicable: q - p = {} is not negative",
            q as i128 - p as i128
        )]));
    }
    let second = Rational::new(-(p as i128), (p - q) as i128);
    let digits = negative_continued_fraction(&second)?;
    let digits: Vec<String> = digits.iter().map(ToString::to_string).collect();
    Ok(Verdict::fired(
        Rule::LemmaTight,
        Conclusion::Tight,
        vec![
            format!(
                "contact (+{p}/{q})-surgery = contact (+1)-surgery on the knot and contact ({second})-surgery on a push-off"
            ),
            format!(
                "contact ({second})-surgery = (-1)-surgeries on stabilized push-offs, continued fraction [{}]",
                digits.join(", ")
            ),
            "assumed: contact (+1)-surgery on the knot is tight".into(),
            "axiom: Legendrian (-1)-surgery preserves tightness".into(),
            format!("contact (+{p}/{q})-surgery is tight"),
        ],
    ))
}

/// Facts supplied about one component.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentFacts {
    /// Contact (+1)-surgery on this component (with every other surgery in
    /// the diagram performed) is known to be tight.
    pub plus_one_tight: bool,
    /// Classify contact surgery with this coefficient instead of the
    /// component's own.
    pub query: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumptions {
    pub components: BTreeMap<String, ComponentFacts>,
    pub both_orientations: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            components: BTreeMap::new(),
            both_orientations: true,
        }
    }
}

/// Where a component lives once every other surgery is performed.
struct Context {
    ambient: AmbientStatus,
    /// Knot data valid in that ambient manifold, when known.
    knot: Option<LegendrianKnotData>,
    /// `tb` in that ambient manifold, when integral.
    tb: Option<i64>,
    notes: Vec<String>,
}

fn context_for(d: &SurgeryDiagram, index: usize) -> Result<Context, ClassifyError> {
    let c = &d.components()[index];
    let others: Vec<usize> = d
        .surgered_indices()
        .into_iter()
        .filter(|&i| i != index)
        .collect();
    if others.is_empty() {
        return Ok(Context {
            ambient: d.ambient(),
            knot: Some(c.knot.clone()),
            tb: Some(c.knot.tb),
            notes: Vec::new(),
        });
    }
    let ids: Vec<&str> = others.iter().map(|&i| d.components()[i].id()).collect();
    let mut notes = vec![format!(
        "`{}` lives in the manifold surgered along {}; its tightness is not given",
        c.id(),
        ids.join(", ")
    )];
    // Invariants of the knot in the surgered manifold, via the dual formulas.
    let mut comps = d.components().to_vec();
    comps[index] = SurgeryComponent::unsurgered(c.knot.clone());
    let bare = SurgeryDiagram::new(d.ambient(), comps, d.linking().to_vec())
        .map_err(|e| ClassifyError::Dual(e.into()))?;
    let expanded = expand_diagram(&bare, &ZigzagPolicy::default())?;
    let dual_index = expanded
        .derived_diagram
        .index_of(c.id())
        .map_err(|e| ClassifyError::Dual(e.into()))?;
    let tb = match dual_invariants_matrix(&expanded.derived_diagram, dual_index) {
        Ok(inv) => {
            notes.push(format!(
                "in the surgered manifold: tb_Q(`{}`) = {}, rot_Q = {}, order {}",
                c.id(),
                inv.tb_q,
                inv.rot_q,
                inv.order
            ));
            inv.tb_q.to_i64()
        }
        Err(DualError::NonNullhomologousDual(_)) => {
            notes.push(format!(
                "`{}` is not rationally nullhomologous after surgery",
                c.id()
            ));
            None
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Context {
        ambient: AmbientStatus::Unknown,
        knot: None,
        tb,
        notes,
    })
}

fn classify_component(
    d: &SurgeryDiagram,
    index: usize,
    coefficient: &Rational,
    facts: &ComponentFacts,
    both_orientations: bool,
) -> Result<Verdict, ClassifyError> {
    let c = &d.components()[index];
    let ctx = context_for(d, index)?;
    let subject = format!("contact ({coefficient})-surgery on `{}`", c.id());

    if facts.plus_one_tight {
        if ctx.ambient == AmbientStatus::Overtwisted {
            return Err(ClassifyError::ConflictingAssumptions {
                id: c.id().to_string(),
                reason: "contact (+1)-surgery asserted tight in an overtwisted manifold, where it is always overtwisted".into(),
            });
        }
        if let Some(k) = &ctx.knot {
            if classify_thm1(ctx.ambient, k, 1, both_orientations).conclusion
                == Conclusion::Overtwisted
            {
                return Err(ClassifyError::ConflictingAssumptions {
                    id: c.id().to_string(),
                    reason: "contact (+1)-surgery asserted tight, but thm1 shows it is overtwisted"
                        .into(),
                });
            }
        }
    }

    let mut fired = Vec::new();
    let mut misses = ctx.notes.clone();
    let mut record = |v: Verdict, fired: &mut Vec<Verdict>| {
        if v.conclusion == Conclusion::Inconclusive {
            misses.extend(v.trace);
        } else {
            fired.push(v);
        }
    };

    if let Some(n) = unit_fraction_denominator(coefficient) {
        record(classify_thm2(ctx.ambient, coefficient), &mut fired);
        match &ctx.knot {
            Some(k) => record(
                classify_thm1(ctx.ambient, k, n, both_orientations),
                &mut fired,
            ),
            None => record(
                Verdict::inconclusive(vec![
                    "thm1 not applicable: knot data in the surgered manifold unknown".into(),
                ]),
                &mut fired,
            ),
        }
    }
    if coefficient.is_positive() && coefficient.numer() > coefficient.denom() {
        let (p, q) = (coefficient.numer().to_u64(), coefficient.denom().to_u64());
        if let (Some(p), Some(q)) = (p, q) {
            let mut v = classify_lemma_tight(facts.plus_one_tight, p, q)?;
            if v.conclusion == Conclusion::Tight && q == 1 {
                if let Some(tb) = ctx.tb {
                    if tb <= -2 && p >= 2 && (p as i128) < i128::from(tb).abs() {
                        v.trace.push(format!(
                            "{CONWAY_FLAG}: tb = {tb} <= -2 and 2 <= n = {p} < |tb| = {}, yet contact (+{p})-surgery is tight",
                            -tb
                        ));
                    }
                }
            }
            record(v, &mut fired);
        }
    }
    if coefficient.is_negative() {
        misses.push("no rule covers negative contact coefficients".into());
    } else if coefficient.numer() < coefficient.denom()
        && unit_fraction_denominator(coefficient).is_none()
    {
        misses.push(format!(
            "no rule covers contact ({coefficient})-surgery: 0 < r < 1 and r is not 1/n"
        ));
    }

    let tight = fired.iter().any(|v| v.conclusion == Conclusion::Tight);
    let ot = fired
        .iter()
        .any(|v| v.conclusion == Conclusion::Overtwisted);
    if tight && ot {
        return Err(ClassifyError::Contradiction(c.id().to_string()));
    }
    let verdict = if fired.is_empty() {
        Verdict::inconclusive(misses)
    } else {
        let mut first = fired.remove(0);
        for other in fired {
            first.trace.push(format!("also {}:", other.rule));
            first.trace.extend(other.trace);
        }
        first
    };
    Ok(verdict.with_subject(subject))
}

/// Applies every rule to each component of `d`. When any component carries
/// a query coefficient only the queried components are classified;
/// otherwise every surgered component is classified with its own
/// coefficient.
pub fn classify_diagram(
    d: &SurgeryDiagram,
    assumptions: &Assumptions,
) -> Result<Vec<Verdict>, ClassifyError> {
    for id in assumptions.components.keys() {
        if d.index_of(id).is_err() {
            return Err(ClassifyError::UnknownComponent(id.clone()));
        }
    }
    let any_query = assumptions.components.values().any(|f| f.query.is_some());
    let default_facts = ComponentFacts::default();
    let mut verdicts = Vec::new();
    for (i, c) in d.components().iter().enumerate() {
        let facts = assumptions.components.get(c.id()).unwrap_or(&default_facts);
        let coefficient = if any_query {
            facts.query.as_ref()
        } else {
            c.contact_coefficient.as_ref()
        };
        if let Some(coefficient) = coefficient {
            verdicts.push(classify_component(
                d,
                i,
                coefficient,
                facts,
                assumptions.both_orientations,
            )?);
        }
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn knot(tb: i64, rot: i64, chi: i64) -> LegendrianKnotData {
        LegendrianKnotData::new("L", tb, rot, chi)
    }

    #[test]
    fn bennequin_examples() {
        let inv = |tb: &str, rot: &str, chi, order| DualKnotInvariants {
            tb_q: r(tb),
            rot_q: r(rot),
            order,
            euler_char: chi,
        };
        let rep = bennequin_check(&inv("-1", "0", 1, 1));
        assert_eq!((rep.lhs, rep.rhs, rep.satisfied), (r("-1"), r("-1"), true));
        let rep = bennequin_check(&inv("2", "-1", -1, 1));
        assert_eq!((rep.lhs, rep.rhs, rep.satisfied), (r("3"), r("1"), false));

        let pipeline = dual_invariants_closed_form(-2, 2, -1, 1).unwrap();
        assert_eq!(
            (pipeline.tb_q.clone(), pipeline.rot_q.clone()),
            (r("2"), r("-2"))
        );
        let rep = bennequin_check(&pipeline);
        assert_eq!((rep.lhs, rep.rhs, rep.satisfied), (r("4"), r("1"), false));
    }

    #[test]
    fn thm1_examples() {
        let v = classify_thm1(AmbientStatus::Tight, &knot(-2, 2, -1), 5, true);
        assert_eq!(
            (v.conclusion(), v.rule()),
            (Conclusion::Overtwisted, Rule::Thm1)
        );
        let v = classify_thm1(AmbientStatus::Tight, &knot(-1, 0, 1), 1, true);
        assert_eq!(
            (v.conclusion(), v.rule()),
            (Conclusion::Inconclusive, Rule::None)
        );
        let v = classify_thm1(AmbientStatus::Unknown, &knot(-2, 2, -1), 1, true);
        assert_eq!(v.conclusion(), Conclusion::Inconclusive);
    }

    #[test]
    fn thm1_orientation_flag() {
        let k = knot(-2, -2, -1);
        assert_eq!(
            classify_thm1(AmbientStatus::Tight, &k, 2, true).conclusion(),
            Conclusion::Overtwisted
        );
        assert_eq!(
            classify_thm1(AmbientStatus::Tight, &k, 2, false).conclusion(),
            Conclusion::Inconclusive
        );
    }

    #[test]
    fn thm1_boundary_and_degenerate_order() {
        // rot = −χ exactly
        let v = classify_thm1(AmbientStatus::Tight, &knot(-2, 1, -1), 1, true);
        assert_eq!(v.conclusion(), Conclusion::Inconclusive);
        // n·tb + 1 = 0
        let out = classify_thm1_detailed(AmbientStatus::Tight, &knot(-1, 2, -1), 1, true);
        assert_eq!(out.verdict.conclusion(), Conclusion::Inconclusive);
        assert!(out.report.is_none());
    }

    #[test]
    fn thm2_examples() {
        let v = classify_thm2(AmbientStatus::Overtwisted, &r("1/4"));
        assert_eq!(
            (v.conclusion(), v.rule()),
            (Conclusion::Overtwisted, Rule::Thm2)
        );
        let v = classify_thm2(AmbientStatus::Overtwisted, &r("1"));
        assert_eq!(v.conclusion(), Conclusion::Overtwisted);
        let v = classify_thm2(AmbientStatus::Overtwisted, &r("-1"));
        assert_eq!(
            (v.conclusion(), v.rule()),
            (Conclusion::Inconclusive, Rule::None)
        );
        let v = classify_thm2(AmbientStatus::Tight, &r("1/2"));
        assert_eq!(v.conclusion(), Conclusion::Inconclusive);
    }

    #[test]
    fn lemma_examples() {
        let v = classify_lemma_tight(true, 2, 1).unwrap();
        assert_eq!(
            (v.conclusion(), v.rule()),
            (Conclusion::Tight, Rule::LemmaTight)
        );
        assert_eq!(
            classify_lemma_tight(true, 1, 2).unwrap().conclusion(),
            Conclusion::Inconclusive
        );
        assert_eq!(
            classify_lemma_tight(false, 5, 2).unwrap().conclusion(),
            Conclusion::Inconclusive
        );
        assert_eq!(
            classify_lemma_tight(true, 4, 2),
            Err(ClassifyError::NotCoprime { p: 4, q: 2 })
        );
        assert_eq!(
            classify_lemma_tight(true, 0, 1),
            Err(ClassifyError::NonPositive)
        );
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify_thm2(AmbientStatus::Overtwisted, &r("1/4"));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["conclusion"], "overtwisted");
        assert_eq!(json["rule"], "thm2");
        assert!(json["trace"].is_array());
        assert!(json.get("subject").is_none());
    }

    #[test]
    fn dispatcher_on_single_knot() {
        let d = SurgeryDiagram::new(
            AmbientStatus::Tight,
            vec![SurgeryComponent::surgered(knot(-2, 2, -1), r("1/2"))],
            vec![vec![0]],
        )
        .unwrap();
        let v = classify_diagram(&d, &Assumptions::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(
            (v[0].conclusion(), v[0].rule()),
            (Conclusion::Overtwisted, Rule::Thm1)
        );
        assert_eq!(v[0].subject(), Some("contact (1/2)-surgery on `L`"));

        assert!(classify_diagram(
            &SurgeryDiagram::empty(AmbientStatus::Tight),
            &Assumptions::default()
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn dispatcher_rejects_conflicts() {
        let d = SurgeryDiagram::new(
            AmbientStatus::Overtwisted,
            vec![SurgeryComponent::surgered(knot(-3, 0, 1), r("2"))],
            vec![vec![0]],
        )
        .unwrap();
        let mut a = Assumptions::default();
        a.components.insert(
            "L".into(),
            ComponentFacts {
                plus_one_tight: true,
                query: None,
            },
        );
        assert!(matches!(
            classify_diagram(&d, &a),
            Err(ClassifyError::ConflictingAssumptions { .. })
        ));

        let mut b = Assumptions::default();
        b.components
            .insert("nope".into(), ComponentFacts::default());
        assert_eq!(
            classify_diagram(&d, &b),
            Err(ClassifyError::UnknownComponent("nope".into()))
        );
    }

    #[test]
    fn chain_lower_bound_and_strictness() {
        let c = bennequin_chain(-3, 2, -1, 2).unwrap();
        assert!(c.lower_bound_holds && c.final_strict);
        let c = bennequin_chain(-2, 1, -1, 1).unwrap();
        assert_eq!(c.middle, c.rhs);
        assert!(!c.final_strict);
    }
}
