//! Rational contact surgeries rewritten as contact (±1)-surgeries.
//!
//! Three coefficient shapes are handled:
//!
//! - `+1/n`: `n` contact (+1)-surgeries on successive push-offs.
//! - `+p/q` with `p > q ≥ 1`: a contact (+1)-surgery on the knot followed by
//!   the expansion of contact `−p/(p−q)` on its push-off.
//! - `r < 0`: contact (−1)-surgeries on a chain of push-offs, each stabilized
//!   further according to the negative continued fraction of `r`.
//!
//! Every expansion is a chain: step `i` is a Legendrian push-off of step
//! `i−1` with `stabilizations` additional zigzags, so effective `tb` and
//! `rot` accumulate along the chain and the linking number of two steps of
//! the same source is the effective `tb` of the earlier one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{
    AmbientStatus, DiagramError, LegendrianKnotData, SurgeryComponent, SurgeryDiagram,
};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("out of range: {0}")]
    Range(String),
    #[error(
        "contact coefficient {0} is outside the supported shapes (+1/n, +p/q with p > q, negative)"
    )]
    Unsupported(Rational),
    #[error("continued fraction digit {0} does not fit the stabilization counter")]
    TooLarge(BigInt),
    #[error("explicit zigzag list exhausted after {0} signs")]
    PolicyExhausted(usize),
    #[error("explicit zigzag list has {unused} unused signs")]
    PolicyUnused { unused: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// How the sign of each stabilization is chosen. Signs are handed out in
/// step order across the whole expansion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ZigzagPolicy {
    #[default]
    AllNegative,
    AllPositive,
    /// Alternating −1, +1, −1, …
    Balanced,
    Explicit(Vec<i8>),
}

impl fmt::Display for ZigzagPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagPolicy::AllNegative => f.write_str("all-negative"),
            ZigzagPolicy::AllPositive => f.write_str("all-positive"),
            ZigzagPolicy::Balanced => f.write_str("balanced"),
            ZigzagPolicy::Explicit(signs) => {
                f.write_str("explicit:")?;
                let parts: Vec<&str> = signs
                    .iter()
                    .map(|&s| if s < 0 { "-" } else { "+" })
                    .collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for ZigzagPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-negative" => Ok(ZigzagPolicy::AllNegative),
            "all-positive" => Ok(ZigzagPolicy::AllPositive),
            "balanced" => Ok(ZigzagPolicy::Balanced),
            _ => {
                let list = s.strip_prefix("explicit:").ok_or_else(|| {
                    format!("unknown zigzag policy {s:?} (all-negative, all-positive, balanced, explicit:+,-,...)")
                })?;
                list.split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| match t.trim() {
                        "-" | "-1" => Ok(-1),
                        "+" | "+1" | "1" => Ok(1),
                        other => Err(format!("bad zigzag sign {other:?}")),
                    })
                    .collect::<Result<_, _>>()
                    .map(ZigzagPolicy::Explicit)
            }
        }
    }
}

impl Serialize for ZigzagPolicy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct SignSource<'a> {
    policy: &'a ZigzagPolicy,
    used: usize,
}

impl<'a> SignSource<'a> {
    fn new(policy: &'a ZigzagPolicy) -> Self {
        SignSource { policy, used: 0 }
    }

    fn take(&mut self, count: u32) -> Result<Vec<i8>, ExpansionError> {
        (0..count)
            .map(|_| {
                let k = self.used;
                self.used += 1;
                match self.policy {
                    ZigzagPolicy::AllNegative => Ok(-1),
                    ZigzagPolicy::AllPositive => Ok(1),
                    ZigzagPolicy::Balanced => Ok(if k.is_multiple_of(2) { -1 } else { 1 }),
                    ZigzagPolicy::Explicit(list) => list
                        .get(k)
                        .copied()
                        .ok_or(ExpansionError::PolicyExhausted(list.len())),
                }
            })
            .collect()
    }

    fn finish(&self) -> Result<(), ExpansionError> {
        match self.policy {
            ZigzagPolicy::Explicit(list) if list.len() > self.used => {
                Err(ExpansionError::PolicyUnused {
                    unused: list.len() - self.used,
                })
            }
            _ => Ok(()),
        }
    }
}

/// One contact (±1)-surgery of an expanded presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionStep {
    /// Component id in the derived diagram.
    pub id: String,
    /// Id of the original component this push-off copies.
    pub source_id: String,
    pub coefficient: Rational,
    /// Zigzags added at this step, on top of those of the previous step.
    pub stabilizations: u32,
    pub stabilization_signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpandedPresentation {
    #[serde(flatten)]
    pub derived_diagram: SurgeryDiagram,
    pub steps: Vec<ExpansionStep>,
    pub zigzag_policy: ZigzagPolicy,
}

impl ExpandedPresentation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serialization is infallible")
    }
}

/// Negative continued fraction `[a₁, …, a_m]` of `r < 0` with
/// `r = a₁ − 1/(a₂ − 1/(… − 1/a_m))`, `a₁ ≤ −1` and `aᵢ ≤ −2` for `i ≥ 2`.
///
/// Each digit is the floor of the current remainder.
pub fn negative_continued_fraction(r: &Rational) -> Result<Vec<BigInt>, ExpansionError> {
    if !r.is_negative() {
        return Err(ExpansionError::Range(format!(
            "negative expansion needs r < 0, got {r}"
        )));
    }
    let mut digits = Vec::new();
    let mut x = r.clone();
    loop {
        let a = x.floor();
        let frac = x - Rational::from(a.clone());
        digits.push(a);
        if frac.is_zero() {
            break;
        }
        // frac ∈ (0, 1), so the next remainder is < −1.
        x = -(Rational::one() / frac);
    }
    Ok(digits)
}

/// Evaluates `a₁ − 1/(a₂ − 1/(… − 1/a_m))`.
pub fn evaluate_negative_continued_fraction(digits: &[BigInt]) -> Option<Rational> {
    let (last, rest) = digits.split_last()?;
    let mut acc = Rational::from(last.clone());
    for a in rest.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = Rational::from(a.clone()) - Rational::one() / acc;
    }
    Some(acc)
}

/// Number of subtraction steps the subtractive Euclidean algorithm takes on
/// `(p, q)`; bounds the length of the negative continued fraction of `−p/q`.
pub fn subtractive_euclid_steps(p: &BigInt, q: &BigInt) -> BigInt {
    let (mut a, mut b) = (p.abs(), q.abs());
    let mut steps = BigInt::zero();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        steps += quot;
        a = b;
        b = rem;
    }
    steps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PlannedStep {
    coefficient: i8,
    stabilizations: u32,
}

fn stab_count(x: BigInt) -> Result<u32, ExpansionError> {
    x.abs().to_u32().ok_or(ExpansionError::TooLarge(x))
}

fn plan_unit_fraction(n: u32) -> Vec<PlannedStep> {
    vec![
        PlannedStep {
            coefficient: 1,
            stabilizations: 0,
        };
        n as usize
    ]
}

fn plan_negative(r: &Rational) -> Result<Vec<PlannedStep>, ExpansionError> {
    let digits = negative_continued_fraction(r)?;
    digits
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let shift = if i == 0 { 1 } else { 2 };
            Ok(PlannedStep {
                coefficient: -1,
                stabilizations: stab_count(a + shift)?,
            })
        })
        .collect()
}

fn check_positive_rational(p: u64, q: u64) -> Result<(), ExpansionError> {
    if p == 0 || q == 0 {
        return Err(ExpansionError::Range(format!(
            "p and q must be positive, got p = {p}, q = {q}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(ExpansionError::NotCoprime { p, q });
    }
    if q >= p {
        return Err(ExpansionError::Range(format!(
            "+p/q expansion needs q − p < 0, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

fn plan_positive_rational(p: u64, q: u64) -> Result<Vec<PlannedStep>, ExpansionError> {
    check_positive_rational(p, q)?;
    let mut steps = plan_unit_fraction(1);
    steps.extend(plan_negative(&Rational::new(
        -(p as i128),
        (p - q) as i128,
    ))?);
    Ok(steps)
}

/// Chooses the expansion for one coefficient.
fn plan_coefficient(r: &Rational) -> Result<Vec<PlannedStep>, ExpansionError> {
    if r.is_negative() {
        return plan_negative(r);
    }
    let (numer, denom) = (r.numer(), r.denom());
    if *numer == BigInt::from(1) {
        let n = denom
            .to_u32()
            .ok_or_else(|| ExpansionError::TooLarge(denom.clone()))?;
        return Ok(plan_unit_fraction(n));
    }
    if numer > denom {
        let p = numer
            .to_u64()
            .ok_or_else(|| ExpansionError::TooLarge(numer.clone()))?;
        let q = denom
            .to_u64()
            .ok_or_else(|| ExpansionError::TooLarge(denom.clone()))?;
        return plan_positive_rational(p, q);
    }
    Err(ExpansionError::Unsupported(r.clone()))
}

/// A chain of push-offs of one source knot, with effective invariants.
struct RealizedChain {
    knots: Vec<LegendrianKnotData>,
    steps: Vec<ExpansionStep>,
}

fn realize(
    source: &LegendrianKnotData,
    plan: &[PlannedStep],
    signs: &mut SignSource<'_>,
) -> Result<RealizedChain, ExpansionError> {
    let mut knots = Vec::with_capacity(plan.len());
    let mut steps = Vec::with_capacity(plan.len());
    let (mut tb, mut rot) = (source.tb, source.rot);
    for (i, planned) in plan.iter().enumerate() {
        let id = if plan.len() == 1 {
            source.id.clone()
        } else {
            format!("{}.{}", source.id, i + 1)
        };
        let stabilization_signs = signs.take(planned.stabilizations)?;
        tb -= i64::from(planned.stabilizations);
        rot += stabilization_signs
            .iter()
            .map(|&s| i64::from(s))
            .sum::<i64>();
        knots.push(LegendrianKnotData::new(
            id.clone(),
            tb,
            rot,
            source.euler_char,
        ));
        steps.push(ExpansionStep {
            id,
            source_id: source.id.clone(),
            coefficient: Rational::from(i64::from(planned.coefficient)),
            stabilizations: planned.stabilizations,
            stabilization_signs,
        });
    }
    Ok(RealizedChain { knots, steps })
}

fn single_knot_presentation(
    k: &LegendrianKnotData,
    plan: &[PlannedStep],
    policy: &ZigzagPolicy,
) -> Result<ExpandedPresentation, ExpansionError> {
    let component = SurgeryComponent::surgered(k.clone(), Rational::one());
    let d = SurgeryDiagram::new(AmbientStatus::Unknown, vec![component], vec![vec![0]])?;
    expand_with_plans(&d, policy, |_| Ok(plan.to_vec()))
}

/// Contact `(+1/n)`-surgery as `n` contact (+1)-surgeries on push-offs.
pub fn expand_positive_unit_fraction(
    k: &LegendrianKnotData,
    n: u32,
) -> Result<ExpandedPresentation, ExpansionError> {
    if n == 0 {
        return Err(ExpansionError::Range("n must be at least 1".into()));
    }
    single_knot_presentation(k, &plan_unit_fraction(n), &ZigzagPolicy::default())
}

/// Contact `(+p/q)`-surgery, `p > q ≥ 1` coprime: contact (+1) on the knot,
/// then contact `−p/(p−q)` on its push-off.
pub fn expand_positive_rational(
    k: &LegendrianKnotData,
    p: u64,
    q: u64,
) -> Result<ExpandedPresentation, ExpansionError> {
    expand_positive_rational_with(k, p, q, &ZigzagPolicy::default())
}

pub fn expand_positive_rational_with(
    k: &LegendrianKnotData,
    p: u64,
    q: u64,
    policy: &ZigzagPolicy,
) -> Result<ExpandedPresentation, ExpansionError> {
    single_knot_presentation(k, &plan_positive_rational(p, q)?, policy)
}

/// Contact `r`-surgery, `r < 0`, as contact (−1)-surgeries on stabilized
/// push-offs.
pub fn expand_negative_rational(
    k: &LegendrianKnotData,
    r: &Rational,
) -> Result<ExpandedPresentation, ExpansionError> {
    expand_negative_rational_with(k, r, &ZigzagPolicy::default())
}

pub fn expand_negative_rational_with(
    k: &LegendrianKnotData,
    r: &Rational,
    policy: &ZigzagPolicy,
) -> Result<ExpandedPresentation, ExpansionError> {
    single_knot_presentation(k, &plan_negative(r)?, policy)
}

/// Expands every surgered component of `d`. Unsurgered components are kept
/// as they are, and a component whose coefficient is already ±1 expands to
/// itself.
pub fn expand_diagram(
    d: &SurgeryDiagram,
    policy: &ZigzagPolicy,
) -> Result<ExpandedPresentation, ExpansionError> {
    expand_with_plans(d, policy, plan_coefficient)
}

fn expand_with_plans(
    d: &SurgeryDiagram,
    policy: &ZigzagPolicy,
    mut plan_for: impl FnMut(&Rational) -> Result<Vec<PlannedStep>, ExpansionError>,
) -> Result<ExpandedPresentation, ExpansionError> {
    let mut signs = SignSource::new(policy);
    let mut components = Vec::new();
    let mut steps = Vec::new();
    // (original index, effective tb if this is a chain step)
    let mut origin: Vec<(usize, Option<i64>)> = Vec::new();

    for (idx, c) in d.components().iter().enumerate() {
        match &c.contact_coefficient {
            None => {
                components.push(c.clone());
                origin.push((idx, None));
            }
            Some(r) => {
                let plan = plan_for(r)?;
                let chain = realize(&c.knot, &plan, &mut signs)?;
                for (knot, step) in chain.knots.into_iter().zip(&chain.steps) {
                    origin.push((idx, Some(knot.tb)));
                    components.push(SurgeryComponent::surgered(knot, step.coefficient.clone()));
                }
                steps.extend(chain.steps);
            }
        }
    }
    signs.finish()?;

    let n = components.len();
    let linking = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let ((ia, tb_a), (ib, tb_b)) = (origin[a], origin[b]);
                    match (a == b, ia == ib) {
                        (true, _) => 0,
                        // Two push-offs in one chain: the earlier one's framing.
                        (false, true) => {
                            let earlier = if a < b { tb_a } else { tb_b };
                            earlier.expect("only surgered components expand")
                        }
                        (false, false) => d.lk(ia, ib),
                    }
                })
                .collect()
        })
        .collect();

    let mut derived = SurgeryDiagram::new(d.ambient(), components, linking)?;
    if let Some(comment) = d.comment() {
        derived = derived.with_comment(comment);
    }
    Ok(ExpandedPresentation {
        derived_diagram: derived,
        steps,
        zigzag_policy: policy.clone(),
    })
}
