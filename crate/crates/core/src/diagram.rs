//! Legendrian surgery diagrams: validated data model, JSON file format,
//! and the linking matrices fed to the dual-knot formulas.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{Rational, SquareMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("component `{0}` has no contact coefficient")]
    MissingCoefficient(String),
    #[error(
        "component `{id}` has contact coefficient {coefficient}; expand to (±1)-surgeries first"
    )]
    UnexpandedCoefficient { id: String, coefficient: Rational },
    #[error("no component `{0}`")]
    NoSuchComponent(String),
    #[error("dual component `{0}` must not carry a contact coefficient")]
    DualIsSurgered(String),
    #[error("push-off count n must be at least 1")]
    ZeroPushOffs,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> DiagramError {
    DiagramError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientStatus {
    Tight,
    Overtwisted,
    Unknown,
}

/// Classical invariants of an oriented, nullhomologous Legendrian knot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegendrianKnotData {
    pub id: String,
    pub tb: i64,
    pub rot: i64,
    /// Euler characteristic of a minimal genus Seifert surface.
    pub euler_char: i64,
}

impl LegendrianKnotData {
    pub fn new(id: impl Into<String>, tb: i64, rot: i64, euler_char: i64) -> Self {
        LegendrianKnotData {
            id: id.into(),
            tb,
            rot,
            euler_char,
        }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.euler_char > 1 {
            return Err(invalid(
                format!("components[{}].euler_char", self.id),
                format!(
                    "Seifert surface Euler characteristic {} exceeds 1",
                    self.euler_char
                ),
            ));
        }
        Ok(())
    }

    /// Same knot with the opposite orientation.
    pub fn reversed(&self) -> Self {
        LegendrianKnotData {
            rot: -self.rot,
            ..self.clone()
        }
    }
}

/// Non-fatal findings about knot data that the model cannot certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "lint", rename_all = "kebab-case")]
pub enum Lint {
    /// χ even: the Seifert surface would need several boundary circles.
    EvenEulerChar { id: String, euler_char: i64 },
    /// tb + rot + χ odd, impossible for a nullhomologous Legendrian knot.
    Parity { id: String, sum: i64 },
}

pub fn lint_knot(k: &LegendrianKnotData) -> Vec<Lint> {
    let mut out = Vec::new();
    if k.euler_char.rem_euclid(2) == 0 {
        out.push(Lint::EvenEulerChar {
            id: k.id.clone(),
            euler_char: k.euler_char,
        });
    }
    let sum = k.tb + k.rot + k.euler_char;
    if sum.rem_euclid(2) != 0 {
        out.push(Lint::Parity {
            id: k.id.clone(),
            sum,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgeryComponent {
    #[serde(flatten)]
    pub knot: LegendrianKnotData,
    /// Surgery coefficient relative to the contact framing; `None` marks a
    /// knot that is carried along unsurgered.
    #[serde(default)]
    pub contact_coefficient: Option<Rational>,
}

impl SurgeryComponent {
    pub fn surgered(knot: LegendrianKnotData, coefficient: Rational) -> Self {
        SurgeryComponent {
            knot,
            contact_coefficient: Some(coefficient),
        }
    }

    pub fn unsurgered(knot: LegendrianKnotData) -> Self {
        SurgeryComponent {
            knot,
            contact_coefficient: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.knot.id
    }

    pub fn is_surgered(&self) -> bool {
        self.contact_coefficient.is_some()
    }
}

/// Topological surgery coefficient `tb + r` of a surgered component.
pub fn topological_coefficient(c: &SurgeryComponent) -> Result<Rational, DiagramError> {
    let r = c
        .contact_coefficient
        .as_ref()
        .ok_or_else(|| DiagramError::MissingCoefficient(c.id().to_string()))?;
    Ok(Rational::from(c.knot.tb) + r)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    ambient: AmbientStatus,
    #[serde(default)]
    comment: Option<String>,
    components: Vec<SurgeryComponent>,
    linking: Vec<Vec<i64>>,
    // Annotations written by the expander; accepted and dropped.
    #[serde(default, rename = "steps")]
    _steps: Option<serde::de::IgnoredAny>,
    #[serde(default, rename = "zigzag_policy")]
    _zigzag_policy: Option<serde::de::IgnoredAny>,
}

impl TryFrom<RawDiagram> for SurgeryDiagram {
    type Error = DiagramError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        let mut d = SurgeryDiagram::new(raw.ambient, raw.components, raw.linking)?;
        d.comment = raw.comment;
        Ok(d)
    }
}

/// A validated surgery diagram. The linking matrix is symmetric with a zero
/// diagonal; framings come from `tb + coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct SurgeryDiagram {
    ambient: AmbientStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    components: Vec<SurgeryComponent>,
    linking: Vec<Vec<i64>>,
}

impl SurgeryDiagram {
    pub fn new(
        ambient: AmbientStatus,
        components: Vec<SurgeryComponent>,
        linking: Vec<Vec<i64>>,
    ) -> Result<Self, DiagramError> {
        let n = components.len();
        let mut seen = HashSet::new();
        for (i, c) in components.iter().enumerate() {
            if !seen.insert(c.id()) {
                return Err(invalid(
                    format!("components[{i}].id"),
                    format!("duplicate component id `{}`", c.id()),
                ));
            }
            c.knot.validate().map_err(|_| {
                invalid(
                    format!("components[{i}].euler_char"),
                    format!("Euler characteristic {} exceeds 1", c.knot.euler_char),
                )
            })?;
            if c.contact_coefficient
                .as_ref()
                .is_some_and(Rational::is_zero)
            {
                return Err(invalid(
                    format!("components[{i}].contact_coefficient"),
                    "contact coefficient must be nonzero",
                ));
            }
        }
        if linking.len() != n {
            return Err(invalid(
                "linking",
                format!("expected {n} rows, found {}", linking.len()),
            ));
        }
        for (i, row) in linking.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(
                    format!("linking[{i}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            if row[i] != 0 {
                return Err(invalid(format!("linking[{i}][{i}]"), "diagonal must be 0"));
            }
            for j in 0..i {
                if row[j] != linking[j][i] {
                    return Err(invalid(
                        format!("linking[{i}][{j}]"),
                        format!(
                            "asymmetric: {} vs linking[{j}][{i}] = {}",
                            row[j], linking[j][i]
                        ),
                    ));
                }
            }
        }
        Ok(SurgeryDiagram {
            ambient,
            comment: None,
            components,
            linking,
        })
    }

    pub fn empty(ambient: AmbientStatus) -> Self {
        SurgeryDiagram {
            ambient,
            comment: None,
            components: Vec::new(),
            linking: Vec::new(),
        }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let raw: RawDiagram =
            serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serialization is infallible")
    }

    pub fn ambient(&self) -> AmbientStatus {
        self.ambient
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn components(&self) -> &[SurgeryComponent] {
        &self.components
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize, DiagramError> {
        self.components
            .iter()
            .position(|c| c.id() == id)
            .ok_or_else(|| DiagramError::NoSuchComponent(id.to_string()))
    }

    pub fn surgered_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.components[i].is_surgered())
            .collect()
    }

    /// Reverses the orientation of one component: its rotation number and
    /// its linking numbers with every other component change sign.
    pub fn reverse_orientation(&self, id: &str) -> Result<Self, DiagramError> {
        let k = self.index_of(id)?;
        let mut out = self.clone();
        out.components[k].knot = out.components[k].knot.reversed();
        for i in 0..out.len() {
            out.linking[k][i] = -out.linking[k][i];
            out.linking[i][k] = -out.linking[i][k];
        }
        Ok(out)
    }

    pub fn lints(&self) -> Vec<Lint> {
        self.components
            .iter()
            .flat_map(|c| lint_knot(&c.knot))
            .collect()
    }
}

/// The `(+1/n)` push-off chain: `n` contact (+1)-surgeries on successive
/// push-offs of one knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlusOneChainSpec {
    pub tb: i64,
    pub rot: i64,
    pub euler_char: i64,
    pub n: u32,
}

impl PlusOneChainSpec {
    pub fn new(tb: i64, rot: i64, euler_char: i64, n: u32) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::ZeroPushOffs);
        }
        Ok(PlusOneChainSpec {
            tb,
            rot,
            euler_char,
            n,
        })
    }

    /// The chain as a diagram: push-offs `L1..Ln` with contact (+1), and the
    /// unsurgered `(n+1)`st push-off `L'` last. Every pairwise linking
    /// number equals `tb`.
    pub fn to_diagram(&self) -> SurgeryDiagram {
        let n = self.n as usize;
        let knot = |id: String| LegendrianKnotData::new(id, self.tb, self.rot, self.euler_char);
        let mut components: Vec<_> = (1..=n)
            .map(|i| SurgeryComponent::surgered(knot(format!("L{i}")), Rational::one()))
            .collect();
        components.push(SurgeryComponent::unsurgered(knot("L'".to_string())));
        let linking = (0..=n)
            .map(|i| (0..=n).map(|j| if i == j { 0 } else { self.tb }).collect())
            .collect();
        SurgeryDiagram::new(AmbientStatus::Tight, components, linking)
            .expect("chain diagram is valid by construction")
    }
}

/// `n×n` matrix with `tb + 1` on the diagonal and `tb` elsewhere.
pub fn build_linking_matrix(spec: &PlusOneChainSpec) -> SquareMatrix {
    let tb = Rational::from(spec.tb);
    let diag = Rational::from(spec.tb + 1);
    SquareMatrix::from_fn(spec.n as usize, |i, j| {
        if i == j {
            diag.clone()
        } else {
            tb.clone()
        }
    })
}

/// The linking matrix bordered by a zero corner and a row/column of `tb`.
pub fn build_extended_matrix(spec: &PlusOneChainSpec) -> SquareMatrix {
    let m = build_linking_matrix(spec);
    bordered(&m, &vec![Rational::from(spec.tb); spec.n as usize])
}

fn bordered(m: &SquareMatrix, border: &[Rational]) -> SquareMatrix {
    SquareMatrix::from_fn(m.dim() + 1, |i, j| match (i, j) {
        (0, 0) => Rational::zero(),
        (0, j) => border[j - 1].clone(),
        (i, 0) => border[i - 1].clone(),
        (i, j) => m.get(i - 1, j - 1).clone(),
    })
}

/// Matrices of a fully expanded diagram relative to one unsurgered knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralMatrices {
    /// Framing matrix `M` of the surgered components.
    pub framing: SquareMatrix,
    /// `M` bordered by the dual knot's linking numbers.
    pub extended: SquareMatrix,
    /// Linking numbers of the dual knot with each surgered component.
    pub linking_vector: Vec<i64>,
    /// Diagram indices of the surgered components, in matrix order.
    pub surgered: Vec<usize>,
}

/// Builds `M` and `M₀` for a diagram whose surgered components all carry
/// contact coefficient ±1. Unsurgered components other than the dual do
/// not enter either matrix.
pub fn build_general_matrices(
    d: &SurgeryDiagram,
    dual_index: usize,
) -> Result<GeneralMatrices, DiagramError> {
    let dual = d
        .components()
        .get(dual_index)
        .ok_or_else(|| DiagramError::NoSuchComponent(format!("#{dual_index}")))?;
    if dual.is_surgered() {
        return Err(DiagramError::DualIsSurgered(dual.id().to_string()));
    }
    let surgered = d.surgered_indices();
    for &i in &surgered {
        let c = &d.components()[i];
        let r = c.contact_coefficient.as_ref().expect("surgered");
        if !(*r == 1 || *r == -1) {
            return Err(DiagramError::UnexpandedCoefficient {
                id: c.id().to_string(),
                coefficient: r.clone(),
            });
        }
    }
    let framing = SquareMatrix::from_fn(surgered.len(), |a, b| {
        let (i, j) = (surgered[a], surgered[b]);
        if a == b {
            topological_coefficient(&d.components()[i]).expect("surgered")
        } else {
            Rational::from(d.lk(i, j))
        }
    });
    let linking_vector: Vec<i64> = surgered.iter().map(|&i| d.lk(dual_index, i)).collect();
    let border: Vec<Rational> = linking_vector.iter().map(|&x| Rational::from(x)).collect();
    let extended = bordered(&framing, &border);
    Ok(GeneralMatrices {
        framing,
        extended,
        linking_vector,
        surgered,
    })
}
