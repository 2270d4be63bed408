//! Rational classical invariants of surgery-dual knots.
//!
//! For a diagram of contact (±1)-surgeries with framing matrix `M` and an
//! unsurgered Legendrian knot `L'` with linking vector `λ`:
//!
//! ```text
//! tb_Q = tb(L') + det M₀ / det M
//! rot_Q = rot(L') − ⟨ρ, M⁻¹ λ⟩
//! ```
//!
//! where `ρ` holds the rotation numbers of the surgered knots and `M₀` is
//! `M` bordered by `λ`. The homological order of `L'` in the surgered
//! manifold is the least `r` with `r·M⁻¹λ` integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{build_general_matrices, DiagramError, GeneralMatrices, SurgeryDiagram};
use crate::exact::{det, inner_product, solve, ExactError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("dual knot `{0}` is not rationally nullhomologous (det M = 0); tb_Q and rot_Q are undefined")]
    NonNullhomologousDual(String),
    #[error("push-off count n must be at least 1")]
    ZeroPushOffs,
    #[error("homological order does not fit in 64 bits")]
    OrderOverflow,
    #[error("denominator of {field} = {value} does not divide the order {order}")]
    OrderMismatch {
        field: &'static str,
        value: Rational,
        order: u64,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DualKnotInvariants {
    pub tb_q: Rational,
    pub rot_q: Rational,
    /// Homological order `r` of the dual knot.
    pub order: u64,
    /// Euler characteristic of the rational Seifert surface, carried over
    /// from the source knot.
    pub euler_char: i64,
}

impl DualKnotInvariants {
    fn checked(self) -> Result<Self, DualError> {
        let order = BigInt::from(self.order);
        for (field, value) in [("tb_q", &self.tb_q), ("rot_q", &self.rot_q)] {
            if !order.is_multiple_of(value.denom()) {
                return Err(DualError::OrderMismatch {
                    field,
                    value: value.clone(),
                    order: self.order,
                });
            }
        }
        Ok(self)
    }
}

/// Intermediate quantities of the matrix computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDerivation {
    pub matrices: GeneralMatrices,
    pub det_m: Rational,
    pub det_m0: Rational,
    /// `M⁻¹ λ`.
    pub solution: Vec<Rational>,
    pub tb0: i64,
    pub rot0: i64,
}

pub fn dual_invariants_matrix(
    d: &SurgeryDiagram,
    dual_index: usize,
) -> Result<DualKnotInvariants, DualError> {
    dual_invariants_matrix_detailed(d, dual_index).map(|(inv, _)| inv)
}

pub fn dual_invariants_matrix_detailed(
    d: &SurgeryDiagram,
    dual_index: usize,
) -> Result<(DualKnotInvariants, MatrixDerivation), DualError> {
    let matrices = build_general_matrices(d, dual_index)?;
    let dual = &d.components()[dual_index].knot;
    let det_m = det(&matrices.framing);
    if det_m.is_zero() {
        return Err(DualError::NonNullhomologousDual(dual.id.clone()));
    }
    let det_m0 = det(&matrices.extended);
    let lambda: Vec<Rational> = matrices.linking_vector.iter().map(|&x| x.into()).collect();
    let solution = solve(&matrices.framing, &lambda)?;
    let rot_vector: Vec<Rational> = matrices
        .surgered
        .iter()
        .map(|&i| d.components()[i].knot.rot.into())
        .collect();

    let tb_q = Rational::from(dual.tb) + det_m0.clone() / det_m.clone();
    let rot_q = Rational::from(dual.rot) - inner_product(&rot_vector, &solution)?;
    let order = solution
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        .to_u64()
        .ok_or(DualError::OrderOverflow)?;

    let inv = DualKnotInvariants {
        tb_q,
        rot_q,
        order,
        euler_char: dual.euler_char,
    }
    .checked()?;
    Ok((
        inv,
        MatrixDerivation {
            matrices,
            det_m,
            det_m0,
            solution,
            tb0: dual.tb,
            rot0: dual.rot,
        },
    ))
}

/// `|n·tb + 1|`; zero means the dual is not rationally nullhomologous.
pub fn homological_order(tb: i64, n: u32) -> u64 {
    (i128::from(n) * i128::from(tb) + 1).unsigned_abs() as u64
}

/// Closed forms for the `(+1/n)` chain:
/// `tb_Q = tb/(n·tb+1)`, `rot_Q = rot/(n·tb+1)`, `r = |n·tb+1|`.
pub fn dual_invariants_closed_form(
    tb: i64,
    rot: i64,
    euler_char: i64,
    n: u32,
) -> Result<DualKnotInvariants, DualError> {
    if n == 0 {
        return Err(DualError::ZeroPushOffs);
    }
    let denom = i128::from(n) * i128::from(tb) + 1;
    if denom == 0 {
        return Err(DualError::NonNullhomologousDual("L'".to_string()));
    }
    DualKnotInvariants {
        tb_q: Rational::new(tb, denom),
        rot_q: Rational::new(rot, denom),
        order: homological_order(tb, n),
        euler_char,
    }
    .checked()
}
