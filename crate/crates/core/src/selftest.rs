//! Built-in identity checks run by `contact-surgery selftest`.

use serde::Serialize;
use thiserror::Error;

use crate::bundled;
use crate::classify::{bennequin_chain, bennequin_check, classify_thm1, Conclusion};
use crate::diagram::{
    build_extended_matrix, build_linking_matrix, AmbientStatus, LegendrianKnotData,
    PlusOneChainSpec,
};
use crate::dual::{dual_invariants_closed_form, dual_invariants_matrix, DualError};
use crate::exact::{det, Rational, SquareMatrix};
use crate::expansion::{evaluate_negative_continued_fraction, negative_continued_fraction};
use crate::sweep::{self, grid, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("selftest failed on \"{check}\": {detail}")]
pub struct SelftestFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

pub type DetFn = fn(&SquareMatrix) -> Rational;

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    /// Determinant routine under test.
    pub det: DetFn,
    pub exec: Exec,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            det,
            exec: Exec::default(),
        }
    }
}

pub const DET_M: &str = "det(M) = n*tb + 1";
pub const DET_M0: &str = "det(M0) = -n*tb^2";
pub const CLOSED_FORM: &str = "closed-form tb_Q, rot_Q, r = matrix path";
pub const CHAIN: &str = "bennequin chain on (+1/n) duals";
pub const FIGURE1: &str = "figure1 tb = -1 + 2/(-1) = -3";
pub const DEGENERATE: &str = "s1xs2 dual is not nullhomologous";
pub const CONTINUED_FRACTION: &str = "negative continued fractions re-evaluate";

fn fail(check: &str, detail: String) -> SelftestFailure {
    SelftestFailure {
        check: check.to_string(),
        detail,
    }
}

fn chain(tb: i64, rot: i64, chi: i64, n: u32) -> PlusOneChainSpec {
    PlusOneChainSpec::new(tb, rot, chi, n).expect("n >= 1")
}

pub fn run() -> Result<SelftestReport, SelftestFailure> {
    run_with(SelftestConfig::default())
}

pub fn run_with(config: SelftestConfig) -> Result<SelftestReport, SelftestFailure> {
    let exec = config.exec;
    let det_fn = config.det;
    let mut checks = Vec::new();
    let mut record = |name, cases| checks.push(CheckResult { name, cases });

    let tb_n = grid(-10i64..=-1, 1u32..=10);
    let cases = sweep::try_all(exec, &tb_n, |&(tb, n)| {
        let got = det_fn(&build_linking_matrix(&chain(tb, 0, 1, n)));
        let want = i64::from(n) * tb + 1;
        if got == want {
            Ok(())
        } else {
            Err(fail(
                DET_M,
                format!("tb = {tb}, n = {n}: got {got}, expected {want}"),
            ))
        }
    })?;
    record(DET_M, cases);

    let cases = sweep::try_all(exec, &tb_n, |&(tb, n)| {
        let got = det_fn(&build_extended_matrix(&chain(tb, 0, 1, n)));
        let want = -i64::from(n) * tb * tb;
        if got == want {
            Ok(())
        } else {
            Err(fail(
                DET_M0,
                format!("tb = {tb}, n = {n}: got {got}, expected {want}"),
            ))
        }
    })?;
    record(DET_M0, cases);

    let mut agreement = Vec::new();
    for tb in -10i64..=-1 {
        for rot in -10i64..=10 {
            for n in 1u32..=8 {
                if i64::from(n) * tb + 1 != 0 {
                    agreement.push((tb, rot, n));
                }
            }
        }
    }
    let cases = sweep::try_all(exec, &agreement, |&(tb, rot, n)| {
        let spec = chain(tb, rot, -1, n);
        let matrix = dual_invariants_matrix(&spec.to_diagram(), n as usize)
            .map_err(|e| fail(CLOSED_FORM, format!("tb = {tb}, rot = {rot}, n = {n}: {e}")))?;
        let closed = dual_invariants_closed_form(tb, rot, -1, n)
            .map_err(|e| fail(CLOSED_FORM, format!("tb = {tb}, rot = {rot}, n = {n}: {e}")))?;
        if matrix == closed {
            Ok(())
        } else {
            Err(fail(
                CLOSED_FORM,
                format!("tb = {tb}, rot = {rot}, n = {n}: matrix {matrix:?} vs closed {closed:?}"),
            ))
        }
    })?;
    record(CLOSED_FORM, cases);

    let chain_cases = chain_grid();
    let cases = sweep::try_all(exec, &chain_cases, |&(tb, rot, chi, n)| {
        check_chain_case(tb, rot, chi, n)
    })?;
    record(CHAIN, cases);

    let inv =
        dual_invariants_matrix(&bundled::figure1(), 2).map_err(|e| fail(FIGURE1, e.to_string()))?;
    if inv.tb_q != -3 {
        return Err(fail(FIGURE1, format!("tb_Q = {}", inv.tb_q)));
    }
    record(FIGURE1, 1);

    match dual_invariants_matrix(&bundled::s1xs2(), 1) {
        Err(DualError::NonNullhomologousDual(_)) => record(DEGENERATE, 1),
        other => return Err(fail(DEGENERATE, format!("unexpected {other:?}"))),
    }

    let fractions: Vec<(i64, i64)> = grid(2i64..=40, 1i64..=39)
        .into_iter()
        .filter(|&(p, q)| q < p && num_integer::gcd(p, q) == 1)
        .collect();
    let cases = sweep::try_all(exec, &fractions, |&(p, q)| {
        let r = Rational::new(-p, q);
        let digits =
            negative_continued_fraction(&r).map_err(|e| fail(CONTINUED_FRACTION, e.to_string()))?;
        let normal = digits.iter().enumerate().all(|(i, a)| {
            if i == 0 {
                *a <= (-1).into()
            } else {
                *a <= (-2).into()
            }
        });
        if normal && evaluate_negative_continued_fraction(&digits) == Some(r.clone()) {
            Ok(())
        } else {
            Err(fail(CONTINUED_FRACTION, format!("-{p}/{q} -> {digits:?}")))
        }
    })?;
    record(CONTINUED_FRACTION, cases);

    Ok(SelftestReport { checks })
}

/// Grid points `(tb, rot, χ, n)` with `tb < 0`, `rot ≥ −χ`, classical bound
/// `tb + rot ≤ −χ`, and `n·tb + 1 ≠ 0`. Includes the boundary `rot = −χ`.
pub fn chain_grid() -> Vec<(i64, i64, i64, u32)> {
    let mut out = Vec::new();
    for chi in [-1i64, -3, -5] {
        for tb in -10i64..=-1 {
            for rot in -chi..=(-chi - tb) {
                for n in 1u32..=8 {
                    if i64::from(n) * tb + 1 != 0 {
                        out.push((tb, rot, chi, n));
                    }
                }
            }
        }
    }
    out
}

fn check_chain_case(tb: i64, rot: i64, chi: i64, n: u32) -> Result<(), SelftestFailure> {
    let at = || format!("tb = {tb}, rot = {rot}, chi = {chi}, n = {n}");
    let c = bennequin_chain(tb, rot, chi, n).map_err(|e| fail(CHAIN, format!("{}: {e}", at())))?;
    if !c.lower_bound_holds {
        return Err(fail(CHAIN, format!("{}: {} < {}", at(), c.lhs, c.middle)));
    }
    let verdict = classify_thm1(
        AmbientStatus::Tight,
        &LegendrianKnotData::new("L", tb, rot, chi),
        n,
        false,
    );
    if rot > -chi {
        let inv =
            dual_invariants_closed_form(tb, rot, chi, n).map_err(|e| fail(CHAIN, e.to_string()))?;
        if !c.final_strict
            || bennequin_check(&inv).satisfied
            || verdict.conclusion() != Conclusion::Overtwisted
        {
            return Err(fail(CHAIN, format!("{}: no certified violation", at())));
        }
    } else if c.middle != c.rhs
        || c.final_strict
        || verdict.conclusion() != Conclusion::Inconclusive
    {
        return Err(fail(
            CHAIN,
            format!("{}: boundary should give equality and no verdict", at()),
        ));
    }
    Ok(())
}
