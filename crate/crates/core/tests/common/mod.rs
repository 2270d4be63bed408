//! Oracles shared by the integration tests. Nothing here calls the
//! library's linear algebra.

#![allow(dead_code)]

use contact_surgery::{
    AmbientStatus, LegendrianKnotData, Rational, SurgeryComponent, SurgeryDiagram,
};
use num_bigint::BigInt;
use rand::Rng;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return i128::from(m[0][0]);
    }
    let mut total = 0i128;
    for col in 0..n {
        if m[0][col] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * i128::from(m[0][col]) * cofactor_det(&minor);
    }
    total
}

/// Integer entries of the (+1/n) chain linking matrix, written out from the
/// definition: `tb + 1` on the diagonal, `tb` elsewhere.
pub fn chain_matrix(tb: i64, n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { tb + 1 } else { tb }).collect())
        .collect()
}

/// The chain matrix bordered by the dual's linking vector with a zero corner.
pub fn chain_extended(tb: i64, n: usize) -> Vec<Vec<i64>> {
    let mut m = chain_matrix(tb, n);
    for row in &mut m {
        row.push(tb);
    }
    let mut last = vec![tb; n];
    last.push(0);
    m.push(last);
    m
}

/// `a₁ − 1/(a₂ − 1/(…))` evaluated from the innermost digit outwards.
pub fn eval_cf(digits: &[BigInt]) -> Rational {
    let mut acc = Rational::from(digits.last().expect("nonempty").clone());
    for a in digits.iter().rev().skip(1) {
        acc = Rational::from(a.clone()) - Rational::one() / acc;
    }
    acc
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-30..=30);
        let q: i64 = rng.gen_range(1..=12);
        if p != 0 {
            return Rational::new(p, q);
        }
    }
}

/// A valid diagram with up to six components.
pub fn random_diagram<R: Rng>(rng: &mut R) -> SurgeryDiagram {
    let k = rng.gen_range(1..=6);
    let components = (0..k)
        .map(|i| {
            let knot = LegendrianKnotData::new(
                format!("K{i}"),
                rng.gen_range(-10..=4),
                rng.gen_range(-6..=6),
                1 - 2 * rng.gen_range(0..=3),
            );
            if rng.gen_bool(0.7) {
                SurgeryComponent::surgered(knot, random_rational(rng))
            } else {
                SurgeryComponent::unsurgered(knot)
            }
        })
        .collect();
    let mut linking = vec![vec![0i64; k]; k];
    #[allow(clippy::needless_range_loop)]
    for i in 0..k {
        for j in (i + 1)..k {
            let v = rng.gen_range(-4..=4);
            linking[i][j] = v;
            linking[j][i] = v;
        }
    }
    let ambient = [
        AmbientStatus::Tight,
        AmbientStatus::Overtwisted,
        AmbientStatus::Unknown,
    ][rng.gen_range(0..3)];
    let d = SurgeryDiagram::new(ambient, components, linking)
        .expect("generator produces valid diagrams");
    if rng.gen_bool(0.3) {
        d.with_comment("generated")
    } else {
        d
    }
}
