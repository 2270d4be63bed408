mod common;

use contact_surgery::dual::dual_invariants_matrix_detailed;
use contact_surgery::expansion::{
    evaluate_negative_continued_fraction, negative_continued_fraction, ExpansionError,
};
use contact_surgery::{
    classify_diagram, det, expand_diagram, solve, Assumptions, ComponentFacts, Conclusion,
    Rational, Rule, SquareMatrix, SurgeryDiagram, ZigzagPolicy,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn nonzero_rational() -> impl Strategy<Value = (i64, i64)> {
    (-500i64..=500, 1i64..=500).prop_filter("nonzero", |(p, _)| *p != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn det_matches_cofactor_expansion(rows in small_matrix(6)) {
        let m = SquareMatrix::from_integer_rows(&rows).unwrap();
        prop_assert_eq!(det(&m), Rational::from(BigInt::from(common::cofactor_det(&rows))));
    }
}

proptest! {
    #[test]
    fn canonical_form((p, q) in nonzero_rational(), k in 1i64..=20) {
        let r = Rational::new(p * k, q * k);
        prop_assert_eq!(&r, &Rational::new(p, q));
        prop_assert!(r.denom() > &BigInt::zero());
        prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), BigInt::from(1));
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn duplicate_row_is_singular(rows in (2usize..=8).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-50i64..=50, n), n)), i in 0usize..8, j in 0usize..8) {
        let n = rows.len();
        let i = i % n;
        let j = (i + 1 + j % (n - 1)) % n;
        let mut rows = rows;
        rows[j] = rows[i].clone();
        prop_assert!(det(&SquareMatrix::from_integer_rows(&rows).unwrap()).is_zero());
    }

    #[test]
    fn solve_multiplies_back(rows in small_matrix(6), rhs in prop::collection::vec(-20i64..=20, 6)) {
        let m = SquareMatrix::from_integer_rows(&rows).unwrap();
        let b: Vec<Rational> = rhs[..m.dim()].iter().map(|&x| x.into()).collect();
        match solve(&m, &b) {
            Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            Err(_) => prop_assert_eq!(common::cofactor_det(&rows), 0),
        }
    }

    #[test]
    fn continued_fraction_round_trip((p, q) in nonzero_rational()) {
        let r = Rational::new(-p.abs(), q);
        let digits = negative_continued_fraction(&r).unwrap();
        prop_assert!(digits[0] <= BigInt::from(-1));
        prop_assert!(digits[1..].iter().all(|a| *a <= BigInt::from(-2)));
        prop_assert_eq!(common::eval_cf(&digits), r.clone());
        prop_assert_eq!(evaluate_negative_continued_fraction(&digits), Some(r));
    }

    #[test]
    fn random_diagrams_round_trip(seed in any::<u64>()) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(SurgeryDiagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn expansion_yields_unit_coefficients_and_consistent_zigzags(seed in any::<u64>()) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = match expand_diagram(&d, &ZigzagPolicy::Balanced) {
            Ok(p) => p,
            Err(ExpansionError::Unsupported(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let derived = &p.derived_diagram;
        for c in derived.components() {
            if let Some(coef) = &c.contact_coefficient {
                prop_assert!(*coef == 1 || *coef == -1);
            }
        }
        // effective tb drops by one per zigzag, accumulated along each push-off chain
        for source in d.components() {
            let mut zigzags = 0i64;
            let mut rot_shift = 0i64;
            for s in p.steps.iter().filter(|s| s.source_id == source.id()) {
                prop_assert_eq!(s.stabilization_signs.len(), s.stabilizations as usize);
                zigzags += i64::from(s.stabilizations);
                rot_shift += s.stabilization_signs.iter().map(|&x| i64::from(x)).sum::<i64>();
                let k = &derived.components()[derived.index_of(&s.id).unwrap()].knot;
                prop_assert_eq!(k.tb, source.knot.tb - zigzags);
                prop_assert_eq!(k.rot, source.knot.rot + rot_shift);
            }
        }
    }

    #[test]
    fn dual_denominators_divide_order(seed in any::<u64>()) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed));
        let Ok(p) = expand_diagram(&d, &ZigzagPolicy::AllNegative) else { return Ok(()) };
        let derived = &p.derived_diagram;
        for (i, c) in derived.components().iter().enumerate() {
            if c.is_surgered() {
                continue;
            }
            let Ok((inv, der)) = dual_invariants_matrix_detailed(derived, i) else { continue };
            let r = Rational::from(inv.order as i64);
            prop_assert!(inv.order >= 1);
            prop_assert!((inv.tb_q.clone() * r.clone()).is_integer());
            prop_assert!((inv.rot_q.clone() * r.clone()).is_integer());
            for x in &der.solution {
                prop_assert!((x.clone() * r.clone()).is_integer());
            }
            if der.matrices.framing.dim() <= 7 {
                let m = der.matrices.framing.to_integer_rows().unwrap();
                let m0 = der.matrices.extended.to_integer_rows().unwrap();
                prop_assert_eq!(der.det_m.clone(), Rational::from(BigInt::from(common::cofactor_det(&m))));
                prop_assert_eq!(der.det_m0.clone(), Rational::from(BigInt::from(common::cofactor_det(&m0))));
                // the order divides |det M|
                prop_assert!((der.det_m.clone() / r).is_integer());
            }
        }
    }

    #[test]
    fn verdicts_are_mutually_exclusive(seed in any::<u64>(), assume in any::<u8>(), n in 1u32..=12, both in any::<bool>()) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut assumptions = Assumptions { both_orientations: both, ..Default::default() };
        for (i, c) in d.components().iter().enumerate() {
            if assume & (1 << i) != 0 {
                assumptions.components.insert(c.id().to_string(), ComponentFacts {
                    plus_one_tight: assume & 0x80 != 0,
                    query: Some(Rational::from(i64::from(n))),
                });
            }
        }
        match classify_diagram(&d, &assumptions) {
            Ok(verdicts) => {
                for v in verdicts {
                    prop_assert_eq!(v.rule() == Rule::None, v.conclusion() == Conclusion::Inconclusive);
                    prop_assert!(!v.trace().is_empty());
                }
            }
            Err(contact_surgery::classify::ClassifyError::Contradiction(id)) => {
                return Err(TestCaseError::fail(format!("tight and overtwisted on {id}")));
            }
            Err(_) => {}
        }
    }
}
