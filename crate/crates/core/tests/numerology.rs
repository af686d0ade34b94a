use degenlab_core::numerology::{
    criterion_induction_check, criterion_nonempty, m0_expected_dimension, max_generators, theta_table, BlowupClass,
    CriterionInput, Lattice, SurfaceClass, SurfaceKind,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn induction_identity_exhaustive() {
    for r in 1..=5 {
        for l in r..=25 {
            for m in -10..=10 {
                for c in [-3, 0, 7] {
                    assert!(criterion_induction_check(c, r, m, l).unwrap());
                }
            }
        }
    }
}

#[test]
fn rank_one_criterion_matches_generator_bound() {
    // 2n + l(1 - l) >= 0 exactly when l <= max generators of a colength-n ideal
    for n in 0..=30i64 {
        for l in 0..=12i64 {
            let holds = criterion_nonempty(&CriterionInput::framed(1, n, l)).unwrap();
            assert_eq!(holds, l as u64 <= max_generators(n as u64), "n={n} l={l}");
        }
    }
}

#[test]
fn thresholds() {
    assert_eq!(theta_table(SurfaceKind::K3Generic), (0, 2));
    assert_eq!(theta_table(SurfaceKind::Abelian), (2, 4));
}

#[test]
fn bookkeeping_flags_discrepancy_off_diagonal() {
    for r in 1..=4 {
        for n in 0..=6 {
            for l in 0..=6 {
                let e = m0_expected_dimension(0, r, n, l);
                assert_eq!(e.disagree, l != r, "r={r} n={n} l={l}");
            }
        }
    }
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-20i64..20, 1i64..6).prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

proptest! {
    #[test]
    fn pushforward_inverts_pullback(rank in rat(), c1 in proptest::collection::vec(rat(), 2), point in rat()) {
        let l = Lattice::new(vec![vec![0, 1], vec![1, -2]]).unwrap();
        let class = SurfaceClass { rank, c1, point };
        prop_assert_eq!(class.pullback().push_forward(&l).unwrap(), class);
    }

    #[test]
    fn exceptional_class_is_orthogonal_to_pullbacks(c1 in proptest::collection::vec(-5i64..5, 2)) {
        let l = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let pulled = SurfaceClass::chern_character(&l, 1, &c1, 0).unwrap().pullback();
        let c = BlowupClass::exceptional_curve(2);
        prop_assert_eq!(c.divisor_pairing(&pulled, &l).unwrap(), BigRational::from_integer(0.into()));
    }
}
