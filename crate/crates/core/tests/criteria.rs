mod common;

use common::*;
use proptest::prelude::*;
use xcone::criteria::{
    eval_state_inequality, eval_witness_inequality, in_cone, necessary_check_general, ppt_member, state_in_cone,
    witness_in_cone,
};
use xcone::{Cone, ConeId, Hermitian64, IneqKind, Slot, SystemPerm, Tolerance64, XMatrix64};

fn s(n: u8) -> Slot {
    Slot::of(n)
}

fn example() -> XMatrix64 {
    xr([0., 1., 1., 2.], [0., 1., 1., 2.], [0., 1., 1., 0.])
}

#[test]
fn worked_example_reports() {
    let tol = Tolerance64::new(1e-12).unwrap();
    let x = example();
    for (k, slack, ok) in [
        (IneqKind::S1(s(1), s(4)), 0.0, true),
        (IneqKind::S1(s(2), s(3)), 0.0, true),
        (IneqKind::S2(s(1), s(4)), 0.0, true),
        (IneqKind::S1(s(1), s(3)), -1.0, false),
        (IneqKind::S1(s(1), s(2)), -1.0, false),
    ] {
        let r = eval_state_inequality(&x, k, &tol).unwrap();
        assert_eq!(r.slack, slack, "{k}");
        assert_eq!(r.satisfied, ok, "{k}");
    }
    assert!(state_in_cone(&x, Cone::A, &tol).member);
    assert!(!state_in_cone(&x, Cone::B, &tol).member);
    assert!(!state_in_cone(&x, Cone::C, &tol).member);
    assert!(state_in_cone(&x, Cone::BcJoin, &tol).member);
}

#[test]
fn documented_witness_memberships() {
    let tol = Tolerance64::default();
    let we1 = xr([1., 0., 0., 0.], [1., 0., 0., 0.], [0., 0., 0., 1.]);
    assert!(witness_in_cone(&we1, Cone::A, &tol).member);
    let b = witness_in_cone(&we1, Cone::B, &tol);
    assert!(!b.member);
    let failing = b.first_violation().unwrap();
    assert_eq!(failing.kind, IneqKind::W1(s(2), s(4)));
    assert_eq!((failing.lhs, failing.rhs), (0.0, 1.0));

    let we2 = xr([1., 0., 0., 1.], [1., 0., 0., 1.], [0., 1., 1., 0.]);
    let v = witness_in_cone(&we2, Cone::BcJoin, &tol);
    assert!(v.member);
    assert!(v.reports.iter().all(|r| r.slack == 0.0));
    let r = eval_witness_inequality(&we2, IneqKind::W2(s(1), s(4)), &tol).unwrap();
    assert_eq!(r.parts, Some([1.0, 1.0]));
}

#[test]
fn general_matrices() {
    let tol = Tolerance64::default();
    let g = necessary_check_general(&XMatrix64::ghz().embed(), ConeId::Primal(Cone::AbcJoin), &tol);
    assert!(!g.verdict.member && g.conclusive);

    let s3 = 1.0 / 3f64.sqrt();
    let mut v = [c(0.0); 8];
    for k in [1, 2, 4] {
        v[k] = c(s3);
    }
    let g = necessary_check_general(&Hermitian64::projector(&v), ConeId::Primal(Cone::A), &tol);
    assert!(g.verdict.member && !g.conclusive && !g.x_shaped);
    assert!(g.off_x_norm > 0.5);

    let g = necessary_check_general(&example().embed(), ConeId::Primal(Cone::B), &tol);
    assert!(!g.verdict.member && g.conclusive);
}

#[test]
fn dual_of_dual_and_order() {
    for c in ConeId::all() {
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.to_string().parse::<ConeId>().unwrap(), c);
    }
    assert!(Cone::AbcMeet.is_subset_of(Cone::AbcJoin));
    assert!(Cone::A.is_subset_of(Cone::CaJoin));
    assert!(!Cone::A.is_subset_of(Cone::BcJoin));
    assert!(ConeId::Dual(Cone::AbcJoin).is_subset_of(ConeId::Dual(Cone::A)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn s2_symmetric_under_pair_exchange(x in arb_psd_x()) {
        let tol = Tolerance64::default();
        for (i, j, k, l) in [(1, 4, 2, 3), (1, 3, 2, 4), (1, 2, 3, 4)] {
            let r1 = eval_state_inequality(&x, IneqKind::S2(s(i), s(j)), &tol).unwrap();
            let r2 = eval_state_inequality(&x, IneqKind::S2(s(k), s(l)), &tol).unwrap();
            prop_assert_eq!((r1.lhs, r1.rhs, r1.satisfied), (r2.lhs, r2.rhs, r2.satisfied));
        }
    }

    #[test]
    fn ppt_agrees_with_inequalities(x in prop_oneof![arb_x(), arb_psd_x()]) {
        let tol = Tolerance64::default();
        for cone in [Cone::A, Cone::B, Cone::C, Cone::AbMeet, Cone::BcMeet, Cone::CaMeet, Cone::AbcMeet] {
            prop_assert_eq!(state_in_cone(&x, cone, &tol).member, ppt_member(&x, cone, &tol).unwrap(), "{}", cone);
        }
    }

    #[test]
    fn membership_is_permutation_covariant(x in prop_oneof![arb_x(), arb_psd_x()], w in arb_witness()) {
        let tol = Tolerance64::default();
        for sigma in SystemPerm::all() {
            for c in ConeId::all() {
                let y = if c.is_dual() { w } else { x };
                prop_assert_eq!(
                    in_cone(&y, c, &tol).member,
                    in_cone(&y.permute(&sigma), c.permuted(&sigma), &tol).member,
                    "{} under {}", c, sigma
                );
            }
        }
    }

    #[test]
    fn membership_is_scale_invariant(x in arb_psd_x(), w in arb_witness(), t in 0.01..100.0f64) {
        let tol = Tolerance64::default();
        for c in Cone::ALL {
            prop_assert_eq!(state_in_cone(&x, c, &tol).member, state_in_cone(&(x * t), c, &tol).member);
            prop_assert_eq!(witness_in_cone(&w, c, &tol).member, witness_in_cone(&(w * t), c, &tol).member);
        }
    }

    #[test]
    fn verdicts_are_consistent(x in prop_oneof![arb_x(), arb_psd_x()]) {
        let tol = Tolerance64::default();
        for c in ConeId::all() {
            let v = in_cone(&x, c, &tol);
            if v.member {
                prop_assert!(v.positivity);
                prop_assert!(v.reports.iter().all(|r| r.satisfied));
                prop_assert!(!v.reports.is_empty());
            }
            for r in &v.reports {
                prop_assert_eq!(r.slack, r.lhs - r.rhs);
            }
        }
    }

    #[test]
    fn state_inequalities_reject_negative_diagonals(x in arb_x()) {
        let tol = Tolerance64::default();
        let negative = x.a.iter().chain(x.b.iter()).any(|&v| v < -tol.eps * x.scale());
        let r = eval_state_inequality(&x, IneqKind::S3(s(1)), &tol);
        prop_assert_eq!(r.is_err(), negative);
    }
}
