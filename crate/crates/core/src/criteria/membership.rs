use serde::{Deserialize, Serialize};

use super::cone::{Cone, ConeId, Shape};
use super::inequality::{eval_state_inequality, eval_witness_inequality, IneqKind, IneqReport};
use crate::xcore::{Hermitian8, Party, Slot, Tolerance, XMatrix};
use crate::{Real, Result};

/// Outcome of a cone membership test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict<T> {
    pub cone: ConeId,
    pub member: bool,
    /// PSD for state cones; nonnegative diagonal for witness cones.
    pub positivity: bool,
    pub reports: Vec<IneqReport<T>>,
}

impl<T: Real> MembershipVerdict<T> {
    /// The first report that fails, if any.
    pub fn first_violation(&self) -> Option<&IneqReport<T>> {
        self.reports.iter().find(|r| !r.satisfied)
    }

    /// Smallest relative slack over all reports.
    pub fn min_slack(&self) -> Option<T> {
        self.reports.iter().map(|r| r.relative_slack()).reduce(T::min)
    }
}

fn s1_pairs(p: Party) -> impl Iterator<Item = IneqKind> {
    p.partition().into_iter().map(|(i, j)| IneqKind::S1(i, j))
}

fn w1_pairs(p: Party) -> impl Iterator<Item = IneqKind> {
    p.partition().into_iter().map(|(i, j)| IneqKind::W1(i, j))
}

/// The inequalities that decide membership in `cone` (after the positivity
/// precondition).
pub fn governing_inequalities(cone: ConeId) -> Vec<IneqKind> {
    match cone {
        ConeId::Primal(c) => match c.shape() {
            Shape::Basic(p) => s1_pairs(p).collect(),
            Shape::Meet(pair) => {
                let (p, q) = pair.parties();
                s1_pairs(p).chain(s1_pairs(q)).collect()
            }
            Shape::MeetAll => Party::ALL.into_iter().flat_map(s1_pairs).collect(),
            Shape::Join(pair) => {
                let (i, j) = pair.complement().partition()[0];
                vec![IneqKind::S2(i, j)]
            }
            Shape::JoinAll => Slot::ALL.into_iter().map(IneqKind::S3).collect(),
        },
        ConeId::Dual(c) => match c.shape() {
            Shape::Basic(p) => w1_pairs(p).collect(),
            Shape::Meet(pair) => pair
                .complement()
                .partition()
                .into_iter()
                .map(|(i, j)| IneqKind::W2(i, j))
                .chain(std::iter::once(IneqKind::W3))
                .collect(),
            Shape::MeetAll => vec![IneqKind::W3],
            Shape::Join(pair) => {
                let (p, q) = pair.parties();
                w1_pairs(p).chain(w1_pairs(q)).collect()
            }
            Shape::JoinAll => Party::ALL.into_iter().flat_map(w1_pairs).collect(),
        },
    }
}

fn diagonals_nonneg<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> bool {
    let scale = x.scale();
    x.a.iter().chain(x.b.iter()).all(|&v| tol.nonneg(v, scale))
}

type Evaluator<T> = fn(&XMatrix<T>, IneqKind, &Tolerance<T>) -> Result<IneqReport<T>>;

fn collect_reports<T: Real>(
    x: &XMatrix<T>,
    cone: ConeId,
    tol: &Tolerance<T>,
    eval: Evaluator<T>,
) -> Vec<IneqReport<T>> {
    governing_inequalities(cone)
        .into_iter()
        .map(|k| eval(x, k, tol).expect("diagonals checked before evaluation"))
        .collect()
}

/// Membership of an X-shaped state in a primal cone.
///
/// Positivity is checked first; the governing inequalities are still
/// reported for non-PSD inputs whose diagonal is nonnegative.
pub fn state_in_cone<T: Real>(x: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> MembershipVerdict<T> {
    let id = ConeId::Primal(cone);
    let positivity = x.is_psd(tol);
    let reports = if diagonals_nonneg(x, tol) {
        collect_reports(x, id, tol, eval_state_inequality)
    } else {
        Vec::new()
    };
    let member = positivity && reports.iter().all(|r| r.satisfied);
    MembershipVerdict {
        cone: id,
        member,
        positivity,
        reports,
    }
}

/// Membership of an X-shaped witness in the dual of `cone`.
pub fn witness_in_cone<T: Real>(w: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> MembershipVerdict<T> {
    let id = ConeId::Dual(cone);
    let positivity = diagonals_nonneg(w, tol);
    let reports = if positivity {
        collect_reports(w, id, tol, eval_witness_inequality)
    } else {
        Vec::new()
    };
    let member = positivity && reports.iter().all(|r| r.satisfied);
    MembershipVerdict {
        cone: id,
        member,
        positivity,
        reports,
    }
}

/// Dispatches on the primal/dual side of `cone`.
pub fn in_cone<T: Real>(x: &XMatrix<T>, cone: ConeId, tol: &Tolerance<T>) -> MembershipVerdict<T> {
    match cone {
        ConeId::Primal(c) => state_in_cone(x, c, tol),
        ConeId::Dual(c) => witness_in_cone(x, c, tol),
    }
}

/// Verdict on the X-part of a general self-adjoint matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralVerdict<T> {
    pub verdict: MembershipVerdict<T>,
    pub x_shaped: bool,
    /// Frobenius norm of the entries outside the X pattern.
    pub off_x_norm: T,
    /// A failure is always conclusive; a pass only when the input is X-shaped.
    pub conclusive: bool,
}

/// Runs the X-criteria on the X-part of `h`. These are necessary conditions
/// for membership of `h` itself.
pub fn necessary_check_general<T: Real>(h: &Hermitian8<T>, cone: ConeId, tol: &Tolerance<T>) -> GeneralVerdict<T> {
    let x = h.x_part();
    let off_x_norm = h.off_x_norm();
    let x_shaped = h.is_x_shaped(tol);
    let mut verdict = in_cone(&x, cone, tol);
    if verdict.member && !x_shaped && !cone.is_dual() {
        // the X-part test cannot see off-X negativity
        verdict.positivity = verdict.positivity && h.is_psd(tol);
        verdict.member = verdict.positivity;
    }
    let conclusive = !verdict.member || x_shaped;
    GeneralVerdict {
        verdict,
        x_shaped,
        off_x_norm,
        conclusive,
    }
}

/// The basic cones whose partial transposes certify membership of `cone`,
/// for the cones decided by positive partial transposes.
pub fn ppt_parties(cone: Cone) -> Option<Vec<Party>> {
    match cone.shape() {
        Shape::Basic(p) => Some(vec![p]),
        Shape::Meet(pair) => {
            let (p, q) = pair.parties();
            Some(vec![p, q])
        }
        Shape::MeetAll => Some(Party::ALL.to_vec()),
        Shape::Join(_) | Shape::JoinAll => None,
    }
}

/// Membership through positivity of the partial transposes.
pub fn ppt_member<T: Real>(x: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> Option<bool> {
    let parties = ppt_parties(cone)?;
    Some(x.is_psd(tol) && parties.iter().all(|&p| x.partial_transpose(p).is_psd(tol)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> XMatrix<f64> {
        XMatrix::real([0., 1., 1., 2.], [0., 1., 1., 2.], [0., 1., 1., 0.]).unwrap()
    }

    #[test]
    fn example_memberships() {
        let tol = Tolerance::default();
        assert!(state_in_cone(&example(), Cone::A, &tol).member);
        let b = state_in_cone(&example(), Cone::B, &tol);
        assert!(!b.member && b.positivity);
        assert_eq!(
            b.first_violation().unwrap().kind,
            IneqKind::S1(Slot::of(1), Slot::of(3))
        );
        for c in [Cone::AbJoin, Cone::BcJoin, Cone::CaJoin, Cone::AbcJoin] {
            assert!(state_in_cone(&example(), c, &tol).member, "{c}");
        }
        assert!(!state_in_cone(&XMatrix::ghz(), Cone::AbcJoin, &tol).member);
    }

    #[test]
    fn witness_memberships() {
        let tol = Tolerance::default();
        let we1 = XMatrix::real([1., 0., 0., 0.], [1., 0., 0., 0.], [0., 0., 0., 1.]).unwrap();
        assert!(witness_in_cone(&we1, Cone::A, &tol).member);
        assert!(!witness_in_cone(&we1, Cone::B, &tol).member);
        let we2 = XMatrix::real([1., 0., 0., 1.], [1., 0., 0., 1.], [0., 1., 1., 0.]).unwrap();
        assert!(witness_in_cone(&we2, Cone::BcJoin, &tol).member);
        assert!(witness_in_cone(&we2, Cone::BcMeet, &tol).member);
        assert!(!witness_in_cone(&we2, Cone::A, &tol).member);
        let neg = XMatrix::real([-1., 0., 0., 0.], [0.; 4], [0.; 4]).unwrap();
        let v = witness_in_cone(&neg, Cone::AbcMeet, &tol);
        assert!(!v.member && !v.positivity);
    }

    #[test]
    fn governing_sets() {
        assert_eq!(governing_inequalities(ConeId::Primal(Cone::AbcMeet)).len(), 6);
        assert_eq!(
            governing_inequalities(ConeId::Primal(Cone::BcJoin)),
            vec![IneqKind::S2(Slot::of(1), Slot::of(4))]
        );
        assert_eq!(
            governing_inequalities(ConeId::Primal(Cone::CaJoin)),
            vec![IneqKind::S2(Slot::of(1), Slot::of(3))]
        );
        assert_eq!(
            governing_inequalities(ConeId::Primal(Cone::AbJoin)),
            vec![IneqKind::S2(Slot::of(1), Slot::of(2))]
        );
        assert_eq!(governing_inequalities(ConeId::Dual(Cone::BcMeet)).len(), 3);
        assert_eq!(governing_inequalities(ConeId::Dual(Cone::AbcJoin)).len(), 6);
    }

    #[test]
    fn general_inputs() {
        let tol = Tolerance::default();
        let g = necessary_check_general(&XMatrix::ghz().embed(), ConeId::Primal(Cone::AbcJoin), &tol);
        assert!(!g.verdict.member && g.conclusive);
        let g = necessary_check_general(&example().embed(), ConeId::Primal(Cone::B), &tol);
        assert!(!g.verdict.member && g.conclusive && g.x_shaped);
    }
}
