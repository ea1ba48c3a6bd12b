use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::criteria::{state_in_cone, witness_in_cone, Cone, ConeId, IneqKind, IneqReport, Shape};
use crate::extremals::{Family, Side};
use crate::xcore::{Party, Slot, Tolerance, XMatrix};
use crate::{Error, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// A dual-cone element pairing negatively with a state.
    Witness,
    /// A primal-cone element pairing negatively with a witness.
    Counterstate,
}

/// Separating certificate for a non-member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate<T> {
    pub kind: CertificateKind,
    /// The cone the certificate object belongs to.
    pub cone: ConeId,
    pub object: XMatrix<T>,
    /// `⟨witness, state⟩`, strictly negative.
    pub pairing: T,
    /// The condition whose failure the certificate exhibits; `None` when the
    /// input failed positivity.
    pub violated: Option<IneqKind>,
    pub family: Family,
}

impl<T: Real> Certificate<T> {
    /// Re-checks both halves: the object lies in its cone and the pairing
    /// with `input` is below `-eps`.
    pub fn verify(&self, input: &XMatrix<T>, tol: &Tolerance<T>) -> bool {
        let pairing = match self.kind {
            CertificateKind::Witness => self.object.pair(input),
            CertificateKind::Counterstate => input.pair(&self.object),
        };
        let member = match self.cone {
            ConeId::Primal(c) => {
                self.kind == CertificateKind::Counterstate && state_in_cone(&self.object, c, tol).member
            }
            ConeId::Dual(c) => self.kind == CertificateKind::Witness && witness_in_cone(&self.object, c, tol).member,
        };
        member && pairing < -tol.eps
    }
}

/// Ratio `r > 0` minimising `r p + q / r` for `p, q ≥ 0`. When one of them
/// vanishes the infimum is not attained and `r` is chosen so that the
/// objective stays within `budget` of it.
pub(crate) fn balanced_ratio<T: Real>(p: T, q: T, budget: T) -> T {
    let p = p.max(T::zero());
    let q = q.max(T::zero());
    let budget = if budget > T::zero() { budget } else { T::one() };
    match (p > T::zero(), q > T::zero()) {
        (true, true) => (q / p).sqrt(),
        (false, false) => T::one(),
        (false, true) => q / budget,
        (true, false) => budget / p,
    }
}

/// `-e^{-i arg v}`, with `arg 0 = 0`.
fn opposing<T: Real>(v: Complex<T>) -> Complex<T> {
    let theta = if v.re == T::zero() && v.im == T::zero() {
        T::zero()
    } else {
        v.arg()
    };
    -Complex::from_polar(T::one(), -theta)
}

/// Puts a diagonal pair `(r, 1/r)` on each of `ratio_slots`, balanced
/// against the diagonal of `target`, and a unit entry opposing `target` on
/// each of `phase_slots`.
fn opposing_element<T: Real>(target: &XMatrix<T>, ratio_slots: &[Slot], phase_slots: &[Slot], budget: T) -> XMatrix<T> {
    let mut out = XMatrix::zero();
    for &s in ratio_slots {
        let r = balanced_ratio(target.a[s.index()], target.b[s.index()], budget);
        out.a[s.index()] = r;
        out.b[s.index()] = r.recip();
    }
    for &s in phase_slots {
        out.z[s.index()] = opposing(target.z[s.index()]);
    }
    out
}

fn most_violated<T: Real>(reports: &[IneqReport<T>]) -> Option<&IneqReport<T>> {
    reports.iter().filter(|r| !r.satisfied).min_by(|x, y| {
        x.relative_slack()
            .partial_cmp(&y.relative_slack())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

fn positivity_witness<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> Option<(XMatrix<T>, Family)> {
    let scale = x.scale();
    let mut candidates: Vec<(T, XMatrix<T>, Family)> = Vec::new();
    for s in Slot::ALL {
        let i = s.index();
        for (value, side) in [(x.a[i], Side::A), (x.b[i], Side::B)] {
            if !tol.nonneg(value, scale) {
                let mut w = XMatrix::zero();
                match side {
                    Side::A => w.a[i] = T::one(),
                    Side::B => w.b[i] = T::one(),
                }
                candidates.push((value, w, Family::Delta(s, side)));
            }
        }
    }
    if candidates.is_empty() {
        for s in Slot::ALL {
            let i = s.index();
            let gap = x.a[i].max(T::zero()) * x.b[i].max(T::zero()) - x.z[i].norm_sqr();
            if !tol.nonneg(gap, scale * scale) {
                let budget = (x.modulus(s) - x.root(s)) / T::lit(4.0);
                let w = opposing_element(x, &[s], &[s], budget);
                candidates.push((w.pair(x), w, Family::WDelta(s)));
            }
        }
    }
    candidates
        .into_iter()
        .min_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(_, w, f)| (w, f))
}

fn state_violation_witness<T: Real>(
    x: &XMatrix<T>,
    cone: Cone,
    report: &IneqReport<T>,
) -> Option<(XMatrix<T>, Family)> {
    let budget = (report.rhs - report.lhs) / T::lit(4.0);
    match report.kind {
        IneqKind::S1(i, j) => {
            let k = if x.root(i) <= x.root(j) { i } else { j };
            let l = if x.modulus(i) >= x.modulus(j) { i } else { j };
            let w = opposing_element(x, &[k], &[l], budget);
            let family = if k == l {
                Family::WDelta(k)
            } else {
                Family::We1(Party::owning(k, l)?, k, l)
            };
            Some((w, family))
        }
        IneqKind::S2(i, j) => {
            let pair = match cone.shape() {
                Shape::Join(pair) => pair,
                _ => return None,
            };
            let (k, l) = i.complement(j);
            let candidates = [((i, j), (k, l)), ((k, l), (i, j))].map(|(d, m)| {
                let w = opposing_element(x, &[d.0, d.1], &[m.0, m.1], budget);
                (w.pair(x), w, Family::We2(pair, d.0, d.1))
            });
            let [c1, c2] = candidates;
            let (p, w, f) = if c1.0 <= c2.0 { c1 } else { c2 };
            if p < T::zero() {
                return Some((w, f));
            }
            let s = Slot::ALL
                .into_iter()
                .min_by(|&u, &v| {
                    (x.root(u) - x.modulus(u))
                        .partial_cmp(&(x.root(v) - x.modulus(v)))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("four slots");
            Some((opposing_element(x, &[s], &[s], budget), Family::WDelta(s)))
        }
        IneqKind::S3(i) => Some((opposing_element(x, &i.others(), &[i], budget), Family::We3(i))),
        _ => None,
    }
}

/// A witness in the dual of `cone` pairing negatively with the non-member
/// state `x`.
pub fn find_state_witness<T: Real>(x: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> Result<Certificate<T>> {
    let verdict = state_in_cone(x, cone, tol);
    if verdict.member {
        return Err(Error::IsMember(format!("state lies in {cone}")));
    }
    let (object, family, violated) = if !verdict.positivity {
        let (w, f) = positivity_witness(x, tol)
            .ok_or_else(|| Error::CertificateFailed("no positivity violation found".into()))?;
        (w, f, None)
    } else {
        let report = most_violated(&verdict.reports)
            .ok_or_else(|| Error::CertificateFailed("non-member without a failing inequality".into()))?;
        let (w, f) = state_violation_witness(x, cone, report)
            .ok_or_else(|| Error::CertificateFailed(format!("no witness construction for {}", report.kind)))?;
        (w, f, Some(report.kind))
    };
    let cert = Certificate {
        kind: CertificateKind::Witness,
        cone: ConeId::Dual(cone),
        pairing: object.pair(x),
        object,
        violated,
        family,
    };
    if cert.verify(x, tol) {
        Ok(cert)
    } else {
        Err(Error::CertificateFailed(format!(
            "constructed {} witness did not verify (pairing {})",
            cert.family, cert.pairing
        )))
    }
}

fn witness_violation_state<T: Real>(
    w: &XMatrix<T>,
    cone: Cone,
    report: &IneqReport<T>,
) -> Option<(XMatrix<T>, Family)> {
    let budget = (report.rhs - report.lhs).abs() / T::lit(4.0);
    match report.kind {
        IneqKind::W1(i, j) => Some((
            opposing_element(w, &[i, j], &[i, j], budget),
            Family::E1(Party::owning(i, j)?, i, j),
        )),
        IneqKind::W3 => Some((opposing_element(w, &Slot::ALL, &Slot::ALL, budget), Family::E3)),
        IneqKind::W2(i, j) => {
            let pair = match cone.shape() {
                Shape::Meet(pair) => pair,
                _ => return None,
            };
            let [first, second] = report.parts?;
            let (i, j) = if first <= second { (i, j) } else { (j, i) };
            let (k, l) = i.complement(j);
            let budget = (if first <= second { first } else { second }).abs() / T::lit(4.0);
            Some((opposing_element(w, &[i, k, l], &[i], budget), Family::E2(pair, i, j)))
        }
        _ => None,
    }
}

/// A state in `cone` pairing negatively with `w`, which is not in the dual
/// of `cone`.
pub fn find_witness_counterstate<T: Real>(w: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> Result<Certificate<T>> {
    let verdict = witness_in_cone(w, cone, tol);
    if verdict.member {
        return Err(Error::IsMember(format!("witness lies in {}", cone.dual_name())));
    }
    let (object, family, violated) = if !verdict.positivity {
        let (_, x, f) = Slot::ALL
            .into_iter()
            .flat_map(|s| {
                let i = s.index();
                [
                    (
                        w.a[i],
                        XMatrix::single(s, T::one(), T::zero(), Complex::new(T::zero(), T::zero())),
                        Family::Delta(s, Side::A),
                    ),
                    (
                        w.b[i],
                        XMatrix::single(s, T::zero(), T::one(), Complex::new(T::zero(), T::zero())),
                        Family::Delta(s, Side::B),
                    ),
                ]
            })
            .min_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal))
            .expect("eight diagonal entries");
        (x, f, None)
    } else {
        let report = most_violated(&verdict.reports)
            .ok_or_else(|| Error::CertificateFailed("non-member without a failing inequality".into()))?;
        let (x, f) = witness_violation_state(w, cone, report)
            .ok_or_else(|| Error::CertificateFailed(format!("no counterstate construction for {}", report.kind)))?;
        (x, f, Some(report.kind))
    };
    let cert = Certificate {
        kind: CertificateKind::Counterstate,
        cone: ConeId::Primal(cone),
        pairing: w.pair(&object),
        object,
        violated,
        family,
    };
    if cert.verify(w, tol) {
        Ok(cert)
    } else {
        Err(Error::CertificateFailed(format!(
            "constructed {} counterstate did not verify (pairing {})",
            cert.family, cert.pairing
        )))
    }
}
