use serde::{Deserialize, Serialize};

use crate::criteria::{in_cone, state_in_cone, Cone, ConeId, Shape};
use crate::extremals::{combine, family_in_cone, generator, matches_family, Family, GeneratorParams, Side, Term};
use crate::xcore::{Slot, Tolerance, XMatrix};
use crate::{Error, Real, Result};

/// A nonnegative combination of extreme-ray generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition<T> {
    pub terms: Vec<Term<T>>,
    pub cone: ConeId,
    /// `‖Σ terms − x‖ / ‖x‖` in Frobenius norm (absolute when `x = 0`).
    pub residual: T,
}

impl<T: Real> Decomposition<T> {
    pub fn reconstruct(&self) -> Result<XMatrix<T>> {
        combine(&self.terms)
    }
}

/// Reconstruction error of `terms` against `x`, relative to `‖x‖`.
pub fn relative_residual<T: Real>(terms: &[Term<T>], x: &XMatrix<T>) -> Result<T> {
    let diff = (combine(terms)? - *x).norm();
    let n = x.norm();
    Ok(if n > T::zero() { diff / n } else { diff })
}

fn delta_term<T: Real>(slot: Slot, side: Side, weight: T) -> Option<Term<T>> {
    (weight > T::zero()).then(|| Term {
        weight,
        family: Family::Delta(slot, side),
        params: GeneratorParams::default(),
    })
}

/// Splits one block of slots into extreme terms plus diagonal remainders.
fn decompose_block<T: Real>(
    x: &XMatrix<T>,
    block: &[Slot],
    family: Family,
    tol: &Tolerance<T>,
    out: &mut Vec<Term<T>>,
) {
    let m = block.iter().map(|&s| x.modulus(s)).fold(T::zero(), T::max);
    let nonneg = |v: T| v.max(T::zero());
    if m <= tol.eps * x.scale() {
        for &s in block {
            out.extend(delta_term(s, Side::A, nonneg(x.a[s.index()])));
            out.extend(delta_term(s, Side::B, nonneg(x.b[s.index()])));
        }
        return;
    }
    let ratio = |s: Slot| (nonneg(x.a[s.index()]) / nonneg(x.b[s.index()])).sqrt();
    let flips: Vec<Slot> = block.iter().copied().filter(|&s| x.modulus(s) < m).collect();
    let two_m = m + m;
    for mask in 0..(1usize << flips.len()) {
        let mut weight = T::one();
        let mut params = GeneratorParams::default();
        for &s in block {
            params.ratios[s.index()] = Some(ratio(s));
            params.phases[s.index()] = Some(x.phase(s));
        }
        for (bit, &s) in flips.iter().enumerate() {
            let z = x.modulus(s);
            if mask >> bit & 1 == 0 {
                weight *= (m + z) / two_m;
            } else {
                weight *= (m - z) / two_m;
                params.phases[s.index()] = Some(x.phase(s) + T::PI());
            }
        }
        if weight > T::zero() {
            out.push(Term {
                weight: weight * m,
                family,
                params,
            });
        }
    }
    for &s in block {
        let r = ratio(s);
        out.extend(delta_term(s, Side::A, nonneg(x.a[s.index()] - m * r)));
        out.extend(delta_term(s, Side::B, nonneg(x.b[s.index()] - m / r)));
    }
}

/// Exact decomposition of a member of `A`, `B`, `C` or `A^B^C` into its
/// extreme-ray families.
pub fn decompose_constructive<T: Real>(x: &XMatrix<T>, cone: Cone, tol: &Tolerance<T>) -> Result<Decomposition<T>> {
    let blocks: Vec<(Vec<Slot>, Family)> = match cone.shape() {
        Shape::Basic(p) => p
            .partition()
            .into_iter()
            .map(|(i, j)| (vec![i, j], Family::E1(p, i, j)))
            .collect(),
        Shape::MeetAll => vec![(Slot::ALL.to_vec(), Family::E3)],
        _ => {
            return Err(Error::Unsupported(format!(
                "constructive decomposition is available for A, B, C and A^B^C, not {cone}"
            )))
        }
    };
    if !state_in_cone(x, cone, tol).member {
        return Err(Error::NotMember(format!("state is not in {cone}")));
    }
    let mut terms = Vec::new();
    for (block, family) in &blocks {
        decompose_block(x, block, *family, tol, &mut terms);
    }
    let residual = relative_residual(&terms, x)?;
    Ok(Decomposition {
        terms,
        cone: ConeId::Primal(cone),
        residual,
    })
}

/// Checks weights, family patterns, per-term membership and reconstruction
/// of `x`.
pub fn verify_decomposition<T: Real>(d: &Decomposition<T>, x: &XMatrix<T>, tol: &Tolerance<T>) -> bool {
    let terms_ok = d.terms.iter().all(|t| {
        t.weight.is_finite()
            && t.weight >= T::zero()
            && family_in_cone(t.family, d.cone)
            && match generator(t.family, &t.params) {
                Ok(g) => matches_family(&g, t.family, tol) && in_cone(&g, d.cone, tol).member,
                Err(_) => false,
            }
    });
    terms_ok && matches!(relative_residual(&d.terms, x), Ok(r) if r <= tol.eps)
}
