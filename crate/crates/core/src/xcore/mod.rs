//! X-shaped matrices and general 8×8 self-adjoint matrices.
//!
//! Basis order is lexicographic over `C² ⊗ C² ⊗ C²` (party A most
//! significant). In 1-based indices, slot `i` of an X-matrix holds `a_i` at
//! `(i, i)`, `b_i` at `(9-i, 9-i)`, `z_i` at `(i, 9-i)` and `conj(z_i)` at
//! `(9-i, i)`.

mod hermitian;
mod jacobi;
mod labels;
mod xmatrix;

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

pub use hermitian::Hermitian8;
pub use jacobi::symmetric_eigenvalues;
pub use labels::{Party, PartyPair, Slot, SystemPerm};
pub use xmatrix::XMatrix;

/// Absolute comparison threshold, applied relative to `1 + magnitude` of the
/// quantities being compared.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T> {
    pub eps: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(eps: T) -> Result<Self> {
        if !eps.is_finite() || eps < T::zero() {
            return Err(Error::InvalidInput(format!(
                "tolerance must be finite and >= 0, got {eps}"
            )));
        }
        Ok(Tolerance { eps })
    }

    /// `value >= -eps * scale`.
    #[inline]
    pub fn nonneg(&self, value: T, scale: T) -> bool {
        value >= -self.eps * scale
    }

    #[inline]
    pub fn close(&self, x: T, y: T, scale: T) -> bool {
        (x - y).abs() <= self.eps * scale
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            eps: T::lit(T::DEFAULT_EPS),
        }
    }
}

pub fn make_x<T: Real>(a: [T; 4], b: [T; 4], z: [crate::Complex<T>; 4]) -> Result<XMatrix<T>> {
    XMatrix::new(a, b, z)
}

pub fn embed<T: Real>(x: &XMatrix<T>) -> Hermitian8<T> {
    x.embed()
}

pub fn x_part<T: Real>(h: &Hermitian8<T>) -> XMatrix<T> {
    h.x_part()
}

/// `⟨w, r⟩ = Σ (s_i a_i + t_i b_i + 2 Re(u_i z_i))`.
pub fn pair_x<T: Real>(w: &XMatrix<T>, r: &XMatrix<T>) -> T {
    w.pair(r)
}

/// `⟨p, q⟩ = Tr(q pᵗ)`.
pub fn pair_full<T: Real>(p: &Hermitian8<T>, q: &Hermitian8<T>) -> T {
    p.pair(q)
}

pub fn partial_transpose<T: Real>(x: &XMatrix<T>, party: Party) -> XMatrix<T> {
    x.partial_transpose(party)
}

pub fn is_psd_x<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> bool {
    x.is_psd(tol)
}

pub fn is_psd_full<T: Real>(h: &Hermitian8<T>, tol: &Tolerance<T>) -> bool {
    h.is_psd(tol)
}

pub fn is_ghz_diagonal<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> bool {
    x.is_ghz_diagonal(tol)
}
