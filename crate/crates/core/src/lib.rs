//! Partial separability of three-qubit X-shaped states.
//!
//! An X-shaped matrix `X(a, b, z)` has nonzero entries only on the diagonal
//! and the anti-diagonal of the 8×8 matrix in lexicographic basis order.
//! This crate decides membership of such matrices in the eleven convex cones
//! built from the bipartitions A-BC, B-CA and C-AB (their intersections and
//! convex hulls) and in the eleven dual cones of witnesses, produces
//! separating certificates for non-members, and decomposes members into
//! extreme rays.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below are what most callers want.

pub mod certify;
pub mod classify;
pub mod criteria;
mod error;
pub mod extremals;
pub mod random;
mod scalar;
pub mod xcore;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub use certify::{Certificate, CertificateKind, Decomposition, DictionaryConfig};
pub use classify::{ClassLabel, LatticeProfile};
pub use criteria::{Cone, ConeId, IneqKind, IneqReport, MembershipVerdict};
pub use extremals::{Family, GeneratorParams, Side, Term};
pub use xcore::{Hermitian8, Party, PartyPair, Slot, SystemPerm, Tolerance, XMatrix};

pub type XMatrix64 = XMatrix<f64>;
pub type XMatrix32 = XMatrix<f32>;
pub type Hermitian64 = Hermitian8<f64>;
pub type Hermitian32 = Hermitian8<f32>;
pub type Tolerance64 = Tolerance<f64>;
pub type Tolerance32 = Tolerance<f32>;
pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
pub type Certificate64 = Certificate<f64>;
pub type Decomposition64 = Decomposition<f64>;
pub type IneqReport64 = IneqReport<f64>;
pub type MembershipVerdict64 = MembershipVerdict<f64>;
pub type GeneratorParams64 = GeneratorParams<f64>;
pub type Term64 = Term<f64>;
