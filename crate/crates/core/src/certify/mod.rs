//! Certificates for non-members and extreme-ray decompositions for members.

mod certificate;
mod decompose;
mod dictionary;
mod fuzz;
mod nnls;

pub use certificate::{find_state_witness, find_witness_counterstate, Certificate, CertificateKind};
pub use decompose::{decompose_constructive, relative_residual, verify_decomposition, Decomposition};
pub use dictionary::{decompose_dictionary, DictionaryConfig};
pub use fuzz::{duality_fuzz, DualityStat};
