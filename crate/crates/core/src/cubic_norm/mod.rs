//! Cubic norm structures, their quadratic Jordan algebras, isotopes and
//! isotopy certificates.

pub mod certificate;
pub mod cns;
pub mod jordan;

pub use certificate::{certify_map, trace_adjoint, CertKind, IsotopyCertificate, StructuralIdentity};
pub use cns::{AxiomReport, Cns};
pub use jordan::QuadraticJordan;
