//! Isomorphism and isotopy builders from (φ, ψ, y) data, norm classes,
//! witness searches and the two-generator span test.

pub mod builders;
pub mod embedding;
pub mod exhaustive;
pub mod norms;
pub mod spliet;

pub use builders::{
    etale_isotopies, imcri_build, imcri_build_in, is_etale_isotopy, iscri_build, iscri_build_in, iscri_target, EtaleContext,
};
pub use embedding::{initial_embedding, norm_class_of_twist, weak_equivalence_check, Embedding, EmbeddingKind, Equivalence};
pub use norms::{
    etfim_check, extri_sides, norm_membership, nornor_witness, EtfimVerdict, NormClass, NormDecision, NormTable,
    ENUMERATION_CAP,
};
pub use spliet::{
    generated_subalgebra, is_etale_subalgebra, random_generating_pair, spliet_alpha, spliet_delta, SpanReport,
    SplietResult,
};
