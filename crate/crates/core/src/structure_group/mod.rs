//! Structure-group elements of Her₃(C) and outer automorphisms of special
//! unitary groups.

pub mod operators;
pub mod outer;

pub use operators::{norm_one_triples, sym3_operator, uw_operator, GroupElementCertificate};
pub use outer::{generating_set, outer_from_antiauto, AntiAutomorphism, OuterReport, OuterVerdict, UnitaryDatum};
