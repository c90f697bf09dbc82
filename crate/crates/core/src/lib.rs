//! Cubic norm structures, quadratic Jordan algebras of degree 3, the Tits
//! constructions and the Skolem–Noether machinery built on them.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::wrong_self_convention)]

pub mod algebra;
pub mod assoc;
pub mod composition;
pub mod constructions;
pub mod cubic_norm;
pub mod error;
pub mod etale;
pub mod expr;
pub mod field;
pub mod identity;
pub mod linalg;
pub mod poly;
pub mod recipe;
pub mod report;
pub mod skolem_noether;
pub mod structure_group;

pub use error::{Error, Result};
