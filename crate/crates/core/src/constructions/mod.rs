//! Her₃, the first and second Tits constructions and the maps between them.

pub mod her3;
pub mod involution;
pub mod maps;
pub mod tits;

pub use her3::Her3;
pub use involution::InvolutionAlgebra;
pub use maps::{her3_rescale, mat3_identification, setis_map, split_first_identification, unet_map, MapCertificate};
pub use tits::{etale_admissible_pairs, etale_tits, first_tits, second_tits, FirstTits, SecondTits, TitsDatum};

use crate::cubic_norm::{Cns, QuadraticJordan};
use crate::algebra::StructAlgebra;
use crate::error::Result;
use crate::field::Field;

pub fn aplus<F: Field>(a: &StructAlgebra<F>) -> Result<QuadraticJordan<F>> {
    QuadraticJordan::aplus(a, "A+")
}

pub fn h_b_tau<F: Field>(d: &InvolutionAlgebra<F>) -> Result<Cns<F>> {
    d.h_cns()
}
