//! The algebra `O(M_q(n))`: words, normal ordering, and special elements.

mod gen;
mod mono;
mod ncpoly;
pub mod normal;
mod special;

pub use gen::{Gen, Word, LETTERS, MAX_N};
pub use mono::{CountingMatrix, Mono};
pub use ncpoly::{Coeff, NCPoly};
pub use normal::normal_form;
pub use special::{antipode, length_of, permutations, phi_automorphism, quantum_determinant};

/// Normal form of a word given as text (see [`Word::parse_auto`]).
pub fn reduce_str(s: &str) -> crate::Result<NCPoly> {
    Ok(normal_form(&Word::parse_auto(s)?))
}
