//! Powers of t-path ideals of line graphs.
//!
//! The crate builds `I_t(L_n)^s`, evaluates closed-form invariants for it
//! (regularity, Betti numbers, projective dimension, linearity criteria) and
//! checks each of them against a brute-force homological oracle.

pub mod error;
pub mod formulas;
pub mod linearity;
pub mod monomial;
pub mod oracle;
pub mod path_ideal;
pub mod verify;

pub use error::{Error, Result};
pub use monomial::{minimalize, Monomial, MonomialIdeal, Support};
pub use oracle::{BettiTable, FieldSpec};
pub use path_ideal::{Composition, PathIdealSpec};

/// Size caps that turn runaway computations into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Generators (or candidate products) of a single ideal.
    pub max_generators: usize,
    /// Distinct multidegrees in an lcm lattice.
    pub max_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: 100_000,
            max_lattice: 200_000,
        }
    }
}
