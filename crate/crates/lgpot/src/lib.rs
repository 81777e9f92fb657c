// SPDX-License-Identifier: MIT
//! Exact construction of canonical Landau-Ginzburg superpotentials for
//! cominuscule homogeneous spaces `G/P_k`, together with machine checks of
//! their torus expansions.
//!
//! The pipeline runs from Dynkin data to a rational function in Plücker
//! coordinates:
//!
//! 1. [`root_data`] supplies Cartan matrices, highest roots, Dynkin involutions
//!    and the index sequence `i_1, i_2, ...` attached to each node.
//! 2. [`poset`] builds the minuscule poset as the heap of the minimal coset
//!    representative `w_P` and works with its order ideals.
//! 3. [`moves`] closes an initial tuple of ideals under box moves and forms the
//!    alternating denominator polynomial.
//! 4. [`potential`] applies derivations and assembles the superpotential.
//! 5. [`toric`] expands everything on the torus with exact integers.
//! 6. [`weyl_oracle`] recomputes the expected torus exponents directly from the
//!    weight lattice.
//!
//! ```
//! use lgpot::{CominusculeDatum, Family, Model};
//!
//! let datum = CominusculeDatum::new(Family::C, 3, 3).unwrap();
//! let model = Model::build(datum).unwrap();
//! assert_eq!(model.superpotential.terms.len(), 4);
//! ```

#[cfg(feature = "cli")]
pub mod cli;
pub mod golden;
pub mod moves;
pub mod poset;
pub mod potential;
pub mod render;
pub mod root_data;
pub mod toric;
pub mod weyl_oracle;

mod model;

pub use model::Model;
pub use poset::{MinusculePoset, OrderIdeal};
pub use potential::{PluckerPolynomial, Superpotential};
pub use root_data::{CominusculeDatum, Family};
pub use toric::LaurentPolynomial;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("index {index} is not admissible for {datum}")]
    InvalidIndex { index: usize, datum: CominusculeDatum },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("golden corpus: {0}")]
    Golden(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidDatum(_) | Error::InvalidIndex { .. } => 2,
            Error::Internal(_) | Error::Golden(_) => 1,
        }
    }
}
