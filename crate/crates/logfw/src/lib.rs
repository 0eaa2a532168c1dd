//! logfw: modules of logarithmic Frobenius-Witt differentials for prelog
//! rings built from affine monoids and finitely presented algebras, with two
//! independent log-regularity checks that are cross-validated on a fixture
//! corpus.
//!
//! The pipeline for one instance is:
//!
//! 1. parse and validate the prelog ring (R, Q, alpha),
//! 2. sharp-reduce the monoid,
//! 3. decide log regularity by the definition (regular quotient plus the
//!    dimension identity), and
//! 4. decide it again from the rank of the presented module of log
//!    FW-differentials at the closed point,
//!
//! then compare the two verdicts.

pub mod arith;
pub mod corpus;
pub mod error;
pub mod fwdiff;
pub mod groebner;
pub mod instance;
pub mod intlin;
pub mod linalg;
pub mod mixed;
pub mod monoid;
pub mod parser;
pub mod ring;
pub mod poly;
pub mod prelog;
pub mod report;

pub use error::{Error, Result};

/// Budgets for the potentially explosive searches. All defaults are sized
/// for desk-scale instances; overruns surface as explicit errors rather than
/// long hangs.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub groebner_pairs: usize,
    pub membership_nodes: usize,
    pub hilbert_points: usize,
    pub oracle_max_ring: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            groebner_pairs: 20_000,
            membership_nodes: 200_000,
            hilbert_points: 500_000,
            oracle_max_ring: 4096,
        }
    }
}
