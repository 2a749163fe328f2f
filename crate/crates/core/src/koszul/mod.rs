//! Integer cohomology of moment-angle complexes.
//!
//! Two independent pipelines: the Hochster sum over full subcomplexes
//! ([`hochster_cohomology`]), and the reduced Koszul model
//! `Lambda[u_1..u_m] (x) Z[K] / (v_i^2, u_i v_i)` with `d u_i = v_i`
//! ([`KoszulModel`]), which also carries products and Massey products.

mod cochain;
mod hochster;
mod massey;
mod model;

pub use cochain::{Cochain, Monomial};
pub use hochster::{
    assemble_report, hochster_cohomology, poincare_duality_check, subcomplex_tables, BigradedEntry, CohomologyReport,
    Contribution, DegreeGroup, GeneratorEntry,
};
pub use massey::{massey_triple, MasseyOutcome, MasseyResult, ProductPair};
pub use model::{
    cross_check_hochster_koszul, ClassCoordinates, CohomologyClass, CrossCheckReport, KoszulBlock, KoszulModel,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("cannot parse cochain {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("index {index} is outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("cochain is not homogeneous")]
    NotHomogeneous,
    #[error("cochain is not a cocycle")]
    NotCocycle,
}
