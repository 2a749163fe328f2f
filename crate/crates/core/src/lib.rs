//! Toric Kempf-Ness sets (moment-angle complexes) from simplicial fans and
//! simple polytopes: validation, quadric presentations, and integer
//! cohomology with products and Massey products, all in exact arithmetic.

pub mod fan;
pub mod fixtures;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod parallel;
pub mod polytope;
pub mod simplicial;
pub mod subset;

pub use fan::{validate_fan, Fan, FanError};
pub use koszul::{
    hochster_cohomology, massey_triple, poincare_duality_check, Cochain, CohomologyClass, CohomologyReport,
    KoszulError, KoszulModel, Monomial,
};
pub use linalg::{AbelianGroup, IntMatrix, RatMatrix};
pub use polytope::{HPolytope, PolytopeError, QuadricSystem};
pub use simplicial::{CohomologyTable, ComplexError, SimplicialComplex};
pub use subset::VertexSet;
