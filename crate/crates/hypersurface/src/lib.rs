//! Real-analytic hypersurfaces in complex space, presented exactly.
//!
//! This crate turns a textual defining equation (`Im w = …` / `rho = …`)
//! into validated exact data: the complexified defining polynomial, the
//! normalized graph `w = Q(z, χ, τ)` at any base point on the surface,
//! and the finite-nondegeneracy invariant `k₀` with its witness minor.
//! Everything is computed over Gaussian rationals — a passing identity
//! check is a proof at the stated truncation degree, not an estimate.

pub mod dsl;
pub mod error;
pub mod nondegen;
pub mod normal;
pub mod surface;
pub mod universe;

pub use error::{Result, SurfaceError};
pub use nondegen::{nondegeneracy, Nondegeneracy, NondegeneracyReport};
pub use normal::{normal_coordinates, NormalForm};
pub use surface::DefiningFunction;
pub use universe::{
    full, full_universe, graph, graph_universe, map, map_universe, restricted,
    restricted_universe,
};
