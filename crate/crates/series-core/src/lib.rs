//! Exact truncated power-series kernel.
//!
//! Everything downstream — hypersurface normalization, jet calculus, the
//! parametrization pipeline — runs on the rings defined here:
//!
//! * [`coeff::GRat`], Gaussian rationals, the exact numeric ground field;
//! * [`dual::Dual`], first-order perturbations of Gaussian rationals with
//!   named real slots, for exact linearization;
//! * [`symfrac::SymFrac`], reduced polynomial fractions in declared
//!   unknowns, for fully symbolic runs;
//! * [`series::Series`], multivariate power series truncated at a total
//!   degree, generic over the coefficient ring via [`coeff::Coeff`].
//!
//! On top of the rings sit the kernel algorithms: exact linear algebra
//! ([`matrix`]), the formal implicit function theorem ([`implicit`]),
//! division against a distinguished-variable-regular divisor
//! ([`weierstrass`]), and deterministic JSON encodings ([`json`]).
//!
//! All arithmetic is exact: no floating point appears anywhere, and a
//! zero result is a proof of vanishing at the stated truncation.

pub mod coeff;
pub mod dual;
pub mod error;
pub mod implicit;
pub mod json;
pub mod matrix;
pub mod multi_index;
pub mod poly;
pub mod series;
pub mod symfrac;
pub mod weierstrass;

pub use coeff::{Coeff, GRat};
pub use dual::Dual;
pub use error::{Result, SeriesError};
pub use implicit::solve_implicit;
pub use matrix::{invert_series_matrix, rational_rank, Mat};
pub use multi_index::MultiIndex;
pub use poly::{Mono, Poly};
pub use series::{Series, SeriesTuple, VarSet, MAX_DEGREE};
pub use symfrac::{SymFrac, SymRegistry};
pub use weierstrass::{axis_order, regularize, weierstrass_divide, MeromorphicElement, RegularChange};
