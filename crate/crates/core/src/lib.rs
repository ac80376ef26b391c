//! Exact arithmetic for the geometry of tuples of composable matrices with
//! a prescribed product rank: orbit combinatorics, the codimension `C` and
//! the number `theta` of top-dimensional irreducible components by four
//! independent routes (orbit enumeration, q-series, quadratic integer
//! programming with its closest-vector solution, and graded kernels of a
//! substitution map), plus the real log-canonical threshold of deep linear
//! networks.
//!
//! All computations are exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod avoiding;
pub mod components;
pub mod dim;
pub mod dln;
pub mod error;
pub mod exact;
pub mod kostant;
pub mod lace;
pub mod qip;
pub mod qseries;
pub mod selfcheck;

pub use components::{
    enumerate_components, top_components_bruteforce, ComponentReport, Method, OrbitDescriptor,
};
pub use dim::DimensionVector;
pub use error::{Error, Result};
pub use exact::{MatrixTuple, RatMatrix};
pub use kostant::{
    count_kostant_partitions, enumerate_kostant_partitions, visit_kostant_partitions,
    KostantPartition, RankPattern,
};
pub use lace::{horizontal_lace_diagram, lace_diagram, lace_representative, LaceDiagram};
pub use qip::{
    closest_simplex_points, codim_closed_form, relevant_count, theta_closed_form,
    ClosestPointResult, QipInstance, QipSolution,
};
pub use qseries::{
    extract_c_theta, pochhammer_inverse, pochhammer_multi, pochhammer_product,
    q_series_bruteforce, q_series_closed, QSeries,
};

/// Default cap for enumerations and basis sizes; CLI flags and the
/// `QUIVER_CODIM_CAP` environment variable override it.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Default basis-size cap for graded kernel computations.
pub const DEFAULT_BASIS_CAP: u64 = 20_000;
