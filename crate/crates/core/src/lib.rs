//! Exact computations with graded matrix factorizations of a homogeneous
//! potential, the graded singularity category of the hypersurface it defines,
//! and exceptional collections in the stable category.

pub mod corpus;
pub mod error;
pub mod field;
pub mod free;
pub mod functors;
pub mod groebner;
pub mod linalg;
pub mod mf;
pub mod modules;
pub mod parse;
pub mod poly;
pub mod sod;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use free::{GradedFreeModule, GradedMatrix};
pub use parse::parse_polynomial;
pub use poly::{GradedRing, Monomial, Polynomial};

/// Order-preserving parallel map on the global thread pool.
pub(crate) fn par_map<T: Send, R: Send>(items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}
