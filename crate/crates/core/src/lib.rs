//! Exact simplicial Lusternik–Schnirelmann category for finite simplicial
//! complexes and simplicial maps.
//!
//! Every numeric answer comes with a certificate (contiguity chains, covers,
//! factorizations, fences) that can be re-checked without running any search.

pub mod category;
pub mod certificate;
pub mod contiguity;
pub mod error;
pub mod fibration_es;
pub mod finite_space;
pub mod io;
pub mod limits;
pub mod oracle;
pub mod scomplex;
pub mod suite;

pub use error::{Error, Result};
pub use limits::{Fault, SearchLimits};
pub use scomplex::{Simplex, SimplicialComplex, Subcomplex, VertexId};
