//! Spectral and combinatorial expansion of Eulerian digraphs.
//!
//! Singular values are computed through the symmetric lift, combinatorial
//! quantities by exhaustive enumeration in exact rational arithmetic, and
//! [`harness`] checks the inequalities relating the two on graph corpora.

pub mod certificates;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod report;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{Digraph, LiftSet, Side, VertexSet, Weight};
