//! Cheeger cuts of undirected, unweighted graphs through the graph 1-Laplacian.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] – the immutable [`Graph`], benchmark families and edge-list I/O.
//! * [`functional`] – total variation `I(x)`, the degree-weighted ℓ¹ norm, the
//!   Rayleigh-type quotient `F`, the weighted median and the feasible set π.
//! * [`cells`] – sign cells of the ℓ¹ sphere and their enumeration.
//! * [`oracle`] – exact ground truth for small graphs: brute-force Cheeger
//!   constant, eigenpair verification by circulation feasibility, the full
//!   1-Laplacian spectrum and the 2-Laplacian baseline.
//! * [`solvers`] – the convex inner problems (total-variation prox, the
//!   unit-ball problem and the cell LP).
//! * [`methods`] – the outer iterations IP, SD, CD1 and CD2.
//! * [`bench`] – seeded experiment runner, summary tables and CSV records.

pub mod bench;
pub mod cells;
mod error;
pub mod functional;
pub mod graph;
pub mod methods;
pub mod oracle;
mod ratio;
pub mod solvers;

pub use cells::CellSign;
pub use error::{Error, Result};
pub use graph::{Family, Graph, VertexSet};
pub use methods::{Method, MethodOptions, RunTrace, Termination};
pub use oracle::Cut;
pub use ratio::{Ratio, Rational};
pub use solvers::SolverOptions;
