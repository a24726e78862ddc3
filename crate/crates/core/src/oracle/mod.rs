//! Exact ground truth for small graphs.

mod brute;
mod eigen;
mod flow;
mod lap2;
mod refine;

pub use brute::{cheeger_brute, CheegerResult, MAX_BRUTE_N};
pub use eigen::{
    directional_difference, spectrum_enumerate, verify_eigenpair, verify_eigenpair_oriented, EigenWitness,
    MAX_SPECTRUM_N,
};
pub use lap2::{combinatorial_spectrum, jacobi_eigen, lap2_second, normalized_spectrum};
pub use refine::refine_connected;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Ratio, Result};

/// A bipartition `(S, S^c)` with its exact Cheeger ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: VertexSet,
    /// `|∂S| / min(vol(S), vol(S^c))`.
    pub ratio: Ratio,
}

impl Cut {
    pub fn new(g: &Graph, side: VertexSet) -> Result<Cut> {
        let ratio = cut_ratio(g, &side)?;
        Ok(Cut { side, ratio })
    }

    /// The same cut seen from the other side.
    pub fn flipped(&self) -> Cut {
        Cut { side: self.side.complement(), ratio: self.ratio }
    }

    /// Side with the smaller volume (ties: the side not containing the
    /// smallest-index vertex of the complement, i.e. the one holding vertex 0).
    pub fn smaller_side(&self, g: &Graph) -> VertexSet {
        let a = g.volume(&self.side);
        let b = g.total_volume() - a;
        if a < b || (a == b && self.side.contains(0)) {
            self.side.clone()
        } else {
            self.side.complement()
        }
    }
}

/// Exact `|∂S| / min(vol(S), vol(S^c))`.
pub fn cut_ratio(g: &Graph, side: &VertexSet) -> Result<Ratio> {
    if side.universe() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: side.universe() });
    }
    let vol = g.volume(side);
    let small = vol.min(g.total_volume() - vol);
    if small == 0 {
        return Err(Error::InvalidParameter("cut side or its complement has zero volume".into()));
    }
    Ok(Ratio::new(g.boundary_size(side) as u64, small as u64))
}
