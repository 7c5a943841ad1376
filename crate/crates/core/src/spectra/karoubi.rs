//! Spaces with a continuous retraction, and the maps between them that
//! absorb the retractions.

use crate::error::{Error, Result};

use super::space::FiniteSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralProximitySpace {
    pub space: FiniteSpace,
    pub retraction: Vec<usize>,
}

impl SpectralProximitySpace {
    /// Requires `retraction` continuous and idempotent.
    pub fn new(space: FiniteSpace, retraction: Vec<usize>) -> Result<Self> {
        let continuous = space.is_continuous(&retraction, &space);
        if !continuous || retraction.iter().any(|&y| retraction[y] != y) {
            return Err(Error::NotARetraction);
        }
        Ok(SpectralProximitySpace { space, retraction })
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let retraction = (0..space.len()).collect();
        SpectralProximitySpace { space, retraction }
    }
}

/// `g : X → X'` is continuous with `f' ∘ g = g = g ∘ f`.
pub fn karoubi_check(x: &SpectralProximitySpace, target: &SpectralProximitySpace, g: &[usize]) -> bool {
    x.space.is_continuous(g, &target.space)
        && g.iter().all(|&y| target.retraction[y] == y)
        && (0..g.len()).all(|p| g[x.retraction[p]] == g[p])
}

/// The subspace on `f[X]`.
pub fn retract_image(x: &SpectralProximitySpace) -> FiniteSpace {
    x.space.subspace(FiniteSpace::image(&x.retraction, x.space.carrier()))
}
