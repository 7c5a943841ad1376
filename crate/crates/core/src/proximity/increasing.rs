//! The increasing presentation `(Ridl(L), ≪)` of a join-strong proximity
//! lattice, with the j-morphisms relating it to the original.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::Relation;

use super::morphism::ProximityMorphism;
use super::round::{round_ideal_lattice, RoundIdealLattice};
use super::ProximityLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IncreasingReport {
    pub phi_is_j: bool,
    pub psi_is_j: bool,
    /// `Φ ∘ Ψ = R⁻¹`
    pub phi_psi_is_identity: bool,
    /// `Ψ ∘ Φ = ≪⁻¹`
    pub psi_phi_is_identity: bool,
    pub increasing: bool,
    pub join_strong: bool,
}

impl IncreasingReport {
    pub fn holds(&self) -> bool {
        self.phi_is_j
            && self.psi_is_j
            && self.phi_psi_is_identity
            && self.psi_phi_is_identity
            && self.increasing
            && self.join_strong
    }
}

#[derive(Clone, Debug)]
pub struct IncreasingPresentation {
    pub ideals: RoundIdealLattice,
    /// `(Ridl(L), ≪)`
    pub presented: ProximityLattice,
    /// `a Φ I` iff `I ≪ R⁻¹[a]`
    pub phi: ProximityMorphism,
    /// `I Ψ a` iff `a ∈ I`
    pub psi: ProximityMorphism,
    pub report: IncreasingReport,
}

pub fn increasing_presentation(p: &ProximityLattice) -> Result<IncreasingPresentation> {
    p.require_join_strong()?;
    let ideals = round_ideal_lattice(p)?;
    let presented = ProximityLattice::new(ideals.lattice.clone(), ideals.way_below.clone())
        .map_err(|e| Error::InvariantViolated(format!("(Ridl, ≪) is not a proximity lattice: {e}")))?;
    let (n, k) = (p.len(), ideals.len());
    let phi = Relation::from_fn(n, k, |a, i| ideals.way_below.contains(i, ideals.ideal_of_element[a]));
    let psi = Relation::from_fn(k, n, |i, a| ideals.ideals[i].contains(a));
    let phi_psi_is_identity = phi.compose(&psi)? == p.relation().converse();
    let psi_phi_is_identity = psi.compose(&phi)? == ideals.way_below.converse();
    let phi = ProximityMorphism::classify(p.clone(), presented.clone(), phi)?;
    let psi = ProximityMorphism::classify(presented.clone(), p.clone(), psi)?;
    let report = IncreasingReport {
        phi_is_j: phi.class.j,
        psi_is_j: psi.class.j,
        phi_psi_is_identity,
        psi_phi_is_identity,
        increasing: presented.flags().increasing,
        join_strong: presented.is_join_strong(),
    };
    Ok(IncreasingPresentation {
        ideals,
        presented,
        phi,
        psi,
        report,
    })
}
