//! The canonical extension read off the spectrum, and the spectral case.

use crate::bits::Bits;
use crate::canext::{check_uniqueness, pi_extension, CanonicalExtension, ExtensionKind, ExtensionReport, Polarity};
use crate::error::Result;
use crate::lattice::{find_isomorphism, FiniteLattice, LatticeMap};
use crate::proximity::{
    functor_f, increasing_presentation, round_subsets, ProximityLattice, ProximityMorphism, RoundKind,
};
use crate::relation::Relation;

use super::spectrum::{spectrum, SpectrumResult};

/// The saturated sets of the spectrum as a π-extension, `d ↦ U_d`.
#[derive(Clone, Debug)]
pub struct DualExtension {
    pub spectrum: SpectrumResult,
    /// Saturated sets; `extension.sets` holds them as point sets.
    pub extension: CanonicalExtension,
    pub report: ExtensionReport,
    /// `φ` from the polarity π-extension onto the saturated sets with
    /// `φ ∘ h = U_-`, when both are π-extensions.
    pub isomorphism: Option<LatticeMap>,
}

impl DualExtension {
    pub fn holds(&self) -> bool {
        self.report.is_pi() && self.isomorphism.is_some()
    }
}

pub fn canext_via_duality(p: &ProximityLattice) -> Result<DualExtension> {
    let spec = spectrum(p)?;
    let (lattice, sets) = spec.space.saturated_lattice()?;
    let index = |u: Bits| sets.iter().position(|&s| s == u).expect("opens are saturated");
    let embed: Vec<usize> = spec.basic_open.iter().map(|&u| index(u)).collect();
    let polarity = Polarity::of_proximity(p);
    let f = round_subsets(p, RoundKind::Filter)
        .iter()
        .map(|s| lattice.meet_all(s.members.iter().map(|a| embed[a])))
        .collect();
    let g = round_subsets(p, RoundKind::Ideal)
        .iter()
        .map(|s| lattice.join_all(s.members.iter().map(|a| embed[a])))
        .collect();
    let extension = CanonicalExtension {
        kind: ExtensionKind::Pi,
        source: p.clone(),
        lattice,
        sets,
        polarity,
        f,
        g,
        embed,
    };
    let report = extension.report();
    let isomorphism = if report.is_pi() {
        check_uniqueness(&pi_extension(p)?, &extension)?
    } else {
        None
    };
    Ok(DualExtension {
        spectrum: spec,
        extension,
        report,
        isomorphism,
    })
}

/// Reflexivity against the existence of a j-isomorphism onto a lattice with
/// its order.
///
/// Every finite T0 space is spectral, so the spectrum condition holds
/// throughout and the check searches for the predicted j-isomorphism onto
/// the opens of the spectrum.
#[derive(Clone, Debug)]
pub struct SpectralCaseReport {
    pub reflexive: bool,
    pub points: usize,
    /// Opens of the spectrum, all compact.
    pub opens: FiniteLattice,
    /// `≪` on round ideals is inclusion.
    pub way_below_is_inclusion: bool,
    /// `Φ : (D, R) → (E, <=)` and `Ψ : (E, <=) → (D, R)`, both j-morphisms,
    /// composing to the identities.
    pub j_isomorphism: Option<(ProximityMorphism, ProximityMorphism)>,
}

impl SpectralCaseReport {
    /// The spectrum is spectral; a j-isomorphism must exist.
    pub fn consistent(&self) -> bool {
        self.j_isomorphism.is_some()
    }
}

fn is_j_isomorphism(phi: &ProximityMorphism, psi: &ProximityMorphism) -> Result<bool> {
    Ok(phi.class.j
        && psi.class.j
        && phi.relation.compose(&psi.relation)? == phi.source.relation().converse()
        && psi.relation.compose(&phi.relation)? == psi.source.relation().converse())
}

pub fn spectral_case_check(p: &ProximityLattice) -> Result<SpectralCaseReport> {
    let spec = spectrum(p)?;
    let (opens, _) = spec.space.open_lattice()?;
    let pres = increasing_presentation(p)?;
    let ridl = &pres.ideals;
    let inclusion = Relation::from_fn(ridl.len(), ridl.len(), |i, j| ridl.lattice.leq(i, j));
    let way_below_is_inclusion = ridl.way_below == inclusion;
    let mut j_isomorphism = None;
    if way_below_is_inclusion {
        if let Some(iso) = find_isomorphism(&ridl.lattice, &opens) {
            let mut inverse = vec![0; iso.table.len()];
            for (i, &u) in iso.table.iter().enumerate() {
                inverse[u] = i;
            }
            let back = LatticeMap::new(opens.clone(), ridl.lattice.clone(), inverse)?;
            let forward = functor_f(&iso);
            let backward = functor_f(&back);
            // (Ridl, ≪) and (Ridl, <=) coincide here
            let phi = ProximityMorphism::classify(
                p.clone(),
                forward.target.clone(),
                pres.phi.relation.compose(&forward.relation)?,
            )?;
            let psi = ProximityMorphism::classify(
                backward.source.clone(),
                p.clone(),
                backward.relation.compose(&pres.psi.relation)?,
            )?;
            if is_j_isomorphism(&phi, &psi)? {
                j_isomorphism = Some((phi, psi));
            }
        }
    }
    Ok(SpectralCaseReport {
        reflexive: p.is_reflexive(),
        points: spec.space.len(),
        opens,
        way_below_is_inclusion,
        j_isomorphism,
    })
}
