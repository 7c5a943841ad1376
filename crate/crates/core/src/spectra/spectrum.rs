//! Prime round filters and the R-spectrum.

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::proximity::{is_round_filter, is_round_ideal, round_subsets, ProximityLattice, ProximityMorphism, RoundKind};

use super::space::FiniteSpace;

fn require_duality(p: &ProximityLattice) -> Result<()> {
    if !p.is_distributive() {
        return Err(Error::NotDistributive);
    }
    p.require_join_strong()
}

/// Why a round filter is not prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimalityFailure {
    /// `d ∨ e ∈ F` with `d, e ∉ F`; `d = e = ⊥` when `⊥ ∈ F`.
    pub d: usize,
    pub e: usize,
    /// `a ∈ F` with `a R d' ∨ e'`, `d' R d`, `e' R e`, when join-strongness
    /// provides them.
    pub interpolants: Option<(usize, usize, usize)>,
    pub detail: String,
}

/// Least failure of primality, or `None` for a prime filter. Assumes `f` is
/// a round filter.
pub fn primality_failure(p: &ProximityLattice, f: Bits) -> Option<PrimalityFailure> {
    let l = p.lattice();
    let name = |x: usize| l.name(x).to_string();
    if f.contains(l.bot()) {
        return Some(PrimalityFailure {
            d: l.bot(),
            e: l.bot(),
            interpolants: None,
            detail: "the filter contains ⊥ (empty join)".into(),
        });
    }
    let (d, e) = l
        .elements()
        .flat_map(|d| l.elements().map(move |e| (d, e)))
        .find(|&(d, e)| f.contains(l.join(d, e)) && !f.contains(d) && !f.contains(e))?;
    let de = l.join(d, e);
    let interpolants = f.iter().filter(|&a| p.related(a, de)).find_map(|a| {
        p.below(d)
            .iter()
            .flat_map(|d2| p.below(e).iter().map(move |e2| (d2, e2)))
            .find(|&(d2, e2)| p.related(a, l.join(d2, e2)))
            .map(|(d2, e2)| (a, d2, e2))
    });
    let detail = match interpolants {
        Some((a, d2, e2)) => format!(
            "{} ∨ {} in F but neither is; {} R {} ∨ {}, {} R {}, {} R {}",
            name(d), name(e), name(a), name(d2), name(e2), name(d2), name(d), name(e2), name(e)
        ),
        None => format!("{} ∨ {} in F but neither is", name(d), name(e)),
    };
    Some(PrimalityFailure {
        d,
        e,
        interpolants,
        detail,
    })
}

/// A round filter `F` with `⋁A ∈ F ⇒ A ∩ F ≠ ∅` for every finite `A`.
/// Checked on the empty and binary joins.
pub fn is_prime_round_filter(p: &ProximityLattice, f: Bits) -> bool {
    is_round_filter(p, f) && primality_failure(p, f).is_none()
}

/// The prime round filters of a distributive join-strong proximity lattice.
pub fn prime_round_filters(p: &ProximityLattice) -> Result<Vec<Bits>> {
    require_duality(p)?;
    Ok(prime_round_filters_unchecked(p))
}

/// As [`prime_round_filters`] without the preconditions, for exploring
/// non-distributive inputs.
pub fn prime_round_filters_unchecked(p: &ProximityLattice) -> Vec<Bits> {
    round_subsets(p, RoundKind::Filter)
        .into_iter()
        .map(|s| s.members)
        .filter(|&f| primality_failure(p, f).is_none())
        .collect()
}

/// A prime round filter containing `g` and missing `j`, or `None` when
/// `g ∩ j ≠ ∅`.
///
/// Takes a largest member of the finite family of round filters `F ⊇ g`
/// with `F ∩ j = ∅`; such a maximal member is prime when `p` is distributive
/// and join-strong. If it is not, the error carries the failure trail.
pub fn prime_filter_between(p: &ProximityLattice, g: Bits, j: Bits) -> Result<Option<Bits>> {
    require_duality(p)?;
    if !is_round_filter(p, g) {
        return Err(Error::InvalidRoundSubset(format!("{g:?} is not a round filter")));
    }
    if !is_round_ideal(p, j) {
        return Err(Error::InvalidRoundSubset(format!("{j:?} is not a round ideal")));
    }
    if g.intersects(&j) {
        return Ok(None);
    }
    let best = round_subsets(p, RoundKind::Filter)
        .into_iter()
        .map(|s| s.members)
        .filter(|f| g.is_subset(f) && !f.intersects(&j))
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)))
        .ok_or_else(|| Error::InvariantViolated("g itself should be a candidate".into()))?;
    match primality_failure(p, best) {
        None => Ok(Some(best)),
        Some(w) => Err(Error::InvariantViolated(format!("maximal filter is not prime: {}", w.detail))),
    }
}

/// The R-spectrum: prime round filters with the topology generated by
/// `U_d = {F : d ∈ F}`.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub source: ProximityLattice,
    pub space: FiniteSpace,
    /// The prime round filter at each point.
    pub point_filters: Vec<Bits>,
    /// `U_d` for each element `d`.
    pub basic_open: Vec<Bits>,
}

impl SpectrumResult {
    pub fn point_of(&self, filter: Bits) -> Option<usize> {
        self.point_filters.iter().position(|&f| f == filter)
    }
}

pub fn spectrum(p: &ProximityLattice) -> Result<SpectrumResult> {
    let filters = prime_round_filters(p)?;
    let l = p.lattice();
    let names = filters
        .iter()
        .map(|f| format!("↑{}", l.name(l.meet_all(f.iter()))))
        .collect();
    let basic_open: Vec<Bits> = l
        .elements()
        .map(|d| (0..filters.len()).filter(|&x| filters[x].contains(d)).collect())
        .collect();
    let all = Bits::full(filters.len());
    if basic_open[l.top()] != all || !basic_open[l.bot()].is_empty() {
        return Err(Error::InvariantViolated("U_⊤ must be everything and U_⊥ empty".into()));
    }
    for d in l.elements() {
        for e in l.elements() {
            if basic_open[l.meet(d, e)] != basic_open[d] & basic_open[e]
                || basic_open[l.join(d, e)] != basic_open[d] | basic_open[e]
            {
                return Err(Error::InvariantViolated(format!(
                    "U_d does not respect meets and joins at {}, {}",
                    l.name(d),
                    l.name(e)
                )));
            }
        }
    }
    // closed under unions and intersections already, as checked above
    let space = FiniteSpace::new(names, basic_open.clone())?;
    Ok(SpectrumResult {
        source: p.clone(),
        space,
        point_filters: filters,
        basic_open,
    })
}

/// `f_T : spec(E) → spec(D)`, `F ↦ T⁻¹[F]`, for a j-morphism `T : D → E`.
#[derive(Clone, Debug)]
pub struct DualMap {
    /// `spec` of the target of `T`, the domain of `f_T`.
    pub domain: SpectrumResult,
    pub codomain: SpectrumResult,
    pub map: Vec<usize>,
}

impl DualMap {
    /// `f_T⁻¹[u]` for a set of points of the codomain.
    pub fn preimage(&self, u: Bits) -> Bits {
        (0..self.map.len()).filter(|&x| u.contains(self.map[x])).collect()
    }
}

pub fn dual_map(t: &ProximityMorphism) -> Result<DualMap> {
    if !t.class.j {
        return Err(Error::NotAJMorphism);
    }
    let domain = spectrum(&t.target)?;
    let codomain = spectrum(&t.source)?;
    let map = domain
        .point_filters
        .iter()
        .map(|&f| {
            let pre = t.relation.preimage_of(f);
            codomain
                .point_of(pre)
                .ok_or_else(|| Error::InvariantViolated(format!("T⁻¹[F] = {pre:?} is not a prime round filter")))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = DualMap { domain, codomain, map };
    let continuous = m.codomain.basic_open.iter().all(|&u| m.domain.space.is_open(m.preimage(u)));
    if !continuous {
        return Err(Error::InvariantViolated("f_T is not continuous".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::proximity::identity_morphism;

    #[test]
    fn prime_filters_of_fixtures() {
        let c2 = fixtures::proximity("C2").unwrap();
        assert_eq!(prime_round_filters(&c2).unwrap(), vec![Bits::singleton(1)]);
        let c3r = fixtures::proximity("C3R").unwrap();
        assert_eq!(prime_round_filters(&c3r).unwrap(), vec![Bits::singleton(2)]);
        let m3 = fixtures::proximity("M3").unwrap();
        assert!(matches!(prime_round_filters(&m3), Err(Error::NotDistributive)));
        assert!(prime_round_filters_unchecked(&m3).is_empty());
    }

    #[test]
    fn m3_failures_name_two_atoms() {
        let m3 = fixtures::proximity("M3").unwrap();
        let l = m3.lattice();
        let w = primality_failure(&m3, Bits::singleton(l.top())).unwrap();
        assert_eq!(l.join(w.d, w.e), l.top());
        assert!(w.d != l.top() && w.e != l.top());
        assert!(w.interpolants.is_some());
    }

    #[test]
    fn spectra_of_small_fixtures() {
        let c3r = spectrum(&fixtures::proximity("C3R").unwrap()).unwrap();
        assert_eq!(c3r.space.len(), 1);
        assert_eq!(c3r.basic_open, vec![Bits::empty(), Bits::empty(), Bits::singleton(0)]);
        let full2 = spectrum(&fixtures::proximity("FULL2").unwrap()).unwrap();
        assert!(full2.space.is_empty());
        assert_eq!(full2.space.opens(), &[Bits::empty()]);
    }

    #[test]
    fn prime_filter_between_examples() {
        let c2 = fixtures::proximity("C2").unwrap();
        let (one, both) = (Bits::singleton(1), Bits::full(2));
        assert_eq!(prime_filter_between(&c2, one, Bits::singleton(0)).unwrap(), Some(one));
        assert_eq!(prime_filter_between(&c2, both, Bits::singleton(0)).unwrap(), None);
        assert!(matches!(
            prime_filter_between(&c2, Bits::singleton(0), Bits::singleton(0)),
            Err(Error::InvalidRoundSubset(_))
        ));
    }

    #[test]
    fn identity_dualizes_to_identity() {
        for name in ["C2", "C3", "B2", "C3R", "FULL2"] {
            let p = fixtures::proximity(name).unwrap();
            let m = dual_map(&identity_morphism(&p).unwrap()).unwrap();
            assert_eq!(m.map, (0..m.map.len()).collect::<Vec<_>>(), "{name}");
        }
    }
}
