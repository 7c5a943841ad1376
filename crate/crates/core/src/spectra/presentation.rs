//! Proximity lattices presenting a finite space.
//!
//! Every saturated set of a finite space is compact, so the compact
//! saturated sets used by the presentations are just the saturated sets.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{lattice_of_sets, FiniteLattice};
use crate::proximity::ProximityLattice;
use crate::relation::Relation;

use super::space::{find_homeomorphism, FiniteSpace};
use super::spectrum::spectrum;

fn checked(lattice: FiniteLattice, relation: Relation, what: &str) -> Result<ProximityLattice> {
    ProximityLattice::new(lattice, relation)
        .map_err(|e| Error::InvariantViolated(format!("{what} is not a proximity lattice: {e}")))
}

/// Opens ordered by inclusion, with `d R e` iff some saturated `k` has
/// `d ⊆ k ⊆ e`. Opens are saturated here, so `R` is inclusion.
pub fn open_basis_presentation(s: &FiniteSpace) -> Result<ProximityLattice> {
    s.require_t0()?;
    let (lattice, opens) = s.open_lattice()?;
    let saturated = s.saturated_sets();
    let relation = Relation::from_fn(opens.len(), opens.len(), |d, e| {
        saturated.iter().any(|k| opens[d].is_subset(k) && k.is_subset(&opens[e]))
    });
    if relation != Relation::from_fn(opens.len(), opens.len(), |d, e| lattice.leq(d, e)) {
        return Err(Error::InvariantViolated("R differs from inclusion on a finite space".into()));
    }
    let p = checked(lattice, relation, "open-basis presentation")?;
    let f = p.flags();
    if !(f.join_strong && f.increasing && f.distributive) {
        return Err(Error::InvariantViolated(format!("open-basis presentation has flags {f:?}")));
    }
    Ok(p)
}

/// Saturated sets ordered by reverse inclusion, with `k S l` iff some open
/// `u` has `k ⊇ u ⊇ l`.
///
/// Computed as the open-basis presentation of the co-compact dual,
/// transported along complementation, which is an order isomorphism from
/// this lattice onto the opens of the dual.
pub fn compsat_basis_presentation(s: &FiniteSpace) -> Result<ProximityLattice> {
    s.require_t0()?;
    let dual = s.co_compact_dual();
    let presented = open_basis_presentation(&dual)?;
    let (_, dual_opens) = dual.open_lattice()?;
    let n = s.len();
    let names: Vec<String> = dual_opens.iter().map(|d| s.set_label(d.complement(n))).collect();
    let up: Vec<Bits> = presented.lattice().elements().map(|a| presented.lattice().up_set(a)).collect();
    let lattice = FiniteLattice::from_up_sets(names, up)?;
    let p = checked(lattice, presented.relation().clone(), "compsat-basis presentation")?;
    let f = p.flags();
    if !(f.meet_strong && f.increasing && f.distributive) {
        return Err(Error::InvariantViolated(format!("compsat-basis presentation has flags {f:?}")));
    }
    Ok(p)
}

/// Pairs `(d, e)` with `d` open, `e` saturated and `d ⊆ e`, ordered
/// componentwise by inclusion, with `(d, e) T (d', e')` iff `e ⊆ d'`.
pub fn pairs_presentation(s: &FiniteSpace) -> Result<ProximityLattice> {
    s.require_t0()?;
    let n = s.len();
    let saturated = s.saturated_sets();
    let pairs: Vec<(Bits, Bits)> = s
        .opens()
        .iter()
        .flat_map(|&d| saturated.iter().filter(move |e| d.is_subset(e)).map(move |&e| (d, e)))
        .collect();
    // encode (d, e) as d on the low copy of the points and e on the high copy
    let family: Vec<Bits> = pairs
        .iter()
        .map(|(d, e)| *d | e.iter().map(|x| x + n).collect::<Bits>())
        .collect();
    let low = Bits::full(n);
    let split = |c: &Bits| (*c & low, (*c - low).iter().map(|x| x - n).collect::<Bits>());
    let (lattice, sets) = lattice_of_sets(family, |c| {
        let (d, e) = split(c);
        format!("({}|{})", s.set_label(d), s.set_label(e))
    })?;
    let relation = Relation::from_fn(sets.len(), sets.len(), |x, y| split(&sets[x]).1.is_subset(&split(&sets[y]).0));
    let p = checked(lattice, relation, "pairs presentation")?;
    let f = p.flags();
    if !(f.join_strong && f.meet_strong && f.distributive) {
        return Err(Error::InvariantViolated(format!("pairs presentation has flags {f:?}")));
    }
    Ok(p)
}

/// A homeomorphism from the spectrum of the open-basis presentation of `s`
/// onto `s`, if the search finds one.
pub fn presentation_round_trip(s: &FiniteSpace) -> Result<Option<Vec<usize>>> {
    let spec = spectrum(&open_basis_presentation(s)?)?;
    Ok(find_homeomorphism(&spec.space, s))
}
