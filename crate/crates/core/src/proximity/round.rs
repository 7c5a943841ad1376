//! Round ideals and round filters.
//!
//! In a finite proximity lattice every round ideal `I` has a largest element
//! `m = ⋁I`, and then `I = R⁻¹[I] = R⁻¹[m]`, which is down-closed and contains
//! `m`, so `I = ↓m`. Conversely `↓m` is round whenever `R⁻¹[m] = ↓m`. Round
//! ideals are therefore enumerated from the elements `m` with
//! `R⁻¹[m] = ↓m`, and round filters dually.

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{lattice_of_sets, FiniteLattice};
use crate::relation::Relation;

use super::ProximityLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundKind {
    Ideal,
    Filter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundSubset {
    pub kind: RoundKind,
    pub members: Bits,
}

/// `R⁻¹[S] = S`, nonempty and closed under binary joins.
pub fn is_round_ideal(p: &ProximityLattice, set: Bits) -> bool {
    let l = p.lattice();
    !set.is_empty()
        && p.relation().preimage_of(set) == set
        && set.iter().all(|a| set.iter().all(|b| set.contains(l.join(a, b))))
}

/// `R[S] = S`, nonempty and closed under binary meets.
pub fn is_round_filter(p: &ProximityLattice, set: Bits) -> bool {
    let l = p.lattice();
    !set.is_empty()
        && p.relation().image_of(set) == set
        && set.iter().all(|a| set.iter().all(|b| set.contains(l.meet(a, b))))
}

/// All round ideals or filters in canonical order.
pub fn round_subsets(p: &ProximityLattice, kind: RoundKind) -> Vec<RoundSubset> {
    let l = p.lattice();
    let mut out: Vec<RoundSubset> = l
        .elements()
        .filter_map(|m| {
            let members = match kind {
                RoundKind::Ideal => l.down_set(m),
                RoundKind::Filter => l.up_set(m),
            };
            let fixed = match kind {
                RoundKind::Ideal => p.below(m),
                RoundKind::Filter => p.above(m),
            };
            (fixed == members).then_some(RoundSubset { kind, members })
        })
        .collect();
    out.sort_by_key(|s| s.members);
    out
}

/// The lattice of round ideals ordered by inclusion, with `≪`.
#[derive(Clone, Debug)]
pub struct RoundIdealLattice {
    pub lattice: FiniteLattice,
    /// `ideals[i]` is the round ideal represented by lattice element `i`.
    pub ideals: Vec<Bits>,
    /// `I ≪ J` iff `I ⊆ R⁻¹[d]` for some `d ∈ J`.
    pub way_below: Relation,
    /// `R⁻¹[a]` as an index into `ideals`, for every carrier element `a`.
    pub ideal_of_element: Vec<usize>,
}

impl RoundIdealLattice {
    pub fn index_of(&self, ideal: Bits) -> Option<usize> {
        self.ideals.iter().position(|i| *i == ideal)
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

fn join_closure(l: &FiniteLattice, set: Bits) -> Bits {
    let mut s = set;
    loop {
        let mut next = s;
        for a in s.iter() {
            for b in s.iter() {
                next.insert(l.join(a, b));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Join of round ideals: the fixpoint of `S ↦ R⁻¹[join-closure(S)]`
/// started from their union.
pub fn round_ideal_join(p: &ProximityLattice, ideals: &[Bits]) -> Result<Bits> {
    if let Some(bad) = ideals.iter().find(|i| !is_round_ideal(p, **i)) {
        return Err(Error::InvalidRoundSubset(format!("{bad:?} is not a round ideal")));
    }
    let l = p.lattice();
    let mut s = ideals.iter().fold(Bits::empty(), |acc, i| acc | *i);
    if s.is_empty() {
        return Ok(p.below(l.bot()));
    }
    loop {
        let next = p.relation().preimage_of(join_closure(l, s));
        if next == s {
            return Ok(s);
        }
        s = next;
    }
}

/// Builds `Ridl(P)`. The lattice order is inclusion; the join table is
/// cross-checked against [`round_ideal_join`].
pub fn round_ideal_lattice(p: &ProximityLattice) -> Result<RoundIdealLattice> {
    let l = p.lattice();
    let family: Vec<Bits> = round_subsets(p, RoundKind::Ideal).into_iter().map(|s| s.members).collect();
    let (lattice, ideals) = lattice_of_sets(family, |ideal| {
        let top = l.join_all(ideal.iter());
        format!("↓{}", l.name(top))
    })?;
    for i in lattice.elements() {
        for j in 0..i {
            let joined = round_ideal_join(p, &[ideals[i], ideals[j]])?;
            if ideals[lattice.join(i, j)] != joined {
                return Err(Error::InvariantViolated(format!(
                    "round ideal join of {:?} and {:?}",
                    ideals[i], ideals[j]
                )));
            }
        }
    }
    let n = ideals.len();
    let below: Vec<Bits> = l.elements().map(|d| p.below(d)).collect();
    let way_below = Relation::from_fn(n, n, |i, j| {
        ideals[j].iter().any(|d| ideals[i].is_subset(&below[d]))
    });
    let ideal_of_element = below
        .iter()
        .map(|b| {
            ideals
                .iter()
                .position(|i| i == b)
                .ok_or_else(|| Error::InvariantViolated(format!("R⁻¹[a] = {b:?} is not round")))
        })
        .collect::<Result<_>>()?;
    Ok(RoundIdealLattice {
        lattice,
        ideals,
        way_below,
        ideal_of_element,
    })
}
