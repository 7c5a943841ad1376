//! Proximity lattices: a finite lattice with an idempotent relation that
//! interacts with finite joins and meets.
//!
//! # Finite quantifiers
//!
//! Axioms 2–5 quantify over all finite subsets. [`verify_axioms`] checks only
//! the nullary and binary instances. For axioms 2 and 3 this is enough because
//! every finite join (meet) is an iterated binary one.
//!
//! For join-strongness the binary case also implies the general one, given
//! axioms 1–3: if `a R (x ∨ b)` with `x = b1 ∨ .. ∨ bk`, the binary case
//! yields a set `C ∪ E` with `C ⊆ R⁻¹[x]`, `E ⊆ R⁻¹[b]` and `a R ⋁(C ∪ E)`.
//! By induction each `c ∈ C` satisfies `c R ⋁Dc` with `Dc ⊆ R⁻¹[{b1..bk}]`,
//! and each `e ∈ E` interpolates as `e R e' R b`. Every member of `C ∪ E` is
//! then `R`-below `y = ⋁(⋃Dc ∪ {e'})`, so `⋁(C ∪ E) R y` by axiom 2 and
//! `a R y` by axiom 1. Meet-strongness is order dual.
//!
//! In each strongness check the existential "some finite `B' ⊆ R⁻¹[B]`" is
//! decided by taking all of `R⁻¹[B]`, since `a R x` and `x <= y` give `a R y`.
//! [`verify_axioms_exhaustive`] checks the literal statements over every
//! subset for small carriers and is used in tests to validate the reduction.

mod increasing;
mod morphism;
mod round;

pub use increasing::{increasing_presentation, IncreasingPresentation, IncreasingReport};
pub use morphism::{
    adjunction_transpose, enumerate_morphisms, functor_f, functor_g, identity_morphism, transpose_homomorphism,
    transpose_morphism, verify_morphism, verify_morphism_exhaustive, Condition, MorphismClass,
    MorphismReport, MorphismWitness, ProximityMorphism, Transposable,
};
pub use round::{
    is_round_filter, is_round_ideal, round_ideal_join, round_ideal_lattice, round_subsets,
    RoundIdealLattice, RoundKind, RoundSubset,
};

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::relation::Relation;

/// Largest carrier accepted by the exhaustive (all-subsets) checkers.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Axiom1,
    Axiom2,
    Axiom3,
    JoinStrong,
    MeetStrong,
    Increasing,
    Reflexive,
    Distributive,
}

/// A counterexample to one property. `elements` are carrier indices whose
/// roles are spelled out in `detail`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: Property,
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom1: bool,
    pub axiom2: bool,
    pub axiom3: bool,
    pub join_strong: bool,
    pub meet_strong: bool,
    pub increasing: bool,
    pub reflexive: bool,
    pub distributive: bool,
    /// At most one witness per failed property, lexicographically least.
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    /// Axioms 1–3 hold.
    pub fn axioms_ok(&self) -> bool {
        self.axiom1 && self.axiom2 && self.axiom3
    }

    pub fn witness(&self, property: Property) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.property == property)
    }
}

fn check_dims(lattice: &FiniteLattice, relation: &Relation) -> Result<()> {
    if relation.source_len() != lattice.len() || relation.target_len() != lattice.len() {
        return Err(Error::DimensionMismatch(format!(
            "relation is {}x{} but lattice has {} elements",
            relation.source_len(),
            relation.target_len(),
            lattice.len()
        )));
    }
    Ok(())
}

/// Checks axioms 1–5 and the auxiliary flags through their nullary and
/// binary instances. Panics if the relation is not on the lattice's carrier.
pub fn verify_axioms(lattice: &FiniteLattice, relation: &Relation) -> AxiomReport {
    check_dims(lattice, relation).expect("relation on the lattice carrier");
    let l = lattice;
    let r = relation;
    let els = || l.elements();
    let mut witnesses = Vec::new();

    let rr = r.compose(r).expect("square relation");
    let axiom1 = match rr.first_difference(r) {
        None => true,
        Some((a, c)) => {
            let detail = if rr.contains(a, c) {
                "pair lies in R ∘ R but not in R"
            } else {
                "pair lies in R but has no interpolant in R ∘ R"
            };
            witnesses.push(Witness {
                property: Property::Axiom1,
                elements: vec![a, c],
                detail: detail.into(),
            });
            false
        }
    };

    let axiom2 = (|| {
        if let Some(b) = els().find(|&b| !r.contains(l.bot(), b)) {
            return Some(Witness {
                property: Property::Axiom2,
                elements: vec![b],
                detail: "⊥ R b fails (empty join)".into(),
            });
        }
        for a in els() {
            for a2 in els() {
                for b in els() {
                    if r.contains(l.join(a, a2), b) != (r.contains(a, b) && r.contains(a2, b)) {
                        return Some(Witness {
                            property: Property::Axiom2,
                            elements: vec![a, a2, b],
                            detail: "(a ∨ a') R b differs from (a R b and a' R b)".into(),
                        });
                    }
                }
            }
        }
        None
    })();
    let axiom2 = record(&mut witnesses, axiom2);

    let axiom3 = (|| {
        if let Some(a) = els().find(|&a| !r.contains(a, l.top())) {
            return Some(Witness {
                property: Property::Axiom3,
                elements: vec![a],
                detail: "a R ⊤ fails (empty meet)".into(),
            });
        }
        for a in els() {
            for b in els() {
                for b2 in els() {
                    if r.contains(a, l.meet(b, b2)) != (r.contains(a, b) && r.contains(a, b2)) {
                        return Some(Witness {
                            property: Property::Axiom3,
                            elements: vec![a, b, b2],
                            detail: "a R (b ∧ b') differs from (a R b and a R b')".into(),
                        });
                    }
                }
            }
        }
        None
    })();
    let axiom3 = record(&mut witnesses, axiom3);

    let below: Vec<Bits> = els().map(|b| r.preimage(b)).collect();
    let join_strong = (|| {
        for a in els() {
            for b in els() {
                for c in els() {
                    if r.contains(a, l.join(b, c)) && !r.contains(a, l.join_all((below[b] | below[c]).iter())) {
                        return Some(Witness {
                            property: Property::JoinStrong,
                            elements: vec![a, b, c],
                            detail: "a R (b ∨ c) but not a R ⋁(R⁻¹[b] ∪ R⁻¹[c])".into(),
                        });
                    }
                }
            }
        }
        None
    })();
    let join_strong = record(&mut witnesses, join_strong);

    let meet_strong = (|| {
        for a in els() {
            for b in els() {
                for c in els() {
                    if r.contains(l.meet(a, b), c) && !r.contains(l.meet_all((r.image(a) | r.image(b)).iter()), c) {
                        return Some(Witness {
                            property: Property::MeetStrong,
                            elements: vec![a, b, c],
                            detail: "(a ∧ b) R c but not ⋀(R[a] ∪ R[b]) R c".into(),
                        });
                    }
                }
            }
        }
        None
    })();
    let meet_strong = record(&mut witnesses, meet_strong);

    let increasing = r.pairs().find(|&(a, b)| !l.leq(a, b)).map(|(a, b)| Witness {
        property: Property::Increasing,
        elements: vec![a, b],
        detail: "a R b but not a <= b".into(),
    });
    let increasing = record(&mut witnesses, increasing);

    let reflexive = els().find(|&a| !r.contains(a, a)).map(|a| Witness {
        property: Property::Reflexive,
        elements: vec![a],
        detail: "not a R a".into(),
    });
    let reflexive = record(&mut witnesses, reflexive);

    let distributive = l.distributivity_witness().map(|(a, b, c)| Witness {
        property: Property::Distributive,
        elements: vec![a, b, c],
        detail: "a ∧ (b ∨ c) differs from (a ∧ b) ∨ (a ∧ c)".into(),
    });
    let distributive = record(&mut witnesses, distributive);

    AxiomReport {
        axiom1,
        axiom2,
        axiom3,
        join_strong,
        meet_strong,
        increasing,
        reflexive,
        distributive,
        witnesses,
    }
}

fn record(witnesses: &mut Vec<Witness>, found: Option<Witness>) -> bool {
    match found {
        Some(w) => {
            witnesses.push(w);
            false
        }
        None => true,
    }
}

/// Checks axioms 2–5 literally, quantifying over every subset of the
/// carrier (and, for the strongness axioms, over every candidate subset
/// `B' ⊆ R⁻¹[B]`). Carriers larger than [`EXHAUSTIVE_LIMIT`] are rejected.
pub fn verify_axioms_exhaustive(lattice: &FiniteLattice, relation: &Relation) -> Result<AxiomReport> {
    check_dims(lattice, relation)?;
    let n = lattice.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let (l, r) = (lattice, relation);
    let mut report = verify_axioms(l, r);
    let subsets = || (0..1u64 << n).map(Bits::from_mask);

    let mut axiom2 = true;
    let mut axiom3 = true;
    let mut join_strong = true;
    let mut meet_strong = true;
    for set in subsets() {
        let join = l.join_all(set.iter());
        let meet = l.meet_all(set.iter());
        for x in l.elements() {
            if r.contains(join, x) != set.iter().all(|a| r.contains(a, x)) {
                axiom2 = false;
            }
            if r.contains(x, meet) != set.iter().all(|b| r.contains(x, b)) {
                axiom3 = false;
            }
            if r.contains(x, join) {
                let candidates: Vec<usize> = r.preimage_of(set).iter().collect();
                let found = (0..1u64 << candidates.len())
                    .any(|mask| r.contains(x, l.join_all(Bits::select(&candidates, mask).iter())));
                join_strong &= found;
            }
            if r.contains(meet, x) {
                let candidates: Vec<usize> = r.image_of(set).iter().collect();
                let found = (0..1u64 << candidates.len())
                    .any(|mask| r.contains(l.meet_all(Bits::select(&candidates, mask).iter()), x));
                meet_strong &= found;
            }
        }
    }
    report.axiom2 = axiom2;
    report.axiom3 = axiom3;
    report.join_strong = join_strong;
    report.meet_strong = meet_strong;
    Ok(report)
}

/// Cached flags of a proximity lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub axioms_ok: bool,
    pub join_strong: bool,
    pub meet_strong: bool,
    pub increasing: bool,
    pub reflexive: bool,
    pub distributive: bool,
}

/// A finite lattice together with a relation satisfying axioms 1–3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityLattice {
    lattice: FiniteLattice,
    relation: Relation,
    flags: Flags,
}

impl ProximityLattice {
    /// Fails with [`Error::AxiomsViolated`] if axioms 1–3 do not hold.
    pub fn new(lattice: FiniteLattice, relation: Relation) -> Result<Self> {
        check_dims(&lattice, &relation)?;
        let report = verify_axioms(&lattice, &relation);
        if !report.axioms_ok() {
            return Err(Error::AxiomsViolated(Box::new(report)));
        }
        let flags = Flags {
            axioms_ok: true,
            join_strong: report.join_strong,
            meet_strong: report.meet_strong,
            increasing: report.increasing,
            reflexive: report.reflexive,
            distributive: report.distributive,
        };
        Ok(ProximityLattice {
            lattice,
            relation,
            flags,
        })
    }

    /// `(L, <=)`
    pub fn from_order(lattice: FiniteLattice) -> Self {
        let relation = Relation::from_fn(lattice.len(), lattice.len(), |a, b| lattice.leq(a, b));
        Self::new(lattice, relation).expect("the lattice order is a proximity relation")
    }

    /// `(L^op, R⁻¹)`
    pub fn opposite(&self) -> Self {
        let flags = Flags {
            join_strong: self.flags.meet_strong,
            meet_strong: self.flags.join_strong,
            ..self.flags
        };
        ProximityLattice {
            lattice: self.lattice.opposite(),
            relation: self.relation.converse(),
            flags,
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn report(&self) -> AxiomReport {
        verify_axioms(&self.lattice, &self.relation)
    }

    pub fn is_join_strong(&self) -> bool {
        self.flags.join_strong
    }

    pub fn is_meet_strong(&self) -> bool {
        self.flags.meet_strong
    }

    pub fn is_doubly_strong(&self) -> bool {
        self.flags.join_strong && self.flags.meet_strong
    }

    pub fn is_distributive(&self) -> bool {
        self.flags.distributive
    }

    pub fn is_reflexive(&self) -> bool {
        self.flags.reflexive
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.relation.contains(a, b)
    }

    /// `R⁻¹[a]`, always a round ideal.
    pub fn below(&self, a: usize) -> Bits {
        self.relation.preimage(a)
    }

    /// `R[a]`, always a round filter.
    pub fn above(&self, a: usize) -> Bits {
        self.relation.image(a)
    }

    pub(crate) fn require_join_strong(&self) -> Result<()> {
        if self.flags.join_strong {
            Ok(())
        } else {
            Err(Error::NotJoinStrong)
        }
    }
}
