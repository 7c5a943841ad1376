//! Extending proximity morphisms to π-extensions.
//!
//! For `T : (L, R) → (M, S)` and π-extensions `h_L : L → C`, `h_M : M → D`,
//! the extension is first defined on the round ideal elements `y = ⋁h_L[I]`
//! of `C`,
//!
//! ```text
//! T^π(y) = ⋁{h_M(b) : a T b and h_L(a) <= y},
//! ```
//!
//! and then on every `u ∈ C` as the meet of `T^π(y)` over the round ideal
//! elements `y >= u`.

use serde::Serialize;

use crate::bits::Bits;
use crate::canext::{pi_extension, CanonicalExtension, ExtensionKind};
use crate::error::{Error, Result};
use crate::proximity::{round_subsets, ProximityMorphism, RoundKind};
use crate::spectra::{canext_via_duality, dual_map};

#[derive(Clone, Debug)]
pub struct ExtendedMap {
    pub source: CanonicalExtension,
    pub target: CanonicalExtension,
    pub morphism: ProximityMorphism,
    /// Round ideal elements of the source extension, ascending.
    pub ideal_elements: Vec<usize>,
    pub table: Vec<usize>,
}

impl ExtendedMap {
    pub fn apply(&self, u: usize) -> usize {
        self.table[u]
    }

    /// Least `a` with `T^π(h_L(a)) != ⋁h_M[T[a]]`.
    pub fn extension_failure(&self) -> Option<usize> {
        let d = &self.target.lattice;
        let t = &self.morphism.relation;
        self.morphism.source.lattice().elements().find(|&a| {
            let expected = d.join_all(t.image(a).iter().map(|b| self.target.embed[b]));
            self.table[self.source.embed[a]] != expected
        })
    }

    /// Least pair `u <= v` with `T^π(u) ≰ T^π(v)`.
    pub fn monotonicity_failure(&self) -> Option<(usize, usize)> {
        let (c, d) = (&self.source.lattice, &self.target.lattice);
        c.elements()
            .flat_map(|u| c.elements().map(move |v| (u, v)))
            .find(|&(u, v)| c.leq(u, v) && !d.leq(self.table[u], self.table[v]))
    }
}

/// The elements `⋁h[I]` for round ideals `I`, ascending.
pub fn round_ideal_elements(e: &CanonicalExtension) -> Vec<usize> {
    let c = &e.lattice;
    let mut out: Vec<usize> = round_subsets(&e.source, RoundKind::Ideal)
        .iter()
        .map(|i| c.join_all(i.members.iter().map(|a| e.embed[a])))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn extend_pi(t: &ProximityMorphism, source: &CanonicalExtension, target: &CanonicalExtension) -> Result<ExtendedMap> {
    for e in [source, target] {
        if e.kind != ExtensionKind::Pi {
            return Err(Error::KindMismatch {
                expected: ExtensionKind::Pi.name(),
                found: e.kind.name(),
            });
        }
    }
    if source.source != t.source || target.source != t.target {
        return Err(Error::DimensionMismatch("extensions do not match the morphism".into()));
    }
    if !t.class.proximity {
        return Err(Error::NotAProximityMorphism);
    }
    let (c, d) = (&source.lattice, &target.lattice);
    let ideal_elements = round_ideal_elements(source);
    let on_ideal = |y: usize| {
        let below: Bits = t
            .source
            .lattice()
            .elements()
            .filter(|&a| c.leq(source.embed[a], y))
            .collect();
        d.join_all(t.relation.image_of(below).iter().map(|b| target.embed[b]))
    };
    let ideal_values: Vec<usize> = ideal_elements.iter().map(|&y| on_ideal(y)).collect();
    let table = c
        .elements()
        .map(|u| {
            d.meet_all(
                ideal_elements
                    .iter()
                    .zip(&ideal_values)
                    .filter(|(&y, _)| c.leq(u, y))
                    .map(|(_, &v)| v),
            )
        })
        .collect();
    let m = ExtendedMap {
        source: source.clone(),
        target: target.clone(),
        morphism: t.clone(),
        ideal_elements,
        table,
    };
    if let Some(a) = m.extension_failure() {
        return Err(Error::InvariantViolated(format!(
            "T^π(h(a)) differs from ⋁h[T[a]] at a = {}",
            t.source.lattice().name(a)
        )));
    }
    if let Some((u, v)) = m.monotonicity_failure() {
        return Err(Error::InvariantViolated(format!("T^π is not monotone at ({u}, {v})")));
    }
    Ok(m)
}

/// [`extend_pi`] with freshly built π-extensions of both ends.
pub fn extend(t: &ProximityMorphism) -> Result<ExtendedMap> {
    extend_pi(t, &pi_extension(&t.source)?, &pi_extension(&t.target)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preservation {
    /// Elements `[u, v]`, or `[]` for the top.
    Meets,
    /// Elements: the family.
    DirectedIdealJoins,
    /// Elements `[y, y']`, or `[]` for the bottom.
    FiniteIdealJoins,
    /// Elements `[u, v]`, or `[]` for the bottom.
    AllJoins,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationWitness {
    pub property: Preservation,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub meets: bool,
    pub directed_ideal_joins: bool,
    pub finite_ideal_joins: bool,
    pub all_joins: bool,
    pub j_morphism: bool,
    /// Number of up-directed families of ideal elements checked.
    pub directed_families: usize,
    pub witnesses: Vec<PreservationWitness>,
}

impl PreservationReport {
    /// Everything proved for the morphism's class holds: meets and directed
    /// ideal joins always, finite ideal joins for j-morphisms.
    pub fn proved_properties_hold(&self) -> bool {
        self.meets && self.directed_ideal_joins && (!self.j_morphism || self.finite_ideal_joins)
    }

    pub fn witness(&self, property: Preservation) -> Option<&PreservationWitness> {
        self.witnesses.iter().find(|w| w.property == property)
    }
}

/// Families of ideal elements enumerated exhaustively up to this many
/// elements; beyond it only pairs are checked.
const DIRECTED_LIMIT: usize = 16;

fn binary_failure(items: &[usize], ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    items
        .iter()
        .flat_map(|&u| items.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !ok(u, v))
        .map(|(u, v)| vec![u, v])
}

pub fn check_preservation(m: &ExtendedMap) -> PreservationReport {
    let (c, d) = (&m.source.lattice, &m.target.lattice);
    let f = &m.table;
    let mut witnesses = Vec::new();
    let mut record = |property, found: Option<Vec<usize>>| match found {
        Some(elements) => {
            witnesses.push(PreservationWitness { property, elements });
            false
        }
        None => true,
    };

    let all: Vec<usize> = c.elements().collect();
    let meet_failure = if f[c.top()] != d.top() {
        Some(vec![])
    } else {
        binary_failure(&all, |u, v| f[c.meet(u, v)] == d.meet(f[u], f[v]))
    };
    let meets = record(Preservation::Meets, meet_failure);

    let ideals = &m.ideal_elements;
    let is_directed = |family: &[usize]| {
        family
            .iter()
            .all(|&u| family.iter().all(|&v| family.iter().any(|&w| c.leq(u, w) && c.leq(v, w))))
    };
    let mut directed_families = 0;
    let mut directed_failure = None;
    let mut check_family = |family: Vec<usize>| {
        if directed_failure.is_some() || !is_directed(&family) {
            return;
        }
        directed_families += 1;
        let lhs = f[c.join_all(family.iter().copied())];
        if lhs != d.join_all(family.iter().map(|&u| f[u])) {
            directed_failure = Some(family);
        }
    };
    if ideals.len() <= DIRECTED_LIMIT {
        for mask in 1..1u64 << ideals.len() {
            check_family(Bits::from_mask(mask).iter().map(|i| ideals[i]).collect());
        }
    } else {
        for (i, &u) in ideals.iter().enumerate() {
            for &v in &ideals[i..] {
                check_family(if u == v { vec![u] } else { vec![u, v] });
            }
        }
    }
    let directed_ideal_joins = record(Preservation::DirectedIdealJoins, directed_failure);

    let finite_failure = if f[c.bot()] != d.bot() {
        Some(vec![])
    } else {
        binary_failure(ideals, |u, v| f[c.join(u, v)] == d.join(f[u], f[v]))
    };
    let finite_ideal_joins = record(Preservation::FiniteIdealJoins, finite_failure);

    let join_failure = if f[c.bot()] != d.bot() {
        Some(vec![])
    } else {
        binary_failure(&all, |u, v| f[c.join(u, v)] == d.join(f[u], f[v]))
    };
    let all_joins = record(Preservation::AllJoins, join_failure);

    PreservationReport {
        meets,
        directed_ideal_joins,
        finite_ideal_joins,
        all_joins,
        j_morphism: m.morphism.class.j,
        directed_families,
        witnesses,
    }
}

/// `T^π` against `f_T⁻¹` on the saturated sets of the spectra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComparison {
    /// Elements `u` of the source extension where the two differ.
    pub discrepancies: Vec<usize>,
    pub checked: usize,
}

impl DualComparison {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Transports `T^π` along the isomorphisms onto the saturated-set lattices
/// of the spectra and compares it with the inverse image under the dual map.
pub fn compare_with_dual(m: &ExtendedMap) -> Result<DualComparison> {
    let t = &m.morphism;
    for p in [&t.source, &t.target] {
        if !p.is_distributive() {
            return Err(Error::NotDistributive);
        }
    }
    let fmap = dual_map(t)?;
    let src = canext_via_duality(&t.source)?;
    let tgt = canext_via_duality(&t.target)?;
    let missing = || Error::InvariantViolated("no isomorphism onto the saturated sets".into());
    let phi_src = crate::canext::check_uniqueness(&m.source, &src.extension)?.ok_or_else(missing)?;
    let phi_tgt = crate::canext::check_uniqueness(&m.target, &tgt.extension)?.ok_or_else(missing)?;
    let discrepancies = m
        .source
        .lattice
        .elements()
        .filter(|&u| {
            let lhs = tgt.extension.sets[phi_tgt.apply(m.table[u])];
            let rhs = fmap.preimage(src.extension.sets[phi_src.apply(u)]);
            lhs != rhs
        })
        .collect();
    Ok(DualComparison {
        discrepancies,
        checked: m.source.lattice.len(),
    })
}

/// `(T ∘ U)^π` against `U^π ∘ T^π` (`T` first). No general claim is made;
/// the integration tests find no discrepancy on the fixture corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub discrepancies: Vec<usize>,
}

pub fn functoriality(t: &ProximityMorphism, u: &ProximityMorphism) -> Result<FunctorialityReport> {
    let tu = t.then(u)?;
    let (et, eu, etu) = (extend(t)?, extend(u)?, extend(&tu)?);
    let discrepancies = etu
        .source
        .lattice
        .elements()
        .filter(|&x| etu.table[x] != eu.table[et.table[x]])
        .collect();
    Ok(FunctorialityReport { discrepancies })
}

/// The extension of an m-morphism `U : (L, R) → (M, S)` to σ-extensions.
///
/// `U⁻¹` is a j-morphism `(M^op, S⁻¹) → (L^op, R⁻¹)`, and the σ-extension of
/// a meet-strong lattice is the π-extension of its opposite read upside
/// down. The resulting map therefore runs `σ(M) → σ(L)`; `dual` holds it as
/// an ordinary [`ExtendedMap`] between the π-extensions of the opposites,
/// over the same element indices.
#[derive(Clone, Debug)]
pub struct SigmaExtendedMap {
    pub morphism: ProximityMorphism,
    pub dual: ExtendedMap,
}

impl SigmaExtendedMap {
    pub fn table(&self) -> &[usize] {
        &self.dual.table
    }
}

pub fn extend_sigma(u: &ProximityMorphism) -> Result<SigmaExtendedMap> {
    if !u.class.m {
        return Err(Error::NotAnMMorphism);
    }
    let converse = ProximityMorphism::classify(u.target.opposite(), u.source.opposite(), u.relation.converse())?;
    if !converse.class.j {
        return Err(Error::InvariantViolated("the converse of an m-morphism should be a j-morphism".into()));
    }
    Ok(SigmaExtendedMap {
        morphism: u.clone(),
        dual: extend(&converse)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canext::sigma_extension;
    use crate::fixtures;
    use crate::proximity::{enumerate_morphisms, identity_morphism, ProximityLattice};
    use crate::relation::Relation;

    #[test]
    fn identity_extends_to_identity() {
        for name in ["C2", "C3R", "B2", "M3"] {
            let p = fixtures::proximity(name).unwrap();
            let m = extend(&identity_morphism(&p).unwrap()).unwrap();
            assert_eq!(m.table, (0..m.table.len()).collect::<Vec<_>>(), "{name}");
            let r = check_preservation(&m);
            assert!(r.meets && r.directed_ideal_joins && r.finite_ideal_joins && r.all_joins, "{name}");
        }
    }

    #[test]
    fn full_relation_on_c3r_is_not_a_j_morphism() {
        let p = fixtures::proximity("C3R").unwrap();
        let t = ProximityMorphism::classify(p.clone(), p.clone(), Relation::full(3, 3)).unwrap();
        assert!(t.class.proximity && !t.class.j);
        let m = extend(&t).unwrap();
        let c = &m.source.lattice;
        assert_eq!(m.table, vec![c.top(); c.len()]);
        let r = check_preservation(&m);
        assert!(r.proved_properties_hold() && !r.finite_ideal_joins && !r.all_joins);
        assert_eq!(r.witness(Preservation::FiniteIdealJoins).unwrap().elements, Vec::<usize>::new());
    }

    #[test]
    fn kinds_are_checked() {
        let p = fixtures::proximity("C2").unwrap();
        let id = identity_morphism(&p).unwrap();
        let pi = pi_extension(&p).unwrap();
        let sigma = sigma_extension(&p).unwrap();
        assert!(matches!(extend_pi(&id, &pi, &sigma), Err(Error::KindMismatch { .. })));
        let empty = ProximityMorphism::classify(p.clone(), p.clone(), Relation::empty(2, 2)).unwrap();
        assert!(matches!(extend_pi(&empty, &pi, &pi), Err(Error::NotAProximityMorphism)));
    }

    #[test]
    fn identity_agrees_with_dual() {
        for name in ["C2", "C3R", "FULL2"] {
            let p = fixtures::proximity(name).unwrap();
            let m = extend(&identity_morphism(&p).unwrap()).unwrap();
            assert!(compare_with_dual(&m).unwrap().agrees(), "{name}");
        }
        let m3 = fixtures::proximity("M3").unwrap();
        let m = extend(&identity_morphism(&m3).unwrap()).unwrap();
        assert!(matches!(compare_with_dual(&m), Err(Error::NotDistributive)));
    }

    #[test]
    fn sigma_extension_of_identity() {
        for name in ["C2", "C3R", "FULL2"] {
            let p = fixtures::proximity(name).unwrap();
            let id = ProximityMorphism::classify(p.clone(), p.clone(), p.relation().converse()).unwrap();
            assert!(id.class.m, "{name}");
            let m = extend_sigma(&id).unwrap();
            assert_eq!(m.table(), (0..m.table().len()).collect::<Vec<_>>(), "{name}");
            // same carrier as the σ-extension
            assert_eq!(m.dual.source.lattice.opposite(), sigma_extension(&p).unwrap().lattice);
        }
    }

    fn oracle_table(t: &ProximityMorphism) -> Vec<usize> {
        // the definition evaluated from scratch, ideal elements found as
        // joins of h over every down-closed R⁻¹-fixed set
        let (src, tgt) = (pi_extension(&t.source).unwrap(), pi_extension(&t.target).unwrap());
        let (c, d) = (&src.lattice, &tgt.lattice);
        let n = t.source.len();
        let mut ideal_elements = Vec::new();
        for mask in 1..1u64 << n {
            let s = Bits::from_mask(mask);
            let fixed = (0..n).all(|a| s.contains(a) == s.iter().any(|b| t.source.related(a, b)));
            let joined = s.iter().all(|a| s.iter().all(|b| s.contains(t.source.lattice().join(a, b))));
            if fixed && joined {
                ideal_elements.push(c.join_all(s.iter().map(|a| src.embed[a])));
            }
        }
        let value = |y: usize| {
            let mut v = d.bot();
            for (a, b) in t.relation.pairs() {
                if c.leq(src.embed[a], y) {
                    v = d.join(v, tgt.embed[b]);
                }
            }
            v
        };
        c.elements()
            .map(|u| {
                let mut v = d.top();
                for &y in &ideal_elements {
                    if c.leq(u, y) {
                        v = d.meet(v, value(y));
                    }
                }
                v
            })
            .collect()
    }

    #[test]
    fn tables_match_oracle_on_small_pairs() {
        let corpus: Vec<ProximityLattice> = ["C2", "C3R", "FULL2", "B2"]
            .iter()
            .map(|n| fixtures::proximity(n).unwrap())
            .collect();
        for src in &corpus {
            for tgt in &corpus {
                for t in enumerate_morphisms(src, tgt) {
                    assert_eq!(extend(&t).unwrap().table, oracle_table(&t));
                }
            }
        }
    }
}
