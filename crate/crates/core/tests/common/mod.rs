//! Shared helpers for the integration tests: extra lattices and brute-force
//! oracles written straight from the definitions.

#![allow(dead_code)]

use proxlat::lattice::lattice_from_order;
use proxlat::{FiniteLattice, ProximityLattice, Relation};

pub fn chain(n: usize) -> FiniteLattice {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
    lattice_from_order(&names, &pairs).unwrap()
}

pub fn pentagon() -> FiniteLattice {
    lattice_from_order(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .unwrap()
}

/// Fixture lattices plus a 4-chain and the pentagon.
pub fn small_lattices() -> Vec<(String, FiniteLattice)> {
    let mut out: Vec<(String, FiniteLattice)> = ["C2", "C3", "B2", "M3"]
        .iter()
        .map(|n| (n.to_string(), proxlat::fixtures::lattice(n).unwrap()))
        .collect();
    out.push(("C4".into(), chain(4)));
    out.push(("N5".into(), pentagon()));
    out
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// The five axioms as literally stated, quantifying over every subset.
#[derive(Debug, PartialEq, Eq)]
pub struct LiteralAxioms {
    pub axiom1: bool,
    pub axiom2: bool,
    pub axiom3: bool,
    pub join_strong: bool,
    pub meet_strong: bool,
}

pub fn literal_axioms(l: &FiniteLattice, r: &Relation) -> LiteralAxioms {
    let n = l.len();
    let rel = |a: usize, b: usize| r.contains(a, b);
    let axiom1 = (0..n).all(|a| (0..n).all(|c| rel(a, c) == (0..n).any(|b| rel(a, b) && rel(b, c))));
    let axiom2 = subsets(n).all(|s| (0..n).all(|b| rel(l.join_all(s.iter().copied()), b) == s.iter().all(|&a| rel(a, b))));
    let axiom3 = subsets(n).all(|s| (0..n).all(|a| rel(a, l.meet_all(s.iter().copied())) == s.iter().all(|&b| rel(a, b))));
    let below_of = |s: &[usize]| -> Vec<usize> { (0..n).filter(|&c| s.iter().any(|&b| rel(c, b))).collect() };
    let above_of = |s: &[usize]| -> Vec<usize> { (0..n).filter(|&c| s.iter().any(|&a| rel(a, c))).collect() };
    let join_strong = subsets(n).all(|b| {
        let cands = below_of(&b);
        (0..n).all(|a| {
            !rel(a, l.join_all(b.iter().copied()))
                || subsets(cands.len()).any(|pick| rel(a, l.join_all(pick.iter().map(|&i| cands[i]))))
        })
    });
    let meet_strong = subsets(n).all(|a| {
        let cands = above_of(&a);
        (0..n).all(|b| {
            !rel(l.meet_all(a.iter().copied()), b)
                || subsets(cands.len()).any(|pick| rel(l.meet_all(pick.iter().map(|&i| cands[i])), b))
        })
    });
    LiteralAxioms {
        axiom1,
        axiom2,
        axiom3,
        join_strong,
        meet_strong,
    }
}

pub fn order(l: &FiniteLattice) -> Relation {
    Relation::from_fn(l.len(), l.len(), |a, b| l.leq(a, b))
}

pub fn by_order(l: &FiniteLattice) -> ProximityLattice {
    ProximityLattice::from_order(l.clone())
}

/// Every relation on `l` that is a proximity lattice, by brute force.
/// Only sensible for carriers of at most four elements.
pub fn all_proximity_relations(l: &FiniteLattice) -> Vec<ProximityLattice> {
    let n = l.len();
    assert!(n <= 4);
    (0..1u64 << (n * n))
        .map(|m| Relation::from_mask(n, n, m))
        .filter_map(|r| ProximityLattice::new(l.clone(), r).ok())
        .collect()
}

/// Proximity morphism conditions as literally stated for `T⁻¹`, over every
/// subset: `(proximity, j, m)`.
pub fn literal_morphism(src: &ProximityLattice, tgt: &ProximityLattice, t: &Relation) -> (bool, bool, bool) {
    let (l, m) = (src.lattice(), tgt.lattice());
    let (n, k) = (l.len(), m.len());
    let rinv = src.relation().converse();
    let sinv = tgt.relation().converse();
    let absorb = rinv.compose(t).unwrap() == *t && t.compose(&sinv).unwrap() == *t;
    let target_joins = subsets(k).all(|b| (0..n).all(|a| t.contains(a, m.join_all(b.iter().copied())) == b.iter().all(|&x| t.contains(a, x))));
    let source_meets = subsets(n).all(|s| (0..k).all(|b| t.contains(l.meet_all(s.iter().copied()), b) == s.iter().all(|&a| t.contains(a, b))));
    let proximity = absorb && target_joins && source_meets;
    // ⋁A T b gives a finite C ⊆ T[A] with b S ⋁C
    let j = subsets(n).all(|a| {
        let image: Vec<usize> = (0..k).filter(|&c| a.iter().any(|&x| t.contains(x, c))).collect();
        (0..k).all(|b| {
            !t.contains(l.join_all(a.iter().copied()), b)
                || subsets(image.len()).any(|pick| tgt.related(b, m.join_all(pick.iter().map(|&i| image[i]))))
        })
    });
    // a T ⋀B gives a finite C ⊆ T⁻¹[B] with ⋀C R a
    let mm = subsets(k).all(|b| {
        let pre: Vec<usize> = (0..n).filter(|&c| b.iter().any(|&y| t.contains(c, y))).collect();
        (0..n).all(|a| {
            !t.contains(a, m.meet_all(b.iter().copied()))
                || subsets(pre.len()).any(|pick| src.related(l.meet_all(pick.iter().map(|&i| pre[i])), a))
        })
    });
    (proximity, proximity && j, proximity && mm)
}

/// Fixtures together with every proximity lattice on C2, C3, B2 and the
/// 4-chain, without repeats.
pub fn proximity_corpus() -> Vec<(String, ProximityLattice)> {
    let mut out: Vec<(String, ProximityLattice)> = proxlat::fixtures::all_proximity()
        .into_iter()
        .map(|(n, p)| (n.to_string(), p))
        .collect();
    let lattices = [
        ("C2", proxlat::fixtures::lattice("C2").unwrap()),
        ("C3", proxlat::fixtures::lattice("C3").unwrap()),
        ("B2", proxlat::fixtures::lattice("B2").unwrap()),
        ("C4", chain(4)),
    ];
    for (name, l) in lattices {
        for (i, p) in all_proximity_relations(&l).into_iter().enumerate() {
            if !out.iter().any(|(_, q)| *q == p) {
                out.push((format!("{name}#{i}"), p));
            }
        }
    }
    out
}
