mod common;

use common::{by_order, literal_morphism, proximity_corpus, small_lattices};
use proxlat::fixtures;
use proxlat::lattice::{all_maps, is_homomorphism};
use proxlat::proximity::{
    enumerate_morphisms, functor_f, functor_g, identity_morphism, round_ideal_lattice, transpose_homomorphism,
    transpose_morphism, verify_morphism, verify_morphism_exhaustive, MorphismClass,
};
use proxlat::{LatticeMap, ProximityLattice, ProximityMorphism, Relation};

fn join_strong_fixtures() -> Vec<(&'static str, ProximityLattice)> {
    fixtures::all_proximity().into_iter().filter(|(_, p)| p.is_join_strong()).collect()
}

fn class_of(t: &(bool, bool, bool)) -> MorphismClass {
    MorphismClass {
        proximity: t.0,
        j: t.1,
        m: t.2,
    }
}

#[test]
fn classification_matches_literal_definition() {
    // every relation between fixtures with at most twelve cells
    let all = fixtures::all_proximity();
    let mut checked = 0;
    for (sn, src) in &all {
        for (tn, tgt) in &all {
            let (n, k) = (src.len(), tgt.len());
            if n * k > 12 {
                continue;
            }
            for mask in 0..1u64 << (n * k) {
                let t = Relation::from_mask(n, k, mask);
                let report = verify_morphism(src, tgt, &t).unwrap();
                let lit = literal_morphism(src, tgt, &t);
                assert_eq!(report.class(), class_of(&lit), "{sn} -> {tn}: {t:?}");
                assert!(report.characterizations_agree(), "{sn} -> {tn}: {t:?}");
                let slow = verify_morphism_exhaustive(src, tgt, &t).unwrap();
                assert_eq!(slow.class(), report.class());
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn enumeration_is_complete_and_sound() {
    let corpus = proximity_corpus();
    for (sn, src) in corpus.iter().filter(|(_, p)| p.len() <= 3) {
        for (tn, tgt) in corpus.iter().filter(|(_, p)| p.len() <= 4) {
            let (n, k) = (src.len(), tgt.len());
            if n * k > 12 {
                continue;
            }
            let brute: Vec<Relation> = (0..1u64 << (n * k))
                .map(|mask| Relation::from_mask(n, k, mask))
                .filter(|t| literal_morphism(src, tgt, t).0)
                .collect();
            let mut listed: Vec<Relation> = enumerate_morphisms(src, tgt).into_iter().map(|m| m.relation).collect();
            listed.sort_by_key(|r| format!("{r:?}"));
            let mut brute = brute;
            brute.sort_by_key(|r| format!("{r:?}"));
            assert_eq!(listed, brute, "{sn} -> {tn}");
        }
    }
}

#[test]
fn identity_is_the_converse_relation() {
    for (name, p) in join_strong_fixtures() {
        let id = identity_morphism(&p).unwrap();
        assert!(id.class.j, "{name}");
        assert_eq!(id.relation, p.relation().converse(), "{name}");
        assert_eq!(id.relation.compose(&id.relation).unwrap(), id.relation, "{name}");
    }
    // on C3R, R itself is not a morphism
    let c3r = fixtures::proximity("C3R").unwrap();
    assert!(!verify_morphism(&c3r, &c3r, c3r.relation()).unwrap().proximity);
}

#[test]
fn category_laws_on_the_corpus() {
    let objects = join_strong_fixtures();
    let mut composites = 0;
    for (an, a) in &objects {
        for (bn, b) in &objects {
            let ab: Vec<ProximityMorphism> = enumerate_morphisms(a, b).into_iter().filter(|t| t.class.j).collect();
            let (id_a, id_b) = (identity_morphism(a).unwrap(), identity_morphism(b).unwrap());
            for t in &ab {
                assert_eq!(id_a.then(t).unwrap().relation, t.relation, "{an} -> {bn}");
                assert_eq!(t.then(&id_b).unwrap().relation, t.relation, "{an} -> {bn}");
            }
            for (cn, c) in &objects {
                if a.len() * b.len() * c.len() > 64 {
                    continue;
                }
                let bc: Vec<ProximityMorphism> = enumerate_morphisms(b, c).into_iter().filter(|t| t.class.j).collect();
                for t in &ab {
                    for u in &bc {
                        let tu = t.then(u).unwrap();
                        assert!(tu.class.j, "{an} -> {bn} -> {cn}");
                        composites += 1;
                    }
                }
            }
        }
    }
    assert!(composites > 100, "{composites}");
}

#[test]
fn composition_is_associative() {
    let objects = join_strong_fixtures();
    let c2 = fixtures::proximity("C2").unwrap();
    let c3r = fixtures::proximity("C3R").unwrap();
    for (_, p) in &objects {
        if p.len() > 3 {
            continue;
        }
        let ts = enumerate_morphisms(&c2, p);
        let us = enumerate_morphisms(p, &c3r);
        let vs = enumerate_morphisms(&c3r, &c2);
        for t in &ts {
            for u in &us {
                for v in &vs {
                    let left = t.then(u).unwrap().then(v).unwrap();
                    let right = t.then(&u.then(v).unwrap()).unwrap();
                    assert_eq!(left.relation, right.relation);
                }
            }
        }
    }
}

#[test]
fn functor_f_detects_homomorphisms() {
    for (ln, l) in small_lattices() {
        for (mn, m) in small_lattices() {
            if l.len() > 4 || m.len() > 4 {
                continue;
            }
            for table in all_maps(&l, &m) {
                let h = LatticeMap::new(l.clone(), m.clone(), table).unwrap();
                let f = functor_f(&h);
                assert_eq!(f.class.j, is_homomorphism(&h), "{ln} -> {mn}: {:?}", h.table);
                // a proximity morphism exactly when meets are preserved
                let meets = l.elements().all(|a| l.elements().all(|b| h.apply(l.meet(a, b)) == m.meet(h.apply(a), h.apply(b))))
                    && h.apply(l.top()) == m.top();
                assert_eq!(f.class.proximity, meets, "{ln} -> {mn}: {:?}", h.table);
            }
        }
    }
}

fn homomorphisms(l: &proxlat::FiniteLattice, m: &proxlat::FiniteLattice) -> Vec<LatticeMap> {
    all_maps(l, m)
        .into_iter()
        .map(|t| LatticeMap::new(l.clone(), m.clone(), t).unwrap())
        .filter(is_homomorphism)
        .collect()
}

#[test]
fn functor_f_preserves_composition() {
    let lattices: Vec<_> = small_lattices().into_iter().filter(|(_, l)| l.len() <= 4).collect();
    for (_, l) in &lattices {
        let id = functor_f(&LatticeMap::identity(l));
        assert_eq!(id.relation, by_order(l).relation().converse());
        for (_, m) in &lattices {
            for (_, n) in &lattices {
                for h in homomorphisms(l, m) {
                    for k in homomorphisms(m, n) {
                        let kh = h.then(&k).unwrap();
                        assert_eq!(functor_f(&kh).relation, functor_f(&h).then(&functor_f(&k)).unwrap().relation);
                    }
                }
            }
        }
    }
}

#[test]
fn functor_g_preserves_identities_and_composition() {
    let objects = join_strong_fixtures();
    for (name, p) in &objects {
        let g = functor_g(&identity_morphism(p).unwrap()).unwrap();
        assert_eq!(g, LatticeMap::identity(&g.source), "{name}");
    }
    for (_, a) in &objects {
        for (_, b) in &objects {
            for (_, c) in &objects {
                if a.len() * b.len() * c.len() > 48 {
                    continue;
                }
                for t in enumerate_morphisms(a, b).iter().filter(|t| t.class.j) {
                    let gt = functor_g(t).unwrap();
                    assert!(is_homomorphism(&gt));
                    for u in enumerate_morphisms(b, c).iter().filter(|u| u.class.j) {
                        let gu = functor_g(u).unwrap();
                        assert_eq!(functor_g(&t.then(u).unwrap()).unwrap(), gt.then(&gu).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn transposes_round_trip() {
    let sources: Vec<_> = small_lattices().into_iter().filter(|(_, l)| l.len() <= 4).collect();
    let mut pairs = 0;
    for (ln, l) in &sources {
        for (mn, m) in join_strong_fixtures() {
            let ridl = round_ideal_lattice(&m).unwrap();
            let js: Vec<ProximityMorphism> =
                enumerate_morphisms(&by_order(l), &m).into_iter().filter(|t| t.class.j).collect();
            let homs = homomorphisms(l, &ridl.lattice);
            // both directions are bijections between the two sets
            assert_eq!(js.len(), homs.len(), "{ln} -> {mn}");
            for t in &js {
                let f = transpose_morphism(t).unwrap();
                assert!(is_homomorphism(&f));
                assert_eq!(transpose_homomorphism(&m, &f).unwrap(), *t, "{ln} -> {mn}");
            }
            for f in &homs {
                let t = transpose_homomorphism(&m, f).unwrap();
                assert!(t.class.j, "{ln} -> {mn}");
                assert_eq!(transpose_morphism(&t).unwrap(), *f, "{ln} -> {mn}");
                pairs += 1;
            }
        }
    }
    assert!(pairs > 50, "{pairs}");
}

#[test]
fn transpose_rejects_malformed_input() {
    let c3r = fixtures::proximity("C3R").unwrap();
    // source relation is not the order
    let id = identity_morphism(&c3r).unwrap();
    assert!(transpose_morphism(&id).is_err());
    let c2 = fixtures::lattice("C2").unwrap();
    let ridl = round_ideal_lattice(&c3r).unwrap();
    let wrong_target = LatticeMap::identity(&c2);
    assert!(transpose_homomorphism(&fixtures::proximity("C3").unwrap(), &wrong_target).is_err());
    // constant top does not preserve the bottom
    let top = LatticeMap::new(c2.clone(), ridl.lattice.clone(), vec![ridl.lattice.top(); 2]).unwrap();
    assert!(transpose_homomorphism(&c3r, &top).is_err());
}
