mod common;

use common::proximity_corpus;
use proptest::prelude::*;
use proxlat::canext::{
    check_polarity_properties, check_uniqueness, compare_with_macneille, concept_lattice, pi_extension,
    pi_extension_via_macneille, pi_sigma_comparison, sigma_extension, verify_extension, CanonicalExtension,
    ExtensionKind, ExtensionReport, Polarity,
};
use proxlat::fixtures;
use proxlat::lattice::{find_isomorphism_with, lattice_of_sets};
use proxlat::proximity::{round_subsets, RoundKind};
use proxlat::{Bits, FiniteLattice, ProximityLattice, Relation};

fn polarity_of(z: Relation) -> Polarity {
    let xs = (0..z.source_len()).map(|x| format!("x{x}")).collect();
    let ys = (0..z.target_len()).map(|y| format!("y{y}")).collect();
    Polarity::new(xs, ys, z).unwrap()
}

/// `u` closed under `r ∘ l`, found by trying every subset of `X`.
fn literal_closed_sets(p: &Polarity) -> Vec<Bits> {
    let (nx, ny) = (p.x_len(), p.y_len());
    let l = |u: Bits| -> Bits { (0..ny).filter(|&y| u.iter().all(|x| p.z.contains(x, y))).collect() };
    let r = |v: Bits| -> Bits { (0..nx).filter(|&x| v.iter().all(|y| p.z.contains(x, y))).collect() };
    let mut out: Vec<Bits> = (0..1u64 << nx).map(Bits::from_mask).filter(|&u| r(l(u)) == u).collect();
    out.sort();
    out
}

fn random_polarity() -> impl Strategy<Value = Polarity> {
    (0usize..=4, 0usize..=4, any::<u64>())
        .prop_map(|(nx, ny, mask)| polarity_of(Relation::from_mask(nx, ny, mask)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_a_closure_operator(p in random_polarity(), a in any::<u64>(), b in any::<u64>()) {
        let full = Bits::full(p.x_len());
        let (u, v) = (Bits::from_mask(a) & full, Bits::from_mask(b) & full);
        let (cu, cv) = (p.closure(u), p.closure(v));
        prop_assert!(u.is_subset(&cu));
        prop_assert_eq!(p.closure(cu), cu);
        if u.is_subset(&v) {
            prop_assert!(cu.is_subset(&cv));
        }
        // Galois connection: l(u) ⊇ w iff u ⊆ r(w)
        let w = Bits::from_mask(a.rotate_left(17)) & Bits::full(p.y_len());
        prop_assert_eq!(w.is_subset(&p.lower(u)), u.is_subset(&p.upper(w)));
    }

    #[test]
    fn concept_lattice_is_the_lattice_of_closed_sets(p in random_polarity()) {
        let c = concept_lattice(&p).unwrap();
        let mut closed = c.closed.clone();
        closed.sort();
        prop_assert_eq!(closed, literal_closed_sets(&p));
        let report = check_polarity_properties(&p, &c.lattice, &c.f, &c.g);
        prop_assert!(report.holds());
        for x in 0..p.x_len() {
            for y in 0..p.y_len() {
                prop_assert_eq!(c.lattice.leq(c.f[x], c.g[y]), p.z.contains(x, y));
            }
        }
    }

    #[test]
    fn concept_lattice_is_the_macneille_completion(p in random_polarity()) {
        let c = concept_lattice(&p).unwrap();
        let m = compare_with_macneille(&p, &c).unwrap();
        prop_assert!(m.report.holds());
        prop_assert!(m.isomorphism.is_some());
    }
}

#[test]
fn fixture_polarities_agree_with_macneille() {
    for (name, p) in fixtures::all_proximity() {
        let polarity = Polarity::of_proximity(&p);
        let c = concept_lattice(&polarity).unwrap();
        assert!(check_polarity_properties(&polarity, &c.lattice, &c.f, &c.g).holds(), "{name}");
        let m = compare_with_macneille(&polarity, &c).unwrap();
        assert!(m.report.holds(), "{name}");
        let phi = m.isomorphism.expect("commuting isomorphism");
        for (x, &fx) in m.f.iter().enumerate() {
            assert_eq!(phi[fx], c.f[x], "{name}");
        }
        for (y, &gy) in m.g.iter().enumerate() {
            assert_eq!(phi[gy], c.g[y], "{name}");
        }
    }
}

#[test]
fn concept_lattices_of_fixture_polarities() {
    let c3r = Polarity::of_proximity(&fixtures::proximity("C3R").unwrap());
    assert_eq!((c3r.x_len(), c3r.y_len()), (2, 2));
    assert_eq!(concept_lattice(&c3r).unwrap().lattice.len(), 2);
    let full2 = Polarity::of_proximity(&fixtures::proximity("FULL2").unwrap());
    assert_eq!(concept_lattice(&full2).unwrap().lattice.len(), 1);
}

/// The defining properties of a canonical extension, from scratch.
fn literal_report(p: &ProximityLattice, c: &FiniteLattice, h: &[usize]) -> (bool, bool, bool, bool, bool, bool) {
    let l = p.lattice();
    let homomorphism = h[l.top()] == c.top()
        && h[l.bot()] == c.bot()
        && l.elements().all(|a| {
            l.elements().all(|b| h[l.meet(a, b)] == c.meet(h[a], h[b]) && h[l.join(a, b)] == c.join(h[a], h[b]))
        });
    let increasing = l.elements().all(|a| l.elements().all(|b| !p.related(a, b) || c.leq(h[a], h[b])));
    let filters: Vec<Bits> = round_subsets(p, RoundKind::Filter).into_iter().map(|s| s.members).collect();
    let ideals: Vec<Bits> = round_subsets(p, RoundKind::Ideal).into_iter().map(|s| s.members).collect();
    let meet_of = |f: &Bits| c.meet_all(f.iter().map(|a| h[a]));
    let join_of = |i: &Bits| c.join_all(i.iter().map(|a| h[a]));
    let dense = c.elements().all(|u| {
        c.join_all(filters.iter().map(meet_of).filter(|&m| c.leq(m, u))) == u
            && c.meet_all(ideals.iter().map(join_of).filter(|&j| c.leq(u, j))) == u
    });
    let compact = filters
        .iter()
        .all(|f| ideals.iter().all(|i| !c.leq(meet_of(f), join_of(i)) || f.intersects(i)));
    let join_preserving = l.elements().all(|a| h[a] == c.join_all(p.below(a).iter().map(|b| h[b])));
    let meet_preserving = l.elements().all(|a| h[a] == c.meet_all(p.above(a).iter().map(|b| h[b])));
    (homomorphism, increasing, dense, compact, join_preserving, meet_preserving)
}

fn flags(r: &ExtensionReport) -> (bool, bool, bool, bool, bool, bool) {
    (r.homomorphism, r.r_increasing, r.dense, r.compact, r.join_preserving, r.meet_preserving)
}

#[test]
fn verify_extension_matches_definition_on_all_maps_into_small_lattices() {
    let targets = [fixtures::lattice("C2").unwrap(), fixtures::lattice("C3").unwrap(), fixtures::lattice("B2").unwrap()];
    for (name, p) in fixtures::all_proximity() {
        for c in &targets {
            for table in proxlat::lattice::all_maps(p.lattice(), c) {
                let report = verify_extension(&p, c, &table);
                let lit = literal_report(&p, c, &table);
                assert_eq!(flags(&report), lit, "{name}: {table:?}");
            }
        }
    }
}

#[test]
fn extensions_exist_on_the_corpus() {
    let mut pis = 0;
    let mut sigmas = 0;
    for (name, p) in proximity_corpus() {
        if p.is_join_strong() {
            let e = pi_extension(&p).unwrap();
            let r = verify_extension(&p, &e.lattice, &e.embed);
            assert!(r.is_pi(), "{name}: {r:?}");
            let lit = literal_report(&p, &e.lattice, &e.embed);
            assert!(lit.0 && lit.1 && lit.2 && lit.3 && lit.4, "{name}");
            assert!(e.generators_are_round_elements(), "{name}");
            pis += 1;
        } else {
            assert!(pi_extension(&p).is_err(), "{name}");
        }
        if p.is_meet_strong() {
            let e = sigma_extension(&p).unwrap();
            let r = verify_extension(&p, &e.lattice, &e.embed);
            assert!(r.is_sigma(), "{name}: {r:?}");
            let lit = literal_report(&p, &e.lattice, &e.embed);
            assert!(lit.0 && lit.1 && lit.2 && lit.3 && lit.5, "{name}");
            sigmas += 1;
        } else {
            assert!(sigma_extension(&p).is_err(), "{name}");
        }
    }
    assert!(pis >= 10 && sigmas >= 10);
}

#[test]
fn fixture_extension_values() {
    let c3r = fixtures::proximity("C3R").unwrap();
    let pi = pi_extension(&c3r).unwrap();
    let (c, h) = (&pi.lattice, &pi.embed);
    assert_eq!(c.len(), 2);
    assert_eq!(h, &vec![c.bot(), c.bot(), c.top()]);
    let sigma = sigma_extension(&c3r).unwrap();
    let (s, k) = (&sigma.lattice, &sigma.embed);
    assert_eq!(k, &vec![s.bot(), s.top(), s.top()]);

    let full2 = fixtures::proximity("FULL2").unwrap();
    let pi = pi_extension(&full2).unwrap();
    assert_eq!(pi.lattice.len(), 1);
    assert_eq!(pi.embed, vec![0, 0]);
}

#[test]
fn pi_extension_is_unique() {
    for (name, p) in proximity_corpus() {
        if !p.is_join_strong() {
            continue;
        }
        let e1 = pi_extension(&p).unwrap();
        let e2 = pi_extension_via_macneille(&p).unwrap();
        assert!(e2.report().is_pi(), "{name}");
        let phi = check_uniqueness(&e1, &e2).unwrap().expect("isomorphism");
        for a in p.lattice().elements() {
            assert_eq!(phi.apply(e1.embed[a]), e2.embed[a], "{name}");
        }
    }
}

#[test]
fn reflexive_iff_pi_and_sigma_agree() {
    let mut negatives = 0;
    for (name, p) in proximity_corpus() {
        if !p.is_doubly_strong() {
            continue;
        }
        let r = pi_sigma_comparison(&p).unwrap();
        assert_eq!(r.reflexive, p.is_reflexive(), "{name}");
        assert_eq!(r.reflexive, r.isomorphism_exists, "{name}");
        assert!(r.consistent, "{name}");
        negatives += usize::from(!r.reflexive);
    }
    assert!(negatives >= 1);
    let c3r = fixtures::proximity("C3R").unwrap();
    let r = pi_sigma_comparison(&c3r).unwrap();
    let a = c3r.lattice().index_of("a").unwrap();
    assert!(!r.reflexive && !r.isomorphism_exists);
    assert_eq!(r.irreflexive_witness, Some(a));
    assert_eq!(r.embedding_witness, Some(a));
}

/// The σ-extension read off the polarity of round ideals, round filters and
/// "meets", in the opposite order, with `a ↦ g(R[a])`.
fn explicit_sigma(p: &ProximityLattice) -> (FiniteLattice, Vec<usize>) {
    let ideals = round_subsets(p, RoundKind::Ideal);
    let filters = round_subsets(p, RoundKind::Filter);
    let z = Relation::from_fn(ideals.len(), filters.len(), |i, f| ideals[i].members.intersects(&filters[f].members));
    let polarity = polarity_of(z);
    let closed = literal_closed_sets(&polarity);
    let (lattice, sets) = lattice_of_sets(closed, |s| format!("{s:?}")).unwrap();
    let r_of = |f: usize| -> Bits { (0..ideals.len()).filter(|&i| polarity.z.contains(i, f)).collect() };
    let k = p
        .lattice()
        .elements()
        .map(|a| {
            let f = filters.iter().position(|f| f.members == p.above(a)).unwrap();
            sets.iter().position(|s| *s == r_of(f)).unwrap()
        })
        .collect();
    (lattice.opposite(), k)
}

#[test]
fn sigma_extension_matches_explicit_polarity() {
    for (name, p) in proximity_corpus() {
        if !p.is_meet_strong() {
            continue;
        }
        let (lattice, k) = explicit_sigma(&p);
        let report = verify_extension(&p, &lattice, &k);
        assert!(report.is_sigma(), "{name}: {report:?}");
        let sigma = sigma_extension(&p).unwrap();
        let fixed: Vec<(usize, usize)> = k.iter().copied().zip(sigma.embed.iter().copied()).collect();
        assert!(find_isomorphism_with(&lattice, &sigma.lattice, &fixed).is_some(), "{name}");
        let explicit = CanonicalExtension {
            kind: ExtensionKind::Sigma,
            embed: k,
            lattice,
            ..sigma.clone()
        };
        assert!(check_uniqueness(&sigma, &explicit).unwrap().is_some(), "{name}");
    }
}
