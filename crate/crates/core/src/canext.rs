//! Polarities, concept lattices and the π- and σ-canonical extensions of
//! proximity lattices.
//!
//! The π-extension of a join-strong `(L, R)` is the lattice of Galois-closed
//! sets of the polarity (round filters, round ideals, "meets"), with
//! `h(a) = g(R⁻¹[a]) = {F : a ∈ F}`. The σ-extension of a meet-strong
//! `(L, R)` is the π-extension of `(L^op, R⁻¹)` read in the opposite order.

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{
    dedekind_macneille, find_isomorphism_with, intersection_closure, is_homomorphism, lattice_of_sets,
    FiniteLattice, LatticeMap, MacNeille, Preorder,
};
use crate::proximity::{round_subsets, ProximityLattice, RoundKind};
use crate::relation::Relation;

/// A triple `(X, Y, Z)` with `Z ⊆ X × Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarity {
    pub x_names: Vec<String>,
    pub y_names: Vec<String>,
    pub z: Relation,
}

impl Polarity {
    pub fn new(x_names: Vec<String>, y_names: Vec<String>, z: Relation) -> Result<Self> {
        if z.source_len() != x_names.len() || z.target_len() != y_names.len() {
            return Err(Error::DimensionMismatch("polarity relation shape".into()));
        }
        Ok(Polarity { x_names, y_names, z })
    }

    /// X = round filters, Y = round ideals, `F Z I` iff `F ∩ I ≠ ∅`.
    pub fn of_proximity(p: &ProximityLattice) -> Polarity {
        let l = p.lattice();
        let filters = round_subsets(p, RoundKind::Filter);
        let ideals = round_subsets(p, RoundKind::Ideal);
        let x_names = filters
            .iter()
            .map(|f| format!("↑{}", l.name(l.meet_all(f.members.iter()))))
            .collect();
        let y_names = ideals
            .iter()
            .map(|i| format!("↓{}", l.name(l.join_all(i.members.iter()))))
            .collect();
        let z = Relation::from_fn(filters.len(), ideals.len(), |x, y| {
            filters[x].members.intersects(&ideals[y].members)
        });
        Polarity { x_names, y_names, z }
    }

    pub fn x_len(&self) -> usize {
        self.x_names.len()
    }

    pub fn y_len(&self) -> usize {
        self.y_names.len()
    }

    /// `l(u) = {y : x Z y for all x ∈ u}`
    pub fn lower(&self, u: Bits) -> Bits {
        u.iter().fold(Bits::full(self.y_len()), |acc, x| acc & self.z.image(x))
    }

    /// `r(v) = {x : x Z y for all y ∈ v}`
    pub fn upper(&self, v: Bits) -> Bits {
        (0..self.x_len()).filter(|&x| v.is_subset(&self.z.image(x))).collect()
    }

    /// `c = r ∘ l`
    pub fn closure(&self, u: Bits) -> Bits {
        self.upper(self.lower(u))
    }

    /// The preorder on `X ⊔ Y` (X first) in which `f` and `g` land
    /// inside the concept lattice: `x ≼ y` iff `x Z y`, and the other three
    /// cases through the derived inequalities between generators.
    pub fn preorder(&self) -> Preorder {
        let (nx, ny) = (self.x_len(), self.y_len());
        let z = &self.z;
        let mut up = vec![Bits::empty(); nx + ny];
        for x1 in 0..nx {
            for x2 in 0..nx {
                if z.image(x2).is_subset(&z.image(x1)) {
                    up[x1].insert(x2);
                }
            }
            for y in z.image(x1).iter() {
                up[x1].insert(nx + y);
            }
        }
        for y1 in 0..ny {
            let below1 = z.preimage(y1);
            for y2 in 0..ny {
                if below1.is_subset(&z.preimage(y2)) {
                    up[nx + y1].insert(nx + y2);
                }
            }
            for x in 0..nx {
                let ok = below1.iter().all(|x2| z.image(x).is_subset(&z.image(x2)));
                if ok {
                    up[nx + y1].insert(x);
                }
            }
        }
        let names = self
            .x_names
            .iter()
            .chain(&self.y_names)
            .cloned()
            .collect();
        Preorder::new(names, up).expect("rows sized to X ⊔ Y")
    }
}

/// The complete lattice of closed subsets of `X` with the generator maps.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    pub lattice: FiniteLattice,
    /// `closed[i]` is the closed set represented by element `i`.
    pub closed: Vec<Bits>,
    /// `f(x) = c({x})`
    pub f: Vec<usize>,
    /// `g(y) = r({y})`
    pub g: Vec<usize>,
}

/// Closed sets are exactly the sets `r(v)`, which are intersections of the
/// sets `r({y})` (and `r(∅) = X`), so they are generated by intersection.
pub fn concept_lattice(p: &Polarity) -> Result<ConceptLattice> {
    let mut family: Vec<Bits> = (0..p.y_len()).map(|y| p.upper(Bits::singleton(y))).collect();
    family.push(Bits::full(p.x_len()));
    let family = intersection_closure(family);
    let (lattice, closed) = lattice_of_sets(family, |set| {
        let names: Vec<&str> = set.iter().map(|x| p.x_names[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    })?;
    let find = |set: Bits| {
        closed
            .iter()
            .position(|c| *c == set)
            .ok_or_else(|| Error::InvariantViolated(format!("{set:?} is not closed")))
    };
    let f = (0..p.x_len()).map(|x| find(p.closure(Bits::singleton(x)))).collect::<Result<_>>()?;
    let g = (0..p.y_len()).map(|y| find(p.upper(Bits::singleton(y)))).collect::<Result<_>>()?;
    Ok(ConceptLattice { lattice, closed, f, g })
}

/// The three defining properties of a concept lattice with generator maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolarityReport {
    /// every element is the join of the `f(x)` below it
    pub join_generated: bool,
    /// every element is the meet of the `g(y)` above it
    pub meet_generated: bool,
    /// `f(x) <= g(y)` iff `x Z y`
    pub order_matches_relation: bool,
}

impl PolarityReport {
    pub fn holds(&self) -> bool {
        self.join_generated && self.meet_generated && self.order_matches_relation
    }
}

/// Checks the generator properties of `(lattice, f, g)` against `p`.
pub fn check_polarity_properties(p: &Polarity, lattice: &FiniteLattice, f: &[usize], g: &[usize]) -> PolarityReport {
    let join_generated = lattice.elements().all(|u| {
        lattice.join_all(f.iter().copied().filter(|&fx| lattice.leq(fx, u))) == u
    });
    let meet_generated = lattice.elements().all(|u| {
        lattice.meet_all(g.iter().copied().filter(|&gy| lattice.leq(u, gy))) == u
    });
    let order_matches_relation = (0..p.x_len())
        .all(|x| (0..p.y_len()).all(|y| lattice.leq(f[x], g[y]) == p.z.contains(x, y)));
    PolarityReport {
        join_generated,
        meet_generated,
        order_matches_relation,
    }
}

/// Completion of [`Polarity::preorder`] with its generator maps, and the
/// isomorphism to the concept lattice commuting with them, if any.
#[derive(Clone, Debug)]
pub struct MacNeilleComparison {
    pub completion: MacNeille,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub report: PolarityReport,
    /// Table of an isomorphism completion → concept lattice with
    /// `φ ∘ f'' = f` and `φ ∘ g'' = g`.
    pub isomorphism: Option<Vec<usize>>,
}

pub fn compare_with_macneille(p: &Polarity, concepts: &ConceptLattice) -> Result<MacNeilleComparison> {
    let completion = dedekind_macneille(&p.preorder())?;
    let nx = p.x_len();
    let f: Vec<usize> = (0..nx).map(|x| completion.embedding[x]).collect();
    let g: Vec<usize> = (0..p.y_len()).map(|y| completion.embedding[nx + y]).collect();
    let report = check_polarity_properties(p, &completion.lattice, &f, &g);
    let fixed: Vec<(usize, usize)> = f
        .iter()
        .zip(&concepts.f)
        .chain(g.iter().zip(&concepts.g))
        .map(|(&a, &b)| (a, b))
        .collect();
    let isomorphism = find_isomorphism_with(&completion.lattice, &concepts.lattice, &fixed);
    Ok(MacNeilleComparison {
        completion,
        f,
        g,
        report,
        isomorphism,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    Pi,
    Sigma,
}

impl ExtensionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionKind::Pi => "pi",
            ExtensionKind::Sigma => "sigma",
        }
    }
}

/// A canonical extension `embed : L → C`.
#[derive(Clone, Debug)]
pub struct CanonicalExtension {
    pub kind: ExtensionKind,
    pub source: ProximityLattice,
    pub lattice: FiniteLattice,
    /// Each element of `C` as a set: a closed subset of `X` for extensions
    /// built from a polarity, a cut for the Dedekind-MacNeille route.
    pub sets: Vec<Bits>,
    pub polarity: Polarity,
    /// Generator maps of the polarity into `C`.
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub embed: Vec<usize>,
}

impl CanonicalExtension {
    pub fn embedding(&self) -> LatticeMap {
        LatticeMap {
            source: self.source.lattice().clone(),
            target: self.lattice.clone(),
            table: self.embed.clone(),
        }
    }

    pub fn report(&self) -> ExtensionReport {
        verify_extension(&self.source, &self.lattice, &self.embed)
    }

    /// `f(F) = ⋀h[F]` for every round filter and `g(I) = ⋁h[I]` for every
    /// round ideal (π-extensions built from the polarity).
    pub fn generators_are_round_elements(&self) -> bool {
        let c = &self.lattice;
        let (filters, ideals) = match self.kind {
            ExtensionKind::Pi => (
                round_subsets(&self.source, RoundKind::Filter),
                round_subsets(&self.source, RoundKind::Ideal),
            ),
            ExtensionKind::Sigma => (
                round_subsets(&self.source, RoundKind::Ideal),
                round_subsets(&self.source, RoundKind::Filter),
            ),
        };
        let (meet, join): (&dyn Fn(Bits) -> usize, &dyn Fn(Bits) -> usize) = match self.kind {
            ExtensionKind::Pi => (
                &|s: Bits| c.meet_all(s.iter().map(|a| self.embed[a])),
                &|s: Bits| c.join_all(s.iter().map(|a| self.embed[a])),
            ),
            // the polarity lives on the opposite lattice
            ExtensionKind::Sigma => (
                &|s: Bits| c.join_all(s.iter().map(|a| self.embed[a])),
                &|s: Bits| c.meet_all(s.iter().map(|a| self.embed[a])),
            ),
        };
        filters.iter().zip(&self.f).all(|(s, &fx)| meet(s.members) == fx)
            && ideals.iter().zip(&self.g).all(|(s, &gy)| join(s.members) == gy)
    }
}

fn build_pi(p: &ProximityLattice) -> Result<CanonicalExtension> {
    p.require_join_strong()?;
    let polarity = Polarity::of_proximity(p);
    let concepts = concept_lattice(&polarity)?;
    let ideals = round_subsets(p, RoundKind::Ideal);
    let filters = round_subsets(p, RoundKind::Filter);
    let embed = p
        .lattice()
        .elements()
        .map(|a| {
            let below = p.below(a);
            let y = ideals
                .iter()
                .position(|i| i.members == below)
                .ok_or_else(|| Error::InvariantViolated("R⁻¹[a] is not a round ideal".into()))?;
            let h = concepts.g[y];
            let explicit: Bits = (0..filters.len()).filter(|&x| filters[x].members.contains(a)).collect();
            if concepts.closed[h] != explicit {
                return Err(Error::InvariantViolated(format!(
                    "h({}) differs from the set of round filters containing it",
                    p.lattice().name(a)
                )));
            }
            Ok(h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CanonicalExtension {
        kind: ExtensionKind::Pi,
        source: p.clone(),
        lattice: concepts.lattice,
        sets: concepts.closed,
        polarity,
        f: concepts.f,
        g: concepts.g,
        embed,
    })
}

/// π-extension through the polarity of round filters and round ideals.
pub fn pi_extension(p: &ProximityLattice) -> Result<CanonicalExtension> {
    let e = build_pi(p)?;
    if !is_homomorphism(&e.embedding()) {
        return Err(Error::InvariantViolated("h is not a lattice homomorphism".into()));
    }
    Ok(e)
}

/// σ-extension: the π-extension of `(L^op, R⁻¹)` with the order reversed
/// and the same embedding table.
pub fn sigma_extension(p: &ProximityLattice) -> Result<CanonicalExtension> {
    if !p.is_meet_strong() {
        return Err(Error::NotMeetStrong);
    }
    let dual = build_pi(&p.opposite())?;
    let e = CanonicalExtension {
        kind: ExtensionKind::Sigma,
        source: p.clone(),
        lattice: dual.lattice.opposite(),
        sets: dual.sets,
        polarity: dual.polarity,
        f: dual.f,
        g: dual.g,
        embed: dual.embed,
    };
    if !is_homomorphism(&e.embedding()) {
        return Err(Error::InvariantViolated("k is not a lattice homomorphism".into()));
    }
    if !e.report().meet_preserving {
        return Err(Error::InvariantViolated("k is not R-meet-preserving".into()));
    }
    Ok(e)
}

/// π-extension obtained as the Dedekind-MacNeille completion of the
/// polarity preorder, with `h(a) = g''(R⁻¹[a])`. Independent of
/// [`concept_lattice`]; used to cross-check uniqueness.
pub fn pi_extension_via_macneille(p: &ProximityLattice) -> Result<CanonicalExtension> {
    p.require_join_strong()?;
    let polarity = Polarity::of_proximity(p);
    let completion = dedekind_macneille(&polarity.preorder())?;
    let nx = polarity.x_len();
    let ideals = round_subsets(p, RoundKind::Ideal);
    let embed = p
        .lattice()
        .elements()
        .map(|a| {
            let below = p.below(a);
            ideals
                .iter()
                .position(|i| i.members == below)
                .map(|y| completion.embedding[nx + y])
                .ok_or_else(|| Error::InvariantViolated("R⁻¹[a] is not a round ideal".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CanonicalExtension {
        kind: ExtensionKind::Pi,
        source: p.clone(),
        f: (0..nx).map(|x| completion.embedding[x]).collect(),
        g: (0..polarity.y_len()).map(|y| completion.embedding[nx + y]).collect(),
        lattice: completion.lattice,
        sets: completion.cuts,
        polarity,
        embed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionProperty {
    /// elements `[a, b]` of the source
    Homomorphism,
    /// elements `[a, b]` with `a R b`
    RIncreasing,
    /// element `[u]` of the extension
    Dense,
    /// elements `[m, n]`: round filter `↑m`, round ideal `↓n`
    Compact,
    /// element `[a]` of the source
    JoinPreserving,
    /// element `[a]` of the source
    MeetPreserving,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionWitness {
    pub property: ExtensionProperty,
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub homomorphism: bool,
    pub r_increasing: bool,
    pub dense: bool,
    /// Checked over round filter / round ideal pairs; equivalent to
    /// R-compactness when `r_increasing` holds.
    pub compact: bool,
    pub join_preserving: bool,
    pub meet_preserving: bool,
    /// `⋀h[F]` for each round filter, sorted and deduplicated.
    pub filter_elements: Vec<usize>,
    /// `⋁h[I]` for each round ideal, sorted and deduplicated.
    pub ideal_elements: Vec<usize>,
    pub witnesses: Vec<ExtensionWitness>,
}

impl ExtensionReport {
    pub fn is_pi(&self) -> bool {
        self.homomorphism && self.r_increasing && self.dense && self.compact && self.join_preserving
    }

    pub fn is_sigma(&self) -> bool {
        self.homomorphism && self.r_increasing && self.dense && self.compact && self.meet_preserving
    }

    pub fn is_kind(&self, kind: ExtensionKind) -> bool {
        match kind {
            ExtensionKind::Pi => self.is_pi(),
            ExtensionKind::Sigma => self.is_sigma(),
        }
    }

    pub fn witness(&self, property: ExtensionProperty) -> Option<&ExtensionWitness> {
        self.witnesses.iter().find(|w| w.property == property)
    }
}

/// Checks an arbitrary map `embed : L → C` against the defining properties
/// of canonical extensions. Nothing about how `C` was built is assumed.
pub fn verify_extension(source: &ProximityLattice, lattice: &FiniteLattice, embed: &[usize]) -> ExtensionReport {
    let (l, r, c) = (source.lattice(), source.relation(), lattice);
    assert_eq!(embed.len(), l.len(), "embedding table covers the source");
    let h = |a: usize| embed[a];
    let mut witnesses = Vec::new();
    let mut push = |property, elements, detail: &str| {
        witnesses.push(ExtensionWitness {
            property,
            elements,
            detail: detail.into(),
        })
    };

    let hom_failure = if h(l.top()) != c.top() {
        Some(vec![l.top()])
    } else if h(l.bot()) != c.bot() {
        Some(vec![l.bot()])
    } else {
        l.elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .find(|&(a, b)| h(l.meet(a, b)) != c.meet(h(a), h(b)) || h(l.join(a, b)) != c.join(h(a), h(b)))
            .map(|(a, b)| vec![a, b])
    };
    let homomorphism = hom_failure.is_none();
    if let Some(e) = hom_failure {
        push(ExtensionProperty::Homomorphism, e, "a bound, meet or join is not preserved");
    }

    let inc_failure = r.pairs().find(|&(a, b)| !c.leq(h(a), h(b)));
    let r_increasing = inc_failure.is_none();
    if let Some((a, b)) = inc_failure {
        push(ExtensionProperty::RIncreasing, vec![a, b], "a R b but h(a) is not below h(b)");
    }

    let filters = round_subsets(source, RoundKind::Filter);
    let ideals = round_subsets(source, RoundKind::Ideal);
    let filter_of: Vec<usize> = filters.iter().map(|f| c.meet_all(f.members.iter().map(h))).collect();
    let ideal_of: Vec<usize> = ideals.iter().map(|i| c.join_all(i.members.iter().map(h))).collect();
    let mut filter_elements = filter_of.clone();
    filter_elements.sort();
    filter_elements.dedup();
    let mut ideal_elements = ideal_of.clone();
    ideal_elements.sort();
    ideal_elements.dedup();

    let dense_failure = c.elements().find(|&u| {
        c.join_all(filter_elements.iter().copied().filter(|&x| c.leq(x, u))) != u
            || c.meet_all(ideal_elements.iter().copied().filter(|&y| c.leq(u, y))) != u
    });
    let dense = dense_failure.is_none();
    if let Some(u) = dense_failure {
        push(
            ExtensionProperty::Dense,
            vec![u],
            "u is not both a join of round filter elements and a meet of round ideal elements",
        );
    }

    let compact_failure = filters.iter().enumerate().find_map(|(i, f)| {
        ideals.iter().enumerate().find_map(|(j, id)| {
            (c.leq(filter_of[i], ideal_of[j]) && !f.members.intersects(&id.members)).then(|| {
                vec![
                    l.meet_all(f.members.iter()),
                    l.join_all(id.members.iter()),
                ]
            })
        })
    });
    let compact = compact_failure.is_none();
    if let Some(e) = compact_failure {
        push(
            ExtensionProperty::Compact,
            e,
            "⋀h[F] <= ⋁h[I] although the round filter and round ideal are disjoint",
        );
    }

    let join_failure = l
        .elements()
        .find(|&a| h(a) != c.join_all(r.preimage(a).iter().map(h)));
    let join_preserving = join_failure.is_none();
    if let Some(a) = join_failure {
        push(ExtensionProperty::JoinPreserving, vec![a], "h(a) differs from ⋁{h(b) : b R a}");
    }
    let meet_failure = l.elements().find(|&a| h(a) != c.meet_all(r.image(a).iter().map(h)));
    let meet_preserving = meet_failure.is_none();
    if let Some(a) = meet_failure {
        push(ExtensionProperty::MeetPreserving, vec![a], "h(a) differs from ⋀{h(b) : a R b}");
    }

    ExtensionReport {
        homomorphism,
        r_increasing,
        dense,
        compact,
        join_preserving,
        meet_preserving,
        filter_elements,
        ideal_elements,
        witnesses,
    }
}

/// Finds the isomorphism `φ : C1 → C2` with `φ ∘ embed1 = embed2`.
///
/// Both extensions must be of the same kind and pass [`verify_extension`]
/// for that kind.
pub fn check_uniqueness(e1: &CanonicalExtension, e2: &CanonicalExtension) -> Result<Option<LatticeMap>> {
    if e1.kind != e2.kind {
        return Err(Error::KindMismatch {
            expected: e1.kind.name(),
            found: e2.kind.name(),
        });
    }
    check_uniqueness_as(e1, e2, e1.kind)
}

/// As [`check_uniqueness`], treating both extensions as being of `kind`.
pub fn check_uniqueness_as(
    e1: &CanonicalExtension,
    e2: &CanonicalExtension,
    kind: ExtensionKind,
) -> Result<Option<LatticeMap>> {
    if e1.source != e2.source {
        return Err(Error::DimensionMismatch("extensions of different proximity lattices".into()));
    }
    for e in [e1, e2] {
        if !e.report().is_kind(kind) {
            return Err(Error::NotAnExtension(kind.name()));
        }
    }
    let fixed: Vec<(usize, usize)> = e1.embed.iter().copied().zip(e2.embed.iter().copied()).collect();
    Ok(find_isomorphism_with(&e1.lattice, &e2.lattice, &fixed).map(|table| LatticeMap {
        source: e1.lattice.clone(),
        target: e2.lattice.clone(),
        table,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub reflexive: bool,
    /// An isomorphism `φ : C^π → C^σ` with `φ ∘ h = k` was found.
    pub isomorphism_exists: bool,
    pub isomorphism: Option<Vec<usize>>,
    /// Least element with `not a R a`.
    pub irreflexive_witness: Option<usize>,
    /// Least element with `h(a)` and `k(a)` at different positions relative
    /// to the bounds (a cheap reason for the isomorphism to fail).
    pub embedding_witness: Option<usize>,
    /// The two sides agree.
    pub consistent: bool,
}

/// Compares the π- and σ-extensions of a doubly strong proximity lattice.
pub fn pi_sigma_comparison(p: &ProximityLattice) -> Result<ComparisonReport> {
    if !p.is_doubly_strong() {
        return Err(Error::NotDoublyStrong);
    }
    let pi = pi_extension(p)?;
    let sigma = sigma_extension(p)?;
    let fixed: Vec<(usize, usize)> = pi.embed.iter().copied().zip(sigma.embed.iter().copied()).collect();
    let isomorphism = find_isomorphism_with(&pi.lattice, &sigma.lattice, &fixed);
    let l = p.lattice();
    let irreflexive_witness = l.elements().find(|&a| !p.related(a, a));
    let position = |c: &FiniteLattice, u: usize| (u == c.bot(), u == c.top());
    let embedding_witness = l
        .elements()
        .find(|&a| position(&pi.lattice, pi.embed[a]) != position(&sigma.lattice, sigma.embed[a]));
    let reflexive = irreflexive_witness.is_none();
    Ok(ComparisonReport {
        reflexive,
        isomorphism_exists: isomorphism.is_some(),
        consistent: reflexive == isomorphism.is_some(),
        isomorphism,
        irreflexive_witness,
        embedding_witness,
    })
}
