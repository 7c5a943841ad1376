//! Proximity morphisms `T ⊆ L × M` from `(L, R)` to `(M, S)`.
//!
//! `T` is a proximity morphism when its converse is a proximity relation from
//! `(M, S)` to `(L, R)`. Written in terms of `T` itself the conditions read:
//!
//! 1. `R⁻¹ ∘ T = T`
//! 2. `T ∘ S⁻¹ = T`
//! 3. `b T ⋁A` iff `b T a` for all `a ∈ A` (finite `A ⊆ M`)
//! 4. `⋀B T a` iff `b T a` for all `b ∈ B` (finite `B ⊆ L`)
//!
//! and `T` is a j-morphism (m-morphism) when additionally
//! `⋁B T a ⇒ a S ⋁T[B]` (`b T ⋀A ⇒ ⋀T⁻¹[A] R b`). Composition is
//! relational and diagrammatic: `T ∘ U` runs `T` first.

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{is_homomorphism, LatticeMap};
use crate::relation::Relation;

use super::round::{is_round_filter, is_round_ideal, round_ideal_lattice, round_subsets, RoundKind};
use super::{ProximityLattice, EXHAUSTIVE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `R⁻¹ ∘ T = T`; elements `[a, b]` with `a ∈ L`, `b ∈ M`.
    SourceAbsorption,
    /// `T ∘ S⁻¹ = T`; elements `[a, b]`.
    TargetAbsorption,
    /// Joins in the target; elements `[b]` (empty join) or `[b, m, m']`.
    TargetJoins,
    /// Meets in the source; elements `[a]` (empty meet) or `[l, l', a]`.
    SourceMeets,
    /// `T[a]` is not a round ideal; elements `[a]`.
    ImageNotRoundIdeal,
    /// `T⁻¹[b]` is not a round filter; elements `[b]`.
    PreimageNotRoundFilter,
    /// Join-approximability; elements `[a]` or `[l, l', a]`.
    JoinApproximable,
    /// Meet-approximability; elements `[b]` or `[b, m, m']`.
    MeetApproximable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub condition: Condition,
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MorphismClass {
    pub proximity: bool,
    pub j: bool,
    pub m: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    /// Conditions 1–4 checked directly.
    pub proximity: bool,
    /// `T[a]` round ideal for every `a`, `T⁻¹[b]` round filter for every `b`.
    pub lifts_round_subsets: bool,
    pub join_approximable: bool,
    pub meet_approximable: bool,
    pub witnesses: Vec<MorphismWitness>,
}

impl MorphismReport {
    pub fn characterizations_agree(&self) -> bool {
        self.proximity == self.lifts_round_subsets
    }

    pub fn class(&self) -> MorphismClass {
        MorphismClass {
            proximity: self.proximity,
            j: self.proximity && self.join_approximable,
            m: self.proximity && self.meet_approximable,
        }
    }

    pub fn witness(&self, condition: Condition) -> Option<&MorphismWitness> {
        self.witnesses.iter().find(|w| w.condition == condition)
    }
}

fn check_dims(src: &ProximityLattice, tgt: &ProximityLattice, t: &Relation) -> Result<()> {
    if t.source_len() != src.len() || t.target_len() != tgt.len() {
        return Err(Error::DimensionMismatch(format!(
            "relation is {}x{} but the lattices have {} and {} elements",
            t.source_len(),
            t.target_len(),
            src.len(),
            tgt.len()
        )));
    }
    Ok(())
}

fn witness(condition: Condition, elements: Vec<usize>, detail: &str) -> MorphismWitness {
    MorphismWitness {
        condition,
        elements,
        detail: detail.into(),
    }
}

/// Classifies `t` using nullary and binary instances of the finite
/// quantifiers, and independently through round ideals and filters.
pub fn verify_morphism(src: &ProximityLattice, tgt: &ProximityLattice, t: &Relation) -> Result<MorphismReport> {
    check_dims(src, tgt, t)?;
    let (l, m) = (src.lattice(), tgt.lattice());
    let (r, s) = (src.relation(), tgt.relation());
    let mut witnesses = Vec::new();

    let source_abs = r.converse().compose(t)?.first_difference(t);
    if let Some((a, b)) = source_abs {
        witnesses.push(witness(Condition::SourceAbsorption, vec![a, b], "R⁻¹ ∘ T differs from T at (a, b)"));
    }
    let target_abs = t.compose(&s.converse())?.first_difference(t);
    if let Some((a, b)) = target_abs {
        witnesses.push(witness(Condition::TargetAbsorption, vec![a, b], "T ∘ S⁻¹ differs from T at (a, b)"));
    }

    let joins = (|| {
        if let Some(b) = l.elements().find(|&b| !t.contains(b, m.bot())) {
            return Some(witness(Condition::TargetJoins, vec![b], "b T ⊥ fails"));
        }
        for b in l.elements() {
            for x in m.elements() {
                for y in m.elements() {
                    if t.contains(b, m.join(x, y)) != (t.contains(b, x) && t.contains(b, y)) {
                        return Some(witness(
                            Condition::TargetJoins,
                            vec![b, x, y],
                            "b T (m ∨ m') differs from (b T m and b T m')",
                        ));
                    }
                }
            }
        }
        None
    })();
    let meets = (|| {
        if let Some(a) = m.elements().find(|&a| !t.contains(l.top(), a)) {
            return Some(witness(Condition::SourceMeets, vec![a], "⊤ T a fails"));
        }
        for x in l.elements() {
            for y in l.elements() {
                for a in m.elements() {
                    if t.contains(l.meet(x, y), a) != (t.contains(x, a) && t.contains(y, a)) {
                        return Some(witness(
                            Condition::SourceMeets,
                            vec![x, y, a],
                            "(l ∧ l') T a differs from (l T a and l' T a)",
                        ));
                    }
                }
            }
        }
        None
    })();
    let proximity = source_abs.is_none() && target_abs.is_none() && joins.is_none() && meets.is_none();
    witnesses.extend(joins);
    witnesses.extend(meets);

    let images = l.elements().find(|&a| !is_round_ideal(tgt, t.image(a)));
    let preimages = m.elements().find(|&b| !is_round_filter(src, t.preimage(b)));
    let lifts_round_subsets = images.is_none() && preimages.is_none();
    if let Some(a) = images {
        witnesses.push(witness(Condition::ImageNotRoundIdeal, vec![a], "T[a] is not a round ideal"));
    }
    if let Some(b) = preimages {
        witnesses.push(witness(Condition::PreimageNotRoundFilter, vec![b], "T⁻¹[b] is not a round filter"));
    }

    let join_approx = (|| {
        if let Some(a) = m.elements().find(|&a| t.contains(l.bot(), a) && !s.contains(a, m.bot())) {
            return Some(witness(Condition::JoinApproximable, vec![a], "⊥ T a but not a S ⊥"));
        }
        for x in l.elements() {
            for y in l.elements() {
                let target = m.join_all((t.image(x) | t.image(y)).iter());
                for a in m.elements() {
                    if t.contains(l.join(x, y), a) && !s.contains(a, target) {
                        return Some(witness(
                            Condition::JoinApproximable,
                            vec![x, y, a],
                            "(l ∨ l') T a but not a S ⋁(T[l] ∪ T[l'])",
                        ));
                    }
                }
            }
        }
        None
    })();
    let meet_approx = (|| {
        if let Some(b) = l.elements().find(|&b| t.contains(b, m.top()) && !r.contains(l.top(), b)) {
            return Some(witness(Condition::MeetApproximable, vec![b], "b T ⊤ but not ⊤ R b"));
        }
        for b in l.elements() {
            for x in m.elements() {
                for y in m.elements() {
                    if t.contains(b, m.meet(x, y)) {
                        let source = l.meet_all((t.preimage(x) | t.preimage(y)).iter());
                        if !r.contains(source, b) {
                            return Some(witness(
                                Condition::MeetApproximable,
                                vec![b, x, y],
                                "b T (m ∧ m') but not ⋀(T⁻¹[m] ∪ T⁻¹[m']) R b",
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    let join_approximable = join_approx.is_none();
    let meet_approximable = meet_approx.is_none();
    witnesses.extend(join_approx);
    witnesses.extend(meet_approx);

    Ok(MorphismReport {
        proximity,
        lifts_round_subsets,
        join_approximable,
        meet_approximable,
        witnesses,
    })
}

/// Literal check of conditions 3, 4 and both approximability conditions
/// over every subset; both carriers must have at most
/// [`EXHAUSTIVE_LIMIT`] elements. Witness lists are not populated.
pub fn verify_morphism_exhaustive(
    src: &ProximityLattice,
    tgt: &ProximityLattice,
    t: &Relation,
) -> Result<MorphismReport> {
    check_dims(src, tgt, t)?;
    let (l, m) = (src.lattice(), tgt.lattice());
    let (r, s) = (src.relation(), tgt.relation());
    for n in [l.len(), m.len()] {
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge(n));
        }
    }
    let subsets = |n: usize| (0..1u64 << n).map(Bits::from_mask);
    let exists_subset = |universe: Bits, pred: &dyn Fn(Bits) -> bool| {
        let items: Vec<usize> = universe.iter().collect();
        (0..1u64 << items.len()).any(|mask| pred(Bits::select(&items, mask)))
    };

    let absorption =
        r.converse().compose(t)? == *t && t.compose(&s.converse())? == *t;
    let mut joins = true;
    let mut join_approximable = true;
    for a_set in subsets(m.len()) {
        let j = m.join_all(a_set.iter());
        for b in l.elements() {
            joins &= t.contains(b, j) == a_set.iter().all(|a| t.contains(b, a));
        }
    }
    let mut meets = true;
    let mut meet_approximable = true;
    for b_set in subsets(l.len()) {
        let mt = l.meet_all(b_set.iter());
        for a in m.elements() {
            meets &= t.contains(mt, a) == b_set.iter().all(|b| t.contains(b, a));
        }
        let jn = l.join_all(b_set.iter());
        for a in m.elements() {
            if t.contains(jn, a) {
                join_approximable &=
                    exists_subset(t.image_of(b_set), &|c: Bits| s.contains(a, m.join_all(c.iter())));
            }
        }
    }
    for a_set in subsets(m.len()) {
        let mt = m.meet_all(a_set.iter());
        for b in l.elements() {
            if t.contains(b, mt) {
                meet_approximable &=
                    exists_subset(t.preimage_of(a_set), &|c: Bits| r.contains(l.meet_all(c.iter()), b));
            }
        }
    }
    let reduced = verify_morphism(src, tgt, t)?;
    Ok(MorphismReport {
        proximity: absorption && joins && meets,
        lifts_round_subsets: reduced.lifts_round_subsets,
        join_approximable,
        meet_approximable,
        witnesses: Vec::new(),
    })
}

/// A relation between two proximity lattices together with its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityMorphism {
    pub source: ProximityLattice,
    pub target: ProximityLattice,
    pub relation: Relation,
    pub class: MorphismClass,
}

impl ProximityMorphism {
    /// Wraps any relation of the right shape, recording its class.
    pub fn classify(source: ProximityLattice, target: ProximityLattice, relation: Relation) -> Result<Self> {
        let class = verify_morphism(&source, &target, &relation)?.class();
        Ok(ProximityMorphism {
            source,
            target,
            relation,
            class,
        })
    }

    pub fn report(&self) -> MorphismReport {
        verify_morphism(&self.source, &self.target, &self.relation).expect("dimensions checked on construction")
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ProximityMorphism) -> Result<ProximityMorphism> {
        if self.target != next.source {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        let relation = self.relation.compose(&next.relation)?;
        Self::classify(self.source.clone(), next.target.clone(), relation)
    }
}

/// Every proximity morphism from `src` to `tgt`, in lexicographic order of
/// the row choices.
///
/// Each row `T[a]` of a proximity morphism is a round ideal, so rows are
/// drawn from the round ideals of `tgt` and each candidate is classified.
pub fn enumerate_morphisms(src: &ProximityLattice, tgt: &ProximityLattice) -> Vec<ProximityMorphism> {
    let ideals: Vec<Bits> = round_subsets(tgt, RoundKind::Ideal).into_iter().map(|s| s.members).collect();
    let n = src.len();
    let mut out = Vec::new();
    if ideals.is_empty() {
        return out;
    }
    let mut choice = vec![0usize; n];
    loop {
        let rows = choice.iter().map(|&i| ideals[i]).collect();
        let relation = Relation::from_rows(tgt.len(), rows).expect("rows fit the target");
        let report = verify_morphism(src, tgt, &relation).expect("dimensions match");
        if report.proximity {
            out.push(ProximityMorphism {
                source: src.clone(),
                target: tgt.clone(),
                relation,
                class: report.class(),
            });
        }
        let Some(k) = (0..n).rev().find(|&k| choice[k] + 1 < ideals.len()) else {
            break;
        };
        choice[k] += 1;
        choice[k + 1..].iter_mut().for_each(|c| *c = 0);
    }
    out
}

/// `R⁻¹`, the identity j-morphism on a join-strong proximity lattice.
pub fn identity_morphism(p: &ProximityLattice) -> Result<ProximityMorphism> {
    p.require_join_strong()?;
    ProximityMorphism::classify(p.clone(), p.clone(), p.relation().converse())
}

/// `a F(h) b` iff `h(a) >= b`, between the order presentations of the
/// source and target lattices.
pub fn functor_f(h: &LatticeMap) -> ProximityMorphism {
    let (l, m) = (&h.source, &h.target);
    let relation = Relation::from_fn(l.len(), m.len(), |a, b| m.leq(b, h.apply(a)));
    ProximityMorphism::classify(
        ProximityLattice::from_order(l.clone()),
        ProximityLattice::from_order(m.clone()),
        relation,
    )
    .expect("dimensions match")
}

/// The lattice map `I ↦ T[I]` between round ideal lattices.
pub fn functor_g(t: &ProximityMorphism) -> Result<LatticeMap> {
    if !t.class.j {
        return Err(Error::NotAJMorphism);
    }
    let src = round_ideal_lattice(&t.source)?;
    let tgt = round_ideal_lattice(&t.target)?;
    let table = src
        .ideals
        .iter()
        .map(|ideal| {
            let image = t.relation.image_of(*ideal);
            tgt.index_of(image)
                .ok_or_else(|| Error::InvariantViolated(format!("T[I] = {image:?} is not a round ideal")))
        })
        .collect::<Result<_>>()?;
    LatticeMap::new(src.lattice, tgt.lattice, table)
}

/// Either side of the correspondence between j-morphisms `(L, <=) → (M, S)`
/// and lattice homomorphisms `L → Sidl(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transposable {
    Morphism(ProximityMorphism),
    Homomorphism { target: ProximityLattice, map: LatticeMap },
}

/// `f_T(a) = T[a]`.
pub fn transpose_morphism(t: &ProximityMorphism) -> Result<LatticeMap> {
    let l = t.source.lattice();
    if *t.source.relation() != Relation::from_fn(l.len(), l.len(), |a, b| l.leq(a, b)) {
        return Err(Error::MalformedTranspose("source relation is not the lattice order".into()));
    }
    if !t.class.j {
        return Err(Error::MalformedTranspose("relation is not a j-morphism".into()));
    }
    let ridl = round_ideal_lattice(&t.target)?;
    let table = l
        .elements()
        .map(|a| {
            ridl.index_of(t.relation.image(a))
                .ok_or_else(|| Error::MalformedTranspose(format!("T[{}] is not a round ideal", l.name(a))))
        })
        .collect::<Result<_>>()?;
    LatticeMap::new(l.clone(), ridl.lattice, table)
}

/// `a T_f b` iff `b ∈ f(a)`.
pub fn transpose_homomorphism(target: &ProximityLattice, f: &LatticeMap) -> Result<ProximityMorphism> {
    let ridl = round_ideal_lattice(target)?;
    if f.target != ridl.lattice {
        return Err(Error::MalformedTranspose(
            "map does not land in the round ideal lattice of the target".into(),
        ));
    }
    if !is_homomorphism(f) {
        return Err(Error::MalformedTranspose("map is not a lattice homomorphism".into()));
    }
    let rows = f.source.elements().map(|a| ridl.ideals[f.apply(a)]).collect();
    let relation = Relation::from_rows(target.len(), rows)?;
    let source = ProximityLattice::from_order(f.source.clone());
    ProximityMorphism::classify(source, target.clone(), relation)
}

pub fn adjunction_transpose(input: &Transposable) -> Result<Transposable> {
    match input {
        Transposable::Morphism(t) => Ok(Transposable::Homomorphism {
            target: t.target.clone(),
            map: transpose_morphism(t)?,
        }),
        Transposable::Homomorphism { target, map } => {
            Ok(Transposable::Morphism(transpose_homomorphism(target, map)?))
        }
    }
}
