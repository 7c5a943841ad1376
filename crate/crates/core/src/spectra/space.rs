//! Finite topological spaces.
//!
//! Finite spaces are Alexandrov: arbitrary intersections of opens are open
//! once finite ones are, so the saturated sets (intersections of opens) are
//! the up-sets of the specialization order and every saturated set is
//! compact. Several distinctions made for general spaces (compact saturated
//! versus saturated, spectral versus stably compact) disappear here.

use crate::bits::{Bits, CAPACITY};
use crate::error::{Error, Result};
use crate::lattice::{intersection_closure, lattice_of_sets, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    /// Canonically sorted.
    opens: Vec<Bits>,
}

impl FiniteSpace {
    /// Validates that `opens` contains `∅` and the whole set and is closed
    /// under binary unions and intersections.
    pub fn new(points: Vec<String>, opens: Vec<Bits>) -> Result<Self> {
        let n = points.len();
        if n > CAPACITY {
            return Err(Error::TooLarge(n));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicateElement(p.clone()));
            }
        }
        let full = Bits::full(n);
        let mut opens = opens;
        opens.sort();
        opens.dedup();
        if opens.iter().any(|u| !u.is_subset(&full)) {
            return Err(Error::InvalidSpace("open set outside the point set".into()));
        }
        for required in [Bits::empty(), full] {
            if !opens.contains(&required) {
                return Err(Error::InvalidSpace(format!("missing open set {required:?}")));
            }
        }
        for u in &opens {
            for v in &opens {
                if !opens.contains(&(*u | *v)) || !opens.contains(&(*u & *v)) {
                    return Err(Error::InvalidSpace(format!(
                        "opens not closed under union and intersection at {u:?}, {v:?}"
                    )));
                }
            }
        }
        Ok(FiniteSpace { points, opens })
    }

    pub fn from_names<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let opens = opens
            .iter()
            .map(|u| {
                u.iter()
                    .map(|p| {
                        names
                            .iter()
                            .position(|n| n == p.as_ref())
                            .ok_or_else(|| Error::UnknownElement(p.as_ref().to_string()))
                    })
                    .collect::<Result<Bits>>()
            })
            .collect::<Result<_>>()?;
        Self::new(names, opens)
    }

    /// The Alexandrov space whose opens are the up-sets of the preorder
    /// given by `up[x] = {y : x ⊑ y}` (assumed reflexive and transitive).
    pub fn from_specialization(points: Vec<String>, up: &[Bits]) -> Result<Self> {
        let n = points.len();
        let mut opens: Vec<Bits> = up.to_vec();
        opens.push(Bits::empty());
        // unions of principal up-sets
        let mut i = 0;
        while i < opens.len() {
            for j in 0..i {
                let u = opens[i] | opens[j];
                if !opens.contains(&u) {
                    opens.push(u);
                }
            }
            i += 1;
        }
        opens.push(Bits::full(n));
        Self::new(points, opens)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[Bits] {
        &self.opens
    }

    pub fn carrier(&self) -> Bits {
        Bits::full(self.len())
    }

    pub fn is_open(&self, set: Bits) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    /// `up[x] = ⋂{U open : x ∈ U}`; `x ⊑ y` iff `y ∈ up[x]`.
    pub fn specialization(&self) -> Vec<Bits> {
        (0..self.len())
            .map(|x| {
                self.opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(self.carrier(), |acc, u| acc & *u)
            })
            .collect()
    }

    pub fn is_t0(&self) -> bool {
        let up = self.specialization();
        (0..self.len()).all(|x| (0..x).all(|y| !(up[x].contains(y) && up[y].contains(x))))
    }

    pub(crate) fn require_t0(&self) -> Result<()> {
        if self.is_t0() {
            Ok(())
        } else {
            Err(Error::NotT0)
        }
    }

    /// All intersections of opens, in canonical order.
    pub fn saturated_sets(&self) -> Vec<Bits> {
        intersection_closure(self.opens.clone())
    }

    /// Saturated sets ordered by inclusion.
    pub fn saturated_lattice(&self) -> Result<(FiniteLattice, Vec<Bits>)> {
        lattice_of_sets(self.saturated_sets(), |s| self.set_label(*s))
    }

    /// Opens ordered by inclusion.
    pub fn open_lattice(&self) -> Result<(FiniteLattice, Vec<Bits>)> {
        lattice_of_sets(self.opens.clone(), |s| self.set_label(*s))
    }

    pub fn set_label(&self, set: Bits) -> String {
        let names: Vec<&str> = set.iter().map(|p| self.points[p].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Opens are the complements of the (compact) saturated sets.
    pub fn co_compact_dual(&self) -> FiniteSpace {
        let n = self.len();
        let opens = self.saturated_sets().into_iter().map(|k| k.complement(n)).collect();
        FiniteSpace::new(self.points.clone(), opens).expect("complements of saturated sets form a topology")
    }

    /// Subspace topology on `set`, with points renumbered in increasing
    /// order.
    pub fn subspace(&self, set: Bits) -> FiniteSpace {
        let members: Vec<usize> = set.iter().collect();
        let points = members.iter().map(|&p| self.points[p].clone()).collect();
        let opens = self
            .opens
            .iter()
            .map(|u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| u.contains(p))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        FiniteSpace::new(points, opens).expect("subspace topology")
    }

    /// `map[x]` is the image of point `x` in `target`.
    pub fn is_continuous(&self, map: &[usize], target: &FiniteSpace) -> bool {
        map.len() == self.len()
            && map.iter().all(|&y| y < target.len())
            && target.opens.iter().all(|v| {
                let pre: Bits = (0..self.len()).filter(|&x| v.contains(map[x])).collect();
                self.is_open(pre)
            })
    }

    /// Image of a set under a point map.
    pub fn image(map: &[usize], set: Bits) -> Bits {
        set.iter().map(|x| map[x]).collect()
    }
}

/// Searches for a bijection `a → b` carrying the opens of `a` exactly onto
/// the opens of `b`. Backtracks over specialization-preserving bijections.
pub fn find_homeomorphism(a: &FiniteSpace, b: &FiniteSpace) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.opens.len() != b.opens.len() {
        return None;
    }
    let (ua, ub) = (a.specialization(), b.specialization());
    let da: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| ua[y].contains(x)).count()).collect();
    let db: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| ub[y].contains(x)).count()).collect();

    fn go(
        x: usize,
        map: &mut Vec<usize>,
        used: &mut Bits,
        ctx: &(&[Bits], &[Bits], &[usize], &[usize], &FiniteSpace, &FiniteSpace),
    ) -> bool {
        let (ua, ub, da, db, a, b) = *ctx;
        if x == ua.len() {
            return a.opens.iter().all(|u| b.is_open(FiniteSpace::image(map, *u)));
        }
        for y in 0..ub.len() {
            if used.contains(y) || ua[x].len() != ub[y].len() || da[x] != db[y] {
                continue;
            }
            let ok = (0..x).all(|z| {
                ua[x].contains(z) == ub[y].contains(map[z]) && ua[z].contains(x) == ub[map[z]].contains(y)
            });
            if !ok {
                continue;
            }
            map.push(y);
            used.insert(y);
            if go(x + 1, map, used, ctx) {
                return true;
            }
            map.pop();
            used.remove(y);
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = Bits::empty();
    let ctx = (&ua[..], &ub[..], &da[..], &db[..], a, b);
    go(0, &mut map, &mut used, &ctx).then_some(map)
}

/// Every T0 topology on `n` labelled points `p0..`, one per partial order,
/// in lexicographic order of the order relation.
pub fn all_t0_spaces(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 5, "enumeration is exponential in n²");
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << off.len() {
        let mut up: Vec<Bits> = (0..n).map(Bits::singleton).collect();
        for (k, &(x, y)) in off.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[x].insert(y);
            }
        }
        let antisymmetric = off.iter().all(|&(x, y)| !(up[x].contains(y) && up[y].contains(x)));
        let transitive = (0..n).all(|x| up[x].iter().all(|y| up[y].is_subset(&up[x])));
        if antisymmetric && transitive {
            out.push(FiniteSpace::from_specialization(points.clone(), &up).expect("Alexandrov topology"));
        }
    }
    out
}
