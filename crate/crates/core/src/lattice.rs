//! Finite bounded lattices and the order-theoretic primitives shared by the
//! rest of the crate: lattice maps, preorders, Dedekind-MacNeille completion
//! and isomorphism search.

use crate::bits::{Bits, CAPACITY};
use crate::error::{Error, Result};

/// A finite bounded lattice on the carrier `0..len()`.
///
/// The order is stored as up-sets and down-sets per element; meet and join
/// are full tables computed at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    meet: Vec<usize>,
    join: Vec<usize>,
    top: usize,
    bot: usize,
}

impl FiniteLattice {
    /// Builds a lattice from a full order matrix, `up[a] = {b : a <= b}`.
    ///
    /// The matrix is closed reflexively and transitively first, so a cover
    /// relation is enough.
    pub fn from_up_sets(names: Vec<String>, mut up: Vec<Bits>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > CAPACITY {
            return Err(Error::TooLarge(n));
        }
        if up.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} order rows for {} elements",
                up.len(),
                n
            )));
        }
        for (a, row) in up.iter_mut().enumerate() {
            row.insert(a);
        }
        transitive_close(&mut up);
        for a in 0..n {
            for b in up[a].iter() {
                if b >= n {
                    return Err(Error::DimensionMismatch(format!("order mentions element {b}")));
                }
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are distinct but mutually below each other",
                        names[a], names[b]
                    )));
                }
            }
        }
        let down = converse_rows(&up, n);

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = greatest(&down[a], &down[b], &down).ok_or_else(|| Error::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "meet",
                })?;
                let j = greatest(&up[a], &up[b], &up).ok_or_else(|| Error::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "join",
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let bot = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        Ok(FiniteLattice {
            names,
            up,
            down,
            meet,
            join,
            top,
            bot,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn carrier(&self) -> Bits {
        Bits::full(self.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    /// `{b : a <= b}`
    pub fn up_set(&self, a: usize) -> Bits {
        self.up[a]
    }

    /// `{b : b <= a}`
    pub fn down_set(&self, a: usize) -> Bits {
        self.down[a]
    }

    /// Meet of a finite set; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite set; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// Up-closure of a set.
    pub fn up_closure(&self, set: Bits) -> Bits {
        set.iter().fold(Bits::empty(), |acc, a| acc | self.up[a])
    }

    /// Down-closure of a set.
    pub fn down_closure(&self, set: Bits) -> Bits {
        set.iter().fold(Bits::empty(), |acc, a| acc | self.down[a])
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between,
    /// sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            let strictly_above = self.up[a] - Bits::singleton(a);
            for b in strictly_above.iter() {
                let between = strictly_above & (self.down[b] - Bits::singleton(b));
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Same carrier with the order reversed.
    pub fn opposite(&self) -> FiniteLattice {
        FiniteLattice {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            top: self.bot,
            bot: self.top,
        }
    }

    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples.
    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Checks the lattice laws on the stored tables: commutativity,
    /// associativity, idempotence, absorption, bounds, and agreement of the
    /// tables with the order.
    pub fn check_laws(&self) -> bool {
        let els = self.elements();
        for a in els.clone() {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return false;
            }
            if !self.leq(self.bot, a) || !self.leq(a, self.top) {
                return false;
            }
            for b in els.clone() {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return false;
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return false;
                }
                if self.leq(a, b) != (self.meet(a, b) == a) {
                    return false;
                }
                for c in els.clone() {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The element `m` of `a ∩ b` whose own row equals `a ∩ b`, if any.
fn greatest(a: &Bits, b: &Bits, rows: &[Bits]) -> Option<usize> {
    let common = *a & *b;
    common.iter().find(|&m| rows[m] == common)
}

pub(crate) fn transitive_close(rows: &mut [Bits]) {
    let n = rows.len();
    for k in 0..n {
        for i in 0..n {
            if rows[i].contains(k) {
                let rk = rows[k];
                rows[i] |= rk;
            }
        }
    }
}

pub(crate) fn converse_rows(rows: &[Bits], n: usize) -> Vec<Bits> {
    let mut out = vec![Bits::empty(); n];
    for (a, row) in rows.iter().enumerate() {
        for b in row.iter() {
            out[b].insert(a);
        }
    }
    out
}

/// Builds a lattice from element names and order pairs `(a, b)` meaning
/// `a <= b`. Reflexive-transitive closure is applied.
pub fn lattice_from_order<S: AsRef<str>>(elements: &[S], leq: &[(S, S)]) -> Result<FiniteLattice> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    if names.len() > CAPACITY {
        return Err(Error::TooLarge(names.len()));
    }
    let index = |s: &str| {
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| Error::UnknownElement(s.to_string()))
    };
    let mut up = vec![Bits::empty(); names.len()];
    for (a, b) in leq {
        let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
        up[a].insert(b);
    }
    FiniteLattice::from_up_sets(names, up)
}

/// Lattice of a family of subsets ordered by inclusion, in canonical order.
///
/// Returns the lattice and the sorted, deduplicated family; element `i` of the
/// lattice is `family[i]`.
pub fn lattice_of_sets<F>(family: Vec<Bits>, mut label: F) -> Result<(FiniteLattice, Vec<Bits>)>
where
    F: FnMut(&Bits) -> String,
{
    let mut family = family;
    family.sort();
    family.dedup();
    if family.len() > CAPACITY {
        return Err(Error::TooLarge(family.len()));
    }
    let up = family
        .iter()
        .map(|s| {
            family
                .iter()
                .enumerate()
                .filter(|(_, t)| s.is_subset(t))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let names = family.iter().map(&mut label).collect();
    let lattice = FiniteLattice::from_up_sets(names, up)?;
    Ok((lattice, family))
}

/// Closes a family of sets under pairwise intersection.
pub(crate) fn intersection_closure(mut family: Vec<Bits>) -> Vec<Bits> {
    family.sort();
    family.dedup();
    let mut i = 0;
    while i < family.len() {
        for j in 0..i {
            let meet = family[i] & family[j];
            if !family.contains(&meet) {
                family.push(meet);
            }
        }
        i += 1;
    }
    family.sort();
    family
}

/// A total function between two finite lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    pub table: Vec<usize>,
}

impl LatticeMap {
    pub fn new(source: FiniteLattice, target: FiniteLattice, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() || table.iter().any(|&t| t >= target.len()) {
            return Err(Error::DimensionMismatch(
                "map table does not match source and target carriers".into(),
            ));
        }
        Ok(LatticeMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(lattice: &FiniteLattice) -> Self {
        LatticeMap {
            source: lattice.clone(),
            target: lattice.clone(),
            table: lattice.elements().collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(LatticeMap {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&a| other.table[a]).collect(),
        })
    }

    pub fn is_order_preserving(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements().all(|a| {
            s.up_set(a)
                .iter()
                .all(|b| t.leq(self.table[a], self.table[b]))
        })
    }
}

/// True iff `f` preserves binary meets and joins, top and bottom.
pub fn is_homomorphism(f: &LatticeMap) -> bool {
    let (s, t, h) = (&f.source, &f.target, &f.table);
    if h[s.top()] != t.top() || h[s.bot()] != t.bot() {
        return false;
    }
    s.elements().all(|a| {
        s.elements().all(|b| {
            h[s.meet(a, b)] == t.meet(h[a], h[b]) && h[s.join(a, b)] == t.join(h[a], h[b])
        })
    })
}

/// Every total function `source -> target`, in lexicographic table order.
pub fn all_maps(source: &FiniteLattice, target: &FiniteLattice) -> Vec<Vec<usize>> {
    let (n, m) = (source.len(), target.len());
    let mut out = Vec::new();
    let mut table = vec![0; n];
    loop {
        out.push(table.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < m {
                break;
            }
            table[i] = 0;
        }
    }
}

/// A reflexive, transitive relation on `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    names: Vec<String>,
    up: Vec<Bits>,
}

impl Preorder {
    /// Closes the given rows (`up[p] = {q : p ≼ q}`) reflexively and
    /// transitively.
    pub fn new(names: Vec<String>, mut up: Vec<Bits>) -> Result<Self> {
        if names.len() > CAPACITY {
            return Err(Error::TooLarge(names.len()));
        }
        if up.len() != names.len() {
            return Err(Error::DimensionMismatch("preorder rows".into()));
        }
        for (p, row) in up.iter_mut().enumerate() {
            row.insert(p);
        }
        transitive_close(&mut up);
        Ok(Preorder { names, up })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    pub fn down_set(&self, q: usize) -> Bits {
        (0..self.len()).filter(|&p| self.leq(p, q)).collect()
    }

    pub fn up_set(&self, p: usize) -> Bits {
        self.up[p]
    }
}

/// Result of completing a preorder.
#[derive(Clone, Debug)]
pub struct MacNeille {
    pub lattice: FiniteLattice,
    /// `cuts[i]` is the set of preorder elements below lattice element `i`.
    pub cuts: Vec<Bits>,
    /// Preorder element `p` maps to the cut `↓p`.
    pub embedding: Vec<usize>,
}

/// Dedekind-MacNeille completion: the lattice of cuts `A = lower(upper(A))`
/// ordered by inclusion, with `p ↦ ↓p`.
///
/// Cuts are exactly the intersections of principal down-sets (the empty
/// intersection giving the whole carrier), which is how they are generated.
pub fn dedekind_macneille(q: &Preorder) -> Result<MacNeille> {
    let n = q.len();
    let mut family: Vec<Bits> = (0..n).map(|p| q.down_set(p)).collect();
    family.push(Bits::full(n));
    let family = intersection_closure(family);
    let names = q.names();
    let (lattice, cuts) = lattice_of_sets(family, |cut| {
        let mut maxima: Vec<&str> = cut
            .iter()
            .filter(|&p| cut.iter().all(|r| !q.leq(p, r) || q.leq(r, p)))
            .map(|p| names[p].as_str())
            .collect();
        maxima.dedup();
        format!("[{}]", maxima.join(","))
    })?;
    let embedding = (0..n)
        .map(|p| {
            let d = q.down_set(p);
            cuts.iter().position(|c| *c == d).expect("principal cut present")
        })
        .collect();
    Ok(MacNeille {
        lattice,
        cuts,
        embedding,
    })
}

/// Searches for an order isomorphism `l -> m`.
pub fn find_isomorphism(l: &FiniteLattice, m: &FiniteLattice) -> Option<LatticeMap> {
    find_isomorphism_with(l, m, &[]).map(|table| LatticeMap {
        source: l.clone(),
        target: m.clone(),
        table,
    })
}

/// Searches for an order isomorphism `l -> m` that sends each `a` to `b` for
/// every pair `(a, b)` in `fixed`. Backtracking over candidates with matching
/// up/down-set sizes; the first table found in element order is returned.
pub fn find_isomorphism_with(
    l: &FiniteLattice,
    m: &FiniteLattice,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let n = l.len();
    if n != m.len() {
        return None;
    }
    let signature = |lat: &FiniteLattice, a: usize| (lat.up_set(a).len(), lat.down_set(a).len());
    let mut table = vec![usize::MAX; n];
    let mut used = Bits::empty();
    for &(a, b) in fixed {
        if a >= n || b >= n {
            return None;
        }
        if table[a] == usize::MAX {
            if used.contains(b) {
                return None;
            }
            table[a] = b;
            used.insert(b);
        } else if table[a] != b {
            return None;
        }
    }
    let assigned: Vec<usize> = (0..n).filter(|&a| table[a] != usize::MAX).collect();
    for &a in &assigned {
        if signature(l, a) != signature(m, table[a]) {
            return None;
        }
        for &b in &assigned {
            if l.leq(a, b) != m.leq(table[a], table[b]) {
                return None;
            }
        }
    }
    // Assign bottom-up so order constraints prune early.
    let mut order: Vec<usize> = (0..n).filter(|&a| table[a] == usize::MAX).collect();
    order.sort_by_key(|&a| (l.down_set(a).len(), a));

    fn extend(
        k: usize,
        order: &[usize],
        l: &FiniteLattice,
        m: &FiniteLattice,
        table: &mut Vec<usize>,
        used: &mut Bits,
    ) -> bool {
        let Some(&a) = order.get(k) else {
            return true;
        };
        for b in 0..m.len() {
            if used.contains(b)
                || (l.up_set(a).len(), l.down_set(a).len()) != (m.up_set(b).len(), m.down_set(b).len())
            {
                continue;
            }
            let consistent = (0..l.len()).filter(|&x| table[x] != usize::MAX).all(|x| {
                l.leq(x, a) == m.leq(table[x], b) && l.leq(a, x) == m.leq(b, table[x])
            });
            if !consistent {
                continue;
            }
            table[a] = b;
            used.insert(b);
            if extend(k + 1, order, l, m, table, used) {
                return true;
            }
            table[a] = usize::MAX;
            used.remove(b);
        }
        false
    }

    if extend(0, &order, l, m, &mut table, &mut used) {
        Some(table)
    } else {
        None
    }
}
