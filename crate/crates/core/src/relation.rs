//! Binary relations between finite index sets, stored row-wise.

use crate::bits::{Bits, CAPACITY};
use crate::error::{Error, Result};

/// A relation `R ⊆ source × target`; `rows[a] = R[a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    source: usize,
    target: usize,
    rows: Vec<Bits>,
}

impl Relation {
    pub fn empty(source: usize, target: usize) -> Self {
        assert!(source <= CAPACITY && target <= CAPACITY);
        Relation {
            source,
            target,
            rows: vec![Bits::empty(); source],
        }
    }

    pub fn full(source: usize, target: usize) -> Self {
        let mut r = Self::empty(source, target);
        for row in &mut r.rows {
            *row = Bits::full(target);
        }
        r
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(source: usize, target: usize, mut f: F) -> Self {
        let mut r = Self::empty(source, target);
        for a in 0..source {
            for b in 0..target {
                if f(a, b) {
                    r.rows[a].insert(b);
                }
            }
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(source: usize, target: usize, pairs: I) -> Result<Self> {
        let mut r = Self::empty(source, target);
        for (a, b) in pairs {
            if a >= source || b >= target {
                return Err(Error::DimensionMismatch(format!(
                    "pair ({a}, {b}) outside {source} x {target}"
                )));
            }
            r.rows[a].insert(b);
        }
        Ok(r)
    }

    pub fn from_rows(target: usize, rows: Vec<Bits>) -> Result<Self> {
        let full = Bits::full(target);
        if rows.iter().any(|r| !r.is_subset(&full)) {
            return Err(Error::DimensionMismatch("row outside target carrier".into()));
        }
        Ok(Relation {
            source: rows.len(),
            target,
            rows,
        })
    }

    /// Relation whose pairs are the bits of `mask` in row-major order.
    /// Only valid for `source * target <= 64`.
    pub fn from_mask(source: usize, target: usize, mask: u64) -> Self {
        assert!(source * target <= 64);
        Self::from_fn(source, target, |a, b| mask >> (a * target + b) & 1 == 1)
    }

    pub fn source_len(&self) -> usize {
        self.source
    }

    pub fn target_len(&self) -> usize {
        self.target
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    /// `R[a]`
    #[inline]
    pub fn image(&self, a: usize) -> Bits {
        self.rows[a]
    }

    /// `R[A]`
    pub fn image_of(&self, set: Bits) -> Bits {
        set.iter().fold(Bits::empty(), |acc, a| acc | self.rows[a])
    }

    /// `R⁻¹[b] = {a : a R b}`
    pub fn preimage(&self, b: usize) -> Bits {
        (0..self.source).filter(|&a| self.rows[a].contains(b)).collect()
    }

    /// `R⁻¹[B]`
    pub fn preimage_of(&self, set: Bits) -> Bits {
        (0..self.source).filter(|&a| self.rows[a].intersects(&set)).collect()
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.target, self.source);
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.iter() {
                out.rows[b].insert(a);
            }
        }
        out
    }

    /// Relational composition in diagrammatic order:
    /// `a (R ∘ S) c` iff there is `b` with `a R b` and `b S c`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.source, self.target, other.source, other.target
            )));
        }
        let rows = self.rows.iter().map(|row| other.image_of(*row)).collect();
        Ok(Relation {
            source: self.source,
            target: other.target,
            rows,
        })
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Bits::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Bits::is_empty)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Lexicographically least pair in exactly one of the two relations.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .find_map(|(a, (x, y))| {
                let diff = (*x - *y) | (*y - *x);
                diff.first().map(|b| (a, b))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_relation(n: usize, m: usize) -> impl Strategy<Value = Relation> {
        any::<u64>().prop_map(move |mask| Relation::from_mask(n, m, mask))
    }

    #[test]
    fn compose_with_empty() {
        let s = Relation::full(3, 3);
        let e = Relation::empty(3, 3);
        assert!(e.compose(&s).unwrap().is_empty());
        assert!(matches!(
            Relation::empty(2, 3).compose(&Relation::empty(2, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn compose_matches_definition(r in arb_relation(4, 3), s in arb_relation(3, 5)) {
            let rs = r.compose(&s).unwrap();
            for a in 0..4 {
                for c in 0..5 {
                    let exists = (0..3).any(|b| r.contains(a, b) && s.contains(b, c));
                    prop_assert_eq!(rs.contains(a, c), exists);
                }
            }
        }

        #[test]
        fn converse_reverses_composition(r in arb_relation(3, 4), s in arb_relation(4, 2)) {
            let lhs = r.compose(&s).unwrap().converse();
            let rhs = s.converse().compose(&r.converse()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(r.converse().converse(), r);
        }
    }
}
