//! Partitions of `0..n` in canonical minimum-representative form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("element {0} appears in more than one block")]
    Overlap(usize),
    #[error("element {0} is missing from every block")]
    Missing(usize),
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("empty block")]
    EmptyBlock,
    #[error("malformed block list: {0}")]
    Parse(String),
}

/// Disjoint-set forest with path halving; unions keep the smaller index as root.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let rep = (0..self.parent.len()).map(|i| self.find(i)).collect();
        // Roots are always the least index of their class.
        Partition { rep }
    }
}

/// An equivalence relation on `0..n`, stored as `rep[i]` = least member of
/// the block of `i`. Equality is representational equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Partition { rep: (0..n).collect() }
    }

    /// One block.
    pub fn full(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Canonicalizes any class labeling: `i` and `j` share a block iff
    /// `labels[i] == labels[j]`.
    pub fn from_labels<K: std::hash::Hash + Eq>(labels: &[K]) -> Self {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(i, k)| *first.entry(k).or_insert(i))
            .collect();
        Partition { rep }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut rep = vec![usize::MAX; n];
        for block in blocks {
            let &min = block.iter().min().ok_or(PartitionError::EmptyBlock)?;
            for &x in block {
                if x >= n {
                    return Err(PartitionError::OutOfRange(x));
                }
                if rep[x] != usize::MAX {
                    return Err(PartitionError::Overlap(x));
                }
                rep[x] = min;
            }
        }
        if let Some(missing) = rep.iter().position(|&r| r == usize::MAX) {
            return Err(PartitionError::Missing(missing));
        }
        Ok(Partition { rep })
    }

    /// Parses the text form `[[0,1],[2],[3,4]]`.
    pub fn parse(n: usize, text: &str) -> Result<Self, PartitionError> {
        let blocks: Vec<Vec<usize>> =
            serde_json::from_str(text).map_err(|e| PartitionError::Parse(e.to_string()))?;
        Self::from_blocks(n, &blocks)
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn rep(&self) -> &[usize] {
        &self.rep
    }

    #[inline]
    pub fn rep_of(&self, i: usize) -> usize {
        self.rep[i]
    }

    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn class_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(i, &r)| i == r).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_full(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Blocks as sorted lists, ordered by least member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in self.rep.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(i);
        }
        blocks
    }

    /// Position of each element's block in [`Partition::blocks`] order.
    pub fn block_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.len()];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.len());
        for &r in &self.rep {
            if index[r] == usize::MAX {
                index[r] = next;
                next += 1;
            }
            out.push(index[r]);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| other.rep[i] == other.rep[r])
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = self.rep.iter().copied().zip(other.rep.iter().copied()).collect();
        Partition::from_labels(&keys)
    }

    /// Equivalence join: transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = self.to_union_find();
        for (i, &r) in other.rep.iter().enumerate() {
            uf.union(i, r);
        }
        uf.into_partition()
    }

    pub fn to_union_find(&self) -> UnionFind {
        UnionFind { parent: self.rep.clone() }
    }

    /// Pairs `(a, b)` with `a < b` in the same block.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (a + 1..n).filter(move |&b| self.same_block(a, b)).map(move |b| (a, b)))
    }

    /// Block list with elements rendered through `label`, e.g. `{0,x},{y,z,1}`.
    pub fn display_with(&self, label: impl Fn(usize) -> String) -> String {
        self.blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|&x| label(x)).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "[")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = PartitionError;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let p = Partition::from_labels(&['b', 'a', 'b', 'c', 'a']);
        assert_eq!(p.rep(), &[0, 1, 0, 3, 1]);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1, 4], vec![3]]);
        assert_eq!(p.class_count(), 3);
        assert_eq!(p.to_string(), "[[0,2],[1,4],[3]]");
    }

    #[test]
    fn block_errors() {
        assert_eq!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::from_blocks(3, &[vec![0, 1]]), Err(PartitionError::Missing(2)));
        assert_eq!(Partition::from_blocks(2, &[vec![0, 5]]), Err(PartitionError::OutOfRange(5)));
        assert!(Partition::parse(3, "[[0,1],[2]").is_err());
    }

    #[test]
    fn text_form_round_trip() {
        let p = Partition::parse(5, "[[0,1],[2],[3,4]]").unwrap();
        assert_eq!(p.to_string(), "[[0,1],[2],[3,4]]");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn meet_and_join_on_four_points() {
        let a = Partition::parse(4, "[[0,1],[2],[3]]").unwrap();
        let b = Partition::parse(4, "[[0],[1,2],[3]]").unwrap();
        assert!(a.meet(&b).is_discrete());
        assert_eq!(a.join(&b), Partition::parse(4, "[[0,1,2],[3]]").unwrap());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels))
    }

    proptest! {
        #[test]
        fn rep_is_canonical(p in arb_partition(8)) {
            for i in 0..p.len() {
                prop_assert!(p.rep_of(i) <= i);
                prop_assert_eq!(p.rep_of(p.rep_of(i)), p.rep_of(i));
            }
            prop_assert_eq!(p.blocks().len(), p.class_count());
            let covered: usize = p.blocks().iter().map(Vec::len).sum();
            prop_assert_eq!(covered, p.len());
        }

        #[test]
        fn meet_join_are_bounds(a in arb_partition(7), b in arb_partition(7)) {
            let m = a.meet(&b);
            let j = a.join(&b);
            prop_assert!(m.refines(&a) && m.refines(&b));
            prop_assert!(a.refines(&j) && b.refines(&j));
            let back = Partition::from_blocks(7, &a.blocks()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
