//! Congruences of finite lattices: compatibility checks, principal and
//! generated congruences, the congruence lattice, quotients and upper
//! intervals.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError, LatticeId};
use crate::partition::{Partition, PartitionError, UnionFind};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("congruences belong to different lattices")]
    MixedLattices,
    #[error("congruence is not an element of this congruence lattice")]
    NotInLattice,
    #[error("partition {0} is not compatible with meet and join")]
    NotACongruence(String),
    #[error("congruence does not contain the quotient's kernel")]
    NotAbove,
    #[error("partition has {got} points, lattice has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A partition of a specific lattice that is compatible with meet and join.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    lattice: LatticeId,
    part: Partition,
}

impl Congruence {
    /// Checks compatibility before wrapping.
    pub fn new(l: &FiniteLattice, part: Partition) -> Result<Self, CongruenceError> {
        if part.len() != l.len() {
            return Err(CongruenceError::SizeMismatch { expected: l.len(), got: part.len() });
        }
        if !is_congruence(l, &part) {
            return Err(CongruenceError::NotACongruence(part.to_string()));
        }
        Ok(Congruence { lattice: l.id(), part })
    }

    /// Parses the block text form and checks compatibility.
    pub fn parse(l: &FiniteLattice, text: &str) -> Result<Self, CongruenceError> {
        Self::new(l, Partition::parse(l.len(), text)?)
    }

    /// Builds from blocks of element labels, e.g. `&[&["0", "x"], &["y", "1"]]`.
    pub fn from_label_blocks(l: &FiniteLattice, blocks: &[&[&str]]) -> Result<Self, CongruenceError> {
        let idx = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|s| l.index_of(s).ok_or_else(|| PartitionError::Parse(format!("unknown element {s}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(l, Partition::from_blocks(l.len(), &idx)?)
    }

    /// Wraps a partition already known to be compatible.
    pub(crate) fn trusted(lattice: LatticeId, part: Partition) -> Self {
        Congruence { lattice, part }
    }

    pub fn delta(l: &FiniteLattice) -> Self {
        Congruence { lattice: l.id(), part: Partition::discrete(l.len()) }
    }

    pub fn nabla(l: &FiniteLattice) -> Self {
        Congruence { lattice: l.id(), part: Partition::full(l.len()) }
    }

    pub fn lattice_id(&self) -> LatticeId {
        self.lattice
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn class_count(&self) -> usize {
        self.part.class_count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.part.blocks()
    }

    pub fn is_delta(&self) -> bool {
        self.part.is_discrete()
    }

    pub fn is_nabla(&self) -> bool {
        self.part.is_full()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.part.same_block(a, b)
    }

    /// `self ⊆ other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.part.refines(&other.part)
    }

    /// Block form with labels, e.g. `{0,x},{y,z,1}`.
    pub fn display(&self, l: &FiniteLattice) -> String {
        self.part.display_with(|x| l.label(x).to_string())
    }
}

/// Compatibility of `p` with meet and join. Blocks that are not convex are
/// rejected before the cubic check.
pub fn is_congruence(l: &FiniteLattice, p: &Partition) -> bool {
    let n = l.len();
    if p.len() != n {
        return false;
    }
    for block in p.blocks() {
        let lo = block.iter().fold(block[0], |acc, &x| l.meet(acc, x));
        let hi = block.iter().fold(block[0], |acc, &x| l.join(acc, x));
        // A congruence class is a convex sublattice: closed under meet/join
        // and containing every element between its extremes.
        if !p.same_block(lo, block[0]) || !p.same_block(hi, block[0]) {
            return false;
        }
        if l.elements().any(|c| l.leq(lo, c) && l.leq(c, hi) && !p.same_block(c, block[0])) {
            return false;
        }
    }
    for (x, y) in p.pairs() {
        for z in 0..n {
            if !p.same_block(l.meet(x, z), l.meet(y, z)) || !p.same_block(l.join(x, z), l.join(y, z)) {
                return false;
            }
        }
    }
    true
}

/// Least congruence containing every pair, by union-find saturation: each
/// successful merge of `x ~ y` enqueues `(x∧z, y∧z)` and `(x∨z, y∨z)`.
pub fn generated_congruence(l: &FiniteLattice, pairs: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    let mut queue = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    saturate(l, &mut uf, queue);
    Congruence { lattice: l.id(), part: uf.into_partition() }
}

fn saturate(l: &FiniteLattice, uf: &mut UnionFind, mut queue: VecDeque<(usize, usize)>) {
    while let Some((x, y)) = queue.pop_front() {
        for z in l.elements() {
            let (mx, my) = (l.meet(x, z), l.meet(y, z));
            if uf.union(mx, my) {
                queue.push_back((mx, my));
            }
            let (jx, jy) = (l.join(x, z), l.join(y, z));
            if uf.union(jx, jy) {
                queue.push_back((jx, jy));
            }
        }
    }
}

/// `Cg(a, b)`.
pub fn principal_congruence(l: &FiniteLattice, a: usize, b: usize) -> Congruence {
    generated_congruence(l, &[(a, b)])
}

/// Least congruence containing the equivalence `p` (its generated closure).
pub fn congruence_closure(l: &FiniteLattice, p: &Partition) -> Congruence {
    let pairs: Vec<(usize, usize)> = (0..p.len()).filter(|&i| p.rep_of(i) != i).map(|i| (p.rep_of(i), i)).collect();
    generated_congruence(l, &pairs)
}

pub fn congruence_meet(a: &Congruence, b: &Congruence) -> Result<Congruence, CongruenceError> {
    if a.lattice != b.lattice {
        return Err(CongruenceError::MixedLattices);
    }
    Ok(Congruence { lattice: a.lattice, part: a.part.meet(&b.part) })
}

/// The equivalence join of two congruences is again a congruence.
pub fn congruence_join(a: &Congruence, b: &Congruence) -> Result<Congruence, CongruenceError> {
    if a.lattice != b.lattice {
        return Err(CongruenceError::MixedLattices);
    }
    Ok(Congruence { lattice: a.lattice, part: a.part.join(&b.part) })
}

/// `Con(L)` ordered by refinement.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    lattice: LatticeId,
    congruences: Vec<Congruence>,
    index: HashMap<Partition, usize>,
    order: FiniteLattice,
    delta: usize,
    nabla: usize,
}

/// Sort key: more classes first, then the representative array.
fn canonical_key(p: &Partition) -> (std::cmp::Reverse<usize>, Vec<usize>) {
    (std::cmp::Reverse(p.class_count()), p.rep().to_vec())
}

/// Every congruence is a join of principal ones, so `Con(L)` is the closure
/// of `{Δ} ∪ {Cg(a,b) : a < b}` under joins.
pub fn enumerate_con(l: &FiniteLattice) -> CongruenceLattice {
    let n = l.len();
    let mut principals: Vec<Partition> = Vec::new();
    let mut seen: HashSet<Partition> = HashSet::new();
    let delta = Partition::discrete(n);
    seen.insert(delta.clone());
    for a in 0..n {
        for b in a + 1..n {
            let p = principal_congruence(l, a, b).part;
            if seen.insert(p.clone()) {
                principals.push(p);
            }
        }
    }
    let mut frontier = principals.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for p in &principals {
                let j = s.join(p);
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let parts: Vec<Partition> = seen.into_iter().collect();
    CongruenceLattice::from_partitions(l, parts).expect("joins of principal congruences form a lattice")
}

impl CongruenceLattice {
    /// Builds the refinement order on a set of congruences of `l`, which
    /// must form a lattice under refinement.
    pub fn from_partitions(l: &FiniteLattice, mut parts: Vec<Partition>) -> Result<Self, CongruenceError> {
        parts.sort_by_key(canonical_key);
        parts.dedup();
        let labels = parts.iter().map(|p| p.to_string()).collect();
        let order = FiniteLattice::from_order_fn(format!("Con({})", l.name()), labels, |a, b| {
            parts[a].refines(&parts[b])
        })?;
        let index = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect::<HashMap<_, _>>();
        let delta = order.bottom();
        let nabla = order.top();
        let congruences = parts.into_iter().map(|part| Congruence { lattice: l.id(), part }).collect();
        Ok(CongruenceLattice { lattice: l.id(), congruences, index, order, delta, nabla })
    }

    pub fn lattice_id(&self) -> LatticeId {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        if c.lattice != self.lattice {
            return None;
        }
        self.index.get(&c.part).copied()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.index_of(c).is_some()
    }

    pub fn delta_index(&self) -> usize {
        self.delta
    }

    pub fn nabla_index(&self) -> usize {
        self.nabla
    }

    /// Refinement order as a lattice on congruence indices.
    pub fn order(&self) -> &FiniteLattice {
        &self.order
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.order.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.order.join(i, j)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.hasse().covers
    }

    /// Congruences with block structure, in index order; the set view used
    /// in comparisons.
    pub fn partitions(&self) -> HashSet<Partition> {
        self.index.keys().cloned().collect()
    }

    /// Graphviz rendering with nodes labeled by blocks; `fill` picks an
    /// optional fill color per congruence.
    pub fn to_dot_with(&self, l: &FiniteLattice, fill: impl Fn(usize) -> Option<&'static str>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"Con({})\" {{", l.name().replace('"', "\\\""));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, c) in self.congruences.iter().enumerate() {
            let label = c.display(l).replace('"', "\\\"");
            match fill(i) {
                Some(color) => {
                    let _ = writeln!(out, "  c{i} [label=\"{label}\", style=filled, fillcolor=\"{color}\"];");
                }
                None => {
                    let _ = writeln!(out, "  c{i} [label=\"{label}\"];");
                }
            }
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dot(&self, l: &FiniteLattice) -> String {
        self.to_dot_with(l, |_| None)
    }
}

/// A quotient lattice with its canonical surjection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: FiniteLattice,
    /// Element of the original lattice to block index.
    pub projection: Vec<usize>,
    pub theta: Congruence,
}

impl Quotient {
    /// `γ/θ` for `θ ⊆ γ`: blocks of the quotient related when their members are.
    pub fn lift(&self, gamma: &Congruence) -> Result<Congruence, CongruenceError> {
        if gamma.lattice != self.theta.lattice {
            return Err(CongruenceError::MixedLattices);
        }
        if !self.theta.refines(gamma) {
            return Err(CongruenceError::NotAbove);
        }
        let m = self.lattice.len();
        let mut reps = vec![usize::MAX; m];
        for (a, &b) in self.projection.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = a;
            }
        }
        let labels: Vec<usize> = reps.iter().map(|&a| gamma.part.rep_of(a)).collect();
        Ok(Congruence { lattice: self.lattice.id(), part: Partition::from_labels(&labels) })
    }

    /// Pulls a congruence of the quotient back along the projection.
    pub fn pull_back(&self, psi: &Congruence) -> Result<Congruence, CongruenceError> {
        if psi.lattice != self.lattice.id() {
            return Err(CongruenceError::MixedLattices);
        }
        let labels: Vec<usize> = self.projection.iter().map(|&b| psi.part.rep_of(b)).collect();
        Ok(Congruence { lattice: self.theta.lattice, part: Partition::from_labels(&labels) })
    }
}

/// `L/θ`: blocks ordered by least member, labeled `{a,b,...}`.
pub fn quotient(l: &FiniteLattice, theta: &Congruence) -> Result<Quotient, CongruenceError> {
    if theta.lattice != l.id() {
        return Err(CongruenceError::MixedLattices);
    }
    let blocks = theta.blocks();
    let projection = theta.part.block_index();
    let labels = blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    // a/θ <= b/θ iff (a∧b)/θ = a/θ
    let lattice = FiniteLattice::from_order_fn(format!("{}/θ", l.name()), labels, |i, j| {
        projection[l.meet(blocks[i][0], blocks[j][0])] == i
    })?;
    Ok(Quotient { lattice, projection, theta: theta.clone() })
}

/// The upper interval `[θ)` of a congruence lattice.
#[derive(Debug, Clone)]
pub struct Interval {
    /// Indices into the congruence lattice, increasing.
    pub members: Vec<usize>,
    pub order: FiniteLattice,
}

pub fn interval_above(con: &CongruenceLattice, theta: &Congruence) -> Result<Interval, CongruenceError> {
    let i = con.index_of(theta).ok_or(CongruenceError::NotInLattice)?;
    let members: Vec<usize> = con.order.up_set(i).ones().collect();
    let order = con.order.sublattice(format!("[{})", theta.part), &members)?;
    Ok(Interval { members, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers("P", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)])
            .unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers("D", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap()
    }

    fn square() -> FiniteLattice {
        FiniteLattice::from_covers("L2^2", &["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn blocks(l: &FiniteLattice, b: &[&[&str]]) -> Congruence {
        Congruence::from_label_blocks(l, b).unwrap()
    }

    #[test]
    fn pentagon_named_congruences() {
        let p = pentagon();
        let beta = Partition::parse(5, "[[0,1],[2,3,4]]").unwrap();
        assert!(is_congruence(&p, &beta));
        let gamma = blocks(&p, &[&["0"], &["x"], &["y", "z"], &["1"]]);
        assert_eq!(principal_congruence(&p, 2, 3), gamma);
        assert!(is_congruence(&p, &Partition::discrete(5)));
    }

    #[test]
    fn diamond_rejects_partial_collapse() {
        let d = diamond();
        assert!(!is_congruence(&d, &Partition::parse(5, "[[0,1],[2],[3],[4]]").unwrap()));
        assert!(matches!(
            Congruence::parse(&d, "[[0,1],[2],[3],[4]]"),
            Err(CongruenceError::NotACongruence(_))
        ));
    }

    #[test]
    fn principal_congruences() {
        let sq = square();
        assert!(principal_congruence(&sq, 2, 2).is_delta());
        let rho = blocks(&sq, &[&["0", "x"], &["y", "1"]]);
        assert_eq!(principal_congruence(&sq, 0, 1), rho);
    }

    #[test]
    fn generated_congruences() {
        let p = pentagon();
        assert!(generated_congruence(&p, &[]).is_delta());
        let beta = blocks(&p, &[&["0", "x"], &["y", "z", "1"]]);
        assert_eq!(generated_congruence(&p, &[(0, 1), (2, 3)]), beta);
        let sq = square();
        assert!(generated_congruence(&sq, &[(0, 1), (0, 2)]).is_nabla());
    }

    #[test]
    fn meets_and_joins() {
        let p = pentagon();
        let alpha = blocks(&p, &[&["0", "y", "z"], &["x", "1"]]);
        let beta = blocks(&p, &[&["0", "x"], &["y", "z", "1"]]);
        let gamma = blocks(&p, &[&["0"], &["x"], &["y", "z"], &["1"]]);
        assert!(congruence_join(&alpha, &beta).unwrap().is_nabla());
        assert_eq!(congruence_meet(&alpha, &beta).unwrap(), gamma);
        assert_eq!(congruence_meet(&alpha, &Congruence::nabla(&p)).unwrap(), alpha);
        assert_eq!(congruence_join(&alpha, &Congruence::delta(&p)).unwrap(), alpha);
        assert_eq!(
            congruence_meet(&alpha, &Congruence::delta(&square())),
            Err(CongruenceError::MixedLattices)
        );

        let l4 = FiniteLattice::chain(4).unwrap();
        let a = Congruence::parse(&l4, "[[0,1],[2],[3]]").unwrap();
        let b = Congruence::parse(&l4, "[[0],[1,2],[3]]").unwrap();
        assert!(congruence_meet(&a, &b).unwrap().is_delta());
    }

    #[test]
    fn congruence_lattices_of_small_examples() {
        let p = pentagon();
        let con = enumerate_con(&p);
        assert_eq!(con.len(), 5);
        assert!(con.get(con.delta_index()).is_delta());
        assert!(con.get(con.nabla_index()).is_nabla());
        assert_eq!(enumerate_con(&diamond()).len(), 2);
        // chain compositions: 2^(n-1)
        assert_eq!(enumerate_con(&FiniteLattice::chain(4).unwrap()).len(), 8);
    }

    #[test]
    fn quotients() {
        let p = pentagon();
        let q = quotient(&p, &Congruence::delta(&p)).unwrap();
        assert!(q.lattice.is_isomorphic(&p));
        let q = quotient(&p, &Congruence::nabla(&p)).unwrap();
        assert!(q.lattice.is_trivial());
        let alpha = blocks(&p, &[&["0", "y", "z"], &["x", "1"]]);
        let q = quotient(&p, &alpha).unwrap();
        assert!(q.lattice.is_isomorphic(&FiniteLattice::chain(2).unwrap()));
        assert_eq!(q.lattice.labels(), &["{0,y,z}".to_string(), "{x,1}".to_string()]);
        assert_eq!(q.projection, vec![0, 1, 0, 0, 1]);
        assert!(q.lift(&alpha).unwrap().is_delta());
        assert!(q.lift(&Congruence::nabla(&p)).unwrap().is_nabla());
        assert_eq!(q.lift(&Congruence::delta(&p)), Err(CongruenceError::NotAbove));
        assert_eq!(q.pull_back(&Congruence::delta(&q.lattice)).unwrap(), alpha);
    }

    #[test]
    fn upper_intervals() {
        let p = pentagon();
        let con = enumerate_con(&p);
        let whole = interval_above(&con, &Congruence::delta(&p)).unwrap();
        assert_eq!(whole.members.len(), 5);
        let gamma = blocks(&p, &[&["0"], &["x"], &["y", "z"], &["1"]]);
        let above = interval_above(&con, &gamma).unwrap();
        assert_eq!(above.members.len(), 4);
        assert!(above.order.is_isomorphic(&square()));
        let top = interval_above(&con, &Congruence::nabla(&p)).unwrap();
        assert_eq!(top.members, vec![con.nabla_index()]);
        assert_eq!(
            interval_above(&con, &Congruence::delta(&square())).unwrap_err(),
            CongruenceError::NotInLattice
        );
    }

    #[test]
    fn dot_export_lists_every_congruence() {
        let d = diamond();
        let con = enumerate_con(&d);
        let dot = con.to_dot(&d);
        assert!(dot.contains("c0 [label=\"{0},{x},{y},{z},{1}\"];"));
        assert!(dot.contains("c0 -> c1;"));
    }
}
