//! Finite lattices given by their order relation, with eagerly tabulated
//! meet and join.
//!
//! Elements are dense indices `0..n` with a parallel label array. A lattice
//! can be loaded from a cover list (closed transitively on load) or from a
//! full order matrix; both routes go through [`validate_lattice`], which
//! reports the first violated axiom.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Structural identity of a lattice: a hash of its size, labels and order.
///
/// Two lattices with the same labels and the same order share an id, so
/// congruences and morphisms can be checked for compatibility without
/// pointer identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeId(pub u64);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("order matrix must be {0}x{0}")]
    NotSquare(usize),
    #[error("not a partial order: witness pair ({0}, {1})")]
    NotAPoset(usize, usize),
    #[error("elements {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("elements {0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("lattice file: {0}")]
    Format(String),
}

/// Raw order data accepted by [`validate_lattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderData {
    /// `(lower, upper)` pairs; closed reflexively and transitively on load.
    Covers(Vec<(usize, usize)>),
    /// Full `n x n` relation, `m[a][b]` iff `a <= b`.
    Matrix(Vec<Vec<bool>>),
}

/// Interchange format: `{"name", "elements", "covers"}` or `{"name", "elements", "leq"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<u8>>>,
}

/// Covering pairs `(lower, upper)` of a lattice, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    /// Upper covers of each element.
    pub fn successors(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            out[a].push(b);
        }
        out
    }

    /// Lower covers of each element.
    pub fn predecessors(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            out[b].push(a);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    /// `up[a]` holds every `b` with `a <= b`.
    up: Vec<FixedBitSet>,
    /// `down[a]` holds every `b` with `b <= a`.
    down: Vec<FixedBitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    id: LatticeId,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FiniteLattice {}

/// Validates raw order data and tabulates meet and join.
pub fn validate_lattice(
    name: impl Into<String>,
    labels: Vec<String>,
    order: OrderData,
) -> Result<FiniteLattice, LatticeError> {
    let n = labels.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let up = match order {
        OrderData::Covers(covers) => closure_of_covers(n, &covers)?,
        OrderData::Matrix(m) => checked_matrix(n, &m)?,
    };
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            down[b].insert(a);
        }
    }

    let meet = bound_table(n, &down, LatticeError::NoMeet)?;
    let join = bound_table(n, &up, LatticeError::NoJoin)?;

    // Meet of everything is the bottom, join of everything the top.
    let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
    let top = (0..n).fold(0, |acc, x| join[acc * n + x]);

    let mut hasher = DefaultHasher::new();
    n.hash(&mut hasher);
    labels.hash(&mut hasher);
    for row in &up {
        row.ones().collect::<Vec<_>>().hash(&mut hasher);
    }
    let id = LatticeId(hasher.finish());

    Ok(FiniteLattice { name: name.into(), labels, up, down, meet, join, bottom, top, id })
}

fn closure_of_covers(n: usize, covers: &[(usize, usize)]) -> Result<Vec<FixedBitSet>, LatticeError> {
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in up.iter_mut().enumerate() {
        row.insert(a);
    }
    for &(a, b) in covers {
        if a >= n {
            return Err(LatticeError::IndexOutOfRange(a));
        }
        if b >= n {
            return Err(LatticeError::IndexOutOfRange(b));
        }
        if a == b {
            return Err(LatticeError::NotAPoset(a, b));
        }
        up[a].insert(b);
    }
    // Warshall over bitset rows.
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    for a in 0..n {
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(LatticeError::NotAPoset(a.min(b), a.max(b)));
            }
        }
    }
    Ok(up)
}

fn checked_matrix(n: usize, m: &[Vec<bool>]) -> Result<Vec<FixedBitSet>, LatticeError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(LatticeError::NotSquare(n));
    }
    for a in 0..n {
        if !m[a][a] {
            return Err(LatticeError::NotAPoset(a, a));
        }
        for b in 0..n {
            if a != b && m[a][b] && m[b][a] {
                return Err(LatticeError::NotAPoset(a.min(b), a.max(b)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !m[a][b] {
                continue;
            }
            for c in 0..n {
                if m[b][c] && !m[a][c] {
                    return Err(LatticeError::NotAPoset(a, c));
                }
            }
        }
    }
    Ok(m.iter()
        .map(|row| {
            let mut set = FixedBitSet::with_capacity(n);
            for (b, &v) in row.iter().enumerate() {
                set.set(b, v);
            }
            set
        })
        .collect())
}

/// For `rows = down` this is the meet table, for `rows = up` the join table.
fn bound_table(
    n: usize,
    rows: &[FixedBitSet],
    missing: fn(usize, usize) -> LatticeError,
) -> Result<Vec<usize>, LatticeError> {
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let mut common = rows[a].clone();
            common.intersect_with(&rows[b]);
            let best = common.ones().find(|&g| rows[g] == common).ok_or_else(|| missing(a, b))?;
            table[a * n + b] = best;
            table[b * n + a] = best;
        }
    }
    Ok(table)
}

impl FiniteLattice {
    pub fn from_covers(
        name: impl Into<String>,
        labels: &[&str],
        covers: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        validate_lattice(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            OrderData::Covers(covers.to_vec()),
        )
    }

    /// Builds a lattice from an order predicate on `0..labels.len()`.
    pub fn from_order_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let m = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        validate_lattice(name, labels, OrderData::Matrix(m))
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        Self::from_order_fn(format!("L{n}"), (0..n).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    pub fn from_file(file: &LatticeFile) -> Result<Self, LatticeError> {
        let order = match (&file.covers, &file.leq) {
            (Some(_), Some(_)) => {
                return Err(LatticeError::Format("give either \"covers\" or \"leq\", not both".into()))
            }
            (Some(c), None) => OrderData::Covers(c.iter().map(|p| (p[0], p[1])).collect()),
            (None, Some(m)) => OrderData::Matrix(
                m.iter().map(|row| row.iter().map(|&v| v != 0).collect()).collect(),
            ),
            (None, None) => OrderData::Covers(Vec::new()),
        };
        let labels = match (&order, file.elements.is_empty()) {
            (OrderData::Matrix(m), true) => (0..m.len()).map(|i| i.to_string()).collect(),
            _ => file.elements.clone(),
        };
        if let OrderData::Matrix(m) = &order {
            if m.len() != labels.len() {
                return Err(LatticeError::LabelCount { expected: m.len(), got: labels.len() });
            }
        }
        validate_lattice(file.name.clone(), labels, order)
    }

    pub fn from_json(text: &str) -> Result<Self, LatticeError> {
        let file: LatticeFile =
            serde_json::from_str(text).map_err(|e| LatticeError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Interchange form using the cover list.
    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            name: self.name.clone(),
            elements: self.labels.clone(),
            covers: Some(self.hasse().covers.iter().map(|&(a, b)| [a, b]).collect()),
            leq: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("lattice file serializes")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same order, new labels. The id changes with the labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.len() {
            return Err(LatticeError::LabelCount { expected: self.len(), got: labels.len() });
        }
        Self::from_order_fn(self.name.clone(), labels, |a, b| self.leq(a, b))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Principal filter `[a)`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Principal ideal `(a]`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn hasse(&self) -> HasseDiagram {
        let n = self.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let between = self.up[a].ones().any(|c| c != a && c != b && self.leq(c, b));
                if !between {
                    covers.push((a, b));
                }
            }
        }
        HasseDiagram { covers }
    }

    /// Graphviz rendering of the Hasse diagram; edges run lower to upper.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(&self.name));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
        }
        for (a, b) in self.hasse().covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            self.up[x].ones().all(|z| {
                (0..n).all(|y| self.join(x, self.meet(y, z)) == self.meet(self.join(x, y), z))
            })
        })
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.comparable(a, b)))
    }

    /// Every element of every interval `[a, b]` has a complement in that interval.
    pub fn is_relatively_complemented(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            self.up[a].ones().all(|b| {
                self.up[a].ones().filter(|&x| self.leq(x, b)).all(|x| {
                    self.up[a]
                        .ones()
                        .filter(|&y| self.leq(y, b))
                        .any(|y| self.meet(x, y) == a && self.join(x, y) == b)
                })
            })
        })
    }

    pub fn is_complemented(&self) -> bool {
        let (bot, top) = (self.bottom, self.top);
        self.elements()
            .all(|x| self.elements().any(|y| self.meet(x, y) == bot && self.join(x, y) == top))
    }

    /// Bounded, distributive and complemented.
    pub fn is_boolean_lattice(&self) -> bool {
        self.is_distributive() && self.is_complemented()
    }

    /// Non-extremal elements `c` comparable to everything, so that the
    /// lattice is the ordinal sum of `(c]` and `[c)`.
    pub fn ordinal_sum_decomposition_hint(&self) -> Vec<usize> {
        self.elements()
            .filter(|&c| c != self.bottom && c != self.top)
            .filter(|&c| self.elements().all(|x| self.comparable(c, x)))
            .collect()
    }

    /// The sublattice on `members` (which must be closed under meet and join),
    /// re-indexed in increasing order of the original indices.
    pub fn sublattice(&self, name: impl Into<String>, members: &[usize]) -> Result<Self, LatticeError> {
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        Self::from_order_fn(name, labels, |a, b| self.leq(members[a], members[b]))
    }

    /// Whether `set` is closed under meet and join.
    pub fn is_sublattice(&self, set: &FixedBitSet) -> bool {
        let members: Vec<usize> = set.ones().collect();
        !members.is_empty()
            && members.iter().all(|&a| {
                members.iter().all(|&b| set.contains(self.meet(a, b)) && set.contains(self.join(a, b)))
            })
    }

    /// Element invariants that any isomorphism preserves.
    fn invariants(&self) -> Vec<[usize; 4]> {
        let h = self.hasse();
        let mut lower = vec![0; self.len()];
        let mut upper = vec![0; self.len()];
        for (a, b) in h.covers {
            upper[a] += 1;
            lower[b] += 1;
        }
        self.elements()
            .map(|a| [self.down[a].count_ones(..), self.up[a].count_ones(..), lower[a], upper[a]])
            .collect()
    }

    /// Labeling-independent code: two lattices are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        let inv = self.invariants();
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&a| inv[a]);
        let slot_inv: Vec<[usize; 4]> = order.iter().map(|&a| inv[a]).collect();

        let mut search = CanonSearch {
            lattice: self,
            inv: &inv,
            slot_inv: &slot_inv,
            perm: Vec::with_capacity(self.len()),
            used: vec![false; self.len()],
            code: Vec::new(),
            best: None,
        };
        search.run();
        let code = search.best.unwrap_or_default();
        CanonicalForm { invariants: slot_inv, code }
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism(other).is_some()
    }

    /// An order isomorphism `self → other` as an index map, if one exists.
    pub fn isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let (ia, ib) = (self.invariants(), other.invariants());
        let (mut sa, mut sb) = (ia.clone(), ib.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&a| (self.down[a].count_ones(..), a));
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        fn extend(
            a: &FiniteLattice,
            b: &FiniteLattice,
            ia: &[[usize; 4]],
            ib: &[[usize; 4]],
            order: &[usize],
            pos: usize,
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let Some(&x) = order.get(pos) else { return true };
            for y in 0..b.len() {
                if used[y] || ia[x] != ib[y] {
                    continue;
                }
                let consistent = order[..pos].iter().all(|&q| {
                    a.leq(q, x) == b.leq(map[q], y) && a.leq(x, q) == b.leq(y, map[q])
                });
                if consistent {
                    map[x] = y;
                    used[y] = true;
                    if extend(a, b, ia, ib, order, pos + 1, map, used) {
                        return true;
                    }
                    used[y] = false;
                }
            }
            false
        }
        extend(self, other, &ia, &ib, &order, 0, &mut map, &mut used).then_some(map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    invariants: Vec<[usize; 4]>,
    code: Vec<bool>,
}

/// Backtracking over invariant-respecting placements, keeping the
/// lexicographically least order code and pruning on prefixes.
struct CanonSearch<'a> {
    lattice: &'a FiniteLattice,
    inv: &'a [[usize; 4]],
    slot_inv: &'a [[usize; 4]],
    perm: Vec<usize>,
    used: Vec<bool>,
    code: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let pos = self.perm.len();
        if pos == self.slot_inv.len() {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        for cand in 0..self.inv.len() {
            if self.used[cand] || self.inv[cand] != self.slot_inv[pos] {
                continue;
            }
            let mark = self.code.len();
            for &q in &self.perm {
                self.code.push(self.lattice.leq(q, cand));
                self.code.push(self.lattice.leq(cand, q));
            }
            let prune = self
                .best
                .as_ref()
                .is_some_and(|best| self.code[..] > best[..self.code.len()]);
            if !prune {
                self.used[cand] = true;
                self.perm.push(cand);
                self.run();
                self.perm.pop();
                self.used[cand] = false;
            }
            self.code.truncate(mark);
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(
            "P",
            &["0", "x", "y", "z", "1"],
            &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
        )
        .unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(
            "D",
            &["0", "x", "y", "z", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    fn cube() -> FiniteLattice {
        FiniteLattice::from_order_fn("L2^3", (0..8).map(|i| format!("{i:03b}")).collect(), |a, b| {
            a & b == a
        })
        .unwrap()
    }

    #[test]
    fn pentagon_validates() {
        let p = pentagon();
        assert_eq!(p.len(), 5);
        assert_eq!(p.bottom(), 0);
        assert_eq!(p.top(), 4);
        assert_eq!(p.join(1, 2), 4);
        assert_eq!(p.meet(1, 3), 0);
        assert_eq!(p.join(2, 3), 3);
    }

    #[test]
    fn trivial_lattice() {
        let t = FiniteLattice::from_covers("L1", &["0"], &[]).unwrap();
        assert_eq!(t.bottom(), 0);
        assert_eq!(t.top(), 0);
        assert!(t.is_trivial());
        assert!(t.hasse().covers.is_empty());
    }

    #[test]
    fn two_maximal_elements_have_no_join() {
        let err = FiniteLattice::from_covers("V", &["0", "a", "b", "c"], &[(0, 1), (1, 2), (1, 3)])
            .unwrap_err();
        assert_eq!(err, LatticeError::NoJoin(2, 3));
    }

    #[test]
    fn no_meet_is_reported() {
        let err = FiniteLattice::from_covers("A", &["a", "b", "c", "1"], &[(0, 3), (1, 3), (0, 2), (1, 2), (2, 3)])
            .unwrap_err();
        assert_eq!(err, LatticeError::NoMeet(0, 1));
    }

    #[test]
    fn cycles_are_rejected() {
        let err = FiniteLattice::from_covers("C", &["a", "b"], &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::NotAPoset(0, 1));
        let err = FiniteLattice::from_covers("C", &["a"], &[(0, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::NotAPoset(0, 0));
    }

    #[test]
    fn matrix_must_be_transitive() {
        let m = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let err = validate_lattice("bad", vec!["a".into(), "b".into(), "c".into()], OrderData::Matrix(m))
            .unwrap_err();
        assert_eq!(err, LatticeError::NotAPoset(0, 2));
    }

    #[test]
    fn hasse_of_small_lattices() {
        let l3 = FiniteLattice::chain(3).unwrap();
        assert_eq!(l3.hasse().covers, vec![(0, 1), (1, 2)]);
        assert_eq!(diamond().hasse().covers.len(), 6);
        // brute-force reduction count for the cube: 8 elements, 3 covers each from below
        let c = cube();
        let brute = (0..8usize)
            .flat_map(|a| (0..8usize).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && a & b == a && (b ^ a).count_ones() == 1)
            .count();
        assert_eq!(brute, 12);
        assert_eq!(c.hasse().covers.len(), brute);
    }

    #[test]
    fn structural_predicates() {
        let d = diamond();
        assert!(d.is_modular());
        assert!(!d.is_distributive());
        assert!(d.is_relatively_complemented());
        let p = pentagon();
        assert!(!p.is_modular());
        assert!(!p.is_distributive());
        let sq = FiniteLattice::from_covers("L2^2", &["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap();
        assert!(sq.is_distributive());
        assert!(sq.is_boolean_lattice());
        assert!(!sq.is_chain());
        assert!(FiniteLattice::chain(4).unwrap().is_chain());
        assert!(!FiniteLattice::chain(3).unwrap().is_boolean_lattice());
        assert!(cube().is_boolean_lattice());
    }

    #[test]
    fn cut_points() {
        assert_eq!(FiniteLattice::chain(3).unwrap().ordinal_sum_decomposition_hint(), vec![1]);
        assert!(diamond().ordinal_sum_decomposition_hint().is_empty());
        let dl2 = FiniteLattice::from_covers(
            "D+L2",
            &["0", "a", "b", "c", "x", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5)],
        )
        .unwrap();
        assert_eq!(dl2.ordinal_sum_decomposition_hint(), vec![4]);
    }

    #[test]
    fn json_round_trip_and_leq_form() {
        let p = pentagon();
        let back = FiniteLattice::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let text = r#"{"name":"L2","leq":[[1,1],[0,1]]}"#;
        let l2 = FiniteLattice::from_json(text).unwrap();
        assert_eq!(l2.labels(), &["0".to_string(), "1".to_string()]);
        assert!(l2.leq(0, 1));
    }

    #[test]
    fn dot_is_deterministic() {
        let dot = FiniteLattice::chain(2).unwrap().to_dot();
        assert_eq!(
            dot,
            "digraph \"L2\" {\n  rankdir=BT;\n  n0 [label=\"0\"];\n  n1 [label=\"1\"];\n  n0 -> n1;\n}\n"
        );
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let p = pentagon();
        // same pentagon, elements listed in another order
        let q = FiniteLattice::from_covers("Q", &["1", "z", "0", "y", "x"], &[(2, 4), (2, 3), (3, 1), (4, 0), (1, 0)])
            .unwrap();
        assert!(p.is_isomorphic(&q));
        assert!(!p.is_isomorphic(&diamond()));
        assert_ne!(p.id(), q.id());
    }
}
