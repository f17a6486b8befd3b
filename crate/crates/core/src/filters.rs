//! Filters and ideals, prime and maximal ones, and the canonical
//! congruences attached to them in distributive lattices.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::congruence::{Congruence, CongruenceError};
use crate::lattice::FiniteLattice;
use crate::partition::UnionFind;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FilterError {
    #[error("lattice {0} is not distributive")]
    NotDistributive(String),
    #[error("set is not a {0:?}")]
    WrongKind(FilterKind),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterKind {
    Filter,
    Ideal,
}

/// A filter or an ideal, as a bitset over the elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterSet {
    pub kind: FilterKind,
    pub members: FixedBitSet,
}

impl FilterSet {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_proper(&self, l: &FiniteLattice) -> bool {
        self.len() < l.len()
    }

    /// Complement `L ∖ self`, as a bitset.
    pub fn complement(&self, l: &FiniteLattice) -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(l.len());
        c.insert_range(..);
        c.difference_with(&self.members);
        c
    }

    /// Sorted element labels, e.g. `[x, 1]`.
    pub fn display(&self, l: &FiniteLattice) -> String {
        format!("[{}]", self.members.ones().map(|x| l.label(x)).collect::<Vec<_>>().join(", "))
    }
}

pub fn is_filter(l: &FiniteLattice, set: &FixedBitSet) -> bool {
    set.count_ones(..) > 0
        && set.ones().all(|a| l.up_set(a).is_subset(set))
        && set.ones().all(|a| set.ones().all(|b| set.contains(l.meet(a, b))))
}

pub fn is_ideal(l: &FiniteLattice, set: &FixedBitSet) -> bool {
    set.count_ones(..) > 0
        && set.ones().all(|a| l.down_set(a).is_subset(set))
        && set.ones().all(|a| set.ones().all(|b| set.contains(l.join(a, b))))
}

/// Proper filter `P` with `x ∨ y ∈ P ⇒ x ∈ P or y ∈ P`.
pub fn is_prime_filter(l: &FiniteLattice, set: &FixedBitSet) -> bool {
    is_filter(l, set)
        && set.count_ones(..) < l.len()
        && l.elements().all(|x| {
            l.elements().all(|y| !set.contains(l.join(x, y)) || set.contains(x) || set.contains(y))
        })
}

/// Proper ideal `I` with `x ∧ y ∈ I ⇒ x ∈ I or y ∈ I`.
pub fn is_prime_ideal(l: &FiniteLattice, set: &FixedBitSet) -> bool {
    is_ideal(l, set)
        && set.count_ones(..) < l.len()
        && l.elements().all(|x| {
            l.elements().all(|y| !set.contains(l.meet(x, y)) || set.contains(x) || set.contains(y))
        })
}

/// In a finite lattice every nonempty filter is principal, generated by
/// the meet of its members, so `Filt(L) = {[a) : a ∈ L}`.
pub fn all_filters(l: &FiniteLattice) -> Vec<FilterSet> {
    l.elements()
        .map(|a| FilterSet { kind: FilterKind::Filter, members: l.up_set(a).clone() })
        .collect()
}

pub fn all_ideals(l: &FiniteLattice) -> Vec<FilterSet> {
    l.elements()
        .map(|a| FilterSet { kind: FilterKind::Ideal, members: l.down_set(a).clone() })
        .collect()
}

pub fn prime_filters(l: &FiniteLattice) -> Vec<FilterSet> {
    all_filters(l).into_iter().filter(|f| is_prime_filter(l, &f.members)).collect()
}

pub fn prime_ideals(l: &FiniteLattice) -> Vec<FilterSet> {
    all_ideals(l).into_iter().filter(|i| is_prime_ideal(l, &i.members)).collect()
}

fn maximal_proper(l: &FiniteLattice, sets: Vec<FilterSet>) -> Vec<FilterSet> {
    let proper: Vec<FilterSet> = sets.into_iter().filter(|s| s.is_proper(l)).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.members != s.members && s.members.is_subset(&t.members)))
        .cloned()
        .collect()
}

pub fn maximal_filters(l: &FiniteLattice) -> Vec<FilterSet> {
    maximal_proper(l, all_filters(l))
}

pub fn maximal_ideals(l: &FiniteLattice) -> Vec<FilterSet> {
    maximal_proper(l, all_ideals(l))
}

/// `φ_L(F) = {(x, y) : x ∧ a = y ∧ a for some a ∈ F}`, the least congruence
/// having `F` as a class. Defined on distributive lattices only.
pub fn phi_embedding(l: &FiniteLattice, f: &FilterSet) -> Result<Congruence, FilterError> {
    if f.kind != FilterKind::Filter || !is_filter(l, &f.members) {
        return Err(FilterError::WrongKind(FilterKind::Filter));
    }
    if !l.is_distributive() {
        return Err(FilterError::NotDistributive(l.name().to_string()));
    }
    let mut uf = UnionFind::new(l.len());
    for a in f.members.ones() {
        for x in l.elements() {
            for y in x + 1..l.len() {
                if l.meet(x, a) == l.meet(y, a) {
                    uf.union(x, y);
                }
            }
        }
    }
    let c = Congruence::new(l, uf.into_partition())?;
    debug_assert!(f.members.ones().all(|a| c.related(a, l.top())));
    debug_assert_eq!(l.elements().filter(|&x| c.related(x, l.top())).count(), f.len());
    Ok(c)
}

/// `χ_L(I) = {(x, y) : x ∨ a = y ∨ a for some a ∈ I}`, dual of [`phi_embedding`].
pub fn chi_embedding(l: &FiniteLattice, i: &FilterSet) -> Result<Congruence, FilterError> {
    if i.kind != FilterKind::Ideal || !is_ideal(l, &i.members) {
        return Err(FilterError::WrongKind(FilterKind::Ideal));
    }
    if !l.is_distributive() {
        return Err(FilterError::NotDistributive(l.name().to_string()));
    }
    let mut uf = UnionFind::new(l.len());
    for a in i.members.ones() {
        for x in l.elements() {
            for y in x + 1..l.len() {
                if l.join(x, a) == l.join(y, a) {
                    uf.union(x, y);
                }
            }
        }
    }
    Ok(Congruence::new(l, uf.into_partition())?)
}

/// Two-class congruences read off the prime filters: `eq(P, L ∖ P)`.
pub fn con2_via_prime_filters(l: &FiniteLattice) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = prime_filters(l)
        .iter()
        .map(|p| {
            let labels: Vec<bool> = l.elements().map(|x| p.contains(x)).collect();
            Congruence::new(l, crate::partition::Partition::from_labels(&labels))
                .expect("prime filter and its complement form a congruence")
        })
        .collect();
    out.sort_by(|a, b| a.partition().cmp(b.partition()));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::enumerate_con;

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers("D", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap()
    }

    fn square() -> FiniteLattice {
        FiniteLattice::from_covers("L2^2", &["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Every subset that is a filter, by brute force over the power set.
    fn filters_by_subsets(l: &FiniteLattice) -> Vec<FixedBitSet> {
        let n = l.len();
        (1u32..(1 << n))
            .map(|mask| {
                let mut s = FixedBitSet::with_capacity(n);
                (0..n).filter(|i| mask & (1 << i) != 0).for_each(|i| s.insert(i));
                s
            })
            .filter(|s| is_filter(l, s))
            .collect()
    }

    #[test]
    fn principal_filters_are_all_filters() {
        for l in [diamond(), square(), FiniteLattice::chain(5).unwrap()] {
            let mut brute = filters_by_subsets(&l);
            let mut ours: Vec<FixedBitSet> = all_filters(&l).into_iter().map(|f| f.members).collect();
            brute.sort_by_key(|s| s.ones().collect::<Vec<_>>());
            ours.sort_by_key(|s| s.ones().collect::<Vec<_>>());
            assert_eq!(brute, ours);
        }
    }

    #[test]
    fn chain_prime_filters_are_the_proper_filters() {
        let l3 = FiniteLattice::chain(3).unwrap();
        let primes: Vec<Vec<usize>> = prime_filters(&l3).iter().map(|f| f.members.ones().collect()).collect();
        assert_eq!(primes, vec![vec![1, 2], vec![2]]);
    }

    #[test]
    fn diamond_has_no_prime_filters() {
        // brute force by the definition
        let d = diamond();
        let brute = filters_by_subsets(&d).into_iter().filter(|s| is_prime_filter(&d, s)).count();
        assert_eq!(brute, 0);
        assert!(prime_filters(&d).is_empty());
        assert!(con2_via_prime_filters(&d).is_empty());
        assert_eq!(maximal_filters(&d).len(), 3);
    }

    #[test]
    fn trivial_lattice_has_only_the_whole_filter() {
        let t = FiniteLattice::chain(1).unwrap();
        assert_eq!(all_filters(&t).len(), 1);
        assert!(prime_filters(&t).is_empty());
        assert!(maximal_filters(&t).is_empty());
    }

    #[test]
    fn phi_on_the_square() {
        let sq = square();
        let top_only = FilterSet { kind: FilterKind::Filter, members: sq.up_set(3).clone() };
        assert!(phi_embedding(&sq, &top_only).unwrap().is_delta());
        let fx = FilterSet { kind: FilterKind::Filter, members: sq.up_set(1).clone() };
        let sigma = Congruence::from_label_blocks(&sq, &[&["0", "y"], &["x", "1"]]).unwrap();
        assert_eq!(phi_embedding(&sq, &fx).unwrap(), sigma);
        let whole = FilterSet { kind: FilterKind::Filter, members: sq.up_set(0).clone() };
        assert!(phi_embedding(&sq, &whole).unwrap().is_nabla());
        let ix = FilterSet { kind: FilterKind::Ideal, members: sq.down_set(1).clone() };
        let rho = Congruence::from_label_blocks(&sq, &[&["0", "x"], &["y", "1"]]).unwrap();
        assert_eq!(chi_embedding(&sq, &ix).unwrap(), rho);
    }

    #[test]
    fn phi_requires_distributivity() {
        let d = diamond();
        let f = FilterSet { kind: FilterKind::Filter, members: d.up_set(1).clone() };
        assert!(matches!(phi_embedding(&d, &f), Err(FilterError::NotDistributive(_))));
    }

    #[test]
    fn con2_of_two_element_chain() {
        let l2 = FiniteLattice::chain(2).unwrap();
        let c = con2_via_prime_filters(&l2);
        assert_eq!(c.len(), 1);
        assert!(c[0].is_delta());
    }

    #[test]
    fn prime_filters_complement_to_prime_ideals() {
        for l in [square(), FiniteLattice::chain(4).unwrap(), diamond()] {
            let mut via_filters: Vec<Vec<usize>> =
                prime_filters(&l).iter().map(|p| p.complement(&l).ones().collect()).collect();
            let mut ideals: Vec<Vec<usize>> = prime_ideals(&l).iter().map(|i| i.members.ones().collect()).collect();
            via_filters.sort();
            ideals.sort();
            assert_eq!(via_filters, ideals);
            let con = enumerate_con(&l);
            let two: usize = con.congruences().iter().filter(|c| c.class_count() == 2).count();
            assert_eq!(two, con2_via_prime_filters(&l).len());
        }
    }
}
