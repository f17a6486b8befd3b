//! Classification of congruences: prime (`Spec`), maximal (`Max`) and
//! two-class (`Con₂`).
//!
//! Lattices generate a congruence-distributive variety, so the commutator of
//! two congruences is their intersection and the prime congruences are the
//! prime elements of `Con(L)`. For a finite `Con(L)` these are exactly the
//! strictly meet-irreducible elements, equivalently the proper
//! meet-irreducible ones. Both characterizations are computed and must agree.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::congruence::{enumerate_con, Congruence, CongruenceLattice};
use crate::lattice::{FiniteLattice, LatticeId};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SpectraError {
    #[error("prime characterizations disagree on congruence #{0}")]
    CharacterizationMismatch(usize),
    #[error("maximal characterizations disagree on congruence #{0}")]
    MaxMismatch(usize),
    #[error("{theorem} violated, witness congruence #{witness}")]
    TheoremViolation { theorem: &'static str, witness: usize },
}

/// Per-congruence classification data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub meet_irreducible: bool,
    pub unique_successor: Option<usize>,
    pub class_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub lattice: LatticeId,
    pub spec: BTreeSet<usize>,
    pub max: BTreeSet<usize>,
    pub con2: BTreeSet<usize>,
    pub evidence: Vec<Evidence>,
}

/// `θ = α ∧ β` forces `θ ∈ {α, β}`.
pub fn meet_irreducible(con: &CongruenceLattice, theta: usize) -> bool {
    let m = con.len();
    (0..m).all(|a| (a..m).all(|b| con.meet(a, b) != theta || a == theta || b == theta))
}

/// The unique upper cover of `theta`, if it has exactly one.
pub fn unique_successor(con: &CongruenceLattice, theta: usize) -> Option<usize> {
    let order = con.order();
    let above: Vec<usize> = order.up_set(theta).ones().filter(|&j| j != theta).collect();
    let minimal: Vec<usize> =
        above.iter().copied().filter(|&j| !above.iter().any(|&k| k != j && order.leq(k, j))).collect();
    match minimal.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

pub fn strictly_meet_irreducible(con: &CongruenceLattice, theta: usize) -> bool {
    unique_successor(con, theta).is_some()
}

/// Prime congruences, cross-checked between the two characterizations.
pub fn spec(con: &CongruenceLattice) -> Result<BTreeSet<usize>, SpectraError> {
    let mut out = BTreeSet::new();
    for i in 0..con.len() {
        let proper_mi = i != con.nabla_index() && meet_irreducible(con, i);
        if proper_mi != strictly_meet_irreducible(con, i) {
            return Err(SpectraError::CharacterizationMismatch(i));
        }
        if proper_mi {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Maximal proper congruences, cross-checked against `[θ) = {θ, ∇}`.
pub fn max_set(con: &CongruenceLattice) -> Result<BTreeSet<usize>, SpectraError> {
    let nabla = con.nabla_index();
    let order = con.order();
    let mut out = BTreeSet::new();
    for i in 0..con.len() {
        let maximal = i != nabla && !(0..con.len()).any(|j| j != i && j != nabla && order.leq(i, j));
        let interval_is_two = order.up_set(i).count_ones(..) == 2;
        if maximal != interval_is_two {
            return Err(SpectraError::MaxMismatch(i));
        }
        if maximal {
            out.insert(i);
        }
    }
    Ok(out)
}

pub fn con2_set(con: &CongruenceLattice) -> BTreeSet<usize> {
    (0..con.len()).filter(|&i| con.get(i).class_count() == 2).collect()
}

pub fn con_is_boolean(con: &CongruenceLattice) -> bool {
    con.order().is_boolean_lattice()
}

pub fn classify(con: &CongruenceLattice) -> Result<SpectrumReport, SpectraError> {
    let spec = spec(con)?;
    let max = max_set(con)?;
    let con2 = con2_set(con);
    let evidence = (0..con.len())
        .map(|i| Evidence {
            meet_irreducible: meet_irreducible(con, i),
            unique_successor: unique_successor(con, i),
            class_count: con.get(i).class_count(),
        })
        .collect();
    let report = SpectrumReport { lattice: con.lattice_id(), spec, max, con2, evidence };
    if let Some(&w) = report.con2.difference(&report.max).next() {
        return Err(SpectraError::TheoremViolation { theorem: "Con2 ⊆ Max", witness: w });
    }
    if let Some(&w) = report.max.difference(&report.spec).next() {
        return Err(SpectraError::TheoremViolation { theorem: "Max ⊆ Spec", witness: w });
    }
    Ok(report)
}

/// `Con(L)` together with its classification.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub con: CongruenceLattice,
    pub report: SpectrumReport,
}

impl Spectrum {
    pub fn compute(l: &FiniteLattice) -> Result<Self, SpectraError> {
        let con = enumerate_con(l);
        let report = classify(&con)?;
        Ok(Spectrum { con, report })
    }

    pub fn is_prime(&self, c: &Congruence) -> bool {
        self.con.index_of(c).is_some_and(|i| self.report.spec.contains(&i))
    }

    pub fn is_maximal(&self, c: &Congruence) -> bool {
        self.con.index_of(c).is_some_and(|i| self.report.max.contains(&i))
    }

    pub fn is_two_class(&self, c: &Congruence) -> bool {
        self.con.index_of(c).is_some_and(|i| self.report.con2.contains(&i))
    }

    pub fn primes(&self) -> impl Iterator<Item = &Congruence> {
        self.report.spec.iter().map(|&i| self.con.get(i))
    }

    pub fn maximals(&self) -> impl Iterator<Item = &Congruence> {
        self.report.max.iter().map(|&i| self.con.get(i))
    }

    pub fn two_class(&self) -> impl Iterator<Item = &Congruence> {
        self.report.con2.iter().map(|&i| self.con.get(i))
    }
}

/// One row of a serialized spectrum report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub index: usize,
    pub name: Option<String>,
    pub blocks: Vec<Vec<String>>,
    pub class_count: usize,
    pub prime: bool,
    pub maximal: bool,
    pub two_class: bool,
    pub meet_irreducible: bool,
    pub unique_successor: Option<usize>,
}

pub fn report_entries(
    l: &FiniteLattice,
    con: &CongruenceLattice,
    report: &SpectrumReport,
    alias: impl Fn(usize) -> Option<String>,
) -> Vec<ReportEntry> {
    (0..con.len())
        .map(|i| ReportEntry {
            index: i,
            name: alias(i),
            blocks: con
                .get(i)
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&x| l.label(x).to_string()).collect())
                .collect(),
            class_count: report.evidence[i].class_count,
            prime: report.spec.contains(&i),
            maximal: report.max.contains(&i),
            two_class: report.con2.contains(&i),
            meet_irreducible: report.evidence[i].meet_irreducible,
            unique_successor: report.evidence[i].unique_successor,
        })
        .collect()
}

/// Congruence lattice DOT with maximal congruences in one color and the
/// remaining primes in another.
pub fn to_dot(l: &FiniteLattice, con: &CongruenceLattice, report: &SpectrumReport) -> String {
    con.to_dot_with(l, |i| {
        if report.max.contains(&i) {
            Some("lightcoral")
        } else if report.spec.contains(&i) {
            Some("lightblue")
        } else {
            None
        }
    })
}

/// Outcome of one hypothesis-gated identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub theorem: &'static str,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTheoremReport {
    pub distributive: bool,
    pub modular: bool,
    pub chain: bool,
    pub relatively_complemented: bool,
    pub boolean: bool,
    pub pentagon_composed: bool,
    pub con_boolean: bool,
    pub checks: Vec<TheoremCheck>,
}

fn first_difference(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Option<usize> {
    a.symmetric_difference(b).next().copied()
}

/// Tests each structural hypothesis on `l` and asserts the identities it
/// implies. `pentagon_composed` marks lattices built from chains, bounded
/// distributive lattices and the pentagon by products and ordinal sums;
/// the pentagon itself is detected automatically.
pub fn verify_class_theorems(
    l: &FiniteLattice,
    con: &CongruenceLattice,
    pentagon_composed: bool,
) -> Result<ClassTheoremReport, SpectraError> {
    let r = classify(con)?;
    let pentagon = FiniteLattice::from_covers("P", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)])
        .expect("pentagon");

    let distributive = l.is_distributive();
    let modular = l.is_modular();
    let chain = l.is_chain();
    let relatively_complemented = l.is_relatively_complemented();
    let boolean = l.is_boolean_lattice();
    let pentagon_composed = pentagon_composed || l.is_isomorphic(&pentagon);
    let con_boolean = con_is_boolean(con);

    let spec_max = first_difference(&r.spec, &r.max);
    let max_con2 = first_difference(&r.max, &r.con2);
    let all_three = spec_max.or(max_con2);
    let not_boolean = if con_boolean { None } else { Some(con.nabla_index()) };

    let mut checks = Vec::new();
    let mut check = |theorem: &'static str, applies: bool, witness: Option<usize>| {
        if applies {
            if let Some(w) = witness {
                return Err(SpectraError::TheoremViolation { theorem, witness: w });
            }
        }
        checks.push(TheoremCheck { theorem, applies, holds: witness.is_none() });
        Ok(())
    };
    check("con-boolean implies Spec = Max", con_boolean, spec_max)?;
    check("bounded distributive: Spec = Max = Con2", distributive, all_three)?;
    check("chain: Spec = Max = Con2", chain, all_three)?;
    check("Boolean lattice: Spec = Max = Con2", boolean, all_three)?;
    check("finite modular: Con(L) Boolean", modular, not_boolean)?;
    check("relatively complemented: Con(L) Boolean", relatively_complemented, not_boolean)?;
    check("modular or relatively complemented: Spec = Max", modular || relatively_complemented, spec_max)?;
    check("pentagon-composed: Max = Con2", pentagon_composed, max_con2)?;

    Ok(ClassTheoremReport {
        distributive,
        modular,
        chain,
        relatively_complemented,
        boolean,
        pentagon_composed,
        con_boolean,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{enumerate_con, Congruence};

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers("P", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)])
            .unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers("D", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap()
    }

    fn idx(l: &FiniteLattice, con: &CongruenceLattice, blocks: &[&[&str]]) -> usize {
        con.index_of(&Congruence::from_label_blocks(l, blocks).unwrap()).unwrap()
    }

    #[test]
    fn pentagon_spectrum() {
        let p = pentagon();
        let con = enumerate_con(&p);
        let alpha = idx(&p, &con, &[&["0", "y", "z"], &["x", "1"]]);
        let beta = idx(&p, &con, &[&["0", "x"], &["y", "z", "1"]]);
        let gamma = idx(&p, &con, &[&["0"], &["x"], &["y", "z"], &["1"]]);
        let delta = con.delta_index();
        let r = classify(&con).unwrap();
        assert_eq!(r.spec, BTreeSet::from([delta, alpha, beta]));
        assert_eq!(r.max, BTreeSet::from([alpha, beta]));
        assert_eq!(r.con2, BTreeSet::from([alpha, beta]));
        assert!(!meet_irreducible(&con, gamma));
        assert_eq!(unique_successor(&con, delta), Some(gamma));
        assert!(meet_irreducible(&con, con.nabla_index()));
        assert!(!strictly_meet_irreducible(&con, con.nabla_index()));
        assert!(!con_is_boolean(&con));
    }

    #[test]
    fn diamond_spectrum() {
        let d = diamond();
        let con = enumerate_con(&d);
        let r = classify(&con).unwrap();
        assert_eq!(r.spec, BTreeSet::from([con.delta_index()]));
        assert_eq!(r.max, r.spec);
        assert!(r.con2.is_empty());
        assert!(con_is_boolean(&con));
    }

    #[test]
    fn two_element_chain_con2_is_delta() {
        let l2 = FiniteLattice::chain(2).unwrap();
        let con = enumerate_con(&l2);
        assert_eq!(con2_set(&con), BTreeSet::from([con.delta_index()]));
    }

    #[test]
    fn class_theorems_on_small_lattices() {
        let sq = FiniteLattice::from_covers("L2^2", &["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let rep = verify_class_theorems(&sq, &enumerate_con(&sq), false).unwrap();
        assert!(rep.distributive && rep.boolean && rep.con_boolean);

        let l5 = FiniteLattice::chain(5).unwrap();
        let rep = verify_class_theorems(&l5, &enumerate_con(&l5), false).unwrap();
        assert!(rep.chain);

        let p = pentagon();
        let rep = verify_class_theorems(&p, &enumerate_con(&p), false).unwrap();
        assert!(rep.pentagon_composed && !rep.modular && !rep.distributive);
        let applied: Vec<&str> = rep.checks.iter().filter(|c| c.applies).map(|c| c.theorem).collect();
        assert_eq!(applied, vec!["pentagon-composed: Max = Con2"]);
    }

    #[test]
    fn dot_colors_classification() {
        let p = pentagon();
        let con = enumerate_con(&p);
        let r = classify(&con).unwrap();
        let dot = to_dot(&p, &con, &r);
        assert_eq!(dot.matches("lightcoral").count(), 2);
        assert_eq!(dot.matches("lightblue").count(), 1);
    }
}
