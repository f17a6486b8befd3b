//! Direct products and ordinal sums of lattices, congruences and morphisms,
//! with checks of the decomposition of `Con`, `Spec`, `Max` and `Con₂`.
//!
//! Product elements are mixed-radix tuples, factor-major: the first factor
//! is the most significant digit. Ordinal-sum elements are numbered summand
//! by summand; each summand after the first skips its bottom, which is the
//! previous summand's top.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::congruence::{enumerate_con, Congruence, CongruenceError, CongruenceLattice};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::morphisms::{validate_morphism, LatticeMorphism, MorphismError};
use crate::partition::{Partition, UnionFind};
use crate::spectra::{classify, SpectraError, Spectrum};

/// Largest product or sum the `verify_*` checks accept.
pub const DEFAULT_SIZE_GUARD: usize = 12;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("at least one operand is required")]
    NoOperands,
    #[error("operand {0} does not match the construction")]
    Misaligned(usize),
    #[error("morphism {0} is not bounded")]
    NotBounded(usize),
    #[error("construction has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("{theorem} violated: {witness}")]
    TheoremViolation { theorem: &'static str, witness: String },
    #[error("encoding is not associative")]
    NonAssociative,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `L₁ × … × Lₙ` with its tuple codec.
#[derive(Debug, Clone)]
pub struct ProductLattice {
    pub lattice: Arc<FiniteLattice>,
    pub factors: Vec<Arc<FiniteLattice>>,
}

impl ProductLattice {
    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.factors).fold(0, |acc, (&t, f)| acc * f.len() + t)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.len();
            index /= f.len();
        }
        out
    }
}

fn tuples(factors: &[Arc<FiniteLattice>]) -> Vec<Vec<usize>> {
    factors.iter().fold(vec![Vec::new()], |acc, f| {
        acc.iter()
            .flat_map(|t| {
                f.elements().map(move |e| {
                    let mut next = t.clone();
                    next.push(e);
                    next
                })
            })
            .collect()
    })
}

pub fn direct_product(factors: &[Arc<FiniteLattice>]) -> Result<ProductLattice, ConstructionError> {
    if factors.is_empty() {
        return Err(ConstructionError::NoOperands);
    }
    let ts = tuples(factors);
    let labels = ts
        .iter()
        .map(|t| format!("({})", t.iter().zip(factors).map(|(&e, f)| f.label(e)).collect::<Vec<_>>().join(",")))
        .collect();
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("×");
    let lattice = FiniteLattice::from_order_fn(name, labels, |a, b| {
        ts[a].iter().zip(&ts[b]).zip(factors).all(|((&x, &y), f)| f.leq(x, y))
    })?;
    let product = ProductLattice { lattice: Arc::new(lattice), factors: factors.to_vec() };
    for (i, t) in ts.iter().enumerate() {
        if product.encode(t) != i || product.decode(i) != *t {
            return Err(ConstructionError::NonAssociative);
        }
    }
    Ok(product)
}

fn check_parts(lattices: &[Arc<FiniteLattice>], parts: &[Congruence]) -> Result<(), ConstructionError> {
    if parts.len() != lattices.len() {
        return Err(ConstructionError::Misaligned(parts.len().min(lattices.len())));
    }
    match parts.iter().zip(lattices).position(|(p, l)| p.lattice_id() != l.id()) {
        Some(i) => Err(ConstructionError::Misaligned(i)),
        None => Ok(()),
    }
}

/// `θ₁ × … × θₙ`: tuples related when every coordinate is.
pub fn product_congruence(prod: &ProductLattice, parts: &[Congruence]) -> Result<Congruence, ConstructionError> {
    check_parts(&prod.factors, parts)?;
    let labels: Vec<Vec<usize>> = prod
        .lattice
        .elements()
        .map(|i| prod.decode(i).iter().zip(parts).map(|(&e, p)| p.partition().rep_of(e)).collect())
        .collect();
    Ok(Congruence::new(&prod.lattice, Partition::from_labels(&labels))?)
}

/// Product of morphisms, componentwise.
pub fn product_morphism(fs: &[LatticeMorphism]) -> Result<(ProductLattice, ProductLattice, LatticeMorphism), ConstructionError> {
    let doms: Vec<_> = fs.iter().map(|f| f.dom().clone()).collect();
    let cods: Vec<_> = fs.iter().map(|f| f.cod().clone()).collect();
    let (pd, pc) = (direct_product(&doms)?, direct_product(&cods)?);
    let map = pd
        .lattice
        .elements()
        .map(|i| {
            let t: Vec<usize> = pd.decode(i).iter().zip(fs).map(|(&e, f)| f.apply(e)).collect();
            pc.encode(&t)
        })
        .collect();
    let name = fs.iter().map(|f| f.name()).collect::<Vec<_>>().join("×");
    let f = validate_morphism(pd.lattice.clone(), pc.lattice.clone(), map, false)?.with_name(name);
    Ok((pd, pc, f))
}

/// `L₁ ⊕ … ⊕ Lₙ` with its offset codec.
#[derive(Debug, Clone)]
pub struct OrdinalSumLattice {
    pub lattice: Arc<FiniteLattice>,
    pub summands: Vec<Arc<FiniteLattice>>,
    /// `embed[i][e]`: index of element `e` of summand `i`.
    pub embed: Vec<Vec<usize>>,
}

impl OrdinalSumLattice {
    pub fn encode(&self, summand: usize, e: usize) -> usize {
        self.embed[summand][e]
    }

    /// Every `(summand, element)` pair naming `index`; glue points have two.
    pub fn decode(&self, index: usize) -> Vec<(usize, usize)> {
        self.embed
            .iter()
            .enumerate()
            .filter_map(|(i, row)| row.iter().position(|&x| x == index).map(|e| (i, e)))
            .collect()
    }

    /// Summand index and position for the order: the lowest summand
    /// containing `index`.
    fn level(&self, index: usize) -> (usize, usize) {
        self.decode(index)[0]
    }
}

/// Every finite lattice is bounded, so any non-empty list of summands is
/// accepted.
pub fn ordinal_sum(summands: &[Arc<FiniteLattice>]) -> Result<OrdinalSumLattice, ConstructionError> {
    if summands.is_empty() {
        return Err(ConstructionError::NoOperands);
    }
    let mut embed: Vec<Vec<usize>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut next = 0;
    for (i, l) in summands.iter().enumerate() {
        let mut row = vec![usize::MAX; l.len()];
        if i > 0 {
            row[l.bottom()] = embed[i - 1][summands[i - 1].top()];
        }
        for e in l.elements() {
            if row[e] == usize::MAX {
                row[e] = next;
                next += 1;
                let mut label = l.label(e).to_string();
                if !seen.insert(label.clone()) {
                    label = format!("{label}_{}", i + 1);
                    seen.insert(label.clone());
                }
                labels.push(label);
            }
        }
        embed.push(row);
    }
    let name = summands.iter().map(|s| s.name()).collect::<Vec<_>>().join("⊕");
    let mut sum = OrdinalSumLattice {
        lattice: Arc::new(FiniteLattice::chain(1)?),
        summands: summands.to_vec(),
        embed,
    };
    let lattice = FiniteLattice::from_order_fn(name, labels, |a, b| {
        let (ia, ea) = sum.level(a);
        let (ib, eb) = sum.level(b);
        match ia.cmp(&ib) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => sum.decode(a).iter().any(|&(i, e)| i == ib && summands[i].leq(e, eb)),
            std::cmp::Ordering::Equal => summands[ia].leq(ea, eb),
        }
    })?;
    let expected = summands.iter().map(|s| s.len()).sum::<usize>() + 1 - summands.len();
    if lattice.len() != expected {
        return Err(ConstructionError::NonAssociative);
    }
    sum.lattice = Arc::new(lattice);
    Ok(sum)
}

/// `θ₁ ⊕ … ⊕ θₙ`: blocks of each summand, glued through the shared points.
pub fn sum_congruence(sum: &OrdinalSumLattice, parts: &[Congruence]) -> Result<Congruence, ConstructionError> {
    check_parts(&sum.summands, parts)?;
    let mut uf = UnionFind::new(sum.lattice.len());
    for (i, p) in parts.iter().enumerate() {
        for (a, &r) in p.partition().rep().iter().enumerate() {
            uf.union(sum.embed[i][a], sum.embed[i][r]);
        }
    }
    Ok(Congruence::new(&sum.lattice, uf.into_partition())?)
}

/// Ordinal sum of bounded morphisms.
pub fn sum_morphism(
    fs: &[LatticeMorphism],
) -> Result<(OrdinalSumLattice, OrdinalSumLattice, LatticeMorphism), ConstructionError> {
    if let Some(i) = fs.iter().position(|f| !f.is_bounded()) {
        return Err(ConstructionError::NotBounded(i));
    }
    let doms: Vec<_> = fs.iter().map(|f| f.dom().clone()).collect();
    let cods: Vec<_> = fs.iter().map(|f| f.cod().clone()).collect();
    let (sd, sc) = (ordinal_sum(&doms)?, ordinal_sum(&cods)?);
    let mut map = vec![usize::MAX; sd.lattice.len()];
    for (i, f) in fs.iter().enumerate() {
        for e in f.dom().elements() {
            map[sd.encode(i, e)] = sc.encode(i, f.apply(e));
        }
    }
    let name = fs.iter().map(|f| f.name()).collect::<Vec<_>>().join("⊕");
    let f = validate_morphism(sd.lattice.clone(), sc.lattice.clone(), map, true)?.with_name(name);
    Ok((sd, sc, f))
}

/// Outcome of a decomposition check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub construction: String,
    pub size: usize,
    pub con: usize,
    pub spec: usize,
    pub max: usize,
    pub con2: usize,
    /// Every theorem checked, in order.
    pub checks: Vec<&'static str>,
}

fn guard(size: usize, limit: usize) -> Result<(), ConstructionError> {
    if size > limit {
        Err(ConstructionError::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Cartesian product of index lists.
fn combos(lens: &[usize]) -> Vec<Vec<usize>> {
    lens.iter().fold(vec![Vec::new()], |acc, &n| {
        acc.iter()
            .flat_map(|t| {
                (0..n).map(move |k| {
                    let mut next = t.clone();
                    next.push(k);
                    next
                })
            })
            .collect()
    })
}

/// One coordinate drawn from `pick(i)`, `∇` everywhere else.
fn one_coordinate(
    cons: &[Spectrum],
    pick: impl Fn(&Spectrum) -> Vec<usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, s) in cons.iter().enumerate() {
        for k in pick(s) {
            out.push(cons.iter().enumerate().map(|(j, t)| if j == i { k } else { t.con.nabla_index() }).collect());
        }
    }
    out
}

struct Decomposition<'a> {
    name: String,
    target: &'a FiniteLattice,
    spectra: Vec<Spectrum>,
    build: Box<dyn Fn(&[Congruence]) -> Result<Congruence, ConstructionError> + 'a>,
    class_count: Box<dyn Fn(&[usize]) -> usize + 'a>,
    con_theorem: &'static str,
    spectra_theorem: &'static str,
    count_theorem: &'static str,
}

impl Decomposition<'_> {
    fn run(self) -> Result<DecompositionReport, ConstructionError> {
        let whole = enumerate_con(self.target);
        let report = classify(&whole)?;
        let lens: Vec<usize> = self.spectra.iter().map(|s| s.con.len()).collect();
        let compose = |idx: &[usize]| -> Result<Congruence, ConstructionError> {
            let parts: Vec<Congruence> =
                idx.iter().zip(&self.spectra).map(|(&k, s)| s.con.get(k).clone()).collect();
            (self.build)(&parts)
        };

        let mut built = HashSet::new();
        for idx in combos(&lens) {
            let theta = compose(&idx)?;
            let counts: Vec<usize> =
                idx.iter().zip(&self.spectra).map(|(&k, s)| s.con.get(k).class_count()).collect();
            if theta.class_count() != (self.class_count)(&counts) {
                return Err(ConstructionError::TheoremViolation {
                    theorem: self.count_theorem,
                    witness: theta.display(self.target),
                });
            }
            if !whole.contains(&theta) {
                return Err(ConstructionError::TheoremViolation {
                    theorem: self.con_theorem,
                    witness: format!("{} is not a congruence", theta.display(self.target)),
                });
            }
            built.insert(theta.partition().clone());
        }
        if let Some(c) = whole.congruences().iter().find(|c| !built.contains(c.partition())) {
            return Err(ConstructionError::TheoremViolation {
                theorem: self.con_theorem,
                witness: format!("{} does not decompose", c.display(self.target)),
            });
        }

        let predicted = |pick: &dyn Fn(&Spectrum) -> Vec<usize>| -> Result<BTreeSet<usize>, ConstructionError> {
            one_coordinate(&self.spectra, pick)
                .iter()
                .map(|idx| {
                    let theta = compose(idx)?;
                    whole.index_of(&theta).ok_or(ConstructionError::Congruence(CongruenceError::NotInLattice))
                })
                .collect()
        };
        let sets = [
            ("Spec", predicted(&|s| s.report.spec.iter().copied().collect())?, &report.spec),
            ("Max", predicted(&|s| s.report.max.iter().copied().collect())?, &report.max),
            ("Con2", predicted(&|s| s.report.con2.iter().copied().collect())?, &report.con2),
        ];
        for (label, want, got) in &sets {
            if let Some(&w) = want.symmetric_difference(got).next() {
                return Err(ConstructionError::TheoremViolation {
                    theorem: self.spectra_theorem,
                    witness: format!("{label} differs at {}", whole.get(w).display(self.target)),
                });
            }
        }
        Ok(DecompositionReport {
            construction: self.name,
            size: self.target.len(),
            con: whole.len(),
            spec: report.spec.len(),
            max: report.max.len(),
            con2: report.con2.len(),
            checks: vec![self.count_theorem, self.con_theorem, self.spectra_theorem],
        })
    }
}

fn spectra_of(ls: &[Arc<FiniteLattice>]) -> Result<Vec<Spectrum>, ConstructionError> {
    ls.iter().map(|l| Spectrum::compute(l).map_err(Into::into)).collect()
}

/// `Con(ΠLᵢ) = {Πθᵢ}` and the one-coordinate description of `Spec`, `Max`
/// and `Con₂` of the product.
pub fn verify_product_con(factors: &[Arc<FiniteLattice>]) -> Result<DecompositionReport, ConstructionError> {
    verify_product_con_with_limit(factors, DEFAULT_SIZE_GUARD)
}

pub fn verify_product_con_with_limit(
    factors: &[Arc<FiniteLattice>],
    limit: usize,
) -> Result<DecompositionReport, ConstructionError> {
    guard(factors.iter().map(|f| f.len()).product(), limit)?;
    let prod = direct_product(factors)?;
    Decomposition {
        name: prod.lattice.name().to_string(),
        target: &prod.lattice,
        spectra: spectra_of(factors)?,
        build: Box::new(|parts| product_congruence(&prod, parts)),
        class_count: Box::new(|c| c.iter().product()),
        con_theorem: "Con of a product is the product of the Con",
        spectra_theorem: "Spec/Max/Con2 of a product",
        count_theorem: "product class count",
    }
    .run()
}

/// `Con(⊕Lᵢ) = {⊕θᵢ}` and the one-coordinate description of `Spec`, `Max`
/// and `Con₂` of the ordinal sum.
pub fn verify_sum_con(summands: &[Arc<FiniteLattice>]) -> Result<DecompositionReport, ConstructionError> {
    verify_sum_con_with_limit(summands, DEFAULT_SIZE_GUARD)
}

pub fn verify_sum_con_with_limit(
    summands: &[Arc<FiniteLattice>],
    limit: usize,
) -> Result<DecompositionReport, ConstructionError> {
    if summands.is_empty() {
        return Err(ConstructionError::NoOperands);
    }
    guard(summands.iter().map(|s| s.len()).sum::<usize>() + 1 - summands.len(), limit)?;
    let sum = ordinal_sum(summands)?;
    let n = summands.len();
    Decomposition {
        name: sum.lattice.name().to_string(),
        target: &sum.lattice,
        spectra: spectra_of(summands)?,
        build: Box::new(|parts| sum_congruence(&sum, parts)),
        class_count: Box::new(move |c| c.iter().sum::<usize>() + 1 - n),
        con_theorem: "Con of an ordinal sum is the sum of the Con",
        spectra_theorem: "Spec/Max/Con2 of an ordinal sum",
        count_theorem: "ordinal sum class count",
    }
    .run()
}

/// Con table of a product, indexed by factor congruence tuples.
pub fn product_con_table(prod: &ProductLattice) -> Result<(CongruenceLattice, Vec<Vec<usize>>), ConstructionError> {
    let cons: Vec<CongruenceLattice> = prod.factors.iter().map(|f| enumerate_con(f)).collect();
    let lens: Vec<usize> = cons.iter().map(|c| c.len()).collect();
    let whole = enumerate_con(&prod.lattice);
    let mut table = Vec::new();
    for idx in combos(&lens) {
        let parts: Vec<Congruence> = idx.iter().zip(&cons).map(|(&k, c)| c.get(k).clone()).collect();
        let theta = product_congruence(prod, &parts)?;
        if whole.contains(&theta) {
            table.push(idx);
        }
    }
    Ok((whole, table))
}
