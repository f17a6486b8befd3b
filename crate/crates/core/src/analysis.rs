//! Instance generators, exhaustive enumeration, brute-force oracles,
//! subdirect irreducibility and property sweeps.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{chain, m_k};
use crate::congruence::{enumerate_con, interval_above, quotient, Congruence, CongruenceError, CongruenceLattice};
use crate::constructions::{direct_product, ordinal_sum, verify_product_con, verify_sum_con, ConstructionError};
use crate::lattice::{CanonicalForm, FiniteLattice, LatticeError, LatticeFile};
use crate::morphisms::{
    all_morphisms, direct_image, embedding_factorization, kernel, induced_quotient_morphism, validate_morphism, LatticeMorphism,
    MorphismAnalysis, MorphismError,
};
use crate::partition::Partition;
use crate::spectra::{SpectraError, Spectrum};

/// Largest size [`enumerate_all_lattices`] accepts.
pub const MAX_ENUMERATION_SIZE: usize = 7;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("exhaustive enumeration is limited to {MAX_ENUMERATION_SIZE} elements, got {0}")]
    SizeTooLarge(usize),
    #[error("the one-element lattice has no proper congruence")]
    TrivialAlgebra,
    #[error("unknown property {0}")]
    UnknownProperty(String),
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Chain,
    /// Down-set lattices of random posets; bounded distributive.
    Downset,
    Mk,
    RandomSmall,
    /// Products and ordinal sums of `M_k`, chains and `L2²`.
    Modular,
    /// Products and ordinal sums of small lattices.
    Composite,
    /// Every lattice up to isomorphism, sizes `min_size..=max_size`.
    Exhaustive,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Chain,
        Family::Downset,
        Family::Mk,
        Family::RandomSmall,
        Family::Modular,
        Family::Composite,
        Family::Exhaustive,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Chain => "chain",
            Family::Downset => "downset",
            Family::Mk => "mk",
            Family::RandomSmall => "random",
            Family::Modular => "modular",
            Family::Composite => "composite",
            Family::Exhaustive => "exhaustive",
        }
    }

    pub fn parse(s: &str) -> Result<Self, AnalysisError> {
        Family::ALL.into_iter().find(|f| f.id() == s).ok_or_else(|| AnalysisError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub min_size: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, max_size: usize, seed: u64) -> Self {
        GeneratorSpec { family, min_size: 1, max_size, seed }
    }

    pub fn with_min_size(mut self, min_size: usize) -> Self {
        self.min_size = min_size;
        self
    }
}

/// A deterministic stream of `count` lattices (fewer for the exhaustive
/// family when the range holds fewer).
pub fn generate(spec: &GeneratorSpec, count: usize) -> Result<Vec<FiniteLattice>, AnalysisError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = (spec.min_size.max(1), spec.max_size.max(spec.min_size.max(1)));
    let mut out = Vec::with_capacity(count);
    match spec.family {
        Family::Chain => out.extend((0..count).map(|i| chain(lo + i % (hi - lo + 1)))),
        Family::Mk => {
            let ks: Vec<usize> = (lo.max(5)..=hi).map(|n| n - 2).collect();
            if !ks.is_empty() {
                out.extend((0..count).map(|i| m_k(ks[i % ks.len()])));
            }
        }
        Family::Exhaustive => {
            for n in lo..=hi.min(MAX_ENUMERATION_SIZE) {
                out.extend(enumerate_all_lattices(n)?);
            }
            out.truncate(count);
        }
        Family::Downset => {
            while out.len() < count {
                let points = rng.gen_range(1..=hi.clamp(2, 12).ilog2() as usize + 2);
                let l = downset_lattice(&random_poset(&mut rng, points, 0.4), out.len());
                if (lo..=hi).contains(&l.len()) {
                    out.push(l);
                }
            }
        }
        Family::RandomSmall => {
            while out.len() < count {
                let n = rng.gen_range(lo.max(2)..=hi.max(2));
                if let Some(l) = random_bounded_lattice(&mut rng, n, out.len()) {
                    out.push(l);
                }
            }
        }
        Family::Modular | Family::Composite => {
            let modular = spec.family == Family::Modular;
            let mut tries = 0;
            while out.len() < count && tries < count * 1000 {
                tries += 1;
                if let Some(l) = random_composite(&mut rng, modular, hi)? {
                    if l.len() >= lo {
                        out.push(l.with_name(format!("{}#{}", spec.family.id(), out.len())));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Random strict order on `0..n` compatible with the natural order,
/// transitively closed. `up[i]` holds the points strictly above `i`.
fn random_poset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<FixedBitSet> {
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if rng.gen_bool(p) && !up[i].contains(j) {
                up[i].insert(j);
                let above = up[j].clone();
                up[i].union_with(&above);
            }
        }
    }
    up
}

/// Lattice of down-sets of a poset ordered by inclusion.
pub fn downset_lattice(up: &[FixedBitSet], tag: usize) -> FiniteLattice {
    let n = up.len();
    let mut sets: Vec<u32> = (0..1u32 << n)
        .filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || up.iter().enumerate().all(|(j, u)| !u.contains(i) || s & (1 << j) != 0)))
        .collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let labels = sets
        .iter()
        .map(|&s| format!("{{{}}}", (0..n).filter(|i| s & (1 << i) != 0).map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    FiniteLattice::from_order_fn(format!("downset#{tag}"), labels, |a, b| sets[a] & !sets[b] == 0)
        .expect("down-sets form a lattice")
}

fn random_bounded_lattice(rng: &mut ChaCha8Rng, n: usize, tag: usize) -> Option<FiniteLattice> {
    if n <= 2 {
        return Some(chain(n));
    }
    let p = rng.gen_range(0.2..0.7);
    let inner = random_poset(rng, n - 2, p);
    bounded_from_inner(&inner, format!("random#{tag}"))
}

/// Adds a bottom and a top to a strict order; `None` if the result is not a lattice.
fn bounded_from_inner(inner: &[FixedBitSet], name: String) -> Option<FiniteLattice> {
    let m = inner.len();
    let n = m + 2;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..m).map(|i| ((b'a' + i as u8) as char).to_string()));
    labels.push("1".into());
    FiniteLattice::from_order_fn(name, labels, |a, b| {
        a == b || a == 0 || b == n - 1 || (a > 0 && a < n - 1 && b > 0 && b < n - 1 && inner[a - 1].contains(b - 1))
    })
    .ok()
}

fn random_composite(rng: &mut ChaCha8Rng, modular: bool, max: usize) -> Result<Option<FiniteLattice>, AnalysisError> {
    let mut bases: Vec<FiniteLattice> = vec![chain(2), chain(3), m_k(3), m_k(4)];
    if modular {
        bases.extend([m_k(5), direct_product(&[Arc::new(chain(2)), Arc::new(chain(2))])?.lattice.as_ref().clone()]);
    } else {
        bases.extend([crate::catalog::lattice("pentagon").expect("fixture").as_ref().clone()]);
    }
    let mut current = bases.choose(rng).expect("bases").clone();
    let mut has_mk = current.name().starts_with('M');
    let steps = rng.gen_range(0..=2);
    for _ in 0..steps {
        let next = bases.choose(rng).expect("bases").clone();
        has_mk |= next.name().starts_with('M');
        let (a, b) = (Arc::new(current.clone()), Arc::new(next));
        let combined = if rng.gen_bool(0.5) {
            if a.len() * b.len() > max {
                continue;
            }
            direct_product(&[a, b])?.lattice
        } else {
            if a.len() + b.len() - 1 > max {
                continue;
            }
            if rng.gen_bool(0.5) {
                ordinal_sum(&[a, b])?.lattice
            } else {
                ordinal_sum(&[b, a])?.lattice
            }
        };
        current = combined.as_ref().clone();
    }
    if current.len() > max || (modular && !has_mk) {
        return Ok(None);
    }
    Ok(Some(current))
}

/// Every lattice with `n` elements, one per isomorphism class, ordered by
/// canonical form.
pub fn enumerate_all_lattices(n: usize) -> Result<Vec<FiniteLattice>, AnalysisError> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(AnalysisError::SizeTooLarge(n));
    }
    if n <= 2 {
        return Ok(if n == 0 { Vec::new() } else { vec![chain(n).with_name(format!("n{n}#0"))] });
    }
    let m = n - 2;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut found: BTreeMap<CanonicalForm, FiniteLattice> = BTreeMap::new();
    for mask in 0u32..1 << pairs.len() {
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                up[i].insert(j);
            }
        }
        let transitive = (0..m).all(|i| up[i].ones().all(|j| up[j].is_subset(&up[i])));
        if !transitive {
            continue;
        }
        if let Some(l) = bounded_from_inner(&up, String::new()) {
            found.entry(l.canonical_form()).or_insert(l);
        }
    }
    Ok(found.into_values().enumerate().map(|(i, l)| l.with_name(format!("n{n}#{i}"))).collect())
}

/// All lattices of size `1..=n`.
pub fn enumerate_up_to(n: usize) -> Result<Vec<FiniteLattice>, AnalysisError> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_all_lattices(k)?);
    }
    Ok(out)
}

/// Every partition of `0..n` (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_labels(labels));
            return;
        }
        for v in 0..=max + 1 {
            labels[i] = v;
            rec(i + 1, max.max(v), labels, out);
        }
    }
    if n == 0 {
        return vec![Partition::discrete(0)];
    }
    rec(1, 0, &mut labels, &mut out);
    out
}

/// Congruences by filtering every partition with the defining condition.
pub fn brute_force_con(l: &FiniteLattice) -> BTreeSet<Partition> {
    all_partitions(l.len())
        .into_iter()
        .filter(|p| {
            l.elements().all(|a| {
                l.elements().all(|b| {
                    !p.same_block(a, b)
                        || l.elements().all(|c| {
                            p.same_block(l.meet(a, c), l.meet(b, c)) && p.same_block(l.join(a, c), l.join(b, c))
                        })
                })
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdirectReport {
    pub irreducible: bool,
    pub monolith: Option<Congruence>,
    pub delta_strictly_meet_irreducible: bool,
    pub delta_prime: bool,
}

/// Irreducible iff `Con(L) ∖ {Δ}` has a least element. Cross-checked
/// against strict meet-irreducibility of `Δ` and against `Δ ∈ Spec`.
pub fn is_subdirectly_irreducible(l: &FiniteLattice) -> Result<SubdirectReport, AnalysisError> {
    if l.is_trivial() {
        return Err(AnalysisError::TrivialAlgebra);
    }
    let s = Spectrum::compute(l)?;
    subdirect_from(&s)
}

pub fn subdirect_from(s: &Spectrum) -> Result<SubdirectReport, AnalysisError> {
    let con = &s.con;
    let delta = con.delta_index();
    let rest: Vec<usize> = (0..con.len()).filter(|&i| i != delta).collect();
    let minimum = rest.iter().copied().find(|&m| rest.iter().all(|&j| con.leq(m, j)));
    let delta_smi = s.report.evidence[delta].unique_successor.is_some();
    let delta_prime = s.report.spec.contains(&delta);
    if minimum.is_some() != delta_smi || delta_smi != delta_prime {
        return Err(AnalysisError::CrossCheck(format!(
            "minimum {:?}, Δ strictly meet-irreducible {delta_smi}, Δ prime {delta_prime}",
            minimum
        )));
    }
    Ok(SubdirectReport {
        irreducible: minimum.is_some(),
        monolith: minimum.map(|m| con.get(m).clone()),
        delta_strictly_meet_irreducible: delta_smi,
        delta_prime,
    })
}

/// Elements with exactly one lower and one upper cover.
pub fn doubly_irreducible(l: &FiniteLattice) -> Vec<usize> {
    let h = l.hasse();
    let mut lower = vec![0; l.len()];
    let mut upper = vec![0; l.len()];
    for &(a, b) in &h.covers {
        upper[a] += 1;
        lower[b] += 1;
    }
    l.elements().filter(|&a| lower[a] == 1 && upper[a] == 1).collect()
}

fn remove_element(l: &FiniteLattice, x: usize) -> Result<FiniteLattice, AnalysisError> {
    let keep: Vec<usize> = l.elements().filter(|&a| a != x).collect();
    Ok(l.sublattice(l.name().to_string(), &keep)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Hypothesis not met.
    Skip,
    Fail(String),
}

type Check = fn(&FiniteLattice) -> Result<Outcome, AnalysisError>;

pub struct Property {
    pub id: &'static str,
    pub description: &'static str,
    pub check: Check,
}

fn outcome(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}

fn spec_max_con2_equal(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    let s = Spectrum::compute(l)?;
    Ok(outcome(s.report.spec == s.report.max && s.report.max == s.report.con2, || {
        format!("Spec {:?}, Max {:?}, Con2 {:?}", s.report.spec, s.report.max, s.report.con2)
    }))
}

fn check_cardquomax(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    let s = Spectrum::compute(l)?;
    for mu in s.maximals() {
        let k = mu.class_count();
        if k == 3 || k == 4 {
            return Ok(Outcome::Fail(format!("maximal {} has {k} classes", mu.display(l))));
        }
    }
    Ok(Outcome::Pass)
}

fn check_distributive(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if !l.is_distributive() || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    spec_max_con2_equal(l)
}

fn check_chain(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if !l.is_chain() || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    spec_max_con2_equal(l)
}

fn check_modular(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if !l.is_modular() || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let s = Spectrum::compute(l)?;
    Ok(outcome(s.report.spec == s.report.max && s.con.order().is_boolean_lattice(), || {
        format!("Spec {:?}, Max {:?}, Con boolean {}", s.report.spec, s.report.max, s.con.order().is_boolean_lattice())
    }))
}

fn check_relcomp(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if !l.is_relatively_complemented() || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let s = Spectrum::compute(l)?;
    Ok(outcome(s.report.spec == s.report.max && s.con.order().is_boolean_lattice(), || {
        "Con is not Boolean".to_string()
    }))
}

fn check_product(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if 2 * l.len() > crate::constructions::DEFAULT_SIZE_GUARD {
        return Ok(Outcome::Skip);
    }
    match verify_product_con(&[Arc::new(l.clone()), Arc::new(chain(2))]) {
        Ok(_) => Ok(Outcome::Pass),
        Err(ConstructionError::TheoremViolation { theorem, witness }) => Ok(Outcome::Fail(format!("{theorem}: {witness}"))),
        Err(e) => Err(e.into()),
    }
}

fn check_ordsum(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() + 2 > crate::constructions::DEFAULT_SIZE_GUARD {
        return Ok(Outcome::Skip);
    }
    let (a, b) = (Arc::new(l.clone()), Arc::new(chain(3)));
    for pair in [[a.clone(), b.clone()], [b, a]] {
        match verify_sum_con(&pair) {
            Ok(_) => {}
            Err(ConstructionError::TheoremViolation { theorem, witness }) => {
                return Ok(Outcome::Fail(format!("{theorem}: {witness}")))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::Pass)
}

/// Non-trivial codomains for the morphism properties.
fn small_targets(max: usize) -> Vec<Arc<FiniteLattice>> {
    enumerate_up_to(max.min(4)).expect("small sizes").into_iter().filter(|l| !l.is_trivial()).map(Arc::new).collect()
}

fn check_surjective(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 5 || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let a = Arc::new(l.clone());
    let sa = Spectrum::compute(&a)?;
    for b in small_targets(l.len()) {
        let sb = Spectrum::compute(&b)?;
        for f in all_morphisms(&a, &b, false).into_iter().filter(|f| f.is_surjective()) {
            if let Some(msg) = surjective_failure(&f, &sa, &sb)? {
                return Ok(Outcome::Fail(format!("{:?}: {msg}", f.map())));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Direct images as indices in `Con(B)`; `None` if some image is not a congruence.
fn exact_images<'a>(
    f: &LatticeMorphism,
    sb: &Spectrum,
    cs: impl IntoIterator<Item = &'a Congruence>,
) -> Result<Option<BTreeSet<usize>>, AnalysisError> {
    let mut out = BTreeSet::new();
    for c in cs {
        let d = direct_image(f, c)?;
        if !d.is_exact() {
            return Ok(None);
        }
        out.insert(sb.con.index_of(d.congruence()).ok_or(AnalysisError::CrossCheck("image outside Con".into()))?);
    }
    Ok(Some(out))
}

/// For a surjection: admissible, Max-admissible, and on `[Ker f)` the
/// direct image is exact with `f([Ker f)) = Con B` and
/// `f(Max A ∩ [Ker f)) = Max B`.
pub fn surjective_failure(
    f: &LatticeMorphism,
    sa: &Spectrum,
    sb: &Spectrum,
) -> Result<Option<String>, AnalysisError> {
    let an = MorphismAnalysis { dom: sa.clone(), cod: sb.clone() };
    if !an.admissible(f)?.holds {
        return Ok(Some("not admissible".into()));
    }
    if !an.max_admissible(f)?.holds {
        return Ok(Some("not max-admissible".into()));
    }
    let ker = kernel(f)?;
    let above: Vec<&Congruence> = sa.con.congruences().iter().filter(|t| ker.refines(t)).collect();
    match exact_images(f, sb, above.iter().copied())? {
        Some(img) if img.len() == sb.con.len() && above.len() == sb.con.len() => {}
        _ => return Ok(Some("f([Ker f)) ≠ Con B".into())),
    }
    if exact_images(f, sb, sa.maximals().filter(|mu| ker.refines(mu)))?.as_ref() != Some(&sb.report.max) {
        return Ok(Some("f(Max A ∩ [Ker f)) ≠ Max B".into()));
    }
    Ok(None)
}

/// The unrestricted `f(Con A) = Con B` and `f(Max A) = Max B` for a
/// surjection, with `f(θ)` the relation image. Both fail on small chains:
/// `L4 → L3`, `[0, 1, 1, 2]` sends `{0,1},{2,3}` to a non-transitive
/// relation, and `L3 → L2`, `[0, 0, 1]` sends the maximal `{0},{a,1}` to `∇`.
pub fn surjective_literal_failure(
    f: &LatticeMorphism,
    sa: &Spectrum,
    sb: &Spectrum,
) -> Result<Option<String>, AnalysisError> {
    for theta in sa.con.congruences() {
        if !direct_image(f, theta)?.is_exact() {
            return Ok(Some(format!("f({}) is not a congruence", theta.display(f.dom()))));
        }
    }
    let image = exact_images(f, sb, sa.maximals())?.unwrap_or_default();
    Ok((image != sb.report.max).then(|| {
        format!(
            "f(Max A) = {{{}}}, Max B = {{{}}}",
            image.iter().map(|&i| sb.con.get(i).display(f.cod())).collect::<Vec<_>>().join(", "),
            sb.report.max.iter().map(|&i| sb.con.get(i).display(f.cod())).collect::<Vec<_>>().join(", ")
        )
    }))
}

fn check_surjective_literal(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 5 || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let a = Arc::new(l.clone());
    let sa = Spectrum::compute(&a)?;
    for b in small_targets(l.len()) {
        let sb = Spectrum::compute(&b)?;
        for f in all_morphisms(&a, &b, false).into_iter().filter(|f| f.is_surjective()) {
            if let Some(msg) = surjective_literal_failure(&f, &sa, &sb)? {
                return Ok(Outcome::Fail(format!("{:?}: {msg}", f.map())));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_morflat(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 5 || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let a = Arc::new(l.clone());
    let sa = Spectrum::compute(&a)?;
    for b in small_targets(l.len()) {
        let sb = Spectrum::compute(&b)?;
        for f in all_morphisms(&a, &b, true) {
            if let Some(msg) = bounded_failure(&f, &sa, &sb)? {
                return Ok(Outcome::Fail(format!("{:?}: {msg}", f.map())));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// `f*(Con₂ B) ⊆ Con₂ A` and `(f*)⁻¹{∇} = {∇}` for a bounded morphism.
pub fn bounded_failure(
    f: &LatticeMorphism,
    sa: &Spectrum,
    sb: &Spectrum,
) -> Result<Option<String>, AnalysisError> {
    let an = MorphismAnalysis { dom: sa.clone(), cod: sb.clone() };
    let table = an.pullback_table(f)?;
    let nabla_pre: Vec<usize> = (0..table.len()).filter(|&i| table[i] == sa.con.nabla_index()).collect();
    if nabla_pre != [sb.con.nabla_index()] {
        return Ok(Some(format!("(f*)⁻¹(∇) = {nabla_pre:?}")));
    }
    if let Some(&w) = sb.report.con2.iter().find(|&&i| !sa.report.con2.contains(&table[i])) {
        return Ok(Some(format!("f*({}) has {} classes", sb.con.get(w).display(f.cod()), sa.con.get(table[w]).class_count())));
    }
    Ok(None)
}

fn check_embedsdired(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 6 || l.is_trivial() {
        return Ok(Outcome::Skip);
    }
    let report = is_subdirectly_irreducible(l)?;
    if !report.irreducible {
        return Ok(Outcome::Skip);
    }
    let a = Arc::new(l.clone());
    let sa = Spectrum::compute(&a)?;
    for members in sublattices(l) {
        if members.len() < 2 {
            continue;
        }
        let s = Arc::new(l.sublattice(format!("S{members:?}"), &members)?);
        let i = validate_morphism(s.clone(), a.clone(), members.clone(), false)?;
        let an = MorphismAnalysis { dom: Spectrum::compute(&s)?, cod: sa.clone() };
        if an.admissible(&i)?.holds && !subdirect_from(&an.dom)?.irreducible {
            return Ok(Outcome::Fail(format!("sublattice {members:?} is reducible")));
        }
    }
    Ok(Outcome::Pass)
}

/// Every subset closed under meet and join, as sorted index lists.
pub fn sublattices(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = l.len();
    (1u32..1 << n)
        .filter_map(|mask| {
            let mut set = FixedBitSet::with_capacity(n);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    set.insert(i);
                }
            }
            l.is_sublattice(&set).then(|| set.ones().collect())
        })
        .collect()
}

fn check_quotient_si(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 8 {
        return Ok(Outcome::Skip);
    }
    let s = Spectrum::compute(l)?;
    for (i, theta) in s.con.congruences().iter().enumerate() {
        if theta.is_nabla() {
            continue;
        }
        let q = quotient(l, theta)?;
        let si = is_subdirectly_irreducible(&q.lattice)?.irreducible;
        let smi = s.report.evidence[i].unique_successor.is_some();
        if si != smi {
            return Ok(Outcome::Fail(format!("θ = {}: quotient irreducible {si}, θ strictly meet-irreducible {smi}", theta.display(l))));
        }
    }
    Ok(Outcome::Pass)
}

fn check_oracle(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 8 {
        return Ok(Outcome::Skip);
    }
    let fast: BTreeSet<Partition> = enumerate_con(l).congruences().iter().map(|c| c.partition().clone()).collect();
    Ok(outcome(fast == brute_force_con(l), || "enumerate_con disagrees with brute force".into()))
}

/// `Con(L/θ) ≅ [θ)` via `γ ↦ γ/θ`, and `Max(L/θ) = {μ/θ : θ ⊆ μ ∈ Max(L)}`.
pub fn quotient_failure(l: &FiniteLattice, s: &Spectrum, theta: &Congruence) -> Result<Option<String>, AnalysisError> {
    let q = quotient(l, theta)?;
    let qs = Spectrum::compute(&q.lattice)?;
    let interval = interval_above(&s.con, theta)?;
    let lifted: Vec<usize> = interval
        .members
        .iter()
        .map(|&g| {
            let c = q.lift(s.con.get(g))?;
            qs.con.index_of(&c).ok_or(AnalysisError::CrossCheck("γ/θ outside Con(L/θ)".into()))
        })
        .collect::<Result<_, _>>()?;
    if lifted.iter().collect::<HashSet<_>>().len() != qs.con.len() || lifted.len() != qs.con.len() {
        return Ok(Some("γ ↦ γ/θ is not a bijection onto Con(L/θ)".into()));
    }
    for (x, &gx) in interval.members.iter().enumerate() {
        for (y, &gy) in interval.members.iter().enumerate() {
            if s.con.leq(gx, gy) != qs.con.leq(lifted[x], lifted[y]) {
                return Ok(Some("γ ↦ γ/θ is not an order isomorphism".into()));
            }
        }
    }
    let predicted: BTreeSet<usize> = s
        .maximals()
        .filter(|mu| theta.refines(mu))
        .map(|mu| qs.con.index_of(&q.lift(mu)?).ok_or(AnalysisError::CrossCheck("μ/θ outside Con".into())))
        .collect::<Result<_, AnalysisError>>()?;
    if predicted != qs.report.max {
        return Ok(Some("Max(L/θ) ≠ {μ/θ}".into()));
    }
    Ok(None)
}

/// For every `θ ∈ Con(A)`: the induced square commutes and
/// `f_(θ)*(λ/Cg(f(θ))) = f*(λ)/θ`; then `f = i∘g` with `f` admissible
/// (Max-admissible) iff `i` is.
pub fn morphism_identity_failure(f: &LatticeMorphism) -> Result<Option<String>, AnalysisError> {
    let an = MorphismAnalysis::new(f)?;
    for theta in an.dom.con.congruences() {
        let induced = induced_quotient_morphism(f, theta)?;
        if !induced.square_commutes(f) {
            return Ok(Some(format!("θ = {}: square does not commute", theta.display(f.dom()))));
        }
        match induced.check_pullback_identity(f, &an.cod.con) {
            Ok(_) => {}
            Err(MorphismError::IdentityViolation(msg)) => {
                return Ok(Some(format!("θ = {}: {msg}", theta.display(f.dom()))))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let fac = embedding_factorization(f)?;
    let ian = MorphismAnalysis::new(&fac.embedding)?;
    if an.admissible(f)?.holds != ian.admissible(&fac.embedding)?.holds {
        return Ok(Some("f admissible differs from i admissible".into()));
    }
    if an.max_admissible(f)?.holds != ian.max_admissible(&fac.embedding)?.holds {
        return Ok(Some("f Max-admissible differs from i Max-admissible".into()));
    }
    Ok(None)
}

fn check_morphism_identities(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 5 {
        return Ok(Outcome::Skip);
    }
    let a = Arc::new(l.clone());
    for b in small_targets(4) {
        for f in all_morphisms(&a, &b, false) {
            if let Some(msg) = morphism_identity_failure(&f)? {
                return Ok(Outcome::Fail(format!("{:?}: {msg}", f.map())));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_speccat(l: &FiniteLattice) -> Result<Outcome, AnalysisError> {
    if l.len() > 8 {
        return Ok(Outcome::Skip);
    }
    let s = Spectrum::compute(l)?;
    for theta in s.con.congruences() {
        if let Some(msg) = quotient_failure(l, &s, theta)? {
            return Ok(Outcome::Fail(format!("θ = {}: {msg}", theta.display(l))));
        }
    }
    Ok(Outcome::Pass)
}

pub const PROPERTIES: &[Property] = &[
    Property { id: "cardquomax-gap", description: "no maximal congruence has 3 or 4 classes", check: check_cardquomax },
    Property { id: "distributive-spec-eq", description: "distributive: Spec = Max = Con2", check: check_distributive },
    Property { id: "chain-spec-eq", description: "chains: Spec = Max = Con2", check: check_chain },
    Property { id: "modular-spec-eq-max", description: "modular: Spec = Max and Con is Boolean", check: check_modular },
    Property {
        id: "relcomp-con-boolean",
        description: "relatively complemented: Spec = Max and Con is Boolean",
        check: check_relcomp,
    },
    Property { id: "product-decomposition", description: "Con, Spec, Max, Con2 of L × L2", check: check_product },
    Property { id: "ordsum-decomposition", description: "Con, Spec, Max, Con2 of L ⊕ L3 and L3 ⊕ L", check: check_ordsum },
    Property {
        id: "surjective-implies-maxadm",
        description: "surjections onto lattices of size ≤ 4: admissible, Max-admissible, f([Ker f)) = Con B, f(Max A ∩ [Ker f)) = Max B",
        check: check_surjective,
    },
    Property {
        id: "surjective-literal-images",
        description: "surjections onto lattices of size ≤ 4: f(Con A) = Con B and f(Max A) = Max B as relation images",
        check: check_surjective_literal,
    },
    Property {
        id: "bounded-morphism-con2",
        description: "bounded morphisms: f*(Con2) ⊆ Con2 and only ∇ pulls back to ∇",
        check: check_morflat,
    },
    Property {
        id: "admissible-sublattice-sdi",
        description: "sublattices of an irreducible lattice with admissible inclusion are irreducible",
        check: check_embedsdired,
    },
    Property {
        id: "quotient-sdi",
        description: "L/θ irreducible iff θ strictly meet-irreducible",
        check: check_quotient_si,
    },
    Property { id: "oracle-con", description: "enumerate_con equals brute-force filtering", check: check_oracle },
    Property { id: "quotient-interval", description: "Con(L/θ) ≅ [θ) and Max(L/θ) = {μ/θ}", check: check_speccat },
    Property {
        id: "morphism-identities",
        description: "induced quotient morphisms and image factorizations into lattices of size ≤ 4",
        check: check_morphism_identities,
    },
];

pub fn property(id: &str) -> Result<&'static Property, AnalysisError> {
    PROPERTIES.iter().find(|p| p.id == id).ok_or_else(|| AnalysisError::UnknownProperty(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub lattice: LatticeFile,
    pub message: String,
    /// Smallest failing lattice reached by removing doubly irreducible elements.
    pub shrunk: LatticeFile,
    pub shrunk_message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub property: String,
    pub spec: GeneratorSpec,
    pub instances: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

fn shrink(p: &Property, l: &FiniteLattice, msg: String) -> Result<(FiniteLattice, String), AnalysisError> {
    let (mut current, mut message) = (l.clone(), msg);
    'outer: loop {
        for x in doubly_irreducible(&current) {
            let smaller = remove_element(&current, x)?;
            if let Outcome::Fail(m) = (p.check)(&smaller)? {
                current = smaller;
                message = m;
                continue 'outer;
            }
        }
        return Ok((current, message));
    }
}

pub fn sweep_lattices(property_id: &str, spec: &GeneratorSpec, lattices: &[FiniteLattice]) -> Result<SweepReport, AnalysisError> {
    let p = property(property_id)?;
    let outcomes: Vec<Outcome> = lattices.par_iter().map(|l| (p.check)(l)).collect::<Result<_, _>>()?;
    let mut report = SweepReport {
        property: p.id.to_string(),
        spec: spec.clone(),
        instances: lattices.len(),
        passed: 0,
        skipped: 0,
        failed: 0,
        counterexample: None,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(message) => {
                report.failed += 1;
                if report.counterexample.is_none() {
                    let (small, shrunk_message) = shrink(p, &lattices[i], message.clone())?;
                    report.counterexample = Some(Counterexample {
                        index: i,
                        lattice: lattices[i].to_file(),
                        message,
                        shrunk: small.to_file(),
                        shrunk_message,
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn sweep(property_id: &str, spec: &GeneratorSpec, count: usize) -> Result<SweepReport, AnalysisError> {
    property(property_id)?;
    let lattices = generate(spec, count)?;
    sweep_lattices(property_id, spec, &lattices)
}

/// Con table helper for callers holding a bare congruence lattice.
pub fn delta_is_strictly_meet_irreducible(con: &CongruenceLattice) -> bool {
    crate::spectra::strictly_meet_irreducible(con, con.delta_index())
}
