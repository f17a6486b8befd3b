//! Lattice morphisms: validation, kernels, direct and inverse images of
//! congruences, admissibility, induced quotient maps and the
//! surjection/embedding factorization.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{
    generated_congruence, quotient, Congruence, CongruenceError, CongruenceLattice, Quotient,
};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::partition::Partition;
use crate::spectra::{SpectraError, Spectrum};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("map has {got} entries, domain has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("image {image} of element {element} is outside the codomain")]
    OutOfRange { element: usize, image: usize },
    #[error("f({0} ∧ {1}) ≠ f({0}) ∧ f({1})")]
    NotMeetPreserving(usize, usize),
    #[error("f({0} ∨ {1}) ≠ f({0}) ∨ f({1})")]
    NotJoinPreserving(usize, usize),
    #[error("map does not send 0 to 0 and 1 to 1")]
    NotBounded,
    #[error("codomain of the first map is not the domain of the second")]
    NotComposable,
    #[error("congruence does not belong to the expected lattice")]
    MixedLattices,
    #[error("unknown lattice {0}")]
    UnknownLattice(String),
    #[error("induced quotient map is not well defined at element {0}")]
    NotWellDefined(usize),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// A map between two finite lattices. Maps built through
/// [`validate_morphism`] preserve meet and join; [`LatticeMorphism::raw`]
/// skips that check.
#[derive(Debug, Clone)]
pub struct LatticeMorphism {
    name: String,
    dom: Arc<FiniteLattice>,
    cod: Arc<FiniteLattice>,
    map: Vec<usize>,
    bounded: bool,
    validated: bool,
}

fn check_shape(dom: &FiniteLattice, cod: &FiniteLattice, map: &[usize]) -> Result<(), MorphismError> {
    if map.len() != dom.len() {
        return Err(MorphismError::WrongLength { expected: dom.len(), got: map.len() });
    }
    if let Some((element, &image)) = map.iter().enumerate().find(|&(_, &v)| v >= cod.len()) {
        return Err(MorphismError::OutOfRange { element, image });
    }
    Ok(())
}

/// First pair breaking meet preservation, then first pair breaking joins.
pub fn first_violation(dom: &FiniteLattice, cod: &FiniteLattice, map: &[usize]) -> Option<MorphismError> {
    let n = dom.len();
    for a in 0..n {
        for b in a + 1..n {
            if map[dom.meet(a, b)] != cod.meet(map[a], map[b]) {
                return Some(MorphismError::NotMeetPreserving(a, b));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if map[dom.join(a, b)] != cod.join(map[a], map[b]) {
                return Some(MorphismError::NotJoinPreserving(a, b));
            }
        }
    }
    None
}

fn sends_bounds(dom: &FiniteLattice, cod: &FiniteLattice, map: &[usize]) -> bool {
    map[dom.bottom()] == cod.bottom() && map[dom.top()] == cod.top()
}

pub fn validate_morphism(
    dom: impl Into<Arc<FiniteLattice>>,
    cod: impl Into<Arc<FiniteLattice>>,
    map: Vec<usize>,
    require_bounded: bool,
) -> Result<LatticeMorphism, MorphismError> {
    let (dom, cod) = (dom.into(), cod.into());
    check_shape(&dom, &cod, &map)?;
    if let Some(err) = first_violation(&dom, &cod, &map) {
        return Err(err);
    }
    let bounded = sends_bounds(&dom, &cod, &map);
    if require_bounded && !bounded {
        return Err(MorphismError::NotBounded);
    }
    let name = format!("{}→{}", dom.name(), cod.name());
    Ok(LatticeMorphism { name, dom, cod, map, bounded, validated: true })
}

impl LatticeMorphism {
    /// A map that is only checked for shape. Inverse images are still
    /// checked for compatibility when they are computed.
    pub fn raw(
        dom: impl Into<Arc<FiniteLattice>>,
        cod: impl Into<Arc<FiniteLattice>>,
        map: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        let (dom, cod) = (dom.into(), cod.into());
        check_shape(&dom, &cod, &map)?;
        let bounded = sends_bounds(&dom, &cod, &map);
        let validated = first_violation(&dom, &cod, &map).is_none();
        let name = format!("{}→{}", dom.name(), cod.name());
        Ok(LatticeMorphism { name, dom, cod, map, bounded, validated })
    }

    pub fn identity(l: impl Into<Arc<FiniteLattice>>) -> Self {
        let l = l.into();
        let map = l.elements().collect();
        LatticeMorphism { name: format!("id_{}", l.name()), dom: l.clone(), cod: l, map, bounded: true, validated: true }
    }

    /// Builds a map from `(source label, target label)` pairs.
    pub fn from_labels(
        dom: impl Into<Arc<FiniteLattice>>,
        cod: impl Into<Arc<FiniteLattice>>,
        pairs: &[(&str, &str)],
        require_bounded: bool,
    ) -> Result<Self, MorphismError> {
        let (dom, cod) = (dom.into(), cod.into());
        let map = label_map(&dom, &cod, pairs)?;
        validate_morphism(dom, cod, map, require_bounded)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dom(&self) -> &Arc<FiniteLattice> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteLattice> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// Whether the map preserves meet and join.
    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn image(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.cod.len());
        for &y in &self.map {
            set.insert(y);
        }
        set
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count_ones(..) == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones(..) == self.dom.len()
    }

    /// Whether every image is the bottom or the top of the codomain.
    pub fn image_in_bounds(&self) -> bool {
        self.map.iter().all(|&y| y == self.cod.bottom() || y == self.cod.top())
    }

    pub fn to_file(&self) -> MorphismFile {
        MorphismFile {
            name: Some(self.name.clone()),
            dom: self.dom.name().to_string(),
            cod: self.cod.name().to_string(),
            map: self.map.clone(),
        }
    }
}

fn label_map(dom: &FiniteLattice, cod: &FiniteLattice, pairs: &[(&str, &str)]) -> Result<Vec<usize>, MorphismError> {
    let mut map = vec![usize::MAX; dom.len()];
    for (a, b) in pairs {
        let x = dom.index_of(a).ok_or_else(|| MorphismError::UnknownLattice(format!("{}: {a}", dom.name())))?;
        let y = cod.index_of(b).ok_or_else(|| MorphismError::UnknownLattice(format!("{}: {b}", cod.name())))?;
        map[x] = y;
    }
    if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
        return Err(MorphismError::OutOfRange { element: x, image: usize::MAX });
    }
    Ok(map)
}

/// `{"dom": name, "cod": name, "map": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dom: String,
    pub cod: String,
    pub map: Vec<usize>,
}

impl MorphismFile {
    pub fn from_json(text: &str) -> Result<Self, MorphismError> {
        serde_json::from_str(text).map_err(|e| MorphismError::Lattice(LatticeError::Format(e.to_string())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("morphism files serialize")
    }

    /// Resolves lattice names and validates the map.
    pub fn resolve(
        &self,
        lookup: impl Fn(&str) -> Option<Arc<FiniteLattice>>,
        require_bounded: bool,
    ) -> Result<LatticeMorphism, MorphismError> {
        let dom = lookup(&self.dom).ok_or_else(|| MorphismError::UnknownLattice(self.dom.clone()))?;
        let cod = lookup(&self.cod).ok_or_else(|| MorphismError::UnknownLattice(self.cod.clone()))?;
        let f = validate_morphism(dom, cod, self.map.clone(), require_bounded)?;
        Ok(match &self.name {
            Some(n) => f.with_name(n.clone()),
            None => f,
        })
    }
}

/// `f*(ψ) = {(a,b) : (f(a), f(b)) ∈ ψ}`.
pub fn inverse_image(f: &LatticeMorphism, psi: &Congruence) -> Result<Congruence, MorphismError> {
    if psi.lattice_id() != f.cod.id() {
        return Err(MorphismError::MixedLattices);
    }
    let labels: Vec<usize> = f.map.iter().map(|&y| psi.partition().rep_of(y)).collect();
    let part = Partition::from_labels(&labels);
    if f.validated {
        Ok(Congruence::trusted(f.dom.id(), part))
    } else {
        Ok(Congruence::new(&f.dom, part)?)
    }
}

/// `Ker(f) = f*(Δ)`.
pub fn kernel(f: &LatticeMorphism) -> Result<Congruence, MorphismError> {
    inverse_image(f, &Congruence::delta(&f.cod))
}

/// Image of a congruence along a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectImage {
    /// `f(φ)` itself is a congruence of the codomain.
    Exact(Congruence),
    /// `f(φ)` is not a congruence; `Cg(f(φ))`.
    Generated(Congruence),
}

impl DirectImage {
    pub fn congruence(&self) -> &Congruence {
        match self {
            DirectImage::Exact(c) | DirectImage::Generated(c) => c,
        }
    }

    pub fn into_congruence(self) -> Congruence {
        match self {
            DirectImage::Exact(c) | DirectImage::Generated(c) => c,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DirectImage::Exact(_))
    }
}

/// `f(φ) = {(f(a), f(b)) : (a, b) ∈ φ}`, exact when that relation is
/// already a congruence. For surjective `f` it can fail transitivity:
/// `L4 → L3`, `[0, 1, 1, 2]` sends `{0,1},{2,3}` to `{(0,1), (1,2)}`.
pub fn direct_image(f: &LatticeMorphism, phi: &Congruence) -> Result<DirectImage, MorphismError> {
    if phi.lattice_id() != f.dom.id() {
        return Err(MorphismError::MixedLattices);
    }
    let m = f.cod.len();
    let mut relation = vec![FixedBitSet::with_capacity(m); m];
    for block in phi.blocks() {
        for &a in &block {
            for &b in &block {
                relation[f.map[a]].insert(f.map[b]);
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        phi.partition().rep().iter().enumerate().map(|(a, &r)| (f.map[a], f.map[r])).collect();
    let closure = generated_congruence(&f.cod, &pairs);
    let exact = (0..m).all(|x| (0..m).all(|y| relation[x].contains(y) == closure.related(x, y)));
    Ok(if exact { DirectImage::Exact(closure) } else { DirectImage::Generated(closure) })
}

/// `g ∘ f`.
pub fn compose(f: &LatticeMorphism, g: &LatticeMorphism) -> Result<LatticeMorphism, MorphismError> {
    if f.cod.id() != g.dom.id() {
        return Err(MorphismError::NotComposable);
    }
    let map = f.map.iter().map(|&y| g.map[y]).collect();
    let composite = if f.validated && g.validated {
        validate_morphism(f.dom.clone(), g.cod.clone(), map, false)?
    } else {
        LatticeMorphism::raw(f.dom.clone(), g.cod.clone(), map)?
    };
    Ok(composite.with_name(format!("{}∘{}", g.name, f.name)))
}

/// A failing `ψ` and how its inverse image was classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub psi: Congruence,
    pub pullback: Congruence,
    pub pullback_prime: bool,
    pub pullback_maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of codomain congruences examined.
    pub checked: usize,
    pub witness: Option<Witness>,
}

/// Spectra of both ends of a morphism, computed once.
#[derive(Debug, Clone)]
pub struct MorphismAnalysis {
    pub dom: Spectrum,
    pub cod: Spectrum,
}

#[derive(Clone, Copy)]
enum Kind {
    Prime,
    Maximal,
}

impl MorphismAnalysis {
    pub fn new(f: &LatticeMorphism) -> Result<Self, MorphismError> {
        Ok(MorphismAnalysis { dom: Spectrum::compute(&f.dom)?, cod: Spectrum::compute(&f.cod)? })
    }

    fn verdict(&self, f: &LatticeMorphism, kind: Kind) -> Result<Verdict, MorphismError> {
        let targets: Vec<&Congruence> = match kind {
            Kind::Prime => self.cod.primes().collect(),
            Kind::Maximal => self.cod.maximals().collect(),
        };
        for psi in &targets {
            let pullback = inverse_image(f, psi)?;
            let prime = self.dom.is_prime(&pullback);
            let maximal = self.dom.is_maximal(&pullback);
            let ok = match kind {
                Kind::Prime => prime,
                Kind::Maximal => maximal,
            };
            if !ok {
                let witness = Witness { psi: (*psi).clone(), pullback, pullback_prime: prime, pullback_maximal: maximal };
                return Ok(Verdict { holds: false, checked: targets.len(), witness: Some(witness) });
            }
        }
        Ok(Verdict { holds: true, checked: targets.len(), witness: None })
    }

    /// `f*(ψ) ∈ Spec(dom)` for every `ψ ∈ Spec(cod)`.
    pub fn admissible(&self, f: &LatticeMorphism) -> Result<Verdict, MorphismError> {
        self.verdict(f, Kind::Prime)
    }

    /// `f*(ψ) ∈ Max(dom)` for every `ψ ∈ Max(cod)`.
    pub fn max_admissible(&self, f: &LatticeMorphism) -> Result<Verdict, MorphismError> {
        self.verdict(f, Kind::Maximal)
    }

    /// `f*` as a table from codomain congruence indices to domain ones.
    pub fn pullback_table(&self, f: &LatticeMorphism) -> Result<Vec<usize>, MorphismError> {
        self.cod
            .con
            .congruences()
            .iter()
            .map(|psi| {
                let p = inverse_image(f, psi)?;
                self.dom.con.index_of(&p).ok_or(MorphismError::Congruence(CongruenceError::NotInLattice))
            })
            .collect()
    }
}

pub fn is_admissible(f: &LatticeMorphism) -> Result<Verdict, MorphismError> {
    MorphismAnalysis::new(f)?.admissible(f)
}

pub fn is_max_admissible(f: &LatticeMorphism) -> Result<Verdict, MorphismError> {
    MorphismAnalysis::new(f)?.max_admissible(f)
}

/// `f_(θ): A/θ → B/Cg_B(f(θ))` with both quotients.
#[derive(Debug, Clone)]
pub struct InducedMorphism {
    pub theta: Congruence,
    /// `Cg_B(f(θ))`.
    pub psi: Congruence,
    pub dom_quotient: Quotient,
    pub cod_quotient: Quotient,
    pub morphism: LatticeMorphism,
}

pub fn induced_quotient_morphism(f: &LatticeMorphism, theta: &Congruence) -> Result<InducedMorphism, MorphismError> {
    let psi = direct_image(f, theta)?.into_congruence();
    let dq = quotient(&f.dom, theta)?;
    let cq = quotient(&f.cod, &psi)?;
    let mut map = vec![usize::MAX; dq.lattice.len()];
    for a in f.dom.elements() {
        let target = cq.projection[f.map[a]];
        let slot = &mut map[dq.projection[a]];
        if *slot == usize::MAX {
            *slot = target;
        } else if *slot != target {
            return Err(MorphismError::NotWellDefined(a));
        }
    }
    let (dl, cl) = (Arc::new(dq.lattice.clone()), Arc::new(cq.lattice.clone()));
    let morphism = if f.validated {
        validate_morphism(dl, cl, map, false)?
    } else {
        LatticeMorphism::raw(dl, cl, map)?
    };
    let morphism = morphism.with_name(format!("{}_(θ)", f.name));
    Ok(InducedMorphism { theta: theta.clone(), psi, dom_quotient: dq, cod_quotient: cq, morphism })
}

impl InducedMorphism {
    /// `p_ψ ∘ f = f_(θ) ∘ p_θ` pointwise.
    pub fn square_commutes(&self, f: &LatticeMorphism) -> bool {
        f.dom.elements().all(|a| {
            self.cod_quotient.projection[f.map[a]] == self.morphism.map[self.dom_quotient.projection[a]]
        })
    }

    /// `f_(θ)*(λ/ψ) = f*(λ)/θ` for every `λ ⊇ ψ` in `con_cod`. Returns the
    /// number of congruences checked.
    pub fn check_pullback_identity(
        &self,
        f: &LatticeMorphism,
        con_cod: &CongruenceLattice,
    ) -> Result<usize, MorphismError> {
        let mut checked = 0;
        for lambda in con_cod.congruences() {
            if !self.psi.refines(lambda) {
                continue;
            }
            let left = inverse_image(&self.morphism, &self.cod_quotient.lift(lambda)?)?;
            let right = self.dom_quotient.lift(&inverse_image(f, lambda)?)?;
            if left != right {
                return Err(MorphismError::IdentityViolation(format!(
                    "λ = {} gives {} on the left and {} on the right",
                    lambda.display(&f.cod),
                    left.display(&self.morphism.dom),
                    right.display(&self.morphism.dom)
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

/// `f = i ∘ g` with `g` onto the image sublattice and `i` its inclusion.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// Codomain indices of the image, increasing.
    pub members: Vec<usize>,
    pub image: Arc<FiniteLattice>,
    pub surjection: LatticeMorphism,
    pub embedding: LatticeMorphism,
}

pub fn embedding_factorization(f: &LatticeMorphism) -> Result<Factorization, MorphismError> {
    let members: Vec<usize> = f.image().ones().collect();
    let image = Arc::new(f.cod.sublattice(format!("{}({})", f.name, f.dom.name()), &members)?);
    let position = |y: usize| members.binary_search(&y).expect("image member");
    let g_map = f.map.iter().map(|&y| position(y)).collect();
    let (surjection, embedding) = if f.validated {
        (
            validate_morphism(f.dom.clone(), image.clone(), g_map, false)?,
            validate_morphism(image.clone(), f.cod.clone(), members.clone(), false)?,
        )
    } else {
        (
            LatticeMorphism::raw(f.dom.clone(), image.clone(), g_map)?,
            LatticeMorphism::raw(image.clone(), f.cod.clone(), members.clone())?,
        )
    };
    let surjection = surjection.with_name(format!("{}′", f.name));
    let embedding = embedding.with_name(format!("ι_{}", f.name));
    if f.dom.elements().any(|a| embedding.map[surjection.map[a]] != f.map[a]) {
        return Err(MorphismError::IdentityViolation("f ≠ i∘g".into()));
    }
    Ok(Factorization { members, image, surjection, embedding })
}

/// Every lattice morphism `dom → cod`, in lexicographic order of maps.
pub fn all_morphisms(dom: &Arc<FiniteLattice>, cod: &Arc<FiniteLattice>, bounded_only: bool) -> Vec<LatticeMorphism> {
    let n = dom.len();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    extend(dom, cod, bounded_only, &mut map, 0, &mut out);
    out
}

fn extend(
    dom: &Arc<FiniteLattice>,
    cod: &Arc<FiniteLattice>,
    bounded_only: bool,
    map: &mut Vec<usize>,
    x: usize,
    out: &mut Vec<LatticeMorphism>,
) {
    if x == dom.len() {
        if let Ok(f) = validate_morphism(dom.clone(), cod.clone(), map.clone(), bounded_only) {
            out.push(f);
        }
        return;
    }
    for y in cod.elements() {
        map[x] = y;
        let consistent = (0..=x).all(|a| {
            let (m, j) = (dom.meet(a, x), dom.join(a, x));
            (m > x || map[m] == cod.meet(map[a], y)) && (j > x || map[j] == cod.join(map[a], y))
        });
        if consistent {
            extend(dom, cod, bounded_only, map, x + 1, out);
        }
    }
}

/// Congruence set as indices, for set comparisons across `Con` tables.
pub fn index_set<'a>(
    con: &CongruenceLattice,
    cs: impl IntoIterator<Item = &'a Congruence>,
) -> Option<BTreeSet<usize>> {
    cs.into_iter().map(|c| con.index_of(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Arc<FiniteLattice> {
        Arc::new(
            FiniteLattice::from_covers("P", &["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)])
                .unwrap(),
        )
    }

    fn diamond() -> Arc<FiniteLattice> {
        Arc::new(
            FiniteLattice::from_covers(
                "D",
                &["0", "x", "y", "z", "1"],
                &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            )
            .unwrap(),
        )
    }

    fn square() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::from_covers("L2^2", &["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    fn cong(l: &FiniteLattice, b: &[&[&str]]) -> Congruence {
        Congruence::from_label_blocks(l, b).unwrap()
    }

    fn g() -> LatticeMorphism {
        validate_morphism(pentagon(), square(), vec![0, 1, 2, 2, 3], true).unwrap()
    }

    #[test]
    fn validation_witnesses() {
        let d = diamond();
        assert!(validate_morphism(pentagon(), pentagon(), (0..5).collect(), true).is_ok());
        assert_eq!(
            validate_morphism(d.clone(), d.clone(), vec![0, 1, 3, 3, 4], false).unwrap_err(),
            MorphismError::NotMeetPreserving(2, 3)
        );
        assert_eq!(
            validate_morphism(pentagon(), diamond(), (0..5).collect(), false).unwrap_err(),
            MorphismError::NotMeetPreserving(2, 3)
        );
        let two = Arc::new(FiniteLattice::chain(2).unwrap());
        assert_eq!(validate_morphism(two.clone(), d.clone(), vec![1, 1], true).unwrap_err(), MorphismError::NotBounded);
        assert!(validate_morphism(two, d.clone(), vec![1, 1], false).is_ok());
        assert_eq!(
            validate_morphism(d.clone(), d, vec![0, 1], false).unwrap_err(),
            MorphismError::WrongLength { expected: 5, got: 2 }
        );
    }

    #[test]
    fn kernels_and_pullbacks() {
        let f = g();
        let (p, s) = (f.dom().clone(), f.cod().clone());
        assert_eq!(kernel(&f).unwrap(), cong(&p, &[&["0"], &["x"], &["y", "z"], &["1"]]));
        let rho = cong(&s, &[&["0", "x"], &["y", "1"]]);
        let sigma = cong(&s, &[&["0", "y"], &["x", "1"]]);
        assert_eq!(inverse_image(&f, &rho).unwrap(), cong(&p, &[&["0", "x"], &["y", "z", "1"]]));
        assert_eq!(inverse_image(&f, &sigma).unwrap(), cong(&p, &[&["0", "y", "z"], &["x", "1"]]));
        assert!(inverse_image(&f, &Congruence::nabla(&s)).unwrap().is_nabla());
        assert_eq!(inverse_image(&f, &Congruence::delta(&p)), Err(MorphismError::MixedLattices));

        let l3 = Arc::new(FiniteLattice::chain(3).unwrap());
        let collapse = validate_morphism(l3.clone(), Arc::new(FiniteLattice::chain(2).unwrap()), vec![0, 0, 1], true)
            .unwrap();
        assert_eq!(kernel(&collapse).unwrap().blocks(), vec![vec![0, 1], vec![2]]);
        assert!(kernel(&LatticeMorphism::identity(l3)).unwrap().is_delta());
    }

    #[test]
    fn direct_images() {
        let f = g();
        let ker = kernel(&f).unwrap();
        let img = direct_image(&f, &ker).unwrap();
        assert!(img.is_exact());
        assert!(img.congruence().is_delta());

        let j = validate_morphism(square(), diamond(), vec![0, 1, 2, 4], true).unwrap();
        let rho = cong(j.dom(), &[&["0", "x"], &["y", "1"]]);
        let img = direct_image(&j, &rho).unwrap();
        assert!(!img.is_exact());
        assert!(img.congruence().is_nabla());

        let l4 = Arc::new(FiniteLattice::chain(4).unwrap());
        let l3 = Arc::new(FiniteLattice::chain(3).unwrap());
        let onto = validate_morphism(l4.clone(), l3, vec![0, 1, 1, 2], true).unwrap();
        let theta = Congruence::parse(&l4, "[[0,1],[2,3]]").unwrap();
        let img = direct_image(&onto, &theta).unwrap();
        assert!(!img.is_exact());
        assert!(img.congruence().is_nabla());
    }

    #[test]
    fn fiectip_verdicts() {
        let f = g();
        assert!(is_admissible(&f).unwrap().holds);
        assert!(is_max_admissible(&f).unwrap().holds);

        let i = validate_morphism(square(), pentagon(), vec![0, 1, 2, 4], true).unwrap();
        let adm = is_admissible(&i).unwrap();
        assert!(!adm.holds);
        let w = adm.witness.unwrap();
        assert!(w.psi.is_delta() && w.pullback.is_delta() && !w.pullback_prime);
        assert!(is_max_admissible(&i).unwrap().holds);

        let j = validate_morphism(square(), diamond(), vec![0, 1, 2, 4], true).unwrap();
        assert!(!is_admissible(&j).unwrap().holds);
        assert!(!is_max_admissible(&j).unwrap().holds);

        let h = LatticeMorphism::raw(pentagon(), diamond(), (0..5).collect()).unwrap();
        assert!(!h.is_validated());
        assert!(is_admissible(&h).unwrap().holds);
        let max = is_max_admissible(&h).unwrap();
        assert!(!max.holds);
        let w = max.witness.unwrap();
        assert!(w.pullback.is_delta() && w.pullback_prime && !w.pullback_maximal);
    }

    #[test]
    fn composition_checks_identity_of_lattices() {
        let f = g();
        let id = LatticeMorphism::identity(square());
        let c = compose(&f, &id).unwrap();
        assert_eq!(c.map(), f.map());
        assert_eq!(compose(&id, &f).unwrap_err(), MorphismError::NotComposable);
        let same_size = Arc::new(FiniteLattice::chain(4).unwrap());
        let to_chain = validate_morphism(pentagon(), same_size.clone(), vec![0, 0, 0, 0, 0], false).unwrap();
        assert_eq!(compose(&to_chain, &id).unwrap_err(), MorphismError::NotComposable);
    }

    #[test]
    fn induced_morphism_of_g_at_gamma() {
        let f = g();
        let gamma = kernel(&f).unwrap();
        let ind = induced_quotient_morphism(&f, &gamma).unwrap();
        assert!(ind.psi.is_delta());
        assert_eq!(ind.morphism.dom().len(), 4);
        assert_eq!(ind.morphism.cod().len(), 4);
        assert!(ind.square_commutes(&f));
        let con = crate::congruence::enumerate_con(f.cod());
        assert_eq!(ind.check_pullback_identity(&f, &con).unwrap(), 4);

        let top = induced_quotient_morphism(&f, &Congruence::nabla(f.dom())).unwrap();
        assert!(top.morphism.dom().is_trivial() && top.morphism.cod().is_trivial());
    }

    #[test]
    fn factorization_through_image() {
        let d = diamond();
        let e = Arc::new(
            FiniteLattice::from_covers(
                "E",
                &["0", "x", "y", "t", "z", "1"],
                &[(0, 1), (0, 2), (2, 3), (0, 4), (1, 5), (3, 5), (4, 5)],
            )
            .unwrap(),
        );
        let k = validate_morphism(d.clone(), e, vec![0, 1, 2, 4, 5], true).unwrap();
        let fac = embedding_factorization(&k).unwrap();
        assert_eq!(fac.image.len(), 5);
        assert!(fac.image.is_isomorphic(&d));
        assert!(fac.surjection.is_surjective());

        let f = g();
        let fac = embedding_factorization(&f).unwrap();
        assert!(fac.embedding.is_surjective() && fac.embedding.is_injective());
    }

    #[test]
    fn morphism_enumeration_matches_brute_force() {
        let (p, s) = (pentagon(), square());
        let fast = all_morphisms(&p, &s, false);
        let mut slow = 0;
        for code in 0..4usize.pow(5) {
            let map: Vec<usize> = (0..5).map(|i| code / 4usize.pow(i) % 4).collect();
            if first_violation(&p, &s, &map).is_none() {
                slow += 1;
            }
        }
        assert_eq!(fast.len(), slow);
        assert!(fast.iter().any(|f| f.map() == g().map()));
    }

    #[test]
    fn morphism_file_round_trip() {
        let text = r#"{"dom": "P", "cod": "L2^2", "map": [0, 1, 2, 2, 3]}"#;
        let file = MorphismFile::from_json(text).unwrap();
        let lookup = |n: &str| match n {
            "P" => Some(pentagon()),
            "L2^2" => Some(square()),
            _ => None,
        };
        let f = file.resolve(lookup, true).unwrap();
        assert_eq!(f.map(), g().map());
        let bad = MorphismFile { name: None, dom: "Q".into(), cod: "P".into(), map: vec![] };
        assert_eq!(bad.resolve(lookup, true).unwrap_err(), MorphismError::UnknownLattice("Q".into()));
    }
}
