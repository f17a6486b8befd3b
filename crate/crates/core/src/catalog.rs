//! Named lattices and morphisms with their expected congruence data.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{is_subdirectly_irreducible, AnalysisError};
use crate::congruence::{enumerate_con, Congruence, CongruenceError};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::morphisms::{first_violation, inverse_image, LatticeMorphism, MorphismAnalysis, MorphismError, MorphismFile};
use crate::partition::Partition;
use crate::spectra::{SpectraError, Spectrum};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error("{fixture}: {field} is {got}, expected {want}")]
    RegressionFailure { fixture: String, field: String, got: String, want: String },
    #[error("bad alias {0}")]
    BadAlias(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

const LATTICE_FILES: &[(&str, &str, &str)] = &[
    ("pentagon", "P", include_str!("../data/pentagon.json")),
    ("diamond", "D", include_str!("../data/diamond.json")),
    ("boolean_square", "L2^2", include_str!("../data/boolean_square.json")),
    ("E", "E", include_str!("../data/E.json")),
    ("N", "N", include_str!("../data/N.json")),
    ("V", "V", include_str!("../data/V.json")),
    ("W", "W", include_str!("../data/W.json")),
    ("K", "K", include_str!("../data/K.json")),
    ("D_plus_L2", "D⊕L2", include_str!("../data/D_plus_L2.json")),
    ("L2_plus_P", "L2⊕P", include_str!("../data/L2_plus_P.json")),
];

const MORPHISM_FILES: &[(&str, &str)] = &[
    ("g", include_str!("../data/g.json")),
    ("h", include_str!("../data/h.json")),
    ("i", include_str!("../data/i.json")),
    ("j", include_str!("../data/j.json")),
    ("k", include_str!("../data/k.json")),
    ("i_V", include_str!("../data/i_V.json")),
    ("j_W", include_str!("../data/j_W.json")),
];

/// Congruence aliases per lattice, as label blocks.
const ALIASES: &[(&str, &[(&str, &str)])] = &[
    (
        "P",
        &[("α", "{0,y,z},{x,1}"), ("β", "{0,x},{y,z,1}"), ("γ", "{0},{x},{y,z},{1}")],
    ),
    ("L2^2", &[("ρ", "{0,x},{y,1}"), ("σ", "{0,y},{x,1}")]),
    ("E", &[("ε", "{0},{x},{y,t},{z},{1}")]),
];

/// The `M_k` lattice: bottom, top and a `k`-element antichain.
pub fn m_k(k: usize) -> FiniteLattice {
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=k).map(|i| format!("a{i}")));
    labels.push("1".into());
    let top = k + 1;
    FiniteLattice::from_order_fn(format!("M{k}"), labels, |a, b| a == b || a == 0 || b == top)
        .expect("M_k is a lattice")
}

pub fn chain(n: usize) -> FiniteLattice {
    FiniteLattice::chain(n.max(1)).expect("chains are lattices")
}

/// What a fixture is expected to produce. Congruence sets are alias names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeExpect {
    pub size: Option<usize>,
    pub covers: Option<usize>,
    pub con_size: Option<usize>,
    pub con: Option<&'static [&'static str]>,
    pub spec: Option<&'static [&'static str]>,
    pub max: Option<&'static [&'static str]>,
    pub con2: Option<&'static [&'static str]>,
    pub con_boolean: Option<bool>,
    pub spec_eq_max: Option<bool>,
    /// `Some(Some(alias))` irreducible with that monolith, `Some(None)` reducible.
    pub monolith: Option<Option<&'static str>>,
    /// Elements with exactly one upper cover, and the coatoms, as labels.
    pub strictly_meet_irreducible: Option<&'static [&'static str]>,
    pub coatoms: Option<&'static [&'static str]>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphismExpect {
    pub preserves_operations: bool,
    pub admissible: bool,
    pub max_admissible: bool,
    /// `(ψ on the codomain, f*(ψ) on the domain)` as aliases.
    pub pullbacks: &'static [(&'static str, &'static str)],
    /// `f*` maps `Con`, `Max` and `Spec` of the codomain onto those of the domain.
    pub pullback_bijective: Option<bool>,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Lattice(Arc<FiniteLattice>),
    Morphism(LatticeMorphism),
}

#[derive(Debug, Clone)]
pub enum Expected {
    Lattice(LatticeExpect),
    Morphism(MorphismExpect),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub payload: Payload,
    pub expected: Expected,
}

impl Fixture {
    pub fn lattice(&self) -> Option<&Arc<FiniteLattice>> {
        match &self.payload {
            Payload::Lattice(l) => Some(l),
            Payload::Morphism(_) => None,
        }
    }

    pub fn morphism(&self) -> Option<&LatticeMorphism> {
        match &self.payload {
            Payload::Morphism(f) => Some(f),
            Payload::Lattice(_) => None,
        }
    }
}

fn lattice_expect(key: &str) -> LatticeExpect {
    let e = LatticeExpect::default();
    match key {
        "pentagon" => LatticeExpect {
            size: Some(5),
            con: Some(&["Δ", "γ", "α", "β", "∇"]),
            spec: Some(&["Δ", "α", "β"]),
            max: Some(&["α", "β"]),
            con2: Some(&["α", "β"]),
            monolith: Some(Some("γ")),
            ..e
        },
        "diamond" => LatticeExpect {
            size: Some(5),
            covers: Some(6),
            con: Some(&["Δ", "∇"]),
            spec: Some(&["Δ"]),
            max: Some(&["Δ"]),
            con2: Some(&[]),
            monolith: Some(Some("∇")),
            ..e
        },
        "boolean_square" => LatticeExpect {
            size: Some(4),
            con: Some(&["Δ", "ρ", "σ", "∇"]),
            spec: Some(&["ρ", "σ"]),
            max: Some(&["ρ", "σ"]),
            con2: Some(&["ρ", "σ"]),
            monolith: Some(None),
            ..e
        },
        "E" => LatticeExpect {
            size: Some(6),
            con: Some(&["Δ", "ε", "∇"]),
            spec: Some(&["Δ", "ε"]),
            max: Some(&["ε"]),
            monolith: Some(Some("ε")),
            ..e
        },
        "N" => LatticeExpect {
            size: Some(18),
            covers: Some(28),
            con: Some(&["Δ", "∇"]),
            con_boolean: Some(true),
            monolith: Some(Some("∇")),
            ..e
        },
        "V" | "D_plus_L2" => LatticeExpect {
            size: Some(if key == "V" { 7 } else { 6 }),
            con_size: Some(4),
            con_boolean: Some(true),
            ..e
        },
        "W" | "L2_plus_P" => LatticeExpect {
            size: Some(if key == "W" { 7 } else { 6 }),
            con_size: Some(10),
            con_boolean: Some(false),
            spec_eq_max: Some(false),
            ..e
        },
        "K" => LatticeExpect {
            size: Some(9),
            strictly_meet_irreducible: Some(&["0", "x", "y", "b", "z", "t"]),
            coatoms: Some(&["z", "t"]),
            ..e
        },
        _ => e,
    }
}

fn morphism_expect(key: &str) -> MorphismExpect {
    match key {
        "g" => MorphismExpect {
            preserves_operations: true,
            admissible: true,
            max_admissible: true,
            pullbacks: &[("ρ", "β"), ("σ", "α")],
            ..Default::default()
        },
        "h" => MorphismExpect {
            preserves_operations: false,
            admissible: true,
            max_admissible: false,
            pullbacks: &[("Δ", "Δ")],
            ..Default::default()
        },
        "i" => MorphismExpect {
            preserves_operations: true,
            admissible: false,
            max_admissible: true,
            pullbacks: &[("Δ", "Δ"), ("α", "σ"), ("β", "ρ")],
            ..Default::default()
        },
        "j" => MorphismExpect {
            preserves_operations: true,
            admissible: false,
            max_admissible: false,
            pullbacks: &[("Δ", "Δ")],
            ..Default::default()
        },
        "k" => MorphismExpect {
            preserves_operations: true,
            admissible: true,
            max_admissible: true,
            pullbacks: &[("Δ", "Δ"), ("ε", "Δ")],
            ..Default::default()
        },
        "i_V" | "j_W" => MorphismExpect {
            preserves_operations: true,
            admissible: true,
            max_admissible: true,
            pullback_bijective: Some(true),
            ..Default::default()
        },
        _ => MorphismExpect::default(),
    }
}

/// Catalog lattice by fixture key or lattice name.
pub fn lattice(name: &str) -> Option<Arc<FiniteLattice>> {
    if let Some((_, _, text)) = LATTICE_FILES.iter().find(|(k, n, _)| *k == name || *n == name) {
        return Some(Arc::new(FiniteLattice::from_json(text).expect("catalog lattices are valid")));
    }
    parametric(name).map(Arc::new)
}

fn parametric(name: &str) -> Option<FiniteLattice> {
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = number("chain_").or_else(|| number("L")).filter(|&n| (1..=64).contains(&n)) {
        return Some(chain(n));
    }
    if let Some(k) = number("M_").or_else(|| number("M")).filter(|&k| (1..=64).contains(&k)) {
        return Some(m_k(k));
    }
    None
}

pub fn lattice_names() -> Vec<&'static str> {
    LATTICE_FILES.iter().map(|(k, _, _)| *k).collect()
}

pub fn morphism_names() -> Vec<&'static str> {
    MORPHISM_FILES.iter().map(|(k, _)| *k).collect()
}

/// Morphism files are validated, except `h`, whose table does not preserve
/// meets and is kept as a raw map.
fn load_morphism(key: &str, text: &str) -> Result<LatticeMorphism, CatalogError> {
    let file = MorphismFile::from_json(text)?;
    match file.resolve(lattice, true) {
        Ok(f) => Ok(f),
        Err(MorphismError::NotMeetPreserving(..) | MorphismError::NotJoinPreserving(..)) if key == "h" => {
            let dom = lattice(&file.dom).ok_or_else(|| CatalogError::UnknownFixture(file.dom.clone()))?;
            let cod = lattice(&file.cod).ok_or_else(|| CatalogError::UnknownFixture(file.cod.clone()))?;
            Ok(LatticeMorphism::raw(dom, cod, file.map)?.with_name(key))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn load_fixture(name: &str) -> Result<Fixture, CatalogError> {
    if let Some((key, _, _)) = LATTICE_FILES.iter().find(|(k, n, _)| *k == name || *n == name) {
        let l = lattice(key).expect("listed");
        return Ok(Fixture {
            name: key.to_string(),
            payload: Payload::Lattice(l),
            expected: Expected::Lattice(lattice_expect(key)),
        });
    }
    if let Some((key, text)) = MORPHISM_FILES.iter().find(|(k, _)| *k == name) {
        return Ok(Fixture {
            name: key.to_string(),
            payload: Payload::Morphism(load_morphism(key, text)?),
            expected: Expected::Morphism(morphism_expect(key)),
        });
    }
    if let Some(l) = parametric(name) {
        let expect = if l.name().starts_with('M') && l.len() >= 5 {
            LatticeExpect { con: Some(&["Δ", "∇"]), spec: Some(&["Δ"]), max: Some(&["Δ"]), ..Default::default() }
        } else {
            LatticeExpect { size: Some(l.len()), ..Default::default() }
        };
        return Ok(Fixture { name: name.to_string(), payload: Payload::Lattice(Arc::new(l)), expected: Expected::Lattice(expect) });
    }
    Err(CatalogError::UnknownFixture(name.to_string()))
}

/// Parses `{0,x},{y,1}` into label blocks.
fn parse_label_blocks(text: &str) -> Result<Vec<Vec<String>>, CatalogError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| CatalogError::BadAlias(text.to_string()))?;
    Ok(inner.split("},{").map(|b| b.split(',').map(|s| s.trim().to_string()).collect()).collect())
}

/// Congruence from `{a,b},{c}` text over the lattice labels.
pub fn congruence_from_text(l: &FiniteLattice, text: &str) -> Result<Congruence, CatalogError> {
    let blocks = parse_label_blocks(text)?;
    let refs: Vec<Vec<&str>> = blocks.iter().map(|b| b.iter().map(String::as_str).collect()).collect();
    let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    Ok(Congruence::from_label_blocks(l, &slices)?)
}

/// Named congruences of `l`: `Δ`, `∇` and any catalog alias whose lattice
/// has the same structure and labels.
pub fn aliases(l: &FiniteLattice) -> Vec<(String, Congruence)> {
    let mut out = vec![("Δ".to_string(), Congruence::delta(l)), ("∇".to_string(), Congruence::nabla(l))];
    for (name, table) in ALIASES {
        let Some(known) = lattice(name) else { continue };
        if known.id() != l.id() {
            continue;
        }
        for (alias, text) in *table {
            if let Ok(c) = congruence_from_text(l, text) {
                out.push((alias.to_string(), c));
            }
        }
    }
    out
}

pub fn alias_of(l: &FiniteLattice, c: &Congruence) -> Option<String> {
    aliases(l).into_iter().find(|(_, d)| d == c).map(|(a, _)| a)
}

fn named(l: &FiniteLattice, alias: &str) -> Result<Congruence, CatalogError> {
    aliases(l)
        .into_iter()
        .find(|(a, _)| a == alias)
        .map(|(_, c)| c)
        .ok_or_else(|| CatalogError::BadAlias(format!("{alias} on {}", l.name())))
}

/// One compared field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub fixture: String,
    pub field: String,
    pub got: String,
    pub want: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RegressionReport {
    pub checks: Vec<Check>,
}

impl RegressionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn into_result(self) -> Result<Self, CatalogError> {
        let failure = self.failures().next().map(|c| CatalogError::RegressionFailure {
            fixture: c.fixture.clone(),
            field: c.field.clone(),
            got: c.got.clone(),
            want: c.want.clone(),
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }

    fn push(&mut self, fixture: &str, field: &str, got: impl ToString, want: impl ToString) {
        let (got, want) = (got.to_string(), want.to_string());
        let ok = got == want;
        self.checks.push(Check { fixture: fixture.into(), field: field.into(), got, want, ok });
    }
}

fn render_set(names: impl IntoIterator<Item = String>) -> String {
    let set: BTreeSet<String> = names.into_iter().collect();
    format!("{{{}}}", set.into_iter().collect::<Vec<_>>().join(","))
}

fn names_of<'a>(l: &FiniteLattice, cs: impl IntoIterator<Item = &'a Congruence>) -> String {
    render_set(cs.into_iter().map(|c| alias_of(l, c).unwrap_or_else(|| c.display(l))))
}

fn want_set(items: &[&str]) -> String {
    render_set(items.iter().map(|s| s.to_string()))
}

fn check_lattice(report: &mut RegressionReport, name: &str, l: &FiniteLattice, e: &LatticeExpect) -> Result<(), CatalogError> {
    let s = Spectrum::compute(l)?;
    if let Some(n) = e.size {
        report.push(name, "size", l.len(), n);
    }
    if let Some(n) = e.covers {
        report.push(name, "covers", l.hasse().covers.len(), n);
    }
    if let Some(n) = e.con_size {
        report.push(name, "|Con|", s.con.len(), n);
    }
    if let Some(want) = e.con {
        report.push(name, "Con", names_of(l, s.con.congruences()), want_set(want));
    }
    if let Some(want) = e.spec {
        report.push(name, "Spec", names_of(l, s.primes()), want_set(want));
    }
    if let Some(want) = e.max {
        report.push(name, "Max", names_of(l, s.maximals()), want_set(want));
    }
    if let Some(want) = e.con2 {
        report.push(name, "Con2", names_of(l, s.two_class()), want_set(want));
    }
    if let Some(b) = e.con_boolean {
        report.push(name, "Con boolean", s.con.order().is_boolean_lattice(), b);
    }
    if let Some(b) = e.spec_eq_max {
        report.push(name, "Spec = Max", s.report.spec == s.report.max, b);
    }
    if let Some(m) = e.monolith {
        let got = is_subdirectly_irreducible(l)?;
        let got = match got.monolith {
            Some(c) => alias_of(l, &c).unwrap_or_else(|| c.display(l)),
            None => "reducible".into(),
        };
        let want = match m {
            Some(alias) => named(l, alias).map(|_| alias.to_string())?,
            None => "reducible".into(),
        };
        report.push(name, "monolith", got, want);
    }
    let h = l.hasse();
    if let Some(want) = e.strictly_meet_irreducible {
        let got = l.elements().filter(|&a| h.covers.iter().filter(|&&(x, _)| x == a).count() == 1);
        report.push(name, "unique upper cover", render_set(got.map(|a| l.label(a).to_string())), want_set(want));
    }
    if let Some(want) = e.coatoms {
        let got = l.elements().filter(|&a| h.covers.contains(&(a, l.top())));
        report.push(name, "coatoms", render_set(got.map(|a| l.label(a).to_string())), want_set(want));
    }
    Ok(())
}

fn check_morphism(report: &mut RegressionReport, name: &str, f: &LatticeMorphism, e: &MorphismExpect) -> Result<(), CatalogError> {
    let witness = first_violation(f.dom(), f.cod(), f.map());
    report.push(name, "preserves meet and join", witness.is_none(), e.preserves_operations);
    let analysis = MorphismAnalysis::new(f)?;
    report.push(name, "admissible", analysis.admissible(f)?.holds, e.admissible);
    report.push(name, "max-admissible", analysis.max_admissible(f)?.holds, e.max_admissible);
    for (psi, want) in e.pullbacks {
        let got = inverse_image(f, &named(f.cod(), psi)?)?;
        let got = alias_of(f.dom(), &got).unwrap_or_else(|| got.display(f.dom()));
        report.push(name, &format!("{name}*({psi})"), got, want);
    }
    if let Some(b) = e.pullback_bijective {
        let table = analysis.pullback_table(f)?;
        let distinct: BTreeSet<usize> = table.iter().copied().collect();
        let onto = distinct.len() == analysis.dom.con.len() && table.len() == distinct.len();
        let image = |set: &BTreeSet<usize>| -> BTreeSet<usize> { set.iter().map(|&i| table[i]).collect() };
        report.push(name, "f* bijective on Con", onto, b);
        report.push(name, "f*(Max) = Max", image(&analysis.cod.report.max) == analysis.dom.report.max, b);
        report.push(name, "f*(Spec) = Spec", image(&analysis.cod.report.spec) == analysis.dom.report.spec, b);
    }
    Ok(())
}

/// Checks every fixture against its expectations, plus `M_3` through `M_6`.
pub fn run_regression() -> Result<RegressionReport, CatalogError> {
    let mut report = RegressionReport::default();
    let mut names: Vec<String> = lattice_names().into_iter().map(String::from).collect();
    names.extend(morphism_names().into_iter().map(String::from));
    names.extend((3..=6).map(|k| format!("M_{k}")));
    for name in &names {
        let fx = load_fixture(name)?;
        match (&fx.payload, &fx.expected) {
            (Payload::Lattice(l), Expected::Lattice(e)) => check_lattice(&mut report, name, l, e)?,
            (Payload::Morphism(f), Expected::Morphism(e)) => check_morphism(&mut report, name, f, e)?,
            _ => unreachable!("payload and expectation kinds match"),
        }
    }
    Ok(report)
}

/// `Con(L)` as a set of partitions, for order-level comparisons.
pub fn con_partitions(l: &FiniteLattice) -> BTreeSet<Partition> {
    enumerate_con(l).congruences().iter().map(|c| c.partition().clone()).collect()
}
