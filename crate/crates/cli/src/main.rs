use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latcon::analysis::{self, Family, GeneratorSpec, PROPERTIES};
use latcon::catalog::{self, alias_of, congruence_from_text, Payload};
use latcon::congruence::{enumerate_con, interval_above, quotient, Congruence, CongruenceLattice};
use latcon::constructions::{self, ConstructionError};
use latcon::lattice::{FiniteLattice, LatticeFile};
use latcon::morphisms::{LatticeMorphism, MorphismAnalysis, MorphismFile};
use latcon::spectra::{self, SpectraError, Spectrum};

#[derive(Parser)]
#[command(name = "latcon", version, about = "Congruences, spectra and admissible morphisms of finite lattices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Adm,
    Maxadm,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Product,
    Ordsum,
    Classes,
}

#[derive(Subcommand)]
enum Command {
    /// Load a lattice or morphism file and report its basic properties.
    Validate { input: String },
    /// Enumerate the congruence lattice.
    Con {
        input: String,
        /// Write the congruence lattice as DOT (`-` for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Prime, maximal and two-class congruences.
    Spectra {
        input: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Admissibility of a morphism.
    Morphism {
        input: String,
        #[arg(long, value_enum, default_value_t = CheckKind::Both)]
        check: CheckKind,
        /// Accept maps that do not preserve meets and joins.
        #[arg(long)]
        raw: bool,
    },
    /// Quotient by a congruence given as label blocks, e.g. `{0,x},{y,1}`.
    Quotient {
        input: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Direct product of lattices.
    Product {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordinal sum of lattices.
    Ordsum {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition or class theorem on the given lattices.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, default_value_t = constructions::DEFAULT_SIZE_GUARD)]
        max_size: usize,
    },
    /// List the built-in fixtures or run the regression over them.
    Fixtures {
        #[arg(long)]
        run: bool,
    },
    /// Check a registered property over generated lattices.
    Sweep {
        #[arg(long, required_unless_present = "list")]
        property: Option<String>,
        #[arg(long, default_value = "exhaustive")]
        family: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// List registered properties and families.
        #[arg(long)]
        list: bool,
    },
    /// Subdirect irreducibility and the monolith.
    Subdirect { input: String },
}

/// Property or regression failure, as opposed to an input error.
struct Failed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &mut String, format: Format, value: Value, text: impl FnOnce(&mut String)) {
    match format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&value).expect("json"));
            out.push('\n');
        }
        Format::Text => text(out),
    }
}

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn run(cli: &Cli, out: &mut String) -> Result<Option<Failed>> {
    let f = cli.format;
    match &cli.command {
        Command::Validate { input } => validate(f, out, input),
        Command::Con { input, dot } => con(f, out, input, dot.as_deref()),
        Command::Spectra { input, dot } => spectra_cmd(f, out, input, dot.as_deref()),
        Command::Morphism { input, check, raw } => morphism(f, out, input, *check, *raw),
        Command::Quotient { input, theta, dot } => quotient_cmd(f, out, input, theta, dot.as_deref()),
        Command::Product { inputs, out: path } => construct(f, out, inputs, path.as_deref(), true),
        Command::Ordsum { inputs, out: path } => construct(f, out, inputs, path.as_deref(), false),
        Command::Verify { theorem, inputs, max_size } => verify(f, out, *theorem, inputs, *max_size),
        Command::Fixtures { run } => fixtures(f, out, *run),
        Command::Sweep { property, family, count, seed, max_size, min_size, list } => {
            if *list {
                return list_properties(f, out);
            }
            let property = property.as_deref().expect("required unless --list");
            sweep(f, out, property, family, *count, *seed, *min_size, *max_size)
        }
        Command::Subdirect { input } => subdirect(f, out, input),
    }
}

/// A catalog name or a path to a lattice file.
fn load_lattice(input: &str) -> Result<Arc<FiniteLattice>> {
    let path = Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
        return Ok(Arc::new(FiniteLattice::from_json(&text).with_context(|| format!("loading {input}"))?));
    }
    catalog::lattice(input).ok_or_else(|| anyhow!("{input}: no such file or catalog lattice"))
}

/// Lattice names in a morphism file resolve to the catalog, then to files in
/// the morphism file's directory by stem or by `name` field.
fn sibling_lookup(dir: &Path, name: &str) -> Option<Arc<FiniteLattice>> {
    if let Some(l) = catalog::lattice(name) {
        return Some(l);
    }
    let direct = dir.join(format!("{name}.json"));
    if let Ok(text) = std::fs::read_to_string(&direct) {
        if let Ok(l) = FiniteLattice::from_json(&text) {
            return Some(Arc::new(l));
        }
    }
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir).ok()?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    entries.sort();
    entries.into_iter().filter(|p| p.extension().is_some_and(|e| e == "json")).find_map(|p| {
        let text = std::fs::read_to_string(&p).ok()?;
        let file: LatticeFile = serde_json::from_str(&text).ok()?;
        (file.name == name).then(|| FiniteLattice::from_file(&file).ok().map(Arc::new)).flatten()
    })
}

fn load_morphism(input: &str, raw: bool) -> Result<LatticeMorphism> {
    let path = Path::new(input);
    if !path.exists() {
        return match catalog::load_fixture(input) {
            Ok(fx) => match fx.payload {
                Payload::Morphism(m) => Ok(m),
                Payload::Lattice(_) => bail!("{input} is a lattice, not a morphism"),
            },
            Err(_) => bail!("{input}: no such file or catalog morphism"),
        };
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
    let file = MorphismFile::from_json(&text).with_context(|| format!("loading {input}"))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let lookup = |n: &str| sibling_lookup(dir, n);
    if raw {
        let dom = lookup(&file.dom).ok_or_else(|| anyhow!("unknown lattice {}", file.dom))?;
        let cod = lookup(&file.cod).ok_or_else(|| anyhow!("unknown lattice {}", file.cod))?;
        let name = file.name.clone().unwrap_or_else(|| "f".into());
        return Ok(LatticeMorphism::raw(dom, cod, file.map)?.with_name(name));
    }
    file.resolve(lookup, false).with_context(|| format!("validating {input}"))
}

fn is_morphism_input(input: &str) -> bool {
    let path = Path::new(input);
    if path.exists() {
        return std::fs::read_to_string(path)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok())
            .is_some_and(|v| v.get("map").is_some());
    }
    catalog::morphism_names().contains(&input)
}

fn cong_name(l: &FiniteLattice, c: &Congruence) -> String {
    alias_of(l, c).unwrap_or_else(|| c.display(l))
}

fn names(l: &FiniteLattice, con: &CongruenceLattice, set: impl IntoIterator<Item = usize>) -> Vec<String> {
    set.into_iter().map(|i| cong_name(l, con.get(i))).collect()
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn write_dot(out: &mut String, path: &Path, dot: &str) -> Result<()> {
    if path == Path::new("-") {
        out.push_str(dot);
    } else {
        std::fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn lattice_summary(l: &FiniteLattice) -> Value {
    json!({
        "name": l.name(),
        "size": l.len(),
        "covers": l.hasse().covers.len(),
        "distributive": l.is_distributive(),
        "modular": l.is_modular(),
        "chain": l.is_chain(),
        "boolean": l.is_boolean_lattice(),
        "relatively_complemented": l.is_relatively_complemented(),
    })
}

fn validate(f: Format, out: &mut String, input: &str) -> Result<Option<Failed>> {
    if is_morphism_input(input) {
        let m = load_morphism(input, false)?;
        let value = json!({
            "morphism": m.name(),
            "dom": m.dom().name(),
            "cod": m.cod().name(),
            "bounded": m.is_bounded(),
            "injective": m.is_injective(),
            "surjective": m.is_surjective(),
        });
        emit(out, f, value, |o| {
            line!(o, "morphism {}: {} → {}", m.name(), m.dom().name(), m.cod().name());
            line!(o, "bounded: {}; injective: {}; surjective: {}", yes(m.is_bounded()), yes(m.is_injective()), yes(m.is_surjective()));
        });
        return Ok(None);
    }
    let l = load_lattice(input)?;
    let v = lattice_summary(&l);
    emit(out, f, v.clone(), |o| {
        line!(o, "lattice {}: {} elements, {} covers", l.name(), l.len(), v["covers"]);
        for key in ["distributive", "modular", "chain", "boolean", "relatively_complemented"] {
            line!(o, "{key}: {}", yes(v[key].as_bool().unwrap_or(false)));
        }
    });
    Ok(None)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn con(f: Format, out: &mut String, input: &str, dot: Option<&Path>) -> Result<Option<Failed>> {
    let l = load_lattice(input)?;
    let con = enumerate_con(&l);
    if let Some(path) = dot {
        write_dot(out, path, &con.to_dot(&l))?;
        if path == Path::new("-") {
            return Ok(None);
        }
    }
    let rows: Vec<Value> = con
        .congruences()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "name": alias_of(&l, c),
                "blocks": c.display(&l),
                "classes": c.class_count(),
            })
        })
        .collect();
    emit(out, f, json!({ "lattice": l.name(), "size": con.len(), "congruences": rows }), |o| {
        line!(o, "Con({}): {} congruences", l.name(), con.len());
        for (i, c) in con.congruences().iter().enumerate() {
            let alias = alias_of(&l, c).unwrap_or_default();
            line!(o, "  {i:>3} {alias:<2} {}  ({} classes)", c.display(&l), c.class_count());
        }
    });
    Ok(None)
}

fn spectra_cmd(f: Format, out: &mut String, input: &str, dot: Option<&Path>) -> Result<Option<Failed>> {
    let l = load_lattice(input)?;
    let s = Spectrum::compute(&l)?;
    let r = &s.report;
    if let Some(path) = dot {
        write_dot(out, path, &spectra::to_dot(&l, &s.con, r))?;
        if path == Path::new("-") {
            return Ok(None);
        }
    }
    let entries = spectra::report_entries(&l, &s.con, r, |i| alias_of(&l, s.con.get(i)));
    let (spec, max, con2) = (
        names(&l, &s.con, r.spec.iter().copied()),
        names(&l, &s.con, r.max.iter().copied()),
        names(&l, &s.con, r.con2.iter().copied()),
    );
    let value = json!({
        "lattice": l.name(),
        "congruences": entries,
        "spec": spec,
        "max": max,
        "con2": con2,
        "con_boolean": spectra::con_is_boolean(&s.con),
    });
    emit(out, f, value, |o| {
        line!(o, "Con({}): {} congruences", l.name(), s.con.len());
        for (i, c) in s.con.congruences().iter().enumerate() {
            let mut flags = Vec::new();
            if r.spec.contains(&i) {
                flags.push("prime");
            }
            if r.max.contains(&i) {
                flags.push("maximal");
            }
            if r.con2.contains(&i) {
                flags.push("two-class");
            }
            let alias = alias_of(&l, c).unwrap_or_default();
            line!(o, "  {i:>3} {alias:<2} {}  {}", c.display(&l), flags.join(" "));
        }
        line!(o, "Spec = {}", set_text(&spec));
        line!(o, "Max = {}", set_text(&max));
        line!(o, "Con2 = {}", set_text(&con2));
    });
    Ok(None)
}

fn morphism(f: Format, out: &mut String, input: &str, check: CheckKind, raw: bool) -> Result<Option<Failed>> {
    let m = load_morphism(input, raw)?;
    let an = MorphismAnalysis::new(&m)?;
    let adm = matches!(check, CheckKind::Adm | CheckKind::Both).then(|| an.admissible(&m)).transpose()?;
    let maxadm = matches!(check, CheckKind::Maxadm | CheckKind::Both).then(|| an.max_admissible(&m)).transpose()?;
    let table = an.pullback_table(&m)?;
    let pullbacks: Vec<Value> = table
        .iter()
        .enumerate()
        .map(|(i, &j)| json!({ "psi": cong_name(m.cod(), an.cod.con.get(i)), "pullback": cong_name(m.dom(), an.dom.con.get(j)) }))
        .collect();
    let witness = |v: &Option<latcon::morphisms::Verdict>| {
        v.as_ref().and_then(|v| v.witness.as_ref()).map(|w| cong_name(m.cod(), &w.psi))
    };
    let value = json!({
        "morphism": m.name(),
        "dom": m.dom().name(),
        "cod": m.cod().name(),
        "validated": m.is_validated(),
        "admissible": adm.as_ref().map(|v| v.holds),
        "max_admissible": maxadm.as_ref().map(|v| v.holds),
        "admissible_witness": witness(&adm),
        "max_admissible_witness": witness(&maxadm),
        "pullbacks": pullbacks,
    });
    emit(out, f, value, |o| {
        let mut parts = Vec::new();
        if let Some(v) = &adm {
            parts.push(format!("admissible: {}", yes(v.holds)));
        }
        if let Some(v) = &maxadm {
            parts.push(format!("max-admissible: {}", yes(v.holds)));
        }
        line!(o, "{}", parts.join("; "));
        if let Some(w) = witness(&adm) {
            line!(o, "  prime {w} pulls back outside Spec({})", m.dom().name());
        }
        if let Some(w) = witness(&maxadm) {
            line!(o, "  maximal {w} pulls back outside Max({})", m.dom().name());
        }
        for (i, &j) in table.iter().enumerate() {
            line!(o, "  {}*({}) = {}", m.name(), cong_name(m.cod(), an.cod.con.get(i)), cong_name(m.dom(), an.dom.con.get(j)));
        }
    });
    Ok(None)
}

fn quotient_cmd(f: Format, out: &mut String, input: &str, theta: &str, dot: Option<&Path>) -> Result<Option<Failed>> {
    let l = load_lattice(input)?;
    let theta = congruence_from_text(&l, theta)?;
    let q = quotient(&l, &theta)?;
    if let Some(path) = dot {
        write_dot(out, path, &q.lattice.to_dot())?;
        if path == Path::new("-") {
            return Ok(None);
        }
    }
    let con = enumerate_con(&l);
    let above = interval_above(&con, &theta)?;
    let value = json!({
        "theta": cong_name(&l, &theta),
        "quotient": q.lattice.to_file(),
        "projection": q.projection,
        "congruences_above": above.members.len(),
    });
    emit(out, f, value, |o| {
        line!(o, "{}/{}: {} elements", l.name(), cong_name(&l, &theta), q.lattice.len());
        for (a, &b) in q.projection.iter().enumerate() {
            line!(o, "  {} ↦ {}", l.label(a), q.lattice.label(b));
        }
        for (a, b) in q.lattice.hasse().covers {
            line!(o, "  {} < {}", q.lattice.label(a), q.lattice.label(b));
        }
        line!(o, "congruences above θ: {}", above.members.len());
    });
    Ok(None)
}

fn construct(f: Format, out: &mut String, inputs: &[String], path: Option<&Path>, product: bool) -> Result<Option<Failed>> {
    let parts: Vec<Arc<FiniteLattice>> = inputs.iter().map(|i| load_lattice(i)).collect::<Result<_>>()?;
    let l = if product {
        constructions::direct_product(&parts)?.lattice
    } else {
        constructions::ordinal_sum(&parts)?.lattice
    };
    let file = l.to_file();
    if let Some(p) = path {
        std::fs::write(p, l.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    emit(out, f, serde_json::to_value(&file)?, |o| {
        line!(o, "{}: {} elements, {} covers", l.name(), l.len(), l.hasse().covers.len());
        line!(o, "elements: {}", l.labels().join(" "));
        for (a, b) in l.hasse().covers {
            line!(o, "  {} < {}", l.label(a), l.label(b));
        }
    });
    Ok(None)
}

fn verify(f: Format, out: &mut String, theorem: Theorem, inputs: &[String], max_size: usize) -> Result<Option<Failed>> {
    let parts: Vec<Arc<FiniteLattice>> = inputs.iter().map(|i| load_lattice(i)).collect::<Result<_>>()?;
    let result = match theorem {
        Theorem::Product => constructions::verify_product_con_with_limit(&parts, max_size).map(serde_json::to_value),
        Theorem::Ordsum => constructions::verify_sum_con_with_limit(&parts, max_size).map(serde_json::to_value),
        Theorem::Classes => {
            let mut reports = Vec::new();
            for l in &parts {
                let con = enumerate_con(l);
                match spectra::verify_class_theorems(l, &con, false) {
                    Ok(r) => reports.push(json!({ "lattice": l.name(), "report": r })),
                    Err(SpectraError::TheoremViolation { theorem, witness }) => {
                        let value = json!({ "holds": false, "lattice": l.name(), "theorem": theorem, "witness": cong_name(l, con.get(witness)) });
                        emit(out, f, value, |o| {
                            line!(o, "FAIL {}: {theorem} (witness {})", l.name(), cong_name(l, con.get(witness)))
                        });
                        return Ok(Some(Failed));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Ok(Value::Array(reports)))
        }
    };
    match result {
        Ok(value) => {
            let value = value?;
            emit(out, f, json!({ "holds": true, "report": value }), |o| {
                line!(o, "ok");
                match theorem {
                    Theorem::Classes => {
                        for r in value.as_array().into_iter().flatten() {
                            let checks = r["report"]["checks"].as_array().cloned().unwrap_or_default();
                            let applied: Vec<&str> = checks
                                .iter()
                                .filter(|c| c["applies"].as_bool() == Some(true))
                                .filter_map(|c| c["theorem"].as_str())
                                .collect();
                            line!(o, "  {}: {}", r["lattice"].as_str().unwrap_or(""), if applied.is_empty() { "no hypothesis applies".to_string() } else { applied.join("; ") });
                        }
                    }
                    _ => {
                        line!(o, "  {}: size {}, |Con| {}, |Spec| {}, |Max| {}, |Con2| {}", value["construction"].as_str().unwrap_or(""), value["size"], value["con"], value["spec"], value["max"], value["con2"]);
                        for c in value["checks"].as_array().into_iter().flatten() {
                            line!(o, "  checked: {}", c.as_str().unwrap_or(""));
                        }
                    }
                }
            });
            Ok(None)
        }
        Err(ConstructionError::TheoremViolation { theorem, witness }) => {
            emit(out, f, json!({ "holds": false, "theorem": theorem, "witness": witness }), |o| {
                line!(o, "FAIL {theorem}: {witness}")
            });
            Ok(Some(Failed))
        }
        Err(e) => Err(e.into()),
    }
}

fn fixtures(f: Format, out: &mut String, run: bool) -> Result<Option<Failed>> {
    if !run {
        let lattices = catalog::lattice_names();
        let morphisms = catalog::morphism_names();
        emit(out, f, json!({ "lattices": lattices, "morphisms": morphisms }), |o| {
            line!(o, "lattices: {}", lattices.join(" "));
            line!(o, "morphisms: {}", morphisms.join(" "));
            line!(o, "parametric: L<n>, M<k>");
        });
        return Ok(None);
    }
    let report = catalog::run_regression()?;
    let passed = report.passed();
    let failures = report.failures().count();
    emit(out, f, serde_json::to_value(&report)?, |o| {
        for c in &report.checks {
            line!(o, "{} {}.{}: {}", if c.ok { "ok  " } else { "FAIL" }, c.fixture, c.field, c.got);
            if !c.ok {
                line!(o, "       expected {}", c.want);
            }
        }
        line!(o, "{} checks, {} failures", report.checks.len(), failures);
    });
    Ok((!passed).then_some(Failed))
}

fn list_properties(f: Format, out: &mut String) -> Result<Option<Failed>> {
    let props: Vec<Value> = PROPERTIES.iter().map(|p| json!({ "id": p.id, "description": p.description })).collect();
    let families: Vec<&str> = Family::ALL.iter().map(|f| f.id()).collect();
    emit(out, f, json!({ "properties": props, "families": families }), |o| {
        for p in PROPERTIES {
            line!(o, "{:<28} {}", p.id, p.description);
        }
        line!(o, "families: {}", families.join(" "));
    });
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    f: Format,
    out: &mut String,
    property: &str,
    family: &str,
    count: usize,
    seed: u64,
    min_size: usize,
    max_size: usize,
) -> Result<Option<Failed>> {
    let family = Family::parse(family)?;
    if family == Family::Exhaustive && max_size > analysis::MAX_ENUMERATION_SIZE {
        bail!(analysis::AnalysisError::SizeTooLarge(max_size));
    }
    let spec = GeneratorSpec::new(family, max_size, seed).with_min_size(min_size);
    let report = analysis::sweep(property, &spec, count)?;
    emit(out, f, serde_json::to_value(&report)?, |o| {
        line!(
            o,
            "{} over {} ({} instances): {} passed, {} skipped, {} failed",
            report.property,
            family.id(),
            report.instances,
            report.passed,
            report.skipped,
            report.failed
        );
        if let Some(c) = &report.counterexample {
            line!(o, "first counterexample: instance {} ({}): {}", c.index, c.lattice.name, c.message);
            line!(o, "shrunk to {} elements: {}", c.shrunk.elements.len(), c.shrunk_message);
            line!(o, "{}", serde_json::to_string(&c.shrunk).expect("json"));
        }
    });
    Ok((!report.holds()).then_some(Failed))
}

fn subdirect(f: Format, out: &mut String, input: &str) -> Result<Option<Failed>> {
    let l = load_lattice(input)?;
    let r = analysis::is_subdirectly_irreducible(&l)?;
    let monolith = r.monolith.as_ref().map(|m| cong_name(&l, m));
    let value = json!({
        "lattice": l.name(),
        "irreducible": r.irreducible,
        "monolith": monolith,
        "delta_strictly_meet_irreducible": r.delta_strictly_meet_irreducible,
        "delta_prime": r.delta_prime,
    });
    emit(out, f, value, |o| {
        line!(o, "{}: subdirectly irreducible: {}", l.name(), yes(r.irreducible));
        if let Some(m) = &monolith {
            line!(o, "monolith: {m}");
        }
        line!(o, "Δ strictly meet-irreducible: {}; Δ prime: {}", yes(r.delta_strictly_meet_irreducible), yes(r.delta_prime));
    });
    Ok(None)
}
