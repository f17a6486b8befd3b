mod common;

use common::*;
use latcon::analysis::{sweep, Family, GeneratorSpec, PROPERTIES};
use latcon::catalog::{self, lattice_names, load_fixture, m_k, morphism_names, run_regression};
use latcon::morphisms::{is_admissible, is_max_admissible, MorphismFile};
use latcon::FiniteLattice;

#[test]
fn regression_is_green() {
    let report = run_regression().unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(report.checks.len() > 50);
}

#[test]
fn figure_lattices_against_oracle() {
    let sizes = [
        ("pentagon", 5, 5),
        ("diamond", 5, 2),
        ("boolean_square", 4, 4),
        ("E", 6, 3),
        ("N", 18, 2),
        ("V", 7, 4),
        ("W", 7, 10),
        ("K", 9, 0),
        ("D_plus_L2", 6, 4),
        ("L2_plus_P", 6, 10),
    ];
    for (name, size, cons) in sizes {
        let l = catalog::lattice(name).unwrap();
        assert_eq!(l.len(), size, "{name}");
        let o = spectra(&l);
        if cons > 0 {
            assert_eq!(o.con.len(), cons, "{name}");
        }
        assert!(o.con2.is_subset(&o.max) && o.max.is_subset(&o.spec), "{name}");
    }
    let w = spectra(&catalog::lattice("W").unwrap());
    assert_ne!(w.spec, w.max);
    assert!(!is_boolean(&w.con));
    assert!(is_boolean(&spectra(&catalog::lattice("V").unwrap()).con));
}

#[test]
fn catalog_morphisms_against_oracle() {
    for name in morphism_names() {
        let f = load_fixture(name).unwrap().morphism().unwrap().clone();
        let (sd, sc) = (spectra(f.dom()), spectra(f.cod()));
        assert_eq!(is_admissible(&f).unwrap().holds, admissible(f.map(), &sd, &sc), "{name}");
        assert_eq!(is_max_admissible(&f).unwrap().holds, max_admissible(f.map(), &sd, &sc), "{name}");
        assert_eq!(f.is_validated(), is_morphism(f.dom(), f.cod(), f.map()), "{name}");
    }
}

#[test]
fn json_round_trip() {
    for name in lattice_names() {
        let l = catalog::lattice(name).unwrap();
        let back = FiniteLattice::from_json(&l.to_json()).unwrap();
        assert_eq!(*l, back, "{name}");
    }
    let g = load_fixture("g").unwrap().morphism().unwrap().to_file();
    assert_eq!(MorphismFile::from_json(&g.to_json()).unwrap(), g);
}

#[test]
fn m_k_has_two_congruences() {
    for k in 3..=6 {
        let l = m_k(k);
        let o = spectra(&l);
        assert_eq!(o.con.len(), 2);
        assert_eq!(o.max, [discrete(k + 2)].into());
    }
}

#[test]
fn registered_sweeps() {
    let spec = GeneratorSpec::new(Family::Exhaustive, 6, 0);
    for p in PROPERTIES {
        let r = sweep(p.id, &spec, 1000).unwrap();
        if p.id == "surjective-literal-images" {
            let c = r.counterexample.expect("literal images fail on chains");
            assert_eq!(c.shrunk.elements.len(), 3);
        } else {
            assert!(r.holds(), "{}: {:?}", p.id, r.counterexample);
        }
    }
    let downsets = GeneratorSpec::new(Family::Downset, 12, 5);
    assert!(sweep("distributive-spec-eq", &downsets, 60).unwrap().holds());
    let modular = GeneratorSpec::new(Family::Modular, 12, 5);
    assert!(sweep("modular-spec-eq-max", &modular, 40).unwrap().holds());
    let composite = GeneratorSpec::new(Family::Composite, 10, 5);
    assert!(sweep("cardquomax-gap", &composite, 40).unwrap().holds());
}
