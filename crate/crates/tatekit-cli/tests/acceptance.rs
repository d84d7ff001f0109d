//! End-to-end acceptance gate. Each test pins one release criterion and
//! prints as its own pass/fail line; together they sweep the full group,
//! module, and lattice batteries at the largest supported sizes.

use std::process::Command;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde_json::Value;

use tatekit::cohomology::{connecting_hom, tate_group};
use tatekit::cyclic::CyclicContext;
use tatekit::gmodule::{GModule, ModElement};
use tatekit::group::FiniteGroup;
use tatekit::verify::{run_suite, VerifyOptions};

fn opts(max_order: usize, max_degree: i64, seed: u64) -> VerifyOptions {
    VerifyOptions {
        max_order,
        max_degree,
        seed,
    }
}

fn assert_suite_ok(report: &Value) {
    if report["ok"] != Value::Bool(true) {
        let mut failed = Vec::new();
        if let Some(cases) = report["cases"].as_array() {
            for c in cases {
                if c["passed"] != Value::Bool(true) {
                    failed.push(c.to_string());
                }
            }
        }
        panic!(
            "suite {} failed; failing cases:\n{}",
            report["suite"],
            failed.join("\n")
        );
    }
}

fn theorem12_report() -> &'static Value {
    static REPORT: OnceLock<Value> = OnceLock::new();
    REPORT.get_or_init(|| run_suite("theorem12", &opts(5, 3, 12)).expect("theorem12 suite runs"))
}

#[test]
fn criterion_01_conversion_roundtrip() {
    let report = run_suite("roundtrip", &opts(6, 3, 11)).expect("roundtrip suite runs");
    assert_suite_ok(&report);
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.iter().all(|c| c["samples"].as_u64().unwrap() >= 50));
    let groups: std::collections::BTreeSet<&str> = cases
        .iter()
        .map(|c| c["group"].as_str().unwrap())
        .collect();
    for g in ["C2", "C3", "C4", "C5", "C6", "C2xC2", "C2xC3"] {
        assert!(groups.contains(g), "missing group {g}");
    }
    let degrees: std::collections::BTreeSet<i64> = cases
        .iter()
        .map(|c| c["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, (-3..=3).collect());
}

#[test]
fn criterion_02_differential_squares_to_zero() {
    let report = run_suite("d2", &opts(6, 3, 22)).expect("d2 suite runs");
    assert_suite_ok(&report);
}

#[test]
fn criterion_03_oracle_equivalence() {
    let report = run_suite("oracle", &opts(6, 3, 33)).expect("oracle suite runs");
    assert_suite_ok(&report);
    let cases = report["cases"].as_array().unwrap();
    // Orders 2 through 6 all present; order 6 clamped to degree window 2.
    for n in 2..=6 {
        let name = format!("C{n}");
        let degs: Vec<i64> = cases
            .iter()
            .filter(|c| c["group"] == Value::String(name.clone()))
            .map(|c| c["degree"].as_i64().unwrap())
            .collect();
        assert!(!degs.is_empty(), "missing order {n}");
        let cap = if n == 6 { 2 } else { 3 };
        assert_eq!(degs.iter().map(|d| d.abs()).max().unwrap(), cap);
    }
    // Trivial integer coefficients: order n at even degrees, nothing odd.
    for c in cases {
        if c["module"] == Value::String("Z".into()) && !c["skipped"].as_bool().unwrap() {
            let degree = c["degree"].as_i64().unwrap();
            let n = c["group"].as_str().unwrap()[1..].parse::<i64>().unwrap();
            let expect = if degree.rem_euclid(2) == 0 {
                serde_json::json!([n])
            } else {
                serde_json::json!([])
            };
            assert_eq!(c["invariants"], expect, "case {c}");
        }
    }
}

#[test]
fn criterion_04_cup_coordinate_transport() {
    let report = run_suite("cup-transport", &opts(4, 3, 44)).expect("cup suite runs");
    assert_suite_ok(&report);
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.iter().all(|c| c["samples"].as_u64().unwrap() >= 20));
    let regimes: std::collections::BTreeSet<&str> = cases
        .iter()
        .map(|c| c["regime"].as_str().unwrap())
        .collect();
    assert_eq!(regimes.len(), 6, "all six regimes swept: {regimes:?}");
}

#[test]
fn criterion_05_leibniz_with_recorded_convention() {
    let report = run_suite("leibniz", &opts(4, 3, 55)).expect("leibniz suite runs");
    assert_suite_ok(&report);
    assert_eq!(
        report["convention"].as_str().unwrap(),
        "d(a cup b) = (da cup b) + (-1)^deg(a) (a cup db)"
    );
}

#[test]
fn criterion_06_connecting_map_gives_carry_cocycle() {
    for n in 2..=6usize {
        let g = FiniteGroup::cyclic(n).unwrap();
        let z = GModule::trivial_z(&g);
        let e = ModElement::from_i64(&z, &[1]).unwrap();
        let ctx = CyclicContext::new(&g, &z, e, None).unwrap();
        let chi = ctx.chi_cocycle().unwrap();
        let b = ctx.b_cocycle().unwrap();
        let delta = connecting_hom(&ctx.standard_sequence().unwrap(), &chi).unwrap();
        assert_eq!(delta, b, "connecting image at order {n}");
        let h2 = tate_group(b.module(), 2).unwrap();
        assert_eq!(h2.class_order(&b).unwrap(), BigInt::from(n));
    }
}

#[test]
fn criterion_07_carry_times_invariant_element() {
    for n in 2..=6usize {
        let g = FiniteGroup::cyclic(n).unwrap();
        let coeffs = [
            GModule::trivial_z(&g),
            GModule::trivial_z_mod(&g, 2),
            GModule::trivial_z_mod(&g, 5),
        ];
        for bm in &coeffs {
            for e_val in [1i64, 2] {
                let e = ModElement::from_i64(bm, &[e_val]).unwrap();
                let ctx = CyclicContext::new(&g, bm, e.clone(), None).unwrap();
                let model = ctx.fundamental_cocycle_model().unwrap();
                let cup = ctx.fundamental_cocycle_cup().unwrap();
                assert_eq!(model, cup, "order {n}, {} e={e_val}", bm.name());
                for a in g.elements() {
                    for b in g.elements() {
                        let expect = if ctx.dlog(a) + ctx.dlog(b) >= n {
                            e.clone()
                        } else {
                            ModElement::zero(bm)
                        };
                        assert_eq!(model.get(&[a, b]), expect);
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_08_degree_raising_closed_form() {
    let report = theorem12_report();
    assert_suite_ok(report);
    let cases = report["cases"].as_array().unwrap();
    let lattices: std::collections::BTreeSet<&str> = cases
        .iter()
        .map(|c| c["lattice"].as_str().unwrap())
        .collect();
    for l in ["C2/Z(-1)", "C3/companion", "C2/IG", "C3/IG", "C4/IG", "C5/IG"] {
        assert!(lattices.contains(l), "missing lattice {l}");
    }
    assert!(lattices.iter().any(|l| l.contains("random")));
    // Every lattice against trivial coefficients Z and Z/2 through Z/6.
    let table_checks: Vec<&Value> = cases
        .iter()
        .filter(|c| c["check"] == Value::String("closed form equals cup".into()))
        .collect();
    assert_eq!(table_checks.len(), lattices.len() * 6);
}

#[test]
fn criterion_09_degree_raising_is_bijective() {
    let report = run_suite("tate-iso", &opts(5, 3, 99)).expect("tate-iso suite runs");
    assert_suite_ok(&report);
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.len() >= 10, "battery covers the lattice list");
}

#[test]
fn criterion_10_class_shift_invariance() {
    let report = theorem12_report();
    let shift_rows: Vec<&Value> = report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| {
            c["check"] == Value::String("class shifts move the cocycle by coboundaries".into())
        })
        .collect();
    assert!(!shift_rows.is_empty());
    for row in shift_rows {
        assert!(row["samples"].as_u64().unwrap() >= 50);
        assert_eq!(row["passed"], Value::Bool(true), "case {row}");
    }
}

#[test]
fn criterion_11_cli_verify_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tatekit"))
            .args([
                "verify",
                "--suite",
                "all",
                "--max-order",
                "4",
                "--max-degree",
                "3",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run exits zero");
    assert!(second.status.success(), "second run exits zero");
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "byte-identical output");
    let report: Value = serde_json::from_slice(&first.stdout).expect("output is JSON");
    assert_eq!(report["ok"], Value::Bool(true));
}

/// The battery lattices themselves must carry their known class counts,
/// independent of any suite report.
#[test]
fn battery_shapes_match_known_invariants() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let sign = tatekit::verify::sign_lattice(&g).unwrap();
    let h = tate_group(&sign, -1).unwrap();
    assert_eq!(h.invariant_factors(), &[BigInt::from(2)]);
    for n in 2..=5usize {
        let g = FiniteGroup::cyclic(n).unwrap();
        let ig = tatekit::verify::aug_kernel_lattice(&g).unwrap();
        let h = tate_group(&ig, -1).unwrap();
        // The augmentation kernel has one degree minus-one class of order n.
        assert_eq!(h.invariant_factors(), &[BigInt::from(n)]);
    }
}
