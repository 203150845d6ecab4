//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use urprior::cli::report::{CertificateJson, CheckReport};
use urprior::cli::{self, check_report, cohomology_report};
use urprior::compat::{ratio_cochain, Certificate};
use urprior::numerics::ratio;
use urprior::{
    build_overlap_complex, cohomology_dim, decide_urprior, feasibility_oracle, fixtures, generate_counterexample,
    pairwise_compatibility, verify_urprior, AgentSystem, SimplicialComplex,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["urprior"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn check_json(name: &str) -> (i32, serde_json::Value) {
    let path = fixture(name);
    let (code, text) = run_cli(&["check", "--json", path.to_str().unwrap()]);
    (code, serde_json::from_str(&text).expect("check emits JSON"))
}

fn table_matches(report: &CheckReport, expected: &[(&str, &str)]) -> Outcome {
    let table = report.ur_prior.as_ref().ok_or("no ur-prior reported")?;
    ensure(table.len() == expected.len(), format!("table has {} rows", table.len()))?;
    for (label, value) in expected {
        let got = table.get(*label).map(String::as_str);
        ensure(got == Some(value), format!("{label}: expected {value}, got {got:?}"))?;
    }
    Ok(())
}

fn ac1() -> Outcome {
    let report = check_report(&fixtures::metal_triangle(), 2).map_err(|e| e.to_string())?;
    ensure(report.pairwise.compatible, "not pairwise compatible")?;
    ensure(report.complex.counts == [3, 3, 1], format!("counts {:?}", report.complex.counts))?;
    ensure(report.h1 == 0, format!("H1 = {}", report.h1))?;
    ensure(report.verdict == "exists", "verdict")?;
    table_matches(
        &report,
        &[
            ("gold", "1/27"),
            ("platinum", "2/27"),
            ("aluminum", "4/27"),
            ("bismuth", "1/9"),
            ("silver", "4/27"),
            ("iron", "2/9"),
            ("copper", "7/27"),
        ],
    )?;
    let (code, _) = check_json("metal_triangle");
    ensure(code == 0, format!("exit {code}"))
}

fn ac2() -> Outcome {
    let report = check_report(&fixtures::metal_hole(), 2).map_err(|e| e.to_string())?;
    ensure(report.pairwise.compatible, "not pairwise compatible")?;
    ensure(report.complex.counts == [3, 3, 0], format!("counts {:?}", report.complex.counts))?;
    ensure(report.h1 == 1, format!("H1 = {}", report.h1))?;
    ensure(report.verdict == "none" && report.ur_prior.is_none(), "verdict")?;
    match &report.certificate {
        Some(CertificateJson::Cycle { holonomy, cycle, .. }) => {
            ensure(holonomy == "27/8", format!("holonomy {holonomy}"))?;
            ensure(cycle.len() == 3, format!("cycle {cycle:?}"))?;
        }
        other => return Err(format!("certificate {other:?}")),
    }
    let (code, _) = check_json("metal_hole");
    ensure(code == 1, format!("exit {code}"))
}

fn ac3() -> Outcome {
    let s = fixtures::metal_hole_plugged();
    let report = pairwise_compatibility(&s);
    ensure(report.violations.len() == 1, format!("{} violating pairs", report.violations.len()))?;
    let v = &report.violations[0];
    let bismuth = s.space().id("bismuth").ok_or("no bismuth")?;
    let (left, right) = v.conditionals_of(bismuth).ok_or("bismuth not in the overlap")?;
    let mut pair = [left.clone(), right.clone()];
    pair.sort();
    ensure(pair == [ratio(2, 5), ratio(9, 13)], format!("conditionals {left} vs {right}"))
}

fn ac4() -> Outcome {
    let s = fixtures::metal_four_agents();
    let report = check_report(&s, 3).map_err(|e| e.to_string())?;
    ensure(report.h1 == 0, format!("H1 = {}", report.h1))?;
    let h2 = cohomology_dim(&build_overlap_complex(&s, None), 2);
    ensure(h2 == 1, format!("H2 = {h2}"))?;
    ensure(report.verdict == "exists", "verdict")?;
    table_matches(
        &report,
        &[
            ("platinum", "2/27"),
            ("bismuth", "1/9"),
            ("iron", "2/9"),
            ("copper", "7/27"),
            ("gold", "1/27"),
            ("aluminum", "4/27"),
            ("silver", "4/27"),
        ],
    )?;
    let path = fixture("metal_four_agents");
    let (code, text) = run_cli(&["cohomology", "--dim", "2", path.to_str().unwrap()]);
    ensure(code == 0 && text.contains("H2 = 1"), format!("cohomology cli: {text}"))
}

fn ac5() -> Outcome {
    let cases = [
        ("filled", fixtures::filled_triangle(), (2, 2, 0)),
        ("hollow", fixtures::hollow_triangle(), (3, 2, 1)),
        ("plugged", fixtures::plugged_triangle(), (3, 3, 0)),
    ];
    for (name, complex, expected) in cases {
        let r = cohomology_report("complex", &complex, 1, false);
        let got = (r.cocycles, r.coboundaries, r.dim);
        ensure(got == expected, format!("{name}: {got:?}"))?;
    }
    Ok(())
}

fn round_trip(name: &str, complex: &SimplicialComplex) -> Outcome {
    let system = generate_counterexample(complex).map_err(|e| format!("{name}: {e}"))?;
    let rebuilt = build_overlap_complex(&system, None);
    ensure(rebuilt == *complex, format!("{name}: overlap complex differs"))?;
    ensure(pairwise_compatibility(&system).compatible, format!("{name}: not pairwise compatible"))?;
    let decided = decide_urprior(&system).map_err(|e| e.to_string())?;
    ensure(!decided.exists(), format!("{name}: decide found an ur-prior"))?;
    ensure(feasibility_oracle(&system).is_none(), format!("{name}: oracle found an ur-prior"))
}

fn ac6() -> Outcome {
    round_trip("hollow triangle", &fixtures::hollow_triangle())?;
    round_trip("C4", &fixtures::cycle(4))?;
    round_trip("C5", &fixtures::cycle(5))?;
    round_trip("wedge", &fixtures::wedge_of_triangles())
}

fn agree(system: &AgentSystem) -> Outcome {
    let decided = decide_urprior(system).map_err(|e| e.to_string())?;
    let oracle = feasibility_oracle(system);
    ensure(decided.exists() == oracle.is_some(), format!("disagreement on {:?}", system.to_raw()))?;
    for m in decided.measure.iter().chain(oracle.iter()) {
        ensure(verify_urprior(system, m).ok, format!("unverified ur-prior for {:?}", system.to_raw()))?;
    }
    if decided.unique() {
        ensure(decided.measure == oracle, "unique ur-prior differs from the oracle's")?;
    }
    Ok(())
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut exists, mut none) = (0, 0);
    for round in 0..300 {
        let system = common::mixed_system(&mut rng, round);
        agree(&system)?;
        if feasibility_oracle(&system).is_some() {
            exists += 1;
        } else {
            none += 1;
        }
    }
    ensure(exists >= 30 && none >= 30, format!("unbalanced sample: {exists} exists, {none} none"))
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut triangles = 0;
    for round in 0..300 {
        let system = common::mixed_system(&mut rng, round);
        let report = pairwise_compatibility(&system);
        if !report.compatible || !report.asymmetries.is_empty() {
            continue;
        }
        let complex = build_overlap_complex(&system, Some(2));
        let r = ratio_cochain(&system, &complex).map_err(|e| e.to_string())?;
        for t in complex.simplices(2) {
            let (i, j, k) = (t[0], t[1], t[2]);
            let lhs = r.get(i, j).unwrap() * r.get(j, k).unwrap();
            ensure(&lhs == r.get(i, k).unwrap(), format!("r on {t:?} is not a cocycle"))?;
            triangles += 1;
        }
    }
    ensure(triangles >= 50, format!("only {triangles} triangles checked"))
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let system = common::common_event_system(&mut rng, 6, 8);
        ensure(pairwise_compatibility(&system).compatible, "generator produced an incompatible system")?;
        let decided = decide_urprior(&system).map_err(|e| e.to_string())?;
        ensure(decided.exists(), format!("no ur-prior for {:?}", system.to_raw()))?;
        ensure(verify_urprior(&system, decided.measure.as_ref().unwrap()).ok, "unverified ur-prior")?;
    }
    Ok(())
}

fn ac10() -> Outcome {
    let (code, report) = check_json("null_overlap_gap");
    ensure(code == 1, format!("check exit {code}"))?;
    ensure(report["certificate"]["kind"] == "asymmetry", format!("certificate {}", report["certificate"]))?;
    let decided = decide_urprior(&fixtures::null_overlap_gap()).map_err(|e| e.to_string())?;
    ensure(matches!(decided.certificate, Some(Certificate::Asymmetry(_))), "decide certificate")?;
    let path = fixture("null_overlap_gap");
    let (code, _) = run_cli(&["oracle", path.to_str().unwrap()]);
    ensure(code == 1, format!("oracle exit {code}"))
}

fn ac11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = common::random_complex(&mut rng, 7);
        for k in 0..2 {
            let product = &c.coboundary_matrix(k + 1) * &c.coboundary_matrix(k);
            ensure(product.is_zero(), format!("δδ ≠ 0 in degree {k} on {:?}", c.facets()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("metal triangle has the expected ur-prior", ac1),
        ("metal hole has no ur-prior, holonomy 27/8", ac2),
        ("plugged metal hole fails pairwise compatibility", ac3),
        ("four agents: H1 = 0, H2 = 1, ur-prior exists", ac4),
        ("cohomology of the triangle fixtures", ac5),
        ("counterexamples round-trip through both deciders", ac6),
        ("decider and oracle agree on random systems", ac7),
        ("ratio cochain is a cocycle on compatible systems", ac8),
        ("a common positive event forces an ur-prior", ac9),
        ("null-overlap asymmetry blocks an ur-prior", ac10),
        ("coboundary squares to zero", ac11),
    ];
    let mut failed = 0;
    for (n, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(()) => println!("[PASS] AC{} {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {why}", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
