use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11")).args(args).env_remove("SU11_MAX_DIM").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("su11-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn parse_prints_canonical_form() {
    let path = corpus("07_split_keys.qnet");
    let out = su11(&["parse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tool"], "su11");
    assert_eq!(doc["command"], "parse");
    assert_eq!(doc["canonical"], "modes a:2 b:1\nsq a1 b1 eta=0.3\nbs a1 a2 theta=pi/4 phi=2*pi\n");
}

#[test]
fn parse_errors_exit_2_with_spans() {
    let path = scratch("bad.qnet");
    std::fs::write(&path, "modes a:1 b:1\nsq a1 b7 eta=0.1\n").unwrap();
    let out = su11(&["parse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["errors"][0]["kind"], "UnknownMode");
    assert_eq!(doc["errors"][0]["span"]["line"], 2);
}

#[test]
fn missing_file_and_bad_flags_exit_2() {
    assert_eq!(su11(&["parse", "/nonexistent/x.qnet"]).status.code(), Some(2));
    let path = corpus("01_primitive.qnet");
    let p = path.to_str().unwrap();
    assert_eq!(su11(&["simulate", p, "--cutoff", "6", "--safe-bound", "5"]).status.code(), Some(2));
    assert_eq!(su11(&["simulate", p, "--input", "1,2"]).status.code(), Some(2));
    assert_eq!(su11(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(su11(&["verify", "closure", "--tol", "oops"]).status.code(), Some(2));
}

#[test]
fn simulate_vacuum_through_primitive() {
    let path = corpus("01_primitive.qnet");
    let out = su11(&["simulate", path.to_str().unwrap(), "--cutoff", "8", "--photon-cap", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let basis = doc["basis"].as_array().unwrap();
    let amps = doc["amplitudes"].as_array().unwrap();
    assert_eq!(basis.len(), amps.len());
    // a1-b1 squeezing at 0.4i leaves vacuum amplitude sech(0.2)
    let vac = basis.iter().position(|b| b == &serde_json::json!([0, 0, 0])).unwrap();
    let re = amps[vac][0].as_f64().unwrap();
    assert!((re - 1.0 / 0.2f64.cosh()).abs() < 1e-6, "{re}");
    // photon-number difference between sides is conserved
    for b in basis {
        let occ: Vec<u64> = b.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(occ[0] + occ[1], occ[2]);
    }
    assert!(doc["norm_leakage"].as_f64().unwrap() < 1e-6);
}

#[test]
fn capacity_limit_exits_3() {
    let path = corpus("16_wide.qnet");
    let out = Command::new(env!("CARGO_BIN_EXE_su11"))
        .args(["simulate", path.to_str().unwrap()])
        .env("SU11_MAX_DIM", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reduce_reports_pseudo_bosons_and_obstructions() {
    let doc = json(&su11(&["reduce", corpus("03_chain_2_2.qnet").to_str().unwrap()]));
    assert_eq!(doc["reducible"], true);
    let pa = doc["pseudo_a"].as_array().unwrap();
    assert_eq!(pa.len(), 2);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((pa[0][0].as_f64().unwrap().abs() - h).abs() < 1e-12);

    let out = su11(&["reduce", corpus("08_extra_squeezer.qnet").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["reducible"], false);
    assert_eq!(doc["obstruction_span"]["line"], 5);
}

#[test]
fn decompose_round_trips_through_a_saved_state() {
    let circuit = corpus("03_chain_2_2.qnet");
    let state = scratch("state.json");
    let out = su11(&["simulate", circuit.to_str().unwrap(), "--cutoff", "5", "--out", state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let from_state = json(&su11(&["decompose", state.to_str().unwrap()]));
    let from_circuit = json(&su11(&["decompose", circuit.to_str().unwrap(), "--cutoff", "5"]));
    let (a, b) = (from_state["terms"].as_array().unwrap(), from_circuit["terms"].as_array().unwrap());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert_eq!((&x["two_k"], &x["two_mu"], &x["branch"]), (&y["two_k"], &y["two_mu"], &y["branch"]));
        for i in 0..2 {
            let d = x["amplitude"][i].as_f64().unwrap() - y["amplitude"][i].as_f64().unwrap();
            assert!(d.abs() < 1e-12);
        }
    }
    // the chain squeezer only populates the k = 1/2 irrep
    for t in from_state["terms"].as_array().unwrap() {
        let amp = t["amplitude"].as_array().unwrap();
        let mag = amp[0].as_f64().unwrap().hypot(amp[1].as_f64().unwrap());
        if mag > 1e-12 {
            assert_eq!(t["two_k"], 1);
        }
    }
}

#[test]
fn verify_exit_code_follows_the_checks() {
    let out = su11(&["verify", "closure"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    let out = su11(&["verify", "closure", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let out = su11(&["verify", "closure", "--tol", "1e-30", "--tol", "closure=1e-6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(su11(&["verify", "no-such-suite"]).status.code(), Some(2));
}
