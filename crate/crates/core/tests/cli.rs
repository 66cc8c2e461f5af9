use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_netdes-cuts"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("netdes-cuts-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn parse_fraction(s: &str) -> f64 {
    match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

#[test]
fn gen_run_oracle_round_trip() {
    let inst = scratch("inst.json");
    let report = scratch("report.json");
    let st = bin()
        .args(["gen", "--seed", "8", "--nodes", "3", "--density", "0.5", "--facilities", "1,2", "--demand-scale", "1", "--out"])
        .arg(&inst)
        .status()
        .unwrap();
    assert!(st.success());

    let st = bin()
        .args(["run", "--instance"])
        .arg(&inst)
        .args(["--cuts=rc,cstrong,cutset,flowcutset,mf,metric,partition", "--rounds", "10", "--eps", "1e-6"])
        .args(["--oracle-ybound", "2", "--report"])
        .arg(&report)
        .status()
        .unwrap();
    assert!(st.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["instance", "rounds", "final_bound", "oracle_optimum", "gap_closed"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    let rounds = json["rounds"].as_array().unwrap();
    assert!(!rounds.is_empty());
    for r in rounds {
        assert!(r["bound"].is_f64() && r["cuts"].is_object() && r["max_violation"].is_number());
    }
    let last = json["final_bound"].as_f64().unwrap();
    let opt = json["oracle_optimum"].as_f64().unwrap();
    assert!(last <= opt + 1e-6);

    let out = bin().args(["oracle", "--instance"]).arg(&inst).args(["--ybound", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value = parse_fraction(text.lines().next().unwrap().trim_start_matches("optimum "));
    assert!((value - opt).abs() < 1e-9);
}

#[test]
fn report_without_oracle_omits_optimum() {
    let inst = scratch("inst2.json");
    assert!(bin().args(["gen", "--seed", "3", "--nodes", "3", "--density", "0.3", "--out"]).arg(&inst).status().unwrap().success());
    let out = bin().args(["run", "--instance"]).arg(&inst).args(["--cuts", "cutset", "--rounds", "3"]).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json.get("oracle_optimum").is_none());
    assert!(json["gap_closed"].is_null());
}

#[test]
fn bad_arguments_fail_cleanly() {
    let inst = scratch("inst3.json");
    assert!(bin().args(["gen", "--seed", "1", "--nodes", "3", "--density", "0.5", "--out"]).arg(&inst).status().unwrap().success());
    let out = bin().args(["run", "--instance"]).arg(&inst).args(["--cuts", "bogus"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    let out = bin().args(["oracle", "--instance", "/nonexistent.json", "--ybound", "1"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["gen", "--seed", "1", "--nodes", "1", "--density", "0.5", "--out"]).arg(&inst).output().unwrap();
    assert!(!out.status.success());
}
