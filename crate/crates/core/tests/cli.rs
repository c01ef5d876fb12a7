//! The command-line front end end to end.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperdet")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

#[test]
fn schur_build() {
    let (v, code) = run(&["schur", "build", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["weight"], 3);
    let (v, _) = run(&["schur", "build", "--genus", "3", "--derive", "1"]);
    assert_eq!(v["derive"], 1);
}

#[test]
fn curve_expand_and_psi() {
    let (v, code) = run(&["curve", "expand", "--genus", "1", "--lambda", "0,-1,1", "--order", "6"]);
    assert_eq!(code, 0);
    assert!(v["u"].as_array().unwrap().len() == 1);
    let (v, code) = run(&["psi", "compute", "--genus", "1", "--lambda", "0,0,1", "--n", "3", "--eval", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["pole_order"], 8);
    assert_ne!(v["value"], "0");
    let (v, _) = run(&["psi", "compute", "--genus", "1", "--lambda", "0,0,1", "--n", "6", "--eval", "2,3"]);
    assert_eq!(v["value"], "0");
}

#[test]
fn periods_and_sigma() {
    let (v, code) = run(&["periods", "compute", "--genus", "2", "--roots", "-2,0,1,3,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["z"].as_array().unwrap().len(), 2);
    let (v, code) = run(&["sigma", "eval", "--genus", "1", "--roots", "-1,0,2", "--u", "0.01"]);
    assert_eq!(code, 0);
    let re = v["value"][0].as_f64().unwrap();
    assert!((re / 0.01 - 1.0).abs() < 1e-3);
}

#[test]
fn verify_exit_codes() {
    let dir = std::env::temp_dir().join(format!("hyperdet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("job.json");
    std::fs::write(&cfg, r#"{"genus":2,"lambda":[-6,3,26,-24,0],"samples":4,"seed":1}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let (v, code) = run(&["verify", "addition", "--config", cfg]);
    assert_eq!((code, v["pass"].as_bool()), (0, Some(true)));
    // the tabulated ψ_1 sign at g = 2 disagrees with ψ_1 = 1
    let (v, code) = run(&["verify", "kiepert", "--config", cfg]);
    assert_eq!((code, v["pass"].as_bool()), (1, Some(false)));
    let (_, code) = run(&["verify", "bogus", "--config", cfg]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}
