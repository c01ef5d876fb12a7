//! Regenerates `fixtures/derived_constants.json`: the sign constants the
//! engines actually produce, next to the tabulated ones.
//!
//! Run with `cargo run --release --example derived_constants`.

use hyperdet::constants;
use hyperdet::curve_series::CurveSpec;
use hyperdet::division::{cantor_unsigned, kiepert_det};
use hyperdet::exact::{q, Q};
use hyperdet::schur::{hankel_ratio, sw_poly};
use hyperdet::verifier::{verify_fs, verify_kiepert, VerificationJob};
use hyperdet::Result;
use serde_json::{json, Value};

fn ratio_string(r: Option<Q>) -> Value {
    r.map_or(Value::Null, |v| json!(v.to_string()))
}

fn roots(r: &[i64]) -> CurveSpec<Q> {
    CurveSpec::from_roots(&r.iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap()
}

/// Every derived constant as one JSON document.
pub fn derived_constants() -> Result<Value> {
    // κ_g: the lowest part of S is κ_g times the Hankel determinant
    let kappa: Vec<Value> = (1..=6)
        .map(|g| Ok(ratio_string(hankel_ratio(&sw_poly(g)?)?)))
        .collect::<Result<_>>()?;

    // kiepert_det / cantor_unsigned, the ε_n that makes the two forms agree
    let mut hankel = Vec::new();
    for (g, lambda) in [
        (1, vec![q(1), q(-2), q(3)]),
        (2, vec![q(2), q(-1), q(3), q(1), q(-5)]),
        (3, vec![q(-1), q(2), q(1), q(-3), q(2), q(1), q(4)]),
    ] {
        let c = CurveSpec::new(g, lambda)?;
        for n in g.max(2)..=g + 4 {
            let r = kiepert_det(&c, n, 1)?.constant_ratio(&cantor_unsigned(&c, n)?);
            hankel.push(json!({
                "g": g,
                "n": n,
                "ratio": ratio_string(r),
                "epsilon_table": constants::epsilon_n(g, n),
                "closing_identity": constants::epsilon_from_c_prime(g, n),
            }));
        }
    }

    // numerically observed signs in the FS and Kiepert formulae
    let mut numeric = Vec::new();
    for (g, c) in [(1, roots(&[-1, 0, 2])), (2, roots(&[-2, 0, 1, 3, 4])), (3, roots(&[-3, -2, -1, 0, 1, 2, 4]))] {
        let job = VerificationJob::new(c).with_samples(6);
        for n in 2..=4 {
            let fs = verify_fs(&job, n)?;
            let kp = verify_kiepert(&job, n, 1)?;
            numeric.push(json!({
                "g": g,
                "n": n,
                "c_n_table": fs.printed_sign,
                "c_n_observed": fs.observed_sign,
                "kiepert_table": kp.printed_sign,
                "kiepert_observed": kp.observed_sign,
            }));
        }
    }

    Ok(json!({
        "kappa": kappa,
        "classical_psi_sign": "(-1)^(n-1)",
        "hankel_ratio": hankel,
        "numeric_signs": numeric,
    }))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let v = derived_constants()?;
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/derived_constants.json");
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap() + "\n").map_err(|e| hyperdet::Error::Configuration(e.to_string()))?;
    println!("wrote {path}");
    Ok(())
}
