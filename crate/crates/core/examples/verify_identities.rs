//! Runs every numerical identity on a genus-two curve and prints one line
//! per report, with the observed sign wherever a tabulated one is used.

use hyperdet::curve_series::CurveSpec;
use hyperdet::exact::q;
use hyperdet::verifier::{run_identity, VerificationJob};

fn main() -> hyperdet::Result<()> {
    let c = CurveSpec::from_roots(&[q(-2), q(0), q(1), q(3), q(4)])?;
    let job = VerificationJob::new(c).with_samples(10).with_seed(3);
    for r in run_identity("all", &job)? {
        println!(
            "{:<12} {:<24} max {:.1e} {} sign printed {:?} observed {:?}",
            r.identity,
            r.parameters.get("n").map(|v| format!("n={v}")).unwrap_or_default()
                + &r.parameters.get("j").map(|v| format!(" j={v}")).unwrap_or_default(),
            r.max_relative_error,
            if r.pass { "pass" } else { "FAIL" },
            r.printed_sign,
            r.observed_sign,
        );
    }
    Ok(())
}
