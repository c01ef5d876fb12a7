//! Command-line front end: builds the exact objects, evaluates the numeric
//! ones and runs the verifiers, printing JSON on standard output.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use hyperdet::curve_series::{expand_at_infinity, series_json, CurveSpec};
use hyperdet::division::{kiepert_det, pole_order_at_infinity};
use hyperdet::exact::rational::{parse_q, to_f64};
use hyperdet::exact::Q;
use hyperdet::numeric::periods::{compute_periods, CMat};
use hyperdet::numeric::sigma::SigmaEvaluator;
use hyperdet::schur::{sw_natural_derivative, sw_poly};
use hyperdet::verifier::{run_identity, JobConfig, VerificationJob, THETA_TOLERANCE};
use hyperdet::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperdet", version, about = "Hyperelliptic sigma functions and their determinant formulae")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur–Weierstrass polynomials.
    Schur {
        #[command(subcommand)]
        action: SchurAction,
    },
    /// Expansions at infinity.
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Division polynomials.
    Psi {
        #[command(subcommand)]
        action: PsiAction,
    },
    /// Period matrices.
    Periods {
        #[command(subcommand)]
        action: PeriodsAction,
    },
    /// The normalized sigma function.
    Sigma {
        #[command(subcommand)]
        action: SigmaAction,
    },
    /// Numerical verification of an identity from a JSON job file.
    Verify {
        /// fs, addition, y, kiepert, limit, vanishing, schur-limit, sigma or all
        identity: String,
        #[arg(long)]
        config: std::path::PathBuf,
    },
}

#[derive(Subcommand)]
enum SchurAction {
    /// `S(u)`, or its `♮^n` derivative, as canonical JSON.
    Build {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        derive: Option<usize>,
    },
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    genus: usize,
    /// `λ_1,…,λ_{2g+1}` as comma-separated rationals.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "roots")]
    lambda: Option<String>,
    /// Alternatively, the `2g+1` roots of `f`.
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
}

#[derive(Subcommand)]
enum CurveAction {
    /// `x`, `y` and `u_j` in the local parameter `t = 1/√x`.
    Expand {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum PsiAction {
    /// `ψ_n` from the Kiepert determinant.
    Compute {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        /// A rational point `x0,y0` to evaluate at.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
}

#[derive(Subcommand)]
enum PeriodsAction {
    Compute {
        #[command(flatten)]
        curve: CurveArgs,
    },
}

#[derive(Subcommand)]
enum SigmaAction {
    /// `σ(u)` and, optionally, one derivative.
    Eval {
        #[command(flatten)]
        curve: CurveArgs,
        /// Comma-separated coordinates such as `0.1,0.2-0.3i,1e-2i`.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// 1-based derivative indices, e.g. `2` or `1,3`.
        #[arg(long)]
        deriv: Option<String>,
    },
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_list(s: &str) -> Result<Vec<Q>> {
    split(s).map(parse_q).collect()
}

impl CurveArgs {
    fn spec(&self) -> Result<CurveSpec<Q>> {
        let c = match (&self.lambda, &self.roots) {
            (Some(l), _) => CurveSpec::new(self.genus, parse_list(l)?)?,
            (None, Some(r)) => {
                let c = CurveSpec::from_roots(&parse_list(r)?)?;
                if c.genus() != self.genus {
                    return Err(Error::Dimension(format!("{} roots do not give genus {}", r, self.genus)));
                }
                c
            }
            (None, None) => return Err(Error::Configuration("give --lambda or --roots".into())),
        };
        if !c.is_smooth() {
            return Err(Error::Domain("f has a repeated root".into()));
        }
        Ok(c)
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("not a complex number: `{s}`"));
    let t = s.replace(' ', "");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // the split point is the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        v => v,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

fn cmat_json(m: &CMat) -> Value {
    json!((0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn run(cli: Cli) -> Result<(Value, bool)> {
    let out = match cli.command {
        Command::Schur {
            action: SchurAction::Build { genus, derive },
        } => {
            let s = sw_poly(genus)?;
            let p = match derive {
                Some(n) => sw_natural_derivative(&s, n)?,
                None => s.abelian.clone(),
            };
            json!({ "genus": genus, "derive": derive, "weight": p.sato_weights()?.first(), "polynomial": p.canonical() })
        }
        Command::Curve {
            action: CurveAction::Expand { curve, order },
        } => {
            let c = curve.spec()?;
            let le = expand_at_infinity(&c, order)?;
            json!({
                "genus": c.genus(),
                "order": order,
                "x": series_json(&le.x),
                "y": series_json(&le.y),
                "u": le.u.iter().map(series_json).collect::<Vec<_>>(),
            })
        }
        Command::Psi {
            action: PsiAction::Compute { curve, n, j, eval },
        } => {
            let c = curve.spec()?;
            let psi = kiepert_det(&c, n, j)?;
            let mut v = json!({ "genus": c.genus(), "n": n, "j": j, "psi": psi.canonical(), "pole_order": pole_order_at_infinity(&psi)? });
            if let Some(p) = eval {
                let pt = parse_list(&p)?;
                if pt.len() != 2 {
                    return Err(Error::Parse("--eval expects x0,y0".into()));
                }
                if !c.contains(&pt[0], &pt[1]) {
                    return Err(Error::Domain("the point is not on the curve".into()));
                }
                v["value"] = json!(hyperdet::exact::rational::q_to_string(&psi.eval_q(&pt[0], &pt[1])?));
            }
            v
        }
        Command::Periods {
            action: PeriodsAction::Compute { curve },
        } => {
            let c = curve.spec()?;
            let p = compute_periods(&c)?;
            json!({
                "genus": c.genus(),
                "branch_points": p.branch_points,
                "omega1": cmat_json(&p.omega1),
                "omega2": cmat_json(&p.omega2),
                "eta1": cmat_json(&p.eta1),
                "eta2": cmat_json(&p.eta2),
                "z": cmat_json(&p.z),
                "diagnostics": p.diagnostics(),
            })
        }
        Command::Sigma {
            action: SigmaAction::Eval { curve, u, deriv },
        } => {
            let c = curve.spec()?;
            let u: Vec<Complex64> = split(&u).map(parse_complex).collect::<Result<_>>()?;
            let idx: Vec<usize> = match &deriv {
                Some(d) => split(d).map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index `{t}`")))).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            let ev = SigmaEvaluator::normalized(&c, THETA_TOLERANCE)?;
            let v = ev.sigma_deriv(&u, &idx)?;
            let k = ev.constant().unwrap_or_default();
            json!({
                "genus": c.genus(),
                "u": u.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "derivative": idx,
                "value": [v.re, v.im],
                "normalization": [k.re, k.im],
                "lambda": c.lambda().iter().map(to_f64).collect::<Vec<_>>(),
            })
        }
        Command::Verify { identity, config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Configuration(format!("cannot read {}: {e}", config.display())))?;
            let cfg: JobConfig = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let job = VerificationJob::from_config(&cfg)?;
            let reports = run_identity(&identity, &job)?;
            let pass = reports.iter().all(|r| r.pass);
            let v = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(json!({ "pass": pass, "reports": reports }))
            }
            .map_err(|e| Error::Parse(e.to_string()))?;
            return Ok((v, pass));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((v, pass)) => {
            use std::io::Write;
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |s: &str| parse_complex(s).unwrap();
        assert_eq!(c("0.5"), Complex64::new(0.5, 0.0));
        assert_eq!(c("-2i"), Complex64::new(0.0, -2.0));
        assert_eq!(c("1-i"), Complex64::new(1.0, -1.0));
        assert_eq!(c("1e-3+2.5e-1i"), Complex64::new(1e-3, 0.25));
        assert!(parse_complex("x").is_err());
    }
}
