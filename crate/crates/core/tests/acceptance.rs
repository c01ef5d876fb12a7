//! Acceptance suite: one pass/fail line per criterion.
//!
//! A failing criterion is reported, not hidden; the process exits nonzero
//! only when an engine returns an error, or on any failure when
//! `HYPERDET_STRICT` is set.

mod common;

use std::time::Instant;

use hyperdet::constants;
use hyperdet::curve_series::CurveSpec;
use hyperdet::division::{
    cantor_psi, cantor_unsigned, expected_pole_order, kiepert_det, pole_order_at_infinity, torsion_scan,
    QuadraticPoint,
};
use hyperdet::exact::{q, MPoly, Ring, Q};
use hyperdet::schur::{flat_at_double, leading_term_recursion, sharp_at_curve_limit, stratum_vanishing_check, sw_poly};
use hyperdet::verifier::{run_identity, Report, VerificationJob};
use hyperdet::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    Q::new(n.into(), d.into())
}

fn random_curve(rng: &mut ChaCha8Rng, g: usize) -> CurveSpec<Q> {
    loop {
        let c = CurveSpec::new(g, (0..=2 * g).map(|_| random_q(rng)).collect()).unwrap();
        if c.is_smooth() {
            return c;
        }
    }
}

fn roots(r: &[i64]) -> CurveSpec<Q> {
    CurveSpec::from_roots(&r.iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap()
}

/// Real-rooted curves with `λ_1 ≠ 0`.
fn numeric_curve(g: usize) -> CurveSpec<Q> {
    match g {
        1 => roots(&[-1, 0, 2]),
        2 => roots(&[-2, 0, 1, 3, 4]),
        _ => roots(&[-3, -2, -1, 0, 1, 2, 4]),
    }
}

const PAIRS: [(usize, &[usize]); 3] = [(1, &[3, 4, 5, 6]), (2, &[4, 5, 6]), (3, &[5, 6, 7])];

fn c1() -> Result<Outcome> {
    let mut bad = Vec::new();
    for g in 2..=6 {
        let s = sw_poly(g)?;
        let p = sharp_at_curve_limit(&s)?;
        let t = p.table().clone();
        let want = MPoly::constant(&t, q(constants::sharp_schur_sign(g)));
        let ok = p.min_degree_in(0) == Some(g as u32)
            && p.coefficient_in(0, g as u32) == want
            && p.coefficient_in(0, g as u32 + 1).is_zero();
        if !ok {
            bad.push(g);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("g = 2..6, mismatches {bad:?}"),
    })
}

fn c2() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut remainders = Vec::new();
    for g in 2..=5 {
        let s = sw_poly(g)?;
        for n in 1..g {
            let r = leading_term_recursion(&s, n)?;
            let lead = (g - n) as u32;
            let ok = r.lower_vanish
                && r.sign == Some(q(constants::recursion_sign(g, n)))
                && r.remainder_degree.map_or(true, |d| d > lead);
            if !ok {
                bad.push(format!("recursion g={g} n={n}"));
            }
            remainders.push(format!("{g}/{n}:{}", r.remainder_degree.map_or("-".into(), |d| d.to_string())));
        }
        let f = flat_at_double(&s)?;
        let t = f.table().clone();
        let v = MPoly::var_at(&t, 0);
        let want = v.pow(2 * g as u32 - 1).scale(&q(2 * constants::flat_schur_sign(g)));
        if f != want {
            bad.push(format!("flat g={g}"));
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("g = 2..5, mismatches {bad:?}, remainder degree g/n:d {}", remainders.join(" ")),
    })
}

fn c3() -> Result<Outcome> {
    let mut bad = Vec::new();
    for g in 1..=5 {
        if !stratum_vanishing_check(g, g - 1)? {
            bad.push(g);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("g = 1..5, nonvanishing at {bad:?}"),
    })
}

fn c4() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut lines = Vec::new();
    let mut pass = true;
    for (g, ns) in PAIRS {
        let c = random_curve(&mut rng, g);
        for &n in ns {
            let k = kiepert_det(&c, n, 1)?;
            let equal = k == cantor_psi(&c, n)?;
            let ratio = k.constant_ratio(&cantor_unsigned(&c, n)?);
            let closing = constants::epsilon_from_c_prime(g, n) == constants::epsilon_n(g, n);
            pass &= equal && closing;
            lines.push(format!(
                "({g},{n}) eq={} closing={} ratio={}",
                equal as u8,
                closing as u8,
                ratio.map_or("none".into(), |r| r.to_string())
            ));
        }
    }
    Ok(Outcome {
        pass,
        detail: lines.join(" "),
    })
}

fn c5() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ratios: Vec<Vec<Option<Q>>> = Vec::new();
    let mut curves = 0;
    while curves < 5 {
        let (a, b) = (random_q(&mut rng), random_q(&mut rng));
        let c = common::weierstrass(&a, &b);
        if !c.is_smooth() {
            continue;
        }
        curves += 1;
        let classical = common::classical_psi(&a, &b, 4);
        ratios.push(
            (2..=4)
                .map(|n| Ok(kiepert_det(&c, n, 1)?.constant_ratio(&classical[n])))
                .collect::<Result<_>>()?,
        );
    }
    // the sign recorded for n = 2, 3, 4: (-1)^{n-1}
    let recorded: Vec<Option<Q>> = (2..=4).map(|n| Some(q(if n % 2 == 0 { -1 } else { 1 }))).collect();
    let pass = ratios.iter().all(|r| *r == recorded);
    let shown: Vec<String> = ratios[0].iter().map(|r| r.as_ref().map_or("none".into(), |v| v.to_string())).collect();
    Ok(Outcome {
        pass,
        detail: format!("5 curves, kiepert/classical for n = 2, 3, 4: {}", shown.join(", ")),
    })
}

fn c6() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut all: Vec<(usize, usize)> = PAIRS.iter().flat_map(|(g, ns)| ns.iter().map(move |&n| (*g, n))).collect();
    all.push((3, 2));
    for (g, n) in all {
        let c = random_curve(&mut rng, g);
        let mut orders = vec![pole_order_at_infinity(&kiepert_det(&c, n, 1)?)?];
        if n >= g {
            orders.push(pole_order_at_infinity(&cantor_unsigned(&c, n)?)?);
        }
        if orders.iter().any(|&o| o != expected_pole_order(g, n)) {
            bad.push(format!("({g},{n}):{orders:?}"));
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("12 pairs, mismatches {bad:?}"),
    })
}

fn summarize(reports: &[Report]) -> (bool, String) {
    let pass = reports.iter().all(|r| r.pass);
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            let p = &r.parameters;
            format!(
                "{}[g={} n={} j={}] {:.1e} (mod sign {})",
                r.identity,
                p["genus"],
                p.get("n").map_or("-".into(), |v| v.to_string()),
                p.get("j").map_or("-".into(), |v| v.to_string()),
                r.max_relative_error,
                r.max_residual_modulo_sign.map_or("-".into(), |v| format!("{v:.1e}")),
            )
        })
        .collect();
    let worst = reports.iter().filter(|r| r.pass).map(|r| r.max_relative_error).fold(0.0f64, f64::max);
    (
        pass,
        format!("{} checks, worst passing {worst:.1e}, failing {failed:?}", reports.len()),
    )
}

fn c7() -> Result<Outcome> {
    let mut reports = Vec::new();
    for g in 1..=3 {
        let job = VerificationJob::new(numeric_curve(g)).with_samples(20).with_tolerance(1e-8);
        let ids: &[&str] = if g == 3 { &["addition"] } else { &["addition", "fs", "y", "kiepert"] };
        for id in ids {
            reports.extend(run_identity(id, &job)?);
        }
    }
    let (pass, detail) = summarize(&reports);
    Ok(Outcome { pass, detail })
}

fn c8() -> Result<Outcome> {
    let mut pass = true;
    let mut lines = Vec::new();
    for g in 1..=3 {
        let job = VerificationJob::new(numeric_curve(g)).with_samples(5).with_tolerance(1e-9);
        let r = run_identity("sigma", &job)?.remove(0);
        pass &= r.pass;
        lines.push(format!(
            "g={g} translational {:.1e} (exp(-L) {:.1e}) parity {:.1e} integrality {:.1e} |pf-1| {:.1e}",
            r.residuals[0],
            r.details["translational_opposite_sign"].as_f64().unwrap_or(f64::NAN),
            r.residuals[1],
            r.residuals[2],
            r.residuals[3],
        ));
    }
    Ok(Outcome {
        pass,
        detail: lines.join("; "),
    })
}

fn c9() -> Result<Outcome> {
    let mut pass = true;
    let mut lines = Vec::new();
    for g in 1..=3 {
        let job = VerificationJob::new(numeric_curve(g)).with_samples(10).with_tolerance(1e-6);
        let r = run_identity("schur-limit", &job)?.remove(0);
        pass &= r.pass;
        lines.push(format!(
            "g={g} {:.1e} order {:.2}",
            r.max_relative_error,
            r.details["median_order"].as_f64().unwrap_or(f64::NAN)
        ));
    }
    Ok(Outcome {
        pass,
        detail: lines.join("; "),
    })
}

fn c10() -> Result<Outcome> {
    let mut reports = Vec::new();
    for g in 2..=3 {
        let job = VerificationJob::new(numeric_curve(g)).with_samples(10).with_tolerance(1e-8);
        reports.extend(run_identity("vanishing", &job)?);
    }
    let (pass, detail) = summarize(&reports);
    Ok(Outcome { pass, detail })
}

fn c11() -> Result<Outcome> {
    let c = common::weierstrass(&q(0), &q(1));
    let max = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut points = vec![(q(2), Some(q(3)))];
    while points.len() < 6 {
        let x = random_q(&mut rng);
        let f = c.f().eval(&x);
        // every rational point of this curve is torsion, so non-torsion
        // candidates have y in a real quadratic field
        if f > q(0) && !common::is_rational_square(&f) && !points.iter().any(|p| p.0 == x) {
            points.push((x, None));
        }
    }
    let mut pass = true;
    let mut lines = Vec::new();
    for (x, y) in points {
        let p = QuadraticPoint::new(&c, x.clone(), y.clone())?;
        let (d, w) = match &y {
            Some(y) => (q(1), y.clone()),
            None => (p.y_squared.clone(), q(1)),
        };
        let multiples = common::twist_multiples(&q(0), &d, &Some((x.clone(), w)), max);
        let mut order = None;
        for m in 1..=max {
            let scan = torsion_scan(&c, &p, m)?.torsion;
            let oracle = multiples[m].is_none();
            pass &= scan == oracle;
            if scan && order.is_none() {
                order = Some(m);
            }
        }
        lines.push(format!("x={x}: {}", order.map_or("non-torsion".into(), |m| format!("{m}-torsion"))));
    }
    let six = lines[0].ends_with("6-torsion");
    let others = lines[1..].iter().all(|l| l.ends_with("non-torsion"));
    Ok(Outcome {
        pass: pass && six && others,
        detail: format!("m ≤ {max}, oracle agreement {pass}; {}", lines.join(", ")),
    })
}

fn main() {
    let criteria: [(usize, fn() -> Result<Outcome>); 11] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11)];
    let strict = std::env::var_os("HYPERDET_STRICT").is_some();
    let mut errors = 0;
    let mut failures = 0;
    for (k, f) in criteria {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(o) => {
                failures += usize::from(!o.pass);
                println!("criterion {k:>2}: {} ({secs:.1} s) {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
            }
            Err(e) => {
                errors += 1;
                println!("criterion {k:>2}: ERROR ({secs:.1} s) {e}");
            }
        }
    }
    println!("{} of 11 criteria pass", 11 - failures - errors);
    if errors > 0 || (strict && failures > 0) {
        std::process::exit(1);
    }
}
