// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Runs without the libtest harness so the lines always show.

use std::f64::consts::PI;
use std::process::Command;

use loopreg::cli::{DEFAULT_GRID_ALPHA, DEFAULT_GRID_D, DEFAULT_GRID_K, DEFAULT_GRID_M2};
use loopreg::dimreg::{
    lower_index, master_one_loop, two_mass_master, DEFAULT_TERMS, FD_REL_STEP, Params,
};
use loopreg::error::{Error, Result};
use loopreg::oracle::{master_oracle, radial_measure, scheme_oracle};
use loopreg::schemes::{
    cutoff_eval, cutoff_series, gaussian_eval, gaussian_series, incomplete_demo, scheme_series,
    two_mass_cutoff, two_mass_gaussian, two_sided_eval, two_sided_massless_forms, SchemeSpec,
};
use loopreg::series::{commutes_with_mass_derivative, scale_values, Scale};
use loopreg::specfun::{bessel_k, gamma};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_TOL: f64 = 1e-12;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn fail(msg: String) -> Outcome {
    Err(msg)
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn grid() -> impl Iterator<Item = Params> {
    DEFAULT_GRID_D.into_iter().flat_map(|d| {
        DEFAULT_GRID_ALPHA.into_iter().flat_map(move |alpha| {
            DEFAULT_GRID_M2
                .into_iter()
                .map(move |m2| Params::one_mass(d, alpha, m2))
        })
    })
}

fn criterion_1() -> Outcome {
    let (mut n, mut worst) = (0, 0.0f64);
    for p in grid().filter(|p| 2.0 * p.alpha - p.d > 0.0) {
        let v = master_one_loop(&p).map_err(lib)?.value;
        let o = master_oracle(&p, ORACLE_TOL).map_err(lib)?.value;
        let r = rel(v, o);
        if r > 1e-8 {
            return fail(format!("d={} alpha={} m2={}: {v} vs oracle {o}", p.d, p.alpha, p.m2));
        }
        worst = worst.max(r);
        n += 1;
    }
    Ok(format!("{n} convergent points, max relative deviation {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let (mut n, mut worst) = (0, 0.0f64);
    for p in grid() {
        for k in DEFAULT_GRID_K {
            let v = cutoff_eval(&p, k).map_err(lib)?.value;
            let o = scheme_oracle(&p, &SchemeSpec::CutoffUv { k }, ORACLE_TOL).map_err(lib)?.value;
            let r = rel(v, o);
            if r > 1e-8 {
                return fail(format!("d={} alpha={} m2={} K={k}: {v} vs oracle {o}", p.d, p.alpha, p.m2));
            }
            worst = worst.max(r);
            n += 1;
        }
    }
    let mut refused = 0;
    for p in grid().filter(|p| p.alpha <= 0.0) {
        for s in [SchemeSpec::MellinDemo { z: 0.0 }, SchemeSpec::QuarticDemo { a: 1e-3 }] {
            match incomplete_demo(&p, &s) {
                Err(Error::DivergentInput(_)) => refused += 1,
                other => return fail(format!("{} at alpha={}: {other:?}", s.family(), p.alpha)),
            }
        }
    }
    Ok(format!(
        "{n} cut-off points, max relative deviation {worst:.1e}; {refused} incomplete-scheme refusals at alpha <= 0"
    ))
}

fn criterion_3() -> Outcome {
    let (mut n, mut poles, mut worst) = (0, 0, 0.0f64);
    for p in grid() {
        for ratio in [1e2, 1e4] {
            let k = ratio * p.m2.sqrt();
            let tol = 5.0 * p.m2 / (k * k);
            let series = match cutoff_series(&p, k, 1) {
                Err(e) if e.is_pole() => {
                    poles += 1;
                    continue;
                }
                other => other.map_err(lib)?,
            };
            let at = scale_values(&[(Scale::K, k)]);
            let master = match master_one_loop(&p) {
                Err(e) if e.is_pole() => {
                    poles += 1;
                    continue;
                }
                other => other.map_err(lib)?.value,
            };
            let extracted = series.extract_scale(Scale::K).eval_at(&at).map_err(lib)?;
            let closed = cutoff_eval(&p, k).map_err(lib)?.value;
            let total = series.eval_at(&at).map_err(lib)?;
            let r = rel(extracted, master);
            if r > tol || rel(total, closed) > tol {
                return fail(format!(
                    "d={} alpha={} m2={} K={k}: extracted {extracted} vs {master}, total {total} vs {closed}",
                    p.d, p.alpha, p.m2
                ));
            }
            worst = worst.max(r);
            n += 1;
        }
    }
    Ok(format!("{n} points at K/m in {{1e2, 1e4}} ({poles} pole points skipped), max deviation {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let (mut n, mut poles, mut worst) = (0, 0, 0.0f64);
    for p in grid() {
        for x in [1e-2, 1e-4] {
            let delta = x / p.m2;
            let tol = 10.0 * x.max(x.powf((p.alpha - 0.5 * p.d).abs()));
            let (series, master) = match (gaussian_series(&p, delta, DEFAULT_TERMS), master_one_loop(&p)) {
                (Ok(s), Ok(m)) => (s, m.value),
                (Err(e), _) | (_, Err(e)) if e.is_pole() => {
                    poles += 1;
                    continue;
                }
                (Err(e), _) | (_, Err(e)) => return fail(lib(e)),
            };
            let at = scale_values(&[(Scale::Delta, delta)]);
            let extracted = series.extract_scale(Scale::Delta).eval_at(&at).map_err(lib)?;
            let closed = gaussian_eval(&p, delta).map_err(lib)?.value;
            let total = series.eval_at(&at).map_err(lib)?;
            let r = rel(extracted, master);
            if r > tol || rel(total, closed) > 1e-8 {
                return fail(format!(
                    "d={} alpha={} m2={} delta={delta}: extracted {extracted} vs {master}, total {total} vs {closed}",
                    p.d, p.alpha, p.m2
                ));
            }
            worst = worst.max(r);
            n += 1;
        }
    }
    Ok(format!("{n} points at delta m2 in {{1e-2, 1e-4}} ({poles} pole points skipped), max deviation {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for d in [2.5, 3.0, 3.5] {
        for alpha in [0.7, 1.0, 1.8] {
            let p = Params::one_mass(d, alpha, 0.0);
            for s in [
                SchemeSpec::SeparateCutoff { k: 1e3, delta: 1e-3 },
                SchemeSpec::SeparateTwoSided { delta: 1e-2, xi: 3e-2 },
            ] {
                let extracted = scheme_series(&p, &s, DEFAULT_TERMS).map_err(lib)?.extract_multi(&s.scales());
                let value = extracted.eval_at(&s.scale_values()).map_err(lib)?;
                if !extracted.is_empty() || value != 0.0 {
                    return fail(format!("{} d={d} alpha={alpha}: {} terms left, value {value}", s.family(), extracted.len()));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} massless extractions are exactly empty"))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let points = [
        Params::two_mass(3.0, 1.0, 1.0, 1.0, 4.0),
        Params::two_mass(2.5, 0.8, 1.3, 0.5, 3.0),
        Params::two_mass(3.7, 1.6, 0.9, 2.0, 2.5),
    ];
    for p in points {
        let v = two_mass_master(&p).map_err(lib)?.value;
        let o = master_oracle(&p, ORACLE_TOL).map_err(lib)?.value;
        if rel(v, o) > 1e-8 {
            return fail(format!("{p:?}: {v} vs oracle {o}"));
        }
        worst = worst.max(rel(v, o));
    }
    let merged = two_mass_master(&Params::two_mass(3.2, 0.7, 0.8, 2.0, 2.0)).map_err(lib)?.value;
    let single = master_one_loop(&Params::one_mass(3.2, 1.5, 2.0)).map_err(lib)?.value;
    if rel(merged, single) > 1e-10 {
        return fail(format!("equal masses: {merged} vs {single}"));
    }
    let mut extraction = 0.0f64;
    for p in points {
        let big = p.big_m2.expect("two-mass point");
        let exact = two_mass_master(&p).map_err(lib)?.value;
        let k = 1e3 * big.sqrt();
        let (_, s) = two_mass_cutoff(&p, k, DEFAULT_TERMS).map_err(lib)?;
        let c = s.extract_scale(Scale::K).eval_at(&scale_values(&[(Scale::K, k)])).map_err(lib)?;
        let delta = 1e-4 / big;
        let (_, s) = two_mass_gaussian(&p, delta, DEFAULT_TERMS).map_err(lib)?;
        let g = s
            .extract_scale(Scale::Delta)
            .eval_at(&scale_values(&[(Scale::Delta, delta)]))
            .map_err(lib)?;
        for (name, v) in [("cut-off", c), ("Gaussian", g)] {
            if rel(v, exact) > 1e-5 {
                return fail(format!("{name} extraction at {p:?}: {v} vs {exact}"));
            }
            extraction = extraction.max(rel(v, exact));
        }
    }
    Ok(format!(
        "oracle deviation {worst:.1e}, equal-mass deviation {:.1e}, extraction deviation {extraction:.1e}",
        rel(merged, single)
    ))
}

fn criterion_7() -> Outcome {
    let p = Params::one_mass(4.0, 2.0, 1.0);
    let measure = radial_measure(4.0).map_err(lib)?;
    let residual = |k: f64| -> Result<f64> {
        // 2 ∫_0^K p³/(p²+m²)² dp
        let radial = 2.0 * scheme_oracle(&p, &SchemeSpec::CutoffUv { k }, ORACLE_TOL)?.value / measure;
        Ok(radial - ((k * k / p.m2).ln() - 1.0))
    };
    let (r2, r3) = (residual(1e2).map_err(lib)?, residual(1e3).map_err(lib)?);
    let ratio = r2 / r3;
    if rel(ratio, 100.0) > 0.1 {
        return fail(format!("residuals {r2:e}, {r3:e}, ratio {ratio}"));
    }
    Ok(format!("residuals {r2:.3e} at K=1e2 and {r3:.3e} at K=1e3, ratio {ratio:.2}"))
}

fn criterion_8() -> Outcome {
    let (mut n, mut worst) = (0, 0.0f64);
    let mut report = Vec::new();
    for d in [2.5, 3.0, 3.5] {
        for alpha in [0.7, 1.0, 1.8] {
            for delta in [0.1, 1.0] {
                let p = Params::one_mass(d, alpha, 0.0);
                let v = two_sided_eval(&p, delta, delta).map_err(lib)?.value;
                let g = gamma(0.5 * d).map_err(|e| e.to_string())?.value;
                let k = bessel_k(alpha - 0.5 * d, 2.0 * delta).map_err(lib)?.value;
                let expect = 2.0 / ((4.0 * PI).powf(0.5 * d) * g) * k;
                if rel(v, expect) > 1e-8 {
                    return fail(format!("d={d} alpha={alpha} delta={delta}: {v} vs {expect}"));
                }
                worst = worst.max(rel(v, expect));
                n += 1;

                let xi = 0.3 * delta;
                let c = two_sided_massless_forms(d, alpha, delta, xi).map_err(lib)?;
                let derived = c.deviation(c.derived).unwrap_or(f64::NAN);
                let alternative = c.deviation(c.alternative).unwrap_or(f64::NAN);
                if !(derived <= 1e-8) {
                    return fail(format!("two-sided derived form at d={d} alpha={alpha}: deviation {derived:e}"));
                }
                report.push(format!(
                    "    d={d} alpha={alpha} delta={delta} xi={xi:.2}: oracle {:.10e}, derived {derived:.1e}, alternative {alternative:.1e}",
                    c.oracle
                ));
            }
        }
    }
    Ok(format!(
        "{n} points, max relative deviation {worst:.1e}; two-sided form report (relative deviation from the oracle):\n{}",
        report.join("\n")
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut n, mut worst) = (0, 0.0f64);
    while n < 50 {
        let d: f64 = rng.gen_range(2.0..4.5);
        let alpha: f64 = rng.gen_range(0.3..3.0);
        let m2 = rng.gen_range(0.2..5.0);
        let s = alpha - 0.5 * d;
        if (s - s.round()).abs() < 0.02 {
            continue;
        }
        let p = Params::one_mass(d, alpha, m2);
        lower_index(&p).map_err(lib)?;
        for spec in [
            SchemeSpec::CutoffUv { k: 1e3 * m2.sqrt() },
            SchemeSpec::GaussianUv { delta: 1e-3 / m2 },
        ] {
            let c = commutes_with_mass_derivative(&p, &spec, FD_REL_STEP).map_err(lib)?;
            if c.residual > 1e-5 {
                return fail(format!("{} at d={d} alpha={alpha} m2={m2}: residual {:e}", spec.family(), c.residual));
            }
            worst = worst.max(c.residual);
        }
        n += 1;
    }
    Ok(format!("{n} random points, max commutation residual {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, threads: &str| -> std::result::Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_loopreg"))
            .args(["verify", "--format", "json", "--out"])
            .arg(&path)
            .env("LOOPREG_THREADS", threads)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("verify exited with {status}"));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let a = run("first.json", "1")?;
    let b = run("second.json", "4")?;
    if a != b {
        return fail("reports differ".into());
    }
    Ok(format!("two verify runs (1 and 4 threads) gave identical {}-byte reports", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("convergent-region equivalence", criterion_1),
        ("cut-off closed form", criterion_2),
        ("cut-off extraction", criterion_3),
        ("Gaussian extraction", criterion_4),
        ("scaleless extraction is zero", criterion_5),
        ("two-mass consistency", criterion_6),
        ("logarithmic asymptotics", criterion_7),
        ("Bessel closed form", criterion_8),
        ("recurrence and commutation", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (verdict, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {verdict} {name}: {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
