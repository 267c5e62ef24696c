//! Per-point evaluation and the verification catalogue.

use super::report::{Record, FAIL, PASS};
use crate::dimreg::{
    lower_index, master_one_loop, two_mass_master, veltman_scaleless, Params, FD_REL_STEP,
};
use crate::error::{Error, Result};
use crate::oracle::{master_oracle, scheme_oracle, DEFAULT_REL_TOL};
use crate::schemes::{gaussian_ir_decomposition, gaussian_ir_eval, scheme_eval, scheme_series, SchemeSpec};
use crate::series::commutes_with_mass_derivative;

/// Scheme names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SchemeName {
    #[value(name = "dimreg")]
    Dimreg,
    #[value(name = "cutoff")]
    Cutoff,
    #[value(name = "gaussian")]
    Gaussian,
    #[value(name = "ir_window")]
    IrWindow,
    #[value(name = "gaussian_ir")]
    GaussianIr,
    #[value(name = "two_sided")]
    TwoSided,
    #[value(name = "separate_cutoff")]
    SeparateCutoff,
    #[value(name = "separate_two_sided")]
    SeparateTwoSided,
    #[value(name = "mellin")]
    Mellin,
    #[value(name = "quartic")]
    Quartic,
}

impl SchemeName {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeName::Dimreg => "dimreg",
            SchemeName::Cutoff => "cutoff",
            SchemeName::Gaussian => "gaussian",
            SchemeName::IrWindow => "ir_window",
            SchemeName::GaussianIr => "gaussian_ir",
            SchemeName::TwoSided => "two_sided",
            SchemeName::SeparateCutoff => "separate_cutoff",
            SchemeName::SeparateTwoSided => "separate_two_sided",
            SchemeName::Mellin => "mellin",
            SchemeName::Quartic => "quartic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s, false).map_err(|_| Error::Config(format!("unknown scheme `{s}`")))
    }
}

/// A grid point: the integral's parameters plus every regulator scale.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub d: f64,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub m2: f64,
    pub big_m2: Option<f64>,
    pub k: Option<f64>,
    pub delta: Option<f64>,
    pub xi: Option<f64>,
    pub z: Option<f64>,
    pub a: Option<f64>,
}

impl Point {
    pub fn params(&self) -> Params {
        Params {
            d: self.d,
            alpha: self.alpha,
            beta: self.beta,
            m2: self.m2,
            big_m2: self.big_m2,
        }
    }

    fn need(&self, x: Option<f64>, flag: &str, scheme: SchemeName) -> Result<f64> {
        x.ok_or_else(|| Error::Config(format!("scheme {} needs --{flag}", scheme.as_str())))
    }

    /// The family selected by `name`, `None` for `dimreg`.
    pub fn spec(&self, name: SchemeName) -> Result<Option<SchemeSpec>> {
        let k = || self.need(self.k, "K", name);
        let delta = || self.need(self.delta, "delta", name);
        Ok(Some(match name {
            SchemeName::Dimreg => return Ok(None),
            SchemeName::Cutoff => SchemeSpec::CutoffUv { k: k()? },
            SchemeName::Gaussian => SchemeSpec::GaussianUv { delta: delta()? },
            SchemeName::IrWindow => SchemeSpec::IrWindow { k: k()? },
            SchemeName::GaussianIr => SchemeSpec::GaussianIr { delta: delta()? },
            SchemeName::TwoSided => SchemeSpec::TwoSidedGaussian { delta: delta()? },
            SchemeName::SeparateCutoff => SchemeSpec::SeparateCutoff {
                k: k()?,
                delta: delta()?,
            },
            SchemeName::SeparateTwoSided => SchemeSpec::SeparateTwoSided {
                delta: delta()?,
                xi: self.need(self.xi, "xi", name)?,
            },
            SchemeName::Mellin => SchemeSpec::MellinDemo {
                z: self.need(self.z, "z", name)?,
            },
            SchemeName::Quartic => SchemeSpec::QuarticDemo {
                a: self.need(self.a, "a", name)?,
            },
        }))
    }

    fn record(&self, scheme: &str, check: &str) -> Record {
        Record {
            d: self.d,
            alpha: self.alpha,
            beta: self.beta,
            m2: self.m2,
            big_m2: self.big_m2,
            k: self.k,
            delta: self.delta,
            xi: self.xi,
            scheme: scheme.into(),
            check: check.into(),
            ..Default::default()
        }
    }
}

/// The dimensionally regularized value: the master formula, the two-mass
/// formula, or zero for a scaleless integral.
pub fn dimreg_value(p: &Params) -> Result<f64> {
    if p.is_two_mass() {
        Ok(two_mass_master(p)?.value)
    } else if p.m2 == 0.0 {
        Ok(veltman_scaleless(p.d, p.alpha).value)
    } else {
        Ok(master_one_loop(p)?.value)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Compares `value ± err` with `oracle ± oracle_err`: passes within `tol`
/// relative or within the combined error bars.
fn compare(rec: &mut Record, value: f64, err: f64, oracle: f64, oracle_err: f64, tol: f64) {
    let residual = rel(value, oracle);
    rec.value = Some(value);
    rec.err = Some(err);
    rec.oracle = Some(oracle);
    rec.residual_rel = Some(residual);
    let bars = (value - oracle).abs() <= err + oracle_err;
    rec.verdict = if residual <= tol || bars { PASS } else { FAIL }.into();
}

/// Verdict for a failed evaluation: poles and divergent inputs are skipped,
/// anything else is a failure.
pub fn error_verdict(e: &Error) -> &'static str {
    match e {
        Error::Pole(_) => "pole",
        Error::DivergentInput(_) => "divergent",
        Error::Domain(_) => "unsupported",
        Error::NonConvergence { .. } => "nonconvergence",
        _ => FAIL,
    }
}

fn errored(mut rec: Record, e: &Error) -> Record {
    rec.verdict = error_verdict(e).into();
    rec.message = Some(e.to_string());
    rec
}

/// Single-point evaluation of a scheme with its dimreg and oracle
/// comparators.
pub fn eval_point(pt: &Point, name: SchemeName, tol: f64) -> Result<Record> {
    let p = pt.params();
    let mut rec = pt.record(name.as_str(), "eval");
    let Some(spec) = pt.spec(name)? else {
        let value = dimreg_value(&p)?;
        rec.value = Some(value);
        rec.dimreg = Some(value);
        return Ok(match master_oracle(&p, DEFAULT_REL_TOL) {
            Ok(o) => {
                compare(&mut rec, value, 16.0 * f64::EPSILON * value.abs(), o.value, o.err_est, tol);
                rec
            }
            Err(e) => {
                let mut r = errored(rec, &e);
                r.verdict = "continued".into();
                r
            }
        });
    };
    let v = scheme_eval(&p, &spec)?;
    rec.value = Some(v.value);
    rec.err = Some(v.abs_err);
    rec.message = v.note.map(String::from);
    rec.dimreg = if spec.is_demo() { None } else { dimreg_value(&p).ok() };
    rec.gap = rec.dimreg.map(|d| (v.value - d).abs());
    match scheme_oracle(&p, &spec, DEFAULT_REL_TOL) {
        Ok(o) => compare(&mut rec, v.value, v.abs_err, o.value, o.err_est, tol),
        Err(e) => {
            rec.verdict = "unchecked".into();
            rec.message = Some(e.to_string());
        }
    }
    Ok(rec)
}

/// Like [`eval_point`], with errors folded into the record's verdict.
pub fn grid_point(pt: &Point, name: SchemeName, tol: f64) -> Record {
    eval_point(pt, name, tol).unwrap_or_else(|e| errored(pt.record(name.as_str(), "eval"), &e))
}

/// Extraction: build the series, keep only the regulator-free part and
/// compare it with the dimensionally regularized value.
pub fn extract_point(pt: &Point, name: SchemeName, terms: usize, tol: f64) -> Result<Record> {
    let p = pt.params();
    let spec = pt
        .spec(name)?
        .ok_or_else(|| Error::Config("extract needs a regulated scheme, not dimreg".into()))?;
    let series = scheme_series(&p, &spec, terms)?;
    let extracted = series.extract_multi(&spec.scales()).eval_at(&spec.scale_values())?;
    let dimreg = dimreg_value(&p)?;
    let mut rec = pt.record(name.as_str(), "extraction");
    rec.value = Some(extracted);
    rec.dimreg = Some(dimreg);
    rec.gap = Some((extracted - dimreg).abs());
    let residual = rel(extracted, dimreg);
    rec.residual_rel = Some(residual);
    rec.verdict = if residual <= tol { PASS } else { FAIL }.into();
    if !series.truncation_note.is_empty() {
        rec.message = Some(series.truncation_note.clone());
    }
    Ok(rec)
}

fn check(pt: &Point, name: SchemeName, what: &str, f: impl FnOnce(&mut Record) -> Result<()>) -> Record {
    let mut rec = pt.record(name.as_str(), what);
    match f(&mut rec) {
        Ok(()) => rec,
        Err(e) => errored(rec, &e),
    }
}

/// Every property of the catalogue at one point. `tol` governs value
/// comparisons; the finite-difference checks keep their own tolerances.
pub fn verify_point(pt: &Point, terms: usize, tol: f64) -> Vec<Record> {
    let p = pt.params();
    let mut out = Vec::new();
    if 2.0 * p.alpha - p.d > 0.0 {
        out.push(check(pt, SchemeName::Dimreg, "master_vs_oracle", |r| {
            let m = master_one_loop(&p)?;
            let o = master_oracle(&p, DEFAULT_REL_TOL)?;
            compare(r, m.value, m.abs_err, o.value, o.err_est, tol);
            r.dimreg = Some(m.value);
            Ok(())
        }));
    }
    for name in [SchemeName::Cutoff, SchemeName::Gaussian, SchemeName::IrWindow, SchemeName::SeparateCutoff] {
        out.push(check(pt, name, "oracle_equivalence", |r| {
            let spec = pt.spec(name)?.expect("regulated family");
            let v = scheme_eval(&p, &spec)?;
            let o = scheme_oracle(&p, &spec, DEFAULT_REL_TOL)?;
            compare(r, v.value, v.abs_err, o.value, o.err_est, tol);
            Ok(())
        }));
    }
    if let Some(delta) = pt.delta {
        out.push(check(pt, SchemeName::GaussianIr, "decomposition", |r| {
            let v = gaussian_ir_decomposition(&p, delta)?;
            let o = gaussian_ir_eval(&p, delta)?;
            compare(r, v.value, v.abs_err, o.value, o.abs_err, tol);
            Ok(())
        }));
    }
    for name in [
        SchemeName::Cutoff,
        SchemeName::Gaussian,
        SchemeName::IrWindow,
        SchemeName::GaussianIr,
        SchemeName::TwoSided,
        SchemeName::SeparateCutoff,
        SchemeName::SeparateTwoSided,
    ] {
        let mut rec = extract_point(pt, name, terms, tol)
            .unwrap_or_else(|e| errored(pt.record(name.as_str(), "extraction"), &e));
        rec.check = "extraction".into();
        out.push(rec);
    }
    for name in [SchemeName::Cutoff, SchemeName::Gaussian, SchemeName::TwoSided] {
        out.push(check(pt, name, "series_total", |r| {
            let spec = pt.spec(name)?.expect("regulated family");
            let series = scheme_series(&p, &spec, terms)?;
            let total = series.eval_at(&spec.scale_values())?;
            let v = scheme_eval(&p, &spec)?;
            compare(r, total, 0.0, v.value, v.abs_err, tol);
            Ok(())
        }));
    }
    out.push(check(pt, SchemeName::Dimreg, "lower_index", |r| {
        let v = lower_index(&p)?;
        r.value = Some(v.value);
        r.dimreg = Some(v.value);
        r.residual_rel = Some(0.0);
        r.verdict = PASS.into();
        Ok(())
    }));
    for name in [SchemeName::Cutoff, SchemeName::Gaussian] {
        out.push(check(pt, name, "commutation", |r| {
            let spec = pt.spec(name)?.expect("regulated family");
            let c = commutes_with_mass_derivative(&p, &spec, FD_REL_STEP)?;
            r.value = Some(c.lhs);
            r.oracle = Some(c.rhs);
            r.residual_rel = Some(c.residual);
            r.verdict = if c.pass { PASS } else { FAIL }.into();
            Ok(())
        }));
    }
    out
}
