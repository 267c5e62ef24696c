//! Regulated families of the one-loop integral: UV cut-off and Gaussian
//! damping, their IR-completed and two-scale variants, and the two
//! regulators that fail for non-positive powers.

mod demos;
mod infrared;
mod two_mass;
mod two_sided;
mod uv;

pub use demos::{incomplete_demo, quartic_continuation_target};
pub use infrared::{
    gaussian_ir_decomposition, gaussian_ir_eval, gaussian_ir_massless_forms, gaussian_ir_series,
    ir_window_eval, ir_window_series, separate_cutoff_eval, separate_cutoff_series,
};
pub use two_mass::{two_mass_cutoff, two_mass_gaussian};

pub use two_sided::{
    two_sided_eval, two_sided_massless_closed, two_sided_massless_forms, two_sided_series,
};
pub use uv::{cutoff_eval, cutoff_log_radial_series, cutoff_series, gaussian_eval, gaussian_series};

use std::f64::consts::PI;
use std::fmt;

use crate::dimreg::Params;
use crate::error::{Error, PoleError, Result, POLE_TOLERANCE};
use crate::series::{scale_values, FormalSeries, Scale, ScaleValues};
use crate::specfun::rgamma;

/// A regulated family together with the regulator scales it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeSpec {
    /// `p ≤ K`.
    CutoffUv { k: f64 },
    /// Damping `e^{-δ p²}`.
    GaussianUv { delta: f64 },
    /// `1/K ≤ p ≤ K`.
    IrWindow { k: f64 },
    /// `p ≥ δ` with damping `e^{-δ p²}`.
    GaussianIr { delta: f64 },
    /// Damping `e^{-δ p² - δ/p²}`.
    TwoSidedGaussian { delta: f64 },
    /// `δ ≤ p ≤ K`.
    SeparateCutoff { k: f64, delta: f64 },
    /// Damping `e^{-δ p² - ξ/p²}`.
    SeparateTwoSided { delta: f64, xi: f64 },
    /// Monomial Mellin regulator with exponent `z`.
    MellinDemo { z: f64 },
    /// Quartic denominator `a x⁴ + x² + 1`.
    QuarticDemo { a: f64 },
}

impl SchemeSpec {
    pub fn family(&self) -> &'static str {
        match self {
            SchemeSpec::CutoffUv { .. } => "cutoff_uv",
            SchemeSpec::GaussianUv { .. } => "gaussian_uv",
            SchemeSpec::IrWindow { .. } => "ir_window",
            SchemeSpec::GaussianIr { .. } => "gaussian_ir",
            SchemeSpec::TwoSidedGaussian { .. } => "two_sided_gaussian",
            SchemeSpec::SeparateCutoff { .. } => "separate_cutoff",
            SchemeSpec::SeparateTwoSided { .. } => "separate_two_sided",
            SchemeSpec::MellinDemo { .. } => "mellin_demo",
            SchemeSpec::QuarticDemo { .. } => "quartic_demo",
        }
    }

    pub fn is_demo(&self) -> bool {
        matches!(self, SchemeSpec::MellinDemo { .. } | SchemeSpec::QuarticDemo { .. })
    }

    /// Regulator scales the family depends on, in canonical order.
    pub fn scales(&self) -> Vec<Scale> {
        match self {
            SchemeSpec::CutoffUv { .. } | SchemeSpec::IrWindow { .. } => vec![Scale::K],
            SchemeSpec::GaussianUv { .. }
            | SchemeSpec::GaussianIr { .. }
            | SchemeSpec::TwoSidedGaussian { .. } => vec![Scale::Delta],
            SchemeSpec::SeparateCutoff { .. } => vec![Scale::K, Scale::Delta],
            SchemeSpec::SeparateTwoSided { .. } => vec![Scale::Delta, Scale::Xi],
            SchemeSpec::MellinDemo { .. } | SchemeSpec::QuarticDemo { .. } => vec![],
        }
    }

    pub fn scale_values(&self) -> ScaleValues {
        match *self {
            SchemeSpec::CutoffUv { k } | SchemeSpec::IrWindow { k } => scale_values(&[(Scale::K, k)]),
            SchemeSpec::GaussianUv { delta }
            | SchemeSpec::GaussianIr { delta }
            | SchemeSpec::TwoSidedGaussian { delta } => scale_values(&[(Scale::Delta, delta)]),
            SchemeSpec::SeparateCutoff { k, delta } => {
                scale_values(&[(Scale::K, k), (Scale::Delta, delta)])
            }
            SchemeSpec::SeparateTwoSided { delta, xi } => {
                scale_values(&[(Scale::Delta, delta), (Scale::Xi, xi)])
            }
            SchemeSpec::MellinDemo { .. } | SchemeSpec::QuarticDemo { .. } => ScaleValues::new(),
        }
    }

    /// Checks the regulator scales are admissible for the family.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be positive and finite, got {x}")))
            }
        };
        match *self {
            SchemeSpec::CutoffUv { k } => positive("K", k),
            SchemeSpec::IrWindow { k } => {
                positive("K", k)?;
                if k < 1.0 {
                    return Err(Error::Domain(format!("IR window needs K >= 1, got {k}")));
                }
                Ok(())
            }
            SchemeSpec::GaussianUv { delta }
            | SchemeSpec::GaussianIr { delta }
            | SchemeSpec::TwoSidedGaussian { delta } => positive("delta", delta),
            SchemeSpec::SeparateCutoff { k, delta } => {
                positive("K", k)?;
                positive("delta", delta)?;
                if !(k > delta) {
                    return Err(Error::Domain(format!("separate cut-off needs K > delta, got {k} <= {delta}")));
                }
                Ok(())
            }
            SchemeSpec::SeparateTwoSided { delta, xi } => {
                positive("delta", delta)?;
                positive("xi", xi)
            }
            SchemeSpec::MellinDemo { z } => {
                if z.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Domain("Mellin exponent must be finite".into()))
                }
            }
            SchemeSpec::QuarticDemo { a } => {
                if a > 0.0 && a < 0.25 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("quartic coefficient needs 0 < a < 1/4, got {a}")))
                }
            }
        }
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        match *self {
            SchemeSpec::CutoffUv { k } | SchemeSpec::IrWindow { k } => write!(f, "(K={k:e})"),
            SchemeSpec::GaussianUv { delta }
            | SchemeSpec::GaussianIr { delta }
            | SchemeSpec::TwoSidedGaussian { delta } => write!(f, "(delta={delta:e})"),
            SchemeSpec::SeparateCutoff { k, delta } => write!(f, "(K={k:e}, delta={delta:e})"),
            SchemeSpec::SeparateTwoSided { delta, xi } => write!(f, "(delta={delta:e}, xi={xi:e})"),
            SchemeSpec::MellinDemo { z } => write!(f, "(z={z:e})"),
            SchemeSpec::QuarticDemo { a } => write!(f, "(a={a:e})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    Series,
    Quadrature,
    Demo,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Series => "series",
            Provenance::Quadrature => "quadrature",
            Provenance::Demo => "demo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
    pub provenance: Provenance,
    pub note: Option<&'static str>,
}

impl EvalResult {
    pub fn new(value: f64, abs_err: f64, provenance: Provenance) -> Self {
        Self {
            value,
            abs_err: abs_err.abs(),
            provenance,
            note: None,
        }
    }

    pub fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    pub fn rel_err(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_err
        } else {
            self.abs_err / self.value.abs()
        }
    }
}

/// A quadrature value set against two candidate closed forms of the same
/// integral: `derived`, which follows from the defining integral, and a
/// commonly quoted `alternative`. A form is `None` where its special
/// function degenerates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormComparison {
    pub oracle: f64,
    pub oracle_err: f64,
    pub derived: Option<f64>,
    pub alternative: Option<f64>,
}

impl FormComparison {
    /// Relative deviation of `form` from the oracle.
    pub fn deviation(&self, form: Option<f64>) -> Option<f64> {
        form.map(|v| (v - self.oracle).abs() / self.oracle.abs())
    }
}

/// `1 / ((4π)^{d/2} Γ(d/2))`, half the radial measure.
pub(crate) fn half_measure(d: f64) -> f64 {
    rgamma(0.5 * d) / (4.0 * PI).powf(0.5 * d)
}

pub(crate) const EPSILON_HINT: &str =
    "integer case: evaluate at d - 2*eps for a small user-chosen eps and expand";

/// Rejects a vanishing series denominator.
pub(crate) fn check_denominator(function: &'static str, den: f64) -> Result<()> {
    if den.abs() < POLE_TOLERANCE {
        return Err(PoleError {
            function,
            location: 0.0,
            distance: den.abs(),
            hint: Some(EPSILON_HINT),
        }
        .into());
    }
    Ok(())
}

/// Rejects parameters whose expansion needs `x` away from the integers.
pub(crate) fn check_non_integer(function: &'static str, x: f64) -> Result<()> {
    if crate::error::near_integer(x) {
        return Err(PoleError {
            function,
            location: x.round(),
            distance: (x - x.round()).abs(),
            hint: Some(EPSILON_HINT),
        }
        .into());
    }
    Ok(())
}

/// Guards the truncation of a series: the last order kept must be small
/// against the total.
pub(crate) fn check_tail(what: &str, series: &FormalSeries, last_order: &FormalSeries, at: &ScaleValues) -> Result<()> {
    let total = series.eval_at(at)?;
    let last = last_order.abs_sum_at(at)?;
    if last > crate::dimreg::TAIL_FRACTION * total.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::non_convergence(what, total, last));
    }
    Ok(())
}

/// Numeric value of any family at `p`.
pub fn scheme_eval(p: &Params, s: &SchemeSpec) -> Result<EvalResult> {
    s.validate()?;
    p.validate()?;
    if p.is_two_mass() {
        return match *s {
            SchemeSpec::CutoffUv { k } => two_mass::cutoff_value(p, k),
            SchemeSpec::GaussianUv { delta } => two_mass::gaussian_value(p, delta),
            _ if s.is_demo() => Err(Error::Domain("demonstration regulators take one propagator".into())),
            _ => {
                let r = crate::oracle::scheme_oracle(p, s, crate::oracle::DEFAULT_REL_TOL)?;
                Ok(EvalResult::new(r.value, r.err_est, Provenance::Quadrature))
            }
        };
    }
    match *s {
        SchemeSpec::CutoffUv { k } => cutoff_eval(p, k),
        SchemeSpec::GaussianUv { delta } => gaussian_eval(p, delta),
        SchemeSpec::IrWindow { k } => ir_window_eval(p, k),
        SchemeSpec::GaussianIr { delta } => gaussian_ir_eval(p, delta),
        SchemeSpec::TwoSidedGaussian { delta } => two_sided_eval(p, delta, delta),
        SchemeSpec::SeparateCutoff { k, delta } => separate_cutoff_eval(p, k, delta),
        SchemeSpec::SeparateTwoSided { delta, xi } => two_sided_eval(p, delta, xi),
        SchemeSpec::MellinDemo { .. } | SchemeSpec::QuarticDemo { .. } => incomplete_demo(p, s),
    }
}

/// Scale-tagged expansion of any non-demo family at `p`, with `n_max`
/// terms per summation index.
pub fn scheme_series(p: &Params, s: &SchemeSpec, n_max: usize) -> Result<FormalSeries> {
    s.validate()?;
    p.validate()?;
    if p.is_two_mass() {
        return match *s {
            SchemeSpec::CutoffUv { k } => two_mass::cutoff_series(p, k, n_max),
            SchemeSpec::GaussianUv { delta } => two_mass::gaussian_series(p, delta, n_max),
            _ => Err(Error::Domain(format!(
                "no two-mass series for {}; only cutoff_uv and gaussian_uv",
                s.family()
            ))),
        };
    }
    match *s {
        SchemeSpec::CutoffUv { k } => cutoff_series(p, k, n_max),
        SchemeSpec::GaussianUv { delta } => gaussian_series(p, delta, n_max),
        SchemeSpec::IrWindow { k } => ir_window_series(p, k, n_max),
        SchemeSpec::GaussianIr { delta } => gaussian_ir_series(p, delta, n_max),
        SchemeSpec::TwoSidedGaussian { delta } => {
            Ok(two_sided_series(p, delta, delta, n_max)?.relabel_scale(Scale::Xi, Scale::Delta))
        }
        SchemeSpec::SeparateCutoff { k, delta } => separate_cutoff_series(p, k, delta, n_max),
        SchemeSpec::SeparateTwoSided { delta, xi } => two_sided_series(p, delta, xi, n_max),
        SchemeSpec::MellinDemo { .. } | SchemeSpec::QuarticDemo { .. } => Err(Error::Domain(
            "demonstration regulators have no series form".into(),
        )),
    }
}
