//! Brute-force numeric ground truth: adaptive quadrature of the defining
//! radial integrals, independent of every closed form in the crate.

pub mod quadrature;

pub use quadrature::{
    integrate, integrate_pieces, DecayHint, Domain, QuadratureRequest, QuadratureResult,
    DEFAULT_ABS_TOL, DEFAULT_MAX_SUBDIVISIONS, DEFAULT_REL_TOL,
};

use std::f64::consts::PI;

use crate::dimreg::Params;
use crate::error::{Error, Result};
use crate::schemes::SchemeSpec;
use crate::specfun::rgamma;

/// `Ω_d / (2π)^d = 2 / ((4π)^{d/2} Γ(d/2))`.
pub fn radial_measure(d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("radial measure needs d > 0, got {d}")));
    }
    Ok(2.0 * rgamma(0.5 * d) / (4.0 * PI).powf(0.5 * d))
}

/// Damping and limits of one radial integral
/// `∫ p^{d-1} (p²+m²)^{-α} (p²+M²)^{-β} e^{-δ p² - ξ/p²} dp`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Radial {
    pub d: f64,
    pub alpha: f64,
    pub m2: f64,
    pub beta: f64,
    pub big_m2: f64,
    pub uv_damping: f64,
    pub ir_damping: f64,
}

impl Radial {
    pub fn new(p: &Params) -> Self {
        Self {
            d: p.d,
            alpha: p.alpha,
            m2: p.m2,
            beta: p.beta.unwrap_or(0.0),
            big_m2: p.big_m2.unwrap_or(p.m2),
            uv_damping: 0.0,
            ir_damping: 0.0,
        }
    }

    pub fn damped(mut self, uv: f64, ir: f64) -> Self {
        self.uv_damping = uv;
        self.ir_damping = ir;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x2 = x * x;
        let mut e = (self.d - 1.0) * x.ln() - self.alpha * (x2 + self.m2).ln();
        if self.beta != 0.0 {
            e -= self.beta * (x2 + self.big_m2).ln();
        }
        if self.uv_damping != 0.0 {
            e -= self.uv_damping * x2;
        }
        if self.ir_damping != 0.0 {
            e -= self.ir_damping / x2;
        }
        if e < -745.0 {
            0.0
        } else {
            e.exp()
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![self.m2.sqrt(), self.big_m2.sqrt()];
        if self.ir_damping > 0.0 {
            pts.push(self.ir_damping.sqrt());
        }
        if self.uv_damping > 0.0 {
            pts.push(1.0 / self.uv_damping.sqrt());
        }
        pts.retain(|x| *x > 0.0 && x.is_finite());
        pts
    }

    /// Power `q` for the substitution `x = t^q` on the piece touching the
    /// origin, chosen so the leading power of the integrand becomes an integer.
    fn origin_power(&self) -> f64 {
        if self.ir_damping > 0.0 {
            return 1.0;
        }
        let mut lead = self.d - 1.0;
        if self.m2 == 0.0 {
            lead -= 2.0 * self.alpha;
        }
        if self.big_m2 == 0.0 {
            lead -= 2.0 * self.beta;
        }
        let n = lead + 1.0;
        if n <= 0.0 || (n - n.round()).abs() < 1e-12 {
            1.0
        } else {
            n.ceil() / n
        }
    }

    fn integrate_finite(&self, points: &[f64], rel_tol: f64) -> Result<QuadratureResult> {
        let f = |x: f64| self.eval(x);
        let q = self.origin_power();
        if points.len() < 2 || points[0] != 0.0 || q == 1.0 {
            return integrate_pieces(&f, points, rel_tol, f64::MIN_POSITIVE);
        }
        let g = |t: f64| q * t.powf(q - 1.0) * self.eval(t.powf(q));
        let head = integrate_pieces(&g, &[0.0, points[1].powf(1.0 / q)], rel_tol, f64::MIN_POSITIVE)?;
        let rest = integrate_pieces(&f, &points[1..], rel_tol, f64::MIN_POSITIVE)?;
        Ok(QuadratureResult {
            value: head.value + rest.value,
            err_est: head.err_est + rest.err_est,
            subdivisions_used: head.subdivisions_used + rest.subdivisions_used,
            converged: true,
        })
    }

    /// `∫_start^∞` for an undamped tail `~ x^L`: `x = start u^{-r}` with
    /// `r = -1/(L+1)` turns it into a bounded integrand on `(0, 1]`.
    fn power_tail(&self, start: f64, rel_tol: f64) -> Result<QuadratureResult> {
        let lead = self.d - 1.0 - 2.0 * (self.alpha + self.beta);
        if !(lead < -1.0) {
            return Err(Error::DivergentInput(format!(
                "radial integrand decays like p^{lead}, not integrable at infinity"
            )));
        }
        let r = -1.0 / (lead + 1.0);
        let g = |u: f64| {
            if u == 0.0 {
                return 0.0;
            }
            let x = start * u.powf(-r);
            let v = self.eval(x);
            if v == 0.0 {
                0.0
            } else {
                v * r * x / u
            }
        };
        integrate_pieces(&g, &[0.0, 1.0], rel_tol, f64::MIN_POSITIVE)
    }

    /// Integral over `[lo, hi]`, or `[lo, ∞)` when `hi` is `None`.
    pub fn integrate(&self, lo: f64, hi: Option<f64>, rel_tol: f64) -> Result<QuadratureResult> {
        let f = |x: f64| self.eval(x);
        let mut points = vec![lo];
        points.extend(
            self.breakpoints()
                .into_iter()
                .filter(|x| *x > lo && hi.is_none_or(|h| *x < h)),
        );
        points.sort_by(f64::total_cmp);
        points.dedup();
        if let Some(h) = hi {
            points.push(h);
        }
        let finite = self.integrate_finite(&points, rel_tol)?;
        if hi.is_some() {
            return Ok(finite);
        }
        let start = *points.last().expect("non-empty");
        let tail = if self.uv_damping > 0.0 {
            integrate(
                &QuadratureRequest::semi_infinite(&f, start, DecayHint::Gaussian)
                    .tolerances(rel_tol, f64::MIN_POSITIVE),
            )?
        } else {
            self.power_tail(start, rel_tol)?
        };
        Ok(QuadratureResult {
            value: finite.value + tail.value,
            err_est: finite.err_est + tail.err_est,
            subdivisions_used: finite.subdivisions_used + tail.subdivisions_used,
            converged: true,
        })
    }
}

fn scaled(r: QuadratureResult, factor: f64) -> QuadratureResult {
    QuadratureResult {
        value: r.value * factor,
        err_est: (r.err_est * factor).abs(),
        ..r
    }
}

fn require_ir_safe(p: &Params) -> Result<()> {
    let total = 2.0 * (p.alpha + p.beta.unwrap_or(0.0));
    let massless = p.m2 == 0.0 && p.big_m2.is_none_or(|m| m == 0.0);
    if massless && p.d - total <= 0.0 {
        return Err(Error::DivergentInput(format!(
            "massless integrand is IR divergent at d = {}, alpha = {}",
            p.d, p.alpha
        )));
    }
    Ok(())
}

/// Brute-force value of the defining integral of `s` at `p`: the radial
/// measure times adaptive quadrature over the family's domain with its
/// damping. `tol` is the relative tolerance handed to the integrator.
///
/// The two demonstration families return their bare radial integrals
/// (`∫ u^{d/2+z-1}(1+u)^{-α} du` and `∫ x²/(a x⁴ + x² + 1) dx`) without
/// the measure, matching the values their closed forms produce.
pub fn scheme_oracle(p: &Params, s: &SchemeSpec, tol: f64) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain("oracle tolerance must be positive".into()));
    }
    s.validate()?;
    p.validate()?;
    let radial = Radial::new(p);
    let r = match *s {
        SchemeSpec::CutoffUv { k } => {
            require_ir_safe(p)?;
            radial.integrate(0.0, Some(k), tol)?
        }
        SchemeSpec::GaussianUv { delta } => {
            require_ir_safe(p)?;
            radial.damped(delta, 0.0).integrate(0.0, None, tol)?
        }
        SchemeSpec::IrWindow { k } => radial.integrate(1.0 / k, Some(k), tol)?,
        SchemeSpec::SeparateCutoff { k, delta } => radial.integrate(delta, Some(k), tol)?,
        SchemeSpec::GaussianIr { delta } => radial.damped(delta, 0.0).integrate(delta, None, tol)?,
        SchemeSpec::TwoSidedGaussian { delta } => {
            radial.damped(delta, delta).integrate(0.0, None, tol)?
        }
        SchemeSpec::SeparateTwoSided { delta, xi } => {
            radial.damped(delta, xi).integrate(0.0, None, tol)?
        }
        SchemeSpec::MellinDemo { z } => return mellin_oracle(p, z, tol),
        SchemeSpec::QuarticDemo { a } => return quartic_oracle(a, tol),
    };
    Ok(scaled(r, radial_measure(p.d)?))
}

/// Oracle for the one-mass master integral, valid where it converges.
pub fn master_oracle(p: &Params, tol: f64) -> Result<QuadratureResult> {
    let total = p.alpha + p.beta.unwrap_or(0.0);
    if !(2.0 * total - p.d > 0.0) {
        return Err(Error::DivergentInput(format!(
            "the defining integral diverges in the UV for 2(alpha+beta) - d = {}",
            2.0 * total - p.d
        )));
    }
    require_ir_safe(p)?;
    p.validate()?;
    let r = Radial::new(p).integrate(0.0, None, tol)?;
    Ok(scaled(r, radial_measure(p.d)?))
}

fn mellin_oracle(p: &Params, z: f64, tol: f64) -> Result<QuadratureResult> {
    let x = 0.5 * p.d + z;
    let y = p.alpha - x;
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::DivergentInput(format!(
            "Mellin-regulated integral diverges: B({x}, {y})"
        )));
    }
    let f = move |u: f64| ((x - 1.0) * u.ln() - p.alpha * u.ln_1p()).exp();
    let head = integrate_pieces(&f, &[0.0, 1.0], tol, f64::MIN_POSITIVE)?;
    let tail = integrate(
        &QuadratureRequest::semi_infinite(&f, 1.0, DecayHint::Power).tolerances(tol, f64::MIN_POSITIVE),
    )?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        err_est: head.err_est + tail.err_est,
        subdivisions_used: head.subdivisions_used + tail.subdivisions_used,
        converged: true,
    })
}

fn quartic_oracle(a: f64, tol: f64) -> Result<QuadratureResult> {
    let f = move |x: f64| {
        let x2 = x * x;
        x2 / (a * x2 * x2 + x2 + 1.0)
    };
    let knee = 1.0 / a.sqrt().sqrt();
    let head = integrate_pieces(&f, &[0.0, 1.0, knee], tol, f64::MIN_POSITIVE)?;
    let tail = integrate(
        &QuadratureRequest::semi_infinite(&f, knee, DecayHint::Power).tolerances(tol, f64::MIN_POSITIVE),
    )?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        err_est: head.err_est + tail.err_est,
        subdivisions_used: head.subdivisions_used + tail.subdivisions_used,
        converged: true,
    })
}
