//! Dimensionally regularized one-loop integrals: the master formula, its
//! validity classification, scaleless integrals, the index recurrence and
//! the two-mass integral.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{check_pole, Error, Result};
use crate::oracle::integrate_pieces;
use crate::schemes::{EvalResult, Provenance};
use crate::specfun::{binomial_pole_sum, gamma, hyp2f1, neg_binomials, rgamma};

/// Integral indices and masses: `∫_p (p²+m²)^{-α} (p²+M²)^{-β}` in `d`
/// dimensions. The second propagator is absent unless both `beta` and
/// `big_m2` are set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub d: f64,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub m2: f64,
    pub big_m2: Option<f64>,
}

impl Params {
    pub fn one_mass(d: f64, alpha: f64, m2: f64) -> Self {
        Self {
            d,
            alpha,
            beta: None,
            m2,
            big_m2: None,
        }
    }

    pub fn two_mass(d: f64, alpha: f64, beta: f64, m2: f64, big_m2: f64) -> Self {
        Self {
            d,
            alpha,
            beta: Some(beta),
            m2,
            big_m2: Some(big_m2),
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn with_m2(self, m2: f64) -> Self {
        Self { m2, ..self }
    }

    pub fn is_two_mass(&self) -> bool {
        self.beta.is_some()
    }

    /// Total propagator power `α + β`.
    pub fn total_power(&self) -> f64 {
        self.alpha + self.beta.unwrap_or(0.0)
    }

    /// Basic sanity: positive finite dimension, finite indices, non-negative
    /// masses, and `beta`/`big_m2` given together.
    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0 && self.d.is_finite()) {
            return Err(Error::Domain(format!("dimension must be positive, got {}", self.d)));
        }
        if !self.alpha.is_finite() || !self.beta.unwrap_or(0.0).is_finite() {
            return Err(Error::Domain("propagator powers must be finite".into()));
        }
        if !(self.m2 >= 0.0 && self.m2.is_finite()) {
            return Err(Error::Domain(format!("m2 must be non-negative, got {}", self.m2)));
        }
        match (self.beta, self.big_m2) {
            (Some(_), Some(m)) if m >= 0.0 && m.is_finite() => Ok(()),
            (None, None) => Ok(()),
            (Some(_), Some(m)) => Err(Error::Domain(format!("M2 must be non-negative, got {m}"))),
            _ => Err(Error::Domain("beta and M2 must be given together".into())),
        }
    }

    fn require_one_mass(&self, what: &str) -> Result<()> {
        if self.is_two_mass() {
            return Err(Error::Domain(format!(
                "{what} takes a single propagator; use the two-mass operations"
            )));
        }
        Ok(())
    }

    pub(crate) fn require_hierarchy(&self) -> Result<(f64, f64)> {
        let (Some(beta), Some(big)) = (self.beta, self.big_m2) else {
            return Err(Error::Domain("two-mass operation needs beta and M2".into()));
        };
        if !(self.m2 > 0.0 && big >= self.m2) {
            return Err(Error::Domain(format!(
                "two-mass operations need M2 >= m2 > 0, got m2 = {}, M2 = {big}; swap (alpha, m2) with (beta, M2)",
                self.m2
            )));
        }
        Ok((beta, big))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Convergent,
    Continued,
    Pole,
    Unsupported,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Convergent => "convergent",
            VerdictKind::Continued => "continued",
            VerdictKind::Pole => "pole",
            VerdictKind::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainVerdict {
    pub kind: VerdictKind,
    pub reason: String,
}

/// Where a parameter point sits: convergent integral, analytic
/// continuation, pole of the master formula, or outside the supported
/// (positive) dimensions.
pub fn classify(p: &Params) -> DomainVerdict {
    let verdict = |kind, reason: String| DomainVerdict { kind, reason };
    if !(p.d > 0.0 && p.d.is_finite()) {
        return verdict(VerdictKind::Unsupported, format!("d = {} is not a positive dimension", p.d));
    }
    let total = p.total_power();
    if !total.is_finite() {
        return verdict(VerdictKind::Unsupported, "propagator powers must be finite".into());
    }
    let s = total - 0.5 * p.d;
    if let Err(e) = check_pole("gamma", s) {
        return verdict(
            VerdictKind::Pole,
            format!("index minus d/2 = {s} sits on the pole at {}", e.location),
        );
    }
    if 2.0 * total - p.d > 0.0 {
        verdict(VerdictKind::Convergent, format!("2(index) - d = {} > 0", 2.0 * total - p.d))
    } else {
        verdict(
            VerdictKind::Continued,
            format!("UV divergent, continued through gamma at {s}"),
        )
    }
}

fn require_regular(p: &Params) -> Result<()> {
    let v = classify(p);
    match v.kind {
        VerdictKind::Unsupported => Err(Error::Domain(v.reason)),
        VerdictKind::Pole => {
            check_pole("gamma", p.total_power() - 0.5 * p.d)?;
            unreachable!("pole verdict without pole")
        }
        _ => Ok(()),
    }
}

/// `I_α^d(m) = (m²)^{d/2-α} (4π)^{-d/2} Γ(α-d/2) / Γ(α)`.
pub fn master_one_loop(p: &Params) -> Result<EvalResult> {
    p.require_one_mass("master_one_loop")?;
    require_regular(p)?;
    if !(p.m2 > 0.0 && p.m2.is_finite()) {
        return Err(Error::Domain(format!(
            "master_one_loop needs m2 > 0 (got {}); scaleless integrals go through veltman_scaleless",
            p.m2
        )));
    }
    let half = 0.5 * p.d;
    let g = gamma(p.alpha - half)?;
    let pref = p.m2.powf(half - p.alpha) / (4.0 * PI).powf(half);
    let value = pref * g.value * rgamma(p.alpha);
    let rel = g.rel_err() + 16.0 * f64::EPSILON * (2.0 + p.alpha.abs() + half);
    Ok(EvalResult::new(value, value.abs() * rel, Provenance::ClosedForm))
}

/// Scaleless integrals vanish.
pub fn veltman_scaleless(_d: f64, _alpha: f64) -> EvalResult {
    EvalResult::new(0.0, 0.0, Provenance::ClosedForm).with_note("Veltman/Hadamard")
}

/// Relative step of the central differences in `m²`.
pub const FD_REL_STEP: f64 = 1e-5;
pub const RECURRENCE_TOL: f64 = 1e-6;

/// Central difference `-[I(m²+h) - I(m²-h)] / (2h)` of the master integral.
pub fn master_mass_derivative(p: &Params, h: f64) -> Result<f64> {
    let up = master_one_loop(&p.with_m2(p.m2 + h))?.value;
    let down = master_one_loop(&p.with_m2(p.m2 - h))?.value;
    Ok(-(up - down) / (2.0 * h))
}

pub(crate) fn relative_residual(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `α I_{α+1}`, checked against the finite-difference derivative
/// `-∂_{m²} I_α` that it must equal.
pub fn lower_index(p: &Params) -> Result<EvalResult> {
    p.require_one_mass("lower_index")?;
    require_regular(p)?;
    require_regular(&p.with_alpha(p.alpha + 1.0))?;
    let next = master_one_loop(&p.with_alpha(p.alpha + 1.0))?;
    let value = p.alpha * next.value;
    let fd = master_mass_derivative(p, FD_REL_STEP * p.m2)?;
    let residual = relative_residual(value, fd);
    if residual > RECURRENCE_TOL {
        return Err(Error::RecurrenceViolation {
            lhs: value,
            rhs: fd,
            residual,
        });
    }
    Ok(EvalResult::new(
        value,
        (p.alpha * next.abs_err).abs(),
        Provenance::ClosedForm,
    ))
}

/// Two-mass integral through its Gauss-function closed form. Requires
/// `M² ≥ m² > 0`.
pub fn two_mass_master(p: &Params) -> Result<EvalResult> {
    let (beta, big) = p.require_hierarchy()?;
    require_regular(p)?;
    let half = 0.5 * p.d;
    let total = p.alpha + beta;
    let s = total - half;
    let g = gamma(s)?;
    let f = hyp2f1(s, p.alpha, total, 1.0 - p.m2 / big)?;
    let pref = big.powf(-s) / (4.0 * PI).powf(half) * rgamma(total);
    let value = pref * g.value * f.value;
    let err = (pref * g.value * f.abs_err).abs()
        + value.abs() * (g.rel_err() + 16.0 * f64::EPSILON * (2.0 + total.abs()));
    Ok(EvalResult::new(value, err, Provenance::ClosedForm))
}

/// `∫_0^1 w^{d/2+j-1} (M² w + m²)^{-α} (w+1)^{-β} dw`, the finite-range
/// piece of the two-mass splits.
pub(crate) fn two_mass_finite_piece(p: &Params, j: usize) -> Result<(f64, f64)> {
    let beta = p.beta.unwrap_or(0.0);
    let big = p.big_m2.unwrap_or(p.m2);
    let (e, alpha, m2) = (0.5 * p.d + j as f64 - 1.0, p.alpha, p.m2);
    let f = move |w: f64| (e * w.ln() - alpha * (big * w + m2).ln() - beta * w.ln_1p()).exp();
    let knee = (m2 / big).min(0.5);
    let r = integrate_pieces(&f, &[0.0, knee, 1.0], 1e-13, f64::MIN_POSITIVE)?;
    Ok((r.value, r.err_est))
}

/// Default number of terms per summation index in series forms.
pub const DEFAULT_TERMS: usize = 40;
/// A series whose last included term exceeds this fraction of the total has
/// not converged.
pub const TAIL_FRACTION: f64 = 1e-3;

/// Outer terms of the tail series needed for `(m²/M²)^n` to drop below
/// rounding, never fewer than [`DEFAULT_TERMS`].
pub(crate) fn converged_tail_terms(p: &Params) -> usize {
    let r = p.m2 / p.big_m2.unwrap_or(p.m2);
    if !(r > 0.0 && r < 1.0) {
        return DEFAULT_TERMS;
    }
    let n = (f64::EPSILON.ln() / r.ln()).ceil() as usize + 1;
    n.clamp(DEFAULT_TERMS, 4000)
}

/// The continued tail `(M²)^{-α} Σ_n binom(-α,n) r^n Σ_k binom(-β,k)/(s+n+k)`
/// of the two-mass split, with `r = m²/M²` and `s = α+β-d/2`. The inner sum
/// is resummed; equal masses collapse the double sum by Vandermonde.
pub(crate) fn two_mass_tail(p: &Params, shift: f64, n_max: usize) -> Result<(f64, f64)> {
    let beta = p.beta.unwrap_or(0.0);
    let big = p.big_m2.unwrap_or(p.m2);
    let s = p.total_power() - 0.5 * p.d - shift;
    let r = p.m2 / big;
    let lead = big.powf(-p.alpha);
    if r == 1.0 {
        let v = binomial_pole_sum(p.alpha + beta, s, crate::specfun::MAX_SERIES_TERMS)?;
        return Ok((lead * v.value, (lead * v.abs_err).abs()));
    }
    let coeffs = neg_binomials(p.alpha, n_max);
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut rn = 1.0;
    let mut last = 0.0;
    for (n, c) in coeffs.iter().enumerate() {
        let inner = binomial_pole_sum(beta, s + n as f64, crate::specfun::MAX_SERIES_TERMS)?;
        let t = c * rn * inner.value;
        sum += t;
        err += (c * rn * inner.abs_err).abs();
        last = t.abs();
        rn *= r;
    }
    if n_max > 0 && last > TAIL_FRACTION * sum.abs() {
        return Err(Error::non_convergence("two-mass tail series", lead * sum, lead * last));
    }
    let truncation = last * r / (1.0 - r);
    Ok((lead * sum, (lead * (err + truncation)).abs()))
}

/// Two-mass integral from its split at `p² = M²`: a finite-range quadrature
/// piece plus the continued tail series truncated at `n_max`.
pub fn two_mass_series(p: &Params, n_max: usize) -> Result<EvalResult> {
    let (beta, big) = p.require_hierarchy()?;
    require_regular(p)?;
    if n_max == 0 {
        return Err(Error::Domain("two_mass_series needs n_max >= 1".into()));
    }
    let half = 0.5 * p.d;
    let pref = big.powf(half - beta) * rgamma(half) / (4.0 * PI).powf(half);
    let (fin, fin_err) = two_mass_finite_piece(p, 0)?;
    let (tail, tail_err) = two_mass_tail(p, 0.0, n_max)?;
    let value = pref * (fin + tail);
    let err = pref.abs() * (fin_err + tail_err) + 8.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, err, Provenance::Series))
}
