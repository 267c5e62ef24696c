//! IR-completed families: the window cut-off `1/K ≤ p ≤ K`, the
//! separate-scale window `δ ≤ p ≤ K`, and the Gaussian with a lower limit.

use super::uv::{cutoff_eval, cutoff_series, gaussian_eval, gaussian_series, massless_power_integral};
use super::{check_denominator, check_non_integer, half_measure, EvalResult, FormComparison, Provenance, SchemeSpec};
use crate::dimreg::Params;
use crate::error::{Error, Result};
use crate::oracle::{scheme_oracle, Radial, DEFAULT_REL_TOL};
use crate::series::{Bindings, FormalSeries, Scale, SymbolicExponent, Term};
use crate::specfun::{gamma, neg_binomials, tricomi_u};

fn require_one_mass(p: &Params) -> Result<()> {
    p.validate()?;
    if p.is_two_mass() {
        return Err(Error::Domain("IR-completed closed forms take one propagator".into()));
    }
    Ok(())
}

/// `1/K ≤ p ≤ K`: the difference of two cut-off integrals, or the closed
/// massless form when `m² = 0`. `K = 1` is the empty window.
pub fn ir_window_eval(p: &Params, k: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    SchemeSpec::IrWindow { k }.validate()?;
    if k == 1.0 {
        return Ok(EvalResult::new(0.0, 0.0, Provenance::ClosedForm));
    }
    window_eval(p, k, 1.0 / k)
}

/// `δ ≤ p ≤ K`, built exactly like [`ir_window_eval`].
pub fn separate_cutoff_eval(p: &Params, k: f64, delta: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    SchemeSpec::SeparateCutoff { k, delta }.validate()?;
    window_eval(p, k, delta)
}

fn window_eval(p: &Params, hi: f64, lo: f64) -> Result<EvalResult> {
    if p.m2 == 0.0 {
        let v = massless_power_integral(p.d, p.alpha, lo, hi)?;
        return Ok(EvalResult::new(v, 16.0 * f64::EPSILON * v.abs(), Provenance::ClosedForm));
    }
    let upper = cutoff_eval(p, hi)?;
    let lower = cutoff_eval(p, lo)?;
    Ok(EvalResult::new(
        upper.value - lower.value,
        upper.abs_err + lower.abs_err,
        Provenance::ClosedForm,
    ))
}

/// Terms of `-Ĩ(λ, m)` for a lower cut-off `λ` below the mass:
/// `-Σ_n binom(-α,n) (m²)^{-α-n} λ^{d+2n} / ((d/2+n)(4π)^{d/2}Γ(d/2))`,
/// with `λ = 1/K` (`inverse`) or `λ = δ`.
fn lower_cutoff_terms(p: &Params, scale: Scale, inverse: bool, n_max: usize, out: &mut FormalSeries) {
    let pref = half_measure(p.d);
    let sign = if inverse { -1 } else { 1 };
    let mut m2pow = p.m2.powf(-p.alpha);
    for (n, c) in neg_binomials(p.alpha, n_max).iter().enumerate() {
        let coeff = -pref * c * m2pow / (0.5 * p.d + n as f64);
        out.push(Term::power(coeff, scale, SymbolicExponent::ints(2 * n as i64, 1, 0, 0) * sign.into()));
        m2pow /= p.m2;
    }
}

fn massless_window_series(p: &Params, upper: (Scale, bool), lower: (Scale, bool)) -> Result<FormalSeries> {
    let e = p.d - 2.0 * p.alpha;
    check_denominator("massless window series", e)?;
    let c = 2.0 * half_measure(p.d) / e;
    let power = SymbolicExponent::ints(0, 1, -2, 0);
    let signed = |(scale, inverse): (Scale, bool)| {
        let sign: i64 = if inverse { -1 } else { 1 };
        (scale, power * sign.into())
    };
    let (su, eu) = signed(upper);
    let (sl, el) = signed(lower);
    let mut out = FormalSeries::new(Bindings::of(p)).with_note("exact");
    out.push(Term::power(c, su, eu));
    out.push(Term::power(-c, sl, el));
    Ok(out.normalize())
}

/// `Ĩ(K) - Ĩ(1/K)` expanded: the large-`K` cut-off series minus the
/// small-cut-off series in `1/K`. Needs `1/K < m < K`; the massless window
/// gives two opposite powers of `K` and no scale-free term.
pub fn ir_window_series(p: &Params, k: f64, n_max: usize) -> Result<FormalSeries> {
    require_one_mass(p)?;
    SchemeSpec::IrWindow { k }.validate()?;
    if p.m2 == 0.0 {
        return massless_window_series(p, (Scale::K, false), (Scale::K, true));
    }
    if !(k * k > p.m2 && k * k * p.m2 > 1.0) {
        return Err(Error::Domain(format!(
            "IR window series needs 1/K < m < K, got K = {k}, m2 = {}",
            p.m2
        )));
    }
    let mut out = cutoff_series(p, k, n_max)?;
    lower_cutoff_terms(p, Scale::K, true, n_max, &mut out);
    Ok(out.normalize())
}

/// `Ĩ(K) - Ĩ(δ)` expanded in `m/K` and `δ/m`.
pub fn separate_cutoff_series(p: &Params, k: f64, delta: f64, n_max: usize) -> Result<FormalSeries> {
    require_one_mass(p)?;
    SchemeSpec::SeparateCutoff { k, delta }.validate()?;
    if p.m2 == 0.0 {
        return massless_window_series(p, (Scale::K, false), (Scale::Delta, false));
    }
    if !(k * k > p.m2 && delta * delta < p.m2) {
        return Err(Error::Domain(format!(
            "separate cut-off series needs delta < m < K, got K = {k}, delta = {delta}, m2 = {}",
            p.m2
        )));
    }
    let mut out = cutoff_series(p, k, n_max)?;
    lower_cutoff_terms(p, Scale::Delta, false, n_max, &mut out);
    Ok(out.normalize())
}

/// `2/((4π)^{d/2}Γ(d/2)) ∫_δ^∞ e^{-δp²} p^{d-1} (p²+m²)^{-α} dp` by
/// quadrature of the defining integral.
pub fn gaussian_ir_eval(p: &Params, delta: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    let r = scheme_oracle(p, &SchemeSpec::GaussianIr { delta }, DEFAULT_REL_TOL)?;
    Ok(EvalResult::new(r.value, r.err_est, Provenance::Quadrature))
}

/// The Gaussian integral minus its `[0, δ]` piece; agrees with
/// [`gaussian_ir_eval`] and serves as its cross-check.
pub fn gaussian_ir_decomposition(p: &Params, delta: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    let full = gaussian_eval(p, delta)?;
    let piece = Radial::new(p).damped(delta, 0.0).integrate(0.0, Some(delta), 1e-12)?;
    let measure = 2.0 * half_measure(p.d);
    Ok(EvalResult::new(
        full.value - measure * piece.value,
        full.abs_err + measure * piece.err_est,
        full.provenance,
    ))
}

/// Massless lower-limited Gaussian against its confluent closed forms
/// `δ^{d-2α} e^{-δ³} U(1, b, δ³) / ((4π)^{d/2}Γ(d/2))`: `derived` uses
/// `b = d/2-α+1`, which follows from the defining integral, and
/// `alternative` uses `b = d/2-α`. A form is `None` where `U` degenerates.
pub fn gaussian_ir_massless_forms(d: f64, alpha: f64, delta: f64) -> Result<FormComparison> {
    let p = Params::one_mass(d, alpha, 0.0);
    let oracle = gaussian_ir_eval(&p, delta)?;
    let nu = 0.5 * d - alpha;
    let z = delta.powi(3);
    let pref = half_measure(d) * delta.powf(2.0 * nu) * (-z).exp();
    let form = |b: f64| tricomi_u(1.0, b, z).ok().map(|u| pref * u.value);
    Ok(FormComparison {
        oracle: oracle.value,
        oracle_err: oracle.abs_err,
        derived: form(nu + 1.0),
        alternative: form(nu),
    })
}

/// Small-`δ` expansion: the Gaussian series minus the expanded `[0, δ]`
/// piece `Σ_{n,j} (-1)^j binom(-α,n) (m²)^{-α-n} δ^{d+2n+3j} / (j!(d/2+n+j))`.
/// Massless: `Γ(ν)δ^{-ν} - Σ_j (-1)^j δ^{2ν+3j} / (j!(ν+j))`, `ν = d/2-α`,
/// both over `(4π)^{d/2}Γ(d/2)`.
pub fn gaussian_ir_series(p: &Params, delta: f64, n_max: usize) -> Result<FormalSeries> {
    require_one_mass(p)?;
    SchemeSpec::GaussianIr { delta }.validate()?;
    let pref = half_measure(p.d);
    if p.m2 == 0.0 {
        let nu = 0.5 * p.d - p.alpha;
        check_non_integer("gaussian_ir_series", nu)?;
        let mut out = FormalSeries::new(Bindings::of(p))
            .with_note(format!("j <= {n_max}; dropped order delta^(3*{})", n_max + 1));
        out.push(Term::power(
            pref * gamma(nu)?.value,
            Scale::Delta,
            SymbolicExponent::ints(0, 0, 1, 0) - SymbolicExponent::half_d(),
        ));
        let mut fact = 1.0;
        for j in 0..=n_max {
            if j > 0 {
                fact *= j as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.push(Term::power(
                -pref * sign / (fact * (nu + j as f64)),
                Scale::Delta,
                SymbolicExponent::ints(3 * j as i64, 1, -2, 0),
            ));
        }
        return Ok(out.normalize());
    }
    if !(delta * delta < p.m2) {
        return Err(Error::Domain(format!(
            "Gaussian IR series needs delta < m, got delta = {delta}, m2 = {}",
            p.m2
        )));
    }
    let mut out = gaussian_series(p, delta, n_max)?;
    let mut m2pow = p.m2.powf(-p.alpha);
    for (n, c) in neg_binomials(p.alpha, n_max).iter().enumerate() {
        let mut fact = 1.0;
        for j in 0..=n_max {
            if j > 0 {
                fact *= j as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = -pref * sign * c * m2pow / (fact * (0.5 * p.d + (n + j) as f64));
            out.push(Term::power(
                coeff,
                Scale::Delta,
                SymbolicExponent::ints((2 * n + 3 * j) as i64, 1, 0, 0),
            ));
        }
        m2pow /= p.m2;
    }
    Ok(out.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimreg::master_one_loop;
    use crate::series::scale_values;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn measure3() -> f64 {
        1.0 / (2.0 * PI * PI)
    }

    #[test]
    fn window_examples() {
        let massless = Params::one_mass(3.0, 1.0, 0.0);
        let v = ir_window_eval(&massless, 10.0).unwrap().value;
        // massless window with the measure's Γ(d/2): 2·9.9·measure/2
        assert!(rel(v, 9.9 * measure3()) < 1e-14);
        let p = Params::one_mass(3.0, 1.0, 1.0);
        let w = ir_window_eval(&p, 10.0).unwrap().value;
        let diff = cutoff_eval(&p, 10.0).unwrap().value - cutoff_eval(&p, 0.1).unwrap().value;
        assert_eq!(w.to_bits(), diff.to_bits());
        assert_eq!(ir_window_eval(&p, 1.0).unwrap().value, 0.0);
        assert!(ir_window_eval(&p, 0.5).is_err());
        assert!(ir_window_eval(&Params::one_mass(2.0, 1.0, 0.0), 3.0).unwrap_err().is_pole());
    }

    #[test]
    fn separate_window_examples() {
        let massless = Params::one_mass(3.0, 1.0, 0.0);
        let v = separate_cutoff_eval(&massless, 10.0, 0.1).unwrap().value;
        assert!(rel(v, 9.9 * measure3()) < 1e-14);
        let p = Params::one_mass(3.0, 1.0, 1.0);
        let a = separate_cutoff_eval(&p, 10.0, 0.1).unwrap().value;
        let b = ir_window_eval(&p, 10.0).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn massless_window_series_extract_to_nothing() {
        let s = ir_window_series(&Params::one_mass(3.0, 1.0, 0.0), 10.0, 5).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.extract_scale(Scale::K).is_empty());
        let v = s.eval_at(&scale_values(&[(Scale::K, 10.0)])).unwrap();
        assert!(rel(v, 9.9 * measure3()) < 1e-14);
    }

    #[test]
    fn window_series_totals() {
        let p = Params::one_mass(3.0, 0.4, 1.0);
        let s = ir_window_series(&p, 100.0, 30).unwrap();
        let v = s.eval_at(&scale_values(&[(Scale::K, 100.0)])).unwrap();
        assert!(rel(v, ir_window_eval(&p, 100.0).unwrap().value) < 1e-10);
        let s = separate_cutoff_series(&p, 100.0, 0.01, 30).unwrap();
        let v = s
            .eval_at(&scale_values(&[(Scale::K, 100.0), (Scale::Delta, 0.01)]))
            .unwrap();
        assert!(rel(v, separate_cutoff_eval(&p, 100.0, 0.01).unwrap().value) < 1e-10);
        let free = s.extract_multi(&[Scale::K, Scale::Delta]).eval_at(&Default::default()).unwrap();
        assert_eq!(free, master_one_loop(&p).unwrap().value);
    }

    #[test]
    fn gaussian_ir_cross_checks() {
        let p = Params::one_mass(3.0, 2.0, 1.0);
        let a = gaussian_ir_eval(&p, 0.01).unwrap().value;
        let b = gaussian_ir_decomposition(&p, 0.01).unwrap().value;
        assert!(rel(a, b) < 1e-8);
        let s = gaussian_ir_series(&p.with_alpha(1.3), 0.01, 20).unwrap();
        let v = s.eval_at(&scale_values(&[(Scale::Delta, 0.01)])).unwrap();
        let e = gaussian_ir_eval(&p.with_alpha(1.3), 0.01).unwrap().value;
        assert!(rel(v, e) < 1e-8, "{v} vs {e}");
    }

    #[test]
    fn gaussian_ir_massless_forms_disagree() {
        let f = gaussian_ir_massless_forms(3.0, 0.7, 0.1).unwrap();
        assert!(rel(f.derived.unwrap(), f.oracle) < 1e-8);
        assert!(rel(f.alternative.unwrap(), f.oracle) > 1e-3);
        // d = 3, α = 2: ν = -1/2, both b non-integer
        let f = gaussian_ir_massless_forms(3.0, 2.0, 0.1).unwrap();
        assert!(rel(f.derived.unwrap(), f.oracle) < 1e-8);
        let s = gaussian_ir_series(&Params::one_mass(3.0, 2.0, 0.0), 0.1, 20).unwrap();
        let v = s.eval_at(&scale_values(&[(Scale::Delta, 0.1)])).unwrap();
        assert!(rel(v, f.oracle) < 1e-8);
        assert!(s.extract_scale(Scale::Delta).is_empty());
    }
}
