//! Two-sided Gaussian damping `e^{-δp² - ξ/p²}`. The equal-scale family
//! is the special case `ξ = δ`.

use super::{check_non_integer, half_measure, EvalResult, FormComparison, Provenance, SchemeSpec};
use crate::dimreg::Params;
use crate::error::{Error, Result};
use crate::oracle::{scheme_oracle, DEFAULT_REL_TOL};
use crate::series::{Bindings, FormalSeries, Scale, SymbolicExponent, Term};
use crate::specfun::{bessel_k, binomial_pole_sum, gamma_val, neg_binomials, MAX_SERIES_TERMS};

/// Value of the two-sided family. The massless case uses the Bessel
/// closed form; everything else goes to quadrature.
pub fn two_sided_eval(p: &Params, delta: f64, xi: f64) -> Result<EvalResult> {
    p.validate()?;
    SchemeSpec::SeparateTwoSided { delta, xi }.validate()?;
    if p.m2 == 0.0 && !p.is_two_mass() {
        return two_sided_massless_closed(p.d, p.alpha, delta, xi);
    }
    let r = scheme_oracle(p, &SchemeSpec::SeparateTwoSided { delta, xi }, DEFAULT_REL_TOL)?;
    Ok(EvalResult::new(r.value, r.err_est, Provenance::Quadrature))
}

/// `2/((4π)^{d/2}Γ(d/2)) (ξ/δ)^{ν/2} K_ν(2√(ξδ))` with `ν = d/2-α`.
pub fn two_sided_massless_closed(d: f64, alpha: f64, delta: f64, xi: f64) -> Result<EvalResult> {
    SchemeSpec::SeparateTwoSided { delta, xi }.validate()?;
    let nu = 0.5 * d - alpha;
    let k = bessel_k(nu, 2.0 * (xi * delta).sqrt())?;
    let pref = 2.0 * half_measure(d) * (xi / delta).powf(0.5 * nu);
    Ok(EvalResult::new(pref * k.value, (pref * k.abs_err).abs(), Provenance::ClosedForm))
}

/// Massless two-sided family: quadrature against the derived Bessel form
/// and the alternative `δ^{α-d/2} K_{α-d/2}(2√(ξδ)) / ((4π)^{d/2}Γ(d/2))`.
pub fn two_sided_massless_forms(d: f64, alpha: f64, delta: f64, xi: f64) -> Result<FormComparison> {
    let p = Params::one_mass(d, alpha, 0.0);
    let r = scheme_oracle(&p, &SchemeSpec::SeparateTwoSided { delta, xi }, DEFAULT_REL_TOL)?;
    let derived = two_sided_massless_closed(d, alpha, delta, xi).ok().map(|e| e.value);
    let nu = 0.5 * d - alpha;
    let alternative = bessel_k(-nu, 2.0 * (xi * delta).sqrt())
        .ok()
        .map(|k| half_measure(d) * delta.powf(-nu) * k.value);
    Ok(FormComparison {
        oracle: r.value,
        oracle_err: r.err_est,
        derived,
        alternative,
    })
}

fn signed_factorials(x: f64, n_max: usize) -> Vec<f64> {
    // (-x)^k / k!
    let mut out = Vec::with_capacity(n_max + 1);
    let mut t = 1.0;
    for k in 0..=n_max {
        out.push(t);
        t *= -x / (k + 1) as f64;
    }
    out
}

/// Expansion in both scales, `n_max` terms per summation index.
///
/// Splitting the radial integral at `p = m` gives four pieces: two with
/// `Γ(-d/2-n-k)` and `Γ(d/2-α-n-k)` carrying non-integer powers of `ξ`
/// and `δ`, and two double power series whose coefficients are the
/// continued sums `Σ_n binom(-α,n)/(n+c)`. The scale-free term is the
/// master integral; integer `d/2` or `α-d/2` are poles.
///
/// Massless: `Γ(ν)δ^{-ν} Σ_k (ξδ)^k/(k!(1-ν)_k) + Γ(-ν)ξ^ν Σ_k (ξδ)^k/(k!(1+ν)_k)`
/// over `(4π)^{d/2}Γ(d/2)`, with no scale-free term.
pub fn two_sided_series(p: &Params, delta: f64, xi: f64, n_max: usize) -> Result<FormalSeries> {
    p.validate()?;
    if p.is_two_mass() {
        return Err(Error::Domain("two-sided series takes one propagator".into()));
    }
    SchemeSpec::SeparateTwoSided { delta, xi }.validate()?;
    let half = 0.5 * p.d;
    let pref = half_measure(p.d);
    let note = format!("each index <= {n_max}");
    let mut out = FormalSeries::new(Bindings::of(p)).with_note(note);
    if p.m2 == 0.0 {
        let nu = half - p.alpha;
        check_non_integer("two_sided_series", nu)?;
        let (mut lo, mut hi) = (pref * gamma_val(nu)?, pref * gamma_val(-nu)?);
        for k in 0..=n_max {
            let kk = k as i64;
            out.push(
                Term::power(lo, Scale::Delta, SymbolicExponent::ints(2 * kk, -1, 2, 0) * half_rational())
                    .times_power(Scale::Xi, SymbolicExponent::ints(kk, 0, 0, 0)),
            );
            out.push(
                Term::power(hi, Scale::Xi, SymbolicExponent::ints(2 * kk, 1, -2, 0) * half_rational())
                    .times_power(Scale::Delta, SymbolicExponent::ints(kk, 0, 0, 0)),
            );
            let kf = (k + 1) as f64;
            lo /= kf * (kf - nu);
            hi /= kf * (kf + nu);
        }
        return Ok(out.normalize());
    }
    check_non_integer("two_sided_series", half)?;
    check_non_integer("two_sided_series", p.alpha - half)?;
    let m2 = p.m2;
    let f0 = pref * m2.powf(half - p.alpha);
    let binom = neg_binomials(p.alpha, n_max);
    let a_pows = signed_factorials(m2, n_max);
    let b_pows = signed_factorials(1.0 / m2, n_max);
    let pole_sum = |c: f64| binomial_pole_sum(p.alpha, c, MAX_SERIES_TERMS).map(|v| v.value);
    let int = |k: usize| SymbolicExponent::ints(k as i64, 0, 0, 0);
    for n in 0..=n_max {
        for k in 0..=n_max {
            let s = n + k;
            // δ^k ξ^{d/2+n+k}
            let g = gamma_val(-half - s as f64)?;
            let c = f0 * binom[n] * a_pows[k] * g * m2.powf(-half - s as f64);
            out.push(
                Term::power(c, Scale::Delta, int(k))
                    .times_power(Scale::Xi, SymbolicExponent::ints(s as i64, 0, 0, 0) + SymbolicExponent::half_d()),
            );
            // ξ^k δ^{α-d/2+n+k}
            let g = gamma_val(half - p.alpha - s as f64)?;
            let c = f0 * binom[n] * b_pows[k] * g * m2.powf(p.alpha - half + s as f64);
            out.push(
                Term::power(c, Scale::Xi, int(k))
                    .times_power(Scale::Delta, SymbolicExponent::ints(s as i64, 0, 1, 0) - SymbolicExponent::half_d()),
            );
        }
    }
    for k in 0..=n_max {
        for j in 0..=n_max {
            let shift = k as f64 - j as f64;
            let low = f0 * a_pows[k] * b_pows[j] * pole_sum(half + shift)?;
            out.push(Term::power(low, Scale::Delta, int(k)).times_power(Scale::Xi, int(j)));
            let high = f0 * b_pows[k] * a_pows[j] * pole_sum(p.alpha - half + shift)?;
            out.push(Term::power(high, Scale::Xi, int(k)).times_power(Scale::Delta, int(j)));
        }
    }
    Ok(out.normalize())
}

fn half_rational() -> crate::series::Rational {
    crate::series::Rational::new(1, 2)
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

    #[test]
    fn massless_equal_scales_d3_alpha1() {
        // K_{1/2}(2δ) = √(π/(4δ)) e^{-2δ}
        let v = two_sided_eval(&Params::one_mass(3.0, 1.0, 0.0), 1.0, 1.0).unwrap().value;
        let expect = (PI.sqrt() / 2.0) * (-2.0f64).exp() / (2.0 * PI * PI);
        assert!(rel(v, expect) < 1e-10);
    }

    #[test]
    fn massless_forms() {
        let f = two_sided_massless_forms(3.0, 0.6, 0.3, 0.2).unwrap();
        assert!(f.deviation(f.derived).unwrap() < 1e-8);
        assert!(f.deviation(f.alternative).unwrap() > 1e-2);
    }

    #[test]
    fn massless_series_total() {
        let p = Params::one_mass(3.0, 0.6, 0.0);
        let s = two_sided_series(&p, 0.3, 0.7, 30).unwrap();
        let v = s.eval_at(&scale_values(&[(Scale::Delta, 0.3), (Scale::Xi, 0.7)])).unwrap();
        let e = two_sided_massless_closed(3.0, 0.6, 0.3, 0.7).unwrap().value;
        assert!(rel(v, e) < 1e-12);
        assert!(s.extract_multi(&[Scale::Delta, Scale::Xi]).is_empty());
    }

    #[test]
    fn massive_series_total_and_scale_free() {
        let p = Params::one_mass(3.0, 2.2, 1.0);
        let s = two_sided_series(&p, 0.05, 0.02, 25).unwrap();
        let at = scale_values(&[(Scale::Delta, 0.05), (Scale::Xi, 0.02)]);
        let v = s.eval_at(&at).unwrap();
        let e = two_sided_eval(&p, 0.05, 0.02).unwrap().value;
        assert!(rel(v, e) < 1e-8, "{v} vs {e}");
        let free = s.extract_multi(&[Scale::Delta, Scale::Xi]).eval_at(&at).unwrap();
        assert!(rel(free, master_one_loop(&p).unwrap().value) < 1e-12);
    }

    #[test]
    fn integer_half_d_is_a_pole() {
        let e = two_sided_series(&Params::one_mass(4.0, 2.5, 1.0), 0.1, 0.1, 5).unwrap_err();
        assert!(e.is_pole());
        assert!(e.to_string().contains("d - 2*eps"));
    }
}
