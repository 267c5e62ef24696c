//! Two propagators `(p²+m²)^{-α} (p²+M²)^{-β}` under the UV cut-off and the
//! Gaussian damping. All operations take `M² ≥ m² > 0`.

use std::f64::consts::PI;

use super::{check_denominator, check_non_integer, check_tail, half_measure, EvalResult, Provenance, SchemeSpec};
use crate::dimreg::{converged_tail_terms, two_mass_finite_piece, two_mass_series, two_mass_tail, Params};
use crate::error::{Error, Result};
use crate::oracle::{scheme_oracle, DEFAULT_REL_TOL};
use crate::series::{scale_values, Bindings, FormalSeries, Scale, SymbolicExponent, Term};
use crate::specfun::{appell_f1, gamma_val, neg_binomials, rgamma};

/// Cut-off value and large-`K` series.
pub fn two_mass_cutoff(p: &Params, k: f64, n_max: usize) -> Result<(EvalResult, FormalSeries)> {
    Ok((cutoff_value(p, k)?, cutoff_series(p, k, n_max)?))
}

/// Gaussian value by quadrature and small-`δ` series.
pub fn two_mass_gaussian(p: &Params, delta: f64, n_max: usize) -> Result<(EvalResult, FormalSeries)> {
    Ok((gaussian_value(p, delta)?, gaussian_series(p, delta, n_max)?))
}

/// `K^d / ((4π)^{d/2}Γ(1+d/2)) (m²)^{-α}(M²)^{-β} F1(d/2; α, β; 1+d/2; -K²/m², -K²/M²)`.
pub(crate) fn cutoff_value(p: &Params, k: f64) -> Result<EvalResult> {
    let (beta, big) = p.require_hierarchy()?;
    SchemeSpec::CutoffUv { k }.validate()?;
    let half = 0.5 * p.d;
    let k2 = k * k;
    let f = appell_f1(half, p.alpha, beta, 1.0 + half, -k2 / p.m2, -k2 / big)?;
    let pref = k.powf(p.d) * rgamma(1.0 + half) / (4.0 * PI).powf(half) * p.m2.powf(-p.alpha) * big.powf(-beta);
    let value = pref * f.value;
    Ok(EvalResult::new(
        value,
        (pref * f.abs_err).abs() + 16.0 * f64::EPSILON * value.abs(),
        Provenance::ClosedForm,
    ))
}

/// The two-mass integral as the scale-free term plus
/// `Σ_{n,k} binom(-α,n) binom(-β,k) (m²)^n (M²)^k K^{d-2α-2β-2n-2k} / ((d/2-α-β-n-k)(4π)^{d/2}Γ(d/2))`.
pub(crate) fn cutoff_series(p: &Params, k: f64, n_max: usize) -> Result<FormalSeries> {
    let (beta, big) = p.require_hierarchy()?;
    SchemeSpec::CutoffUv { k }.validate()?;
    if !(k * k > big) {
        return Err(Error::Domain(format!("two-mass cut-off series needs K^2 > M^2, got K = {k}, M2 = {big}")));
    }
    let pref = half_measure(p.d);
    let base = 0.5 * p.d - p.total_power();
    let ca = neg_binomials(p.alpha, n_max);
    let cb = neg_binomials(beta, n_max);
    let mut out = FormalSeries::new(Bindings::of(p))
        .with_note(format!("n, k <= {n_max}; dropped order K^(-2*{})", n_max + 1));
    let mut last = FormalSeries::new(Bindings::of(p));
    out.push(Term::scale_free(two_mass_series(p, converged_tail_terms(p))?.value));
    for n in 0..=n_max {
        for j in 0..=n_max {
            let den = base - (n + j) as f64;
            check_denominator("two_mass_cutoff series", den)?;
            let c = pref * ca[n] * cb[j] * p.m2.powi(n as i32) * big.powi(j as i32) / den;
            let term = Term::power(c, Scale::K, SymbolicExponent::ints(-2 * (n + j) as i64, 1, -2, -2));
            if n + j == n_max {
                last.push(term.clone());
            }
            out.push(term);
        }
    }
    let at = scale_values(&[(Scale::K, k)]);
    check_tail("two-mass cut-off series", &out, &last, &at)?;
    Ok(out.normalize())
}

pub(crate) fn gaussian_value(p: &Params, delta: f64) -> Result<EvalResult> {
    p.require_hierarchy()?;
    let r = scheme_oracle(p, &SchemeSpec::GaussianUv { delta }, DEFAULT_REL_TOL)?;
    Ok(EvalResult::new(r.value, r.err_est, Provenance::Quadrature))
}

/// Split at `p² = M²`. Below: `Σ_j (-δM²)^j/j!` times finite-range
/// integrals. Above: exponential integrals, expanded into integer powers
/// of `δ` with continued coefficients, plus
/// `Σ_{n,k} binom(-α,n) binom(-β,k) r^n Γ(-s-n-k) (δM²)^{s+n+k}`,
/// `s = α+β-d/2`, `r = m²/M²`. The `δ`-free part is the two-mass integral.
pub(crate) fn gaussian_series(p: &Params, delta: f64, n_max: usize) -> Result<FormalSeries> {
    let (beta, big) = p.require_hierarchy()?;
    SchemeSpec::GaussianUv { delta }.validate()?;
    if !(delta * big < 1.0) {
        return Err(Error::Domain(format!("two-mass Gaussian series needs delta*M2 < 1, got {}", delta * big)));
    }
    let half = 0.5 * p.d;
    let s = p.total_power() - half;
    check_non_integer("two_mass_gaussian series", s)?;
    let pref = half_measure(p.d) * big.powf(half - beta);
    let mut out = FormalSeries::new(Bindings::of(p))
        .with_note(format!("n, k, j <= {n_max}; dropped order delta^{}", n_max + 1));
    let mut power = 1.0;
    for j in 0..=n_max {
        let (fin, _) = two_mass_finite_piece(p, j)?;
        let (tail, _) = two_mass_tail(p, j as f64, converged_tail_terms(p))?;
        out.push(Term::power(pref * power * (fin + tail), Scale::Delta, SymbolicExponent::ints(j as i64, 0, 0, 0)));
        power *= -big / (j + 1) as f64;
    }
    let ca = neg_binomials(p.alpha, n_max);
    let cb = neg_binomials(beta, n_max);
    let r = p.m2 / big;
    let lead = pref * big.powf(-p.alpha);
    for n in 0..=n_max {
        for k in 0..=n_max {
            let sigma = s + (n + k) as f64;
            let c = lead * ca[n] * cb[k] * r.powi(n as i32) * gamma_val(-sigma)? * big.powf(sigma);
            out.push(Term::power(c, Scale::Delta, SymbolicExponent::ints(2 * (n + k) as i64, -1, 2, 2) * one_half()));
        }
    }
    Ok(out.normalize())
}

fn one_half() -> crate::series::Rational {
    crate::series::Rational::new(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimreg::two_mass_master;
    use crate::schemes::{cutoff_eval, gaussian_eval};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn cutoff_value_against_oracle() {
        let p = Params::two_mass(3.0, 1.0, 1.0, 1.0, 4.0);
        let v = cutoff_value(&p, 1e3).unwrap().value;
        let o = scheme_oracle(&p, &SchemeSpec::CutoffUv { k: 1e3 }, 1e-12).unwrap().value;
        assert!(rel(v, o) < 1e-8, "{v} vs {o}");
    }

    #[test]
    fn equal_masses_merge() {
        let p = Params::two_mass(3.0, 1.2, 0.7, 2.0, 2.0);
        let v = cutoff_value(&p, 10.0).unwrap().value;
        let e = cutoff_eval(&Params::one_mass(3.0, 1.9, 2.0), 10.0).unwrap().value;
        assert!(rel(v, e) < 1e-10);
        let g = gaussian_series(&Params::two_mass(3.0, 1.3, 0.0, 1.0, 1.0), 1e-3, 12).unwrap();
        let at = scale_values(&[(Scale::Delta, 1e-3)]);
        let e = gaussian_eval(&Params::one_mass(3.0, 1.3, 1.0), 1e-3).unwrap().value;
        assert!(rel(g.eval_at(&at).unwrap(), e) < 1e-8);
    }

    #[test]
    fn cutoff_series_scale_free_part() {
        let p = Params::two_mass(3.0, 1.0, 1.0, 1.0, 4.0);
        let (v, s) = two_mass_cutoff(&p, 1e3, 10).unwrap();
        let at = scale_values(&[(Scale::K, 1e3)]);
        assert!(rel(s.eval_at(&at).unwrap(), v.value) < 1e-10);
        let free = s.extract_scale(Scale::K).eval_at(&at).unwrap();
        assert!(rel(free, two_mass_master(&p).unwrap().value) < 1e-8);
    }

    #[test]
    fn gaussian_series_total_and_scale_free_part() {
        let p = Params::two_mass(3.0, 1.0, 1.0, 1.0, 4.0);
        let (v, s) = two_mass_gaussian(&p, 1e-3, 15).unwrap();
        let o = scheme_oracle(&p, &SchemeSpec::GaussianUv { delta: 1e-3 }, 1e-12).unwrap().value;
        assert!(rel(v.value, o) < 1e-8);
        let at = scale_values(&[(Scale::Delta, 1e-3)]);
        assert!(rel(s.eval_at(&at).unwrap(), v.value) < 1e-8);
        let free = s.extract_scale(Scale::Delta).eval_at(&at).unwrap();
        assert!(rel(free, two_mass_master(&p).unwrap().value) < 1e-8);
    }

    #[test]
    fn hierarchy_is_enforced() {
        let p = Params::two_mass(3.0, 1.0, 1.0, 4.0, 1.0);
        assert!(matches!(two_mass_cutoff(&p, 10.0, 5), Err(Error::Domain(_))));
    }
}
