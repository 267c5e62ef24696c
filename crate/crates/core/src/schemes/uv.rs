use std::f64::consts::PI;

use super::{check_denominator, check_non_integer, check_tail, half_measure, EvalResult, Provenance};
use crate::dimreg::{master_one_loop, Params};
use crate::error::{near_integer, Error, Result};
use crate::oracle::{scheme_oracle, DEFAULT_REL_TOL};
use crate::series::{Bindings, FormalSeries, Scale, SymbolicExponent, Term};
use crate::specfun::{gamma, hyp2f1, neg_binomials, pochhammer, rgamma, tricomi_u};

fn require_one_mass(p: &Params) -> Result<()> {
    p.validate()?;
    if p.is_two_mass() {
        return Err(Error::Domain("use two_mass_cutoff / two_mass_gaussian for two propagators".into()));
    }
    Ok(())
}

/// Massless window integral `2/((4π)^{d/2}Γ(d/2)) ∫_lo^hi p^{d-1-2α} dp`.
pub(crate) fn massless_power_integral(d: f64, alpha: f64, lo: f64, hi: f64) -> Result<f64> {
    let e = d - 2.0 * alpha;
    check_denominator("massless window", e)?;
    let upper = hi.powf(e);
    let lower = if lo == 0.0 {
        if e < 0.0 {
            return Err(Error::DivergentInput(format!(
                "massless integrand diverges at p = 0 for d - 2 alpha = {e}"
            )));
        }
        0.0
    } else {
        lo.powf(e)
    };
    Ok(2.0 * half_measure(d) * (upper - lower) / e)
}

/// Sharp UV cut-off `p ≤ K`, through
/// `K^d / ((4π)^{d/2} Γ(1+d/2) (m²)^α) · 2F1(α, d/2; 1+d/2; -K²/m²)`.
/// Finite for every real `α`.
pub fn cutoff_eval(p: &Params, k: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("K must be positive, got {k}")));
    }
    let half = 0.5 * p.d;
    if p.m2 == 0.0 {
        let v = massless_power_integral(p.d, p.alpha, 0.0, k)?;
        return Ok(EvalResult::new(v, 8.0 * f64::EPSILON * v.abs(), Provenance::ClosedForm));
    }
    let f = hyp2f1(p.alpha, half, 1.0 + half, -k * k / p.m2)?;
    let pref = k.powf(p.d) * rgamma(1.0 + half) / (4.0 * PI).powf(half) * p.m2.powf(-p.alpha);
    let value = pref * f.value;
    let err = (pref * f.abs_err).abs() + 16.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, err, Provenance::ClosedForm))
}

/// Large-`K` expansion: the master integral as the single scale-free term
/// plus `Σ_n binom(-α,n) (m²)^n K^{d-2α-2n} / ((d/2-α-n)(4π)^{d/2}Γ(d/2))`.
pub fn cutoff_series(p: &Params, k: f64, n_max: usize) -> Result<FormalSeries> {
    require_one_mass(p)?;
    if !(p.m2 > 0.0 && k * k > p.m2) {
        return Err(Error::Domain(format!(
            "cut-off series needs K^2 > m2 > 0, got K = {k}, m2 = {}",
            p.m2
        )));
    }
    let half = 0.5 * p.d;
    for n in 0..=n_max {
        check_denominator("cutoff_series", half - p.alpha - n as f64)?;
    }
    let master = master_one_loop(p)?;
    let pref = half_measure(p.d);
    let coeffs = neg_binomials(p.alpha, n_max);
    let mut out = FormalSeries::new(Bindings::of(p)).with_note(format!(
        "K-terms n <= {n_max}; dropped order (m2/K^2)^{}",
        n_max + 1
    ));
    out.push(Term::scale_free(master.value));
    let mut m2n = 1.0;
    let mut last = FormalSeries::new(Bindings::of(p));
    for (n, c) in coeffs.iter().enumerate() {
        let nf = n as f64;
        let term = Term::power(
            pref * c * m2n / (half - p.alpha - nf),
            Scale::K,
            SymbolicExponent::ints(-2 * n as i64, 1, -2, 0),
        );
        if n == n_max {
            last.push(term.clone());
        }
        out.push(term);
        m2n *= p.m2;
    }
    let out = out.normalize();
    check_tail("cut-off series", &out, &last, &crate::series::scale_values(&[(Scale::K, k)]))?;
    Ok(out)
}

/// The `d = 4, α = 2` radial integral `2∫_0^K p³/(p²+m²)² dp`
/// `= ln(1+K²/m²) - K²/(m²+K²)` expanded for large `K` with the logarithm
/// split into `2 ln K` (scale-dependent) and `-ln m²` (scale-free).
pub fn cutoff_log_radial_series(m2: f64, n_max: usize) -> Result<FormalSeries> {
    if !(m2 > 0.0) {
        return Err(Error::Domain(format!("m2 must be positive, got {m2}")));
    }
    let mut out = FormalSeries::new(Bindings {
        d: 4.0,
        alpha: 2.0,
        beta: 0.0,
    })
    .with_note(format!("dropped order (m2/K^2)^{}", n_max + 1));
    out.push(Term::scale_free(2.0).times_log(Scale::K, 1));
    out.push(Term::scale_free(-m2.ln() - 1.0));
    let mut m2j = 1.0;
    for j in 1..=n_max {
        m2j *= m2;
        let jf = j as f64;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        out.push(Term::power(
            sign * m2j * (1.0 / jf + 1.0),
            Scale::K,
            SymbolicExponent::ints(-2 * j as i64, 0, 0, 0),
        ));
    }
    Ok(out.normalize())
}

/// Gaussian damping `e^{-δp²}`, through
/// `(m²)^{d/2-α}/(4π)^{d/2} · U(d/2, d/2+1-α, m²δ)`.
///
/// When the connection formula for `U` degenerates (integer `d/2+1-α`) or
/// loses accuracy, the defining integral is evaluated by quadrature
/// instead; the provenance records which path was taken.
pub fn gaussian_eval(p: &Params, delta: f64) -> Result<EvalResult> {
    require_one_mass(p)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let half = 0.5 * p.d;
    if p.m2 == 0.0 {
        let nu = half - p.alpha;
        if nu <= 0.0 {
            return Err(Error::DivergentInput(format!(
                "massless Gaussian integral diverges at p = 0 for d/2 - alpha = {nu}"
            )));
        }
        let g = gamma(nu)?;
        let v = half_measure(p.d) * g.value * delta.powf(-nu);
        return Ok(EvalResult::new(v, v.abs() * (g.rel_err() + 8.0 * f64::EPSILON), Provenance::ClosedForm));
    }
    let b = half + 1.0 - p.alpha;
    if !near_integer(b) {
        let u = tricomi_u(half, b, p.m2 * delta)?;
        if u.rel_err() < 1e-11 {
            let pref = p.m2.powf(half - p.alpha) / (4.0 * PI).powf(half);
            let value = pref * u.value;
            return Ok(EvalResult::new(
                value,
                (pref * u.abs_err).abs() + 8.0 * f64::EPSILON * value.abs(),
                Provenance::ClosedForm,
            ));
        }
    }
    let r = scheme_oracle(p, &super::SchemeSpec::GaussianUv { delta }, DEFAULT_REL_TOL)?;
    Ok(EvalResult::new(r.value, r.err_est, Provenance::Quadrature)
        .with_note("connection formula unusable here; defining integral"))
}

/// Small-`δ` expansion from the two branches of the Kummer connection
/// formula. The `δ`-free part is exactly the master integral; the first
/// branch carries integer powers `δ^n`, the second `δ^{α-d/2+n}`.
pub fn gaussian_series(p: &Params, delta: f64, n_max: usize) -> Result<FormalSeries> {
    require_one_mass(p)?;
    if !(p.m2 > 0.0 && delta > 0.0 && delta * p.m2 < 1.0) {
        return Err(Error::Domain(format!(
            "Gaussian series needs 0 < delta*m2 < 1, got delta = {delta}, m2 = {}",
            p.m2
        )));
    }
    let half = 0.5 * p.d;
    check_non_integer("gaussian_series", p.alpha - half)?;
    let master = master_one_loop(p)?.value;
    let g2 = gamma(half - p.alpha)?.value * rgamma(half) / (4.0 * PI).powf(half);
    let b1 = half + 1.0 - p.alpha;
    let b2 = p.alpha + 1.0 - half;
    let mut out = FormalSeries::new(Bindings::of(p)).with_note(format!(
        "both branches n <= {n_max}; dropped order (m2*delta)^{}",
        n_max + 1
    ));
    let mut last = FormalSeries::new(Bindings::of(p));
    out.push(Term::scale_free(master));
    let mut fact = 1.0;
    let mut m2n = 1.0;
    for n in 0..=n_max {
        if n > 0 {
            fact *= n as f64;
            m2n *= p.m2;
            let c1 = master * pochhammer(half, n) / (pochhammer(b1, n) * fact) * m2n;
            let t = Term::power(c1, Scale::Delta, SymbolicExponent::ints(n as i64, 0, 0, 0));
            if n == n_max {
                last.push(t.clone());
            }
            out.push(t);
        }
        let c2 = g2 * pochhammer(p.alpha, n) / (pochhammer(b2, n) * fact) * m2n;
        let e = SymbolicExponent::ints(n as i64, 0, 1, 0) - SymbolicExponent::half_d();
        let t = Term::power(c2, Scale::Delta, e);
        if n == n_max {
            last.push(t.clone());
        }
        out.push(t);
    }
    let out = out.normalize();
    check_tail(
        "Gaussian series",
        &out,
        &last,
        &crate::series::scale_values(&[(Scale::Delta, delta)]),
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scale_values;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn cutoff_examples() {
        let v = cutoff_eval(&Params::one_mass(3.0, 1.0, 1.0), 10.0).unwrap().value;
        assert!(rel(v, (10.0 - 10f64.atan()) / (2.0 * PI * PI)) < 1e-12);
        // d = 4: measure 2/((4π)²Γ(2)) = 1/(8π²)
        let v = cutoff_eval(&Params::one_mass(4.0, 2.0, 1.0), 1.0).unwrap().value;
        assert!(rel(v * 8.0 * PI * PI, 0.5 * (2f64.ln() - 0.5)) < 1e-12);
        // α = -1: ∫_0^2 p²(p²+1) dp = 32/5 + 8/3
        let v = cutoff_eval(&Params::one_mass(3.0, -1.0, 1.0), 2.0).unwrap().value;
        assert!(rel(v * 2.0 * PI * PI, 32.0 / 5.0 + 8.0 / 3.0) < 1e-12);
    }

    #[test]
    fn cutoff_series_examples() {
        let p = Params::one_mass(3.0, 1.0, 1.0);
        let s = cutoff_series(&p, 1e4, 20).unwrap();
        let total = s.eval_at(&scale_values(&[(Scale::K, 1e4)])).unwrap();
        let closed = cutoff_eval(&p, 1e4).unwrap().value;
        assert!(rel(total, closed) < 1e-10, "{total} vs {closed}");
        let free = s.scale_free_part().eval_at(&Default::default()).unwrap();
        assert!(rel(free, -1.0 / (4.0 * PI)) < 1e-14);
        let e = cutoff_series(&Params::one_mass(4.0, 2.0, 1.0), 10.0, 5).unwrap_err();
        assert!(e.is_pole());
        assert!(e.to_string().contains("d - 2*eps"));
    }

    #[test]
    fn gaussian_examples() {
        let p = Params::one_mass(3.0, 1.0, 1.0);
        let s = gaussian_series(&p, 1e-4, 10).unwrap();
        let total = s.eval_at(&scale_values(&[(Scale::Delta, 1e-4)])).unwrap();
        let closed = gaussian_eval(&p, 1e-4).unwrap().value;
        assert!(rel(total, closed) < 1e-6);
        let free = s.scale_free_part().eval_at(&Default::default()).unwrap();
        assert!(rel(free, -1.0 / (4.0 * PI)) < 1e-14);
    }

    #[test]
    fn gaussian_first_branch_correction() {
        let (d, a, m2) = (3.0, 0.3, 2.0);
        let p = Params::one_mass(d, a, m2);
        let s = gaussian_series(&p, 1e-3, 4).unwrap();
        let leading = master_one_loop(&p).unwrap().value;
        let first = s
            .terms
            .iter()
            .find(|t| t.scales.get(&Scale::Delta).map(|e| e.exponent) == Some(SymbolicExponent::ints(1, 0, 0, 0)))
            .unwrap();
        assert!(rel(first.coeff, d * m2 / (d + 2.0 - 2.0 * a) * leading) < 1e-14);
    }

    #[test]
    fn gaussian_small_delta_gap_follows_second_branch() {
        // d = 3, α = 2: relative gap to 1/(8π) is Γ(-1/2)Γ(2)/(Γ(3/2)Γ(1/2)) δ^{1/2} + 3δ + ...
        let p = Params::one_mass(3.0, 2.0, 1.0);
        let v = gaussian_eval(&p, 1e-6).unwrap().value;
        let gap = v * 8.0 * PI - 1.0;
        let predicted = -4.0 / PI.sqrt() * 1e-3 + 3e-6;
        assert!((gap - predicted).abs() < 1e-7, "{gap} vs {predicted}");
    }

    #[test]
    fn gaussian_integer_b_uses_quadrature() {
        let p = Params::one_mass(3.0, 2.5, 1.0);
        let r = gaussian_eval(&p, 0.1).unwrap();
        assert_eq!(r.provenance, Provenance::Quadrature);
        assert!(r.value.is_finite() && r.value > 0.0);
        assert!(gaussian_series(&p, 0.1, 5).unwrap_err().is_pole());
    }

    #[test]
    fn log_case_series_matches_closed_form() {
        let s = cutoff_log_radial_series(1.0, 12).unwrap();
        for k in [10.0f64, 100.0] {
            let exact = (1.0 + k * k).ln() - k * k / (1.0 + k * k);
            let v = s.eval_at(&scale_values(&[(Scale::K, k)])).unwrap();
            assert!((v - exact).abs() < 1e-12 * exact.abs());
        }
        let free = s.scale_free_part().eval_at(&Default::default()).unwrap();
        assert_eq!(free, -1.0);
    }
}
