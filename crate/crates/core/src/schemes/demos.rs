//! Two regulators that only work for positive propagator powers: a Mellin
//! monomial `(p²)^z` and a quartic term `a p⁴` added to the denominator.

use std::f64::consts::PI;

use super::{EvalResult, Provenance, SchemeSpec};
use crate::dimreg::Params;
use crate::error::{Error, Result};
use crate::specfun::{beta_series, MAX_SERIES_TERMS};

/// Mellin: `∫_0^∞ u^{d/2+z-1} (1+u)^{-α} du = B(d/2+z, α-z-d/2)` in units of
/// the mass. Quartic: `∫_0^∞ x² / (a x⁴ + x² + 1) dx`, the unit-mass
/// `d = 3`, `α = 1` radial integrand, equal to
/// `π/(2a) (√w₊ - √w₋)/(w₊ - w₋)` with `w± = (1 ± √(1-4a))/(2a)`.
///
/// Neither regulator tames `α ≤ 0`; those return `DivergentInput`.
pub fn incomplete_demo(p: &Params, s: &SchemeSpec) -> Result<EvalResult> {
    p.validate()?;
    s.validate()?;
    if p.is_two_mass() {
        return Err(Error::Domain("demonstration regulators take one propagator".into()));
    }
    if p.alpha <= 0.0 {
        return Err(Error::DivergentInput(format!(
            "{} does not regulate alpha = {} <= 0: the integrand grows at large p",
            s.family(),
            p.alpha
        )));
    }
    match *s {
        SchemeSpec::MellinDemo { z } => {
            let x = 0.5 * p.d + z;
            let b = beta_series(x, p.alpha - x, MAX_SERIES_TERMS)?;
            Ok(EvalResult::new(b.value, b.abs_err, Provenance::Demo))
        }
        SchemeSpec::QuarticDemo { a } => {
            if p.d != 3.0 || p.alpha != 1.0 {
                return Err(Error::Domain(format!(
                    "the quartic closed form is fixed to d = 3, alpha = 1, got d = {}, alpha = {}",
                    p.d, p.alpha
                )));
            }
            let root = (1.0 - 4.0 * a).sqrt();
            let (wp, wm) = ((1.0 + root) / (2.0 * a), (1.0 - root) / (2.0 * a));
            // (√w₊ - √w₋)/(w₊ - w₋) = 1/(√w₊ + √w₋), which avoids the cancellation
            let value = PI / (2.0 * a) / (wp.sqrt() + wm.sqrt());
            Ok(EvalResult::new(value, 4.0 * f64::EPSILON * value, Provenance::Demo))
        }
        _ => Err(Error::Domain(format!("{} is not a demonstration regulator", s.family()))),
    }
}

/// The `a → 0` value the quartic form would need to continue to,
/// `B(3/2, -1/2)/2 = -π/2`, through the continued beta series.
pub fn quartic_continuation_target() -> Result<f64> {
    Ok(0.5 * beta_series(1.5, -0.5, MAX_SERIES_TERMS)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::scheme_oracle;
    use crate::specfun::gamma;

    #[test]
    fn quartic_matches_oracle_and_closed_form() {
        let p = Params::one_mass(3.0, 1.0, 1.0);
        let s = SchemeSpec::QuarticDemo { a: 0.01 };
        let v = incomplete_demo(&p, &s).unwrap();
        assert_eq!(v.provenance, Provenance::Demo);
        let o = scheme_oracle(&p, &s, 1e-12).unwrap().value;
        assert!((v.value - o).abs() / o < 1e-8);
        let (wp, wm) = ((1.0 + 0.96f64.sqrt()) / 0.02, (1.0 - 0.96f64.sqrt()) / 0.02);
        let direct = PI / 0.02 * (wp.sqrt() - wm.sqrt()) / (wp - wm);
        assert!((v.value - direct).abs() / direct < 1e-12);
    }

    #[test]
    fn continuation_target() {
        assert!((quartic_continuation_target().unwrap() + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn mellin_is_a_beta_function() {
        let v = incomplete_demo(&Params::one_mass(3.0, 2.0, 1.0), &SchemeSpec::MellinDemo { z: 0.1 }).unwrap();
        let b = gamma(1.6).unwrap().value * gamma(0.4).unwrap().value / gamma(2.0).unwrap().value;
        assert!((v.value - b).abs() / b < 1e-12);
    }

    #[test]
    fn non_positive_powers_fail() {
        for alpha in [0.0, -0.5, -2.0] {
            for s in [SchemeSpec::MellinDemo { z: 0.1 }, SchemeSpec::QuarticDemo { a: 0.01 }] {
                let e = incomplete_demo(&Params::one_mass(3.0, alpha, 1.0), &s).unwrap_err();
                assert!(matches!(e, Error::DivergentInput(_)));
            }
        }
    }
}
