// Adaptive quadrature on finite and semi-infinite domains, and the
// brute-force oracle for every regulated family.

use loopreg::dimreg::Params;
use loopreg::error::Result;
use loopreg::oracle::{integrate, scheme_oracle, DecayHint, QuadratureRequest, DEFAULT_REL_TOL};
use loopreg::schemes::{scheme_eval, SchemeSpec};

pub fn run_example() -> Result<()> {
    let f = |x: f64| 1.0 / (1.0 + x * x);
    let r = integrate(&QuadratureRequest::semi_infinite(&f, 0.0, DecayHint::Power))?;
    println!("int_0^inf dx/(1+x^2) = {:.15} +- {:.1e} ({} subdivisions)", r.value, r.err_est, r.subdivisions_used);

    let g = |x: f64| (-x * x).exp();
    let r = integrate(&QuadratureRequest::semi_infinite(&g, 0.0, DecayHint::Gaussian))?;
    println!("int_0^inf e^(-x^2) dx = {:.15}", r.value);

    let p = Params::one_mass(3.5, 1.8, 0.5);
    for spec in [
        SchemeSpec::CutoffUv { k: 30.0 },
        SchemeSpec::GaussianUv { delta: 0.01 },
        SchemeSpec::SeparateTwoSided { delta: 0.1, xi: 0.2 },
    ] {
        let closed = scheme_eval(&p, &spec)?;
        let brute = scheme_oracle(&p, &spec, DEFAULT_REL_TOL)?;
        println!(
            "{:<20} closed {:.15} [{}]  oracle {:.15}",
            spec.family(),
            closed.value,
            closed.provenance.as_str(),
            brute.value
        );
        assert!((closed.value - brute.value).abs() < 1e-8 * brute.value.abs());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
