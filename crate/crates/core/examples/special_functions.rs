// Gamma, beta, Gauss and confluent hypergeometric functions, the
// generalized exponential integral, Bessel K and Appell F1, each with its
// own error estimate.

use loopreg::error::Result;
use loopreg::specfun::{appell_f1, beta_series, bessel_k, expint, gamma, hyp2f1, tricomi_u, MAX_SERIES_TERMS};

pub fn run_example() -> Result<()> {
    let g = gamma(-0.5)?;
    println!("Gamma(-1/2)          = {:.15} (-2 sqrt(pi))", g.value);
    assert!((g.value + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-13);

    // B(3/2, -1/2) lies outside the Euler integral and comes from continuation.
    let b = beta_series(1.5, -0.5, MAX_SERIES_TERMS)?;
    println!("B(3/2, -1/2)         = {:.15} +- {:.1e}", b.value, b.abs_err);
    assert!((b.value + std::f64::consts::PI).abs() < 1e-12);

    let f = hyp2f1(2.0, 2.0, 3.0, -1.0)?;
    println!("2F1(2, 2; 3; -1)     = {:.15} via {:?}", f.value, f.method);

    let u = tricomi_u(1.5, 0.5, 0.01)?;
    println!("U(3/2, 1/2, 0.01)    = {:.15}", u.value);

    let e = expint(1.7, 0.3)?;
    println!("E_1.7(0.3)           = {:.15}", e.value);

    let k = bessel_k(0.5, 2.0)?;
    println!("K_1/2(2)             = {:.15}", k.value);

    let a = appell_f1(1.5, 1.0, 1.0, 2.5, -4.0, -9.0)?;
    println!("F1(3/2; 1, 1; 5/2; -4, -9) = {:.15}", a.value);

    let pole = gamma(-2.0).unwrap_err();
    println!("Gamma(-2)            -> {pole}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
