// Two propagators with masses m <= M: the Gauss-function closed form, its
// equal-mass reduction and the cut-off and Gaussian regulated versions.

use loopreg::dimreg::{master_one_loop, two_mass_master, Params};
use loopreg::error::Result;
use loopreg::oracle::{master_oracle, DEFAULT_REL_TOL};
use loopreg::schemes::{two_mass_cutoff, two_mass_gaussian};
use loopreg::series::{scale_values, Scale};

pub fn run_example() -> Result<()> {
    let p = Params::two_mass(3.0, 1.0, 1.0, 1.0, 4.0);
    let exact = two_mass_master(&p)?.value;
    let oracle = master_oracle(&p, DEFAULT_REL_TOL)?.value;
    println!("two-mass integral {exact:.15} (oracle {oracle:.15})");

    let merged = two_mass_master(&Params::two_mass(3.2, 0.7, 0.8, 2.0, 2.0))?.value;
    let single = master_one_loop(&Params::one_mass(3.2, 1.5, 2.0))?.value;
    println!("equal masses: {merged:.15} = {single:.15}");

    let k = 2e3;
    let (value, series) = two_mass_cutoff(&p, k, 10)?;
    let at = scale_values(&[(Scale::K, k)]);
    let extracted = series.extract_scale(Scale::K).eval_at(&at)?;
    println!("cut-off K = {k}: value {:.12}, extracted {extracted:.15}", value.value);

    let delta = 1e-4 / 4.0;
    let (value, series) = two_mass_gaussian(&p, delta, 10)?;
    let at = scale_values(&[(Scale::Delta, delta)]);
    let extracted = series.extract_scale(Scale::Delta).eval_at(&at)?;
    println!("Gaussian delta = {delta:e}: value {:.12}, extracted {extracted:.15}", value.value);
    assert!((extracted - exact).abs() < 1e-8 * exact.abs());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
