// Gaussian damping e^{-delta p^2}: confluent closed form, the two-branch
// small-delta expansion and its extraction.

use loopreg::dimreg::{master_one_loop, Params};
use loopreg::error::Result;
use loopreg::schemes::{gaussian_eval, gaussian_series};
use loopreg::series::{scale_values, Scale};

pub fn run_example() -> Result<()> {
    let p = Params::one_mass(3.0, 1.0, 1.0);
    let master = master_one_loop(&p)?.value;
    for delta in [1e-2, 1e-4, 1e-6] {
        let v = gaussian_eval(&p, delta)?;
        let series = gaussian_series(&p, delta, 20)?;
        let at = scale_values(&[(Scale::Delta, delta)]);
        let total = series.eval_at(&at)?;
        println!(
            "delta = {delta:.0e}: value {:.15}  series {:.15}  gap to master {:.3e}",
            v.value,
            total,
            v.value - master
        );
        assert!((total - v.value).abs() < 1e-10 * v.value.abs());
        let extracted = series.extract_scale(Scale::Delta).eval_at(&at)?;
        assert!((extracted - master).abs() <= 1e-12 * master.abs());
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
