// Hard momentum cut-off: the closed form, its large-K expansion and the
// extraction that leaves exactly the dimensionally regularized value.

use loopreg::dimreg::{master_one_loop, Params};
use loopreg::error::Result;
use loopreg::oracle::{scheme_oracle, DEFAULT_REL_TOL};
use loopreg::schemes::{cutoff_eval, cutoff_series, SchemeSpec};
use loopreg::series::{scale_values, Scale};

pub fn run_example() -> Result<()> {
    let p = Params::one_mass(3.0, 1.0, 1.0);
    let k = 100.0;
    let value = cutoff_eval(&p, k)?;
    let oracle = scheme_oracle(&p, &SchemeSpec::CutoffUv { k }, DEFAULT_REL_TOL)?;
    println!("cut-off value at K = {k}: {:.15} (oracle {:.15})", value.value, oracle.value);

    let series = cutoff_series(&p, k, 6)?;
    println!("large-K series:\n{series}");
    let at = scale_values(&[(Scale::K, k)]);
    println!("series total: {:.15}", series.eval_at(&at)?);

    let extracted = series.extract_scale(Scale::K).eval_at(&at)?;
    let master = master_one_loop(&p)?.value;
    println!("extracted {extracted:.15} vs master {master:.15}");
    assert!((extracted - master).abs() <= 1e-12 * master.abs());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
