// Regulators acting at small momenta: the IR window, separate UV and IR
// cut-offs, the Gaussian with IR cut-off and the two-sided Gaussian. In the
// massless limit every extraction returns the scaleless value, zero.

use loopreg::dimreg::{master_one_loop, Params};
use loopreg::error::Result;
use loopreg::schemes::{scheme_eval, scheme_series, SchemeSpec};

pub fn run_example() -> Result<()> {
    let massive = Params::one_mass(3.0, 1.0, 1.0);
    let massless = Params::one_mass(3.0, 1.0, 0.0);
    let master = master_one_loop(&massive)?.value;
    let specs = [
        SchemeSpec::IrWindow { k: 100.0 },
        SchemeSpec::SeparateCutoff { k: 100.0, delta: 1e-2 },
        SchemeSpec::GaussianIr { delta: 1e-3 },
        SchemeSpec::TwoSidedGaussian { delta: 1e-3 },
        SchemeSpec::SeparateTwoSided { delta: 1e-3, xi: 1e-3 },
    ];
    for spec in specs {
        let value = scheme_eval(&massive, &spec)?.value;
        let series = scheme_series(&massive, &spec, 30)?;
        let extracted = series.extract_multi(&spec.scales()).eval_at(&spec.scale_values())?;
        println!("{:<20} value {value:+.12}  extracted {extracted:+.15}", spec.family());
        assert!((extracted - master).abs() <= 1e-10 * master.abs());

        let zero = scheme_series(&massless, &spec, 30)?.extract_multi(&spec.scales());
        assert!(zero.is_empty());
    }
    println!("master {master:+.15}; massless extractions are all empty");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
