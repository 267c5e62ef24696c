// Extraction commutes with differentiation in the mass: alpha times the
// extracted series at alpha + 1 equals minus the m^2 derivative at alpha.

use loopreg::dimreg::{Params, FD_REL_STEP};
use loopreg::error::Result;
use loopreg::schemes::SchemeSpec;
use loopreg::series::{commutes_with_mass_derivative, master_commutation};

pub fn run_example() -> Result<()> {
    let p = Params::one_mass(3.3, 1.2, 0.8);
    let m = master_commutation(&p)?;
    println!("master: lhs {:.12} rhs {:.12} residual {:.1e}", m.lhs, m.rhs, m.residual);
    for spec in [SchemeSpec::CutoffUv { k: 1e3 }, SchemeSpec::GaussianUv { delta: 1e-3 }] {
        let c = commutes_with_mass_derivative(&p, &spec, FD_REL_STEP)?;
        println!("{:<12} lhs {:.12} rhs {:.12} residual {:.1e}", spec.family(), c.lhs, c.rhs, c.residual);
        assert!(c.pass);
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
