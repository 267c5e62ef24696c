// Two regulators that converge where dimensional regularization is not
// needed but cannot continue past it: a Mellin power and a quartic
// denominator.

use loopreg::dimreg::Params;
use loopreg::error::{Error, Result};
use loopreg::schemes::{incomplete_demo, quartic_continuation_target, SchemeSpec};

pub fn run_example() -> Result<()> {
    let p = Params::one_mass(3.0, 2.0, 1.0);
    let mellin = incomplete_demo(&p, &SchemeSpec::MellinDemo { z: 0.0 })?;
    println!("Mellin regulator at alpha = 2: {:.15}", mellin.value);

    let q = Params::one_mass(3.0, 1.0, 1.0);
    for a in [1e-2, 1e-4, 1e-6] {
        let v = incomplete_demo(&q, &SchemeSpec::QuarticDemo { a })?;
        println!("quartic a = {a:.0e}: {:.6}", v.value);
    }
    println!("continuation target: {:.15}", quartic_continuation_target()?);

    let divergent = Params::one_mass(3.0, -0.5, 1.0);
    match incomplete_demo(&divergent, &SchemeSpec::MellinDemo { z: 0.0 }) {
        Err(Error::DivergentInput(msg)) => println!("alpha = -1/2: {msg}"),
        other => panic!("expected a divergent input, got {other:?}"),
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
