// The dimensionally regularized one-loop integral, its validity
// classification, scaleless integrals and the index recurrence.

use loopreg::dimreg::{classify, lower_index, master_one_loop, veltman_scaleless, Params};
use loopreg::error::Result;
use loopreg::oracle::{master_oracle, DEFAULT_REL_TOL};

pub fn run_example() -> Result<()> {
    // d = 3, alpha = 2 converges, so quadrature can confirm the closed form.
    let p = Params::one_mass(3.0, 2.0, 1.0);
    let v = master_one_loop(&p)?;
    let o = master_oracle(&p, DEFAULT_REL_TOL)?;
    println!("I(d=3, alpha=2) = {:.15}  oracle {:.15}", v.value, o.value);
    assert!((v.value - o.value).abs() < 1e-9 * o.value.abs());

    // d = 3, alpha = 1 diverges in the UV; the value is the continuation -m/(4 pi).
    let q = Params::one_mass(3.0, 1.0, 1.0);
    println!("I(d=3, alpha=1) = {:.15} [{}]", master_one_loop(&q)?.value, classify(&q).kind);

    let pole = Params::one_mass(4.0, 2.0, 1.0);
    let c = classify(&pole);
    println!("I(d=4, alpha=2): {} ({})", c.kind, c.reason);
    assert!(master_one_loop(&pole).unwrap_err().is_pole());

    println!("scaleless integral = {}", veltman_scaleless(3.0, 1.0).value);

    let r = lower_index(&q)?;
    println!("alpha I(alpha+1) = {:.15} agrees with -dI/dm2", r.value);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
