// Massless IR-regulated families have two closed forms in circulation.
// Quadrature of the defining integral decides between them.

use loopreg::error::Result;
use loopreg::schemes::{gaussian_ir_massless_forms, two_sided_massless_forms, FormComparison};

fn show(name: &str, c: &FormComparison) {
    let dev = |x: Option<f64>| c.deviation(x).map_or("-".to_string(), |v| format!("{v:.2e}"));
    println!(
        "{name}: oracle {:.12}  derived deviation {}  alternative deviation {}",
        c.oracle,
        dev(c.derived),
        dev(c.alternative)
    );
}

pub fn run_example() -> Result<()> {
    let ir = gaussian_ir_massless_forms(3.0, 0.6, 0.5)?;
    show("Gaussian with IR cut-off", &ir);
    assert!(ir.deviation(ir.derived).unwrap() < 1e-8);

    let two_sided = two_sided_massless_forms(3.0, 0.6, 0.3, 0.2)?;
    show("two-sided Gaussian      ", &two_sided);
    assert!(two_sided.deviation(two_sided.derived).unwrap() < 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
