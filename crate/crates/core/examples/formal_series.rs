// Formal series in the regulator scales with symbolic exponents: building,
// printing, parsing, extracting and evaluating.

use loopreg::error::Result;
use loopreg::series::{scale_values, Bindings, FormalSeries, Scale, SymbolicExponent, Term};

pub fn run_example() -> Result<()> {
    let b = Bindings { d: 3.0, alpha: 1.0, beta: 0.0 };
    let mut s = FormalSeries::new(b);
    s.push(Term::scale_free(-0.25));
    // K^{d - 2 alpha} and K^{d - 2 alpha - 2}
    s.push(Term::power(0.5, Scale::K, SymbolicExponent::ints(0, 1, -2, 0)));
    s.push(Term::power(-0.1, Scale::K, SymbolicExponent::ints(-2, 1, -2, 0)));
    s.push(Term::scale_free(2.0).times_log(Scale::Delta, 1));
    println!("{s}");

    let at = scale_values(&[(Scale::K, 10.0), (Scale::Delta, 0.5)]);
    println!("value at K = 10, delta = 0.5: {}", s.eval_at(&at)?);

    let (kept, removed) = s.partition(&[Scale::K, Scale::Delta]);
    println!("scale-free part: {kept}removed terms: {}", removed.len());
    assert_eq!(kept.eval_at(&at)?, -0.25);

    let round_trip: FormalSeries = s.to_string().parse()?;
    assert_eq!(round_trip.normalize(), s.normalize());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
