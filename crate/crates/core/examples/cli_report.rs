// Driving the command line from code: a K sweep written as CSV.

use loopreg::error::Result;

pub fn run_example() -> Result<()> {
    let out = std::env::temp_dir().join(format!("loopreg-example-{}.csv", std::process::id()));
    let code = loopreg::cli::main_with_args([
        "loopreg",
        "grid",
        "--scheme",
        "cutoff",
        "--d",
        "3",
        "--alpha",
        "1",
        "--m2",
        "1",
        "--sweep",
        "K=10:1000:3:log",
        "--format",
        "csv",
        "--out",
        out.to_str().expect("utf-8 temp path"),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out)?;
    std::fs::remove_file(&out)?;
    print!("{text}");
    assert_eq!(text.lines().count(), 4);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
