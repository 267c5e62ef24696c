//! Batch front end: `eval`, `series`, `extract`, `verify` and `grid`.
//!
//! Exit codes: 0 ok, 1 property failure, 2 configuration, domain or I/O
//! error, 3 pole, 4 non-convergence. `LOOPREG_THREADS` bounds the worker
//! pool used for grids.

mod points;
mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use points::{dimreg_value, eval_point, extract_point, verify_point, Point, SchemeName};
pub use report::{fmt_num, to_csv, to_json, to_text, ConfigEcho, Record, Report, Summary, CSV_COLUMNS};

use report::io_err;

use crate::dimreg::DEFAULT_TERMS;
use crate::error::{Error, Result};
use crate::schemes::scheme_series;
use crate::series::FormalSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_POLE: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

/// Default relative tolerance of value comparisons.
pub const DEFAULT_TOL: f64 = 1e-8;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole(_) => EXIT_POLE,
        Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        Error::RecurrenceViolation { .. } => EXIT_PROPERTY_FAILURE,
        Error::Domain(_) | Error::DivergentInput(_) | Error::Config(_) | Error::Io(_) => EXIT_CONFIG,
    }
}

#[derive(Parser, Debug)]
#[command(name = "loopreg", version, about = "Regulated one-loop integrals against dimensional regularization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one scheme at one point, with dimreg and oracle comparators.
    Eval(Opts),
    /// Print the scale-tagged series of a scheme.
    Series(Opts),
    /// Extract the regulator-free part of a series and compare with dimreg.
    Extract(Opts),
    /// Run the property catalogue over a grid (default grid unless overridden).
    Verify(Opts),
    /// Tabulate scheme, dimreg and oracle values over a grid.
    Grid(Opts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Default)]
struct Opts {
    #[arg(long, value_enum)]
    scheme: Option<SchemeName>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long = "M2")]
    big_m2: Option<f64>,
    #[arg(long = "K")]
    k: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    /// Mellin exponent (demo regulator).
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    /// Quartic coefficient (demo regulator).
    #[arg(long)]
    a: Option<f64>,
    /// Terms per summation index in series forms.
    #[arg(long)]
    terms: Option<usize>,
    /// Relative tolerance of value comparisons.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// PARAM=MIN:MAX:COUNT[:log|linear]; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    sweep: Vec<String>,
    /// File of key=value lines mirroring the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{v}` for {key}")))
}

impl Opts {
    /// Fills unset flags from the config file.
    fn merge_config(&mut self) -> Result<()> {
        let Some(path) = self.config.clone() else {
            return Ok(());
        };
        let text = fs::read_to_string(&path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut sweeps = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            macro_rules! fill {
                ($field:ident) => {
                    if self.$field.is_none() {
                        self.$field = Some(parse_num(key, value)?);
                    }
                };
            }
            match key {
                "scheme" => {
                    if self.scheme.is_none() {
                        self.scheme = Some(SchemeName::parse(value)?);
                    }
                }
                "d" => fill!(d),
                "alpha" => fill!(alpha),
                "beta" => fill!(beta),
                "m2" => fill!(m2),
                "M2" => fill!(big_m2),
                "K" => fill!(k),
                "delta" => fill!(delta),
                "xi" => fill!(xi),
                "z" => fill!(z),
                "a" => fill!(a),
                "terms" => fill!(terms),
                "tol" => fill!(tol),
                "out" => {
                    if self.out.is_none() {
                        self.out = Some(PathBuf::from(value));
                    }
                }
                "format" => {
                    if self.format.is_none() {
                        self.format = Some(
                            Format::from_str(value, true)
                                .map_err(|_| Error::Config(format!("unknown format `{value}`")))?,
                        );
                    }
                }
                "sweep" => sweeps.push(value.to_string()),
                _ => return Err(Error::Config(format!("config line {}: unknown key `{key}`", n + 1))),
            }
        }
        if self.sweep.is_empty() {
            self.sweep = sweeps;
        }
        Ok(())
    }

    fn tol(&self) -> Result<f64> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
        }
        Ok(tol)
    }

    fn terms(&self) -> Result<usize> {
        let terms = self.terms.unwrap_or(DEFAULT_TERMS);
        if terms == 0 {
            return Err(Error::Config("--terms must be at least 1".into()));
        }
        Ok(terms)
    }

    fn require<T: Copy>(x: Option<T>, flag: &str) -> Result<T> {
        x.ok_or_else(|| Error::Config(format!("missing --{flag}")))
    }

    fn point(&self) -> Result<Point> {
        let pt = Point {
            d: Self::require(self.d, "d")?,
            alpha: Self::require(self.alpha, "alpha")?,
            beta: self.beta,
            m2: Self::require(self.m2, "m2")?,
            big_m2: self.big_m2,
            k: self.k,
            delta: self.delta,
            xi: self.xi,
            z: self.z,
            a: self.a,
        };
        pt.params().validate()?;
        Ok(pt)
    }

    fn scheme(&self) -> Result<SchemeName> {
        Self::require(self.scheme, "scheme")
    }

    fn echo(&self, command: &str) -> ConfigEcho {
        let mut out = vec![("command".to_string(), command.to_string())];
        if let Some(s) = self.scheme {
            out.push(("scheme".into(), s.as_str().into()));
        }
        for (k, v) in [
            ("d", self.d),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("m2", self.m2),
            ("M2", self.big_m2),
            ("K", self.k),
            ("delta", self.delta),
            ("xi", self.xi),
            ("z", self.z),
            ("a", self.a),
        ] {
            if let Some(v) = v {
                out.push((k.into(), fmt_num(v)));
            }
        }
        if let Some(t) = self.terms {
            out.push(("terms".into(), t.to_string()));
        }
        if let Some(t) = self.tol {
            out.push(("tol".into(), fmt_num(t)));
        }
        for (i, s) in self.sweep.iter().enumerate() {
            out.push((format!("sweep{i}"), s.clone()));
        }
        out
    }
}

/// Grid axes. Each parameter sweeps independently; points are the
/// Cartesian product in axis order, the first axis varying slowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Axis {
    D,
    Alpha,
    Beta,
    M2,
    BigM2,
    K,
    Delta,
    Xi,
    Z,
    A,
}

impl Axis {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => Axis::D,
            "alpha" => Axis::Alpha,
            "beta" => Axis::Beta,
            "m2" => Axis::M2,
            "M2" => Axis::BigM2,
            "K" => Axis::K,
            "delta" => Axis::Delta,
            "xi" => Axis::Xi,
            "z" => Axis::Z,
            "a" => Axis::A,
            _ => return Err(Error::Config(format!("unknown sweep parameter `{s}`"))),
        })
    }

    fn set(self, pt: &mut Point, v: f64) {
        match self {
            Axis::D => pt.d = v,
            Axis::Alpha => pt.alpha = v,
            Axis::Beta => pt.beta = Some(v),
            Axis::M2 => pt.m2 = v,
            Axis::BigM2 => pt.big_m2 = Some(v),
            Axis::K => pt.k = Some(v),
            Axis::Delta => pt.delta = Some(v),
            Axis::Xi => pt.xi = Some(v),
            Axis::Z => pt.z = Some(v),
            Axis::A => pt.a = Some(v),
        }
    }
}

/// Parses `PARAM=MIN:MAX:COUNT[:log|linear]`.
fn parse_sweep(s: &str) -> Result<(Axis, Vec<f64>)> {
    let bad = || Error::Config(format!("sweep `{s}` is not PARAM=MIN:MAX:COUNT[:log|linear]"));
    let (name, spec) = s.split_once('=').ok_or_else(bad)?;
    let axis = Axis::parse(name.trim())?;
    let parts: Vec<&str> = spec.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let min: f64 = parse_num(name, parts[0])?;
    let max: f64 = parse_num(name, parts[1])?;
    let count: usize = parse_num(name, parts[2])?;
    let log = match parts.get(3).map(|x| x.trim()) {
        None | Some("linear") => false,
        Some("log") => true,
        Some(_) => return Err(bad()),
    };
    if count == 0 {
        return Err(Error::Config(format!("sweep `{s}` needs COUNT >= 1")));
    }
    if !(min.is_finite() && max.is_finite()) || (log && !(min > 0.0 && max > 0.0)) {
        return Err(Error::Config(format!("sweep `{s}` has an invalid range")));
    }
    let values = (0..count)
        .map(|i| {
            if count == 1 {
                return min;
            }
            let t = i as f64 / (count - 1) as f64;
            if log {
                (min.ln() + t * (max.ln() - min.ln())).exp()
            } else {
                min + t * (max - min)
            }
        })
        .collect();
    Ok((axis, values))
}

/// Default verification grid.
pub const DEFAULT_GRID_D: [f64; 4] = [1.5, 2.3, 3.0, 3.7];
pub const DEFAULT_GRID_ALPHA: [f64; 5] = [-1.3, -0.5, 0.4, 1.0, 2.6];
pub const DEFAULT_GRID_M2: [f64; 3] = [0.5, 1.0, 4.0];
pub const DEFAULT_GRID_K: [f64; 2] = [1e2, 1e4];
pub const DEFAULT_GRID_DELTA: [f64; 2] = [1e-2, 1e-4];

fn expand(base: Point, axes: &[(Axis, Vec<f64>)]) -> Vec<Point> {
    let mut points = vec![base];
    for (axis, values) in axes {
        points = points
            .into_iter()
            .flat_map(|pt| {
                values.iter().map(move |&v| {
                    let mut q = pt;
                    axis.set(&mut q, v);
                    q
                })
            })
            .collect();
    }
    points
}

fn sweeps(opts: &Opts) -> Result<Vec<(Axis, Vec<f64>)>> {
    let mut axes: Vec<(Axis, Vec<f64>)> = Vec::new();
    for s in &opts.sweep {
        let (axis, values) = parse_sweep(s)?;
        if axes.iter().any(|(a, _)| *a == axis) {
            return Err(Error::Config(format!("parameter swept twice in `{s}`")));
        }
        axes.push((axis, values));
    }
    Ok(axes)
}

fn verify_points(opts: &Opts) -> Result<Vec<Point>> {
    let swept = sweeps(opts)?;
    let axis_values = |axis: Axis, flag: Option<f64>, default: &[f64]| -> Vec<f64> {
        if let Some((_, v)) = swept.iter().find(|(a, _)| *a == axis) {
            v.clone()
        } else if let Some(x) = flag {
            vec![x]
        } else {
            default.to_vec()
        }
    };
    let axes = vec![
        (Axis::D, axis_values(Axis::D, opts.d, &DEFAULT_GRID_D)),
        (Axis::Alpha, axis_values(Axis::Alpha, opts.alpha, &DEFAULT_GRID_ALPHA)),
        (Axis::M2, axis_values(Axis::M2, opts.m2, &DEFAULT_GRID_M2)),
        (Axis::K, axis_values(Axis::K, opts.k, &DEFAULT_GRID_K)),
        (Axis::Delta, axis_values(Axis::Delta, opts.delta, &DEFAULT_GRID_DELTA)),
    ];
    if let Some((a, _)) = swept.iter().find(|(a, _)| !matches!(a, Axis::D | Axis::Alpha | Axis::M2 | Axis::K | Axis::Delta)) {
        return Err(Error::Config(format!("verify cannot sweep {a:?}; the catalogue is one-mass")));
    }
    let points = expand(Point::default(), &axes);
    // ξ follows δ unless fixed
    Ok(points
        .into_iter()
        .map(|mut p| {
            p.xi = Some(opts.xi.unwrap_or(p.delta.unwrap_or(0.0)));
            p
        })
        .collect())
}

fn grid_points(opts: &Opts) -> Result<Vec<Point>> {
    let axes = sweeps(opts)?;
    let base = Point {
        d: opts.d.unwrap_or(f64::NAN),
        alpha: opts.alpha.unwrap_or(f64::NAN),
        beta: opts.beta,
        m2: opts.m2.unwrap_or(f64::NAN),
        big_m2: opts.big_m2,
        k: opts.k,
        delta: opts.delta,
        xi: opts.xi,
        z: opts.z,
        a: opts.a,
    };
    for (axis, flag, name) in [(Axis::D, opts.d, "d"), (Axis::Alpha, opts.alpha, "alpha"), (Axis::M2, opts.m2, "m2")] {
        if flag.is_none() && !axes.iter().any(|(a, _)| *a == axis) {
            return Err(Error::Config(format!("missing --{name} (fix it or sweep it)")));
        }
    }
    Ok(expand(base, &axes))
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("LOOPREG_THREADS") {
        let n: usize = parse_num("LOOPREG_THREADS", &v)?;
        if n == 0 {
            return Err(Error::Config("LOOPREG_THREADS must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

fn emit(opts: &Opts, text: &str) -> Result<()> {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| io_err(e.to_string()))
        }
    }
}

fn render(opts: &Opts, report: &Report) -> Result<String> {
    match opts.format.unwrap_or(Format::Json) {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

fn render_series(opts: &Opts, series: &FormalSeries, spec: &crate::schemes::SchemeSpec) -> Result<String> {
    let at = spec.scale_values();
    match opts.format.unwrap_or(Format::Text) {
        Format::Text => Ok(series.to_string()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| io_err(e.to_string());
            w.write_record(["term", "coeff", "value"]).map_err(io)?;
            for t in &series.terms {
                let single = FormalSeries {
                    terms: vec![t.clone()],
                    ..series.clone()
                };
                w.write_record([t.to_string(), fmt_num(t.coeff), fmt_num(single.eval_at(&at)?)])
                    .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| io_err(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| io_err(e.to_string()))
        }
        Format::Json => {
            let mut terms = Vec::new();
            for t in &series.terms {
                let single = FormalSeries {
                    terms: vec![t.clone()],
                    ..series.clone()
                };
                terms.push(serde_json::json!({
                    "term": t.to_string(),
                    "coeff": fmt_num(t.coeff),
                    "value": fmt_num(single.eval_at(&at)?),
                }));
            }
            let doc = serde_json::json!({
                "config": opts.echo("series").into_iter().map(|(k, v)| (k, serde_json::Value::String(v))).collect::<serde_json::Map<_, _>>(),
                "truncation_note": series.truncation_note,
                "terms": terms,
                "total": fmt_num(series.eval_at(&at)?),
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| io_err(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn run(command: Command) -> Result<i32> {
    let (name, mut opts) = match command {
        Command::Eval(o) => ("eval", o),
        Command::Series(o) => ("series", o),
        Command::Extract(o) => ("extract", o),
        Command::Verify(o) => ("verify", o),
        Command::Grid(o) => ("grid", o),
    };
    opts.merge_config()?;
    let tol = opts.tol()?;
    let terms = opts.terms()?;
    let config = opts.echo(name);
    let report = match name {
        "eval" => {
            let rec = eval_point(&opts.point()?, opts.scheme()?, tol)?;
            Report { config, records: vec![rec] }
        }
        "extract" => {
            let rec = extract_point(&opts.point()?, opts.scheme()?, terms, tol)?;
            Report { config, records: vec![rec] }
        }
        "series" => {
            let pt = opts.point()?;
            let scheme = opts.scheme()?;
            let spec = pt
                .spec(scheme)?
                .ok_or_else(|| Error::Config("series needs a regulated scheme, not dimreg".into()))?;
            let series = scheme_series(&pt.params(), &spec, terms)?;
            emit(&opts, &render_series(&opts, &series, &spec)?)?;
            return Ok(EXIT_OK);
        }
        "verify" => {
            let points = verify_points(&opts)?;
            let pool = thread_pool()?;
            let records: Vec<Vec<Record>> =
                pool.install(|| points.par_iter().map(|pt| verify_point(pt, terms, tol)).collect());
            Report {
                config,
                records: records.into_iter().flatten().collect(),
            }
        }
        _ => {
            let points = grid_points(&opts)?;
            let scheme = opts.scheme()?;
            points.first().map(|p| p.spec(scheme)).transpose()?;
            let pool = thread_pool()?;
            let records = pool.install(|| points.par_iter().map(|pt| points::grid_point(pt, scheme, tol)).collect());
            Report { config, records }
        }
    };
    emit(&opts, &render(&opts, &report)?)?;
    if name == "verify" && report.summary().fail > 0 {
        return Ok(EXIT_PROPERTY_FAILURE);
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on explicit arguments and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let (a, v) = parse_sweep("K=10:10000:4:log").unwrap();
        assert_eq!(a, Axis::K);
        assert_eq!(v.len(), 4);
        assert!((v[1] - 100.0).abs() < 1e-9 && (v[3] - 1e4).abs() < 1e-9);
        let (_, v) = parse_sweep("alpha=-1:1:3").unwrap();
        assert_eq!(v, vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_sweep("d=3:3:1").unwrap().1, vec![3.0]);
        assert!(parse_sweep("K=0:10:3:log").is_err());
        assert!(parse_sweep("q=0:1:2").is_err());
        assert!(parse_sweep("d=1:2:0").is_err());
    }

    #[test]
    fn default_verify_grid_size() {
        let pts = verify_points(&Opts::default()).unwrap();
        assert_eq!(pts.len(), 4 * 5 * 3 * 2 * 2);
        assert!(pts.iter().all(|p| p.xi == p.delta));
    }

    #[test]
    fn config_file_fills_unset_flags() {
        let dir = std::env::temp_dir().join(format!("loopreg-cfg-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# point\nd = 3\nalpha=1\nm2=4\nscheme=cutoff\nK=10\n").unwrap();
        let mut o = Opts {
            m2: Some(1.0),
            config: Some(path.clone()),
            ..Default::default()
        };
        o.merge_config().unwrap();
        assert_eq!((o.d, o.alpha, o.m2, o.k), (Some(3.0), Some(1.0), Some(1.0), Some(10.0)));
        assert_eq!(o.scheme, Some(SchemeName::Cutoff));
        fs::write(&path, "bogus=1\n").unwrap();
        assert!(matches!(o.merge_config(), Err(Error::Config(_))));
        fs::remove_dir_all(&dir).unwrap();
    }
}
