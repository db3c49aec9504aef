//! Command-line front end.
//!
//! Every subcommand produces one table, written as CSV (header row, LF line
//! endings) or as a JSON object `{"command": ..., "rows": [...]}` whose rows
//! carry the same fields. Floats are printed with 9 significant digits,
//! rounded to nearest with ties to even on the exact binary value, so fixed
//! seeds give byte-identical output. Rationals are printed as `n/m`.
//!
//! Exit codes: 0 on success, 2 for invalid arguments or out-of-range
//! parameters, 1 for anything else.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bertrand::{self, ChordModel};
use crate::buffon::{self, NeedleModel};
use crate::error::{Error, Result};
use crate::geometry::TRIANGLE_EDGE;
use crate::rationals::{self, DenominatorLaw, LawFamily, Rational};
use crate::squares::{self, IntervalModel};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const SEED_ENV: &str = "BERTRAND_LAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "bertrand-lab",
    version,
    about = "Random chords, needles, squares and rationals"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of shards; must divide the sample count.
    #[arg(long, global = true, default_value_t = 1)]
    pub shards: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance for quadratures and series.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random chords longer than the inscribed triangle's edge.
    Bertrand {
        /// 1, 2, 3, midpoint, tangent, polar or all.
        #[arg(long, default_value = "all")]
        model: String,
        /// Evaluate each model's measure in the polar chart by quadrature instead.
        #[arg(long)]
        pushforward: bool,
    },
    /// Needle crossings and the implied estimate of pi.
    Buffon {
        /// 1, 2, center-angle, endpoints or all.
        #[arg(long, default_value = "all")]
        model: String,
    },
    /// A number in [0, 100] and its square.
    Squares {
        /// Threshold on the number itself; squared models use its square.
        #[arg(long, default_value_t = 50.0)]
        threshold: f64,
        /// Count over the integers 1..=N instead.
        #[arg(long, value_name = "N")]
        finite: Option<u64>,
    },
    /// Rationals with a random denominator.
    #[command(subcommand)]
    Rationals(RationalsCommand),
}

#[derive(Debug, Subcommand)]
pub enum RationalsCommand {
    /// P(Q = q).
    Atom {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "geometric:0.5")]
        law: String,
    },
    /// P(Q <= x).
    Cdf {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value = "geometric:0.5")]
        law: String,
    },
    /// P(a < Q <= b).
    Interval {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value = "geometric:0.5")]
        law: String,
    },
    /// Sampled frequencies of the atoms with small denominators.
    Sample {
        #[arg(long, default_value = "geometric:0.5")]
        law: String,
        #[arg(long, default_value_t = 6)]
        max_denominator: u64,
    },
    /// Convergence diagnostics along a family of laws.
    Converge {
        /// geometric (w = 1/k) or poisson (lambda = k).
        #[arg(long, default_value = "geometric")]
        family: String,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        ks: Vec<u64>,
        /// a,b of the probe interval (a, b].
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,0.5",
            allow_hyphen_values = true
        )]
        probe: Vec<f64>,
    },
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Float(f64),
    Bool(bool),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<Rational> for Cell {
    fn from(q: Rational) -> Self {
        Cell::Text(q.to_string())
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(v) => json!(v),
            Cell::Float(v) => format_float(*v)
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map_or(Value::Null, |x| json!(x)),
            Cell::Bool(v) => json!(v),
        }
    }
}

/// `x` with 9 significant digits, positional for exponents in `[-5, 9)`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("exponent");
    if (-5..9).contains(&exp) {
        format!("{x:.*}", (8 - exp) as usize)
    } else {
        sci
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        Self {
            command: command.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s =
            serde_json::to_string_pretty(&json!({ "command": self.command, "rows": rows })).expect("json");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn selection<T: Copy, F: Fn(&str) -> Result<T>>(text: &str, all: &[T], parse: F) -> Result<Vec<T>> {
    if text.trim().eq_ignore_ascii_case("all") {
        Ok(all.to_vec())
    } else {
        Ok(vec![parse(text)?])
    }
}

fn law(text: &str) -> Result<DenominatorLaw> {
    text.parse().map_err(|e| match e {
        Error::InvalidLaw(m) => Error::Config(m),
        e => e,
    })
}

fn cmd_bertrand(run: &RunConfig, model: &str, pushforward: bool) -> Result<Table> {
    let models = selection(model, &ChordModel::ALL, str::parse)?;
    if pushforward {
        let tol = run.tol.unwrap_or(bertrand::QUADRATURE_TOL);
        let mut t = Table::new(
            "bertrand-pushforward",
            &[
                "measure",
                "chart",
                "threshold",
                "exact_p",
                "value",
                "error_estimate",
            ],
        );
        for m in models {
            let q = bertrand::exceed_quadrature_with_tol(TRIANGLE_EDGE, m, ChordModel::PolarUniform, tol)?;
            t.push(vec![
                m.name().into(),
                ChordModel::PolarUniform.name().into(),
                TRIANGLE_EDGE.into(),
                bertrand::exact_exceed_probability(m).into(),
                q.value.into(),
                q.error_estimate.into(),
            ]);
        }
        return Ok(t);
    }
    let mut t = Table::new(
        "bertrand",
        &["model", "exact_p", "p_hat", "ci_low", "ci_high", "n", "seed"],
    );
    for m in models {
        let e = bertrand::monte_carlo_exceed(m, run.samples, run.seed, run.shards)?;
        t.push(vec![
            m.name().into(),
            bertrand::exact_exceed_probability(m).into(),
            e.p_hat.into(),
            e.ci_low.into(),
            e.ci_high.into(),
            e.n.into(),
            e.seed.into(),
        ]);
    }
    Ok(t)
}

fn cmd_buffon(run: &RunConfig, model: &str) -> Result<Table> {
    let models = selection(model, &NeedleModel::ALL, str::parse)?;
    let mut t = Table::new(
        "buffon",
        &[
            "model",
            "exact_p",
            "p_hat",
            "ci_low",
            "ci_high",
            "pi_estimate",
            "pi_ci_low",
            "pi_ci_high",
            "n",
            "seed",
        ],
    );
    for m in models {
        let e = buffon::estimate_pi(m, run.samples, run.seed, run.shards)?;
        t.push(vec![
            m.name().into(),
            buffon::exact_cross_probability(m).into(),
            e.crossing.p_hat.into(),
            e.crossing.ci_low.into(),
            e.crossing.ci_high.into(),
            e.value.into(),
            e.ci_low.into(),
            e.ci_high.into(),
            e.crossing.n.into(),
            e.crossing.seed.into(),
        ]);
    }
    Ok(t)
}

fn cmd_squares(threshold: f64, finite: Option<u64>) -> Result<Table> {
    if !(0.0..=squares::UPPER).contains(&threshold) {
        return Err(Error::Config(format!(
            "threshold {threshold} outside [0, {}]",
            squares::UPPER
        )));
    }
    if let Some(n_max) = finite {
        if threshold.fract() != 0.0 {
            return Err(Error::Config(format!(
                "finite counting needs an integer threshold, got {threshold}"
            )));
        }
        let k = threshold as u64;
        let mut t = Table::new(
            "squares-finite",
            &["variant", "n_max", "threshold", "probability"],
        );
        t.push(vec![
            "plain".into(),
            n_max.into(),
            k.into(),
            squares::finite_counting_probability(n_max, k, false)?.into(),
        ]);
        t.push(vec![
            "squared".into(),
            n_max.into(),
            (k * k).into(),
            squares::finite_counting_probability(n_max, k * k, true)?.into(),
        ]);
        return Ok(t);
    }
    let mut t = Table::new("squares", &["model", "threshold", "exceed_p"]);
    for m in IntervalModel::ALL {
        let th = if m == IntervalModel::UniformX {
            threshold
        } else {
            threshold * threshold
        };
        t.push(vec![
            m.name().into(),
            th.into(),
            squares::exceed_probability(m, th)?.into(),
        ]);
    }
    Ok(t)
}

fn cmd_rationals(run: &RunConfig, cmd: &RationalsCommand) -> Result<Table> {
    let tol = run.tol.unwrap_or(rationals::DEFAULT_TOL);
    Ok(match cmd {
        RationalsCommand::Atom { q, law: text } => {
            let (q, l) = (q.parse::<Rational>()?, law(text)?);
            let mut t = Table::new("rationals-atom", &["q", "law", "probability"]);
            t.push(vec![
                q.into(),
                l.to_string().into(),
                rationals::atom_probability(q, &l, tol)?.into(),
            ]);
            t
        }
        RationalsCommand::Cdf { x, law: text } => {
            let l = law(text)?;
            let mut t = Table::new("rationals-cdf", &["x", "law", "cdf"]);
            t.push(vec![
                (*x).into(),
                l.to_string().into(),
                rationals::cdf(*x, &l, tol)?.into(),
            ]);
            t
        }
        RationalsCommand::Interval { a, b, law: text } => {
            let l = law(text)?;
            let mut t = Table::new(
                "rationals-interval",
                &["a", "b", "law", "probability", "mean_reciprocal"],
            );
            let p = rationals::interval_probability(*a, *b, &l, tol)?;
            t.push(vec![
                (*a).into(),
                (*b).into(),
                l.to_string().into(),
                p.into(),
                rationals::mean_reciprocal(&l, tol)?.into(),
            ]);
            t
        }
        RationalsCommand::Sample {
            law: text,
            max_denominator,
        } => {
            let l = law(text)?;
            let table = l.truncate(tol)?;
            let counts = rationals::sample_counts(&l, run.samples, run.seed, run.shards)?;
            let mut atoms: Vec<Rational> = Rational::enumerate(*max_denominator).collect();
            atoms.sort();
            let mut t = Table::new(
                "rationals-sample",
                &["q", "count", "p_hat", "ci_low", "ci_high", "exact_p", "n", "seed"],
            );
            for q in atoms {
                let c = counts.get(&q).copied().unwrap_or(0);
                let e = crate::Estimate::from_counts(
                    c,
                    run.samples,
                    crate::montecarlo::DEFAULT_CONFIDENCE,
                    run.seed,
                )?;
                t.push(vec![
                    q.into(),
                    c.into(),
                    e.p_hat.into(),
                    e.ci_low.into(),
                    e.ci_high.into(),
                    table.atom(q).into(),
                    e.n.into(),
                    e.seed.into(),
                ]);
            }
            t
        }
        RationalsCommand::Converge { family, ks, probe } => {
            let fam: LawFamily = family.parse()?;
            let &[a, b] = probe.as_slice() else {
                return Err(Error::Config(format!(
                    "--probe takes two values a,b, got {}",
                    probe.len()
                )));
            };
            let rows = rationals::convergence_table(&fam, ks, (a, b), tol)?;
            let mut t = Table::new(
                "rationals-converge",
                &[
                    "k",
                    "parameter",
                    "s_k",
                    "s_k_ln_k",
                    "h_k",
                    "r_k",
                    "mu_k",
                    "interval_probability",
                    "interval_error",
                    "sandwich_holds",
                    "cdf_sup_error",
                ],
            );
            for r in rows {
                t.push(vec![
                    r.k.into(),
                    r.parameter.into(),
                    r.s_k.into(),
                    r.s_k_ln_k.into(),
                    r.h_k.into(),
                    r.r_k.into(),
                    r.mu_k.into(),
                    r.interval_probability.into(),
                    r.interval_error.into(),
                    r.sandwich_holds.into(),
                    r.cdf_sup_error.into(),
                ]);
            }
            t
        }
    })
}

/// Runs a parsed command line and returns its table.
pub fn execute(cli: &Cli) -> Result<Table> {
    let run = &cli.run;
    if let Some(tol) = run.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Config(format!("--tol must lie in (0, 1), got {tol}")));
        }
    }
    match &cli.command {
        Command::Bertrand { model, pushforward } => cmd_bertrand(run, model, *pushforward),
        Command::Buffon { model } => cmd_buffon(run, model),
        Command::Squares { threshold, finite } => cmd_squares(*threshold, *finite),
        Command::Rationals(cmd) => cmd_rationals(run, cmd),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Domain(_) | Error::InvalidLaw(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let table = match execute(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = table.render(cli.run.format);
    let written = match &cli.run.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Table> {
        let cli = Cli::try_parse_from(std::iter::once("bertrand-lab").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn float_formatting() {
        assert_eq!(format_float(0.25), "0.250000000");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333");
        assert_eq!(format_float(3.141592653589793), "3.14159265");
        assert_eq!(format_float(9.9999999999), "10.0000000");
        assert_eq!(format_float(123456789.0), "123456789");
        assert_eq!(format_float(1.5e-7), "1.50000000e-7");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.5), "-0.500000000");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn squares_tables() {
        let t = run(&["squares"]).unwrap();
        let p: Vec<String> = t.rows.iter().map(|r| r[2].text()).collect();
        assert_eq!(p, ["0.500000000", "0.750000000", "0.500000000"]);
        let t = run(&["squares", "--finite", "100", "--threshold", "50"]).unwrap();
        assert_eq!(t.rows[0][3], Cell::Text("1/2".into()));
        assert_eq!(t.rows[1][3], Cell::Text("1/2".into()));
        assert_eq!(
            exit_code(&run(&["squares", "--threshold", "200"]).unwrap_err()),
            2
        );
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&run(&["bertrand", "--samples", "0"]).unwrap_err()), 2);
        assert_eq!(exit_code(&run(&["buffon", "--model", "bogus"]).unwrap_err()), 2);
        assert_eq!(
            exit_code(&run(&["rationals", "interval", "--a", "0.5", "--b", "0.25"]).unwrap_err()),
            2
        );
        assert_eq!(
            exit_code(&run(&["rationals", "atom", "--q", "2/4"]).unwrap_err()),
            2
        );
        assert_eq!(
            exit_code(&run(&["rationals", "atom", "--q", "1/2", "--law", "geometric:2"]).unwrap_err()),
            2
        );
        assert_eq!(
            Cli::try_parse_from(["bertrand-lab", "nonsense"])
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn csv_and_json_carry_the_same_fields() {
        let t = run(&["rationals", "atom", "--q", "1/2", "--law", "geometric:0.5"]).unwrap();
        assert_eq!(t.to_csv(), "q,law,probability\n1/2,geometric:0.5,0.0986122887\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["command"], "rationals-atom");
        assert_eq!(v["rows"][0]["q"], "1/2");
        assert_eq!(v["rows"][0]["probability"].as_f64().unwrap(), 0.0986122887);
    }
}
