//! Command-line front-end. Exit codes: 0 success, 1 error, 2 verification failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, HallElement, ScElement, DEFAULT_PRIMES};
use crate::integration::{integrate, Sign, WeightFunction};
use crate::quiver::{DimVector, Quiver, RepModel, Window};
use crate::verify::{run_suite, SuiteOptions, SUITES};

#[derive(Parser, Debug)]
#[command(name = "motivic-hall", version, about = "Exact motivic Hall algebra computations for quivers")]
pub struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Quiver JSON file; the A2 quiver 1 -> 2 when omitted.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Window: all dimension vectors of total dimension at most N.
    #[arg(long, global = true, default_value_t = 3, conflicts_with = "dims")]
    window: u32,
    /// Window as an explicit list, e.g. "1,0;1,1".
    #[arg(long, global = true)]
    dims: Option<String>,
    /// Sample fields (distinct prime powers), e.g. "2,3,5".
    #[arg(long, global = true)]
    q: Option<String>,
    /// Largest enumeration allowed.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    budget: u64,
    #[arg(long, global = true, default_value = "+1", allow_hyphen_values = true)]
    sigma: String,
    /// one, behrend, or a weight file.
    #[arg(long, global = true, default_value = "one")]
    weight: String,
    /// Weight of classes missing from a weight file.
    #[arg(long, global = true, default_value_t = 1, allow_hyphen_values = true)]
    default_weight: i64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List isomorphism classes of one dimension vector over one field.
    Enumerate {
        /// Dimension vector, e.g. "1,1".
        #[arg(long)]
        dim: String,
        /// Also write the motivic automorphism table here.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Product of two Hall elements.
    Product { lhs: PathBuf, rhs: PathBuf },
    /// Poisson bracket of two Hall elements.
    Bracket { lhs: PathBuf, rhs: PathBuf },
    /// Integrate a semi-classical element into the Poisson torus.
    Integrate { element: PathBuf },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Fields for brute-force comparisons.
        #[arg(long, default_value = "2,3")]
        oracle_q: String,
    },
}

/// Runs the CLI on `args` and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = &cli.config;
    let quiver = match &cfg.quiver {
        Some(p) => Quiver::from_json(&read(p)?)?,
        None => Quiver::linear(2),
    };
    if cfg.budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let primes = match &cfg.q {
        Some(s) => parse_list(s)?,
        None => DEFAULT_PRIMES.to_vec(),
    };
    let window = match &cfg.dims {
        Some(d) => Window::parse_dims(d)?,
        None => Window::MaxTotal(cfg.window),
    };
    let sigma: Sign = cfg.sigma.parse()?;
    let n = quiver.num_vertices();

    match &cli.command {
        Command::Enumerate { dim, table } => {
            let dim = DimVector::parse(dim)?;
            if dim.len() != n {
                return Err(Error::InvalidArgument(format!("{dim} does not fit a quiver with {n} vertices")));
            }
            let q = primes[0];
            let model = RepModel::new(quiver, cfg.budget);
            let entries = model.enumerate_isoclasses(&dim, q)?;
            let mut rows = Vec::new();
            let mut motivic = Vec::new();
            for e in &entries {
                let aut = model.aut_class_motivic(&e.class)?;
                rows.push(json!({"class": e.class, "aut_count": e.aut_count}));
                motivic.push(json!({"class": e.class, "aut_class": aut, "display": aut.to_string()}));
            }
            let table_value = json!({"dim": dim, "classes": motivic});
            if let Some(p) = table {
                write_out(Some(p), &table_value)?;
            }
            write_out(
                cfg.out.as_deref(),
                &json!({"dim": dim, "q": q, "classes": rows, "motivic_table": table_value}),
            )?;
            Ok(0)
        }
        Command::Product { lhs, rhs } | Command::Bracket { lhs, rhs } => {
            let alg = HallAlgebra::new(RepModel::new(quiver, cfg.budget), window, primes)?;
            let x = HallElement::from_json(&read(lhs)?, n)?;
            let y = HallElement::from_json(&read(rhs)?, n)?;
            for d in x.support().iter().chain(y.support().iter()) {
                if !alg.window().contains(d) {
                    return Err(Error::WindowExceeded(format!("input degree {d} is outside the window")));
                }
            }
            let z = if matches!(cli.command, Command::Product { .. }) {
                alg.mul(&x, &y)?
            } else {
                alg.poisson_bracket(&x, &y)?
            };
            write_out(cfg.out.as_deref(), &z.to_json_value())?;
            Ok(0)
        }
        Command::Integrate { element } => {
            let weight = load_weight(&cfg.weight, n, cfg.default_weight)?;
            let u = read_sc_element(&read(element)?, n)?;
            let t = integrate(&u, &weight, sigma, &quiver);
            write_out(cfg.out.as_deref(), &t.to_json_value())?;
            Ok(0)
        }
        Command::Verify { suite, oracle_q } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let alg = HallAlgebra::new(RepModel::new(quiver, cfg.budget), window, primes)?;
            let opts = SuiteOptions {
                weight: load_weight(&cfg.weight, n, cfg.default_weight)?,
                sigma,
                oracle_fields: parse_list(oracle_q)?,
                ..SuiteOptions::default()
            };
            let reports = run_suite(&alg, suite, &opts)?;
            let passed = reports.iter().all(|r| r.passed());
            write_out(
                cfg.out.as_deref(),
                &json!({"suite": suite, "passed": passed, "reports": reports}),
            )?;
            Ok(if passed { 0 } else { 2 })
        }
    }
}

/// Integer coefficients are read as a semi-classical element; motivic ones must be regular.
fn read_sc_element(s: &str, n: usize) -> Result<ScElement> {
    let v: Value = serde_json::from_str(s)?;
    let all_int = v
        .get("terms")
        .and_then(Value::as_array)
        .is_some_and(|ts| ts.iter().all(|t| t.get("coeff").is_some_and(Value::is_i64)));
    if all_int {
        ScElement::from_json_value(&v, n)
    } else {
        HallAlgebra::semiclassical(&HallElement::from_json_value(&v, n)?)
    }
}

fn load_weight(choice: &str, n: usize, default: i64) -> Result<WeightFunction> {
    match choice {
        "one" => Ok(WeightFunction::ConstantOne),
        "behrend" => Ok(WeightFunction::Behrend),
        path => WeightFunction::from_json(&read(Path::new(path))?, n, default),
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    let v = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad field list {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty field list".into()));
    }
    Ok(v)
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn write_out(path: Option<&Path>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
