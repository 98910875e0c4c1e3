//! Command-line front end for `berkdisc`: reads a morphism file, runs one
//! computation and prints a JSON report (or a polygon plot).

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use berkdisc::fiber::{check_mult_sum, count_function, FiberData};
use berkdisc::json::{self as bj, Fixture};
use berkdisc::pushforward::{check_main_theorem_disc, multiradius_bruteforce, multiradius_from_count};
use berkdisc::radiality::{default_probes, radial_certificate_with_seed, weak_n_radial, DEFAULT_SEED};
use berkdisc::reduction::residual_report;
use berkdisc::render::{render_ascii, render_svg};
use berkdisc::{FieldElement, NewtonPolygon};

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "BERKDISC_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Local valuation polygon at `at`.
    Polygon {
        at: Option<String>,
    },
    /// Local polygon at `at` together with its inverse.
    Profile {
        at: Option<String>,
    },
    /// Radiality verdict, plus a weak `n`-radiality report when `n` is given.
    Radial {
        n: Option<usize>,
    },
    /// Preimages of `zeta_{c, p^-lambda}` with multiplicities.
    Fiber {
        lambda: String,
        fiber: Option<usize>,
    },
    Nfunction {
        fiber: Option<usize>,
    },
    Multiradius {
        fiber: Option<usize>,
    },
    Reduce,
    Check,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub seed: u64,
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "berkdisc", version, about = "Valuation polygons, radiality and multiradii of p-adic disc maps")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Morphism file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Local valuation polygon v_a(f, .)
    Polygon {
        #[command(flatten)]
        common: Common,
        /// Center as an element, e.g. '[["1/1",1]]' for pi. Defaults to 0.
        #[arg(long)]
        at: Option<String>,
    },
    /// Local polygon and its inverse (image radius to source radius)
    Profile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: Option<String>,
    },
    /// Radiality certificate or refutation
    Radial {
        #[command(flatten)]
        common: Common,
        /// Also compare the first n slopes across probe points.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Preimage points over a target radius, with multiplicities
    Fiber {
        #[command(flatten)]
        common: Common,
        /// Target lambda, e.g. 3/2.
        #[arg(long)]
        lambda: String,
        /// Index of the fiber in the file; all fibers when omitted.
        #[arg(long)]
        fiber: Option<usize>,
    },
    /// Count function N of each fiber
    Nfunction {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fiber: Option<usize>,
    },
    /// Multiradius of each fiber, with the brute-force cross-check
    Multiradius {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fiber: Option<usize>,
    },
    /// Reduction at the Gauss point
    Reduce {
        #[command(flatten)]
        common: Common,
    },
    /// Validate the file and compare radiality with fiber multiradii
    Check {
        #[command(flatten)]
        common: Common,
    },
}

fn usage(kind: ErrorKind, msg: impl fmt::Display) -> clap::Error {
    Cli::command().error(kind, msg)
}

/// Parses `argv` (including the program name). `BERKDISC_SEED`, when set,
/// overrides `--seed`.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_seed_env(argv, std::env::var(SEED_ENV).ok())
}

/// `parse_args` with the environment seed passed explicitly.
pub fn parse_args_with_seed_env<I, T>(argv: I, env_seed: Option<String>) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (command, common) = match cli.command {
        Cmd::Polygon { common, at } => (Command::Polygon { at }, common),
        Cmd::Profile { common, at } => (Command::Profile { at }, common),
        Cmd::Radial { common, n } => (Command::Radial { n }, common),
        Cmd::Fiber { common, lambda, fiber } => (Command::Fiber { lambda, fiber }, common),
        Cmd::Nfunction { common, fiber } => (Command::Nfunction { fiber }, common),
        Cmd::Multiradius { common, fiber } => (Command::Multiradius { fiber }, common),
        Cmd::Reduce { common } => (Command::Reduce, common),
        Cmd::Check { common } => (Command::Check, common),
    };
    let plots = matches!(command, Command::Polygon { .. } | Command::Profile { .. });
    if common.format != Format::Json && !plots {
        return Err(usage(ErrorKind::ArgumentConflict, "--format ascii/svg applies to polygon and profile only"));
    }
    if let Command::Radial { n: Some(0) } = command {
        return Err(usage(ErrorKind::InvalidValue, "--n starts at 1"));
    }
    let seed = match env_seed {
        Some(s) => {
            s.trim().parse().map_err(|_| usage(ErrorKind::InvalidValue, format!("{SEED_ENV}={s} is not a seed")))?
        }
        None => common.seed,
    };
    Ok(RunConfig { command, input: common.input, seed, format: common.format })
}

#[derive(Debug)]
pub enum RunError {
    Io(String),
    Domain(berkdisc::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Io(msg) => f.write_str(msg),
            RunError::Domain(e) => e.fmt(f),
        }
    }
}

impl From<berkdisc::Error> for RunError {
    fn from(e: berkdisc::Error) -> Self {
        RunError::Domain(e)
    }
}

/// Runs `config` and returns the exit code with the text for standard output.
/// Failures produce exit code 1 and a `{"error": ...}` object.
pub fn run(config: &RunConfig) -> (i32, String) {
    match execute(config) {
        Ok(out) => (0, out),
        Err(e) => (1, format!("{}\n", json!({ "error": e.to_string() }))),
    }
}

fn load(config: &RunConfig) -> Result<Fixture, RunError> {
    let text = fs::read_to_string(&config.input)
        .map_err(|e| RunError::Io(format!("cannot read {}: {e}", config.input.display())))?;
    Ok(bj::parse_fixture(&text)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn center(fx: &Fixture, at: &Option<String>) -> Result<FieldElement, RunError> {
    let params = fx.morphism.params();
    match at {
        Some(text) => Ok(bj::parse_element(params, text)?),
        None => Ok(FieldElement::zero(params)),
    }
}

fn selected(fx: &Fixture, index: Option<usize>) -> Result<Vec<(usize, &FiberData)>, RunError> {
    if fx.fibers.is_empty() {
        return Err(RunError::Io("the file has no fibers".into()));
    }
    match index {
        None => Ok(fx.fibers.iter().enumerate().collect()),
        Some(k) => fx
            .fibers
            .get(k)
            .map(|fd| vec![(k, fd)])
            .ok_or_else(|| RunError::Io(format!("fiber {k} does not exist ({} fibers)", fx.fibers.len()))),
    }
}

fn plot(poly: &NewtonPolygon, format: Format, report: Value) -> String {
    match format {
        Format::Json => pretty(&report),
        Format::Ascii => render_ascii(poly),
        Format::Svg => render_svg(poly),
    }
}

fn execute(config: &RunConfig) -> Result<String, RunError> {
    let fx = load(config)?;
    let f = &fx.morphism;
    let params = f.params();
    let p = params.p();
    let out = match &config.command {
        Command::Polygon { at } => {
            let a = center(&fx, at)?;
            let poly = f.local_polygon(&a)?;
            let report = json!({ "center": bj::element_to_json(&a), "polygon": bj::polygon_to_json(&poly) });
            plot(&poly, config.format, report)
        }
        Command::Profile { at } => {
            let a = center(&fx, at)?;
            let poly = f.profile(&a)?;
            let inverse = poly.invert()?;
            let pieces: Vec<Value> = inverse
                .pieces()
                .iter()
                .map(|pc| json!({ "from": pc.start.to_string(), "base": pc.base.to_string(), "slope": pc.slope.to_string() }))
                .collect();
            let report = json!({
                "center": bj::element_to_json(&a),
                "polygon": bj::polygon_to_json(&poly),
                "inverse": pieces,
            });
            plot(&poly, config.format, report)
        }
        Command::Radial { n } => {
            let verdict = radial_certificate_with_seed(f, config.seed);
            let mut report = bj::verdict_to_json(&verdict);
            report["seed"] = json!(config.seed);
            if let Some(n) = n {
                let outcome = weak_n_radial(f, *n, &default_probes(params, config.seed))?;
                report["weak"] = bj::nradial_to_json(&outcome);
            }
            pretty(&report)
        }
        Command::Fiber { lambda, fiber } => {
            let mu = bj::parse_rational(lambda)?;
            let reports = selected(&fx, *fiber)?
                .into_iter()
                .map(|(k, fd)| {
                    let mut r = bj::mult_sum_to_json(&check_mult_sum(fd, &mu)?);
                    r["fiber"] = json!(k);
                    Ok(r)
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            pretty(&json!({ "fibers": reports }))
        }
        Command::Nfunction { fiber } => {
            let reports = selected(&fx, *fiber)?
                .into_iter()
                .map(|(k, fd)| {
                    let nf = count_function(fd)?;
                    Ok(json!({
                        "fiber": k,
                        "center": bj::element_to_json(fd.center()),
                        "count_function": bj::count_function_to_json(&nf),
                    }))
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            pretty(&json!({ "fibers": reports }))
        }
        Command::Multiradius { fiber } => {
            let reports = selected(&fx, *fiber)?
                .into_iter()
                .map(|(k, fd)| {
                    let mr = multiradius_from_count(&count_function(fd)?, fd.degree())?;
                    let brute = multiradius_bruteforce(fd)?;
                    let mut r = bj::multiradius_to_json(&mr, p);
                    r["fiber"] = json!(k);
                    r["bruteforce_agrees"] = json!(brute == mr);
                    Ok(r)
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            pretty(&json!({ "fibers": reports }))
        }
        Command::Reduce => pretty(&bj::residual_to_json(&residual_report(f.poly())?)),
        Command::Check => {
            let verdict = radial_certificate_with_seed(f, config.seed);
            let main = if fx.fibers.len() >= 2 {
                bj::main_theorem_to_json(&check_main_theorem_disc(f, &fx.fibers)?, p)
            } else {
                Value::Null
            };
            pretty(&json!({
                "name": fx.name,
                "p": p,
                "ram": params.ram(),
                "degree": f.degree(),
                "etale": f.is_etale(),
                "fibers": fx.fibers.len(),
                "status": verdict.status.name(),
                "main_theorem": main,
            }))
        }
    };
    Ok(out)
}
