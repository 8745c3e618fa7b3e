//! Command-line parsing into a validated [`RunConfig`].

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::classical::WeightFamily;
use crate::error::Error;
use crate::moments::DEFAULT_NODES;
use crate::numeric::{parse_real, Real};
use crate::partition::Route;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISSING: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

/// Digits a double-double value carries; also the default output width.
pub const MAX_DIGITS: usize = 32;

/// Longest accepted X grid.
const MAX_GRID: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "skewgas", version, about = "Skew orthogonal polynomials and partition functions of the two-component log-gas")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Q_0..Q_{2N-1}, their normalizations and the expansion coefficients
    Sop(Flags),
    /// The 2N x 2N moment matrix m_ij(X)
    Moments(Flags),
    /// Z_N(X) by the requested routes
    Partition(Flags),
    /// Run the invariant suite and print a residual table
    Verify(Flags),
    /// Z_N over a grid of X values
    Sweep(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// gaussian | laguerre | jacobi | gencauchy
    #[arg(long)]
    family: Option<String>,
    /// family parameters as k=v, comma separated or repeated
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// number of particle pairs
    #[arg(long = "N", value_name = "N")]
    n: Option<String>,
    /// fugacity, or a grid start:stop:step
    #[arg(long = "X", value_name = "X", allow_hyphen_values = true)]
    x: Option<String>,
    /// comma separated subset of pf, prod, bf
    #[arg(long)]
    routes: Option<String>,
    /// allow the four-dimensional brute-force sector at N = 2
    #[arg(long)]
    slow: bool,
    /// json | csv
    #[arg(long)]
    format: Option<String>,
    /// significant digits of emitted decimals (at most 32)
    #[arg(long)]
    digits: Option<String>,
    /// outer quadrature node budget
    #[arg(long)]
    nodes: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Sop,
    Moments,
    Partition,
    Verify,
    Sweep,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Sop => "sop",
            Command::Moments => "moments",
            Command::Partition => "partition",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    /// aligned text, the default for `verify`
    Table,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub family: WeightFamily,
    pub n: usize,
    /// a single value unless the command is `sweep` or `verify`
    pub xs: Vec<Real>,
    pub digits: usize,
    pub nodes: usize,
    pub format: Format,
    pub routes: Vec<Route>,
    pub slow: bool,
}

/// A parse failure with its exit code. Help and version requests use
/// code 0 and carry the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn missing(what: impl Into<String>) -> CliError {
        CliError { code: EXIT_MISSING, message: format!("missing required parameter: {}", what.into()) }
    }

    fn invalid(what: impl Into<String>) -> CliError {
        CliError { code: EXIT_INVALID, message: format!("invalid parameter: {}", what.into()) }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn parse_family(name: &str, params: &[(String, Real)]) -> Result<WeightFamily, CliError> {
    let (family, allowed, required): (&str, &[&str], &[&str]) = match name.to_ascii_lowercase().as_str() {
        "gaussian" | "hermite" => ("gaussian", &[], &[]),
        "laguerre" => ("laguerre", &["a"], &["a"]),
        "jacobi" => ("jacobi", &["a", "b"], &["a", "b"]),
        "gencauchy" | "cauchy" => ("gencauchy", &["p", "q"], &["p"]),
        other => return Err(CliError::invalid(format!("unknown family '{other}'"))),
    };
    for (k, _) in params {
        if !allowed.contains(&k.as_str()) {
            return Err(CliError::invalid(format!("family {family} takes no parameter '{k}'")));
        }
    }
    let get = |k: &str| params.iter().find(|(key, _)| key == k).map(|(_, v)| *v);
    let missing: Vec<&str> = required.iter().copied().filter(|k| get(k).is_none()).collect();
    if !missing.is_empty() {
        return Err(CliError::missing(format!("{} for family {family}", missing.join(","))));
    }
    let w = match family {
        "gaussian" => WeightFamily::gaussian(),
        "laguerre" => WeightFamily::laguerre(get("a").unwrap())?,
        "jacobi" => WeightFamily::jacobi(get("a").unwrap(), get("b").unwrap())?,
        _ => WeightFamily::gencauchy(get("p").unwrap(), get("q").unwrap_or(Real::ZERO))?,
    };
    Ok(w)
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, Real)>, CliError> {
    let mut out: Vec<(String, Real)> = Vec::new();
    for item in raw.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| CliError::invalid(format!("'{item}' is not of the form k=v")))?;
        let k = k.trim().to_string();
        if out.iter().any(|(key, _)| *key == k) {
            return Err(CliError::invalid(format!("parameter '{k}' given twice")));
        }
        let v = parse_real(v.trim()).map_err(|_| CliError::invalid(format!("value of '{k}' is not a number: '{v}'")))?;
        out.push((k, v));
    }
    Ok(out)
}

fn parse_x(raw: &str, grid_allowed: bool) -> Result<Vec<Real>, CliError> {
    let num = |s: &str| parse_real(s.trim()).map_err(|_| CliError::invalid(format!("X value '{s}' is not a number")));
    let parts: Vec<&str> = raw.split(':').collect();
    match parts.len() {
        1 => Ok(vec![num(parts[0])?]),
        3 if grid_allowed => {
            let (a, b, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            if !(step > Real::ZERO) || b < a {
                return Err(CliError::invalid(format!("X grid '{raw}' needs start <= stop and step > 0")));
            }
            // tolerate a stop that the step misses by rounding
            let count = ((b - a) / step + Real::new(1e-9)).floor().to_f64() as usize + 1;
            if count > MAX_GRID {
                return Err(CliError::invalid(format!("X grid '{raw}' has more than {MAX_GRID} points")));
            }
            Ok((0..count).map(|k| a + step * Real::from_usize(k)).collect())
        }
        3 => Err(CliError::invalid("this command takes a single X, not a grid")),
        _ => Err(CliError::invalid(format!("X '{raw}' is neither a number nor start:stop:step"))),
    }
}

fn parse_count(raw: &str, what: &str, min: usize, max: usize) -> Result<usize, CliError> {
    let v: usize = raw.trim().parse().map_err(|_| CliError::invalid(format!("{what} '{raw}' is not a non-negative integer")))?;
    if v < min || v > max {
        return Err(CliError::invalid(format!("{what} must lie in {min}..={max}, got {v}")));
    }
    Ok(v)
}

fn parse_routes(raw: Option<&str>, n: usize, slow: bool) -> Result<Vec<Route>, CliError> {
    match raw {
        None => Ok(Route::ALL.into_iter().filter(|r| r.available(n, slow)).collect()),
        Some(list) => {
            let mut out: Vec<Route> = Vec::new();
            for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let r: Route = name.parse().map_err(|e: Error| CliError::invalid(e.to_string()))?;
                if !r.available(n, slow) {
                    let why = if n == 2 { "needs --slow at N = 2" } else { "is limited to N <= 2" };
                    return Err(CliError::invalid(format!("route {r} {why}")));
                }
                if !out.contains(&r) {
                    out.push(r);
                }
            }
            if out.is_empty() {
                return Err(CliError::invalid("empty route list"));
            }
            Ok(out)
        }
    }
}

/// Parses `argv` (including the program name). `env_precision` is the
/// value of SKEWGAS_PRECISION, which supplies the digit count when
/// `--digits` is absent.
pub fn parse_args<I, T>(argv: I, env_precision: Option<&str>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                }
            }
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.render().to_string() }
    })?;
    let (command, f) = match cli.command {
        Cmd::Sop(f) => (Command::Sop, f),
        Cmd::Moments(f) => (Command::Moments, f),
        Cmd::Partition(f) => (Command::Partition, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
    };

    let name = f.family.as_deref().ok_or_else(|| CliError::missing("--family"))?;
    let params = parse_params(&f.params)?;
    let family = parse_family(name, &params)?;

    let n = parse_count(f.n.as_deref().ok_or_else(|| CliError::missing("--N"))?, "N", 1, 64)?;
    family.check_size(n)?;

    let grid_allowed = matches!(command, Command::Sweep | Command::Verify);
    let xs = match (f.x.as_deref(), command) {
        (Some(raw), _) => parse_x(raw, grid_allowed)?,
        (None, Command::Verify) => [0.0, 0.5, 1.0, 2.0].iter().map(|&v| Real::new(v)).collect(),
        (None, _) => return Err(CliError::missing("--X")),
    };

    let digits = match (f.digits.as_deref(), env_precision) {
        (Some(d), _) => parse_count(d, "--digits", 1, MAX_DIGITS)?,
        (None, Some(env)) => parse_count(env, "SKEWGAS_PRECISION", 1, MAX_DIGITS)?,
        (None, None) => MAX_DIGITS,
    };
    let nodes = match f.nodes.as_deref() {
        Some(v) => parse_count(v, "--nodes", 8, 1024)?,
        None => DEFAULT_NODES,
    };
    let format = match f.format.as_deref().map(str::to_ascii_lowercase).as_deref() {
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => return Err(CliError::invalid(format!("format '{other}' (expected json or csv)"))),
        None => match command {
            Command::Sweep => Format::Csv,
            Command::Verify => Format::Table,
            _ => Format::Json,
        },
    };
    let routes = parse_routes(f.routes.as_deref(), n, f.slow)?;

    Ok(RunConfig { command, family, n, xs, digits, nodes, format, routes, slow: f.slow })
}
