//! Command-line front end. The binary is a thin wrapper over [`run_from`].

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::elliptic::{complete, Backend, EllipticConfig, Kind, Modulus};
use crate::error::Error;
use crate::eval::{EvalResult, Method};
use crate::exec::{self, Strategy};
use crate::gtrig::{arcsin_pq, cos_pq, sin_pq, tan_pq, PQParams};
use crate::harness::report::{all_internal_pass, fmt_num, render_csv, render_text};
use crate::harness::{parse_range, run, run_all, GridSpec, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_DIVERGES: i32 = 4;

pub const DIVERGES: &str = "DIVERGES";

const ROW_HEADER: &str = "function,p,q,r,method,value,error_estimate";

#[derive(Parser, Debug)]
#[command(name = "pq-elliptic", version, about = "Generalized (p,q)-trigonometric functions and elliptic integrals")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Evaluation backend for K and E.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto, global = true)]
    method: MethodArg,
    /// Absolute and relative tolerance for quadrature and series.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Shift for the lambda backend, in [0, 1/2).
    #[arg(long, default_value_t = 0.25, global = true)]
    lambda: f64,
    /// Run grid work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function value.
    Eval {
        function: Function,
        p: f64,
        q: f64,
        /// Modulus r for K and E, argument x for the trigonometric functions.
        r: f64,
    },
    /// Tabulate a function over r = start:stop:step as CSV.
    Table { function: Function, p: f64, q: f64, range: String },
    /// Run verification suites.
    Verify {
        /// derivatives, trig, series, turan, r-convexity, corollary or all
        suite: String,
        #[arg(long)]
        grid_p: Option<String>,
        #[arg(long)]
        grid_q: Option<String>,
        #[arg(long)]
        grid_r: Option<String>,
        /// Print the CSV claim dump instead of the text report.
        #[arg(long)]
        csv: bool,
    },
    /// Data for the figure comparing K, E at (1.5, 2.25) with the classical pair.
    Figure,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Auto,
    Quad,
    Series,
    Lambda,
    Agm,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Function {
    #[value(name = "K")]
    K,
    #[value(name = "E")]
    E,
    #[value(name = "sin")]
    Sin,
    #[value(name = "cos")]
    Cos,
    #[value(name = "tan")]
    Tan,
    #[value(name = "arcsin")]
    Arcsin,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::K => "K",
            Function::E => "E",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Arcsin => "arcsin",
        }
    }
}

impl GlobalOpts {
    fn backend(&self) -> Backend {
        match self.method {
            MethodArg::Auto => Backend::Auto,
            MethodArg::Quad => Backend::Quadrature,
            MethodArg::Series => Backend::Series,
            MethodArg::Lambda => Backend::Lambda(self.lambda),
            MethodArg::Agm => Backend::Agm,
        }
    }

    fn config(&self) -> Result<EllipticConfig, String> {
        match self.tol {
            None => Ok(EllipticConfig::default()),
            Some(t) if t > 0.0 && t < 1.0 => Ok(EllipticConfig::with_tol(t)),
            Some(t) => Err(format!("--tol must lie in (0, 1), got {t}")),
        }
    }

    fn strategy(&self) -> Strategy {
        if self.sequential {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        }
    }
}

fn evaluate(function: Function, p: f64, q: f64, x: f64, opts: &GlobalOpts, cfg: &EllipticConfig) -> Result<EvalResult, Error> {
    let params = PQParams::new(p, q)?;
    let exact = |v: f64| EvalResult::new(v, Method::Quadrature, 0.0);
    match function {
        Function::K | Function::E => {
            let kind = if function == Function::K { Kind::First } else { Kind::Second };
            complete(kind, &params, &Modulus::new(&params, x)?, opts.backend(), cfg)
        }
        Function::Sin => sin_pq(&params, x).map(exact),
        Function::Cos => cos_pq(&params, x).map(exact),
        Function::Tan => tan_pq(&params, x).map(exact),
        Function::Arcsin => arcsin_pq(&params, x).map(exact),
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_divergence() {
        EXIT_DIVERGES
    } else {
        EXIT_DOMAIN
    }
}

fn row(function: Function, p: f64, q: f64, x: f64, res: &Result<EvalResult, Error>) -> String {
    let head = format!("{},{},{},{}", function.name(), fmt_num(p), fmt_num(q), fmt_num(x));
    match res {
        Ok(v) => format!("{head},{},{},{}", v.method, fmt_num(v.value), fmt_num(v.error_estimate)),
        Err(_) => format!("{head},none,{DIVERGES},{DIVERGES}"),
    }
}

fn grid_list(spec: &Option<String>, default: Vec<f64>) -> Result<Vec<f64>, String> {
    match spec {
        Some(s) => parse_range(s).map_err(|e| e.to_string()),
        None => Ok(default),
    }
}

fn suite_config(
    opts: &GlobalOpts,
    grid_p: &Option<String>,
    grid_q: &Option<String>,
    grid_r: &Option<String>,
) -> Result<SuiteConfig, String> {
    let mut sc = SuiteConfig { cfg: opts.config()?, strategy: opts.strategy(), ..SuiteConfig::default() };
    let d = GridSpec::default();
    sc.grid = GridSpec {
        p_values: grid_list(grid_p, d.p_values)?,
        q_values: grid_list(grid_q, d.q_values)?,
        r_values: grid_list(grid_r, d.r_values)?,
        deltas: d.deltas,
    };
    sc.grid.validate().map_err(|e| e.to_string())?;
    if grid_r.is_some() {
        sc.derivative_r = sc.grid.r_values.clone();
    }
    Ok(sc)
}

/// Column values of the figure data at one radius.
fn figure_row(r: f64, cfg: &EllipticConfig) -> String {
    let mut cols = vec![fmt_num(r)];
    for (p, q) in [(1.5, 2.25), (2.0, 2.0)] {
        let params = PQParams::new(p, q).expect("fixed exponents");
        let m = Modulus::new(&params, r).expect("r < 1");
        for kind in [Kind::First, Kind::Second] {
            cols.push(
                complete(kind, &params, &m, Backend::Auto, cfg).map_or_else(|_| DIVERGES.to_string(), |v| fmt_num(v.value)),
            );
        }
    }
    cols.join(",")
}

pub fn figure_csv(strategy: Strategy) -> String {
    let cfg = EllipticConfig::default();
    let rs: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
    let fig_half = 0.5 * PQParams::new(1.5, 2.25).expect("fixed exponents").pi_pq();
    let mut out = String::new();
    out.push_str(&format!("# pi_{{1.5,2.25}}/2 = {}\n", fmt_num(fig_half)));
    out.push_str("# K(0) = E(0) = pi_{p,q}/2 for each pair; as r -> 1, E_{p,q}(r) -> 1 for both pairs and K_{p,q}(r) -> infinity (p <= 2)\n");
    out.push_str("r,K_{1.5,2.25},E_{1.5,2.25},K_{2,2},E_{2,2}\n");
    for line in exec::map(&rs, strategy, |&r| figure_row(r, &cfg)) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let opts = cli.opts;
    let cfg = match opts.config() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Eval { function, p, q, r } => {
            let res = evaluate(function, p, q, r, &opts, &cfg);
            let _ = writeln!(out, "{}", row(function, p, q, r, &res));
            match res {
                Ok(_) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    exit_code(&e)
                }
            }
        }
        Command::Table { function, p, q, range } => {
            let xs = match parse_range(&range) {
                Ok(xs) => xs,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            if let Err(e) = PQParams::new(p, q) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DOMAIN;
            }
            let rows = exec::map(&xs, opts.strategy(), |&x| {
                let res = evaluate(function, p, q, x, &opts, &cfg);
                (row(function, p, q, x, &res), res.err())
            });
            let _ = writeln!(out, "{ROW_HEADER}");
            let mut code = EXIT_OK;
            for (line, e) in rows {
                let _ = writeln!(out, "{line}");
                if let Some(e) = e {
                    if !e.is_divergence() {
                        let _ = writeln!(err, "error: {e}");
                        code = EXIT_DOMAIN;
                    }
                }
            }
            code
        }
        Command::Verify { suite, grid_p, grid_q, grid_r, csv } => {
            let sc = match suite_config(&opts, &grid_p, &grid_q, &grid_r) {
                Ok(sc) => sc,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    return EXIT_USAGE;
                }
            };
            let reports = if suite == "all" {
                run_all(&sc)
            } else {
                match suite.parse::<Suite>() {
                    Ok(s) => vec![run(s, &sc)],
                    Err(msg) => {
                        let _ = writeln!(err, "error: {msg}");
                        return EXIT_USAGE;
                    }
                }
            };
            let text = if csv { render_csv(&reports) } else { render_text(&reports) };
            let _ = out.write_all(text.as_bytes());
            if all_internal_pass(&reports) {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            }
        }
        Command::Figure => {
            let _ = out.write_all(figure_csv(opts.strategy()).as_bytes());
            EXIT_OK
        }
    }
}

/// Entry point for the binary.
pub fn run_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_from(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
