//! Command-line driver. [`run`] parses arguments, executes one subcommand
//! and returns its exit code and output, so it can be exercised in-process.
//!
//! Exit codes: 0 pass, 1 identity or suite failure, 2 usage or input error.
//!
//! Matrix files for `pfaffian` are line oriented:
//!
//! ```text
//! # comment
//! dim 4
//! vars 2                      # Weyl size n, default dim/2
//! kind anti-alternating       # or alternating (default)
//! 1 1 u
//! 2 2 u
//! 1 3 x[1,2]
//! 3 1 d[1,2]
//! expect x[1,2]d[1,2] + u^2 + 1/2   # optional; a mismatch exits with 1
//! ```
//!
//! Omitted entries are filled in from the given ones by (anti-)alternation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::capelli::{
    gamma, hermite_relation_check, main_identity_check, symbol_identity_check, symbol_pfaffian, HermiteData,
};
use crate::error::{Error, Result};
use crate::opmatrix::{build_phi, mirror, OpMatrix};
use crate::pfaffian::{pf_anti, pfaffian, Backend, PfConfig};
use crate::suite::run_suite;
use crate::weyl::{parse_element, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Full,
    Restricted,
    Forms,
    Commutative,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Full => Backend::Full,
            BackendArg::Restricted => Backend::Restricted,
            BackendArg::Forms => Backend::Forms,
            BackendArg::Commutative => Backend::Commutative,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "capelli", version, about = "Exact Pfaffians of operator matrices and the skew Capelli generating function")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest matrix dimension accepted by the restricted and forms backends.
    #[arg(long, default_value_t = 12, global = true)]
    pub max_dim: usize,
    /// Abort with exit code 2 after this many seconds.
    #[arg(long, global = true)]
    pub timeout_secs: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check Pf(Phi(u)) against the generating sum.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "restricted")]
        backend: BackendArg,
    },
    /// Print the invariant operator Gamma_k.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Print H_m and a_m(u).
    Hermite {
        #[arg(long)]
        m: u32,
    },
    /// Check the commutative symbol identity.
    Symbol {
        #[arg(long)]
        n: usize,
    },
    /// Pfaffian of a matrix read from a file.
    Pfaffian {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "restricted")]
        backend: BackendArg,
    },
    /// Run the seeded invariant suite.
    Suite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time the Pfaffian backends on Phi(u).
    Bench {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

/// Resolved settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub threads: Option<usize>,
    pub pf: PfConfig,
    pub timeout: Option<Duration>,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Self {
        let pf = PfConfig { full_guard: g.max_dim.min(8), restricted_guard: g.max_dim, ..PfConfig::default() };
        RunConfig { format: g.format, threads: g.threads, pf, timeout: g.timeout_secs.map(Duration::from_secs) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(0, text) } else { Outcome::usage(text) };
        }
    };
    let cfg = RunConfig::from_args(&cli.global);
    if let Some(t) = cfg.threads {
        // Only the first call can size the global pool; later calls keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match cfg.timeout {
        None => execute(&cli.command, &cfg),
        Some(limit) => {
            let (tx, rx) = mpsc::channel();
            let (command, worker_cfg) = (cli.command.clone(), cfg.clone());
            thread::spawn(move || {
                let _ = tx.send(execute(&command, &worker_cfg));
            });
            rx.recv_timeout(limit)
                .unwrap_or_else(|_| Outcome::usage(format!("timed out after {} s", limit.as_secs())))
        }
    }
}

fn execute(command: &Command, cfg: &RunConfig) -> Outcome {
    let result = match command {
        Command::Verify { n, backend } => cmd_verify(*n, (*backend).into(), cfg),
        Command::Gamma { n, k } => cmd_gamma(*n, *k, cfg),
        Command::Hermite { m } => Ok(cmd_hermite(*m, cfg)),
        Command::Symbol { n } => cmd_symbol(*n, cfg),
        Command::Pfaffian { file, backend } => cmd_pfaffian(file, (*backend).into(), cfg),
        Command::Suite { seed } => Ok(cmd_suite(*seed, cfg)),
        Command::Bench { n_min, n } => cmd_bench(*n_min, *n, cfg),
    };
    result.unwrap_or_else(|e| Outcome::usage(format!("error: {e}")))
}

fn check_n(n: usize, cfg: &RunConfig) -> Result<()> {
    if n == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    if 2 * n > cfg.pf.restricted_guard {
        return Err(Error::DimensionGuard {
            dim: 2 * n,
            limit: cfg.pf.restricted_guard,
            backend: "verify",
            hint: "raise --max-dim",
        });
    }
    Ok(())
}

pub fn cmd_verify(n: usize, backend: Backend, cfg: &RunConfig) -> Result<Outcome> {
    check_n(n, cfg)?;
    let report = main_identity_check(n, backend, &cfg.pf)?;
    let code = if report.pass { 0 } else { 1 };
    let out = match cfg.format {
        Format::Json => report.to_json().to_string(),
        Format::Text => {
            let mut s = format!("Pf(Phi(u)) = {}\n{report}", report.pf);
            if !report.pass {
                write!(s, "\ndelta = {}", report.delta).expect("string write");
            }
            s
        }
    };
    Ok(Outcome::ok(code, out + "\n"))
}

pub fn cmd_gamma(n: usize, k: usize, cfg: &RunConfig) -> Result<Outcome> {
    check_n(n, cfg)?;
    let g = gamma(n, k)?;
    let out = match cfg.format {
        Format::Json => json!({"n": n, "k": k, "terms": g.element.len(), "element": g.element.to_json(), "text": g.element.to_string()}).to_string(),
        Format::Text => {
            let mut s = format!("Gamma_{k} on Alt_{n} ({} terms)\n", g.element.len());
            for (m, c) in g.element.terms().rev() {
                let t = WeylElement::from_monomial(n, m.clone(), c.clone());
                writeln!(s, "  {t}").expect("string write");
            }
            s.pop();
            s
        }
    };
    Ok(Outcome::ok(0, out + "\n"))
}

pub fn cmd_hermite(m: u32, cfg: &RunConfig) -> Outcome {
    let data = HermiteData::new(m);
    let relation = hermite_relation_check(m);
    let out = match cfg.format {
        Format::Json => json!({
            "m": m,
            "hermite": data.hermite.to_string(),
            "a": data.a_poly.to_json(),
            "a_text": data.a_poly.to_string(),
            "relation": relation,
        })
        .to_string(),
        Format::Text => data.to_string(),
    };
    Outcome::ok(if relation { 0 } else { 1 }, out + "\n")
}

pub fn cmd_symbol(n: usize, cfg: &RunConfig) -> Result<Outcome> {
    check_n(n, cfg)?;
    let sigma = symbol_pfaffian(n)?;
    let pass = symbol_identity_check(n)?;
    let out = match cfg.format {
        Format::Json => json!({"n": n, "pass": pass, "symbol": sigma.to_string()}).to_string(),
        Format::Text => format!("sigma(Pf(Phi~(u))) = {sigma}\npass: {pass}"),
    };
    Ok(Outcome::ok(if pass { 0 } else { 1 }, out + "\n"))
}

pub fn cmd_suite(seed: u64, cfg: &RunConfig) -> Outcome {
    let report = run_suite(seed, &cfg.pf);
    let out = match cfg.format {
        Format::Json => report.to_json().to_string(),
        Format::Text => report.to_string(),
    };
    Outcome::ok(if report.all_passed() { 0 } else { 1 }, out + "\n")
}

pub fn cmd_bench(n_min: usize, n_max: usize, cfg: &RunConfig) -> Result<Outcome> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Usage("need 1 <= --n-min <= --n".into()));
    }
    check_n(n_max, cfg)?;
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for backend in [Backend::Full, Backend::Restricted, Backend::Forms] {
            if backend == Backend::Full && 2 * n > cfg.pf.full_guard {
                continue;
            }
            let start = Instant::now();
            let pf = pf_anti(&build_phi(n), backend, &cfg.pf)?;
            rows.push((n, backend, start.elapsed().as_secs_f64() * 1e3, pf.len()));
        }
    }
    let out = match cfg.format {
        Format::Json => json!(rows
            .iter()
            .map(|(n, b, ms, t)| json!({"n": n, "backend": b.name(), "millis": ms, "pf_term_count": t}))
            .collect::<Vec<_>>())
        .to_string(),
        Format::Text => {
            let mut s = format!("{:>3}  {:<11} {:>12}  {:>6}\n", "n", "backend", "millis", "terms");
            for (n, b, ms, t) in &rows {
                writeln!(s, "{n:>3}  {:<11} {ms:>12.3}  {t:>6}", b.name()).expect("string write");
            }
            s.pop();
            s
        }
    };
    Ok(Outcome::ok(0, out + "\n"))
}

/// Parsed matrix file.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub matrix: OpMatrix,
    pub anti: bool,
    pub expect: Option<WeylElement>,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Reads the line-oriented matrix format described in the module docs.
pub fn parse_matrix_file(text: &str) -> Result<MatrixFile> {
    let mut dim: Option<usize> = None;
    let mut vars: Option<usize> = None;
    let mut anti = false;
    let mut entries: Vec<(usize, usize, usize, usize, String)> = Vec::new();
    let mut expect: Option<(usize, usize, String)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col0 = body.len() - trimmed.len() + 1;
        let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = col0 + head.len() + (rest.len() - rest.trim_start().len()) + usize::from(!rest.is_empty());
        let rest = rest.trim();
        let number = |s: &str, col: usize| -> Result<usize> {
            s.parse().map_err(|_| parse_err(line_no, col, format!("expected a positive integer, found `{s}`")))
        };
        match head {
            "dim" => dim = Some(number(rest, rest_col)?),
            "vars" => vars = Some(number(rest, rest_col)?),
            "kind" => {
                anti = match rest {
                    "alternating" => false,
                    "anti-alternating" => true,
                    other => return Err(parse_err(line_no, rest_col, format!("unknown kind `{other}`"))),
                }
            }
            "expect" => expect = Some((line_no, rest_col, rest.to_string())),
            _ => {
                let i = number(head, col0)?;
                let (js, expr) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parse_err(line_no, rest_col, "expected `i j <expression>`"))?;
                let j = number(js, rest_col)?;
                let expr_trim = expr.trim_start();
                let expr_col = rest_col + js.len() + 1 + (expr.len() - expr_trim.len());
                entries.push((line_no, expr_col, i, j, expr_trim.to_string()));
            }
        }
    }
    let dim = dim.ok_or_else(|| parse_err(1, 1, "missing `dim N` line"))?;
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    let n = vars.unwrap_or(dim / 2);
    let shift = |e: Error, line: usize, col: usize| match e {
        Error::Parse { col: c, msg, .. } => parse_err(line, col + c - 1, msg),
        other => other,
    };
    let mut x = OpMatrix::zeros(n, dim);
    let mut given = vec![false; dim * dim];
    for (line, col, i, j, expr) in &entries {
        if *i == 0 || *j == 0 || *i > dim || *j > dim {
            return Err(parse_err(*line, 1, format!("entry ({i},{j}) outside a {dim}x{dim} matrix")));
        }
        let v = parse_element(expr, n).map_err(|e| shift(e, *line, *col))?;
        let (r, c) = (i - 1, j - 1);
        let (pr, pc) = if anti { (mirror(dim, *j) - 1, mirror(dim, *i) - 1) } else { (c, r) };
        x.set(r, c, v.clone());
        given[r * dim + c] = true;
        if !given[pr * dim + pc] {
            x.set(pr, pc, -&v);
        }
    }
    let ok = if anti { x.is_anti_alternating() } else { x.is_alternating() };
    if !ok {
        return Err(if anti { Error::NotAntiAlternating } else { Error::NotAlternating });
    }
    let expect = match expect {
        None => None,
        Some((line, col, text)) => Some(parse_element(&text, n).map_err(|e| shift(e, line, col))?),
    };
    Ok(MatrixFile { matrix: x, anti, expect })
}

pub fn cmd_pfaffian(path: &std::path::Path, backend: Backend, cfg: &RunConfig) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let file = parse_matrix_file(&text).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Usage(format!("{}:{line}:{col}: {msg}", path.display())),
        other => other,
    })?;
    let pf = if file.anti { pf_anti(&file.matrix, backend, &cfg.pf)? } else { pfaffian(&file.matrix, backend, &cfg.pf)? };
    let matches = file.expect.as_ref().map(|e| *e == pf);
    let out = match cfg.format {
        Format::Json => json!({"dim": file.matrix.dim(), "backend": backend.name(), "pf": pf.to_string(), "expect_matches": matches}).to_string(),
        Format::Text => {
            let mut s = format!("Pf = {pf}");
            if let Some(m) = matches {
                write!(s, "\nexpect: {}", if m { "match" } else { "MISMATCH" }).expect("string write");
            }
            s
        }
    };
    Ok(Outcome::ok(if matches == Some(false) { 1 } else { 0 }, out + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_text() {
        let o = run(["capelli", "hermite", "--m", "3"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "H_3 = 8x^3 - 12x; a_3 = u^3 + 3/2 u\n");
    }

    #[test]
    fn verify_exit_codes() {
        let o = run(["capelli", "verify", "--n", "2"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("Pf(Phi(u)) = x[1,2]d[1,2] + u^2 + 1/2\n"));
        assert_eq!(run(["capelli", "verify", "--n", "0"]).code, 2);
        assert_eq!(run(["capelli", "verify", "--n", "7"]).code, 2);
        assert_eq!(run(["capelli", "verify", "--n", "2", "--backend", "commutative"]).code, 2);
        assert_eq!(run(["capelli", "bogus"]).code, 2);
    }

    #[test]
    fn matrix_file_completion() {
        let f = parse_matrix_file("dim 2\nvars 2\n1 2 d[1,2]\nexpect d[1,2]\n").unwrap();
        assert_eq!(*f.matrix.get(1, 0), -&WeylElement::d(2, 1, 2).unwrap());
        let f = parse_matrix_file("dim 4\nvars 2\nkind anti-alternating\n1 1 u\n2 2 u\n1 3 x[1,2]\n").unwrap();
        assert_eq!(*f.matrix.get(3, 3), -&WeylElement::u(2));
        assert_eq!(*f.matrix.get(1, 3), -&WeylElement::x(2, 1, 2).unwrap());
        assert!(f.matrix.is_anti_alternating());
    }

    #[test]
    fn matrix_file_errors_carry_positions() {
        let err = parse_matrix_file("dim 4\n1 2 x[1,2] + ?\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, col: 14, msg: "unexpected `?`".into() });
        assert!(matches!(parse_matrix_file("1 2 u\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix_file("dim 2\nkind skew\n"), Err(Error::Parse { line: 2, col: 6, .. })));
        assert!(matches!(parse_matrix_file("dim 2\n1 1 u\n"), Err(Error::NotAlternating)));
    }
}
