//! `mlq` subcommands. Exit codes: 0 success, 1 usage error, 2 failed verification.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use mlq::ansatz::{default_dimension, proportional, Ansatz};
use mlq::asep::{martin_check, simulate, stationary, total_variation};
use mlq::macdonald::{check_qkz, e_nonsymmetric, fmu, specialize_qt, zlambda};
use mlq::mlq::{enumerate_mlq, Composition};
use mlq::ring::{parse_rat, BigRat, XPolynomial};
use mlq::tableaux::{enumerate_qt, AugmentedDiagram};

#[derive(Parser, Debug)]
#[command(name = "mlq", version, about = "Multiline queues, F_mu and Macdonald polynomials in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the multiline queues of type --mu.
    Enumerate(Common),
    /// F_mu as a polynomial in x with coefficients in Q(q,t).
    Fmu(Common),
    /// The symmetric sum Z_lambda.
    Zlambda(Common),
    /// The nonsymmetric polynomial E_lambda, after checking the Cherednik eigen-equations.
    Nonsym(Common),
    /// Check every exchange, stability and cyclic relation over the rearrangements of --lambda.
    VerifyQkz(Common),
    /// List the queue tableaux of type --mu with their weights.
    Tableaux(Common),
    /// Exact stationary distribution of the exclusion process on --lambda at --t.
    Stationary(Common),
    /// Compare the stationary distribution with F_mu(1,...,1; 1, t).
    MartinCheck(Common),
    /// The matrix-product trace Y_mu, or with --lambda a proportionality check against F.
    Ansatz(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Composition, e.g. 0,1,2,2.
    #[arg(long)]
    mu: Option<String>,
    /// Partition, e.g. 2,1,0.
    #[arg(long)]
    lambda: Option<String>,
    /// Rational t, e.g. 1/2.
    #[arg(long)]
    t: Option<String>,
    /// Rational q.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte-Carlo steps for `stationary`; no simulation when absent.
    #[arg(long)]
    steps: Option<u64>,
    /// Truncation dimension for `ansatz`.
    #[arg(long)]
    trunc: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    Failed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl Common {
    fn composition(&self, which: &str) -> Result<Composition, CliError> {
        let s = match which {
            "mu" => self.mu.as_ref(),
            _ => self.lambda.as_ref(),
        };
        s.ok_or_else(|| usage(format!("--{which} is required")))?.parse().map_err(usage)
    }

    fn partition(&self) -> Result<Composition, CliError> {
        let l = self.composition("lambda")?;
        if !l.is_partition() {
            return Err(usage(format!("--lambda {l} is not weakly decreasing")));
        }
        Ok(l)
    }

    fn rational(s: &Option<String>, flag: &str) -> Result<Option<BigRat>, CliError> {
        s.as_deref().map(|v| parse_rat(v).map_err(|e| usage(format!("--{flag}: {e}")))).transpose()
    }

    fn t(&self) -> Result<BigRat, CliError> {
        Self::rational(&self.t, "t")?.ok_or_else(|| usage("--t is required"))
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    /// Set for verification subcommands that found a failure.
    failure: Option<String>,
}

impl Output {
    fn ok(text: String, json: impl Serialize) -> Self {
        Output { text, json: serde_json::to_value(json).expect("serializable"), failure: None }
    }
}

fn poly_output(f: &XPolynomial, c: &Common) -> Result<Output, CliError> {
    let f = match (Common::rational(&c.q, "q")?, Common::rational(&c.t, "t")?) {
        (Some(q), Some(t)) => specialize_qt(f, &q, &t).map_err(usage)?,
        (None, None) => f.clone(),
        _ => return Err(usage("--q and --t must be given together")),
    };
    Ok(Output::ok(format!("{f}\n"), f.to_json()))
}

fn execute(cmd: &Command) -> Result<(Output, &Common), CliError> {
    let out = match cmd {
        Command::Enumerate(c) => {
            let mu = c.composition("mu")?;
            let queues = enumerate_mlq(&mu);
            let mut text = format!("{} multiline queues of type {mu}\n", queues.len());
            for (k, q) in queues.iter().enumerate() {
                text.push_str(&format!("\n#{} weight {} x^{:?}\n{}", k + 1, q.wt_qt(), q.wt_x(), q.ascii()));
            }
            (Output::ok(text, queues.iter().map(|q| q.to_json()).collect::<Vec<_>>()), c)
        }
        Command::Fmu(c) => (poly_output(&fmu(&c.composition("mu")?), c)?, c),
        Command::Zlambda(c) => (poly_output(&zlambda(&c.partition()?).map_err(usage)?, c)?, c),
        Command::Nonsym(c) => {
            let lam = c.partition()?;
            match e_nonsymmetric(&lam) {
                Ok(e) => (poly_output(&e, c)?, c),
                Err(e) => return Err(CliError::Failed(format!("{e}\n"))),
            }
        }
        Command::VerifyQkz(c) => {
            let report = check_qkz(&c.partition()?);
            let mut text = format!("{:<18} {:<14} {:>3}  result\n", "relation", "mu", "i");
            for ch in &report.checks {
                let i = ch.index.map_or("-".to_string(), |i| (i + 1).to_string());
                let verdict = if ch.passed { "pass" } else { "FAIL" };
                text.push_str(&format!("{:<18} {:<14} {:>3}  {verdict}\n", format!("{:?}", ch.relation), ch.mu.to_string(), i));
            }
            text.push_str(&report.to_string());
            let failure = (!report.all_passed()).then(|| report.to_string());
            let mut o = Output::ok(text, &report);
            o.failure = failure;
            (o, c)
        }
        Command::Tableaux(c) => {
            let mu = c.composition("mu")?;
            let d = AugmentedDiagram::for_type(&mu);
            let ts = enumerate_qt(&d);
            let mut text = format!("{} queue tableaux of type {mu}\n", ts.len());
            for (k, t) in ts.iter().enumerate() {
                text.push_str(&format!("\n#{} weight {} x^{:?}\n{}", k + 1, t.weight(), t.x_monomial(), t.ascii()));
            }
            (Output::ok(text, ts.iter().map(|t| t.to_json()).collect::<Vec<_>>()), c)
        }
        Command::Stationary(c) => {
            let lam = c.partition()?;
            let t = c.t()?;
            let st = stationary(&lam, &t).map_err(|e| CliError::Failed(format!("{e}\n")))?;
            let mut text = String::new();
            for (s, p) in st.space.states().iter().zip(&st.pi) {
                text.push_str(&format!("{s}  {p}\n"));
            }
            if let Some(steps) = c.steps {
                let to_f = |v: &BigRat| v.to_f64().unwrap_or(f64::NAN);
                let emp = simulate(&lam, to_f(&t), steps.max(1), c.seed).map_err(usage)?;
                let exact: Vec<f64> = st.pi.iter().map(to_f).collect();
                text.push_str(&format!("simulated {steps} steps (seed {}): total variation {:.6}\n", c.seed, total_variation(&emp, &exact)));
            }
            (Output::ok(text, st.to_json()), c)
        }
        Command::MartinCheck(c) => {
            let lam = c.partition()?;
            let t = c.t()?;
            let r = martin_check(&lam, &t).map_err(|e| CliError::Failed(format!("{e}\n")))?;
            let mut text = format!("{:<14} {:>14} {:>14}\n", "state", "pi", "F(1;1,t)");
            for ((s, p), f) in r.stationary.space.states().iter().zip(&r.stationary.pi).zip(&r.f_values) {
                text.push_str(&format!("{:<14} {:>14} {:>14}\n", s.to_string(), p.to_string(), f.to_string()));
            }
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            text.push_str(&format!("proportional: {verdict} (max cross-ratio discrepancy {})\n", r.max_discrepancy));
            #[derive(Serialize)]
            struct Report {
                lambda: Vec<u32>,
                t: String,
                states: Vec<Vec<u32>>,
                pi: Vec<String>,
                f: Vec<String>,
                max_discrepancy: String,
                passed: bool,
            }
            let j = r.stationary.to_json();
            let report = Report {
                lambda: j.lambda,
                t: j.t,
                states: j.states,
                pi: j.pi,
                f: r.f_values.iter().map(|v| v.to_string()).collect(),
                max_discrepancy: r.max_discrepancy.to_string(),
                passed: r.passed(),
            };
            let mut o = Output::ok(text.clone(), report);
            o.failure = (!r.passed()).then_some(text);
            (o, c)
        }
        Command::Ansatz(c) => {
            let ans = Ansatz::new();
            if c.mu.is_some() {
                let mu = c.composition("mu")?;
                let d = c.trunc.unwrap_or_else(|| default_dimension(mu.len()));
                let y = ans.y(&mu, d).map_err(|e| CliError::Failed(format!("{e}\n")))?;
                (poly_output(&y, c)?, c)
            } else {
                let lam = c.partition()?;
                let d = c.trunc.unwrap_or_else(|| default_dimension(lam.len()));
                let mus = lam.rearrangements();
                let ys = mus.iter().map(|m| ans.y(m, d)).collect::<Result<Vec<_>, _>>().map_err(|e| CliError::Failed(format!("{e}\n")))?;
                let fs: Vec<_> = mus.iter().map(fmu).collect();
                let ok = proportional(&ys, &fs);
                let text = format!("Y_mu / F_mu independent of mu over {} rearrangements of {lam}: {}\n", mus.len(), if ok { "pass" } else { "FAIL" });
                let mut o = Output::ok(text.clone(), serde_json::json!({"lambda": lam.parts(), "rearrangements": mus.len(), "passed": ok}));
                o.failure = (!ok).then_some(text);
                (o, c)
            }
        }
    };
    Ok(out)
}

/// Runs `argv` (program name first), writing results to `out` or `--out`.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((o, c)) => {
            let body = match c.format {
                Format::Text => o.text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&o.json).expect("valid json")),
            };
            let written = match &c.out {
                Some(path) => std::fs::write(path, body.as_bytes()),
                None => out.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "io: {e}");
                return 1;
            }
            if let Some(f) = o.failure {
                let _ = write!(err, "{f}");
                return 2;
            }
            0
        }
        Err(CliError::Failed(msg)) => {
            let _ = write!(err, "{msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
