use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use splitforge_core::cert::{ExtensionProblem, SplitCertificate, DEFAULT_PROBE_SEED};
use splitforge_core::splitting::{build_retraction, domain_test, BuildOptions, DomainVerdict, SplitError};
use splitforge_core::ufd::{ArithError, FactorBudget, Ring, Ufd, DEFAULT_FACTOR_BUDGET};
use splitforge_core::verify::{verify_certificate, VerificationReport};

use crate::document::{from_doc, from_json, to_doc, to_json, CertificateFile, DocError};
use crate::parser::{parse_problem, print_problem, AnyProblem};
use crate::with_problem;

pub const BUDGET_ENV: &str = "SPLITFORGE_FACTOR_BUDGET";

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Input = 2,
    VerificationFailed = 3,
    Timeout = 4,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Timeout(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Input(_) => ExitCode::Input,
            CliError::Verification(_) => ExitCode::VerificationFailed,
            CliError::Timeout(_) => ExitCode::Timeout,
        }
    }
}

impl From<SplitError> for CliError {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Arith(ArithError::FactorizationTimeout { .. }) => {
                CliError::Timeout(format!("{e} (raise --factor-budget or {BUDGET_ENV})"))
            }
            SplitError::InternalIdentityFailure(_) => CliError::Verification(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Verification(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "splitforge", version, about = "Build and check retraction certificates for quadratic extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// With J = (0), emit a certificate for every minimal prime.
    #[arg(long, global = true)]
    all_primes: bool,
    /// Factorization effort limit in elementary steps.
    #[arg(long, global = true, value_name = "N")]
    factor_budget: Option<u64>,
    /// Seed for the verifier's linearity probes.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a problem and print its certificate(s).
    Analyze { file: PathBuf },
    /// Write the certificate for a problem to a JSON file.
    Split {
        file: PathBuf,
        #[arg(short = 'o', long = "output", value_name = "CERT")]
        output: PathBuf,
    },
    /// Check a certificate file against a problem.
    Verify { file: PathBuf, cert: PathBuf },
    /// Run the built-in examples and print a summary table.
    Demo,
}

struct Settings {
    json: bool,
    opts: BuildOptions,
    seed: Option<u64>,
}

/// Runs the command line `args` (program name first). `budget_env` is the
/// value of the budget environment variable, if set.
pub fn run_with<I, T>(args: I, budget_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                ExitCode::Success
            } else {
                let _ = write!(err, "{rendered}");
                ExitCode::Usage
            };
        }
    };
    match dispatch(cli, budget_env, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point used by the binary.
pub fn run(args: Vec<OsString>) -> i32 {
    let env = std::env::var(BUDGET_ENV).ok();
    let code = run_with(args, env.as_deref(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    code as i32
}

fn budget(flag: Option<u64>, env: Option<&str>) -> Result<FactorBudget, CliError> {
    if let Some(n) = flag {
        return Ok(FactorBudget::new(n));
    }
    match env.map(str::trim) {
        None | Some("") => Ok(FactorBudget::new(DEFAULT_FACTOR_BUDGET)),
        Some(s) => s
            .parse()
            .map(FactorBudget::new)
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}='{s}' is not a nonnegative integer"))),
    }
}

fn dispatch(cli: Cli, budget_env: Option<&str>, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let settings = Settings {
        json: cli.json,
        opts: BuildOptions {
            budget: budget(cli.factor_budget, budget_env)?,
            probe_seed: cli.seed.unwrap_or(DEFAULT_PROBE_SEED),
            all_primes: cli.all_primes,
        },
        seed: cli.seed,
    };
    let io = |e: std::io::Error| CliError::Input(format!("write failed: {e}"));
    match cli.command {
        Command::Analyze { file } => {
            let problem = load_problem(&file)?;
            let text = with_problem!(&problem, p => analyze(p, &settings))?;
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(ExitCode::Success)
        }
        Command::Split { file, output } => {
            let problem = load_problem(&file)?;
            let docs = with_problem!(&problem, p => build(p, &settings.opts))?;
            let file_doc = if settings.opts.all_primes {
                CertificateFile::Many(docs)
            } else {
                CertificateFile::One(docs.into_iter().next().expect("at least one certificate"))
            };
            std::fs::write(&output, to_json(&file_doc))
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", output.display())))?;
            let n = file_doc.into_vec().len();
            writeln!(out, "wrote {n} certificate{} to {}", if n == 1 { "" } else { "s" }, output.display())
                .map_err(io)?;
            Ok(ExitCode::Success)
        }
        Command::Verify { file, cert } => {
            let problem = load_problem(&file)?;
            let text = std::fs::read_to_string(&cert)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", cert.display())))?;
            let docs = from_json(&text)?.into_vec();
            let (body, ok) = with_problem!(&problem, p => verify_all(p, &docs, &settings))?;
            out.write_all(body.as_bytes()).map_err(io)?;
            Ok(if ok { ExitCode::Success } else { ExitCode::VerificationFailed })
        }
        Command::Demo => {
            let (body, ok) = crate::demo::run_demo(&settings.opts, settings.json);
            out.write_all(body.as_bytes()).map_err(io)?;
            Ok(if ok { ExitCode::Success } else { ExitCode::VerificationFailed })
        }
    }
}

fn load_problem(path: &Path) -> Result<AnyProblem, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn build<R: Ufd>(
    p: &ExtensionProblem<R>,
    opts: &BuildOptions,
) -> Result<Vec<crate::document::CertificateDoc>, CliError> {
    Ok(build_retraction(p, opts)?.iter().map(to_doc).collect())
}

#[derive(Serialize)]
struct ReportDoc {
    case: String,
    seed: String,
    passed: bool,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct CheckDoc {
    name: String,
    passed: bool,
    detail: String,
}

fn report_doc(r: &VerificationReport) -> ReportDoc {
    ReportDoc {
        case: r.case.clone(),
        seed: r.seed.to_string(),
        passed: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckDoc { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
            .collect(),
    }
}

fn verify_all<R: Ufd>(
    problem: &ExtensionProblem<R>,
    docs: &[crate::document::CertificateDoc],
    s: &Settings,
) -> Result<(String, bool), CliError> {
    if docs.is_empty() {
        return Err(CliError::Verification("certificate file holds no certificates".into()));
    }
    let certs: Vec<SplitCertificate<R>> = docs.iter().map(|d| from_doc(&problem.ctx, d)).collect::<Result<_, _>>()?;
    let reports: Vec<VerificationReport> = certs.iter().map(|c| verify_certificate(problem, c, s.seed)).collect();
    let ok = reports.iter().all(VerificationReport::passed);
    let body = if s.json {
        let docs: Vec<ReportDoc> = reports.iter().map(report_doc).collect();
        let mut t = serde_json::to_string_pretty(&docs).expect("reports serialize");
        t.push('\n');
        t
    } else {
        reports.iter().map(|r| format!("{r}\n")).collect()
    };
    Ok((body, ok))
}

fn verdict_line<R: Ufd>(p: &ExtensionProblem<R>) -> String {
    match domain_test(&p.presentation()) {
        DomainVerdict::Domain => "T is a domain".to_string(),
        DomainVerdict::ReducibleF1 { root, .. } => {
            format!("T is not a domain: f1 has the root {root} in the base ring")
        }
        DomainVerdict::NonDomain { root, .. } => {
            let lin = format!("({})*x", root.e2);
            let r = if root.e1.is_zero() { lin } else { format!("{} + {lin}", root.e1) };
            format!("T is not a domain: f2 has the root {r} over the fraction field of R[x]/(f1)")
        }
    }
}

/// Human-readable summary of one certificate.
pub fn describe<R: Ufd>(cert: &SplitCertificate<R>, report: &VerificationReport) -> String {
    let mut s = format!("case: {}\n", cert.case);
    let doc = to_doc(cert);
    let w = serde_json::to_value(&doc.witnesses).expect("witnesses serialize");
    if let Some(map) = w.as_object() {
        let fields: Vec<String> = map
            .iter()
            .filter(|(k, _)| k.as_str() != "kind")
            .map(|(k, v)| match v {
                serde_json::Value::String(x) => format!("{k} = {x}"),
                other => format!("{k} = {other}"),
            })
            .collect();
        if !fields.is_empty() {
            s.push_str(&format!("witnesses: {}\n", fields.join(", ")));
        }
    }
    if let Some(p) = cert.selected_prime() {
        let gens: Vec<String> = p.generators.iter().map(ToString::to_string).collect();
        s.push_str(&format!("selected prime: ({})\n", gens.join(", ")));
    }
    let r = &cert.retraction;
    s.push_str(&format!("retraction: rho(1) = {}, rho(x) = {}, rho(y) = {}, rho(xy) = {}\n", r[0], r[1], r[2], r[3]));
    let status = if report.passed() { "pass" } else { "FAIL" };
    s.push_str(&format!("verification: {status} ({} checks)\n", report.checks.len()));
    for c in report.failures() {
        s.push_str(&format!("  {}: {}\n", c.name, c.detail));
    }
    s
}

fn analyze<R: Ufd>(p: &ExtensionProblem<R>, s: &Settings) -> Result<String, CliError> {
    let certs = build_retraction(p, &s.opts)?;
    if s.json {
        return Ok(to_json(&CertificateFile::Many(certs.iter().map(to_doc).collect())));
    }
    let mut out = print_problem(p);
    out.push_str(&format!("domain test: {}\n", verdict_line(p)));
    for (k, cert) in certs.iter().enumerate() {
        if certs.len() > 1 {
            out.push_str(&format!("\ncertificate {}\n", k + 1));
        }
        out.push_str(&describe(cert, &verify_certificate(p, cert, s.seed)));
    }
    Ok(out)
}
