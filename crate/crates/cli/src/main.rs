mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tensor_periods::admissibility::predict_case;
use tensor_periods::dirichlet::{kronecker_chi, probe_table, rank1_tensor_probe, DEFAULT_DIGITS};
use tensor_periods::seed::derive_seed;
use tensor_periods::verifier::{verify_custom, verify_direct_sum, verify_predicted, VerifyMode};

use report::{MotiveSummary, ProbeTable, RunReport, Task, TensorSummary};

#[derive(Debug, Parser)]
#[command(name = "tensor-periods", version, about = "Period relations for tensor products of critical motives")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    /// Master seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Prob,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signatures, filtration profiles and criticality of motive documents.
    Inspect {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Hodge data of a tensor product, the a-vectors and the predicted case.
    Tensor { a: String, b: String },
    /// Verify the period relation for M ⊗ M′ or M ⊗ (⊕ M′_i).
    Verify {
        a: String,
        #[arg(required_unless_present = "sum", conflicts_with = "sum")]
        b: Option<String>,
        /// Comma separated summands of a direct sum partner.
        #[arg(long, value_delimiter = ',')]
        sum: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Mode::Prob)]
        mode: Mode,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1000)]
        coeff_bound: u64,
        /// Check a deliberately wrong exponent instead of the predicted one.
        #[arg(long, conflicts_with = "sum")]
        check_wrong_case: bool,
    },
    /// Algebraicity probes for quadratic Dirichlet L-values.
    Dirichlet {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, allow_hyphen_values = true)]
        disc2: Option<i64>,
        #[arg(long, default_value_t = 9)]
        max_m: u32,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
}

/// Failure that aborts a run with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<RunReport, Fatal> {
    let seed = cli.seed;
    match &cli.command {
        Command::Inspect { files } => {
            let tasks = files
                .iter()
                .map(|f| Ok(Task::Inspect(MotiveSummary::of(&spec::resolve(f)?))))
                .collect::<Result<Vec<_>, Fatal>>()?;
            Ok(RunReport::new("inspect", seed, None, tasks))
        }
        Command::Tensor { a, b } => {
            let (h, hp) = (spec::resolve(a)?, spec::resolve(b)?);
            let summary = TensorSummary::of(&h, &hp)?;
            Ok(RunReport::new("tensor", seed, None, vec![Task::Tensor(Box::new(summary))]))
        }
        Command::Verify { a, b, sum, mode, trials, coeff_bound, check_wrong_case } => {
            let h = spec::resolve(a)?;
            let partners: Vec<String> = match (b, sum) {
                (Some(b), None) => vec![b.clone()],
                (None, Some(s)) => s.clone(),
                _ => return Err(Fatal("give either a partner motive or --sum".into())),
            };
            let partners = partners.iter().map(|p| spec::resolve(p)).collect::<Result<Vec<_>, _>>()?;
            let key = format!("verify/{}/{}", h.label(), partners.iter().map(|p| p.label()).collect::<Vec<_>>().join(","));
            let vmode = match mode {
                Mode::Exact => VerifyMode::exact(),
                Mode::Prob => VerifyMode::probabilistic(*trials, *coeff_bound, derive_seed(seed, &key))?,
            };
            let report = if sum.is_some() {
                verify_direct_sum(&h, &partners, vmode)?
            } else if *check_wrong_case {
                let mut case = predict_case(&h, &partners[0])?;
                let e = &mut case.exponents[0].exponent;
                *e = if *e == 0 { 1 } else { -*e };
                verify_custom(&h, &partners[0], case, vmode)?
            } else {
                verify_predicted(&h, &partners[0], vmode)?
            };
            Ok(RunReport::new("verify", seed, Some(vmode), vec![Task::Verify(Box::new(report))]))
        }
        Command::Dirichlet { disc, disc2, max_m, digits } => {
            let chi = kronecker_chi(*disc)?;
            let rows = match disc2 {
                Some(d2) => rank1_tensor_probe(&chi, &kronecker_chi(*d2)?, *max_m, *digits)?,
                None => probe_table(&chi, *max_m, *digits)?,
            };
            let table = ProbeTable::new(*disc, *disc2, *max_m, *digits, rows);
            Ok(RunReport::new("dirichlet", seed, None, vec![Task::Dirichlet(table)]))
        }
    }
}

/// Result of one invocation: exit code and the bytes meant for stdout and stderr.
struct Invocation {
    code: u8,
    stdout: String,
    stderr: String,
}

fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Invocation { code, stdout, stderr };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Fatal(msg)) => return Invocation { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    let rendered = match cli.output {
        Output::Json => report.to_json(),
        Output::Text => report.to_text(),
    };
    let code = if report.passed { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => Invocation { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Invocation { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
        },
        None => Invocation { code, stdout: rendered, stderr: String::new() },
    }
}

fn main() -> ExitCode {
    let inv = execute(std::env::args_os());
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    ExitCode::from(inv.code)
}

#[cfg(test)]
mod tests;
