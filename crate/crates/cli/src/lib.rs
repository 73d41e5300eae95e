//! The `apery` command line: evaluate families, guess recurrences, compute
//! and recognize limits, sweep the Franel conjectures, and convert
//! continued fractions.
//!
//! Exit codes: 0 on success, 1 when a computation or verification fails,
//! 2 on a usage error. Reports go to stdout, errors to stderr.

mod commands;
mod report;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use apery::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::Report;

#[derive(Parser, Debug)]
#[command(name = "apery", version, about = "Apery limits of binomial sums and their recurrences")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print terms 0..=N of a binomial-sum family.
    Family(FamilyArgs),
    /// Guess a recurrence from sequence terms.
    Guess(GuessArgs),
    /// Limit of B(n)/A(n) for two solutions of a recurrence.
    Limit(LimitArgs),
    /// Check the Franel limit conjectures over a range of d.
    Conjecture(ConjectureArgs),
    /// Continued-fraction convergents, or the fraction of a recurrence.
    Cf(CfArgs),
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// delannoy, delannoy_x, apery3, franel, binom_2k, binom_nk_k, arctan,
    /// zudilin2, zudilin3 or cy219.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub d: Option<u32>,
    /// A rational value P/Q.
    #[arg(long, conflicts_with = "symbolic_x", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Keep x as an indeterminate.
    #[arg(long)]
    pub symbolic_x: bool,
    #[arg(long)]
    pub n: u32,
}

#[derive(Args, Debug)]
pub struct GuessArgs {
    /// Family spec such as `franel:d=5`.
    #[arg(long, conflicts_with = "terms_file", required_unless_present = "terms_file")]
    pub terms_from: Option<String>,
    /// File of terms u(0), u(1), ... separated by whitespace or commas.
    #[arg(long)]
    pub terms_file: Option<PathBuf>,
    /// Number of terms to use; defaults to what the bounds require.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub max_order: usize,
    #[arg(long)]
    pub max_degree: usize,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Named recurrence (apery3, delannoy, delannoy_x:x=P/Q, arctan:x=P/Q,
    /// franel:d=D, ...) or a file in the recurrence text format.
    #[arg(long)]
    pub rec: String,
    /// Initial values of A as START:V0,V1,...
    #[arg(long, allow_hyphen_values = true)]
    pub init_a: Option<String>,
    /// Initial values of B as START:V0,V1,...
    #[arg(long, allow_hyphen_values = true)]
    pub init_b: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Comma-separated constants: one, ln2, ln(P/Q), pi, zetaK, catalan, L3.
    #[arg(long, value_delimiter = ',')]
    pub recognize: Vec<String>,
    /// Multiply the limit by this rational.
    #[arg(long, allow_hyphen_values = true)]
    pub scale: Option<String>,
    /// Bound on the integer coefficients tried during recognition.
    #[arg(long, default_value = "1000000")]
    pub max_coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConjectureName {
    #[value(name = "franel-zeta2")]
    FranelZeta2,
    #[value(name = "franel-zeta4")]
    FranelZeta4,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[arg(long, value_enum)]
    pub name: ConjectureName,
    /// Inclusive range LO..HI.
    #[arg(long)]
    pub d_range: String,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
}

#[derive(Args, Debug)]
pub struct CfArgs {
    /// `log:x=P/Q`, `arctan:z=P/Q` or a file in the continued-fraction text format.
    #[arg(long, conflicts_with = "from_rec", required_unless_present = "from_rec")]
    pub cf: Option<String>,
    /// Index of the last convergent.
    #[arg(long)]
    pub n: Option<usize>,
    /// Named recurrence or recurrence file to convert; an x-family without
    /// a value of x gives a fraction symbolic in x.
    #[arg(long)]
    pub from_rec: Option<String>,
    /// Pass to the recurrence of f(n) u(n), where f(n+1) = r(n) f(n).
    #[arg(long, requires = "from_rec")]
    pub rescale: Option<String>,
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl fmt::Display) -> Self {
        Failure { code: 2, message: message.to_string() }
    }

    pub fn computation(message: impl fmt::Display) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidParameter(_) | Error::UnknownConstant(_) => Failure::usage(e),
            _ => Failure::computation(e),
        }
    }
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Family(a) => commands::family(a),
        Command::Guess(a) => commands::guess(a),
        Command::Limit(a) => commands::limit(a),
        Command::Conjecture(a) => commands::conjecture(a),
        Command::Cf(a) => commands::cf(a),
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Output { code: 0, stdout: text, stderr: String::new() },
                _ => Output { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            report.diagnostic("elapsed_ms", report::string(start.elapsed().as_millis()));
            let stdout = if cli.json { report.to_json() } else { report.to_text() };
            match report.failure {
                Some(msg) => Output { code: 1, stdout, stderr: format!("error: {msg}\n") },
                None => Output { code: 0, stdout, stderr: String::new() },
            }
        }
        Err(f) => Output { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}
