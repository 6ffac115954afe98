use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Outcome;

#[derive(Parser)]
#[command(name = "girard-lab")]
#[command(about = "Exact checks of generalized power-sum and colored Newton-Girard identities")]
#[command(version)]
struct Cli {
    /// Write the JSON report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report elapsed_ms as 0 so identical runs give identical bytes
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one of the identities
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Walk/subdigraph involution tools
    Involution {
        #[command(subcommand)]
        action: InvolutionAction,
    },
    /// Sum of m-th powers 1^m + ... + n^m
    Powersum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Generalized power-sum identity: both sides and the good-word sum
    Theorem1 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
    },
    /// Colored walk / linear-subdigraph identity on a graph
    Theorem2 {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        r: usize,
        /// Use the single term r*l_{r,C} instead of the aggregated sum
        #[arg(long)]
        literal_ell: bool,
    },
    /// Multi-alphabet Newton-Girard identity
    Theorem3 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Classical Newton-Girard identity on integer roots
    NewtonGirard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Comma-separated integer roots
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "random",
            conflicts_with = "random"
        )]
        roots: Option<String>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Weighted power sums through Stirling numbers
    Lemma21 {
        #[arg(long)]
        alpha: u32,
        /// Comma-separated integer sequence c_1, ..., c_m
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "random",
            conflicts_with = "random"
        )]
        c: Option<String>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum InvolutionAction {
    /// Check the sign-reversing involution and the GOOD-pair count
    Audit {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args, Clone)]
pub struct GraphSource {
    /// Graph file (JSON)
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    pub graph: Option<PathBuf>,
    /// Generate random graphs instead of reading one
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 3)]
    pub weight_bound: u32,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Stirling,
    Bernoulli,
    Direct,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { target } => match target {
            VerifyTarget::Theorem1 { m, r } => commands::theorem1(m, r),
            VerifyTarget::Theorem2 {
                source,
                r,
                literal_ell,
            } => commands::theorem2(&source, r, literal_ell),
            VerifyTarget::Theorem3 { r, n } => commands::theorem3(r, n),
            VerifyTarget::NewtonGirard {
                n,
                r,
                roots,
                random: _,
                trials,
                seed,
            } => commands::newton_girard(n, r, roots.as_deref(), trials, seed),
            VerifyTarget::Lemma21 {
                alpha,
                c,
                random: _,
                m,
                trials,
                seed,
            } => commands::lemma21(alpha, c.as_deref(), m, trials, seed),
        },
        Command::Involution {
            action: InvolutionAction::Audit { source, r },
        } => commands::involution_audit(&source, r),
        Command::Powersum { m, n, method } => commands::powersum(m, n, method),
    };
    match outcome {
        Outcome::Report(mut report) => {
            if cli.no_timing {
                report.elapsed_ms = 0;
            }
            print!("{}", report.to_text());
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Outcome::Usage(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Outcome::BadGraph(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
