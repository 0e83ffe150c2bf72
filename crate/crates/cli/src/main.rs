use clap::{Args, Parser, Subcommand, ValueEnum};
use mirror_cli::{run_suite, Mode, RouteChoice, Suite, SuiteConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mirror", version, about = "Mirror Landau-Ginzburg models for type-A flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical points of one fiber, with Peterson checks on each.
    Solve(Common),
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
        #[command(flatten)]
        common: Common,
    },
    /// Deodhar strata of one cell intersection.
    Deodhar {
        #[arg(value_enum)]
        action: DeodharAction,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifySuite {
    Braid,
    Compare,
    Peterson,
    Deodhar,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeodharAction {
    Enumerate,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Quiver,
    Deodhar,
}

#[derive(Args)]
struct Common {
    /// Rank n of SL(n+1).
    #[arg(long)]
    rank: Option<usize>,
    /// Simple roots of the Levi factor, comma separated.
    #[arg(long, value_delimiter = ',')]
    parabolic: Vec<usize>,
    /// Quantum parameters, e.g. `1,3+4i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<String>,
    /// Equivariant parameters summing to zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "MIRROR_SEED", default_value_t = 42)]
    seed: u64,
    /// Tolerance override for float checks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "float")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "auto")]
    route: RouteArg,
    #[arg(long)]
    starts_per_dim: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Letters of v, comma separated.
    #[arg(long, value_delimiter = ',')]
    v: Vec<usize>,
    /// Letters of the reduced word; defaults to a word of w0.
    #[arg(long, value_delimiter = ',')]
    word: Vec<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn config(&self, suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            rank: self.rank,
            parabolic: self.parabolic.clone(),
            q: self.q.clone(),
            lambda: self.lambda.clone(),
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float => Mode::Float,
            },
            route: match self.route {
                RouteArg::Auto => RouteChoice::Auto,
                RouteArg::Quiver => RouteChoice::Quiver,
                RouteArg::Deodhar => RouteChoice::Deodhar,
            },
            starts_per_dim: self.starts_per_dim,
            primes: self.primes.clone(),
            v: self.v.clone(),
            word: self.word.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, suite) = match &cli.command {
        Command::Solve(c) => (c, Suite::Solve),
        Command::Verify { suite, common } => (
            common,
            match suite {
                VerifySuite::Braid => Suite::Braid,
                VerifySuite::Compare => Suite::Compare,
                VerifySuite::Peterson => Suite::Peterson,
                VerifySuite::Deodhar => Suite::Deodhar,
            },
        ),
        Command::Deodhar { action, common } => (
            common,
            match action {
                DeodharAction::Enumerate => Suite::DeodharEnumerate,
                DeodharAction::Sample => Suite::DeodharSample,
            },
        ),
    };
    let doc = match run_suite(&common.config(suite)) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("mirror: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let bytes = doc.serialize();
    let written = match &common.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::Write::write_all(&mut std::io::stdout(), &bytes),
    };
    if let Err(e) = written {
        eprintln!("mirror: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if doc.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
