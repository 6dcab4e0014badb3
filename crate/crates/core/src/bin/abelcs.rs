use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use abelcs::commands::{self, RunReport, ThetaNumericArgs};
use abelcs::numeric::{PeriodMatrix, Quadrature};
use abelcs::Error;

#[derive(Parser, Debug)]
#[command(name = "abelcs", version, about = "Exact checks for level-N abelian Chern-Simons theory and theta functions")]
struct Cli {
    /// Level (even, at least 2).
    #[arg(long = "N", global = true, default_value_t = 2)]
    n: u32,
    /// Genus.
    #[arg(long, global = true, default_value_t = 1)]
    g: usize,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Treat tolerance-based checks as failures.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Midpoint,
    GaussLegendre,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hopf, quasitriangular and ribbon axioms of C[Z_2N].
    QgroupCheck,
    /// Evaluate a slice diagram (.slc text or JSON; `-` reads stdin).
    Eval {
        path: PathBuf,
        /// Compare with the linking-number formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Discrete Fourier transform for a word in Dehn twists.
    Fourier {
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Egorov identity for a twist word or a 2g x 2g integer matrix.
    Egorov {
        #[arg(long, conflicts_with = "matrix")]
        word: Option<String>,
        /// Row-major entries, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        matrix: Option<Vec<i64>>,
    },
    /// Rank of the Hermitian pairing and of the coloured-link Gram matrix.
    Gram,
    /// Floating-point theta functions: periodicity and the L2 Gram matrix.
    ThetaNumeric {
        /// Period matrix as JSON `[[[re, im], ...], ...]`; defaults to `i` times the identity.
        #[arg(long = "Pi")]
        pi: Option<String>,
        /// Lattice truncation radius.
        #[arg(long, default_value_t = 10)]
        trunc: usize,
        /// Quadrature points per axis.
        #[arg(long, default_value_t = 64)]
        quad: usize,
        #[arg(long, value_enum, default_value_t = Rule::Midpoint)]
        rule: Rule,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Check the bundled corpus against its golden values.
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite golden.json from the current evaluator.
        #[arg(long)]
        regenerate: bool,
        /// Also check this many seeded random diagrams per N in {2, 4}.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

fn run(cli: &Cli) -> Result<RunReport, Error> {
    match &cli.command {
        Command::QgroupCheck => commands::qgroup_check(cli.n),
        Command::Eval { path, oracle } => {
            let d = commands::load_diagram(path)?;
            commands::eval(&d, &path.display().to_string(), *oracle)
        }
        Command::Fourier { word } => commands::fourier(cli.n, cli.g, word),
        Command::Egorov { word, matrix } => commands::egorov(cli.n, cli.g, word.as_deref(), matrix.as_deref()),
        Command::Gram => commands::gram(cli.n, cli.g),
        Command::ThetaNumeric { pi, trunc, quad, rule, points } => {
            let pi = match pi {
                Some(text) => serde_json::from_str::<PeriodMatrix>(text)?,
                None => PeriodMatrix::scalar(cli.g, num_complex::Complex64::new(0.0, 1.0))?,
            };
            let rule = match rule {
                Rule::Midpoint => Quadrature::Midpoint,
                Rule::GaussLegendre => Quadrature::GaussLegendre,
            };
            commands::theta_numeric(&ThetaNumericArgs {
                n: cli.n,
                pi,
                trunc: *trunc,
                quad: *quad,
                rule,
                points: *points,
                seed: cli.seed,
                strict: cli.strict,
            })
        }
        Command::Corpus { dir, regenerate, random } => {
            let dir = dir.clone().unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"));
            commands::corpus(&dir, *regenerate, *random, cli.seed)
        }
    }
}

// a closed pipe (`| head`) is not an error
fn out(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                out(&serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                out(&report.to_string());
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            if cli.json {
                out(&serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() }).to_string());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
