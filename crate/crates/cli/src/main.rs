mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ageprofile",
    version,
    about = "Profiles and age algebras of relational structures"
)]
struct Cli {
    /// Output style: tab-separated rows, or one JSON record.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Record,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraCheck {
    ERegular,
    ZeroDivisors,
    TournamentIdentity,
}

#[derive(Subcommand)]
enum Command {
    /// Count isomorphism types of each size.
    Profile {
        /// `builtin:NAME` or a structure/presentation file.
        input: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Fit the profile's generating series against a denominator, or
    /// classify its growth when no denominator is given.
    Series {
        input: String,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Exponents `d` of the factors `(1 - x^d)`, comma separated.
        #[arg(long, conflicts_with = "denominator_poly")]
        denominator: Option<String>,
        /// Denominator coefficients from the constant term up.
        #[arg(long, allow_hyphen_values = true)]
        denominator_poly: Option<String>,
        #[arg(long, default_value_t = ageprofile::series::DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Monomorphic decomposition of a structure or sum presentation.
    Decompose { input: String },
    /// Checks in the age algebra.
    Algebra {
        input: String,
        #[arg(long, value_enum)]
        check: AlgebraCheck,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Multiplication maps solved per degree pair by the zero-divisor search.
        #[arg(long, default_value_t = 40)]
        budget: usize,
    },
    /// Rank of the subset inclusion matrix.
    Incidence {
        #[arg(long, required_unless_present = "sweep")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "sweep")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "sweep")]
        k: Option<usize>,
        /// Every (m, n, k) with m <= M and 2n + k <= m.
        #[arg(long, conflicts_with_all = ["m", "n", "k"])]
        sweep: Option<usize>,
        /// Print the matrix itself.
        #[arg(long)]
        dump: bool,
    },
    /// Acyclic components and growth regime of a tournament.
    Tournament {
        input: String,
        #[arg(long, default_value_t = 9)]
        window: usize,
    },
    /// Write a finite structure (or a truncation of a presentation) as a
    /// structure file.
    Dump {
        input: String,
        /// Positions per infinite block or chain when truncating.
        #[arg(long, default_value_t = 3)]
        truncate: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Profile { input, max_n } => commands::profile(&input, max_n),
        Command::Series {
            input,
            max_n,
            denominator,
            denominator_poly,
            margin,
        } => commands::series(
            &input,
            max_n,
            denominator.as_deref(),
            denominator_poly.as_deref(),
            margin,
        ),
        Command::Decompose { input } => commands::decompose(&input),
        Command::Algebra {
            input,
            check,
            max_degree,
            budget,
        } => commands::algebra(&input, check, max_degree, budget),
        Command::Incidence {
            m,
            n,
            k,
            sweep,
            dump,
        } => commands::incidence(m, n, k, sweep, dump),
        Command::Tournament { input, window } => commands::tournament(&input, window),
        Command::Dump { input, truncate } => commands::dump(&input, truncate),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
