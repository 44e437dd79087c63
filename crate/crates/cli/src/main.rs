use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use nodal_cli::commands::{self, CliError, CurveArgs, MemberTarget, Outcome, RefuteTarget};
use nodal_cli::parser::parse_poly;

/// Exact computations with differential operators on nodal curves.
#[derive(Debug, Parser)]
#[command(name = "nodal", version)]
struct Cli {
    /// Named curve; only `nodal-cubic` is available.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,

    /// Factors f_1 .. f_r of f, as polynomials in t. Consumes following
    /// arguments until one is not a polynomial in t.
    #[arg(long, global = true, action = ArgAction::Append, value_name = "POLY")]
    factors: Vec<String>,

    /// Spanning-set bound (locproj) or search bound (bialgebroid).
    #[arg(long, global = true)]
    bound: Option<u32>,

    /// Certificate output path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Reject factors of degree <= 3 with a rational root.
    #[arg(long, global = true)]
    strict_irreducible: bool,

    /// Seed for randomized suites and batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an operator expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply an operator to a polynomial.
    Apply {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Membership in A, D_A or a power of I.
    Member {
        #[command(subcommand)]
        target: Member,
    },
    /// Check one of the ideal-preservation statements.
    Lemma {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Produce a refutation certificate.
    Refute { target: Target },
    /// Replay a certificate file.
    Verify { path: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Member {
    /// Polynomial in A = k + I.
    #[command(name = "A", alias = "a")]
    A {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Operator in D_A = k + I D_B.
    #[command(name = "DA", alias = "da")]
    Da {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Polynomial in I^n.
    Ideal {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Locproj,
    Bialgebroid,
}

fn is_factor_token(tok: &str) -> bool {
    !tok.starts_with("--") && tok.contains('t') && parse_poly(tok).is_ok()
}

/// Rewrites `--factors a b c` into `--factors=a --factors=b --factors=c` so the
/// list does not swallow positional arguments.
fn expand_factors(args: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter().peekable();
    while let Some(arg) = iter.next() {
        if arg == "--" {
            out.push(arg);
            out.extend(iter.by_ref());
            break;
        }
        if arg != "--factors" {
            out.push(arg);
            continue;
        }
        let mut any = false;
        while let Some(tok) = iter.next_if(|t| is_factor_token(t)) {
            out.push(format!("--factors={tok}"));
            any = true;
        }
        if !any {
            // Leave it for clap to report or to take the next token verbatim.
            out.push(arg);
        }
    }
    out
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let curve_args = CurveArgs {
        preset: cli.preset.clone(),
        factors: cli.factors.clone(),
        strict_irreducible: cli.strict_irreducible,
    };
    match cli.command {
        Command::Normalize { expr } => commands::normalize(&expr),
        Command::Apply { expr, poly } => commands::apply(&expr, &poly),
        Command::Member { target } => {
            let curve = commands::resolve_curve(&curve_args)?;
            let (target, expr) = match target {
                Member::A { expr } => (MemberTarget::A, expr),
                Member::Da { expr } => (MemberTarget::Da, expr),
                Member::Ideal { n, expr } => (MemberTarget::Ideal(n), expr),
            };
            commands::member(&curve, target, &expr)
        }
        Command::Lemma { which } => {
            let curve = commands::resolve_curve(&curve_args)?;
            commands::lemma(&curve, which, cli.seed)
        }
        Command::Refute { target } => {
            let curve = commands::resolve_curve(&curve_args)?;
            let target = match target {
                Target::Locproj => RefuteTarget::LocallyProjective,
                Target::Bialgebroid => RefuteTarget::Bialgebroid,
            };
            commands::refute(&curve, target, cli.bound, cli.seed, cli.out.as_deref())
        }
        Command::Verify { path } => commands::verify(&path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(expand_factors(std::env::args().collect()));
    let code = match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            eprint!("{}", outcome.stderr);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
