use std::io::Write;
use std::process::ExitCode;

use bz_cli::{format, run, CliError, Mode, Options, Output, QuerySpec, EXIT_USAGE};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bz",
    version,
    about = "su(N) tensor product multiplicities from BZ triangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also compute the classical (Freudenthal + Klimyk) result.
    #[arg(long, global = true)]
    oracle: bool,
    /// Append the coefficient polytope to a multiplicity query.
    #[arg(long, global = true)]
    emit_polytope: bool,
    /// Check on every evaluation that the nested bounds only read bound variables.
    #[arg(long, global = true)]
    order_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// T_{λ,μ,ν}: the multiplicity of the singlet in λ ⊗ μ ⊗ ν.
    Multiplicity {
        algebra: String,
        lambda: String,
        mu: String,
        nu: String,
    },
    /// All ν in λ ⊗ μ with their multiplicities.
    Decompose {
        algebra: String,
        lambda: String,
        mu: String,
    },
    /// Every true BZ triangle of weight (λ, μ, ν).
    Triangles {
        algebra: String,
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Whether T_{λ,μ,ν} > 0 by the su(3) or su(4) inequalities.
    Nonvanishing {
        algebra: String,
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Whether T_{λ,μ,ν} > K by the su(3) inequalities.
    Threshold {
        algebra: String,
        lambda: String,
        mu: String,
        nu: String,
        k: u64,
    },
    /// The coefficient polytope in the plain-text inequality format.
    Polytope {
        algebra: String,
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Compare every counter over all triples with bounded labels.
    Crosscheck {
        algebra: String,
        #[arg(long, default_value_t = 2)]
        max_label: i64,
    },
    /// Count the integer points of a polytope file (`-` for stdin).
    Count { file: String },
}

fn count(file: &str, json: bool) -> Result<i32, CliError> {
    let text = match file {
        "-" => std::io::read_to_string(std::io::stdin())?,
        path => std::fs::read_to_string(path)?,
    };
    let system = format::parse_polytope(&text)?;
    let n = bz_core::enumerator::count_integer_points(&system)?;
    let mut out = std::io::stdout().lock();
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({ "mode": "count", "result": n })
        )?;
    } else {
        writeln!(out, "{n}")?;
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let output = if cli.json { Output::Json } else { Output::Text };
    let mut options = Options {
        oracle: cli.oracle,
        emit_polytope: cli.emit_polytope,
        order_check: cli.order_check,
        ..Options::default()
    };
    let query = match &cli.command {
        Command::Multiplicity {
            algebra,
            lambda,
            mu,
            nu,
        } => QuerySpec::new(algebra, Mode::Multiplicity, &[lambda, mu, nu], None, output),
        Command::Decompose {
            algebra,
            lambda,
            mu,
        } => QuerySpec::new(algebra, Mode::Decompose, &[lambda, mu], None, output),
        Command::Triangles {
            algebra,
            lambda,
            mu,
            nu,
        } => QuerySpec::new(algebra, Mode::Triangles, &[lambda, mu, nu], None, output),
        Command::Nonvanishing {
            algebra,
            lambda,
            mu,
            nu,
        } => QuerySpec::new(algebra, Mode::Nonvanishing, &[lambda, mu, nu], None, output),
        Command::Threshold {
            algebra,
            lambda,
            mu,
            nu,
            k,
        } => QuerySpec::new(
            algebra,
            Mode::Threshold,
            &[lambda, mu, nu],
            Some(*k),
            output,
        ),
        Command::Polytope {
            algebra,
            lambda,
            mu,
            nu,
        } => QuerySpec::new(algebra, Mode::Polytope, &[lambda, mu, nu], None, output),
        Command::Crosscheck { algebra, max_label } => {
            if *max_label < 0 {
                return Err(CliError::Usage("--max-label must be non-negative".into()));
            }
            options.max_label = *max_label;
            QuerySpec::new(algebra, Mode::Crosscheck, &[], None, output)
        }
        Command::Count { file } => return count(file, cli.json),
    }?;
    let mut out = std::io::stdout().lock();
    let status = run(&query, &options, &mut out)?;
    out.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
