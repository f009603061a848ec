use clap::{Parser, Subcommand};
use kappa_cli::{
    emit, ingest, load_metric, normal_form, parse_variant, report_exit_code, run_verification, CliError, Format, Suite,
    DEFAULT_DEGREE_BOUND,
};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kappa", version, about = "Exact verification of kappa-Poincare and kappa-Weyl calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        metric: PathBuf,
        /// Comma-separated subset of confluence,hopf,ideal,calculus,qlie, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        #[arg(long, default_value = "text")]
        format: String,
        /// Seed for random samples.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the normal form of an expression.
    NormalForm {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        metric: PathBuf,
        expr: String,
    },
    /// Re-emit a machine report read from FILE (or stdin).
    Report {
        #[arg(long, default_value = "text")]
        format: String,
        file: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let mut stdout = std::io::stdout().lock();
    let mut write = |s: &str| {
        stdout
            .write_all(s.as_bytes())
            .map_err(|e| CliError::Config(format!("write failed: {e}")))
    };
    match cli.command {
        Command::Verify {
            variant,
            metric,
            suites,
            degree_bound,
            format,
            seed,
        } => {
            let format: Format = format.parse()?;
            let variant = parse_variant(&variant)?;
            let suites = Suite::parse_list(&suites)?;
            let metric = load_metric(&metric)?;
            let r = run_verification(variant, &metric, &suites, degree_bound, seed)?;
            write(&emit(&r, format))?;
            Ok(report_exit_code(&r))
        }
        Command::NormalForm { variant, metric, expr } => {
            let variant = parse_variant(&variant)?;
            let metric = load_metric(&metric)?;
            write(&normal_form(variant, &metric, &expr)?)?;
            write("\n")?;
            Ok(0)
        }
        Command::Report { format, file } => {
            let format: Format = format.parse()?;
            let text = match file {
                Some(p) => std::fs::read_to_string(&p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                None => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| CliError::Config(format!("stdin: {e}")))?;
                    s
                }
            };
            let r = ingest(&text)?;
            write(&emit(&r, format))?;
            Ok(report_exit_code(&r))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
