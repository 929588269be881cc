use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vlasov::app::{
    check::run_checks, parse_config, run_config, write_outputs, ScenarioKind, ScenarioParams,
};
use vlasov::Error;

#[derive(Parser)]
#[command(
    name = "vlasov",
    version,
    about = "1x+1v Vlasov-Poisson solver (sLdG / cubic spline)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the built-in scenarios.
    Scenarios,
    /// Run the fast invariant self-test.
    Check,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config { .. } | Error::UnknownScenario(_) | Error::InvalidArgument(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn run(config: PathBuf, output: Option<PathBuf>) -> Result<(), (u8, Error)> {
    let text = std::fs::read_to_string(&config).map_err(|source| {
        let err = Error::Io {
            path: config.clone(),
            source,
        };
        (EXIT_CONFIG, err)
    })?;
    let tag = |err: Error| (exit_code(&err), err);
    let mut cfg = parse_config(&text).map_err(tag)?;
    if let Some(dir) = output {
        cfg.output_dir = dir;
    }
    let (out, summary) = run_config(&cfg).map_err(tag)?;
    let written = write_outputs(
        &out.records,
        &out.snapshots,
        &cfg,
        &summary,
        &cfg.output_dir,
    )
    .map_err(tag)?;
    println!(
        "{} steps, {} records; wrote {} files to {}",
        out.steps,
        out.records.len(),
        written.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, output } => match run(config, output) {
            Ok(()) => ExitCode::SUCCESS,
            Err((code, err)) => {
                eprintln!("error: {err}");
                ExitCode::from(code)
            }
        },
        Command::Scenarios => {
            for kind in ScenarioKind::ALL {
                match vlasov::app::make_scenario(kind, ScenarioParams::default()) {
                    Ok(s) => println!(
                        "{:<15} L = {:.6}, v_max = {}: {}",
                        kind.name(),
                        s.domain_length,
                        s.v_max,
                        s.description
                    ),
                    Err(err) => println!("{:<15} (error: {err})", kind.name()),
                }
            }
            ExitCode::SUCCESS
        }
        Command::Check => match run_checks() {
            Ok(results) => {
                let mut ok = true;
                for r in &results {
                    println!(
                        "[{}] {}: {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    );
                    ok &= r.passed;
                }
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_RUNTIME)
                }
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(EXIT_RUNTIME)
            }
        },
    }
}
