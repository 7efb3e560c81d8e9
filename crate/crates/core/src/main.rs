use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lgdms::orchestrator::{run, Command, ExperimentConfig};

/// Numerics for linear GDMS over free groups and their normal subgroups.
///
/// Exit codes: 0 ok, 2 config error, 3 cap exceeded, 4 non-convergence,
/// 5 inconsistent cross-check. Caps can be raised with LGDMS_BALL_CAP,
/// LGDMS_STATE_CAP, LGDMS_POINT_CAP, LGDMS_LOOP_CAP and LGDMS_LENGTH_CAP.
#[derive(Parser, Debug)]
#[command(name = "lgdms", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON experiment config
    config: PathBuf,
    /// Overrides `output_dir` from the config
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = ExperimentConfig::load(&cli.config).and_then(|mut cfg| {
        if let Some(out) = cli.out {
            cfg.output_dir = out;
        }
        let output = run(cli.command, &cfg)?;
        output.write(&cfg.output_dir)?;
        Ok((output, cfg.output_dir))
    });
    match result {
        Ok((output, dir)) => {
            let code = output.exit_code();
            if code != 0 {
                eprintln!("lgdms: {} cross-check is INCONSISTENT, see {}", cli.command.name(), dir.join("report.json").display());
            } else {
                println!("{}", dir.join("report.json").display());
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("lgdms: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
