use std::io::Write;
use std::process::ExitCode;

use aztec_cli::args::Cli;
use aztec_cli::commands;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = cli.resolve().and_then(|config| {
        if cli.dump_config {
            println!("{}", config.to_json());
            return Ok(0);
        }
        if let Some(t) = config.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| aztec_cli::CliError::Config(e.to_string()))?;
        }
        let out = commands::run(&config)?;
        out.commit()?;
        std::io::stdout().write_all(&out.stdout)?;
        for note in &out.notes {
            eprintln!("{note}");
        }
        Ok(out.exit)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
