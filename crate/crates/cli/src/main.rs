use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use zipper_cli::commands::{render_text, OutputFormat};
use zipper_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("zipper: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let report = match cli.format {
        OutputFormat::Text => render_text(&out.report),
        OutputFormat::Json => serde_json::to_string_pretty(&out.report).expect("reports serialize"),
    };
    let mut stdout = std::io::stdout().lock();
    match (&out.artifact, &cli.emit) {
        (Some(a), Some(path)) => {
            if let Err(e) = fs::write(path, a) {
                eprintln!("zipper: {}: {e}", path.display());
                return ExitCode::from(3);
            }
            let _ = writeln!(stdout, "{report}");
        }
        (Some(a), None) => {
            let _ = write!(stdout, "{a}");
            eprintln!("{report}");
        }
        (None, _) => {
            let _ = writeln!(stdout, "{report}");
        }
    }
    ExitCode::from(out.code)
}
