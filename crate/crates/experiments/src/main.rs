use std::process::ExitCode;

use clap::Parser;
use lrw_experiments::config::{splice_config_file, Cli};
use lrw_experiments::execute;

fn main() -> ExitCode {
    let args = match splice_config_file(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("lrw: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command.resolve().and_then(|cfg| execute(&cfg)) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lrw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
