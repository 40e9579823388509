use std::process::ExitCode;

use qrl_cli::{execute, parse_args, threads_from_env, CliError, ParseExit};

fn fail(e: &CliError) -> ExitCode {
    eprintln!("qrl: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cmd = match parse_args(std::env::args_os()) {
        Ok(cmd) => cmd,
        Err(ParseExit::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(ParseExit::Error(e)) => return fail(&e),
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    match execute(&cmd, threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
