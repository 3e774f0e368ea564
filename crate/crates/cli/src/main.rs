use std::io::Write;
use std::process::ExitCode;

use artin_hol::report::exit;
use artin_hol_cli::{parse_command, run};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cmd = match parse_command(std::env::args_os()) {
        Ok(cmd) => cmd,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cmd, &mut out) {
        Ok(code) => code,
        Err(e) => {
            log::error!("{e}");
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code.clamp(0, exit::INVALID_INPUT) as u8)
}
