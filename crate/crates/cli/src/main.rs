use std::process::ExitCode;

fn main() -> ExitCode {
    match advlab_cli::run(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("advlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
