use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = resurgia::cli::main_with_args(std::env::args_os());
    if code == resurgia::cli::EXIT_OK {
        println!("{output}");
    } else {
        eprintln!("{output}");
    }
    ExitCode::from(code as u8)
}
