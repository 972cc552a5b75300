use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = ramond_cli::run(std::env::args_os());
    if code == 0 {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    ExitCode::from(code as u8)
}
