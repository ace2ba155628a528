use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = planecode_cli::cli::run(std::env::args().collect());
    if let Err(e) = inv.emit() {
        eprintln!("cannot write record: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(inv.code as u8)
}
