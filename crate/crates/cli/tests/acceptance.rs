//! Runs every acceptance row and prints one pass/fail line per row.

use planecode_cli::suite::{run_acceptance, SuiteConfig};

fn main() {
    // `cargo test -- --list` and friends should not start the suite
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let cfg = SuiteConfig::default();
    let rows = run_acceptance(&cfg, |r| println!("{}", r.line()));
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    if failed.is_empty() {
        println!("acceptance: {} rows passed", rows.len());
    } else {
        println!("acceptance: FAILED rows {failed:?}");
        std::process::exit(1);
    }
}
