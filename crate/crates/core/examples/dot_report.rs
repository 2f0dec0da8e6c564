//! Solves the bundled two-edge instance and prints its DOT rendering.

use domgame::cli;

fn main() {
    let instance = concat!(env!("CARGO_MANIFEST_DIR"), "/data/d1.json");
    let dir = std::env::temp_dir().join("domgame-dot-report");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let report = dir.join("report.json");
    let report = report.to_str().unwrap();

    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = cli::run(
        ["domgame", "solve", "--instance", instance, "--out", report],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    let code = cli::run(
        ["domgame", "report", "--report", report, "--format", "dot"],
        &mut out,
        &mut err,
    );
    std::process::exit(code);
}
