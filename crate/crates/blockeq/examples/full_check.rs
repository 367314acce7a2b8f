//! End-to-end comparison of stable images for a case with global data.

use std::path::Path;

use blockeq::harness::{broue_check, emit_report, load_case, CheckOptions, Format, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("cases/a5_l2.toml");
    let case = load_case(&path)?;
    let report = broue_check(&case, CheckOptions { mode: Mode::Full, seed: None, budget: None })?;
    print!("{}", emit_report(&report, Format::Text)?);
    std::process::exit(report.exit_code());
}
