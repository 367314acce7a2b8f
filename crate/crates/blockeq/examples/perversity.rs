//! Perversity values of the unipotent characters in a case file.

use std::path::Path;

use blockeq::harness::load_case;
use blockeq::perversity::{order_by_perversity, perversity_value, PerversityQuery};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("cases/omega8plus2_local.toml");
    let case = load_case(&path)?;
    let q = PerversityQuery::new(1, 4)?;
    for r in order_by_perversity(&case.rows) {
        println!("{:>8}  deg(2) = {:>6}  pi = {}", r.label, r.degree_at(2), perversity_value(&r.poly, q)?);
    }
    Ok(())
}
