//! Complexes of projectives attached to each local simple, with their cohomology.

use std::path::Path;

use blockeq::harness::{cohomology_table, load_case, local_context};
use blockeq::perverse::{alternating_sum, cohomology_cell, format_total, perverse_core};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("cases/omega8plus2_local.toml");
    let case = load_case(&path)?;
    let ctx = local_context(&case, case.file.seed, case.file.budget)?;
    let alg = &ctx.alg;
    for t in 0..alg.num_simples() {
        let run = perverse_core(alg, t, &ctx.pi)?;
        let cells: Vec<String> = run
            .cohomology_by_degree()
            .iter()
            .filter(|(_, h)| h.dim() > 0)
            .map(|(d, h)| format!("H^{d} = {}", cohomology_cell(alg, h)))
            .collect();
        let total = alternating_sum(&cohomology_table(alg, &run), &ctx.pi);
        println!(
            "X_{:<3} pi {}  {}  [{}]",
            alg.label(t),
            ctx.pi[t],
            cells.join(", "),
            format_total(t, &total, alg.labels())
        );
    }
    Ok(())
}
