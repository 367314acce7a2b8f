//! Local stable data for one class of subgroups Q: M_Q, the bijection gamma, E and T_Q.

use std::path::Path;

use blockeq::harness::{field_of, load_case, run_q_class};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("cases/omega8plus2_local.toml");
    let case = load_case(&path)?;
    let spec = &case.file.q_class[0];
    let run = run_q_class(spec, field_of(&case.file)?, None, case.file.seed, case.file.budget)?;
    let l = &run.line;
    println!("C_H simples {:?}, C_G simples {:?}", l.ch_simples, l.cg_simples);
    println!("summands of the restricted module: {:?}", l.summands.iter().map(|s| s.dim).collect::<Vec<_>>());
    println!("gamma {:?}, E {:?}, dim U_Q {}", l.gamma, l.e, l.uq_dim);
    println!("status {:?}", l.status);
    Ok(())
}
