//! Simple modules, blocks and projective indecomposables of A5 over GF(4).

use std::sync::Arc;

use blockeq::ffmat::Field;
use blockeq::groups::FinGroup;
use blockeq::modrep::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"])?);
    let alg = Algebra::compute(g, Field::get(4)?, 1, 200)?;
    for i in 0..alg.num_simples() {
        println!("S({}): dim {}, P dim {}", alg.label(i), alg.simple(i).dim(), alg.pim(i).dim());
    }
    println!("blocks: {:?}", alg.blocks().blocks);
    let principal = alg.trivial_index();
    println!("socle series of P({}):\n{}", alg.label(principal), alg.format_socle_series(alg.pim(principal)));

    let ext = alg.ext1(alg.simple(1), alg.simple(principal))?;
    println!("dim Ext^1(S({}), S({})) = {}", alg.label(1), alg.label(principal), ext.dim());
    Ok(())
}
