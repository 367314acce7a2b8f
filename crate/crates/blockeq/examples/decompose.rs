//! Krull-Schmidt decomposition, projectivity and vertices of a permutation module.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockeq::decomp::{indecomposable_summands, is_projective, vertex};
use blockeq::ffmat::Field;
use blockeq::groups::FinGroup;
use blockeq::modrep::GModule;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"])?);
    let d = g.sylow(2)?;
    let m = GModule::natural_permutation(g, Field::get(2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dec = indecomposable_summands(&m, &mut rng, 200)?;
    println!("GF(2)^5 splits as {:?}", dec.dims());
    for s in &dec.summands {
        let v = vertex(&s.module, &d, &mut rng, 200)?;
        println!(
            "  dim {}: projective {}, vertex of order {}",
            s.module.dim(),
            is_projective(&s.module, &d)?,
            v.order(2)
        );
    }
    Ok(())
}
