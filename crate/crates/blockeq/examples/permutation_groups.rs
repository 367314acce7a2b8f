//! Orders, Sylow subgroups, centralisers and normalisers of permutation groups.

use blockeq::decomp::order_l_subgroups;
use blockeq::groups::FinGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a5 = FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"])?;
    let d = a5.sylow(2)?;
    let n = a5.normalizer(&d)?;
    let c = a5.centralizer(&d)?;
    println!("|A5| = {}, |D| = {}, |N(D)| = {}, |C(D)| = {}", a5.order()?, d.order()?, n.order()?, c.order()?);

    let subs = order_l_subgroups(&d)?;
    let classes = n.order_l_subgroup_classes(&d, 2)?;
    println!("{} subgroups of order 2 in D, {} classes under N(D)", subs.len(), classes.len());
    for q in &classes {
        println!("  Q = <{}>: |C(Q)| = {}", q.generators()[0], a5.centralizer(q)?.order()?);
    }
    Ok(())
}
