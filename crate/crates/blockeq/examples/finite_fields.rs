//! Arithmetic in GF(q), row reduction, and polynomial factorisation.

use blockeq::ffmat::{char_poly, factor, Field, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::get(4)?;
    let w = f.primitive_element();
    println!("GF(4): characteristic {}, w^3 = {}", f.characteristic(), f.pow(w, 3));

    let gf5 = Field::get(5)?;
    let a = Matrix::from_ints(gf5, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    println!("rank {}, nullity of A - I {}", a.rank(), a.sub(&Matrix::identity(gf5, 3)).nullspace().nrows());
    let inv = a.inverse().expect("a permutation matrix is invertible");
    assert!(a.mul(&inv).is_identity());

    // x^3 - 1 = (x - 1)(x^2 + x + 1) over GF(5)
    for (p, e) in factor(&char_poly(&a)) {
        println!("factor {:?} with multiplicity {e}", p.coeffs());
    }
    Ok(())
}
