//! Affine groups V ⋊ S acting on the points of V = GF(p)^n.

use super::{FinGroup, Perm};
use crate::ffmat::Matrix;

/// Point index of a vector: base-p digits, first coordinate most significant.
pub fn point_index(p: usize, v: &[u8]) -> usize {
    v.iter().fold(0, |acc, &x| acc * p + x as usize)
}

pub fn point_vector(p: usize, n: usize, mut i: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for k in (0..n).rev() {
        v[k] = (i % p) as u8;
        i /= p;
    }
    v
}

/// Permutation of V induced by v ↦ v·A + b (row vectors).
pub fn affine_perm(a: &Matrix, b: &[u8]) -> Perm {
    let f = a.field();
    let (p, n) = (f.order(), a.nrows());
    let img = (0..p.pow(n as u32))
        .map(|i| {
            let mut w = a.vec_mul(&point_vector(p, n, i));
            for (x, &y) in w.iter_mut().zip(b) {
                *x = f.add(*x, y);
            }
            point_index(p, &w)
        })
        .collect();
    Perm::from_images(img)
}

/// The group generated by the linear maps and the translation by the first basis vector.
/// When the linear maps act irreducibly this is V ⋊ S.
pub fn affine_group(linear: &[Matrix]) -> FinGroup {
    let n = linear[0].nrows();
    let p = linear[0].field().order();
    let zero = vec![0u8; n];
    let mut gens: Vec<Perm> = linear.iter().map(|a| affine_perm(a, &zero)).collect();
    let mut e1 = zero.clone();
    e1[0] = 1;
    gens.push(affine_perm(&Matrix::identity(linear[0].field(), n), &e1));
    FinGroup::new(p.pow(n as u32), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;

    #[test]
    fn monomial_reflection_group_over_gf5() {
        let f = Field::get(5).unwrap();
        let s = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
        let t = Matrix::from_ints(f, &[&[0, 2], &[3, 0]]);
        let u = Matrix::from_ints(f, &[&[1, 0], &[0, -1]]);
        let stu = s.mul(&t).mul(&u);
        assert_eq!(stu, t.mul(&u).mul(&s));
        assert_eq!(stu, u.mul(&s).mul(&t));
        let h = affine_group(&[s, t, u]);
        assert_eq!(h.order().unwrap(), 400);
        let d = h.sylow(5).unwrap();
        assert_eq!(d.order().unwrap(), 25);
        assert!(d.elements().unwrap().iter().all(|x| x.order() <= 5));
    }
}
