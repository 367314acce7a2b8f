//! Homomorphism spaces between modules.
//!
//! Hom(M, N) is found by building a spanning tree of M from seed vectors:
//! every basis vector is a seed or an earlier basis vector times a generator,
//! so a homomorphism is fixed by the images of the seeds. Each non-tree edge
//! gives a linear relation that the seed images must satisfy; relations are
//! applied as soon as they appear, which keeps the parameter space small.

use rand::Rng;

use super::module::{compatible, GModule};
use crate::ffmat::{axpy, scale_slice, Matrix};

/// Echelon rows together with their expressions in the spanning-tree basis.
struct TrackedEchelon {
    rows: Vec<Vec<u8>>,
    coeffs: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    m: usize,
}

enum Reduced {
    /// Coefficients of the vector in terms of the tree basis.
    Relation(Vec<u8>),
    New,
}

impl TrackedEchelon {
    fn new(m: usize) -> Self {
        TrackedEchelon { rows: vec![], coeffs: vec![], pivots: vec![], m }
    }

    fn reduce(&self, f: &'static crate::ffmat::Field, w: &mut [u8], c: &mut [u8]) {
        for ((row, co), &p) in self.rows.iter().zip(&self.coeffs).zip(&self.pivots) {
            let a = w[p];
            if a != 0 {
                axpy(f, w, f.neg(a), row);
                axpy(f, c, a, co);
            }
        }
    }

    /// Reduces w; if independent, records it as tree basis vector number `index`.
    fn process(&mut self, f: &'static crate::ffmat::Field, w: &[u8], index: usize) -> Reduced {
        let mut r = w.to_vec();
        let mut c = vec![0u8; self.m];
        self.reduce(f, &mut r, &mut c);
        let Some(p) = r.iter().position(|&x| x != 0) else { return Reduced::Relation(c) };
        // r = b_index - Σ c_t b_t
        let mut co: Vec<u8> = c.iter().map(|&x| f.neg(x)).collect();
        co[index] = f.add(co[index], 1);
        let inv = f.inv(r[p]);
        scale_slice(f, &mut r, inv);
        scale_slice(f, &mut co, inv);
        for (row, rc) in self.rows.iter_mut().zip(self.coeffs.iter_mut()) {
            let a = row[p];
            if a != 0 {
                axpy(f, row, f.neg(a), &r);
                axpy(f, rc, f.neg(a), &co);
            }
        }
        self.rows.push(r);
        self.coeffs.push(co);
        self.pivots.push(p);
        Reduced::New
    }

    fn contains(&self, f: &'static crate::ffmat::Field, w: &[u8]) -> bool {
        let mut r = w.to_vec();
        let mut c = vec![0u8; self.m];
        self.reduce(f, &mut r, &mut c);
        r.iter().all(|&x| x == 0)
    }
}

/// Basis of Hom_{kG}(M, N); each map is a dim M × dim N matrix acting on rows.
pub fn hom_space(m: &GModule, n: &GModule) -> Vec<Matrix> {
    hom_space_seeded(m, n, &[])
}

/// As [`hom_space`], spinning the given vectors of M first. A generator of a
/// cyclic M keeps the parameter count at dim N throughout.
pub fn hom_space_seeded(m: &GModule, n: &GModule, seeds: &[Vec<u8>]) -> Vec<Matrix> {
    assert!(compatible(m, n), "Hom between modules over different groups");
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return vec![];
    }
    let mut te = TrackedEchelon::new(dm);
    let mut basis: Vec<Vec<u8>> = Vec::with_capacity(dm);
    // phi[t] has one row per free parameter: the image of basis vector t
    let mut phi: Vec<Matrix> = Vec::with_capacity(dm);
    let mut r = 0usize;
    let mut next = 0usize;
    let mut seed_at = 0usize;
    loop {
        if next < basis.len() {
            let j = next;
            next += 1;
            for (a, b) in m.gens().iter().zip(n.gens()) {
                let w = a.vec_mul(&basis[j]);
                let idx = basis.len();
                match te.process(f, &w, idx) {
                    Reduced::New => {
                        basis.push(w);
                        phi.push(phi[j].mul(b));
                    }
                    Reduced::Relation(c) => {
                        if r == 0 {
                            continue;
                        }
                        let mut cons = phi[j].mul(b);
                        for (t, &ct) in c.iter().enumerate() {
                            if ct != 0 {
                                cons.add_assign_scaled(&phi[t], f.neg(ct));
                            }
                        }
                        if cons.is_zero() {
                            continue;
                        }
                        let z = cons.left_nullspace();
                        r = z.nrows();
                        for p in phi.iter_mut() {
                            *p = z.mul(p);
                        }
                    }
                }
            }
        } else if basis.len() < dm {
            let mut e = vec![0u8; dm];
            let mut found = false;
            while seed_at < seeds.len() + dm && !found {
                if seed_at < seeds.len() {
                    e.copy_from_slice(&seeds[seed_at]);
                } else {
                    e.iter_mut().for_each(|x| *x = 0);
                    e[seed_at - seeds.len()] = 1;
                }
                found = !te.contains(f, &e);
                seed_at += 1;
            }
            let idx = basis.len();
            te.process(f, &e, idx);
            basis.push(e);
            for p in phi.iter_mut() {
                *p = Matrix::vstack(f, dn, &[p, &Matrix::zero(f, dn, dn)]);
            }
            phi.push(Matrix::vstack(f, dn, &[&Matrix::zero(f, r, dn), &Matrix::identity(f, dn)]));
            r += dn;
        } else {
            break;
        }
    }
    if r == 0 {
        return vec![];
    }
    let b = Matrix::from_rows(f, dm, &basis);
    let binv = b.inverse().expect("tree basis spans the module");
    (0..r)
        .map(|k| {
            let rows: Vec<Vec<u8>> = phi.iter().map(|p| p.row(k).to_vec()).collect();
            binv.mul(&Matrix::from_rows(f, dn, &rows))
        })
        .collect()
}

pub fn hom_dim(m: &GModule, n: &GModule) -> usize {
    hom_space(m, n).len()
}

/// Random linear combination of a basis of maps.
pub fn random_combination<R: Rng>(basis: &[Matrix], rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let f = basis.first().map(|b| b.field());
    let Some(f) = f else { return Matrix::zero(crate::ffmat::Field::get(2).unwrap(), rows, cols) };
    let mut acc = Matrix::zero(f, rows, cols);
    for b in basis {
        let c = rng.gen_range(0..f.order()) as u8;
        if c != 0 {
            acc.add_assign_scaled(b, c);
        }
    }
    acc
}

/// An isomorphism M → N, or None. Tries basis elements, then random combinations.
pub fn is_isomorphic<R: Rng>(m: &GModule, n: &GModule, rng: &mut R) -> Option<Matrix> {
    if m.dim() != n.dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(Matrix::zero(m.field(), 0, 0));
    }
    let basis = hom_space(m, n);
    iso_from_basis(&basis, m.dim(), rng)
}

pub(crate) fn iso_from_basis<R: Rng>(basis: &[Matrix], d: usize, rng: &mut R) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    for b in basis {
        if b.is_invertible() {
            return Some(b.clone());
        }
    }
    for _ in 0..64 {
        let c = random_combination(basis, d, d, rng);
        if c.is_invertible() {
            return Some(c);
        }
    }
    None
}
