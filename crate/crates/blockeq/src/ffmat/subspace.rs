//! Subspaces of F^n held in reduced echelon form, and spinning under matrices.

use std::collections::VecDeque;

use super::field::Field;
use super::matrix::{axpy, scale_slice, Matrix, MatrixError};

/// A subspace of F^n. Rows are kept fully reduced: each row has a leading 1 at
/// its pivot column and every other row is zero there.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: &'static Field,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &'static Field, n: usize) -> Subspace {
        Subspace { field, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &'static Field, n: usize) -> Subspace {
        Subspace::from_matrix(&Matrix::identity(field, n))
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let r = m.rref();
        let rows = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { field: m.field(), n: m.ncols(), rows, pivots: r.pivots }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the span's component at pivot columns; v is in the span iff the result is zero.
    pub fn reduce(&self, v: &mut [u8]) {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                axpy(f, v, f.neg(a), row);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds v to the span; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.insert_reduced(w)
    }

    fn insert_reduced(&mut self, mut w: Vec<u8>) -> bool {
        let f = self.field;
        let Some(c) = w.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(w[c]);
        scale_slice(f, &mut w, inv);
        for row in &mut self.rows {
            let a = row[c];
            if a != 0 {
                axpy(f, row, f.neg(a), &w);
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, w);
        true
    }

    /// Echelon basis as matrix rows.
    pub fn basis(&self) -> Matrix {
        Matrix::from_rows(self.field, self.n, &self.rows)
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i]
    }

    /// Coordinates of v (assumed in the span) in the echelon basis.
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Columns that are not pivots: the standard basis vectors there span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.n).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the image of v in F^n / self, w.r.t. the non-pivot standard basis.
    pub fn quotient_coords(&self, v: &[u8], non_pivots: &[usize]) -> Vec<u8> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        non_pivots.iter().map(|&c| w[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v = a·A = b·B  ⇔  (a, b)·[A; -B] = 0
        let f = self.field;
        let a = self.basis();
        let b = other.basis();
        let stacked = Matrix::vstack(f, self.n, &[&a, &b.neg()]);
        let null = stacked.left_nullspace();
        let mut out = Subspace::new(f, self.n);
        for r in null.rows() {
            out.insert(&a.vec_mul(&r[..a.nrows()]));
        }
        out
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.n == other.n && self.pivots == other.pivots && self.rows == other.rows
    }

    /// Smallest subspace containing self and invariant under every generator.
    pub fn spin(&mut self, generators: &[Matrix]) {
        let mut queue: VecDeque<Vec<u8>> = self.rows.iter().cloned().collect();
        self.spin_queue(&mut queue, generators);
    }

    /// Adds seeds and spins to closure.
    pub fn spin_in(&mut self, seeds: &[Vec<u8>], generators: &[Matrix]) {
        let mut queue = VecDeque::new();
        for s in seeds {
            let mut w = s.clone();
            self.reduce(&mut w);
            if w.iter().any(|&x| x != 0) {
                queue.push_back(s.clone());
                self.insert_reduced(w);
            }
        }
        self.spin_queue(&mut queue, generators);
    }

    fn spin_queue(&mut self, queue: &mut VecDeque<Vec<u8>>, generators: &[Matrix]) {
        while let Some(v) = queue.pop_front() {
            if self.rows.len() == self.n {
                return;
            }
            for g in generators {
                let w = g.vec_mul(&v);
                let mut r = w.clone();
                self.reduce(&mut r);
                if self.insert_reduced(r) {
                    queue.push_back(w);
                }
            }
        }
    }
}

/// Basis (echelon rows) of the smallest subspace containing `vectors` that is
/// invariant under every generator.
pub fn spin_space(vectors: &Matrix, generators: &[Matrix]) -> Result<Matrix, MatrixError> {
    let n = vectors.ncols();
    for g in generators {
        if g.nrows() != n || g.ncols() != n {
            return Err(MatrixError::Dimension(format!("generator {}x{} on F^{n}", g.nrows(), g.ncols())));
        }
        if g.field() != vectors.field() {
            return Err(MatrixError::FieldMismatch(g.field().order(), vectors.field().order()));
        }
    }
    let mut s = Subspace::new(vectors.field(), n);
    s.spin_in(&vectors.to_rows(), generators);
    Ok(s.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_examples() {
        let f = Field::get(5).unwrap();
        let swap = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
        let full = spin_space(&Matrix::identity(f, 2), &[swap.clone()]).unwrap();
        assert_eq!(full.nrows(), 2);
        let zero = spin_space(&Matrix::zero(f, 1, 2), &[swap.clone()]).unwrap();
        assert_eq!(zero.nrows(), 0);
        let e1 = spin_space(&Matrix::from_ints(f, &[&[1, 0]]), &[swap.clone()]).unwrap();
        assert_eq!(e1, Matrix::identity(f, 2));
        let fixed = spin_space(&Matrix::from_ints(f, &[&[1, 1]]), &[swap]).unwrap();
        assert_eq!(fixed.nrows(), 1);
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::get(3).unwrap();
        let a = Subspace::from_matrix(&Matrix::from_ints(f, &[&[1, 0, 0], &[0, 1, 0]]));
        let b = Subspace::from_matrix(&Matrix::from_ints(f, &[&[0, 1, 0], &[0, 0, 1]]));
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
