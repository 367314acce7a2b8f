//! Dense row-major matrices over a small finite field.

use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;
use thiserror::Error;

use super::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone)]
pub struct Matrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// y += a·x over the field.
#[inline]
pub fn axpy(f: &Field, y: &mut [u8], a: u8, x: &[u8]) {
    debug_assert_eq!(y.len(), x.len());
    if a == 0 {
        return;
    }
    let q = f.order();
    if f.characteristic() == 2 {
        if a == 1 {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi ^= xi;
            }
        } else {
            let t = f.mul_row(a);
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi ^= t[xi as usize];
            }
        }
    } else if f.is_prime() {
        let p = q as u16;
        let t = f.mul_row(a);
        for (yi, &xi) in y.iter_mut().zip(x) {
            let s = *yi as u16 + t[xi as usize] as u16;
            *yi = if s >= p { (s - p) as u8 } else { s as u8 };
        }
    } else {
        let t = f.mul_row(a);
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = f.add(*yi, t[xi as usize]);
        }
    }
}

/// x *= a over the field.
#[inline]
pub fn scale_slice(f: &Field, x: &mut [u8], a: u8) {
    if a == 1 {
        return;
    }
    let t = f.mul_row(a);
    for xi in x.iter_mut() {
        *xi = t[*xi as usize];
    }
}

pub fn dot(f: &Field, x: &[u8], y: &[u8]) -> u8 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: &'static Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &'static Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, 1)
    }

    pub fn scalar(field: &'static Field, n: usize, a: u8) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    /// Builds a matrix from raw entries; panics if an entry is not a field element.
    pub fn from_vec(field: &'static Field, rows: usize, cols: usize, data: Vec<u8>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count");
        assert!(data.iter().all(|&x| (x as usize) < field.order()), "entry outside field");
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: &'static Field, cols: usize, rows: &[Vec<u8>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(field: &'static Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<u8> = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_int(x))).collect();
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    pub fn from_fn(field: &'static Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_vec(field, rows, cols, data)
    }

    pub fn random<R: Rng>(field: &'static Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q) as u8).collect();
        Matrix { field, rows, cols, data }
    }

    /// Permutation matrix sending basis vector i to basis vector perm[i].
    pub fn permutation(field: &'static Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[u8] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, a: u8) {
        debug_assert!((a as usize) < self.field.order());
        self.data[i * self.cols + j] = a;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(move |i| self.row(i))
    }
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u8))
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field.order(), other.field.order()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = Matrix::zero(f, m, n);
        if n == 0 || m == 0 {
            return out;
        }
        if f.is_prime() && f.characteristic() > 2 {
            let p = f.order() as u32;
            let maxp = (p - 1) * (p - 1);
            // accumulate at most `limit` products before reducing, so u32 never overflows
            let limit = ((u32::MAX - p) / maxp) as usize;
            let mut acc = vec![0u32; n];
            for i in 0..m {
                acc.iter_mut().for_each(|a| *a = 0);
                let mut pending = 0usize;
                let arow = self.row(i);
                for (l, &a) in arow.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let a = a as u32;
                    let brow = other.row(l);
                    for (s, &b) in acc.iter_mut().zip(brow) {
                        *s += a * b as u32;
                    }
                    pending += 1;
                    if pending == limit {
                        acc.iter_mut().for_each(|s| *s %= p);
                        pending = 1;
                    }
                }
                for (o, &s) in out.row_mut(i).iter_mut().zip(&acc) {
                    *o = (s % p) as u8;
                }
            }
        } else {
            for i in 0..m {
                let orow = &mut out.data[i * n..(i + 1) * n];
                for l in 0..k {
                    let a = self.data[i * k + l];
                    if a != 0 {
                        axpy(f, orow, a, &other.data[l * n..(l + 1) * n]);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![0u8; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a != 0 {
                axpy(self.field, &mut out, a, self.row(i));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, self.field.neg(1))
    }

    /// self + a·other
    pub fn combine(&self, other: &Matrix, a: u8) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        let mut out = self.clone();
        axpy(self.field, &mut out.data, a, &other.data);
        out
    }

    pub fn add_assign_scaled(&mut self, other: &Matrix, a: u8) {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        axpy(self.field, &mut self.data, a, &other.data);
    }

    pub fn scale(&self, a: u8) -> Matrix {
        let mut out = self.clone();
        scale_slice(self.field, &mut out.data, a);
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zero(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                let t = f.mul_row(a);
                for k in 0..other.rows {
                    let dst = (i * other.rows + k) * c + j * other.cols;
                    for (o, &b) in out.data[dst..dst + other.cols].iter_mut().zip(other.row(k)) {
                        *o = t[b as usize];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(idx.iter().map(|&j| r[j]));
        }
        Matrix { field: self.field, rows: self.rows, cols: idx.len(), data }
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        Matrix::from_fn(self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Stacks matrices vertically; all must share the column count.
    pub fn vstack(field: &'static Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Matrix { field, rows, cols, data }
    }

    pub fn hstack(field: &'static Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for m in parts {
                assert_eq!(m.rows, rows, "hstack row mismatch");
                data.extend_from_slice(m.row(i));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Block diagonal matrix.
    pub fn block_diag(field: &'static Field, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                out.data[(r0 + i) * c + c0..(r0 + i) * c + c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    /// Reduces in place, returning pivot columns; rows beyond the rank become zero.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(i) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else { continue };
            if i != r {
                for j in 0..cols {
                    self.data.swap(i * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            scale_slice(f, &mut self.data[r * cols..(r + 1) * cols], inv);
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let a = other[c];
                if a != 0 {
                    axpy(f, &mut other[c..], f.neg(a), &prow[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows span {v : self·vᵀ = 0}.
    pub fn nullspace(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zero(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = f.neg(r.get(i, fc));
            }
        }
        out
    }

    /// Rows span {v : v·self = 0}.
    pub fn left_nullspace(&self) -> Matrix {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let Rref { matrix, rank: _, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> u8 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Rows that are nonzero, in order.
    pub fn nonzero_rows(&self) -> Matrix {
        let idx: Vec<usize> = (0..self.rows).filter(|&i| self.row(i).iter().any(|&x| x != 0)).collect();
        self.select_rows(&idx)
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: usize) -> &'static Field {
        Field::get(q).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(5);
        let id = Matrix::identity(f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Matrix::zero(f, 2, 4);
        assert_eq!(z.rref().rank, 0);
        assert!(z.rref().matrix.is_zero());

        let m = Matrix::from_ints(f, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_ints(f, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn nullspace_examples() {
        let f = gf(5);
        assert_eq!(Matrix::identity(f, 4).nullspace().nrows(), 0);
        let z = Matrix::zero(f, 1, 3);
        let n = z.nullspace();
        assert_eq!(n.nrows(), 3);
        assert_eq!(n.rank(), 3);
        let m = Matrix::from_ints(f, &[&[1, 2], &[2, 4]]);
        let n = m.nullspace();
        assert_eq!(n.nrows(), 1);
        // (3,1) up to scalar: x + 2y = 0
        let v = n.row(0);
        assert_eq!(f.mul(v[0], f.inv(v[1])), 3);
    }

    #[test]
    fn kronecker_examples() {
        let f = gf(5);
        let a = Matrix::from_ints(f, &[&[2]]);
        let b = Matrix::from_ints(f, &[&[3]]);
        assert_eq!(a.kronecker(&b).unwrap(), Matrix::from_ints(f, &[&[1]]));
        let a = Matrix::from_ints(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.kronecker(&Matrix::identity(f, 1)).unwrap(), a);
        assert!(a.kronecker(&Matrix::identity(gf(7), 1)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 4, 5, 9] {
            let f = gf(q);
            for _ in 0..20 {
                let m = Matrix::random(f, 6, 6, &mut rng);
                match m.inverse() {
                    Some(inv) => assert!(m.mul(&inv).is_identity()),
                    None => assert!(m.rank() < 6),
                }
            }
        }
        assert_eq!(Matrix::zero(gf(5), 0, 0).inverse().unwrap().nrows(), 0);
    }

    #[test]
    fn matmul_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2, 3, 4, 5, 13, 251] {
            let f = gf(q);
            let a = Matrix::random(f, 7, 300, &mut rng);
            let b = Matrix::random(f, 300, 5, &mut rng);
            let c = a.mul(&b);
            for i in 0..7 {
                for j in 0..5 {
                    let mut s = 0u8;
                    for l in 0..300 {
                        s = f.add(s, f.mul(a.get(i, l), b.get(l, j)));
                    }
                    assert_eq!(c.get(i, j), s);
                }
            }
        }
    }
}
