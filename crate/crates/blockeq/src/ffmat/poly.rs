//! Univariate polynomials over GF(q): arithmetic, characteristic polynomials
//! and factorisation into irreducibles.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::matrix::{axpy, Matrix};
use super::subspace::Subspace;

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: &'static Field,
    coeffs: Vec<u8>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &'static Field, mut coeffs: Vec<u8>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }
    pub fn zero(field: &'static Field) -> Poly {
        Poly { field, coeffs: vec![] }
    }
    pub fn one(field: &'static Field) -> Poly {
        Poly { field, coeffs: vec![1] }
    }
    pub fn x(field: &'static Field) -> Poly {
        Poly { field, coeffs: vec![0, 1] }
    }
    /// x - a
    pub fn linear(field: &'static Field, a: u8) -> Poly {
        Poly::new(field, vec![field.neg(a), 1])
    }
    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    /// Degree; the zero polynomial has degree 0 here and must be tested with is_zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    pub fn lead(&self) -> u8 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, 0);
        let mut o = other.coeffs.clone();
        o.resize(n, 0);
        axpy(self.field, &mut c, 1, &o);
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, a: u8) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.mul(c, a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            axpy(f, &mut c[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(f, c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    /// (quotient, remainder); panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u8; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c != 0 {
                axpy(f, &mut r[i..=i + dd], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| f.mul(f.from_int(i as i64), a)).collect();
        Poly::new(f, c)
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// p(A) by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = self.field;
        let n = a.nrows();
        let mut acc = Matrix::zero(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if c != 0 {
                acc.add_assign_scaled(&Matrix::identity(f, n), c);
            }
        }
        acc
    }

    /// Companion-free evaluation on a single row vector: v·p(A).
    pub fn eval_on_vector(&self, a: &Matrix, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut acc = vec![0u8; v.len()];
        for &c in self.coeffs.iter().rev() {
            acc = a.vec_mul(&acc);
            axpy(f, &mut acc, c, v);
        }
        acc
    }

    /// Unique p-th root of a polynomial in x^p (char p): coefficients are p-th roots.
    fn pth_root(&self) -> Poly {
        let f = self.field;
        let p = f.characteristic();
        let root_exp = (f.order() / p) as u64;
        let c = self.coeffs.iter().step_by(p).map(|&a| f.pow(a, root_exp)).collect();
        Poly::new(f, c)
    }
}

/// Characteristic polynomial det(xI - A), via cyclic subspaces.
pub fn char_poly(a: &Matrix) -> Poly {
    assert!(a.is_square(), "char poly of non-square matrix");
    let f = a.field();
    let n = a.nrows();
    let mut w = Subspace::new(f, n);
    let mut result = Poly::one(f);
    for i in 0..n {
        if w.dim() == n {
            break;
        }
        let mut e = vec![0u8; n];
        e[i] = 1;
        w.reduce(&mut e);
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        // block rows (pivot-normalised) and tags τ with row ≡ v·τ(A) mod w
        let mut rows: Vec<(usize, Vec<u8>, Vec<u8>)> = Vec::new();
        let mut cur = e;
        let mut tag = vec![1u8];
        loop {
            // cur is reduced and nonzero: insert it
            let c = cur.iter().position(|&x| x != 0).unwrap();
            let inv = f.inv(cur[c]);
            let row: Vec<u8> = cur.iter().map(|&x| f.mul(x, inv)).collect();
            let rtag: Vec<u8> = tag.iter().map(|&x| f.mul(x, inv)).collect();
            let mut next = a.vec_mul(&row);
            let mut ntag = vec![0u8];
            ntag.extend_from_slice(&rtag);
            rows.push((c, row, rtag));
            w.reduce(&mut next);
            for (pc, r, t) in &rows {
                let coef = next[*pc];
                if coef != 0 {
                    let m = f.neg(coef);
                    axpy(f, &mut next, m, r);
                    axpy(f, &mut ntag[..t.len()], m, t);
                }
            }
            if next.iter().all(|&x| x == 0) {
                result = result.mul(&Poly::new(f, ntag).monic());
                break;
            }
            cur = next;
            tag = ntag;
        }
        for (_, r, _) in &rows {
            w.insert(r);
        }
    }
    result
}

/// Squarefree decomposition: pairs (g, i) with self = Π g^i, g squarefree and pairwise coprime.
pub fn squarefree(poly: &Poly) -> Vec<(Poly, usize)> {
    let f = poly.field();
    let p = f.characteristic();
    let mut out = Vec::new();
    let poly = poly.monic();
    if poly.degree() == 0 {
        return out;
    }
    let c0 = poly.gcd(&poly.derivative());
    let mut w = poly.div_exact(&c0);
    let mut c = c0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
fn distinct_degree(poly: &Poly) -> Vec<(Poly, usize)> {
    let f = poly.field();
    let q = f.order() as u128;
    let x = Poly::x(f);
    let mut out = Vec::new();
    let mut rest = poly.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.powmod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct irreducibles of degree d (Cantor–Zassenhaus).
fn equal_degree(poly: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    if poly.degree() == d {
        out.push(poly.clone());
        return;
    }
    let f = poly.field();
    let q = f.order() as u128;
    let n = poly.degree();
    loop {
        let a = Poly::new(f, (0..n).map(|_| rng.gen_range(0..f.order()) as u8).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // trace from GF(q^d) to GF(2): a + a^2 + ... + a^(2^(kd-1))
            let steps = f.degree() * d;
            let mut t = a.rem(poly);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t).rem(poly);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2)
            let mut frob = a.rem(poly);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.powmod(q, poly);
                norm = norm.mul(&frob).rem(poly);
            }
            norm.powmod((q - 1) / 2, poly).sub(&Poly::one(f))
        };
        let g = poly.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            let other = poly.div_exact(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

/// Factorisation into monic irreducibles with multiplicities, sorted by (degree, coefficients).
pub fn factor(poly: &Poly) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (sq, mult) in squarefree(poly) {
        for (part, d) in distinct_degree(&sq) {
            let mut irr = Vec::new();
            equal_degree(&part, d, &mut rng, &mut irr);
            out.extend(irr.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    out
}
