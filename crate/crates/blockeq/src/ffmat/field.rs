//! Finite fields GF(q) with q = p^k ≤ 256, one element per byte.
//!
//! Elements of GF(p^k) are encoded as integers 0..q whose base-p digits are the
//! coefficients of a polynomial in a fixed primitive element x (digit i is the
//! coefficient of x^i). For prime fields this is the usual residue encoding.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power in 2..=256")]
    BadOrder(usize),
}

/// Arithmetic tables for one finite field.
pub struct Field {
    q: usize,
    p: usize,
    degree: usize,
    /// Coefficients c_0..c_{k-1} of the defining polynomial x^k = sum c_i x^i.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.q.hash(state);
    }
}

#[allow(clippy::declare_interior_mutable_const)]
const EMPTY: OnceLock<Field> = OnceLock::new();
static FIELDS: [OnceLock<Field>; 257] = [EMPTY; 257];

/// Returns (p, k) with q = p^k, or None.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl Field {
    /// The shared field of order q.
    pub fn get(q: usize) -> Result<&'static Field, FieldError> {
        if q > 256 {
            return Err(FieldError::BadOrder(q));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::BadOrder(q))?;
        Ok(FIELDS[q].get_or_init(|| Field::build(p, k)))
    }

    fn build(p: usize, k: usize) -> Field {
        let q = p.pow(k as u32);
        let modulus = if k == 1 { vec![] } else { primitive_modulus(p, k) };
        let digits = |mut a: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a);
            neg[a] = encode(&da.iter().map(|&d| (p - d) % p).collect::<Vec<_>>()) as u8;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u8;
            }
        }
        // exp/log tables of the primitive element x (for k = 1, of a primitive root)
        let mut exp = vec![0usize; q - 1];
        let mut log = vec![0usize; q];
        let gen = if k == 1 { primitive_root(p) } else { p };
        let mut cur = 1usize;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur;
            log[cur] = i;
            cur = if k == 1 { cur * gen % p } else { times_x(cur, p, k, &modulus) };
        }
        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)] as u8;
            for b in 1..q {
                mul[a * q + b] = exp[(log[a] + log[b]) % (q - 1)] as u8;
            }
        }
        Field { q, p, degree: k, modulus: modulus.iter().map(|&c| c as u8).collect(), add, mul, neg, inv }
    }

    pub fn order(&self) -> usize {
        self.q
    }
    pub fn characteristic(&self) -> usize {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn is_prime(&self) -> bool {
        self.degree == 1
    }
    /// Coefficients c_i with x^k = sum c_i x^i for the generator x (empty for prime fields).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    pub fn div(&self, a: u8, b: u8) -> u8 {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }
    /// Row of the multiplication table for a fixed scalar.
    #[inline]
    pub fn mul_row(&self, a: u8) -> &[u8] {
        &self.mul[a as usize * self.q..(a as usize + 1) * self.q]
    }
    #[inline]
    pub fn add_row(&self, a: u8) -> &[u8] {
        &self.add[a as usize * self.q..(a as usize + 1) * self.q]
    }
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|a| a as u8)
    }
    /// Multiplicative generator of the field.
    pub fn primitive_element(&self) -> u8 {
        if self.degree == 1 {
            primitive_root(self.p) as u8
        } else {
            self.p as u8
        }
    }
}

fn primitive_root(p: usize) -> usize {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .expect("prime has a primitive root")
}

/// Multiply the encoded element a by x modulo the defining polynomial.
fn times_x(a: usize, p: usize, k: usize, modulus: &[usize]) -> usize {
    let mut ds: Vec<usize> = (0..k).map(|i| a / p.pow(i as u32) % p).collect();
    let top = ds[k - 1];
    for i in (1..k).rev() {
        ds[i] = ds[i - 1];
    }
    ds[0] = 0;
    for i in 0..k {
        ds[i] = (ds[i] + top * modulus[i]) % p;
    }
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Lexicographically first relation x^k = sum c_i x^i making x of order p^k - 1.
fn primitive_modulus(p: usize, k: usize) -> Vec<usize> {
    let q = p.pow(k as u32);
    for code in 0..q {
        let c: Vec<usize> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        if c[0] == 0 {
            continue;
        }
        let mut cur = 1usize;
        let mut order = 0;
        loop {
            cur = times_x(cur, p, k, &c);
            order += 1;
            if cur == 1 || order > q {
                break;
            }
        }
        if order == q - 1 {
            return c;
        }
    }
    unreachable!("a primitive polynomial exists for every finite field")
}
