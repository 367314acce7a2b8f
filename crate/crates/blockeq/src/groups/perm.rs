//! Permutations on {0..n-1}, composed left to right: (a·b)(i) = b(a(i)).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation {0:?}: {1}")]
    Syntax(String, String),
    #[error("point {0} outside 1..={1}")]
    OutOfRange(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    /// From the image list; panics if it is not a bijection.
    pub fn from_images(img: Vec<usize>) -> Perm {
        let n = img.len();
        let mut seen = vec![false; n];
        for &i in &img {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Perm { img: img.into_iter().map(|i| i as u32).collect() }
    }

    /// Parses 1-based cycle notation such as "(1,2,3)(4,5)"; "()" is the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Perm, PermError> {
        let err = |m: &str| PermError::Syntax(text.to_string(), m.to_string());
        let mut img: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let pts: Vec<usize> = inner
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| err(&format!("bad point {t:?}"))))
                .collect::<Result<_, _>>()?;
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(PermError::OutOfRange(p, degree));
                }
                if moved[p - 1] {
                    return Err(err(&format!("point {p} repeated")));
                }
                moved[p - 1] = true;
            }
            for k in 0..pts.len() {
                img[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
            }
        }
        Ok(Perm::from_images(img))
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().map(|&i| i as usize)
    }

    /// First self, then other.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: self.img.iter().map(|&i| other.img[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j as usize] = i as u32;
        }
        Perm { img }
    }

    /// g⁻¹·self·g
    pub fn conjugate(&self, g: &Perm) -> Perm {
        g.inverse().mul(self).mul(g)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.img.len()];
        let mut lcm = 1usize;
        for s in 0..self.img.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i] as usize;
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }

    /// Acts on the disjoint union of two point sets: self on the first `self.degree()` points.
    pub fn juxtapose(&self, other: &Perm) -> Perm {
        let off = self.img.len() as u32;
        let mut img = self.img.clone();
        img.extend(other.img.iter().map(|&i| i + off));
        Perm { img }
    }

    /// Restriction to points start..start+len, which must be invariant.
    pub fn restrict(&self, start: usize, len: usize) -> Perm {
        Perm {
            img: (start..start + len)
                .map(|i| {
                    let j = self.img[i] as usize;
                    assert!(j >= start && j < start + len, "range not invariant");
                    (j - start) as u32
                })
                .collect(),
        }
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// 1-based cycle notation, "()" for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.img.len()];
        let mut any = false;
        for s in 0..self.img.len() {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            any = true;
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.img[i] as usize;
            }
            write!(f, "({})", cyc.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
