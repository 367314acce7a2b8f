//! Perversity values from cyclotomic degree polynomials, the congruence check
//! linking them to local simples, and ordering by perversity.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Error, PartialEq)]
pub enum PerversityError {
    #[error("cannot parse degree polynomial {text:?}: {msg}")]
    Parse { text: String, msg: String },
    #[error("perversity {0} is not a nonnegative integer")]
    NonIntegral(Q),
    #[error("κ = {kappa} and d = {d} must be positive and coprime")]
    BadQuery { kappa: i64, d: i64 },
}

/// scalar · q^a_value · Π Φ_n(q)^mult
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePolynomial {
    pub scalar: Q,
    pub a_value: u32,
    /// (n, multiplicity), n ≥ 1, sorted by n, multiplicities positive
    pub cyclotomic: Vec<(u32, u32)>,
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// Coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = div_monic(&num, &cyclotomic(d));
    }
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "cyclotomic division is exact");
    q
}

impl DegreePolynomial {
    pub fn one() -> DegreePolynomial {
        DegreePolynomial { scalar: Q::from_integer(1), a_value: 0, cyclotomic: vec![] }
    }

    /// Parses factored text such as "1/2 q^3 Phi1^4 Phi3" or "1".
    pub fn parse(text: &str) -> Result<DegreePolynomial, PerversityError> {
        let err = |msg: &str| PerversityError::Parse { text: text.to_string(), msg: msg.to_string() };
        let mut scalar = Q::from_integer(1);
        let mut a_value = 0u32;
        let mut factors: Vec<(u32, u32)> = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                None => (tok, 1),
            };
            if base == "q" {
                a_value += exp;
            } else if let Some(n) = base.strip_prefix("Phi") {
                let n: u32 = n.parse().map_err(|_| err("bad cyclotomic index"))?;
                if n == 0 {
                    return Err(err("cyclotomic index must be positive"));
                }
                match factors.iter_mut().find(|(m, _)| *m == n) {
                    Some(f) => f.1 += exp,
                    None => factors.push((n, exp)),
                }
            } else {
                let r = parse_rational(base).ok_or_else(|| err("unknown token"))?;
                scalar *= pow_q(r, exp);
            }
        }
        if scalar <= Q::from_integer(0) {
            return Err(err("scalar must be positive"));
        }
        factors.sort();
        Ok(DegreePolynomial { scalar, a_value, cyclotomic: factors })
    }

    pub fn degree(&self) -> u32 {
        self.a_value + self.cyclotomic.iter().map(|&(n, m)| m * euler_phi(n)).sum::<u32>()
    }

    pub fn multiplicity(&self, n: u32) -> u32 {
        self.cyclotomic.iter().find(|f| f.0 == n).map_or(0, |f| f.1)
    }

    pub fn evaluate(&self, q: i64) -> Q {
        let mut v = self.scalar * pow_q(Q::from_integer(q), self.a_value);
        for &(n, m) in &self.cyclotomic {
            let c = cyclotomic(n).iter().rev().fold(0i64, |acc, &c| acc * q + c);
            v *= pow_q(Q::from_integer(c), m);
        }
        v
    }
}

impl fmt::Display for DegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.scalar != Q::from_integer(1) {
            parts.push(self.scalar.to_string());
        }
        match self.a_value {
            0 => {}
            1 => parts.push("q".into()),
            a => parts.push(format!("q^{a}")),
        }
        for &(n, m) in &self.cyclotomic {
            parts.push(if m == 1 { format!("Phi{n}") } else { format!("Phi{n}^{m}") });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.parse::<i64>().ok()?, b.parse::<i64>().ok()?);
            (b != 0).then(|| Q::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

fn pow_q(x: Q, e: u32) -> Q {
    (0..e).fold(Q::from_integer(1), |acc, _| acc * x)
}

/// The slope κ/d of the perversity function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerversityQuery {
    pub kappa: i64,
    pub d: i64,
}

impl PerversityQuery {
    pub fn new(kappa: i64, d: i64) -> Result<PerversityQuery, PerversityError> {
        if kappa <= 0 || d <= 0 || kappa.gcd(&d) != 1 {
            return Err(PerversityError::BadQuery { kappa, d });
        }
        Ok(PerversityQuery { kappa, d })
    }

    pub fn slope(&self) -> Q {
        Q::new(self.kappa, self.d)
    }
}

/// Σ over primitive n-th roots e^{2πik/n} of #{h ∈ ℤ : 0 ≤ k/n + h ≤ κ/d}, for n ≥ 2.
pub fn arg_count(n: u32, query: PerversityQuery) -> u64 {
    assert!(n >= 2, "the root 1 is counted by phi_value");
    let s = query.slope();
    (1..n)
        .filter(|&k| k.gcd(&n) == 1)
        .map(|k| {
            // 0 < k/n < 1 forces h ≥ 0
            let top = s - Q::new(k as i64, n as i64);
            if top < Q::from_integer(0) {
                0
            } else {
                top.floor().to_integer() as u64 + 1
            }
        })
        .sum()
}

/// Half the multiplicity of the root 1 plus the argument count of the other nonzero roots.
pub fn phi_value(f: &DegreePolynomial, query: PerversityQuery) -> Q {
    let mut v = Q::new(f.multiplicity(1) as i64, 2);
    for &(n, m) in f.cyclotomic.iter().filter(|(n, _)| *n >= 2) {
        v += Q::from_integer(m as i64 * arg_count(n, query) as i64);
    }
    v
}

/// π = (κ/d)(a(f) + deg f) + φ(f), which must be a nonnegative integer.
pub fn perversity_value(f: &DegreePolynomial, query: PerversityQuery) -> Result<u32, PerversityError> {
    let v = query.slope() * Q::from_integer((f.a_value + f.degree()) as i64) + phi_value(f, query);
    if !v.is_integer() || v < Q::from_integer(0) {
        return Err(PerversityError::NonIntegral(v));
    }
    Ok(v.to_integer() as u32)
}

/// One unipotent character with its place in the bijections.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterRow {
    pub label: String,
    pub poly: DegreePolynomial,
    pub pi: Option<u32>,
    pub global: String,
    pub local: String,
}

impl CharacterRow {
    pub fn degree_at(&self, q: i64) -> Q {
        self.poly.evaluate(q)
    }
}

/// Checks (−1)^π(T) dim T ≡ χ(1) (mod ℓ) per row; `local_dim` gives dim T for the row's local label.
pub fn check_congruence(rows: &[CharacterRow], q: i64, l: i64, local_dim: impl Fn(&str) -> Option<usize>) -> Vec<bool> {
    rows.iter()
        .map(|r| {
            let (Some(pi), Some(dim)) = (r.pi, local_dim(&r.local)) else { return false };
            let chi = r.degree_at(q);
            if !chi.is_integer() {
                return false;
            }
            let lhs = if pi % 2 == 0 { dim as i64 } else { -(dim as i64) };
            (lhs - chi.to_integer()).rem_euclid(l) == 0
        })
        .collect()
}

/// Stable sort by π; ties keep the given order.
pub fn order_by_perversity(rows: &[CharacterRow]) -> Vec<CharacterRow> {
    let mut out = rows.to_vec();
    out.sort_by_key(|r| r.pi.unwrap_or(u32::MAX));
    out
}
