use super::{PerverseError, Result};

/// A composition factor sitting where the perversity conditions forbid it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub complex: usize,
    /// j with the factor in H^{−j}
    pub j: i32,
    pub factor: usize,
    pub multiplicity: usize,
}

/// Checks each complex i: factors T_α of H^{−j} satisfy π(α) < j ≤ π(i), except a
/// single copy of T_i in H^{−π(i)}. `cohomology[i]` lists (j, multiplicities).
pub fn verify_perversity(cohomology: &[Vec<(i32, Vec<usize>)>], pi: &[u32]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, table) in cohomology.iter().enumerate() {
        let mut self_copies = 0;
        for (j, mult) in table {
            for (a, &c) in mult.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut bad = c;
                if a == i && *j == pi[i] as i32 {
                    self_copies += c;
                    bad = c - 1;
                }
                if bad > 0 && !((pi[a] as i32) < *j && *j <= pi[i] as i32) {
                    out.push(Violation { complex: i, j: *j, factor: a, multiplicity: bad });
                }
            }
        }
        if self_copies == 0 {
            out.push(Violation { complex: i, j: pi[i] as i32, factor: i, multiplicity: 0 });
        }
    }
    out
}

/// a_m = Σ_j (−1)^{j − π(m)} [H^{−j} : T_m].
pub fn alternating_sum(table: &[(i32, Vec<usize>)], pi: &[u32]) -> Vec<i64> {
    let mut a = vec![0i64; pi.len()];
    for (j, mult) in table {
        for (m, &c) in mult.iter().enumerate() {
            let sign = if (j - pi[m] as i32).rem_euclid(2) == 0 { 1 } else { -1 };
            a[m] += sign * c as i64;
        }
    }
    a
}

/// "9-4-3-2+1+1": the own label first, then the others by descending index,
/// each repeated |a_m| times with its sign.
pub fn format_total(own: usize, a: &[i64], labels: &[String]) -> String {
    let mut order = vec![own];
    order.extend((0..a.len()).rev().filter(|&m| m != own));
    let mut out = String::new();
    for m in order {
        for _ in 0..a[m].unsigned_abs() {
            if a[m] < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&labels[m]);
        }
    }
    out
}

/// Inverse of `format_total` up to ordering: signed multiplicities per label.
pub fn parse_total(text: &str, labels: &[String]) -> Result<Vec<i64>> {
    let err = || PerverseError::ParseTotal(text.to_string());
    let mut a = vec![0i64; labels.len()];
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => -1,
            b'+' => 1,
            _ => 0,
        };
        if sign != 0 {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let m = labels.iter().position(|l| l == &rest[..end]).ok_or_else(err)?;
        a[m] += if sign == 0 { 1 } else { sign };
        rest = &rest[end..];
    }
    Ok(a)
}

/// r_i = (e_i − Σ_{m≠i} a_m r_m)/a_i with rows of lower perversity already known.
pub fn reconstruct_row(i: usize, known: &[Option<Vec<i64>>], a: &[i64]) -> Result<Vec<i64>> {
    let ai = a[i];
    if ai == 0 {
        return Err(PerverseError::ZeroSelfCoefficient(i));
    }
    let mut v = vec![0i64; a.len()];
    v[i] = 1;
    for (m, &am) in a.iter().enumerate() {
        if m == i || am == 0 {
            continue;
        }
        let r = known.get(m).and_then(|r| r.as_ref()).ok_or(PerverseError::MissingRow(m))?;
        for (x, y) in v.iter_mut().zip(r) {
            *x -= am * y;
        }
    }
    if v.iter().any(|x| x % ai != 0) {
        return Err(PerverseError::NonIntegralRow(i));
    }
    Ok(v.into_iter().map(|x| x / ai).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> Vec<String> {
        (1..=10).map(|i| i.to_string()).collect()
    }

    #[test]
    fn totals_round_trip() {
        let l = labels();
        let mut a = vec![0i64; 10];
        a[8] = 1;
        a[3] = -1;
        a[2] = -1;
        a[1] = -1;
        a[0] = 2;
        assert_eq!(format_total(8, &a, &l), "9-4-3-2+1+1");
        assert_eq!(parse_total("9-4-3-2+1+1", &l).unwrap(), a);
        assert_eq!(parse_total("1+1-2-3+9-4", &l).unwrap(), a);
        assert!(parse_total("9-x", &l).is_err());
    }

    #[test]
    fn alternating_sum_signs_follow_perversity() {
        // two-term window: factor 1 (π 0) in H^{-1}, own factor (π 3) in H^{-3}
        let pi = [0, 3];
        let table = vec![(3, vec![0, 1]), (1, vec![1, 0])];
        assert_eq!(alternating_sum(&table, &pi), vec![-1, 1]);
        assert!(verify_perversity(&[vec![(0, vec![1, 0])], table.clone()], &pi).is_empty());
        let bad = [0, 2];
        assert!(!verify_perversity(&[vec![(0, vec![1, 0])], table], &bad).is_empty());
    }

    #[test]
    fn reconstruction_solves_for_the_new_row() {
        let known = vec![Some(vec![1, 0]), None];
        assert_eq!(reconstruct_row(1, &known, &[-1, 1]).unwrap(), vec![1, 1]);
        assert!(matches!(reconstruct_row(1, &known, &[-1, 0]), Err(PerverseError::ZeroSelfCoefficient(1))));
        assert!(matches!(reconstruct_row(0, &[None, None], &[1, 1]), Err(PerverseError::MissingRow(1))));
    }
}
