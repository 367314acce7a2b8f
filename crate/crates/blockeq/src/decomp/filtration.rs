//! Filtrations whose successive quotients are taken from a prescribed list.

use rand::Rng;

use crate::ffmat::Subspace;
use crate::modrep::{hom_space, random_combination, Algebra, GModule};

/// Distinct images of injective maps tried per allowed module at each level.
const IMAGES_PER_LEVEL: usize = 4;

/// A chain 0 < M_1 < … < M_m = M (subspaces of M, zero omitted) whose successive
/// quotients are each isomorphic to a member of `allowed`, or None after
/// exhaustive backtracking over the sampled submodules.
pub fn stacked_filtration<R: Rng>(
    alg: &Algebra,
    m: &GModule,
    allowed: &[GModule],
    rng: &mut R,
) -> Option<Vec<Subspace>> {
    if m.dim() == 0 {
        return Some(vec![]);
    }
    let min = allowed.iter().map(|a| a.dim()).filter(|&d| d > 0).min()?;
    let mults: Vec<Vec<usize>> = allowed.iter().map(|a| alg.multiplicities(a)).collect();
    search(alg, m, allowed, &mults, m.dim() / min, rng)
}

fn search<R: Rng>(
    alg: &Algebra,
    m: &GModule,
    allowed: &[GModule],
    mults: &[Vec<usize>],
    depth: usize,
    rng: &mut R,
) -> Option<Vec<Subspace>> {
    if m.dim() == 0 {
        return Some(vec![]);
    }
    if depth == 0 {
        return None;
    }
    let mm = alg.multiplicities(m);
    for (a, ma) in allowed.iter().zip(mults) {
        if a.dim() == 0 || a.dim() > m.dim() || ma.iter().zip(&mm).any(|(x, y)| x > y) {
            continue;
        }
        let homs = hom_space(a, m);
        if homs.is_empty() {
            continue;
        }
        let mut images: Vec<Subspace> = Vec::new();
        let candidates = homs
            .iter()
            .cloned()
            .chain((0..2 * IMAGES_PER_LEVEL).map(|_| random_combination(&homs, a.dim(), m.dim(), rng)));
        for f in candidates {
            if images.len() >= IMAGES_PER_LEVEL {
                break;
            }
            if f.rank() != a.dim() {
                continue;
            }
            let img = Subspace::from_matrix(&f);
            if !images.iter().any(|s| s.same_as(&img)) {
                images.push(img);
            }
        }
        for n in images {
            let q = m.quotient(&n);
            if let Some(chain) = search(alg, &q, allowed, mults, depth - 1, rng) {
                let mut out = vec![n.clone()];
                out.extend(chain.iter().map(|s| m.lift_from_quotient(&n, s)));
                return Some(out);
            }
        }
    }
    None
}

/// Checks a filtration certificate: increasing invariant subspaces ending at M
/// with every successive quotient isomorphic to an allowed module.
pub fn check_filtration<R: Rng>(
    alg: &Algebra,
    m: &GModule,
    chain: &[Subspace],
    allowed: &[GModule],
    rng: &mut R,
) -> bool {
    let mut prev = Subspace::new(m.field(), m.dim());
    for s in chain {
        if !m.is_submodule(s) || !s.contains_space(&prev) || s.dim() == prev.dim() {
            return false;
        }
        let top = m.submodule(s);
        let sub_in_top = Subspace::from_matrix(&prev_coords(s, &prev));
        let factor = top.quotient(&sub_in_top);
        if !allowed.iter().any(|a| alg.isomorphism(a, &factor, rng).is_some()) {
            return false;
        }
        prev = s.clone();
    }
    prev.dim() == m.dim()
}

/// Coordinates of a subspace of s in the echelon basis of s.
fn prev_coords(s: &Subspace, prev: &Subspace) -> crate::ffmat::Matrix {
    let rows: Vec<Vec<u8>> = (0..prev.dim()).map(|i| s.coords(prev.row(i))).collect();
    crate::ffmat::Matrix::from_rows(s.field(), s.dim(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::{Field, Matrix};
    use crate::groups::FinGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn filtrations_found_and_refused() {
        let f = Field::get(5).unwrap();
        let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap());
        let alg = Algebra::compute(g, f, 4, 50).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (t, s) = (alg.simple(0).clone(), alg.simple(1).clone());
        let ts = GModule::direct_sum(&[&t, &s]).unwrap();
        let chain = stacked_filtration(&alg, &ts, &[t.clone(), s.clone()], &mut rng).unwrap();
        assert_eq!(chain.len(), 2);
        assert!(check_filtration(&alg, &ts, &chain, &[t.clone(), s.clone()], &mut rng));
        let single = stacked_filtration(&alg, &ts, &[ts.clone()], &mut rng).unwrap();
        assert_eq!(single.len(), 1);
        // a non-split extension has no submodule isomorphic to the split one
        let ext = alg.ext1(&t, &s).unwrap();
        let (e, _) = ext.extension(&s, &ext.cocycles[0]).unwrap();
        assert!(stacked_filtration(&alg, &e, &[ts.clone()], &mut rng).is_none());
        assert!(stacked_filtration(&alg, &e, &[t.clone(), s.clone()], &mut rng).is_some());
        let bogus = vec![Subspace::from_matrix(&Matrix::identity(f, 2))];
        assert!(!check_filtration(&alg, &e, &bogus, &[ts], &mut rng));
    }
}
