//! Krull–Schmidt decomposition by Fitting splits of random endomorphisms.

use rand::Rng;

use crate::ffmat::{char_poly, factor, Matrix, Subspace};
use crate::modrep::{hom_space, random_combination, GModule, ModuleError, Result};

/// One summand of a decomposition, with incl·proj = id on the summand.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GModule,
    /// dim summand × dim M
    pub incl: Matrix,
    /// dim M × dim summand
    pub proj: Matrix,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub original: GModule,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }
}

/// Number of random endomorphisms tried, beyond a basis sweep, before
/// declaring End(M) local.
const LOCAL_TRIALS: usize = 24;

/// Splits M = ker ψ^n ⊕ im ψ^n for ψ = p(φ) where p is one of at least two
/// distinct irreducible factors of the characteristic polynomial of φ.
fn fitting_split_with(m: &GModule, phi: &Matrix) -> Option<(Subspace, Subspace)> {
    let fac = factor(&char_poly(phi));
    if fac.len() < 2 {
        return None;
    }
    let psi = fac[0].0.eval_matrix(phi).pow(m.dim() as u64);
    let a = GModule::kernel_of(&psi);
    let b = GModule::image_of(&psi);
    debug_assert_eq!(a.dim() + b.dim(), m.dim());
    Some((a, b))
}

/// A Fitting split of M, or None when End(M) looks local.
pub fn fitting_split<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<Option<(Subspace, Subspace)>> {
    let n = m.dim();
    if n <= 1 {
        return Ok(None);
    }
    let end = hom_space(m, m);
    if end.len() <= 1 {
        return Ok(None);
    }
    for phi in &end {
        if let Some(s) = fitting_split_with(m, phi) {
            return Ok(Some(s));
        }
    }
    let trials = LOCAL_TRIALS.max(budget.min(4 * LOCAL_TRIALS));
    for _ in 0..trials {
        let phi = random_combination(&end, n, n, rng);
        if let Some(s) = fitting_split_with(m, &phi) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn is_indecomposable<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<bool> {
    if m.dim() == 0 {
        return Err(ModuleError::Other("zero module".into()));
    }
    Ok(fitting_split(m, rng, budget)?.is_none())
}

/// Complete decomposition into indecomposable summands, largest first.
pub fn indecomposable_summands<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<Decomposition> {
    let mut summands = Vec::new();
    let f = m.field();
    let id = Matrix::identity(f, m.dim());
    let mut work = vec![(m.clone(), id.clone(), id)];
    while let Some((x, incl, proj)) = work.pop() {
        if x.dim() == 0 {
            continue;
        }
        match fitting_split(&x, rng, budget)? {
            None => summands.push(Summand { module: x, incl, proj }),
            Some((a, b)) => {
                let (ba, bb) = (a.basis(), b.basis());
                let c = Matrix::vstack(f, x.dim(), &[&ba, &bb]);
                let cinv = c.inverse().expect("Fitting split is a direct sum");
                let pa = cinv.select_cols(&(0..a.dim()).collect::<Vec<_>>());
                let pb = cinv.select_cols(&(a.dim()..x.dim()).collect::<Vec<_>>());
                work.push((x.submodule(&b), bb.mul(&incl), proj.mul(&pb)));
                work.push((x.submodule(&a), ba.mul(&incl), proj.mul(&pa)));
            }
        }
    }
    summands.sort_by_key(|s| std::cmp::Reverse(s.module.dim()));
    Ok(Decomposition { original: m.clone(), summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;
    use crate::groups::FinGroup;
    use crate::modrep::intertwines;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn a5() -> Arc<FinGroup> {
        Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap())
    }

    #[test]
    fn decomposes_direct_sum_and_checks_maps() {
        let f = Field::get(5).unwrap();
        let g = a5();
        let t = GModule::trivial(g.clone(), f);
        let p = GModule::natural_permutation(g.clone(), f);
        // in char 5 the natural module is uniserial, hence indecomposable
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(is_indecomposable(&p, &mut rng, 50).unwrap());
        let sum = GModule::direct_sum(&[&p, &t, &p]).unwrap();
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        let b = loop {
            let b = Matrix::random(f, 11, 11, &mut rng2);
            if b.is_invertible() {
                break b;
            }
        };
        let mixed = sum.conjugate_basis(&b);
        let d = indecomposable_summands(&mixed, &mut rng, 50).unwrap();
        assert_eq!(d.dims(), vec![5, 5, 1]);
        for (i, s) in d.summands.iter().enumerate() {
            assert!(intertwines(&s.module, &mixed, &s.incl));
            assert!(intertwines(&mixed, &s.module, &s.proj));
            for (j, t) in d.summands.iter().enumerate() {
                let c = s.incl.mul(&t.proj);
                if i == j {
                    assert!(c.is_identity());
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }
}
