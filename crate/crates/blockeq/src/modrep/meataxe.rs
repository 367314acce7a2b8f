//! Splitting modules with random algebra elements (MeatAxe).
//!
//! A random element a of the image of the group algebra is formed and its
//! characteristic polynomial factored. For an irreducible factor p, a nonzero
//! vector of ker p(a) either spins to a proper submodule, or its transpose
//! counterpart does, or the module is irreducible (Norton) when
//! nullity p(a) = deg p.

use rand::Rng;

use super::module::{GModule, ModuleError, Result};
use crate::ffmat::{char_poly, factor, Matrix, Subspace};

/// Random element of the enveloping algebra of the generators.
pub(crate) fn random_algebra_element<R: Rng>(m: &GModule, rng: &mut R) -> Matrix {
    let f = m.field();
    let n = m.dim();
    let gens = m.gens();
    let mut acc = Matrix::zero(f, n, n);
    let terms = rng.gen_range(2..=4);
    for _ in 0..terms {
        let len = rng.gen_range(1..=5);
        let mut w = gens[rng.gen_range(0..gens.len())].clone();
        for _ in 1..len {
            w = w.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        let c = rng.gen_range(1..f.order()) as u8;
        acc.add_assign_scaled(&w, c);
    }
    if rng.gen_bool(0.5) {
        let c = rng.gen_range(0..f.order()) as u8;
        for i in 0..n {
            acc.set(i, i, f.add(acc.get(i, i), c));
        }
    }
    acc
}

pub enum SplitResult {
    Irreducible,
    Proper(Subspace),
}

/// Finds a proper nonzero submodule or certifies irreducibility.
pub fn split<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<SplitResult> {
    let n = m.dim();
    if n == 0 {
        return Err(ModuleError::Other("zero module has no composition factors".into()));
    }
    if n == 1 {
        return Ok(SplitResult::Irreducible);
    }
    let transposed: Vec<Matrix> = m.gens().iter().map(|g| g.transpose()).collect();
    for _ in 0..budget {
        let a = random_algebra_element(m, rng);
        let cp = char_poly(&a);
        let mut factors = factor(&cp);
        // low degree and low multiplicity first: cheapest and most likely to certify
        factors.sort_by_key(|(p, e)| (p.degree() * e, p.degree()));
        for (p, _) in factors.into_iter().take(3) {
            let pa = p.eval_matrix(&a);
            let ker = pa.left_nullspace();
            if ker.nrows() == 0 {
                continue;
            }
            let v = ker.row(0).to_vec();
            let s = m.spin(&[v]);
            if s.dim() < n {
                return Ok(SplitResult::Proper(s));
            }
            let kt = pa.nullspace();
            let mut w = Subspace::new(m.field(), n);
            w.spin_in(&[kt.row(0).to_vec()], &transposed);
            if w.dim() < n {
                let ann = w.basis().nullspace();
                return Ok(SplitResult::Proper(Subspace::from_matrix(&ann)));
            }
            if ker.nrows() == p.degree() {
                return Ok(SplitResult::Irreducible);
            }
        }
    }
    Err(ModuleError::Budget(budget, "MeatAxe split"))
}

pub fn is_irreducible<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<bool> {
    Ok(matches!(split(m, rng, budget)?, SplitResult::Irreducible))
}

/// Composition factors with repetition, in bottom-to-top order of some series.
pub fn composition_factors<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<Vec<GModule>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split(&x, rng, budget)? {
            SplitResult::Irreducible => out.push(x),
            SplitResult::Proper(s) => {
                // quotient is processed after the submodule
                stack.push(x.quotient(&s));
                stack.push(x.submodule(&s));
            }
        }
    }
    Ok(out)
}

/// A simple submodule of M, found by repeatedly splitting.
pub fn simple_submodule<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<Subspace> {
    let f = m.field();
    // basis of the current submodule in ambient coordinates
    let mut basis = Matrix::identity(f, m.dim());
    let mut cur = m.clone();
    loop {
        match split(&cur, rng, budget)? {
            SplitResult::Irreducible => return Ok(Subspace::from_matrix(&basis)),
            SplitResult::Proper(s) => {
                basis = s.basis().mul(&basis);
                cur = cur.submodule(&s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;
    use crate::groups::FinGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn a5() -> Arc<FinGroup> {
        Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap())
    }

    #[test]
    fn permutation_module_char5() {
        // In characteristic 5 the natural module of A5 is uniserial 1/3/1.
        let f = Field::get(5).unwrap();
        let p = GModule::natural_permutation(a5(), f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut dims: Vec<usize> = composition_factors(&p, &mut rng, 50).unwrap().iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 3]);
    }

    #[test]
    fn permutation_module_char3() {
        // p does not divide 5: 1 + 4 with the 4 irreducible.
        let f = Field::get(3).unwrap();
        let p = GModule::natural_permutation(a5(), f);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut dims: Vec<usize> = composition_factors(&p, &mut rng, 50).unwrap().iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
        let s = simple_submodule(&p, &mut rng, 50).unwrap();
        assert!(p.is_submodule(&s));
    }
}
