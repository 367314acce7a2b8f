//! Detecting and stripping projective summands.

use rand::Rng;

use super::summands::indecomposable_summands;
use crate::ffmat::{Matrix, Subspace};
use crate::groups::FinGroup;
use crate::modrep::{hom_space, Algebra, GModule, Result};

/// Sum of the matrices of all elements of a subgroup acting on M.
pub fn norm_matrix(m: &GModule, sub: &FinGroup) -> Result<Matrix> {
    let mut acc = Matrix::zero(m.field(), m.dim(), m.dim());
    for g in sub.elements()? {
        acc.add_assign_scaled(&m.element_matrix(g)?, 1);
    }
    Ok(acc)
}

/// M is projective iff its restriction to a Sylow ℓ-subgroup D is free,
/// iff the norm element of D acts with rank dim M / |D|.
pub fn is_projective(m: &GModule, sylow: &FinGroup) -> Result<bool> {
    let d = sylow.order()?;
    if m.dim() % d != 0 {
        return Ok(false);
    }
    Ok(norm_matrix(m, sylow)?.rank() == m.dim() / d)
}

/// Multiplicity of P(S_i) as a summand of M, and M with those summands removed.
///
/// Maps P(S) → M that are nonzero on soc P(S) ≅ S are injective and split, so
/// the span of images of the socle has dimension (multiplicity)·dim S.
pub fn count_proj(alg: &Algebra, m: &GModule, i: usize) -> Result<(GModule, usize)> {
    let p = alg.pim(i);
    let soc = alg.socle(p);
    let mut images = Subspace::new(m.field(), m.dim());
    let mut chosen: Vec<Matrix> = Vec::new();
    for f in alg.pim_homs(i, m) {
        let img = soc.basis().mul(&f);
        let before = images.dim();
        for r in img.rows() {
            images.insert(r);
        }
        if images.dim() > before {
            chosen.push(f);
        }
    }
    if chosen.is_empty() {
        return Ok((m.clone(), 0));
    }
    let sum = Subspace::from_matrix(&Matrix::vstack(m.field(), m.dim(), &chosen.iter().collect::<Vec<_>>()));
    debug_assert_eq!(sum.dim(), chosen.len() * p.dim());
    Ok((m.quotient(&sum), chosen.len()))
}

/// Per-PIM multiplicities and the projective-free residual.
#[derive(Clone, Debug)]
pub struct ProjectiveProfile {
    pub multiplicities: Vec<usize>,
    pub residual: GModule,
}

pub fn split_l(alg: &Algebra, m: &GModule) -> Result<ProjectiveProfile> {
    let mut residual = m.clone();
    let mut multiplicities = vec![0; alg.num_simples()];
    for (i, mult) in multiplicities.iter_mut().enumerate() {
        if residual.dim() < alg.pim(i).dim() {
            continue;
        }
        let (r, c) = count_proj(alg, &residual, i)?;
        residual = r;
        *mult = c;
    }
    Ok(ProjectiveProfile { multiplicities, residual })
}

pub fn remove_all_proj(alg: &Algebra, m: &GModule) -> Result<GModule> {
    Ok(split_l(alg, m)?.residual)
}

/// Strips free summands kG by spinning random vectors; a free submodule is a summand.
/// May miss free summands when `tries` is small.
pub fn rem_free<R: Rng>(m: &GModule, tries: usize, rng: &mut R) -> Result<GModule> {
    let order = m.group().order()?;
    let mut cur = m.clone();
    let q = m.field().order();
    let mut left = tries;
    while cur.dim() >= order && left > 0 {
        left -= 1;
        let v: Vec<u8> = (0..cur.dim()).map(|_| rng.gen_range(0..q) as u8).collect();
        let s = cur.spin(&[v]);
        if s.dim() == order {
            cur = cur.quotient(&s);
            left = tries;
        }
    }
    Ok(cur)
}

pub fn non_projective_part(alg: &Algebra, m: &GModule) -> Result<GModule> {
    remove_all_proj(alg, m)
}

pub fn stably_isomorphic<R: Rng>(alg: &Algebra, a: &GModule, b: &GModule, rng: &mut R) -> Result<bool> {
    let (x, y) = (non_projective_part(alg, a)?, non_projective_part(alg, b)?);
    Ok(alg.isomorphism(&x, &y, rng).is_some())
}

/// Dimension of the stable Hom space: homomorphisms M → N modulo those
/// factoring through a projective, all of which factor through P(N) → N.
pub fn stable_hom_dim(alg: &Algebra, m: &GModule, n: &GModule) -> Result<usize> {
    let all = hom_space(m, n).len();
    if all == 0 {
        return Ok(0);
    }
    let (cover, _) = alg.projective_cover(n)?;
    let mut through = Subspace::new(m.field(), m.dim() * n.dim());
    for f in hom_space(m, &cover.source) {
        through.insert(f.mul(&cover.matrix).data());
    }
    Ok(all - through.dim())
}

/// Non-projective indecomposable summands, largest first.
pub fn non_projective_summands<R: Rng>(alg: &Algebra, m: &GModule, rng: &mut R) -> Result<Vec<GModule>> {
    let r = non_projective_part(alg, m)?;
    if r.dim() == 0 {
        return Ok(vec![]);
    }
    Ok(indecomposable_summands(&r, rng, alg.budget())?.summands.into_iter().map(|s| s.module).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn regular_module_profile_is_simple_dims() {
        let f = Field::get(5).unwrap();
        let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap());
        let alg = Algebra::compute(g.clone(), f, 5, 100).unwrap();
        let reg = GModule::regular(g.clone(), f).unwrap();
        let prof = split_l(&alg, &reg).unwrap();
        assert_eq!(prof.residual.dim(), 0);
        let dims: Vec<usize> = alg.simples().iter().map(|s| s.dim()).collect();
        assert_eq!(prof.multiplicities, dims);
        let sylow = g.sylow(5).unwrap();
        assert!(is_projective(&reg, &sylow).unwrap());
        assert!(is_projective(alg.simple(2), &sylow).unwrap());
        assert!(!is_projective(alg.simple(1), &sylow).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = alg.simple(0).clone();
        let tp = GModule::direct_sum(&[&t, alg.pim(1), alg.pim(0)]).unwrap();
        assert!(stably_isomorphic(&alg, &t, &tp, &mut rng).unwrap());
        assert!(!stably_isomorphic(&alg, &t, alg.simple(1), &mut rng).unwrap());
        let s = alg.simple(1).clone();
        assert_eq!(rem_free(&s, 5, &mut rng).unwrap().dim(), 3);
        let sr = GModule::direct_sum(&[&s, &reg]).unwrap();
        assert_eq!(rem_free(&sr, 20, &mut rng).unwrap().dim(), 3);
    }
}
