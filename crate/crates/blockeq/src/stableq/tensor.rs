use std::sync::Arc;

use rand::Rng;

use super::setup::StableSetup;
use super::{Result, StableError};
use crate::decomp::{indecomposable_summands, is_projective, split_l, Decomposition};
use crate::ffmat::{Matrix, Subspace};
use crate::groups::FinGroup;
use crate::modrep::{Algebra, GModule};

/// Basis change to a decomposition-adapted basis, and the block offsets.
struct Adapted {
    to: Matrix,
    from: Matrix,
    blocks: Vec<(usize, Vec<Matrix>)>,
}

impl Adapted {
    fn new(d: &Decomposition) -> Adapted {
        let f = d.original.field();
        let n = d.original.dim();
        let to = Matrix::vstack(f, n, &d.summands.iter().map(|s| &s.incl).collect::<Vec<_>>());
        let from = to.inverse().expect("summands span the module");
        let mut off = 0;
        let mut blocks = Vec::new();
        for s in &d.summands {
            blocks.push((off, s.module.gens().to_vec()));
            off += s.module.dim();
        }
        Adapted { to, from, blocks }
    }

    fn conj(&self, g: &Matrix) -> Matrix {
        self.to.mul(g).mul(&self.from)
    }
}

/// Non-projective summands of M, as a direct sum (zero if none).
fn strip_projective<R: Rng>(m: &GModule, sylow: &FinGroup, rng: &mut R, budget: usize) -> Result<GModule> {
    if m.dim() == 0 {
        return Ok(m.clone());
    }
    let mut keep = Vec::new();
    for s in indecomposable_summands(m, rng, budget)?.summands {
        if !is_projective(&s.module, sylow)? {
            keep.push(s.module);
        }
    }
    if keep.is_empty() {
        return Ok(GModule::zero(m.group().clone(), m.field()));
    }
    Ok(GModule::direct_sum(&keep.iter().collect::<Vec<_>>())?)
}

/// T ⊗_{k C_G(Q)} S' restricted to the diagonal N_H(Q), with projective summands removed.
///
/// T is an N_Δ-module, S' an N_G(Q)-module. The relations t·c ⊗ s·c − t ⊗ s run
/// over generators c of C_G(Q), Q included; Q acts trivially on T, so this is the
/// tensor product over k C̄_G(Q) with the Q-coinvariants of S'. Both factors are
/// put in bases adapted to their C_G(Q)-decompositions so the relations are
/// generated one block pair at a time.
pub fn stable_tensor<R: Rng>(
    setup: &StableSetup,
    t: &GModule,
    s: &GModule,
    rng: &mut R,
    budget: usize,
) -> Result<GModule> {
    let f = setup.field;
    let nh = setup.nh.clone();
    if t.dim() == 0 || s.dim() == 0 {
        return Ok(GModule::zero(nh, f));
    }
    let t_c = GModule::new(setup.cg.clone(), f, setup.right_part(t)?.gens().to_vec())?;
    let s_c = s.restrict(setup.cg.clone())?;
    let at = Adapted::new(&indecomposable_summands(&t_c, rng, budget)?);
    let as_ = Adapted::new(&indecomposable_summands(&s_c, rng, budget)?);
    let (dt, ds) = (t.dim(), s.dim());

    let mut rel = Subspace::new(f, dt * ds);
    let mut row = vec![0u8; dt * ds];
    for (ot, gt) in &at.blocks {
        for (os, gs) in &as_.blocks {
            let (p, r) = (gt[0].nrows(), gs[0].nrows());
            let mut local = Subspace::new(f, p * r);
            let id = Matrix::identity(f, p * r);
            for (x, y) in gt.iter().zip(gs) {
                let k = x.kronecker(y).expect("square blocks").sub(&id);
                for v in k.rows() {
                    local.insert(v);
                }
            }
            for i in 0..local.dim() {
                row.iter_mut().for_each(|x| *x = 0);
                for (j, &c) in local.row(i).iter().enumerate() {
                    row[(ot + j / r) * ds + os + j % r] = c;
                }
                rel.insert(&row);
            }
        }
    }

    let t_d = setup.diag_part(t)?;
    let s_d = s.restrict(nh.clone())?;
    let gens: Vec<Matrix> = t_d
        .gens()
        .iter()
        .zip(s_d.gens())
        .map(|(x, y)| at.conj(x).kronecker(&as_.conj(y)).expect("square factors"))
        .collect();
    let big = GModule::new(nh.clone(), f, gens)?;
    if !big.is_submodule(&rel) {
        return Err(StableError::RelationsNotInvariant);
    }
    let sylow = nh.sylow(f.characteristic())?;
    strip_projective(&big.quotient(&rel), &sylow, rng, budget)
}

/// Image of S over N_G(Q): projective summands split off first, the residual
/// tensored, and optionally each PIM's tensor added with its multiplicity.
pub fn final_stab_eq<R: Rng>(
    setup: &StableSetup,
    t: &GModule,
    s: &GModule,
    alg_ng: &Algebra,
    include_projectives: bool,
    rng: &mut R,
) -> Result<GModule> {
    let budget = alg_ng.budget();
    let profile = split_l(alg_ng, s)?;
    let mut parts = vec![stable_tensor(setup, t, &profile.residual, rng, budget)?];
    if include_projectives {
        for (i, &m) in profile.multiplicities.iter().enumerate() {
            if m > 0 {
                let x = stable_tensor(setup, t, alg_ng.pim(i), rng, budget)?;
                parts.extend(std::iter::repeat(x).take(m));
            }
        }
    }
    let parts: Vec<&GModule> = parts.iter().filter(|p| p.dim() > 0).collect();
    if parts.is_empty() {
        return Ok(GModule::zero(setup.nh.clone(), setup.field));
    }
    Ok(GModule::direct_sum(&parts)?)
}

/// Summands of M whose composition factors all lie in the principal block of `alg`.
pub fn principal_cut<R: Rng>(alg: &Algebra, m: &GModule, rng: &mut R) -> Result<GModule> {
    if m.dim() == 0 {
        return Ok(m.clone());
    }
    let b = &alg.blocks().blocks[alg.blocks().principal];
    let keep: Vec<GModule> = indecomposable_summands(m, rng, alg.budget())?
        .summands
        .into_iter()
        .map(|s| s.module)
        .filter(|x| alg.multiplicities(x).iter().enumerate().all(|(i, &c)| c == 0 || b.contains(&i)))
        .collect();
    if keep.is_empty() {
        return Ok(GModule::zero(m.group().clone(), m.field()));
    }
    Ok(GModule::direct_sum(&keep.iter().collect::<Vec<_>>())?)
}

/// The two-term stable image of a global simple: degree −1 and degree 0.
#[derive(Clone, Debug)]
pub struct StableImage {
    pub minus_one: GModule,
    pub zero: GModule,
}

/// Degree −1: the induced per-class tensors, cut to the principal block of H.
/// Degree 0: the Green correspondent, supplied by the caller.
pub fn stable_image<R: Rng>(
    alg_h: &Algebra,
    per_class: &[GModule],
    green: GModule,
    rng: &mut R,
) -> Result<StableImage> {
    let h: Arc<FinGroup> = alg_h.group().clone();
    let induced: Vec<GModule> =
        per_class.iter().filter(|m| m.dim() > 0).map(|m| m.induce(h.clone())).collect::<std::result::Result<_, _>>()?;
    let sum = if induced.is_empty() {
        GModule::zero(h, alg_h.field())
    } else {
        GModule::direct_sum(&induced.iter().collect::<Vec<_>>())?
    };
    Ok(StableImage { minus_one: principal_cut(alg_h, &sum, rng)?, zero: green })
}
