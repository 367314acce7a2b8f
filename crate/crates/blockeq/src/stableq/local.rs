use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::setup::StableSetup;
use super::tree::BrauerTree;
use super::{Result, StableError};
use crate::decomp::{indecomposable_summands, is_projective, stable_hom_dim};
use crate::ffmat::Matrix;
use crate::groups::FinGroup;
use crate::modrep::{hom_space, Algebra, GModule};

/// Outer tensor W ⊠ V over C̄_H(Q) × C̄_G(Q)^opp: W's generators come first.
pub fn outer_tensor(product: Arc<FinGroup>, w: &GModule, v: &GModule) -> Result<GModule> {
    let f = w.field();
    let (iw, iv) = (Matrix::identity(f, w.dim()), Matrix::identity(f, v.dim()));
    let mut gens = Vec::with_capacity(product.ngens());
    for g in w.gens() {
        gens.push(g.kronecker(&iv).expect("square factors"));
    }
    for g in v.gens() {
        gens.push(iw.kronecker(g).expect("square factors"));
    }
    Ok(GModule::new(product, f, gens)?)
}

/// Simple heads (w, v, multiplicity) of an N_Δ-module restricted to C̄_H(Q) × C̄_G(Q)^opp.
pub fn head_pairs(
    setup: &StableSetup,
    alg_ch: &Algebra,
    alg_cg: &Algebra,
    m: &GModule,
) -> Result<Vec<(usize, usize, usize)>> {
    let mp = m.restrict(setup.product.clone())?;
    let mut out = Vec::new();
    for (w, sw) in alg_ch.simples().iter().enumerate() {
        for (v, sv) in alg_cg.simples().iter().enumerate() {
            let n = hom_space(&mp, &outer_tensor(setup.product.clone(), sw, sv)?).len();
            if n > 0 {
                out.push((w, v, n));
            }
        }
    }
    Ok(out)
}

fn in_principal(alg: &Algebra, m: &GModule) -> bool {
    let b = &alg.blocks().blocks[alg.blocks().principal];
    alg.multiplicities(m).iter().enumerate().all(|(i, &c)| c == 0 || b.contains(&i))
}

/// The summands of k C̄_G(Q) over N_Δ, sorted into M_Q, the projective part P and the rest.
#[derive(Clone, Debug)]
pub struct MqSplit {
    pub m_q: GModule,
    pub p: GModule,
    /// (dimension, principal, projective) for every indecomposable summand, largest first.
    pub summands: Vec<(usize, bool, bool)>,
}

pub fn extract_mq<R: Rng>(setup: &StableSetup, alg_ch: &Algebra, alg_cg: &Algebra, rng: &mut R) -> Result<MqSplit> {
    let l = setup.field.characteristic();
    let sylow = setup.product.sylow(l)?;
    let dec = indecomposable_summands(&setup.v, rng, alg_cg.budget())?;
    let mut summands = Vec::new();
    let mut mq = Vec::new();
    let mut proj = Vec::new();
    for s in &dec.summands {
        let x = &s.module;
        let principal = in_principal(alg_ch, &setup.left_part(x)?) && in_principal(alg_cg, &setup.right_part(x)?);
        let projective = is_projective(&x.restrict(setup.product.clone())?, &sylow)?;
        summands.push((x.dim(), principal, projective));
        match (principal, projective) {
            (true, false) => mq.push(x.clone()),
            (true, true) => proj.push(x.clone()),
            _ => {}
        }
    }
    let m_q = match mq.len() {
        0 => return Err(StableError::NoMq),
        1 => mq.pop().unwrap(),
        n => return Err(StableError::AmbiguousMq(n, mq.iter().map(|m| m.dim()).collect())),
    };
    let p = if proj.is_empty() {
        GModule::zero(setup.n_delta.clone(), setup.field)
    } else {
        GModule::direct_sum(&proj.iter().collect::<Vec<_>>())?
    };
    Ok(MqSplit { m_q, p, summands })
}

/// γ on the principal block of C̄_G(Q): pairs (V, γ(V)) of simple indices, where
/// γ(V) is the only simple of B₀(C̄_H(Q)) receiving a nonzero stable map from Res V.
pub fn gamma_map(setup: &StableSetup, alg_ch: &Algebra, alg_cg: &Algebra) -> Result<Vec<(usize, usize)>> {
    let bg = &alg_cg.blocks().blocks[alg_cg.blocks().principal];
    let bh = &alg_ch.blocks().blocks[alg_ch.blocks().principal];
    let mut out = Vec::new();
    for &v in bg {
        let res = setup.restrict_cg_to_ch(alg_cg.simple(v))?;
        let mut hits = Vec::new();
        for &w in bh {
            if stable_hom_dim(alg_ch, &res, alg_ch.simple(w))? > 0 {
                hits.push(w);
            }
        }
        if hits.len() != 1 {
            return Err(StableError::GammaNotUnique { label: alg_cg.label(v).to_string(), count: hits.len() });
        }
        out.push((v, hits[0]));
    }
    Ok(out)
}

/// U_Q and T_Q = U_Q ⊕ P, with the data used to choose them.
#[derive(Clone, Debug)]
pub struct TqBuild {
    pub u_q: GModule,
    pub t_q: GModule,
    pub p_adjoined: bool,
    /// Head pairs (γ(V), V*) expected on the projective cover of M_Q, one per V in B₀.
    pub expected_cover_heads: BTreeSet<(usize, usize)>,
    /// Head pairs found on the projective cover of M_Q restricted to C̄_H(Q) × C̄_G(Q)^opp.
    pub cover_heads: BTreeSet<(usize, usize)>,
    /// Every N_Δ-PIM whose restricted head lies over E; U_Q is built from those covering M_Q.
    pub candidates: Vec<usize>,
}

/// `e` holds simple indices of C̄_G(Q); `gamma` is the output of [`gamma_map`].
pub fn build_tq(
    setup: &StableSetup,
    mq: &MqSplit,
    e: &[usize],
    gamma: &[(usize, usize)],
    alg_ch: &Algebra,
    alg_cg: &Algebra,
    alg_nd: &Algebra,
) -> Result<TqBuild> {
    let dual_index = |v: usize| -> Result<usize> {
        alg_cg
            .identify_simple(&alg_cg.simple(v).dual())
            .ok_or_else(|| StableError::Tree(format!("dual of {} is not a listed simple", alg_cg.label(v))))
    };
    let mut expected_cover_heads = BTreeSet::new();
    for &(v, w) in gamma {
        expected_cover_heads.insert((w, dual_index(v)?));
    }
    let target: BTreeSet<usize> = e.iter().map(|&v| dual_index(v)).collect::<Result<_>>()?;
    let label_pairs = |heads: &[(usize, usize, usize)]| -> Vec<(String, String)> {
        heads.iter().map(|&(w, v, _)| (alg_ch.label(w).to_string(), alg_cg.label(v).to_string())).collect()
    };
    // None: heads avoid E entirely; Some(true): heads lie over E
    let over_e = |i: usize| -> Result<Option<bool>> {
        let heads = head_pairs(setup, alg_ch, alg_cg, alg_nd.pim(i))?;
        let inside = heads.iter().filter(|h| target.contains(&h.1)).count();
        match inside {
            0 => Ok(None),
            n if n == heads.len() => Ok(Some(true)),
            _ => Err(StableError::MixedHead(label_pairs(&heads))),
        }
    };

    let (cover, which) = alg_nd.projective_cover(&mq.m_q)?;
    let cover_heads = head_pairs(setup, alg_ch, alg_cg, &cover.source)?.into_iter().map(|(w, v, _)| (w, v)).collect();
    let mut parts = Vec::new();
    for &i in &which {
        if over_e(i)?.is_some() {
            parts.push(alg_nd.pim(i));
        }
    }
    let mut candidates = Vec::new();
    for i in 0..alg_nd.num_simples() {
        if over_e(i)?.is_some() {
            candidates.push(i);
        }
    }
    let zero = GModule::zero(setup.n_delta.clone(), setup.field);
    let u_q = if parts.is_empty() { zero } else { GModule::direct_sum(&parts)? };
    let mut expected = 0;
    for &v in e {
        let w = gamma.iter().find(|g| g.0 == v).map(|g| g.1).ok_or_else(|| {
            StableError::Tree(format!("edge {} is not a simple of the principal block", alg_cg.label(v)))
        })?;
        expected += alg_ch.pim(w).dim() * alg_cg.pim(v).dim();
    }
    if u_q.dim() != expected {
        return Err(StableError::UqDimension { expected, got: u_q.dim() });
    }
    let p_adjoined = mq.p.dim() > 0;
    let t_q = if p_adjoined { GModule::direct_sum(&[&u_q, &mq.p])? } else { u_q.clone() };
    Ok(TqBuild { u_q, t_q, p_adjoined, expected_cover_heads, cover_heads, candidates })
}

/// Everything computed for one class of subgroups Q.
#[derive(Clone, Debug)]
pub struct LocalQData {
    pub label: String,
    pub tree: BrauerTree,
    pub e: Vec<String>,
    pub gamma: Vec<(String, String)>,
    pub mq_dims: Vec<usize>,
    pub tq: TqBuild,
}
