use std::collections::HashMap;
use std::sync::Arc;

use super::{Result, StableError};
use crate::ffmat::Field;
use crate::groups::{FinGroup, Perm};
use crate::modrep::GModule;

/// Right cosets Qy of Q in a group containing Q.
struct Cosets {
    index: HashMap<Perm, usize>,
    reps: Vec<Perm>,
}

impl Cosets {
    fn new(group: &FinGroup, q: &[Perm]) -> Result<Cosets> {
        let mut index = HashMap::new();
        let mut reps = Vec::new();
        for y in group.elements()? {
            if index.contains_key(y) {
                continue;
            }
            for z in q {
                index.insert(z.mul(y), reps.len());
            }
            reps.push(y.clone());
        }
        Ok(Cosets { index, reps })
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// Images of the cosets under Qy ↦ Q a⁻¹ y b.
    fn images(&self, a: &Perm, b: &Perm) -> Vec<usize> {
        let ai = a.inverse();
        self.reps.iter().map(|y| self.index[&ai.mul(y).mul(b)]).collect()
    }
}

/// N_Δ as a permutation group on three orbits: cosets of Q in N_H(Q) (left
/// factor, faithful on N̄_H(Q)), in N_G(Q) (right factor, faithful on
/// N̄_G(Q)), and in C_G(Q), where the bimodule k C̄_G(Q) lives. A pair (a, b)
/// acts on the last orbit by Qx ↦ Q a⁻¹ x b.
///
/// Generator order of N_Δ: two for C̄_H(Q) on the left, two for C̄_G(Q) on the
/// right, two for the diagonal N̄_H(Q). The subgroups `ch`, `cg`, `nh` of N_G(Q)
/// carry the same generator order, so modules transport by position.
#[derive(Clone, Debug)]
pub struct StableSetup {
    pub field: &'static Field,
    pub ng: Arc<FinGroup>,
    pub q: Arc<FinGroup>,
    /// C_H(Q), C_G(Q), N_H(Q) inside N_G(Q), each on two generators.
    pub ch: Arc<FinGroup>,
    pub cg: Arc<FinGroup>,
    pub nh: Arc<FinGroup>,
    pub n_delta: Arc<FinGroup>,
    /// C̄_H(Q) acting on the left, the copy used for its group algebra.
    pub bar_ch: Arc<FinGroup>,
    /// C̄_G(Q)^opp acting on the right, the copy used for its group algebra.
    pub bar_cg: Arc<FinGroup>,
    /// C̄_H(Q) × C̄_G(Q)^opp, generated by the first four generators.
    pub product: Arc<FinGroup>,
    /// Diagonal N̄_H(Q).
    pub diag: Arc<FinGroup>,
    /// Images in `bar_cg` of the generators of `bar_ch`: the inclusion C̄_H(Q) ⊆ C̄_G(Q).
    pub ch_in_cg: Vec<Perm>,
    /// k C̄_G(Q) as an N_Δ-module.
    pub v: GModule,
}

impl StableSetup {
    /// `ng` = N_G(Q) and `nh` = N_H(Q) ⊆ ng, both normalising Q.
    pub fn new(
        ng: Arc<FinGroup>,
        nh: &FinGroup,
        q: Arc<FinGroup>,
        field: &'static Field,
        seed: u64,
        budget: usize,
    ) -> Result<StableSetup> {
        if !nh.is_subgroup_of(&ng)? {
            return Err(StableError::NotSubgroup("N_H(Q)", "N_G(Q)"));
        }
        if !q.is_subgroup_of(nh)? {
            return Err(StableError::NotSubgroup("Q", "N_H(Q)"));
        }
        if !q.is_normal_in(&ng)? {
            return Err(StableError::NotNormal("N_G(Q)"));
        }
        let cg_full = ng.centralizer(&q)?;
        let ch_full = nh.centralizer(&q)?;
        let cg = Arc::new(cg_full.gen_two_el(seed, budget)?);
        let ch = Arc::new(ch_full.gen_two_el(seed ^ 1, budget)?);
        let nh = Arc::new(nh.gen_two_el(seed ^ 2, budget)?);

        let q_elems = q.elements()?.to_vec();
        let blocks = [Cosets::new(&nh, &q_elems)?, Cosets::new(&ng, &q_elems)?, Cosets::new(&cg, &q_elems)?];
        let offsets = [0, blocks[0].len(), blocks[0].len() + blocks[1].len()];
        let degree = offsets[2] + blocks[2].len();
        let id = ng.identity();
        let pair = |a: &Perm, b: &Perm| -> Perm {
            let mut img = Vec::with_capacity(degree);
            img.extend(blocks[0].images(a, &id));
            img.extend(blocks[1].images(&id, b).into_iter().map(|i| i + offsets[1]));
            img.extend(blocks[2].images(a, b).into_iter().map(|i| i + offsets[2]));
            Perm::from_images(img)
        };
        let left: Vec<Perm> = ch.generators().iter().map(|a| pair(a, &id)).collect();
        let right: Vec<Perm> = cg.generators().iter().map(|b| pair(&id, b)).collect();
        let diag: Vec<Perm> = nh.generators().iter().map(|n| pair(n, n)).collect();
        let ch_in_cg: Vec<Perm> = ch.generators().iter().map(|a| pair(&id, a)).collect();

        let all: Vec<Perm> = left.iter().chain(&right).chain(&diag).cloned().collect();
        let n_delta = Arc::new(FinGroup::new(degree, all.clone()));
        let bar_ch = Arc::new(n_delta.subgroup(left.clone()));
        let bar_cg = Arc::new(n_delta.subgroup(right.clone()));
        let product = Arc::new(n_delta.subgroup(left.iter().chain(&right).cloned().collect()));
        let diag = Arc::new(n_delta.subgroup(diag));
        let on_cosets: Vec<Perm> = all.iter().map(|p| p.restrict(offsets[2], blocks[2].len())).collect();
        let v = GModule::permutation(n_delta.clone(), field, &on_cosets)?;
        Ok(StableSetup { field, ng, q, ch, cg, nh, n_delta, bar_ch, bar_cg, product, diag, ch_in_cg, v })
    }

    /// |C_G(Q) : Q|.
    pub fn bar_cg_order(&self) -> usize {
        self.v.dim()
    }

    /// Restriction of an N_Δ-module to the left factor C̄_H(Q).
    pub fn left_part(&self, m: &GModule) -> Result<GModule> {
        Ok(m.restrict(self.bar_ch.clone())?)
    }

    /// Restriction of an N_Δ-module to the right factor C̄_G(Q)^opp.
    pub fn right_part(&self, m: &GModule) -> Result<GModule> {
        Ok(m.restrict(self.bar_cg.clone())?)
    }

    /// Restriction of an N_Δ-module to the diagonal N̄_H(Q), rebased onto N_H(Q).
    pub fn diag_part(&self, m: &GModule) -> Result<GModule> {
        Ok(GModule::new(self.nh.clone(), self.field, m.restrict(self.diag.clone())?.gens().to_vec())?)
    }

    /// Restriction of a C̄_G(Q)-module (over `bar_cg`) to C̄_H(Q) (over `bar_ch`).
    pub fn restrict_cg_to_ch(&self, m: &GModule) -> Result<GModule> {
        Ok(m.inflate_along(self.bar_ch.clone(), &self.ch_in_cg)?)
    }
}
