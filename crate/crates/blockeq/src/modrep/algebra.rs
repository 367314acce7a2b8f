//! Simple modules, projective indecomposables and blocks of a group algebra,
//! and the layer computations (socle, radical, X-radicals) built on them.
//!
//! Projectives are produced without chopping the regular module: for an
//! ℓ'-subgroup K every kK-module is projective, so Ind_K^G W is projective
//! for each simple W of K, and these inductions cover all of kG.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_space, hom_space_seeded, iso_from_basis};
use super::meataxe::composition_factors;
use super::module::{GModule, ModuleError, ModuleMap, Result};
use crate::decomp::indecomposable_summands;
use crate::ffmat::{Field, Matrix, Subspace};
use crate::groups::{FinGroup, Perm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// Simple indices per block, each sorted; blocks ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
    pub principal: usize,
}

impl BlockPartition {
    pub fn block_of(&self, simple: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&simple)).expect("every simple lies in a block")
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    group: Arc<FinGroup>,
    field: &'static Field,
    simples: Vec<GModule>,
    labels: Vec<String>,
    pims: Vec<GModule>,
    /// A vector generating the corresponding PIM.
    pim_gens: Vec<Vec<u8>>,
    blocks: BlockPartition,
    budget: usize,
}

/// A large subgroup of order prime to ℓ, built greedily from elements of large order.
pub fn ell_prime_subgroup(group: &FinGroup, l: usize) -> Result<FinGroup> {
    let order = group.order()?;
    let mut bound = order;
    while bound % l == 0 {
        bound /= l;
    }
    let mut cands: Vec<&Perm> = group.elements()?.iter().filter(|g| !g.is_identity() && g.order() % l != 0).collect();
    cands.sort_by_key(|g| std::cmp::Reverse(g.order()));
    let mut gens: Vec<Perm> = Vec::new();
    let mut members: HashSet<Perm> = HashSet::from([group.identity()]);
    for g in cands {
        if members.len() == bound {
            break;
        }
        if members.contains(g) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(g.clone());
        let sub = group.subgroup(trial.clone()).with_cap(bound);
        if let Ok(elems) = sub.elements() {
            if elems.len() % l != 0 {
                members = elems.iter().cloned().collect();
                gens = trial;
            }
        }
    }
    if gens.is_empty() {
        gens.push(group.identity());
    }
    Ok(group.subgroup(gens))
}

/// Removes isomorphic duplicates, keeping first occurrences.
fn distinct<R: Rng>(mods: Vec<GModule>, known: &mut Vec<GModule>, rng: &mut R) {
    for m in mods {
        let dup = known.iter().any(|k| k.dim() == m.dim() && iso_from_basis(&hom_space(k, &m), m.dim(), rng).is_some());
        if !dup {
            known.push(m);
        }
    }
}

/// A vector spinning to the whole module.
fn generator_of<R: Rng>(m: &GModule, rng: &mut R, budget: usize) -> Result<Vec<u8>> {
    let n = m.dim();
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        if m.spin(&[e.clone()]).dim() == n {
            return Ok(e);
        }
    }
    let q = m.field().order();
    for _ in 0..budget {
        let v: Vec<u8> = (0..n).map(|_| rng.gen_range(0..q) as u8).collect();
        if m.spin(&[v.clone()]).dim() == n {
            return Ok(v);
        }
    }
    Err(ModuleError::Budget(budget, "generator of a cyclic module"))
}

impl Algebra {
    /// Computes simples, PIMs and blocks of kG. The seed fixes every random choice.
    pub fn compute(group: Arc<FinGroup>, field: &'static Field, seed: u64, budget: usize) -> Result<Algebra> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = field.characteristic();
        let k = Arc::new(ell_prime_subgroup(&group, l)?);
        let reg_k = GModule::regular(k.clone(), field)?;
        let mut simples_k = Vec::new();
        distinct(composition_factors(&reg_k, &mut rng, budget)?, &mut simples_k, &mut rng);
        simples_k.sort_by_key(|s| s.dim());

        let projectives: Vec<GModule> = simples_k.iter().map(|w| w.induce(group.clone())).collect::<Result<_>>()?;
        let mut simples = Vec::new();
        for p in &projectives {
            distinct(composition_factors(p, &mut rng, budget)?, &mut simples, &mut rng);
        }
        let trivial = GModule::trivial(group.clone(), field);
        // trivial first, then by dimension; the sort is stable so discovery order breaks ties
        simples.sort_by_key(|s| (s.dim(), s.gens() != trivial.gens()));
        for s in &simples {
            let e = hom_space(s, s).len();
            if e != 1 {
                return Err(ModuleError::NotSplit(e));
            }
        }
        let labels = default_labels(&simples);

        let mut pims: Vec<Option<GModule>> = vec![None; simples.len()];
        for p in &projectives {
            if pims.iter().all(|x| x.is_some()) {
                break;
            }
            let heads: Vec<usize> =
                (0..simples.len()).filter(|&i| pims[i].is_none() && !hom_space(p, &simples[i]).is_empty()).collect();
            if heads.is_empty() {
                continue;
            }
            for s in indecomposable_summands(p, &mut rng, budget)?.summands {
                let x = s.module;
                if let Some(&i) = heads.iter().find(|&&i| pims[i].is_none() && !hom_space(&x, &simples[i]).is_empty()) {
                    pims[i] = Some(x);
                }
            }
        }
        let pims: Vec<GModule> = pims
            .into_iter()
            .map(|p| p.ok_or_else(|| ModuleError::Other("projective cover of a simple not found".into())))
            .collect::<Result<_>>()?;
        let pim_gens = pims.iter().map(|p| generator_of(p, &mut rng, budget)).collect::<Result<Vec<_>>>()?;

        let order = group.order()?;
        let total: usize = simples.iter().zip(&pims).map(|(s, p)| s.dim() * p.dim()).sum();
        if total != order {
            return Err(ModuleError::Other(format!("Σ dim S · dim P(S) = {total}, expected |G| = {order}")));
        }

        let mut alg = Algebra {
            group,
            field,
            simples,
            labels,
            pims,
            pim_gens,
            blocks: BlockPartition { blocks: vec![], principal: 0 },
            budget,
        };
        alg.blocks = alg.compute_blocks();
        Ok(alg)
    }

    fn compute_blocks(&self) -> BlockPartition {
        let n = self.simples.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            let c = self.multiplicities(&self.pims[i]);
            for (j, &cj) in c.iter().enumerate() {
                if cj > 0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(vec![]);
            }
            blocks[root_block[r]].push(i);
        }
        let triv = self.trivial_index();
        let principal = blocks.iter().position(|b| b.contains(&triv)).unwrap_or(0);
        BlockPartition { blocks, principal }
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }
    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn budget(&self) -> usize {
        self.budget
    }
    pub fn simples(&self) -> &[GModule] {
        &self.simples
    }
    pub fn simple(&self, i: usize) -> &GModule {
        &self.simples[i]
    }
    pub fn pims(&self) -> &[GModule] {
        &self.pims
    }
    pub fn pim(&self, i: usize) -> &GModule {
        &self.pims[i]
    }
    pub fn num_simples(&self) -> usize {
        self.simples.len()
    }
    pub fn blocks(&self) -> &BlockPartition {
        &self.blocks
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn trivial_index(&self) -> usize {
        let t = GModule::trivial(self.group.clone(), self.field);
        self.simples.iter().position(|s| s.dim() == 1 && s.gens() == t.gens()).expect("trivial module is simple")
    }

    /// Reorders the simples (and PIMs) so that new position i holds old simple order[i],
    /// and attaches labels.
    pub fn relabel(&mut self, order: &[usize], labels: Vec<String>) -> Result<()> {
        let n = self.simples.len();
        let mut seen = vec![false; n];
        if order.len() != n
            || labels.len() != n
            || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
        {
            return Err(ModuleError::Other("relabelling must be a permutation of the simples".into()));
        }
        if labels.iter().collect::<HashSet<_>>().len() != n {
            return Err(ModuleError::Other("labels must be unique".into()));
        }
        self.simples = order.iter().map(|&i| self.simples[i].clone()).collect();
        self.pims = order.iter().map(|&i| self.pims[i].clone()).collect();
        self.pim_gens = order.iter().map(|&i| self.pim_gens[i].clone()).collect();
        self.labels = labels;
        self.blocks = self.compute_blocks();
        Ok(())
    }

    /// Replaces simple i by an isomorphic copy (PIMs are unaffected).
    pub fn replace_simple(&mut self, i: usize, s: GModule) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        if self.isomorphism(&self.simples[i], &s, &mut rng).is_none() {
            return Err(ModuleError::Other("replacement is not isomorphic".into()));
        }
        self.simples[i] = s;
        Ok(())
    }

    /// dim Hom(P(S), M) for every simple S: the composition multiplicities of M.
    pub fn multiplicities(&self, m: &GModule) -> Vec<usize> {
        (0..self.simples.len())
            .map(|i| hom_space_seeded(&self.pims[i], m, std::slice::from_ref(&self.pim_gens[i])).len())
            .collect()
    }

    /// Hom(P(S_i), M) with P(S_i) spun from its generator first.
    pub fn pim_homs(&self, i: usize, m: &GModule) -> Vec<Matrix> {
        hom_space_seeded(&self.pims[i], m, std::slice::from_ref(&self.pim_gens[i]))
    }

    /// Index of the simple isomorphic to S.
    pub fn identify_simple(&self, s: &GModule) -> Option<usize> {
        (0..self.simples.len())
            .find(|&i| self.simples[i].dim() == s.dim() && !hom_space(&self.simples[i], s).is_empty())
    }

    pub fn isomorphism<R: Rng>(&self, a: &GModule, b: &GModule, rng: &mut R) -> Option<Matrix> {
        if a.dim() != b.dim() {
            return None;
        }
        if a.dim() == 0 {
            return Some(Matrix::zero(self.field, 0, 0));
        }
        // composition factors must agree before any Hom computation pays off
        if self.multiplicities(a) != self.multiplicities(b) {
            return None;
        }
        iso_from_basis(&hom_space(a, b), a.dim(), rng)
    }

    /// Multiplicity of each simple in the head M/rad M.
    pub fn head_multiplicities(&self, m: &GModule) -> Vec<usize> {
        self.simples.iter().map(|s| hom_space(m, s).len()).collect()
    }

    /// Multiplicity of each simple in the socle.
    pub fn socle_multiplicities(&self, m: &GModule) -> Vec<usize> {
        self.simples.iter().map(|s| hom_space(s, m).len()).collect()
    }

    /// Largest semisimple submodule whose factors are all among the simples in `x`.
    pub fn semisimple_x_rad(&self, m: &GModule, x: &[usize]) -> Subspace {
        let mut out = Subspace::new(self.field, m.dim());
        for &i in x {
            for h in hom_space(&self.simples[i], m) {
                for r in h.rows() {
                    out.insert(r);
                }
            }
        }
        out
    }

    pub fn socle(&self, m: &GModule) -> Subspace {
        let all: Vec<usize> = (0..self.simples.len()).collect();
        self.semisimple_x_rad(m, &all)
    }

    /// rad M as the annihilator of soc(M*).
    pub fn radical(&self, m: &GModule) -> Subspace {
        let d = self.dual_algebra_socle(m);
        Subspace::from_matrix(&d.basis().nullspace())
    }

    fn dual_algebra_socle(&self, m: &GModule) -> Subspace {
        // simples of M* are duals of simples; Hom(S*, M*) needs no labels
        let md = m.dual();
        let mut out = Subspace::new(self.field, m.dim());
        for s in &self.simples {
            for h in hom_space(&s.dual(), &md) {
                for r in h.rows() {
                    out.insert(r);
                }
            }
        }
        out
    }

    /// W with V ≤ W ≤ M and W/V the X-radical of M/V: the largest submodule of M/V
    /// admitting a filtration with all factors in X.
    pub fn pre_image_x_radical(&self, m: &GModule, v: &Subspace, x: &[usize]) -> Subspace {
        let mut w = v.clone();
        loop {
            let q = m.quotient(&w);
            let s = self.semisimple_x_rad(&q, x);
            if s.dim() == 0 {
                return w;
            }
            w = m.lift_from_quotient(&w, &s);
        }
    }

    /// Socle series, bottom layer first: cumulative subspaces and per-layer multiplicities.
    pub fn socle_series(&self, m: &GModule) -> Vec<(Subspace, Vec<usize>)> {
        let mut out = Vec::new();
        let mut w = Subspace::new(self.field, m.dim());
        while w.dim() < m.dim() {
            let q = m.quotient(&w);
            let s = self.socle(&q);
            let layer = q.submodule(&s);
            let mult = self.socle_multiplicities(&layer);
            w = m.lift_from_quotient(&w, &s);
            out.push((w.clone(), mult));
        }
        out
    }

    /// Radical series, top layer first: cumulative radicals and per-layer multiplicities.
    pub fn radical_series(&self, m: &GModule) -> Vec<(Subspace, Vec<usize>)> {
        let mut out = Vec::new();
        let mut cur = m.clone();
        let mut basis = Matrix::identity(self.field, m.dim());
        while cur.dim() > 0 {
            let r = self.radical(&cur);
            let mult = self.socle_multiplicities(&cur.quotient(&r));
            basis = r.basis().mul(&basis);
            cur = cur.submodule(&r);
            out.push((Subspace::from_matrix(&basis), mult));
        }
        out
    }

    /// Socle layers printed top first, one line per layer, labels in simple order.
    pub fn format_layers(&self, layers: &[Vec<usize>], top_first: bool) -> String {
        let mut lines: Vec<String> = layers
            .iter()
            .map(|mult| {
                let mut words = Vec::new();
                for (i, &c) in mult.iter().enumerate() {
                    for _ in 0..c {
                        words.push(self.labels[i].clone());
                    }
                }
                words.join(" ")
            })
            .collect();
        if top_first {
            lines.reverse();
        }
        lines.join("\n")
    }

    pub fn format_socle_series(&self, m: &GModule) -> String {
        let layers: Vec<Vec<usize>> = self.socle_series(m).into_iter().map(|(_, c)| c).collect();
        self.format_layers(&layers, true)
    }

    /// Projective cover P → M; P is ⊕ P(S)^{m_S} in simple order.
    pub fn projective_cover(&self, m: &GModule) -> Result<(ModuleMap, Vec<usize>)> {
        let mut u = self.radical(m);
        let mut parts: Vec<&GModule> = Vec::new();
        let mut rows: Vec<Matrix> = Vec::new();
        let mut which = Vec::new();
        for i in 0..self.simples.len() {
            if u.dim() == m.dim() {
                break;
            }
            for f in self.pim_homs(i, m) {
                let before = u.dim();
                let mut trial = u.clone();
                for r in f.rows() {
                    trial.insert(r);
                }
                if trial.dim() > before {
                    // image of a PIM mod rad M is 0 or its head
                    u = trial;
                    parts.push(&self.pims[i]);
                    rows.push(f);
                    which.push(i);
                }
            }
        }
        let p =
            if parts.is_empty() { GModule::zero(self.group.clone(), self.field) } else { GModule::direct_sum(&parts)? };
        let onto = Matrix::vstack(self.field, m.dim(), &rows.iter().collect::<Vec<_>>());
        Ok((ModuleMap::new(p, m.clone(), onto)?, which))
    }

    /// Injective hull M → I, as the dual of the projective cover of M*.
    pub fn injective_hull(&self, m: &GModule) -> Result<ModuleMap> {
        let (cover, _) = self.projective_cover(&m.dual())?;
        ModuleMap::new(m.clone(), cover.source.dual(), cover.matrix.transpose())
    }

    /// Ω(M): the kernel of the projective cover, with its inclusion into P(M).
    pub fn omega(&self, m: &GModule) -> Result<(GModule, Matrix, ModuleMap)> {
        let (cover, _) = self.projective_cover(m)?;
        let k = GModule::kernel_of(&cover.matrix);
        Ok((cover.source.submodule(&k), k.basis(), cover))
    }

    /// Ext¹(A, B) as Hom(ΩA, B) modulo restrictions of maps P(A) → B.
    pub fn ext1(&self, a: &GModule, b: &GModule) -> Result<ExtSpace> {
        let (omega, incl, cover) = self.omega(a)?;
        let hom = hom_space(&omega, b);
        let width = omega.dim() * b.dim();
        let mut span = Subspace::new(self.field, width);
        for g in hom_space(&cover.source, b) {
            span.insert(incl.mul(&g).data());
        }
        let mut cocycles = Vec::new();
        for h in hom {
            if span.insert(h.data()) {
                cocycles.push(h);
            }
        }
        Ok(ExtSpace { cover: cover.source, omega, omega_incl: incl, cocycles })
    }
}

/// Ext¹(A, B) presented through a projective cover P → A with kernel Ω.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub cover: GModule,
    pub omega: GModule,
    /// dim Ω × dim P
    pub omega_incl: Matrix,
    /// Maps Ω → B whose classes form a basis of Ext¹(A, B).
    pub cocycles: Vec<Matrix>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// Pushout of P ← Ω → B along v: E = (P ⊕ B)/{(x, −x·v)}, returned with B ↪ E.
    pub fn extension(&self, b: &GModule, v: &Matrix) -> Result<(GModule, Matrix)> {
        if v.nrows() != self.omega.dim() || v.ncols() != b.dim() || !super::module::intertwines(&self.omega, b, v) {
            return Err(ModuleError::BadCocycle);
        }
        let f = b.field();
        let sum = GModule::direct_sum(&[&self.cover, b])?;
        let rel = Matrix::hstack(f, self.omega.dim(), &[&self.omega_incl, &v.neg()]);
        let n = Subspace::from_matrix(&rel);
        let e = sum.quotient(&n);
        let q = sum.quotient_map(&n);
        let bin =
            Matrix::hstack(f, b.dim(), &[&Matrix::zero(f, b.dim(), self.cover.dim()), &Matrix::identity(f, b.dim())]);
        Ok((e, bin.mul(&q)))
    }
}

/// Labels "d_k": dimension and running index among simples of that dimension.
pub fn default_labels(simples: &[GModule]) -> Vec<String> {
    let mut seen = std::collections::HashMap::new();
    simples
        .iter()
        .map(|s| {
            let c = seen.entry(s.dim()).or_insert(0usize);
            *c += 1;
            format!("{}_{}", s.dim(), c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::{hom_dim, intertwines};

    fn a5() -> Arc<FinGroup> {
        Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap())
    }

    fn d10() -> Arc<FinGroup> {
        Arc::new(FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap())
    }

    #[test]
    fn a5_mod_5() {
        let f = Field::get(5).unwrap();
        let alg = Algebra::compute(a5(), f, 1, 100).unwrap();
        let dims: Vec<usize> = alg.simples().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 3, 5]);
        assert_eq!(alg.labels(), &["1_1", "3_1", "5_1"]);
        assert_eq!(alg.blocks().blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(alg.blocks().principal, 0);
        let pdims: Vec<usize> = alg.pims().iter().map(|p| p.dim()).collect();
        assert_eq!(pdims, vec![5, 10, 5]);
        // the natural module is uniserial 1/3/1
        let p = GModule::natural_permutation(a5(), f);
        assert_eq!(alg.multiplicities(&p), vec![2, 1, 0]);
        assert_eq!(alg.format_socle_series(&p), "1_1\n3_1\n1_1");
        assert_eq!(alg.socle(&p).dim(), 1);
        assert_eq!(alg.radical(&p).dim(), 4);
    }

    #[test]
    fn d10_mod_5_covers_hulls_ext() {
        let f = Field::get(5).unwrap();
        let alg = Algebra::compute(d10(), f, 2, 100).unwrap();
        assert_eq!(alg.num_simples(), 2);
        assert_eq!(alg.blocks().blocks.len(), 1);
        let t = alg.simple(0).clone();
        let (cover, which) = alg.projective_cover(&t).unwrap();
        assert_eq!(which, vec![0]);
        assert_eq!(cover.source.dim(), 5);
        assert!(cover.is_surjective());
        let hull = alg.injective_hull(&t).unwrap();
        assert!(hull.is_injective());
        assert_eq!(hull.target.dim(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(alg.isomorphism(&hull.target, &cover.source, &mut rng).is_some());
        // the trivial module of D10 has no self-extension; it extends the sign module once
        let ext = alg.ext1(&t, &t).unwrap();
        assert_eq!(ext.dim(), 0);
        let s = alg.simple(1).clone();
        let ext = alg.ext1(&t, &s).unwrap();
        assert_eq!(ext.dim(), 1);
        let (e, bin) = ext.extension(&s, &ext.cocycles[0]).unwrap();
        assert!(intertwines(&s, &e, &bin));
        assert_eq!(alg.multiplicities(&e), vec![1, 1]);
        assert_eq!(alg.socle(&e).dim(), 1);
        let zero = Matrix::zero(f, ext.omega.dim(), 1);
        let (split, _) = ext.extension(&s, &zero).unwrap();
        assert_eq!(alg.socle(&split).dim(), 2);
        assert_eq!(hom_dim(&alg.pims()[0], &alg.pims()[1]), 2);
    }
}
