//! Relative projectivity, vertices inside an elementary abelian defect group,
//! Green correspondents and trivial-source modules.

use std::sync::Arc;

use rand::Rng;

use super::projective::is_projective;
use super::summands::indecomposable_summands;
use crate::ffmat::{Field, Matrix, Subspace};
use crate::groups::{FinGroup, Perm};
use crate::modrep::{hom_space, random_combination, Algebra, GModule, ModuleError, Result};

/// Number of random trace elements tried in the relative projectivity test;
/// a false negative has probability at most q^-TRACE_TRIALS.
const TRACE_TRIALS: usize = 24;

/// Jordan chains of a nilpotent matrix: heads with chain lengths.
fn jordan_chains(n: &Matrix) -> (Vec<(Vec<u8>, usize)>, Vec<Subspace>) {
    let f = n.field();
    let d = n.nrows();
    let mut kernels = vec![Subspace::new(f, d)];
    let mut pw = Matrix::identity(f, d);
    while kernels.last().unwrap().dim() < d {
        pw = pw.mul(n);
        kernels.push(Subspace::from_matrix(&pw.left_nullspace()));
        assert!(kernels.len() <= d + 1, "matrix is not nilpotent");
    }
    let s = kernels.len() - 1;
    let mut heads: Vec<(Vec<u8>, usize)> = Vec::new();
    for j in (1..=s).rev() {
        let mut w = kernels[j - 1].clone();
        for (h, len) in &heads {
            let mut v = h.clone();
            for _ in 0..(len - j) {
                v = n.vec_mul(&v);
            }
            w.insert(&v);
        }
        for b in kernels[j].basis().rows() {
            if w.insert(b) {
                heads.push((b.to_vec(), j));
            }
        }
    }
    (heads, kernels)
}

/// Random endomorphism commuting with a unipotent matrix c.
///
/// With N = c − 1 and Jordan chains h, hN, …, hN^{s−1}, a map commuting with N
/// is fixed by sending each head h to any y with yN^s = 0.
pub struct Commutant {
    n: Matrix,
    heads: Vec<(Vec<u8>, usize)>,
    kernels: Vec<Matrix>,
    basis_inv: Matrix,
}

impl Commutant {
    pub fn new(c: &Matrix) -> Commutant {
        let f = c.field();
        let d = c.nrows();
        let n = c.sub(&Matrix::identity(f, d));
        let (heads, ks) = jordan_chains(&n);
        let mut rows = Vec::with_capacity(d);
        for (h, len) in &heads {
            let mut v = h.clone();
            for _ in 0..*len {
                rows.push(v.clone());
                v = n.vec_mul(&v);
            }
        }
        let basis = Matrix::from_rows(f, d, &rows);
        let basis_inv = basis.inverse().expect("Jordan chains form a basis");
        let kernels = ks.iter().map(|k| k.basis()).collect();
        Commutant { n, heads, kernels, basis_inv }
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Matrix {
        let f = self.n.field();
        let d = self.n.nrows();
        let q = f.order();
        let mut rows = Vec::with_capacity(d);
        for (_, len) in &self.heads {
            let k = &self.kernels[*len];
            let mut y = vec![0u8; d];
            for r in k.rows() {
                let a = rng.gen_range(0..q) as u8;
                crate::ffmat::axpy(f, &mut y, a, r);
            }
            for _ in 0..*len {
                rows.push(y.clone());
                y = self.n.vec_mul(&y);
            }
        }
        self.basis_inv.mul(&Matrix::from_rows(f, d, &rows))
    }
}

/// Right coset representatives of Q in G, as element indices of G.
fn right_transversal(g: &FinGroup, q: &FinGroup) -> Result<Vec<usize>> {
    let e = g.enumeration()?;
    let qe = q.elements()?;
    let mut seen = vec![false; e.elements.len()];
    let mut reps = Vec::new();
    for x in 0..e.elements.len() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for c in qe {
            let y = e.index_of(&c.mul(&e.elements[x])).ok_or(ModuleError::Mismatch)?;
            seen[y] = true;
        }
    }
    Ok(reps)
}

/// Higman's criterion for an indecomposable M and a cyclic ℓ-subgroup Q:
/// M is relatively Q-projective iff Tr_Q^G(φ) is invertible for some φ ∈ End_Q(M).
pub fn is_relatively_projective<R: Rng>(m: &GModule, q: &FinGroup, rng: &mut R) -> Result<bool> {
    let mats = m.all_element_matrices()?;
    is_relatively_projective_with(m, &mats, q, rng)
}

fn is_relatively_projective_with<R: Rng>(m: &GModule, mats: &[Matrix], q: &FinGroup, rng: &mut R) -> Result<bool> {
    let g = m.group();
    let e = g.enumeration()?;
    let reps = right_transversal(g, q)?;
    // for Q = 1 every linear map lies in End_Q(M)
    let comm = match q.generators().iter().find(|x| !x.is_identity()) {
        Some(c) => {
            let ci = e.index_of(c).ok_or_else(|| ModuleError::NotInGroup(c.clone()))?;
            Some(Commutant::new(&mats[ci]))
        }
        None => None,
    };
    let inv: Vec<Matrix> = reps.iter().map(|&t| mats[e.index_of(&e.elements[t].inverse()).unwrap()].clone()).collect();
    for _ in 0..TRACE_TRIALS {
        let phi = match &comm {
            Some(c) => c.random(rng),
            None => Matrix::random(m.field(), m.dim(), m.dim(), rng),
        };
        let mut tr = Matrix::zero(m.field(), m.dim(), m.dim());
        for (k, &t) in reps.iter().enumerate() {
            tr.add_assign_scaled(&inv[k].mul(&phi).mul(&mats[t]), 1);
        }
        if tr.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// For indecomposable X: true iff X is isomorphic to a summand of M, i.e. some
/// composite X → M → X is invertible. Basis products span an ideal of the local
/// ring End(X), so checking them is exhaustive.
pub fn is_direct_summand<R: Rng>(x: &GModule, m: &GModule, rng: &mut R) -> bool {
    if x.dim() > m.dim() {
        return false;
    }
    let to = hom_space(x, m);
    if to.is_empty() {
        return false;
    }
    let back = hom_space(m, x);
    for _ in 0..8 {
        let a = random_combination(&to, x.dim(), m.dim(), rng);
        let b = random_combination(&back, m.dim(), x.dim(), rng);
        if a.mul(&b).is_invertible() {
            return true;
        }
    }
    to.iter().any(|a| back.iter().any(|b| a.mul(b).is_invertible()))
}

/// Distinct subgroups of order ℓ of an elementary abelian ℓ-group.
pub fn order_l_subgroups(d: &FinGroup) -> Result<Vec<FinGroup>> {
    let mut out: Vec<FinGroup> = Vec::new();
    let mut covered: Vec<Perm> = Vec::new();
    for x in d.elements()? {
        if x.is_identity() || covered.contains(x) {
            continue;
        }
        let q = FinGroup::new(d.degree(), vec![x.clone()]);
        covered.extend(q.elements()?.iter().cloned());
        out.push(q);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum Vertex {
    Trivial,
    Cyclic(FinGroup),
    Defect,
}

impl Vertex {
    pub fn order(&self, l: usize) -> usize {
        match self {
            Vertex::Trivial => 1,
            Vertex::Cyclic(_) => l,
            Vertex::Defect => l * l,
        }
    }
}

/// Vertex of an indecomposable module, searched over 1, the order-ℓ subgroups of D, and D.
pub fn vertex<R: Rng>(m: &GModule, d: &FinGroup, rng: &mut R, budget: usize) -> Result<Vertex> {
    if !super::summands::is_indecomposable(m, rng, budget)? {
        return Err(ModuleError::Other("vertex needs an indecomposable module".into()));
    }
    vertex_unchecked(m, d, rng)
}

pub(crate) fn vertex_unchecked<R: Rng>(m: &GModule, d: &FinGroup, rng: &mut R) -> Result<Vertex> {
    if is_projective(m, d)? {
        return Ok(Vertex::Trivial);
    }
    let mats = m.all_element_matrices()?;
    let full = d.order()?;
    for q in order_l_subgroups(d)? {
        if q.order()? == full {
            continue;
        }
        if is_relatively_projective_with(m, &mats, &q, rng)? {
            return Ok(Vertex::Cyclic(q));
        }
    }
    Ok(Vertex::Defect)
}

/// Green correspondent in H ≥ N_G(D) of an indecomposable S with vertex D:
/// the unique summand of the restriction with vertex D.
pub fn green_correspondent<R: Rng>(
    s: &GModule,
    h: Arc<FinGroup>,
    d: &FinGroup,
    rng: &mut R,
    budget: usize,
) -> Result<GModule> {
    let res = s.restrict(h)?;
    let dec = indecomposable_summands(&res, rng, budget)?;
    let mut found = Vec::new();
    for x in dec.summands {
        if matches!(vertex_unchecked(&x.module, d, rng)?, Vertex::Defect) {
            found.push(x.module);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(ModuleError::Other("no summand of the restriction has full vertex".into())),
        k => Err(ModuleError::Other(format!("{k} summands of the restriction have full vertex"))),
    }
}

/// Isomorphism types of indecomposable summands of Ind_Q^H k, largest first.
pub fn trivial_source_modules<R: Rng>(alg: &Algebra, q: &FinGroup, rng: &mut R) -> Result<Vec<GModule>> {
    let source = GModule::trivial(Arc::new(q.clone()), alg.field());
    induced_summand_types(alg, &source, rng)
}

/// Isomorphism types of indecomposable summands of the module induced from
/// `source` (a module for a subgroup) to the algebra's group, largest first.
pub fn induced_summand_types<R: Rng>(alg: &Algebra, source: &GModule, rng: &mut R) -> Result<Vec<GModule>> {
    let induced = source.induce(alg.group().clone())?;
    let dec = indecomposable_summands(&induced, rng, alg.budget())?;
    let mut out: Vec<GModule> = Vec::new();
    for s in dec.summands {
        if !out.iter().any(|o| alg.isomorphism(o, &s.module, rng).is_some()) {
            out.push(s.module);
        }
    }
    Ok(out)
}

/// The uniserial module of dimension n for a cyclic ℓ-group: every generator
/// acts by the matching power of one unipotent Jordan block.
pub fn jordan_module(q: Arc<FinGroup>, field: &'static Field, n: usize) -> Result<GModule> {
    let gens = q.generators();
    let x = gens.iter().find(|g| !g.is_identity()).cloned().unwrap_or_else(|| q.identity());
    let order = x.order();
    let mut j = Matrix::identity(field, n);
    for i in 0..n.saturating_sub(1) {
        j.set(i, i + 1, 1);
    }
    let mats = gens
        .iter()
        .map(|g| {
            let k = (0..order)
                .find(|&k| &x.pow(k as i64) == g)
                .ok_or_else(|| ModuleError::Other("subgroup is not cyclic on its first generator".into()))?;
            Ok(j.pow(k as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    GModule::new(q, field, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn commutant_elements_commute() {
        let f = Field::get(5).unwrap();
        let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3,4,5)"]).unwrap());
        let reg = GModule::regular(g, f).unwrap();
        let m = GModule::direct_sum(&[&reg, &GModule::trivial(reg.group().clone(), f)]).unwrap();
        let c = m.gen(0).clone();
        let comm = Commutant::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let x = comm.random(&mut rng);
            assert_eq!(x.mul(&c), c.mul(&x));
        }
    }

    #[test]
    fn vertices_in_a5_mod_5() {
        let f = Field::get(5).unwrap();
        let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap());
        let d = g.sylow(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = GModule::trivial(g.clone(), f);
        assert!(matches!(vertex(&t, &d, &mut rng, 50).unwrap(), Vertex::Defect));
        let p = GModule::natural_permutation(g.clone(), f);
        // the order-5 Sylow is cyclic here, so it is the full defect group; test via relative projectivity
        assert!(is_relatively_projective(&t, &d, &mut rng).unwrap());
        let one = FinGroup::trivial(5);
        assert!(!is_relatively_projective(&t, &one, &mut rng).unwrap());
        // point stabiliser A4 has order prime to 5, so the natural module is projective
        assert!(is_relatively_projective(&p, &one, &mut rng).unwrap());
        let alg = Algebra::compute(g.clone(), f, 1, 50).unwrap();
        assert!(is_direct_summand(&t, &GModule::direct_sum(&[&p, &t]).unwrap(), &mut rng));
        assert!(!is_direct_summand(&t, &p, &mut rng));
        assert!(is_direct_summand(alg.pim(0), &GModule::regular(g.clone(), f).unwrap(), &mut rng));
        let n = Arc::new(g.normalizer(&d).unwrap());
        let c = green_correspondent(&t, n.clone(), &d, &mut rng, 50).unwrap();
        assert_eq!(c.dim(), 1);
        let ts = trivial_source_modules(&alg, &d, &mut rng).unwrap();
        let mut dims: Vec<usize> = ts.iter().map(|m| m.dim()).collect();
        dims.sort();
        // Ind_{C5}^{A5} k has dimension 12: trivial plus the 11-dim remainder
        assert_eq!(dims.iter().sum::<usize>() <= 12, true);
        assert!(dims.contains(&1));
    }
}
