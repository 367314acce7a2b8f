//! Modules for group algebras: one invertible matrix per group generator,
//! acting on row vectors from the right.

use std::sync::Arc;

use thiserror::Error;

use crate::ffmat::{Field, Matrix, Subspace};
use crate::groups::{FinGroup, GroupError, Perm};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("modules over different groups or fields")]
    Mismatch,
    #[error("generator {0} acts by a singular or misshapen matrix")]
    BadAction(usize),
    #[error("expected {expected} generator matrices, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("vector does not lie in the module")]
    NotInModule,
    #[error("element {0} not in the group")]
    NotInGroup(Perm),
    #[error("module has no simple modules attached; compute the algebra first")]
    NoAlgebra,
    #[error("simple module with endomorphism ring of dimension {0}: field is not a splitting field")]
    NotSplit(usize),
    #[error("randomised search exhausted its budget of {0} attempts: {1}")]
    Budget(usize, &'static str),
    #[error("cocycle does not lie in the computed Ext space")]
    BadCocycle,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, ModuleError>;

#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FinGroup>,
    field: &'static Field,
    dim: usize,
    gens: Vec<Matrix>,
}

/// True if both modules are over the same group (same generators) and field.
pub fn compatible(a: &GModule, b: &GModule) -> bool {
    a.field == b.field
        && (Arc::ptr_eq(&a.group, &b.group)
            || (a.group.degree() == b.group.degree() && a.group.generators() == b.group.generators()))
}

impl GModule {
    pub fn new(group: Arc<FinGroup>, field: &'static Field, gens: Vec<Matrix>) -> Result<GModule> {
        if gens.len() != group.ngens() {
            return Err(ModuleError::GeneratorCount { expected: group.ngens(), got: gens.len() });
        }
        let dim = gens.first().map_or(0, |g| g.nrows());
        for (i, g) in gens.iter().enumerate() {
            if g.nrows() != dim || g.ncols() != dim || g.field() != field || !g.is_invertible() {
                return Err(ModuleError::BadAction(i));
            }
        }
        Ok(GModule { group, field, dim, gens })
    }

    /// Skips the invertibility check; callers guarantee the action is valid.
    pub(crate) fn from_parts(group: Arc<FinGroup>, field: &'static Field, dim: usize, gens: Vec<Matrix>) -> GModule {
        debug_assert!(gens.iter().all(|g| g.nrows() == dim && g.ncols() == dim));
        GModule { group, field, dim, gens }
    }

    pub fn zero(group: Arc<FinGroup>, field: &'static Field) -> GModule {
        let n = group.ngens();
        GModule::from_parts(group, field, 0, vec![Matrix::zero(field, 0, 0); n])
    }

    pub fn trivial(group: Arc<FinGroup>, field: &'static Field) -> GModule {
        let n = group.ngens();
        GModule::from_parts(group, field, 1, vec![Matrix::identity(field, 1); n])
    }

    /// Permutation module on a G-set given by one permutation per generator.
    pub fn permutation(group: Arc<FinGroup>, field: &'static Field, actions: &[Perm]) -> Result<GModule> {
        if actions.len() != group.ngens() {
            return Err(ModuleError::GeneratorCount { expected: group.ngens(), got: actions.len() });
        }
        let dim = actions.first().map_or(0, |p| p.degree());
        let gens = actions.iter().map(|p| Matrix::permutation(field, &p.images().collect::<Vec<_>>())).collect();
        Ok(GModule::from_parts(group, field, dim, gens))
    }

    /// Permutation module on the points the group acts on.
    pub fn natural_permutation(group: Arc<FinGroup>, field: &'static Field) -> GModule {
        let acts = group.generators().to_vec();
        GModule::permutation(group, field, &acts).expect("generator count matches")
    }

    /// Regular module with basis the elements in enumeration order; g acts by right multiplication.
    pub fn regular(group: Arc<FinGroup>, field: &'static Field) -> Result<GModule> {
        let e = group.enumeration()?;
        let acts: Vec<Perm> = group
            .generators()
            .iter()
            .map(|g| Perm::from_images(e.elements.iter().map(|x| e.index_of(&x.mul(g)).unwrap()).collect()))
            .collect();
        GModule::permutation(group.clone(), field, &acts)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }
    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }
    pub fn gen(&self, i: usize) -> &Matrix {
        &self.gens[i]
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Same module structure over another copy of the group with identical generators.
    pub fn rebase(&self, group: Arc<FinGroup>) -> GModule {
        assert_eq!(group.generators(), self.group.generators(), "rebase onto different generators");
        GModule::from_parts(group, self.field, self.dim, self.gens.clone())
    }

    /// Matrix of an arbitrary group element, via its word in the generators.
    pub fn element_matrix(&self, g: &Perm) -> Result<Matrix> {
        let word = self.group.word_for(g)?.ok_or_else(|| ModuleError::NotInGroup(g.clone()))?;
        Ok(self.word_matrix(&word))
    }

    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim);
        for &k in word {
            acc = acc.mul(&self.gens[k]);
        }
        acc
    }

    /// Matrices of all elements in enumeration order.
    pub fn all_element_matrices(&self) -> Result<Vec<Matrix>> {
        let e = self.group.enumeration()?;
        let mut out: Vec<Matrix> = Vec::with_capacity(e.elements.len());
        out.push(Matrix::identity(self.field, self.dim));
        for i in 1..e.elements.len() {
            let (p, g) = e.parent(i);
            out.push(out[p].mul(&self.gens[g]));
        }
        Ok(out)
    }

    pub fn dual(&self) -> GModule {
        let gens = self.gens.iter().map(|g| g.inverse().expect("action is invertible").transpose()).collect();
        GModule::from_parts(self.group.clone(), self.field, self.dim, gens)
    }

    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        if !compatible(self, other) {
            return Err(ModuleError::Mismatch);
        }
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kronecker(b).unwrap()).collect();
        Ok(GModule::from_parts(self.group.clone(), self.field, self.dim * other.dim, gens))
    }

    pub fn direct_sum(parts: &[&GModule]) -> Result<GModule> {
        let first = parts.first().ok_or_else(|| ModuleError::Other("empty direct sum".into()))?;
        if parts.iter().any(|p| !compatible(first, p)) {
            return Err(ModuleError::Mismatch);
        }
        let gens = (0..first.gens.len())
            .map(|k| Matrix::block_diag(first.field, &parts.iter().map(|p| &p.gens[k]).collect::<Vec<_>>()))
            .collect();
        let dim = parts.iter().map(|p| p.dim).sum();
        Ok(GModule::from_parts(first.group.clone(), first.field, dim, gens))
    }

    /// Direct sum of n copies.
    pub fn power(&self, n: usize) -> GModule {
        if n == 0 {
            return GModule::zero(self.group.clone(), self.field);
        }
        GModule::direct_sum(&vec![self; n]).unwrap()
    }

    /// Change of basis: the module with action B·A·B⁻¹, so row i of B becomes basis vector i.
    pub fn conjugate_basis(&self, b: &Matrix) -> GModule {
        let binv = b.inverse().expect("basis change must be invertible");
        let gens = self.gens.iter().map(|g| b.mul(g).mul(&binv)).collect();
        GModule::from_parts(self.group.clone(), self.field, self.dim, gens)
    }

    /// Restriction to a subgroup (same point set) using words in this group's generators.
    pub fn restrict(&self, sub: Arc<FinGroup>) -> Result<GModule> {
        let gens = sub.generators().iter().map(|h| self.element_matrix(h)).collect::<Result<Vec<_>>>()?;
        Ok(GModule::from_parts(sub, self.field, self.dim, gens))
    }

    /// Restriction along explicit matrices for the subgroup generators (for ingested data).
    pub fn with_generators(group: Arc<FinGroup>, field: &'static Field, gens: Vec<Matrix>) -> Result<GModule> {
        GModule::new(group, field, gens)
    }

    /// Module obtained by letting the group act through a homomorphism given on generators:
    /// generator i of `group` acts as the element images[i] of this module's group.
    pub fn inflate_along(&self, group: Arc<FinGroup>, images: &[Perm]) -> Result<GModule> {
        let gens = images.iter().map(|h| self.element_matrix(h)).collect::<Result<Vec<_>>>()?;
        Ok(GModule::from_parts(group, self.field, self.dim, gens))
    }

    /// Induction to an overgroup: basis v ⊗ t_j over right coset representatives t_j.
    pub fn induce(&self, big: Arc<FinGroup>) -> Result<GModule> {
        let sub = &self.group;
        let e = big.enumeration()?;
        let sub_elems = sub.elements()?;
        let n = e.elements.len();
        let mut coset = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset[x] != usize::MAX {
                continue;
            }
            for k in sub_elems {
                let y = e.index_of(&k.mul(&e.elements[x])).ok_or(ModuleError::Mismatch)?;
                coset[y] = reps.len();
            }
            reps.push(x);
        }
        let m = reps.len();
        let d = self.dim;
        let f = self.field;
        let mut gens = Vec::with_capacity(big.ngens());
        for g in big.generators() {
            let mut mat = Matrix::zero(f, m * d, m * d);
            for (j, &t) in reps.iter().enumerate() {
                let y = e.elements[t].mul(g);
                let yi = e.index_of(&y).unwrap();
                let j2 = coset[yi];
                let k = y.mul(&e.elements[reps[j2]].inverse());
                let block = self.element_matrix(&k)?;
                for r in 0..d {
                    for c in 0..d {
                        mat.set(j * d + r, j2 * d + c, block.get(r, c));
                    }
                }
            }
            gens.push(mat);
        }
        Ok(GModule::from_parts(big, f, m * d, gens))
    }

    /// Checks the action is invertible and that two words for each element agree on a sample.
    pub fn check_relations(&self) -> Result<bool> {
        let e = self.group.enumeration()?;
        let mats = self.all_element_matrices()?;
        for (i, x) in e.elements.iter().enumerate().take(64) {
            for (k, g) in self.group.generators().iter().enumerate() {
                let j = e.index_of(&x.mul(g)).unwrap();
                if mats[i].mul(&self.gens[k]) != mats[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the subspace is invariant under every generator.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        (0..s.dim()).all(|i| self.gens.iter().all(|g| s.contains(&g.vec_mul(s.row(i)))))
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<u8>]) -> Subspace {
        let mut s = Subspace::new(self.field, self.dim);
        s.spin_in(vectors, &self.gens);
        s
    }

    /// The submodule on an invariant subspace, in its echelon basis.
    pub fn submodule(&self, s: &Subspace) -> GModule {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u8>> = (0..s.dim()).map(|i| s.coords(&g.vec_mul(s.row(i)))).collect();
                Matrix::from_rows(self.field, s.dim(), &rows)
            })
            .collect();
        GModule::from_parts(self.group.clone(), self.field, s.dim(), gens)
    }

    /// Quotient by an invariant subspace, with basis the non-pivot standard vectors.
    pub fn quotient(&self, s: &Subspace) -> GModule {
        let np = s.non_pivots();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u8>> = np.iter().map(|&j| s.quotient_coords(g.row(j), &np)).collect();
                Matrix::from_rows(self.field, np.len(), &rows)
            })
            .collect();
        GModule::from_parts(self.group.clone(), self.field, np.len(), gens)
    }

    /// Matrix of the projection onto quotient(s).
    pub fn quotient_map(&self, s: &Subspace) -> Matrix {
        let np = s.non_pivots();
        let mut e = vec![0u8; self.dim];
        let rows: Vec<Vec<u8>> = (0..self.dim)
            .map(|i| {
                e.iter_mut().for_each(|x| *x = 0);
                e[i] = 1;
                s.quotient_coords(&e, &np)
            })
            .collect();
        Matrix::from_rows(self.field, np.len(), &rows)
    }

    /// Image of a homomorphism (rows of f span it) as a subspace of the target.
    pub fn image_of(f: &Matrix) -> Subspace {
        Subspace::from_matrix(f)
    }

    /// Kernel of a homomorphism as a subspace of the source.
    pub fn kernel_of(f: &Matrix) -> Subspace {
        Subspace::from_matrix(&f.left_nullspace())
    }

    /// Preimage in `self` of a submodule of a quotient: span of s together with lifts.
    pub fn lift_from_quotient(&self, s: &Subspace, sub_of_quotient: &Subspace) -> Subspace {
        let np = s.non_pivots();
        let mut out = s.clone();
        for i in 0..sub_of_quotient.dim() {
            let mut v = vec![0u8; self.dim];
            for (k, &c) in np.iter().enumerate() {
                v[c] = sub_of_quotient.row(i)[k];
            }
            out.insert(&v);
        }
        out
    }
}

/// True iff v ↦ v·f intertwines the actions: A_g·f = f·B_g for every generator.
pub fn intertwines(m: &GModule, n: &GModule, f: &Matrix) -> bool {
    f.nrows() == m.dim() && f.ncols() == n.dim() && m.gens().iter().zip(n.gens()).all(|(a, b)| a.mul(f) == f.mul(b))
}

/// A homomorphism of modules, checked on construction.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GModule,
    pub target: GModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: GModule, target: GModule, matrix: Matrix) -> Result<ModuleMap> {
        if !compatible(&source, &target) {
            return Err(ModuleError::Mismatch);
        }
        if !intertwines(&source, &target, &matrix) {
            return Err(ModuleError::Other("matrix does not intertwine the actions".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}
