use crate::ffmat::{Matrix, Subspace};
use crate::modrep::GModule;

use super::{PerverseError, Result};

/// 0 → X^lo → … → X^hi → 0 with explicit differentials d^k: X^k → X^{k+1}.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    lowest: i32,
    terms: Vec<GModule>,
    differentials: Vec<Matrix>,
}

impl BoundedComplex {
    /// `differentials[k]` maps `terms[k]` to `terms[k + 1]`; d∘d = 0 is checked.
    pub fn new(lowest: i32, terms: Vec<GModule>, differentials: Vec<Matrix>) -> Result<BoundedComplex> {
        if terms.is_empty() || differentials.len() + 1 != terms.len() {
            return Err(PerverseError::Shape(lowest));
        }
        for (k, d) in differentials.iter().enumerate() {
            let deg = lowest + k as i32;
            if d.nrows() != terms[k].dim()
                || d.ncols() != terms[k + 1].dim()
                || !crate::modrep::intertwines(&terms[k], &terms[k + 1], d)
            {
                return Err(PerverseError::Shape(deg));
            }
            if k > 0 && !differentials[k - 1].mul(d).is_zero() {
                return Err(PerverseError::NotAComplex(deg - 1));
            }
        }
        Ok(BoundedComplex { lowest, terms, differentials })
    }

    /// A module concentrated in degree 0.
    pub fn concentrated(m: GModule) -> BoundedComplex {
        BoundedComplex { lowest: 0, terms: vec![m], differentials: vec![] }
    }

    pub fn lowest_degree(&self) -> i32 {
        self.lowest
    }

    pub fn highest_degree(&self) -> i32 {
        self.lowest + self.terms.len() as i32 - 1
    }

    pub fn term(&self, degree: i32) -> Option<&GModule> {
        usize::try_from(degree - self.lowest).ok().and_then(|k| self.terms.get(k))
    }

    pub fn terms(&self) -> &[GModule] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// H^k = ker d^k / im d^{k−1} for every degree, lowest first.
    pub fn cohomology(&self) -> Vec<(i32, GModule)> {
        (0..self.terms.len())
            .map(|k| {
                let t = &self.terms[k];
                let ker = match self.differentials.get(k) {
                    Some(d) => GModule::kernel_of(d),
                    None => Subspace::full(t.field(), t.dim()),
                };
                let im = match k {
                    0 => Subspace::new(t.field(), t.dim()),
                    _ => GModule::image_of(&self.differentials[k - 1]),
                };
                (self.lowest + k as i32, subquotient(t, &ker, &im))
            })
            .collect()
    }
}

/// upper/lower for submodules lower ≤ upper ≤ m.
pub fn subquotient(m: &GModule, upper: &Subspace, lower: &Subspace) -> GModule {
    let u = m.submodule(upper);
    let mut l = Subspace::new(m.field(), upper.dim());
    for i in 0..lower.dim() {
        l.insert(&upper.coords(lower.row(i)));
    }
    u.quotient(&l)
}
