use crate::ffmat::{Matrix, Subspace};
use crate::modrep::{Algebra, GModule};

use super::Result;

/// J_r: the simples of perversity at most r.
pub fn j_set(pi: &[u32], r: i64) -> Vec<usize> {
    (0..pi.len()).filter(|&i| pi[i] as i64 <= r).collect()
}

/// The complex for one simple T up to degree −2, together with the hull that
/// the degree −1 term replaces and the kernel M₁ inside it.
///
/// With n = π(T), `hulls[r]` sits in degree −n + r. `kernels[r] ≤ hulls[r]`
/// is the kernel of the outgoing map, `images[r] ≤ hulls[r + 1]` the image of
/// that map, and `cohomology[r]` is kernels[r]/images[r − 1].
#[derive(Clone, Debug)]
pub struct PerverseRun {
    pub simple: usize,
    pub pi: u32,
    pub hulls: Vec<GModule>,
    pub maps: Vec<Matrix>,
    pub kernels: Vec<Subspace>,
    pub images: Vec<Subspace>,
    pub cohomology: Vec<GModule>,
}

impl PerverseRun {
    pub fn is_trivial(&self) -> bool {
        self.pi == 0
    }

    /// Terms in degrees −n … −2.
    pub fn terms(&self) -> &[GModule] {
        &self.hulls[..self.hulls.len().saturating_sub(1)]
    }

    /// Degree of `cohomology[r]`.
    pub fn degree(&self, r: usize) -> i32 {
        r as i32 - self.pi as i32
    }

    /// (−j, H^{−j}) pairs, lowest degree first.
    pub fn cohomology_by_degree(&self) -> Vec<(i32, &GModule)> {
        self.cohomology.iter().enumerate().map(|(r, h)| (self.degree(r), h)).collect()
    }

    /// M₁ as a module with its inclusion into the pruned hull.
    pub fn m1(&self) -> Option<(GModule, Matrix)> {
        let last = self.hulls.last()?;
        let k = self.kernels.last()?;
        Some((last.submodule(k), k.basis()))
    }

    /// Socle multiplicities of each term: the PIMs making it up, lowest degree first.
    pub fn term_types(&self, alg: &Algebra) -> Vec<Vec<usize>> {
        self.terms().iter().map(|h| alg.socle_multiplicities(h)).collect()
    }
}

/// Builds the run for simple `t` of `alg` under perversity `pi`.
pub fn perverse_core(alg: &Algebra, t: usize, pi: &[u32]) -> Result<PerverseRun> {
    let n = pi[t] as usize;
    let simple = alg.simple(t).clone();
    if n == 0 {
        return Ok(PerverseRun {
            simple: t,
            pi: 0,
            hulls: vec![],
            maps: vec![],
            kernels: vec![],
            images: vec![],
            cohomology: vec![simple],
        });
    }
    let first = alg.injective_hull(&simple)?;
    let p1 = first.target.clone();
    let t_img = GModule::image_of(&first.matrix);
    let k1 = alg.pre_image_x_radical(&p1, &t_img, &j_set(pi, n as i64 - 1));
    let mut cohomology = vec![p1.submodule(&k1)];
    let mut hulls = vec![p1];
    let mut kernels = vec![k1];
    let mut images = Vec::new();
    let mut maps = Vec::new();
    for r in 1..n {
        let prev = &hulls[r - 1];
        let k = &kernels[r - 1];
        let b = prev.quotient(k);
        let hull = alg.injective_hull(&b)?;
        let d = prev.quotient_map(k).mul(&hull.matrix);
        let p = hull.target;
        let img = GModule::image_of(&d);
        let kr = alg.pre_image_x_radical(&p, &img, &j_set(pi, (n - r) as i64 - 1));
        cohomology.push(super::subquotient(&p, &kr, &img));
        hulls.push(p);
        kernels.push(kr);
        images.push(img);
        maps.push(d);
    }
    Ok(PerverseRun { simple: t, pi: n as u32, hulls, maps, kernels, images, cohomology })
}

/// A cohomology module as a table cell: "" for zero, "a ⊕ b" when semisimple
/// with several factors, otherwise its socle layers top first joined by "/".
pub fn cohomology_cell(alg: &Algebra, h: &GModule) -> String {
    if h.dim() == 0 {
        return String::new();
    }
    let series = alg.socle_series(h);
    let labels = |mult: &[usize]| -> Vec<String> {
        mult.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(alg.label(i).to_string()).take(c)).collect()
    };
    if series.len() == 1 {
        return labels(&series[0].1).join(" ⊕ ");
    }
    series.iter().rev().flat_map(|(_, m)| labels(m)).collect::<Vec<_>>().join("/")
}
