use rand::Rng;

use crate::decomp::{indecomposable_summands, is_projective, stacked_filtration};
use crate::ffmat::{Field, Matrix, Subspace};
use crate::groups::FinGroup;
use crate::modrep::{Algebra, GModule, ModuleError};

use super::{BoundedComplex, PerverseError, PerverseRun, Result};

/// One candidate for the degree −1 term: an extension E of C_S by M₁.
#[derive(Clone, Debug)]
pub struct P1Candidate {
    pub module: GModule,
    /// M₁ ↪ E
    pub m1_incl: Matrix,
    /// Coordinates in the Ext¹ basis; empty for the split extension.
    pub cocycle: Vec<u8>,
    pub summands: Vec<GModule>,
    /// Every non-projective summand has a filtration by trivial-source
    /// modules of a single vertex class.
    pub certified: bool,
}

/// Representatives of the nonzero vectors of F^d up to scalars: first nonzero entry 1.
pub fn projective_points(field: &'static Field, d: usize) -> Vec<Vec<u8>> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let count = q.pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u8; d];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (code % q) as u8;
                code /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Extensions 0 → M₁ → E → C_S → 0 up to isomorphism whose indecomposable
/// summands are projective or have dimension divisible by one of `allowed_dims`.
///
/// Scalar multiples of a cocycle give isomorphic extensions, so one vector per
/// line of Ext¹ is tried; the split extension is used only when Ext¹ = 0.
/// `trivial_sources` holds, per class of vertices, the trivial-source modules
/// used to certify the survivors.
#[allow(clippy::too_many_arguments)]
pub fn find_p1<R: Rng>(
    alg: &Algebra,
    m1: &GModule,
    c_s: &GModule,
    sylow: &FinGroup,
    allowed_dims: &[usize],
    trivial_sources: &[Vec<GModule>],
    limit: usize,
    rng: &mut R,
) -> Result<Vec<P1Candidate>> {
    let f = alg.field();
    let ext = alg.ext1(c_s, m1)?;
    let mut extensions: Vec<(GModule, Matrix, Vec<u8>)> = Vec::new();
    if ext.dim() == 0 {
        let e = GModule::direct_sum(&[m1, c_s])?;
        let incl =
            Matrix::hstack(f, m1.dim(), &[&Matrix::identity(f, m1.dim()), &Matrix::zero(f, m1.dim(), c_s.dim())]);
        extensions.push((e, incl, vec![]));
    } else {
        let points = projective_points(f, ext.dim());
        if points.len() > limit {
            return Err(ModuleError::Budget(limit, "lines of the Ext space").into());
        }
        for p in points {
            let mut v = Matrix::zero(f, ext.omega.dim(), m1.dim());
            for (c, z) in p.iter().zip(&ext.cocycles) {
                v.add_assign_scaled(z, *c);
            }
            let (e, incl) = ext.extension(m1, &v)?;
            if !extensions.iter().any(|(o, _, _)| alg.isomorphism(o, &e, rng).is_some()) {
                extensions.push((e, incl, p));
            }
        }
    }
    let mut out = Vec::new();
    for (e, incl, cocycle) in extensions {
        let dec = indecomposable_summands(&e, rng, alg.budget())?;
        let mut ok = true;
        let mut certified = true;
        let mut summands = Vec::new();
        for s in dec.summands {
            let proj = is_projective(&s.module, sylow)?;
            if !proj && !allowed_dims.iter().any(|&d| d > 0 && s.module.dim() % d == 0) {
                ok = false;
                break;
            }
            if !proj && !trivial_sources.iter().any(|ts| stacked_filtration(alg, &s.module, ts, rng).is_some()) {
                certified = false;
            }
            summands.push(s.module);
        }
        if ok {
            out.push(P1Candidate { module: e, m1_incl: incl, cocycle, summands, certified });
        }
    }
    Ok(out)
}

/// The full complex P_n → … → P_2 → E → E/M₁ with M₁ carried along the
/// candidate's inclusion; E/M₁ must be isomorphic to `c_s`.
pub fn assemble_complex<R: Rng>(
    alg: &Algebra,
    run: &PerverseRun,
    cand: &P1Candidate,
    c_s: &GModule,
    rng: &mut R,
) -> Result<BoundedComplex> {
    if run.is_trivial() {
        return Ok(BoundedComplex::concentrated(run.cohomology[0].clone()));
    }
    let n = run.pi as usize;
    let e = &cand.module;
    let m1_img = Subspace::from_matrix(&cand.m1_incl);
    let top = e.quotient(&m1_img);
    if alg.isomorphism(&top, c_s, rng).is_none() {
        return Err(PerverseError::WrongQuotient);
    }
    let mut terms: Vec<GModule> = run.terms().to_vec();
    let mut diffs: Vec<Matrix> = run.maps[..n.saturating_sub(2)].to_vec();
    if n >= 2 {
        let k = &run.kernels[n - 1];
        let d = &run.maps[n - 2];
        let rows: Vec<Vec<u8>> = d.rows().map(|r| k.coords(r)).collect();
        let into_m1 = Matrix::from_rows(alg.field(), k.dim(), &rows);
        diffs.push(into_m1.mul(&cand.m1_incl));
    }
    terms.push(e.clone());
    diffs.push(e.quotient_map(&m1_img));
    terms.push(top);
    BoundedComplex::new(-(n as i32), terms, diffs)
}
