//! Invariant checks on small groups against brute-force oracles; each returns
//! a description of the first violation.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockeq::decomp::indecomposable_summands;
use blockeq::ffmat::{Field, Matrix, Subspace};
use blockeq::groups::FinGroup;
use blockeq::modrep::{is_isomorphic, Algebra, GModule};
use blockeq::perverse::perverse_core;

pub type Check = Result<(), String>;

/// A5 and A4 = N(V4) over GF(4).
pub struct Small {
    pub g: Algebra,
    pub h: Algebra,
}

pub fn small(seed: u64) -> Small {
    let f = Field::get(4).unwrap();
    let g = Arc::new(FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap());
    let h = Arc::new(FinGroup::from_cycles(5, &["(1,2)(3,4)", "(1,2,3)"]).unwrap());
    Small { g: Algebra::compute(g, f, seed, 200).unwrap(), h: Algebra::compute(h, f, seed + 100, 200).unwrap() }
}

/// dim Hom(M, N) as the nullity of X ↦ (A_g X − X B_g) over all generators.
pub fn naive_hom_dim(m: &GModule, n: &GModule) -> usize {
    let f = m.field();
    let (a, b) = (m.dim(), n.dim());
    let mut rows = Subspace::new(f, a * b);
    for (x, y) in m.gens().iter().zip(n.gens()) {
        let left = x.kronecker(&Matrix::identity(f, b)).unwrap();
        let right = Matrix::identity(f, a).kronecker(&y.transpose()).unwrap();
        for r in left.sub(&right).rows() {
            rows.insert(r);
        }
    }
    a * b - rows.dim()
}

/// Indecomposables of `alg`: simples, PIMs and PIMs modulo their socle.
pub fn indecomposables(alg: &Algebra) -> Vec<GModule> {
    let mut out = Vec::new();
    for i in 0..alg.num_simples() {
        out.push(alg.simple(i).clone());
        let p = alg.pim(i);
        out.push(p.clone());
        if p.dim() > alg.simple(i).dim() {
            out.push(p.quotient(&alg.socle(p)));
        }
    }
    out
}

pub fn random_basis(m: &GModule, rng: &mut ChaCha8Rng) -> GModule {
    loop {
        let b = Matrix::random(m.field(), m.dim(), m.dim(), rng);
        if b.is_invertible() {
            return m.conjugate_basis(&b);
        }
    }
}

/// Direct sum of the picked modules in a random basis.
pub fn disguised_sum(parts: &[&GModule], seed: u64) -> GModule {
    random_basis(&GModule::direct_sum(parts).unwrap(), &mut ChaCha8Rng::seed_from_u64(seed))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Hom_G(Ind M, N) ≅ Hom_H(M, Res N) and Hom_G(N, Ind M) ≅ Hom_H(Res N, M).
pub fn frobenius(s: &Small, m: &GModule, n: &GModule) -> Check {
    let induced = m.induce(s.g.group().clone()).unwrap();
    let restricted = n.restrict(s.h.group().clone()).unwrap();
    let (a, b) = (naive_hom_dim(&induced, n), naive_hom_dim(m, &restricted));
    ensure(a == b, || format!("Hom(Ind M, N) = {a}, Hom(M, Res N) = {b}"))?;
    let (a, b) = (naive_hom_dim(n, &induced), naive_hom_dim(&restricted, m));
    ensure(a == b, || format!("Hom(N, Ind M) = {a}, Hom(Res N, M) = {b}"))
}

/// dim Hom(P_i, M) = [M : S_i] dim End(S_i).
pub fn pim_multiplicity(alg: &Algebra, m: &GModule) -> Check {
    let mult = alg.multiplicities(m);
    for i in 0..alg.num_simples() {
        let end = naive_hom_dim(alg.simple(i), alg.simple(i));
        let h = naive_hom_dim(alg.pim(i), m);
        ensure(h == mult[i] * end, || format!("Hom(P{i}, M) = {h}, [M : S{i}] = {}", mult[i]))?;
    }
    Ok(())
}

/// Every seed recovers the indecomposables the module was built from.
pub fn krull_schmidt(parts: &[&GModule], m: &GModule, seeds: &[u64]) -> Check {
    let mut want: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    want.sort();
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let run: Vec<GModule> =
            indecomposable_summands(m, &mut rng, 200).unwrap().summands.into_iter().map(|x| x.module).collect();
        let mut dims: Vec<usize> = run.iter().map(|x| x.dim()).collect();
        dims.sort();
        ensure(dims == want, || format!("seed {seed}: summand dims {dims:?}, built from {want:?}"))?;
        let mut used = vec![false; run.len()];
        for p in parts {
            let k = (0..run.len()).find(|&k| !used[k] && is_isomorphic(p, &run[k], &mut rng).is_some());
            ensure(k.is_some(), || format!("seed {seed}: a summand of dimension {} is missing", p.dim()))?;
            used[k.unwrap()] = true;
        }
    }
    Ok(())
}

/// Socle layers of M* are the duals of the radical layers of M.
pub fn socle_radical_duality(alg: &Algebra, m: &GModule) -> Check {
    let dual_of: Vec<usize> =
        (0..alg.num_simples()).map(|i| alg.identify_simple(&alg.simple(i).dual()).unwrap()).collect();
    let soc: Vec<Vec<usize>> = alg.socle_series(&m.dual()).into_iter().map(|(_, x)| x).collect();
    let rad: Vec<Vec<usize>> = alg
        .radical_series(m)
        .into_iter()
        .map(|(_, x)| {
            let mut d = vec![0; x.len()];
            for (i, &c) in x.iter().enumerate() {
                d[dual_of[i]] += c;
            }
            d
        })
        .collect();
    ensure(soc == rad, || format!("socle layers of M* {soc:?}, dual radical layers {rad:?}"))
}

/// Consecutive maps of the perverse run compose to zero and images lie in kernels.
pub fn d_squared(alg: &Algebra, pi: &[u32], t: usize) -> Check {
    let run = perverse_core(alg, t, pi).map_err(|e| e.to_string())?;
    for (r, w) in run.maps.windows(2).enumerate() {
        ensure(w[0].mul(&w[1]).is_zero(), || format!("d∘d ≠ 0 at step {r} for π {pi:?}, simple {t}"))?;
    }
    for (r, img) in run.images.iter().enumerate() {
        ensure(run.kernels[r + 1].contains_space(img), || format!("image not in kernel at step {r}"))?;
    }
    Ok(())
}

/// W = preImageXRadical(M, V, X) contains V, W/V has factors in X only, and
/// M/W has no socle factor in X.
pub fn pre_image_maximal(alg: &Algebra, m: &GModule, v: &Subspace, x: &[usize]) -> Check {
    let w = alg.pre_image_x_radical(m, v, x);
    ensure(w.contains_space(v) && m.is_submodule(&w), || "W is not a submodule containing V".into())?;
    let (mw, mv) = (alg.multiplicities(&m.submodule(&w)), alg.multiplicities(&m.submodule(v)));
    for i in (0..alg.num_simples()).filter(|i| !x.contains(i)) {
        ensure(mw[i] == mv[i], || format!("W/V has factor {i} outside X"))?;
    }
    let soc = alg.socle_multiplicities(&m.quotient(&w));
    for &i in x {
        ensure(soc[i] == 0, || format!("M/W has factor {i} of X in its socle; W is not maximal"))?;
    }
    Ok(())
}
