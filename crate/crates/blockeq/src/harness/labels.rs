//! Canonical numbering of the simples of the order-400 local algebra.

use crate::ffmat::Matrix;
use crate::modrep::{Algebra, GModule, ModuleError, Result};

/// Λ² of a two-dimensional module: each generator acts by its determinant.
pub fn exterior_square_2(m: &GModule) -> Result<GModule> {
    if m.dim() != 2 {
        return Err(ModuleError::Other(format!("exterior square needs a 2-dimensional module, got {}", m.dim())));
    }
    let f = m.field();
    let gens = m
        .gens()
        .iter()
        .map(|g| {
            let det = f.sub(f.mul(g.get(0, 0), g.get(1, 1)), f.mul(g.get(0, 1), g.get(1, 0)));
            Matrix::from_vec(f, 1, 1, vec![det])
        })
        .collect();
    GModule::new(m.group().clone(), f, gens)
}

/// Order of the simples as T1..T10 for a local algebra with eight 1-dimensional
/// and two 2-dimensional simples, pinned down by the socle series of P(T1):
///
/// - T1 is trivial; T10 is the 2-dimensional simple in the second layer from the
///   top of P(T1) and T9 the other one;
/// - T2, T3, T4 are the 1-dimensional simples of the third layer, in the
///   algebra's own order;
/// - T5 = T4⊗T3, T6 = T2⊗T4, T7 = T3⊗T2 and T8 = Λ²T9.
///
/// Returns old indices in new order; pair it with `Algebra::relabel`.
pub fn canonical_local_order(alg: &Algebra) -> Result<Vec<usize>> {
    let bad = |msg: &str| ModuleError::Other(format!("local labelling: {msg}"));
    let dims: Vec<usize> = alg.simples().iter().map(|s| s.dim()).collect();
    if dims.len() != 10
        || dims.iter().filter(|&&d| d == 1).count() != 8
        || dims.iter().filter(|&&d| d == 2).count() != 2
    {
        return Err(bad("expected eight 1-dimensional and two 2-dimensional simples"));
    }
    let t1 = alg.trivial_index();
    let mut layers: Vec<Vec<usize>> = alg.socle_series(alg.pim(t1)).into_iter().map(|(_, m)| m).collect();
    layers.reverse();
    if layers.len() < 3 {
        return Err(bad("P(T1) has fewer than three socle layers"));
    }
    let two_dim: Vec<usize> = (0..10).filter(|&i| dims[i] == 2 && layers[1][i] > 0).collect();
    let [t10] = two_dim[..] else {
        return Err(bad("second layer of P(T1) must hold exactly one 2-dimensional simple"));
    };
    let t9 = (0..10).find(|&i| dims[i] == 2 && i != t10).unwrap();
    let third: Vec<usize> = (0..10).filter(|&i| dims[i] == 1 && layers[2][i] > 0).collect();
    let [t2, t3, t4] = third[..] else { return Err(bad("third layer of P(T1) must hold three 1-dimensional simples")) };
    let find = |m: GModule| alg.identify_simple(&m).ok_or_else(|| bad("product is not among the simples"));
    let tensor = |a: usize, b: usize| alg.simple(a).tensor(alg.simple(b));
    let t5 = find(tensor(t4, t3)?)?;
    let t6 = find(tensor(t2, t4)?)?;
    let t7 = find(tensor(t3, t2)?)?;
    let t8 = find(exterior_square_2(alg.simple(t9))?)?;
    let order = vec![t1, t2, t3, t4, t5, t6, t7, t8, t9, t10];
    let mut seen = order.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 10 {
        return Err(bad("the construction does not reach ten distinct simples"));
    }
    Ok(order)
}

/// Numeric labels "1".."n".
pub fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Number of group elements whose traces order simples of equal dimension.
const TRACE_SAMPLE: usize = 200;

/// Old indices sorted by dimension, trivial first, then by traces on the first
/// group elements in enumeration order, with "d_k" labels in that order.
pub fn trace_order(alg: &Algebra) -> Result<(Vec<usize>, Vec<String>)> {
    let elems = alg.group().elements()?;
    let sample = &elems[..elems.len().min(TRACE_SAMPLE)];
    let triv = alg.trivial_index();
    let mut keys = Vec::new();
    for (i, s) in alg.simples().iter().enumerate() {
        let traces = sample.iter().map(|g| Ok(s.element_matrix(g)?.trace())).collect::<Result<Vec<u8>>>()?;
        keys.push((s.dim(), i != triv, traces, i));
    }
    keys.sort();
    if keys.windows(2).any(|w| w[0].0 == w[1].0 && w[0].2 == w[1].2) {
        return Err(ModuleError::Other("two simples agree on the sampled traces".into()));
    }
    let order: Vec<usize> = keys.iter().map(|k| k.3).collect();
    let sorted: Vec<GModule> = order.iter().map(|&i| alg.simple(i).clone()).collect();
    Ok((order, crate::modrep::default_labels(&sorted)))
}

/// Relabels an algebra by one of the two schemes.
pub fn apply_labels(alg: &mut Algebra, scheme: crate::harness::LabelScheme) -> Result<()> {
    let (order, labels) = match scheme {
        crate::harness::LabelScheme::Traces => trace_order(alg)?,
        crate::harness::LabelScheme::Omega8plus2 => (canonical_local_order(alg)?, numeric_labels(10)),
    };
    alg.relabel(&order, labels)
}
