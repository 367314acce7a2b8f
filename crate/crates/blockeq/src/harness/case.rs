//! Case files: TOML descriptions of one block comparison.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{HarnessError, Result};
use crate::ffmat::{prime_power, Field, Matrix};
use crate::groups::{affine_group, FinGroup};
use crate::perversity::{perversity_value, CharacterRow, DegreePolynomial, PerversityQuery};
use crate::stableq::{BrauerEdge, BrauerTree};

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub name: String,
    pub ell: usize,
    /// Order of the coefficient field, a power of ell.
    pub field: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: usize,
    pub local: LocalSpec,
    pub global: Option<GlobalSpec>,
    pub perversity: Option<PerversitySpec>,
    #[serde(default)]
    pub characters: Vec<CharacterSpec>,
    #[serde(default)]
    pub q_class: Vec<QClassSpec>,
    #[serde(default)]
    pub p1: P1Spec,
}

fn default_seed() -> u64 {
    1
}

fn default_budget() -> usize {
    200
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum LabelScheme {
    /// Order by dimension, trivial first, then by traces; labels "d_k".
    Traces,
    /// The numbering T1..T10 of the order-400 local algebra; labels "1".."10".
    Omega8plus2,
}

/// The local group H, by permutation generators or as an affine group over GF(p).
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LocalSpec {
    pub labels: LabelScheme,
    pub degree: Option<usize>,
    pub generators: Option<Vec<String>>,
    pub affine: Option<AffineSpec>,
    /// Generators of the defect group D; a Sylow subgroup of H when absent.
    pub defect: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AffineSpec {
    pub p: usize,
    /// Linear parts as integer matrices; translations by all of GF(p)^n are added.
    pub linear: Vec<Vec<Vec<i64>>>,
}

/// The global group G on the same points as H.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GlobalSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PerversitySpec {
    pub kappa: i64,
    pub d: i64,
    /// Prime power at which degree polynomials are evaluated.
    pub q: i64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub label: String,
    pub poly: Option<String>,
    pub global: String,
    pub local: String,
    /// Explicit perversity; must agree with the polynomial when both are given.
    pub pi: Option<u32>,
    /// Expected alternating sum of the cohomology of the local complex.
    pub total: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QClassSpec {
    pub label: String,
    /// Generators of Q, in the local permutation representation unless `model` is set.
    pub generators: Vec<String>,
    pub tree: Option<TreeSpec>,
    /// Stand-alone N_G(Q) and N_H(Q), not embedded in G or H.
    pub model: Option<ModelSpec>,
    pub expect: Option<ExpectSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TreeSpec {
    /// A path of edge labels ending at the exceptional vertex.
    pub path: Option<Vec<String>>,
    pub vertices: Option<usize>,
    pub exceptional: Option<usize>,
    pub edges: Option<Vec<(String, usize, usize)>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub degree: usize,
    pub ng: Vec<String>,
    /// N_H(Q) is the normaliser in N_G(Q) of the group these generate.
    pub nh_normalizer_of: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExpectSpec {
    pub summand_dims: Option<Vec<usize>>,
    pub projective_part: Option<usize>,
    pub gamma: Option<BTreeMap<String, String>>,
    pub e: Option<Vec<String>>,
    pub uq_dim: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct P1Spec {
    /// Bound on the number of lines of Ext¹ tried.
    pub ext_limit: usize,
}

impl Default for P1Spec {
    fn default() -> P1Spec {
        P1Spec { ext_limit: 2000 }
    }
}

/// A validated case with perversities resolved per character row.
#[derive(Clone, Debug)]
pub struct BroueCase {
    pub file: CaseFile,
    pub rows: Vec<CharacterRow>,
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Validation(msg.into())
}

pub fn load_case(path: &Path) -> Result<BroueCase> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    parse_case(&text).map_err(|e| match e {
        HarnessError::Parse(m) => HarnessError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_case(text: &str) -> Result<BroueCase> {
    let file: CaseFile = toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))?;
    validate(file)
}

fn unique<'a>(what: &str, items: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for x in items {
        if !seen.insert(x) {
            return Err(invalid(format!("{what} {x:?} appears twice; the bijection must be one-to-one")));
        }
    }
    Ok(())
}

fn validate(file: CaseFile) -> Result<BroueCase> {
    match prime_power(file.field) {
        Some((p, _)) if p == file.ell => {}
        _ => return Err(invalid(format!("field order {} is not a power of ell = {}", file.field, file.ell))),
    }
    let l = &file.local;
    if l.generators.is_some() == l.affine.is_some() {
        return Err(invalid("local group needs exactly one of `generators` and `affine`"));
    }
    if l.generators.is_some() && l.degree.is_none() {
        return Err(invalid("local generators need a `degree`"));
    }
    unique("character", file.characters.iter().map(|c| c.label.as_str()))?;
    unique("local simple", file.characters.iter().map(|c| c.local.as_str()))?;
    unique("global simple", file.characters.iter().map(|c| c.global.as_str()))?;
    unique("Q-class", file.q_class.iter().map(|q| q.label.as_str()))?;

    let query = match &file.perversity {
        Some(p) => Some((PerversityQuery::new(p.kappa, p.d)?, p.q)),
        None => None,
    };
    let mut rows = Vec::new();
    for c in &file.characters {
        let poly = match &c.poly {
            Some(t) => DegreePolynomial::parse(t)?,
            None => DegreePolynomial::one(),
        };
        let computed = match (&c.poly, query) {
            (Some(_), Some((q, _))) => Some(perversity_value(&poly, q)?),
            _ => None,
        };
        let pi = match (c.pi, computed) {
            (Some(a), Some(b)) if a != b => {
                return Err(invalid(format!("character {}: pi = {a} but the polynomial gives {b}", c.label)))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(invalid(format!("character {}: no pi and no polynomial with a perversity query", c.label)))
            }
        };
        rows.push(CharacterRow {
            label: c.label.clone(),
            poly,
            pi: Some(pi),
            global: c.global.clone(),
            local: c.local.clone(),
        });
    }
    for q in &file.q_class {
        let tree = q.tree.as_ref().ok_or_else(|| invalid(format!("Q-class {} has no Brauer tree", q.label)))?;
        tree_of(tree).map_err(|e| invalid(format!("Q-class {}: {e}", q.label)))?;
        if q.model.is_none() && file.global.is_none() {
            return Err(invalid(format!("Q-class {} needs either a `model` or global group data", q.label)));
        }
    }
    // group data must parse even when it is not used by the chosen mode
    local_group(&file)?;
    if let Some(g) = &file.global {
        FinGroup::from_cycles(g.degree, &g.generators.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(BroueCase { file, rows })
}

pub fn tree_of(spec: &TreeSpec) -> Result<BrauerTree> {
    match spec {
        TreeSpec { path: Some(p), vertices: None, exceptional: None, edges: None } => {
            Ok(BrauerTree::path(&p.iter().map(String::as_str).collect::<Vec<_>>())?)
        }
        TreeSpec { path: None, vertices: Some(v), exceptional: Some(x), edges: Some(e) } => Ok(BrauerTree::new(
            *v,
            *x,
            e.iter().map(|(l, a, b)| BrauerEdge { label: l.clone(), ends: (*a, *b) }).collect(),
        )?),
        _ => Err(invalid("a Brauer tree is either `path` or all of `vertices`, `exceptional`, `edges`")),
    }
}

pub fn cycles(degree: usize, gens: &[String]) -> Result<FinGroup> {
    Ok(FinGroup::from_cycles(degree, &gens.iter().map(String::as_str).collect::<Vec<_>>())?)
}

pub fn field_of(file: &CaseFile) -> Result<&'static Field> {
    Ok(Field::get(file.field)?)
}

pub fn local_group(file: &CaseFile) -> Result<Arc<FinGroup>> {
    let l = &file.local;
    if let Some(a) = &l.affine {
        let f = Field::get(a.p)?;
        let mats = a
            .linear
            .iter()
            .map(|m| {
                let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(invalid("affine linear parts must be square"));
                }
                Ok(Matrix::from_ints(f, &rows))
            })
            .collect::<Result<Vec<_>>>()?;
        if mats.is_empty() {
            return Err(invalid("affine group needs at least one linear part"));
        }
        return Ok(Arc::new(affine_group(&mats)));
    }
    let gens = l.generators.as_ref().expect("validated");
    Ok(Arc::new(cycles(l.degree.expect("validated"), gens)?))
}

pub fn global_group(file: &CaseFile) -> Result<Arc<FinGroup>> {
    let g = file.global.as_ref().ok_or(HarnessError::MissingGlobal)?;
    let group = cycles(g.degree, &g.generators)?;
    Ok(Arc::new(group))
}
