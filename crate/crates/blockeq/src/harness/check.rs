//! The end-to-end comparison: perverse complexes on the local side, stable
//! images on the global side, and their term-by-term comparison.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::case::{cycles, field_of, global_group, local_group, tree_of, BroueCase, ExpectSpec, QClassSpec};
use super::labels::apply_labels;
use super::{derive_seed, HarnessError, LabelScheme, Result};
use crate::decomp::{
    green_correspondent, is_projective, is_relatively_projective, non_projective_summands, stably_isomorphic,
    stacked_filtration, trivial_source_modules,
};
use crate::ffmat::Field;
use crate::groups::FinGroup;
use crate::modrep::{Algebra, GModule};
use crate::perverse::{
    alternating_sum, assemble_complex, cohomology_cell, find_p1, format_total, parse_total, perverse_core,
    verify_perversity, PerverseRun,
};
use crate::stableq::{build_tq, extract_mq, final_stab_eq, gamma_map, stable_image, StableSetup, TqBuild};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Perverse side only.
    Local,
    /// Stable side only, per class of subgroups Q.
    Stable,
    /// Both sides and their comparison.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Match,
    Unchecked,
    Inconclusive,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleLine {
    pub label: String,
    pub dim: usize,
    pub pi: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyCell {
    pub degree: i32,
    pub cell: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexLine {
    pub simple: String,
    pub pi: u32,
    /// Terms from the lowest degree up to degree −2, as direct sums of PIMs.
    pub terms: Vec<String>,
    pub cohomology: Vec<CohomologyCell>,
    pub total: String,
    pub expected_total: Option<String>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummandLine {
    pub dim: usize,
    pub principal: bool,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QClassLine {
    pub label: String,
    pub ch_simples: Vec<String>,
    pub ch_blocks: Vec<Vec<String>>,
    pub cg_simples: Vec<String>,
    pub cg_blocks: Vec<Vec<String>>,
    pub summands: Vec<SummandLine>,
    pub mq_dim: usize,
    pub p_dim: usize,
    pub gamma: BTreeMap<String, String>,
    pub e: Vec<String>,
    pub cover_heads: Vec<(String, String)>,
    pub expected_cover_heads: Vec<(String, String)>,
    pub uq_dim: usize,
    pub tq_dim: usize,
    pub uq_candidates: usize,
    pub failures: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub local: String,
    pub global: String,
    /// Dimension of the degree −1 term of the stable image.
    pub image_dim: usize,
    /// Summand dimensions of the chosen degree −1 term on the perverse side.
    pub p1_summands: Vec<usize>,
    pub candidates: usize,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub case: String,
    pub mode: Mode,
    pub seed: u64,
    pub overall: Status,
    pub perversity_ok: Option<bool>,
    pub local_simples: Vec<SimpleLine>,
    pub complexes: Vec<ComplexLine>,
    pub violations: Vec<String>,
    pub q_classes: Vec<QClassLine>,
    pub comparisons: Vec<Comparison>,
}

impl VerdictReport {
    /// 0 for success, 1 for a mismatch, 2 when inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Match | Status::Unchecked => 0,
            Status::Mismatch => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub mode: Mode,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

/// The local algebra with its labels and perversity.
pub struct LocalContext {
    pub field: &'static Field,
    pub h: Arc<FinGroup>,
    pub d: FinGroup,
    pub alg: Algebra,
    /// π per simple of H, 0 outside the principal block.
    pub pi: Vec<u32>,
    /// Character row for each simple, when it has one.
    pub row: Vec<Option<usize>>,
}

fn label_index(alg: &Algebra, kind: &'static str, label: &str) -> Result<usize> {
    alg.index_of_label(label).ok_or_else(|| HarnessError::UnknownLabel { kind, label: label.to_string() })
}

pub fn local_context(case: &BroueCase, seed: u64, budget: usize) -> Result<LocalContext> {
    let file = &case.file;
    let field = field_of(file)?;
    let h = local_group(file)?;
    let d = match &file.local.defect {
        Some(g) => cycles(h.degree(), g)?,
        None => h.sylow(file.ell)?,
    };
    let mut alg = Algebra::compute(h.clone(), field, derive_seed(seed, "local-algebra"), budget)?;
    apply_labels(&mut alg, file.local.labels)?;
    let mut pi = vec![0; alg.num_simples()];
    let mut row = vec![None; alg.num_simples()];
    for (r, c) in case.rows.iter().enumerate() {
        let i = label_index(&alg, "local simple", &c.local)?;
        pi[i] = c.pi.expect("resolved when loading");
        row[i] = Some(r);
    }
    let b0 = &alg.blocks().blocks[alg.blocks().principal];
    if let Some(&i) = b0.iter().find(|&&i| row[i].is_none()) {
        return Err(HarnessError::Validation(format!("local simple {} has no character row", alg.label(i))));
    }
    Ok(LocalContext { field, h, d, alg, pi, row })
}

fn pim_sum(alg: &Algebra, mult: &[usize]) -> String {
    let parts: Vec<String> =
        mult.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(format!("P({})", alg.label(i))).take(c)).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

/// Cohomology multiplicities keyed by j, the negated degree.
pub fn cohomology_table(alg: &Algebra, run: &PerverseRun) -> Vec<(i32, Vec<usize>)> {
    run.cohomology_by_degree().iter().map(|(d, h)| (-d, alg.multiplicities(h))).collect()
}

/// Runs every local complex of the principal block, in simple order.
pub fn run_local(ctx: &LocalContext, case: &BroueCase) -> Result<(Vec<PerverseRun>, Vec<ComplexLine>, Vec<String>)> {
    let alg = &ctx.alg;
    let mut runs = Vec::new();
    let mut lines = Vec::new();
    let mut tables = Vec::new();
    let simples: Vec<usize> = (0..alg.num_simples()).filter(|&i| ctx.row[i].is_some()).collect();
    for &t in &simples {
        let run = perverse_core(alg, t, &ctx.pi)?;
        let table = cohomology_table(alg, &run);
        let a = alternating_sum(&table, &ctx.pi);
        let total = format_total(t, &a, alg.labels());
        let spec = &case.file.characters[ctx.row[t].unwrap()];
        let status = match &spec.total {
            None => Status::Unchecked,
            Some(e) if parse_total(e, alg.labels())? == a => Status::Match,
            Some(_) => Status::Mismatch,
        };
        let terms = run.term_types(alg).iter().map(|m| pim_sum(alg, m)).collect();
        let cohomology = run
            .cohomology_by_degree()
            .iter()
            .map(|(d, h)| CohomologyCell { degree: *d, cell: cohomology_cell(alg, h) })
            .collect();
        lines.push(ComplexLine {
            simple: alg.label(t).to_string(),
            pi: ctx.pi[t],
            terms,
            cohomology,
            total,
            expected_total: spec.total.clone(),
            status,
        });
        tables.push(table);
        runs.push(run);
    }
    // verify_perversity indexes complexes by simple, so pad simples without a complex
    let mut full = vec![Vec::new(); alg.num_simples()];
    for (&t, table) in simples.iter().zip(tables) {
        full[t] = table;
    }
    let violations = verify_perversity(&full, &ctx.pi)
        .into_iter()
        .filter(|v| ctx.row[v.complex].is_some())
        .map(|v| {
            format!(
                "X_{}: H^-{} contains {} x{} outside the allowed range",
                alg.label(v.complex),
                v.j,
                alg.label(v.factor),
                v.multiplicity
            )
        })
        .collect();
    Ok((runs, lines, violations))
}

/// Stable-side data for one class of subgroups Q.
pub struct QClassRun {
    pub line: QClassLine,
    pub setup: StableSetup,
    pub tq: Option<TqBuild>,
}

fn block_labels(alg: &Algebra) -> Vec<Vec<String>> {
    alg.blocks().blocks.iter().map(|b| b.iter().map(|&i| alg.label(i).to_string()).collect()).collect()
}

fn compare_expect(exp: &ExpectSpec, line: &QClassLine, failures: &mut Vec<String>) {
    if let Some(d) = &exp.summand_dims {
        let got: Vec<usize> = line.summands.iter().map(|s| s.dim).collect();
        if &got != d {
            failures.push(format!("summand dimensions {got:?}, expected {d:?}"));
        }
    }
    if let Some(p) = exp.projective_part {
        if line.p_dim != p {
            failures.push(format!("projective part of dimension {}, expected {p}", line.p_dim));
        }
    }
    if let Some(g) = &exp.gamma {
        if g != &line.gamma {
            failures.push(format!("gamma {:?}, expected {g:?}", line.gamma));
        }
    }
    if let Some(e) = &exp.e {
        if e != &line.e {
            failures.push(format!("E = {:?}, expected {e:?}", line.e));
        }
    }
    if let Some(u) = exp.uq_dim {
        if line.uq_dim != u {
            failures.push(format!("dim U_Q = {}, expected {u}", line.uq_dim));
        }
    }
}

/// Builds N_Δ, M_Q, γ, E and T_Q for one class; `linked` supplies G and H when
/// the class lives inside them.
pub fn run_q_class(
    spec: &QClassSpec,
    field: &'static Field,
    linked: Option<(&FinGroup, &FinGroup)>,
    seed: u64,
    budget: usize,
) -> Result<QClassRun> {
    let tag = |s: &str| derive_seed(seed, &format!("{}/{s}", spec.label));
    let (ng, nh, q) = match (&spec.model, linked) {
        (Some(m), _) => {
            let ng = cycles(m.degree, &m.ng)?;
            let q = cycles(m.degree, &spec.generators)?;
            let nh = ng.normalizer(&cycles(m.degree, &m.nh_normalizer_of)?)?;
            (ng, nh, q)
        }
        (None, Some((g, h))) => {
            let q = cycles(h.degree(), &spec.generators)?;
            (g.normalizer(&q)?, h.normalizer(&q)?, q)
        }
        (None, None) => return Err(HarnessError::MissingGlobal),
    };
    let setup = StableSetup::new(Arc::new(ng), &nh, Arc::new(q), field, tag("setup"), budget)?;
    let mut alg_ch = Algebra::compute(setup.bar_ch.clone(), field, tag("ch"), budget)?;
    apply_labels(&mut alg_ch, LabelScheme::Traces)?;
    let mut alg_cg = Algebra::compute(setup.bar_cg.clone(), field, tag("cg"), budget)?;
    apply_labels(&mut alg_cg, LabelScheme::Traces)?;
    let mut rng = ChaCha8Rng::seed_from_u64(tag("mq"));
    let mq = extract_mq(&setup, &alg_ch, &alg_cg, &mut rng)?;
    let gamma = gamma_map(&setup, &alg_ch, &alg_cg)?;
    let tree = tree_of(spec.tree.as_ref().expect("validated"))?;
    let triv = alg_cg.label(alg_cg.trivial_index()).to_string();
    let e_labels = tree.e_set(&triv)?;
    let e: Vec<usize> = e_labels.iter().map(|l| label_index(&alg_cg, "Brauer tree edge", l)).collect::<Result<_>>()?;
    let alg_nd = Algebra::compute(setup.n_delta.clone(), field, tag("n_delta"), budget)?;
    let mut failures = Vec::new();
    let tq = match build_tq(&setup, &mq, &e, &gamma, &alg_ch, &alg_cg, &alg_nd) {
        Ok(t) => Some(t),
        Err(err) => {
            failures.push(err.to_string());
            None
        }
    };
    let pair = |(w, v): (usize, usize)| (alg_ch.label(w).to_string(), alg_cg.label(v).to_string());
    let mut line = QClassLine {
        label: spec.label.clone(),
        ch_simples: alg_ch.labels().to_vec(),
        ch_blocks: block_labels(&alg_ch),
        cg_simples: alg_cg.labels().to_vec(),
        cg_blocks: block_labels(&alg_cg),
        summands: mq
            .summands
            .iter()
            .map(|&(dim, principal, projective)| SummandLine { dim, principal, projective })
            .collect(),
        mq_dim: mq.m_q.dim(),
        p_dim: mq.p.dim(),
        gamma: gamma.iter().map(|&(v, w)| (alg_cg.label(v).to_string(), alg_ch.label(w).to_string())).collect(),
        e: e_labels,
        cover_heads: tq.iter().flat_map(|t| t.cover_heads.iter().map(|&x| pair(x))).collect(),
        expected_cover_heads: tq.iter().flat_map(|t| t.expected_cover_heads.iter().map(|&x| pair(x))).collect(),
        uq_dim: tq.as_ref().map_or(0, |t| t.u_q.dim()),
        tq_dim: tq.as_ref().map_or(0, |t| t.t_q.dim()),
        uq_candidates: tq.as_ref().map_or(0, |t| t.candidates.len()),
        failures: Vec::new(),
        status: Status::Match,
    };
    if let Some(t) = &tq {
        if t.cover_heads != t.expected_cover_heads {
            failures.push("heads of the projective cover of M_Q differ from the pairs (γ(V), V*)".into());
        }
    }
    if let Some(exp) = &spec.expect {
        compare_expect(exp, &line, &mut failures);
    }
    line.status = if failures.is_empty() { Status::Match } else { Status::Mismatch };
    line.failures = failures;
    Ok(QClassRun { line, setup, tq })
}

/// Global algebra, labelled by traces.
pub fn global_algebra(case: &BroueCase, seed: u64, budget: usize) -> Result<Algebra> {
    let g = global_group(&case.file)?;
    let mut alg = Algebra::compute(g, field_of(&case.file)?, derive_seed(seed, "global-algebra"), budget)?;
    apply_labels(&mut alg, LabelScheme::Traces)?;
    Ok(alg)
}

/// A summand with a stacked filtration by trivial-source modules that is not
/// relatively projective with respect to any Q: the comparison cannot decide it.
fn stacked_not_plain(
    alg: &Algebra,
    m: &GModule,
    sources: &[Vec<GModule>],
    qs: &[FinGroup],
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    for x in non_projective_summands(alg, m, rng)? {
        let stacked = sources.iter().any(|ts| stacked_filtration(alg, &x, ts, rng).is_some());
        if !stacked {
            continue;
        }
        let mut plain = false;
        for q in qs {
            if is_relatively_projective(&x, q, rng)? {
                plain = true;
                break;
            }
        }
        if !plain {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn broue_check(case: &BroueCase, opts: CheckOptions) -> Result<VerdictReport> {
    let file = &case.file;
    let seed = opts.seed.unwrap_or(file.seed);
    let budget = opts.budget.unwrap_or(file.budget);
    let mut report = VerdictReport {
        case: file.name.clone(),
        mode: opts.mode,
        seed,
        overall: Status::Match,
        perversity_ok: None,
        local_simples: vec![],
        complexes: vec![],
        violations: vec![],
        q_classes: vec![],
        comparisons: vec![],
    };
    if opts.mode == Mode::Full && file.global.is_none() {
        return Err(HarnessError::MissingGlobal);
    }

    if opts.mode == Mode::Stable {
        let linked = if file.global.is_some() { Some((global_group(file)?, local_group(file)?)) } else { None };
        for spec in &file.q_class {
            let l = linked.as_ref().map(|(g, h)| (g.as_ref(), h.as_ref()));
            report.q_classes.push(run_q_class(spec, field_of(file)?, l, seed, budget)?.line);
        }
        report.overall = overall(&report);
        return Ok(report);
    }

    let ctx = local_context(case, seed, budget)?;
    report.local_simples = (0..ctx.alg.num_simples())
        .map(|i| SimpleLine {
            label: ctx.alg.label(i).to_string(),
            dim: ctx.alg.simple(i).dim(),
            pi: ctx.row[i].map(|_| ctx.pi[i]),
        })
        .collect();
    let (runs, lines, violations) = run_local(&ctx, case)?;
    report.complexes = lines;
    report.perversity_ok = Some(violations.is_empty());
    report.violations = violations;

    if opts.mode == Mode::Full {
        full_comparison(case, &ctx, &runs, seed, budget, &mut report)?;
    }
    report.overall = overall(&report);
    Ok(report)
}

fn overall(r: &VerdictReport) -> Status {
    let statuses = r
        .complexes
        .iter()
        .map(|c| c.status)
        .chain(r.q_classes.iter().map(|q| q.status))
        .chain(r.comparisons.iter().map(|c| c.status));
    let worst = statuses.max().unwrap_or(Status::Match);
    if r.perversity_ok == Some(false) {
        return Status::Mismatch;
    }
    match worst {
        Status::Unchecked => Status::Match,
        s => s,
    }
}

fn full_comparison(
    case: &BroueCase,
    ctx: &LocalContext,
    runs: &[PerverseRun],
    seed: u64,
    budget: usize,
    report: &mut VerdictReport,
) -> Result<()> {
    let file = &case.file;
    let alg_h = &ctx.alg;
    let g = global_group(file)?;
    let alg_g = global_algebra(case, seed, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "compare"));

    let mut classes = Vec::new();
    let mut qs = Vec::new();
    let mut sources = Vec::new();
    for spec in &file.q_class {
        if spec.model.is_some() {
            return Err(HarnessError::Validation(format!(
                "Q-class {} is a stand-alone model; full mode needs classes inside G and H",
                spec.label
            )));
        }
        let run = run_q_class(spec, ctx.field, Some((&g, &ctx.h)), seed, budget)?;
        let q = cycles(ctx.h.degree(), &spec.generators)?;
        sources.push(trivial_source_modules(alg_h, &q, &mut rng)?);
        qs.push(q);
        report.q_classes.push(run.line.clone());
        classes.push(run);
    }
    let mut allowed: Vec<usize> = sources.iter().flatten().map(|m| m.dim()).collect();
    allowed.push(ctx.d.order()?);
    allowed.sort_unstable();
    allowed.dedup();
    let alg_ngs = classes
        .iter()
        .map(|c| {
            let s = derive_seed(seed, &format!("ng/{}", c.line.label));
            Algebra::compute(c.setup.ng.clone(), ctx.field, s, budget)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let sylow_h = ctx.h.sylow(file.ell)?;

    for run in runs {
        let t = run.simple;
        let row = &case.rows[ctx.row[t].unwrap()];
        let s = label_index(&alg_g, "global simple", &row.global)?;
        let simple = alg_g.simple(s);
        let green = green_correspondent(simple, ctx.h.clone(), &ctx.d, &mut rng, budget)?;
        let mut per_class = Vec::new();
        for (c, alg_ng) in classes.iter().zip(&alg_ngs) {
            let t_q = match &c.tq {
                Some(tq) => tq.t_q.clone(),
                None => {
                    return Err(HarnessError::Validation(format!("Q-class {}: T_Q could not be built", c.line.label)))
                }
            };
            let res = simple.restrict(c.setup.ng.clone())?;
            per_class.push(final_stab_eq(&c.setup, &t_q, &res, alg_ng, false, &mut rng)?);
        }
        let image = stable_image(alg_h, &per_class, green, &mut rng)?;
        let mut cmp = Comparison {
            local: alg_h.label(t).to_string(),
            global: row.global.clone(),
            image_dim: image.minus_one.dim(),
            p1_summands: vec![],
            candidates: 0,
            status: Status::Mismatch,
            note: String::new(),
        };
        if run.is_trivial() {
            cmp.candidates = 1;
            let zero_ok = alg_h.isomorphism(alg_h.simple(t), &image.zero, &mut rng).is_some();
            let minus_ok = is_projective(&image.minus_one, &sylow_h)?;
            cmp.status = if zero_ok && minus_ok { Status::Match } else { Status::Mismatch };
            cmp.note = match (zero_ok, minus_ok) {
                (true, true) => "complex concentrated in degree 0".into(),
                (false, _) => "degree 0 term differs from the Green correspondent".into(),
                (true, false) => "stable image has a non-projective degree -1 term".into(),
            };
        } else {
            let (m1, _) = run.m1().expect("nontrivial run has a kernel");
            let cands = find_p1(alg_h, &m1, &image.zero, &sylow_h, &allowed, &sources, file.p1.ext_limit, &mut rng)?;
            cmp.candidates = cands.len();
            let mut undecided = false;
            for cand in &cands {
                if let Err(e) = assemble_complex(alg_h, run, cand, &image.zero, &mut rng) {
                    cmp.note = format!("candidate rejected: {e}");
                    continue;
                }
                if stably_isomorphic(alg_h, &cand.module, &image.minus_one, &mut rng)? {
                    cmp.status = Status::Match;
                    cmp.p1_summands = cand.summands.iter().map(|m| m.dim()).collect();
                    cmp.note = "degree -1 terms stably isomorphic".into();
                    break;
                }
                if stacked_not_plain(alg_h, &cand.module, &sources, &qs, &mut rng)? {
                    undecided = true;
                }
            }
            if cmp.status != Status::Match {
                if cands.is_empty() {
                    cmp.note = "no extension of C_S by M_1 passes the summand filter".into();
                } else if undecided {
                    cmp.status = Status::Inconclusive;
                    cmp.note = "a summand is stacked but not plainly relatively projective".into();
                } else {
                    cmp.p1_summands = cands[0].summands.iter().map(|m| m.dim()).collect();
                    cmp.note = "no candidate is stably isomorphic to the stable image".into();
                }
            }
        }
        report.comparisons.push(cmp);
    }
    Ok(())
}
