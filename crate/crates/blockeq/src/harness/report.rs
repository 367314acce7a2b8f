//! Text and structured renderings of a verdict report.

use std::fmt::Write;

use super::check::{Status, VerdictReport};
use super::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned tables.
    Text,
    /// TOML, readable back with `parse_report`.
    Structured,
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Match => "MATCH",
        Status::Unchecked => "-",
        Status::Inconclusive => "INCONCLUSIVE",
        Status::Mismatch => "MISMATCH",
    }
}

pub fn emit_report(r: &VerdictReport, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(text_report(r)),
        Format::Structured => toml::to_string(r).map_err(|e| HarnessError::Io(format!("cannot serialise report: {e}"))),
    }
}

pub fn parse_report(text: &str) -> Result<VerdictReport> {
    toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
}

/// Left-aligned columns separated by two spaces; widths count characters, not bytes.
pub fn table(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; ncols];
    for row in rows {
        for (j, c) in row.iter().enumerate() {
            width[j] = width[j].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (j, c) in row.iter().enumerate() {
            line.push_str(c);
            if j + 1 < row.len() {
                line.extend(std::iter::repeat(' ').take(width[j] - c.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn text_report(r: &VerdictReport) -> String {
    let mut out = String::new();
    let mode = format!("{:?}", r.mode).to_lowercase();
    writeln!(out, "case {}  mode {}  seed {}", r.case, mode, r.seed).unwrap();
    writeln!(out, "overall {}", status_word(r.overall)).unwrap();

    if !r.local_simples.is_empty() {
        let mut rows = vec![vec!["simple".to_string(), "dim".into(), "pi".into()]];
        for s in &r.local_simples {
            rows.push(vec![s.label.clone(), s.dim.to_string(), s.pi.map_or("-".into(), |p| p.to_string())]);
        }
        writeln!(out, "\nlocal simples").unwrap();
        out.push_str(&table(&rows));
    }

    if !r.complexes.is_empty() {
        writeln!(out, "\ncomplexes").unwrap();
        for c in &r.complexes {
            let lowest = -(c.pi as i32);
            let terms: Vec<String> =
                c.terms.iter().enumerate().map(|(k, t)| format!("[{}] {}", lowest + k as i32, t)).collect();
            writeln!(
                out,
                "X_{}: {}",
                c.simple,
                if terms.is_empty() { "no terms below degree -1".into() } else { terms.join(" -> ") }
            )
            .unwrap();
        }
        let lo = r.complexes.iter().flat_map(|c| c.cohomology.iter().map(|h| h.degree)).min().unwrap_or(0);
        let mut header = vec!["X".to_string()];
        header.extend((lo..=0).map(|d| format!("H^{d}")));
        header.push("Total".into());
        header.push("expected".into());
        header.push("status".into());
        let mut rows = vec![header];
        for c in &r.complexes {
            let mut row = vec![c.simple.clone()];
            for d in lo..=0 {
                let cell = c.cohomology.iter().find(|h| h.degree == d).map_or("", |h| h.cell.as_str());
                row.push(cell.to_string());
            }
            row.push(c.total.clone());
            row.push(c.expected_total.clone().unwrap_or_else(|| "-".into()));
            row.push(status_word(c.status).into());
            rows.push(row);
        }
        writeln!(out, "\ncohomology").unwrap();
        out.push_str(&table(&rows));
    }

    if let Some(ok) = r.perversity_ok {
        writeln!(out, "\nperversity {}", if ok { "verified" } else { "VIOLATED" }).unwrap();
        for v in &r.violations {
            writeln!(out, "  {v}").unwrap();
        }
    }

    for q in &r.q_classes {
        writeln!(out, "\nclass {}  {}", q.label, status_word(q.status)).unwrap();
        writeln!(out, "  C_H(Q)/Q simples {}  blocks {}", q.ch_simples.join(" "), blocks(&q.ch_blocks)).unwrap();
        writeln!(out, "  C_G(Q)/Q simples {}  blocks {}", q.cg_simples.join(" "), blocks(&q.cg_blocks)).unwrap();
        let sums: Vec<String> = q
            .summands
            .iter()
            .map(|s| {
                let mut t = s.dim.to_string();
                if s.principal {
                    t.push_str(if s.projective { " (principal, projective)" } else { " (principal)" });
                }
                t
            })
            .collect();
        writeln!(out, "  bimodule summands {}", sums.join(", ")).unwrap();
        writeln!(out, "  M_Q {}  P {}", q.mq_dim, q.p_dim).unwrap();
        let gamma: Vec<String> = q.gamma.iter().map(|(v, w)| format!("{v} -> {w}")).collect();
        writeln!(out, "  gamma {}", gamma.join(", ")).unwrap();
        writeln!(out, "  E {{{}}}", q.e.join(", ")).unwrap();
        let heads: Vec<String> = q.cover_heads.iter().map(|(w, v)| format!("{w} x {v}")).collect();
        writeln!(out, "  heads of P(M_Q) {}", heads.join(", ")).unwrap();
        writeln!(out, "  U_Q {}  T_Q {}  candidates {}", q.uq_dim, q.tq_dim, q.uq_candidates).unwrap();
        for f in &q.failures {
            writeln!(out, "  failure: {f}").unwrap();
        }
    }

    if !r.comparisons.is_empty() {
        let mut rows = vec![vec![
            "local".to_string(),
            "global".into(),
            "image".into(),
            "P1".into(),
            "cands".into(),
            "status".into(),
            "note".into(),
        ]];
        for c in &r.comparisons {
            let p1: Vec<String> = c.p1_summands.iter().map(|d| d.to_string()).collect();
            rows.push(vec![
                c.local.clone(),
                c.global.clone(),
                c.image_dim.to_string(),
                if p1.is_empty() { "-".into() } else { p1.join("+") },
                c.candidates.to_string(),
                status_word(c.status).into(),
                c.note.clone(),
            ]);
        }
        writeln!(out, "\ncomparisons").unwrap();
        out.push_str(&table(&rows));
    }
    out
}

fn blocks(b: &[Vec<String>]) -> String {
    b.iter().map(|x| format!("{{{}}}", x.join(" "))).collect::<Vec<_>>().join(" ")
}
