//! JSON and plain-text renderings of results. Big integers are written as
//! decimal strings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{PairChecks, PairSearch};
use crate::enumerate::{CandidateRow, IrrepCandidate};
use crate::induced::{verdicts, MonomialRep, RepVerdicts, TameParameters};
use crate::steinberg::{ClassificationReport, Exclusion, TensorCandidate, Theorem1Check};

#[derive(Debug, Serialize)]
pub struct FactorJson {
    #[serde(flatten)]
    pub row: CandidateRow,
    pub generic: bool,
}

#[derive(Debug, Serialize)]
pub struct TensorJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub label: String,
    pub factors: Vec<FactorJson>,
    pub dim: String,
    pub self_dual: bool,
    pub fs: i8,
    pub min_char: u64,
}

impl From<&TensorCandidate> for TensorJson {
    fn from(t: &TensorCandidate) -> Self {
        TensorJson {
            type_name: t.type_id.to_string(),
            label: t.label(),
            factors: t
                .factors
                .iter()
                .map(|f| FactorJson {
                    row: f.to_row(),
                    generic: f.generic,
                })
                .collect(),
            dim: t.dim.to_string(),
            self_dual: t.self_dual,
            fs: t.fs,
            min_char: t.min_char,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub n: u64,
    pub mode: String,
    pub min_char: u64,
    pub orthogonal: Vec<TensorJson>,
    pub symplectic: Vec<TensorJson>,
    pub excluded_non_self_dual: usize,
    pub exclusions: Vec<Exclusion>,
    pub notes: Vec<String>,
}

impl From<&ClassificationReport> for ReportJson {
    fn from(r: &ClassificationReport) -> Self {
        ReportJson {
            n: r.n,
            mode: r.mode.to_string(),
            min_char: r.min_char,
            orthogonal: r.orthogonal.iter().map(TensorJson::from).collect(),
            symplectic: r.symplectic.iter().map(TensorJson::from).collect(),
            excluded_non_self_dual: r.excluded_non_self_dual,
            exclusions: r.exclusions.clone(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Theorem1Json {
    pub pi: u64,
    pub n: u64,
    pub passed: bool,
    pub orthogonal_ok: bool,
    pub symplectic_ok: bool,
    pub report: ReportJson,
}

impl From<&Theorem1Check> for Theorem1Json {
    fn from(c: &Theorem1Check) -> Self {
        Theorem1Json {
            pi: c.pi,
            n: c.report.n,
            passed: c.passed(),
            orthogonal_ok: c.orthogonal_ok,
            symplectic_ok: c.symplectic_ok,
            report: ReportJson::from(&c.report),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairJson {
    pub p: String,
    pub t: String,
    pub checks: PairChecks,
}

#[derive(Debug, Serialize)]
pub struct PairSearchJson {
    pub n: u64,
    #[serde(rename = "M")]
    pub m: String,
    pub m_source: String,
    pub pairs: Vec<PairJson>,
    pub partial: bool,
    pub candidates_examined: u64,
    pub primality_policy: String,
}

impl PairSearchJson {
    pub fn new(search: &PairSearch, m_source: &str) -> Self {
        PairSearchJson {
            n: search.n,
            m: search.m.to_string(),
            m_source: m_source.to_string(),
            pairs: search
                .pairs
                .iter()
                .map(|p| PairJson {
                    p: p.p.to_string(),
                    t: p.t.to_string(),
                    checks: p.checks.clone(),
                })
                .collect(),
            partial: search.partial,
            candidates_examined: search.candidates_examined,
            primality_policy: search.primality_policy.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MonomialRepJson {
    #[serde(flatten)]
    pub params: TameParameters,
    pub tau: Vec<Vec<u64>>,
    pub phi: Vec<Vec<u64>>,
    pub gram: Vec<Vec<u64>>,
    pub verdicts: RepVerdicts,
}

impl From<&MonomialRep> for MonomialRepJson {
    fn from(rep: &MonomialRep) -> Self {
        MonomialRepJson {
            params: rep.params,
            tau: rep.tau.rows(),
            phi: rep.phi.rows(),
            gram: rep.gram.rows(),
            verdicts: verdicts(rep),
        }
    }
}

pub fn candidates_jsonl(cands: &[IrrepCandidate]) -> String {
    let mut out = String::new();
    for c in cands {
        out.push_str(&serde_json::to_string(&c.to_row()).expect("row serializes"));
        out.push('\n');
    }
    out
}

pub fn candidates_table(cands: &[IrrepCandidate]) -> String {
    let mut out = format!(
        "{:<6} {:<24} {:>12} {:>9} {:>3} {:>3} {:>8}\n",
        "type", "weight", "dim", "self_dual", "fs", "eps", "min_char"
    );
    for c in cands {
        let _ = writeln!(
            out,
            "{:<6} {:<24} {:>12} {:>9} {:>3} {:>3} {:>8}",
            c.type_id.to_string(),
            c.weight.to_string(),
            c.dim.to_string(),
            c.self_dual,
            c.fs,
            c.epsilon,
            c.min_char
        );
    }
    out
}

pub fn report_table(r: &ClassificationReport) -> String {
    let mut out = format!(
        "dimension {}  mode {}  ell >= {}\n",
        r.n, r.mode, r.min_char
    );
    let _ = writeln!(out, "orthogonal ({}):", r.orthogonal.len());
    for c in &r.orthogonal {
        let _ = writeln!(out, "  {}  (needs ell >= {})", c.label(), c.min_char);
    }
    let _ = writeln!(out, "symplectic ({}):", r.symplectic.len());
    for c in &r.symplectic {
        let _ = writeln!(out, "  {}  (needs ell >= {})", c.label(), c.min_char);
    }
    let _ = writeln!(
        out,
        "excluded: {} total, {} not self-dual",
        r.exclusions.len(),
        r.excluded_non_self_dual
    );
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn theorem1_table(checks: &[Theorem1Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let orth: Vec<String> = c.report.orthogonal.iter().map(|t| t.label()).collect();
        let _ = writeln!(
            out,
            "pi = {:>2}  n = {:>3}  {}  orthogonal: [{}]  symplectic: {} entries",
            c.pi,
            c.report.n,
            if c.passed() { "PASS" } else { "FAIL" },
            orth.join(", "),
            c.report.symplectic.len()
        );
    }
    out
}

pub fn pairs_table(search: &PairSearch, m_source: &str) -> String {
    let mut out = format!("n = {}  M = {} ({m_source})\n", search.n, search.m);
    for p in &search.pairs {
        let _ = writeln!(
            out,
            "p = {}  t = {}  checks {}",
            p.p,
            p.t,
            if p.checks.all_checked_pass() {
                "ok"
            } else {
                "FAILED"
            }
        );
    }
    if search.partial {
        let _ = writeln!(
            out,
            "partial: limit reached after {} candidates",
            search.candidates_examined
        );
    }
    let _ = writeln!(out, "primality: {}", search.primality_policy);
    out
}

pub fn rep_table(rep: &MonomialRep) -> String {
    let v = verdicts(rep);
    let TameParameters {
        p,
        t,
        n,
        lambda,
        zeta,
    } = rep.params;
    let mut out = format!("p = {p}  t = {t}  n = {n}  F_{lambda}  zeta = {zeta}\n");
    for (name, m) in [("tau", &rep.tau), ("phi", &rep.phi), ("gram", &rep.gram)] {
        let _ = writeln!(out, "{name}:");
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
    }
    let _ = writeln!(out, "tame relation: {}", v.tame_relation);
    let _ = writeln!(out, "preserves gram: {}", v.orthogonal);
    let _ = writeln!(out, "commutant dimension: {}", v.commutant_dimension);
    let _ = writeln!(
        out,
        "projective orders: tau {}  phi {}",
        v.tau_projective_order, v.phi_projective_order
    );
    out
}
