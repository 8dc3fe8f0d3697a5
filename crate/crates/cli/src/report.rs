use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use concord_core::algebra::PrimaryComponent;
use concord_core::classifier::{AlgebraicOrder, ConcordanceVerdict, TwistedDoubleClause};
use concord_core::knot::LinkingForm;
use concord_core::metabolizer::{MetabolizerNormalForm, StructureReport};
use concord_core::{Certificate, FiniteAbelianGroup, SeifertMatrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub input: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot: Option<KnotReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_bridge: Option<TwoBridgeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted_table: Option<Vec<TwistedRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metabolizers: Option<MetabolizerReport>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            knot: None,
            two_bridge: None,
            twisted_table: None,
            metabolizers: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub group: FiniteAbelianGroup,
    pub display: String,
    pub primary_decomposition: String,
    pub components: Vec<PrimaryComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotReport {
    pub seifert: SeifertMatrix,
    pub alexander_polynomial: String,
    pub alexander_coefficients: Vec<String>,
    pub delta_at_one: String,
    pub delta_at_minus_one: String,
    pub delta_at_minus_one_factorization: String,
    pub homology: Homology,
    /// Rule that produced `verdict.algebraic_order`.
    pub algebraic_rule: String,
    pub verdict: ConcordanceVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted_double: Option<TwistedDoubleInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedDoubleInfo {
    pub a: String,
    pub clause: TwistedDoubleClause,
    pub clause_text: String,
    pub algebraic_order: AlgebraicOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBridgeReport {
    pub p: String,
    pub q: String,
    pub homology: Homology,
    pub linking_form: LinkingForm,
    pub verdict: ConcordanceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedRow {
    pub a: String,
    pub determinant: String,
    pub clause: TwistedDoubleClause,
    pub algebraic_order: AlgebraicOrder,
    pub infinite_order: bool,
    pub rules: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabolizerReport {
    pub p: u64,
    pub n: u32,
    pub d: usize,
    pub eps: Vec<u64>,
    pub group_order: String,
    pub count: usize,
    pub complete: bool,
    pub profiles_searched: Vec<Vec<usize>>,
    pub metabolizers: Vec<MetabolizerNormalForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Vec<StructureReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_passes: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<Certificate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates_valid: Option<bool>,
}

fn verdict_lines(out: &mut String, v: &ConcordanceVerdict) {
    let _ = writeln!(out, "concordance: {}", status_text(v));
    if let Some(order) = &v.algebraic_order {
        let _ = writeln!(out, "algebraic order: {order}");
    }
    for o in &v.obstructions {
        let w = o
            .witness
            .map(|w| format!(" witness {w}"))
            .unwrap_or_default();
        let _ = writeln!(out, "  [{}]{w}: {}", o.rule, o.detail);
    }
    for n in &v.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn status_text(v: &ConcordanceVerdict) -> &'static str {
    match v.status {
        concord_core::classifier::ConcordanceStatus::Slice => "slice",
        concord_core::classifier::ConcordanceStatus::InfiniteOrder => "infinite order",
        concord_core::classifier::ConcordanceStatus::Unresolved => "unresolved",
    }
}

fn homology_line(out: &mut String, h: &Homology) {
    let _ = writeln!(
        out,
        "H_1(double cover) = {}  [{}]",
        h.display, h.primary_decomposition
    );
}

impl Report {
    /// Plain-text rendering for terminals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "concord {} ({})", self.version, self.command);
        if let Some(k) = &self.knot {
            if let Some(t) = &k.twisted_double {
                let _ = writeln!(out, "twisted double a = {}: {}", t.a, t.clause_text);
            }
            let _ = writeln!(out, "Seifert matrix: {}", k.seifert.matrix());
            let _ = writeln!(out, "Alexander polynomial: {}", k.alexander_polynomial);
            let _ = writeln!(
                out,
                "Δ(1) = {}, Δ(−1) = {} = {}",
                k.delta_at_one, k.delta_at_minus_one, k.delta_at_minus_one_factorization
            );
            homology_line(&mut out, &k.homology);
            verdict_lines(&mut out, &k.verdict);
        }
        if let Some(t) = &self.two_bridge {
            let _ = writeln!(out, "two-bridge knot K({}, {})", t.p, t.q);
            homology_line(&mut out, &t.homology);
            verdict_lines(&mut out, &t.verdict);
        }
        if let Some(rows) = &self.twisted_table {
            let _ = writeln!(
                out,
                "{:>6} {:>8}  {:<20} {:<34} rules",
                "a", "4a+1", "clause", "algebraic order"
            );
            for r in rows {
                let clause = serde_json::to_value(r.clause)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{:>6} {:>8}  {:<20} {:<34} {}",
                    r.a,
                    r.determinant,
                    clause,
                    r.algebraic_order.to_string(),
                    r.rules.join(",")
                );
            }
        }
        if let Some(m) = &self.metabolizers {
            let _ = writeln!(
                out,
                "(Z_{}^{})^{} with ε = {:?}: |H| = {}",
                m.p, m.n, m.d, m.eps, m.group_order
            );
            let _ = writeln!(
                out,
                "{} metabolizers ({})",
                m.count,
                if m.complete {
                    "complete enumeration"
                } else {
                    "partial enumeration"
                }
            );
            for l in &m.metabolizers {
                let _ = writeln!(out, "  {} profile {:?}", l, l.profile());
            }
            if let Some(pass) = m.structure_passes {
                let _ = writeln!(
                    out,
                    "structure checks: {}",
                    if pass { "all pass" } else { "FAILURES" }
                );
            }
            if let (Some(certs), Some(valid)) = (&m.certificates, m.certificates_valid) {
                let _ = writeln!(
                    out,
                    "replay: {} certificates, {}",
                    certs.len(),
                    if valid { "all valid" } else { "INVALID" }
                );
                if let Some(c) = certs.first() {
                    for r in &c.levels {
                        let _ = writeln!(
                            out,
                            "  level {}: f = {} in Z[Z_{}], N = {}",
                            r.level, r.relation, r.q, r.integer_witness
                        );
                    }
                    let _ = writeln!(out, "  {}", c.conclusion);
                }
            }
        }
        out
    }
}
