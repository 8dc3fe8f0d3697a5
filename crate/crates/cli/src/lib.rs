//! Commands behind the `concord` binary. Each returns a [`Report`] or a
//! [`CliError`] whose [`exit_code`](CliError::exit_code) the binary uses.

mod input;
mod report;

use std::time::Duration;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use concord_core::classifier::{
    full_verdict, twisted_double_verdict, two_bridge_obstruction, ClassifyError, ConcordanceStatus,
    ConcordanceVerdict, Obstruction, Rule,
};
use concord_core::knot::{
    alexander_polynomial, double_cover_homology, twisted_double_seifert, two_bridge,
};
use concord_core::metabolizer::{
    enumerate_with, verify_structure, EnumerationOptions, LabError, PrimaryForm,
};
use concord_core::number_theory::factorize_big;
use concord_core::replay::{replay, ReplayError};
use concord_core::{FiniteAbelianGroup, SeifertMatrix};

pub use input::parse_seifert;
pub use report::{
    Homology, KnotReport, MetabolizerReport, Report, TwistedDoubleInfo, TwistedRow,
    TwoBridgeReport, SCHEMA_VERSION,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidInput(_) => 1,
            CliError::Internal(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::InvalidInput(_) => CliError::InvalidInput(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            LabError::InvalidForm(_) | LabError::InvalidSubgroup(_) => {
                CliError::InvalidInput(e.to_string())
            }
            LabError::NotAMetabolizer(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ReplayError> for CliError {
    fn from(e: ReplayError) -> Self {
        match e {
            ReplayError::Precondition(_) => CliError::InvalidInput(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

fn homology(h: &FiniteAbelianGroup) -> Result<Homology, CliError> {
    let components = h
        .primary_decomposition()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Homology {
        group: h.clone(),
        display: h.to_string(),
        primary_decomposition: h.primary_string(),
        components,
    })
}

fn knot_report(v: &SeifertMatrix, verdict: ConcordanceVerdict) -> Result<KnotReport, CliError> {
    let delta = alexander_polynomial(v);
    let at_minus_one = delta.eval(&BigInt::from(-1));
    let factorization = factorize_big(&at_minus_one)
        .map(|f| {
            if f.is_empty() {
                "1".to_string()
            } else {
                f.to_string()
            }
        })
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(KnotReport {
        seifert: v.clone(),
        alexander_polynomial: delta.to_string(),
        alexander_coefficients: delta
            .coefficients()
            .iter()
            .map(ToString::to_string)
            .collect(),
        delta_at_one: delta.eval(&BigInt::from(1)).to_string(),
        delta_at_minus_one: at_minus_one.to_string(),
        delta_at_minus_one_factorization: factorization,
        homology: homology(&double_cover_homology(v))?,
        algebraic_rule: "quadratic-classification".into(),
        verdict,
        twisted_double: None,
    })
}

fn check_verdict(v: &ConcordanceVerdict) -> Result<(), CliError> {
    if v.is_consistent() {
        Ok(())
    } else {
        Err(CliError::Internal(format!("inconsistent verdict {v:?}")))
    }
}

/// Full pipeline on a Seifert matrix given as JSON text.
pub fn cmd_analyze(text: &str) -> Result<Report, CliError> {
    let (input, v) = parse_seifert(text)?;
    let verdict = full_verdict(&v)?;
    check_verdict(&verdict)?;
    let mut report = Report::new("analyze", input);
    report.knot = Some(knot_report(&v, verdict)?);
    Ok(report)
}

/// The a-twisted double of the unknot.
pub fn cmd_double(a: &BigInt) -> Result<Report, CliError> {
    let (clause, verdict) = twisted_double_verdict(a)?;
    check_verdict(&verdict)?;
    let order = verdict
        .algebraic_order
        .clone()
        .ok_or_else(|| CliError::Internal("no algebraic order".into()))?;
    let mut report = Report::new("double", json!({ "a": a.to_string() }));
    let mut knot = knot_report(&twisted_double_seifert(a.clone()), verdict)?;
    knot.twisted_double = Some(TwistedDoubleInfo {
        a: a.to_string(),
        clause,
        clause_text: clause.describe().to_string(),
        algebraic_order: order,
    });
    report.knot = Some(knot);
    Ok(report)
}

/// One row per `a` in `from..=to`.
pub fn cmd_double_table(from: i64, to: i64) -> Result<Report, CliError> {
    if from > to {
        return Err(CliError::InvalidInput(format!("empty range {from}..={to}")));
    }
    let mut rows = Vec::new();
    for a in from..=to {
        let a = BigInt::from(a);
        let (clause, verdict) = twisted_double_verdict(&a)?;
        check_verdict(&verdict)?;
        rows.push(TwistedRow {
            determinant: (BigInt::from(4) * &a + BigInt::from(1)).to_string(),
            a: a.to_string(),
            clause,
            algebraic_order: verdict
                .algebraic_order
                .clone()
                .unwrap_or(concord_core::AlgebraicOrder::Indeterminate),
            infinite_order: verdict.is_infinite_order(),
            rules: verdict
                .fired_rules()
                .iter()
                .map(|r| r.label().to_string())
                .collect(),
        });
    }
    let mut report = Report::new("double", json!({ "from": from, "to": to }));
    report.twisted_table = Some(rows);
    Ok(report)
}

/// Two-bridge knot `K(p, q)`.
pub fn cmd_twobridge(p: &BigInt, q: &BigInt) -> Result<Report, CliError> {
    let knot =
        two_bridge(p.clone(), q.clone()).map_err(|e| CliError::InvalidInput(e.to_string()))?;
    let witness = two_bridge_obstruction(p)?;
    let obstructions: Vec<Obstruction> = witness
        .iter()
        .map(|w| Obstruction {
            rule: Rule::TwoBridge,
            witness: Some(*w),
            detail: format!("{} has odd exponent in p = {p}", w.prime),
        })
        .collect();
    let status = if obstructions.is_empty() {
        ConcordanceStatus::Unresolved
    } else {
        ConcordanceStatus::InfiniteOrder
    };
    let mut notes = Vec::new();
    if obstructions.is_empty() {
        notes.push("no prime ≡ 3 mod 4 divides p to an odd power; concordance order unresolved by this toolkit".into());
    }
    let verdict = ConcordanceVerdict {
        status,
        algebraic_order: None,
        obstructions,
        gate_witnesses: Vec::new(),
        notes,
    };
    check_verdict(&verdict)?;
    let mut report = Report::new(
        "twobridge",
        json!({ "p": p.to_string(), "q": q.to_string() }),
    );
    report.two_bridge = Some(TwoBridgeReport {
        p: p.to_string(),
        q: q.to_string(),
        homology: homology(&knot.homology)?,
        linking_form: knot.linking_form,
        verdict,
    });
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct MetabRequest {
    pub p: u64,
    pub n: u32,
    pub k: usize,
    pub eps: Option<Vec<i64>>,
    pub verify_structure: bool,
    pub replay: bool,
    pub budget_override: bool,
    pub symmetric_only: bool,
    pub time_limit: Option<Duration>,
}

/// Metabolizers of `(Z_{pⁿ})^{4k}`, optionally checked and replayed.
pub fn cmd_metab(req: &MetabRequest) -> Result<Report, CliError> {
    let d = 4 * req.k;
    let form = match &req.eps {
        Some(eps) if eps.len() != d => {
            return Err(CliError::InvalidInput(format!(
                "{} coefficients given, need d = 4k = {d}",
                eps.len()
            )))
        }
        Some(eps) => PrimaryForm::new(req.p, req.n, eps)?,
        None => PrimaryForm::alternating(req.p, req.n, d)?,
    };
    let opts = EnumerationOptions {
        budget_override: req.budget_override,
        profile: None,
        symmetric_profiles_only: req.symmetric_only,
        time_limit: req.time_limit,
    };
    let run = enumerate_with(&form, &opts)?;
    let structure = if req.verify_structure {
        Some(
            run.metabolizers
                .iter()
                .map(|l| verify_structure(l, &form))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    let certificates = if req.replay {
        Some(
            run.metabolizers
                .iter()
                .map(|l| replay(&form, l))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    if let Some(bad) = structure.iter().flatten().find(|r| !r.passes()) {
        return Err(CliError::Internal(format!(
            "structure check failed for {}",
            bad.metabolizer_id
        )));
    }
    if let Some(bad) = certificates.iter().flatten().find(|c| !c.is_valid()) {
        return Err(CliError::Internal(format!(
            "invalid certificate for {}",
            bad.metabolizer_id
        )));
    }
    let input: Value = json!({
        "p": req.p,
        "n": req.n,
        "k": req.k,
        "eps": form.eps(),
        "verify_structure": req.verify_structure,
        "replay": req.replay,
        "budget_override": req.budget_override,
        "symmetric_only": req.symmetric_only,
    });
    let mut report = Report::new("metab", input);
    report.metabolizers = Some(MetabolizerReport {
        p: form.p(),
        n: form.n(),
        d,
        eps: form.eps().to_vec(),
        group_order: form.group_order().to_string(),
        count: run.metabolizers.len(),
        complete: run.complete,
        profiles_searched: run.profiles_searched,
        structure_passes: structure.as_ref().map(|s| s.iter().all(|r| r.passes())),
        structure,
        certificates_valid: certificates
            .as_ref()
            .map(|c| c.iter().all(|c| c.is_valid())),
        certificates,
        metabolizers: run.metabolizers,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::InvalidInput(String::new()).exit_code(), 1);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 2);
        assert_eq!(CliError::Budget(String::new()).exit_code(), 3);
        let budget: CliError = LabError::BudgetExceeded {
            size: "1".into(),
            limit: 0,
        }
        .into();
        assert_eq!(budget.exit_code(), 3);
    }

    #[test]
    fn table_matches_single_runs() {
        let table = cmd_double_table(-3, 6).unwrap().twisted_table.unwrap();
        assert_eq!(table.len(), 10);
        for row in &table {
            let a: BigInt = row.a.parse().unwrap();
            let single = cmd_double(&a).unwrap().knot.unwrap();
            assert_eq!(single.twisted_double.unwrap().clause, row.clause);
        }
    }
}
