//! Running a loaded instance end to end and assembling the report:
//! validation notes, monoid data, both regularity verdicts, the agreement
//! flag, and comparisons against the instance's expected-results block.
//!
//! Reports are byte-stable for a fixed instance and version: field order is
//! fixed, collections are sorted, and nothing depends on wall-clock time.

use serde::Serialize;

use crate::arith::FwBase;
use crate::error::{Error, Result};
use crate::fwdiff::{self, FwVerdict};
use crate::instance::{LoadedInstance, Pipeline};
use crate::monoid::AffineMonoid;
use crate::prelog::{DefinitionVerdict, PrelogRing, ValidationNotes};
use crate::Budgets;

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSummary {
    pub homomorphism_relations: usize,
    pub locality_checked_on: String,
    pub is_local: bool,
}

impl From<ValidationNotes> for ValidationSummary {
    fn from(n: ValidationNotes) -> Self {
        ValidationSummary {
            homomorphism_relations: n.homomorphism_relations,
            locality_checked_on: n.locality_checked_on,
            is_local: n.is_local,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonoidReport {
    pub ambient_rank: usize,
    pub num_generators: usize,
    pub gp_rank: usize,
    pub units_rank: usize,
    pub sharp: bool,
    pub saturated: bool,
    pub spec_size: usize,
    pub dim_chain: usize,
    pub dim_rank: usize,
}

pub fn monoid_report(q: &AffineMonoid, budgets: &Budgets) -> Result<MonoidReport> {
    Ok(MonoidReport {
        ambient_rank: q.ambient_rank(),
        num_generators: q.num_gens(),
        gp_rank: q.gp_rank(),
        units_rank: q.units_rank(),
        sharp: q.is_sharp(),
        saturated: q.is_saturated(budgets)?,
        spec_size: q.spec().len(),
        dim_chain: q.dim_chain(),
        dim_rank: q.dim_rank(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub base: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definition_route: Option<DefinitionVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fw_route: Option<FwVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
    pub expected_mismatches: Vec<String>,
}

fn run_field_pipeline<F: FwBase>(
    prelog: &PrelogRing<F>,
    budgets: &Budgets,
) -> Result<(ValidationNotes, MonoidReport, DefinitionVerdict, FwVerdict)> {
    let notes = prelog.validate(budgets)?;
    let mreport = monoid_report(&prelog.monoid, budgets)?;
    let def = prelog.log_regular_by_definition(budgets)?;
    let fw = fwdiff::fw_criterion_verdict(prelog, budgets)?;
    Ok((notes, mreport, def, fw))
}

/// Execute validate -> sharp reduce -> both regularity routes -> cross
/// check. Errors become a `rejected` report rather than bubbling out, so a
/// corpus run can assert on expected rejections.
pub fn run_instance(inst: &LoadedInstance, budgets: &Budgets) -> FixtureReport {
    let mut report = FixtureReport {
        name: inst.name.clone(),
        base: inst.base.clone(),
        status: "ok".into(),
        error: None,
        validation: None,
        monoid: None,
        definition_route: None,
        fw_route: None,
        routes_agree: None,
        expected_mismatches: Vec::new(),
    };
    let outcome: Result<(ValidationNotes, MonoidReport, DefinitionVerdict, FwVerdict)> =
        match &inst.pipeline {
            Pipeline::Fq(p) => run_field_pipeline(p, budgets),
            Pipeline::Rat(p) => run_field_pipeline(p, budgets),
            Pipeline::Zp(zp) => (|| {
                let notes = zp.validate(budgets)?;
                let mreport = monoid_report(&zp.monoid, budgets)?;
                let def = zp.log_regular_by_definition(budgets)?;
                if let Some(declared) = inst.flags.dim_r {
                    if declared != def.dim_r {
                        return Err(Error::Instance(format!(
                            "declared dim_r = {declared} but computed {}",
                            def.dim_r
                        )));
                    }
                }
                let fw = zp.fw_criterion_verdict(budgets)?;
                Ok((notes, mreport, def, fw))
            })(),
        };
    match outcome {
        Ok((notes, mreport, def, fw)) => {
            report.routes_agree = Some(def.is_log_regular == fw.is_log_regular);
            report.validation = Some(notes.into());
            report.monoid = Some(mreport);
            report.definition_route = Some(def);
            report.fw_route = Some(fw);
        }
        Err(e) => {
            report.status = "rejected".into();
            report.error = Some(e.to_string());
        }
    }
    report.expected_mismatches = compare_expected(&report, inst.expected.as_ref());
    report
}

/// Compare the report against the expected block. Entries are either plain
/// values or objects { "value": ..., "provenance": "..." }; mismatches are
/// listed with the provenance of the expectation.
fn compare_expected(
    report: &FixtureReport,
    expected: Option<&serde_json::Value>,
) -> Vec<String> {
    use serde_json::Value;
    let Some(Value::Object(map)) = expected else {
        return Vec::new();
    };
    let actual = serde_json::to_value(report).expect("report serializes");
    let mut mismatches = Vec::new();
    for (key, entry) in map {
        let (want, provenance) = match entry {
            Value::Object(o) if o.contains_key("value") => (
                o.get("value").unwrap().clone(),
                o.get("provenance")
                    .and_then(|p| p.as_str())
                    .unwrap_or("unstated")
                    .to_string(),
            ),
            other => (other.clone(), "unstated".to_string()),
        };
        let got = lookup(&actual, key);
        let ok = match (key.as_str(), &got) {
            // substring match for expected rejections
            ("error", Some(Value::String(msg))) => want
                .as_str()
                .map(|w| msg.contains(w))
                .unwrap_or(false),
            (_, Some(v)) => *v == &want,
            (_, None) => false,
        };
        if !ok {
            mismatches.push(format!(
                "{key}: expected {want} [{provenance}], got {}",
                got.map(|v| v.to_string()).unwrap_or_else(|| "<absent>".into())
            ));
        }
    }
    mismatches.sort();
    mismatches
}

/// Look up shorthand keys in the serialized report.
fn lookup<'a>(actual: &'a serde_json::Value, key: &str) -> Option<&'a serde_json::Value> {
    let direct = |path: &[&str]| -> Option<&'a serde_json::Value> {
        let mut cur = actual;
        for p in path {
            cur = cur.get(p)?;
        }
        Some(cur)
    };
    match key {
        "log_regular" => direct(&["definition_route", "is_log_regular"]),
        "fw_log_regular" => direct(&["fw_route", "is_log_regular"]),
        "dim_r" => direct(&["definition_route", "dim_r"]),
        "dim_r_mod_ialpha" => direct(&["definition_route", "dim_r_mod_ialpha"]),
        "dim_q" => direct(&["definition_route", "dim_q"]),
        "quotient_regular" => direct(&["definition_route", "quotient_regular"]),
        "rank_at_closed_point" => direct(&["fw_route", "rank_at_closed_point"]),
        "target_rank" => direct(&["fw_route", "target_rank"]),
        "free_of_target_rank" => direct(&["fw_route", "free_of_target_rank"]),
        "routes_agree" => direct(&["routes_agree"]),
        "status" => direct(&["status"]),
        "error" => direct(&["error"]),
        "dim_chain" => direct(&["monoid", "dim_chain"]),
        "spec_size" => direct(&["monoid", "spec_size"]),
        "saturated" => direct(&["monoid", "saturated"]),
        "sharp" => direct(&["monoid", "sharp"]),
        other => direct(&[other]),
    }
}

/// The presentation of the (sharpened) instance as machine-readable JSON.
pub fn emit_presentation(inst: &LoadedInstance, budgets: &Budgets) -> Result<serde_json::Value> {
    match &inst.pipeline {
        Pipeline::Fq(p) => {
            let pres = fwdiff::presentation(p, true, budgets)?;
            Ok(pres.to_json(p.ring.ctx(), &p.ring.ring.vars))
        }
        Pipeline::Rat(p) => {
            let pres = fwdiff::presentation(p, true, budgets)?;
            Ok(pres.to_json(p.ring.ctx(), &p.ring.ring.vars))
        }
        Pipeline::Zp(zp) => {
            let pres = zp.presentation(true, budgets)?;
            Ok(pres.to_json(zp.fiber.ctx(), &zp.fiber.ring.vars))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub ok: usize,
    pub rejected: usize,
    pub route_disagreements: usize,
    pub expected_mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub fixtures: Vec<FixtureReport>,
    pub summary: CorpusSummary,
}

pub fn assemble_corpus(mut fixtures: Vec<FixtureReport>) -> CorpusReport {
    fixtures.sort_by(|a, b| a.name.cmp(&b.name));
    let summary = CorpusSummary {
        total: fixtures.len(),
        ok: fixtures.iter().filter(|f| f.status == "ok").count(),
        rejected: fixtures.iter().filter(|f| f.status == "rejected").count(),
        route_disagreements: fixtures
            .iter()
            .filter(|f| f.routes_agree == Some(false))
            .count(),
        expected_mismatches: fixtures
            .iter()
            .map(|f| f.expected_mismatches.len())
            .sum(),
    };
    CorpusReport { fixtures, summary }
}

impl FixtureReport {
    pub fn human_line(&self) -> String {
        match (&self.definition_route, &self.fw_route) {
            (Some(d), Some(f)) => format!(
                "{:28} [{}] def: {}  fw: {} (rank {} / target {})  agree: {}{}",
                self.name,
                self.base,
                if d.is_log_regular { "log-regular" } else { "NOT log-regular" },
                if f.is_log_regular { "log-regular" } else { "NOT log-regular" },
                f.rank_at_closed_point,
                f.target_rank,
                if self.routes_agree == Some(true) { "yes" } else { "NO" },
                if self.expected_mismatches.is_empty() {
                    String::new()
                } else {
                    format!("  MISMATCHES: {}", self.expected_mismatches.join("; "))
                },
            ),
            _ => format!(
                "{:28} [{}] rejected: {}{}",
                self.name,
                self.base,
                self.error.as_deref().unwrap_or("?"),
                if self.expected_mismatches.is_empty() {
                    String::new()
                } else {
                    format!("  MISMATCHES: {}", self.expected_mismatches.join("; "))
                },
            ),
        }
    }
}
