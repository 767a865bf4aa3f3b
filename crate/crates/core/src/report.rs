//! Runs every expected record against fresh computations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, ExpectedRecord, Quantity, Tolerance};
use crate::geometry::{cells_csv, disk_bounds, fixed_polyominoes, omega_cells};
use crate::lattice::{minimality_certificate, LatticePoint, LatticeSpec};
use crate::search::{
    classify_all, connected_survey, rank_by_conditioning, summarize, survey_csv, SurveyResult, SurveySummary,
    SWEEP_TOLERANCES,
};
use crate::spectral::{ingham_constants, TranslationConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub expected: ExpectedRecord,
    pub computed: Vec<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub version: String,
    pub a2_tolerance: f64,
    pub sweep_tolerances: Vec<f64>,
    /// Every computation is deterministic; no random seed is involved.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
    pub environment: Environment,
    pub surveys: Vec<SurveySummary>,
    /// Computed facts that are reported but not asserted.
    pub observations: Vec<String>,
}

impl ReproductionReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Report plus the CSV artifacts (file name, contents) backing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction {
    pub report: ReproductionReport,
    pub files: Vec<(String, String)>,
}

/// Surveys computed lazily per entry and shared by its records.
struct Workspace<'a> {
    spec: &'a LatticeSpec,
    rel_tol: f64,
    grids: BTreeMap<i64, SurveyResult>,
    connected: Option<SurveyResult>,
}

impl<'a> Workspace<'a> {
    fn grid(&mut self, g: i64) -> Result<&SurveyResult, String> {
        if !self.grids.contains_key(&g) {
            let res = classify_all(self.spec, g, self.rel_tol).map_err(|e| e.to_string())?;
            self.grids.insert(g, res);
        }
        Ok(&self.grids[&g])
    }

    fn connected(&mut self) -> Result<&SurveyResult, String> {
        if self.connected.is_none() {
            self.connected = Some(connected_survey(self.spec, self.rel_tol).map_err(|e| e.to_string())?);
        }
        Ok(self.connected.as_ref().expect("just computed"))
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn sweep_note(res: &SurveyResult) -> String {
    let parts: Vec<String> = res.sweep().iter().map(|(t, n)| format!("{t:e}: {n}")).collect();
    format!("failing by threshold {{{}}}", parts.join(", "))
}

fn witnesses(spec: &LatticeSpec) -> Vec<crate::lattice::QVec> {
    (0..spec.m()).map(|j| spec.point(LatticePoint::new(j, [0, 0]))).collect()
}

fn evaluate(ws: &mut Workspace, rec: &ExpectedRecord) -> Result<(Vec<f64>, Option<String>), String> {
    let spec = ws.spec;
    let consts = |c: &TranslationConfig| ingham_constants(spec, c, ws.rel_tol).map_err(|e| e.to_string());
    Ok(match &rec.quantity {
        Quantity::A2Verdict { config } => {
            let r = consts(config)?;
            (vec![flag(r.satisfies_a2)], Some(format!("kappa1/kappa2 = {:e}", r.kappa1 / r.kappa2)))
        }
        Quantity::KappaPair { config } => {
            let r = consts(config)?;
            let note = (!r.satisfies_a2).then(|| "configuration fails (A2)".to_string());
            (vec![r.kappa1, r.kappa2], note)
        }
        Quantity::SurveyFailing { grid } => {
            let res = ws.grid(*grid)?;
            (vec![res.failing as f64], Some(format!("{} of {}; {}", res.failing, res.total, sweep_note(res))))
        }
        Quantity::SurveyPassing { grid } => {
            let res = ws.grid(*grid)?;
            (vec![res.passing as f64], Some(format!("{} of {}", res.passing, res.total)))
        }
        Quantity::UniformPassingPair { grid } => {
            let res = ws.grid(*grid)?;
            let worst = |i: usize, get: fn(&crate::search::SurveyRecord) -> f64| {
                res.records
                    .iter()
                    .filter(|r| r.a2)
                    .map(get)
                    .max_by(|a, b| (a - rec.values[i]).abs().total_cmp(&(b - rec.values[i]).abs()))
                    .unwrap_or(f64::NAN)
            };
            (
                vec![worst(0, |r| r.kappa1), worst(1, |r| r.kappa2)],
                Some("largest deviation over passing configurations".into()),
            )
        }
        Quantity::SweepStable { grid } => {
            let res = ws.grid(*grid)?;
            (vec![flag(res.is_sweep_stable())], Some(sweep_note(res)))
        }
        Quantity::ConnectedPassing => {
            let res = ws.connected()?;
            let classes =
                crate::search::translation_classes(res.connected_records().filter(|r| r.a2).map(|r| &r.config));
            (
                vec![res.passing as f64],
                Some(format!(
                    "{} of {} fixed polyominoes; {} translation classes",
                    res.passing,
                    res.total,
                    classes.len()
                )),
            )
        }
        Quantity::Area { config } => (vec![omega_cells(spec, config).area], None),
        Quantity::HalfDiameter { config } => (vec![omega_cells(spec, config).diameter / 2.0], None),
        Quantity::NecessaryRadius { config } => (vec![disk_bounds(&omega_cells(spec, config)).r_necessary], None),
        Quantity::BesselRadius => (vec![crate::geometry::bessel_j0_root() * 2.0], None),
        Quantity::DensityRatio => {
            let tri = catalog::get("triangular").map_err(|e| e.to_string())?;
            let hex = catalog::get("honeycomb").map_err(|e| e.to_string())?;
            let a_tri = omega_cells(&tri.spec, tri.default_config()).area;
            let a_hex = omega_cells(&hex.spec, hex.default_config()).area;
            (vec![a_tri / a_hex], None)
        }
        Quantity::PolyominoCount { size } => {
            (vec![fixed_polyominoes(*size).map_err(|e| e.to_string())?.len() as f64], None)
        }
        Quantity::Minimality => {
            let ok = minimality_certificate(spec, &witnesses(spec)).map_err(|e| e.to_string())?;
            (vec![flag(ok)], None)
        }
    })
}

/// For a failed comparison against a printed decimal, whether the printed
/// value is the computed one rounded to the same number of digits.
fn rounding_note(rec: &ExpectedRecord, computed: &[f64]) -> Option<String> {
    if rec.tolerance != Tolerance::Relative(catalog::PRINTED_TOL) || computed.len() != 1 {
        return None;
    }
    let printed = rec.values[0].to_string();
    let digits = printed.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let scale = 10f64.powi(digits);
    let rounded = (computed[0] * scale).round() / scale;
    Some(format!("computed value rounds to {rounded} at {digits} decimals; printed {printed}"))
}

struct EntryOutcome {
    entries: Vec<ReportEntry>,
    surveys: Vec<SurveyResult>,
    files: Vec<(String, String)>,
    observations: Vec<String>,
}

fn run_entry(entry: &CatalogEntry, rel_tol: f64) -> EntryOutcome {
    let spec = &entry.spec;
    let mut ws = Workspace { spec, rel_tol, grids: BTreeMap::new(), connected: None };
    let entries = entry
        .expected
        .iter()
        .map(|rec| match evaluate(&mut ws, rec) {
            Ok((computed, note)) => {
                let pass = rec.accepts(&computed);
                let note = if pass { note } else { rounding_note(rec, &computed).or(note) };
                ReportEntry { pass, expected: rec.clone(), computed, note }
            }
            Err(e) => ReportEntry { expected: rec.clone(), computed: vec![], pass: false, note: Some(e) },
        })
        .collect();

    let mut observations = Vec::new();
    match minimality_certificate(spec, &witnesses(spec)) {
        Ok(ok) => observations.push(format!("{}: minimality certificate from L*u_j witnesses: {ok}", spec.name)),
        Err(e) => observations.push(format!("{}: minimality certificate not decided: {e}", spec.name)),
    }
    if let Some(best) = ws.connected.as_ref().and_then(|c| rank_by_conditioning(c).into_iter().next()) {
        observations.push(format!(
            "{}: smallest kappa2/kappa1 among connected domains is {:.4} at {} (kappa = {:.4}, {:.4})",
            spec.name,
            best.ratio.unwrap_or(f64::NAN),
            best.config,
            best.kappa1,
            best.kappa2
        ));
    }

    let mut files = Vec::new();
    for nc in &entry.default_configs {
        if nc.config.len() == spec.m() {
            files.push((format!("domain_{}_{}.csv", spec.name, nc.label), cells_csv(&omega_cells(spec, &nc.config))));
        }
    }
    let mut surveys: Vec<SurveyResult> = ws.grids.into_values().collect();
    surveys.extend(ws.connected);
    for s in &surveys {
        let stem = match s.grid_max {
            Some(g) => format!("survey_{}_grid{g}.csv", s.tiling),
            None => format!("survey_{}_connected.csv", s.tiling),
        };
        files.push((stem, survey_csv(s)));
    }
    EntryOutcome { entries, surveys, files, observations }
}

/// Evaluates the expected records of `entries`.
pub fn run(entries: &[CatalogEntry], rel_tol: f64) -> Reproduction {
    let outcomes: Vec<EntryOutcome> = entries.par_iter().map(|e| run_entry(e, rel_tol)).collect();
    let mut report_entries = Vec::new();
    let mut surveys = Vec::new();
    let mut files = Vec::new();
    let mut observations = Vec::new();
    for o in outcomes {
        report_entries.extend(o.entries);
        surveys.extend(o.surveys.iter().map(summarize));
        files.extend(o.files);
        observations.extend(o.observations);
    }
    let passed = report_entries.iter().filter(|e| e.pass).count();
    let report = ReproductionReport {
        summary: Summary { total: report_entries.len(), passed, failed: report_entries.len() - passed },
        entries: report_entries,
        environment: Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            a2_tolerance: rel_tol,
            sweep_tolerances: SWEEP_TOLERANCES.to_vec(),
            seed: None,
        },
        surveys,
        observations,
    };
    Reproduction { report, files }
}

/// Evaluates the whole catalog.
pub fn reproduce(rel_tol: f64) -> Reproduction {
    run(&catalog::reproduction_entries(), rel_tol)
}

/// One aligned line per entry, for terminals.
pub fn text_table(report: &ReproductionReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ");
        out.push_str(&format!(
            "{:4} {:28} {:14} expected [{}] computed [{}]  {}\n",
            if e.pass { "PASS" } else { "FAIL" },
            e.expected.tiling,
            format!("{:?}", e.expected.kind),
            fmt(&e.expected.values),
            fmt(&e.computed),
            e.expected.source
        ));
    }
    out.push_str(&format!(
        "{} passed, {} failed, {} total\n",
        report.summary.passed, report.summary.failed, report.summary.total
    ));
    out
}
