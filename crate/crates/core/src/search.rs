//! Exhaustive surveys over offset configurations.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{fixed_polyominoes, is_connected, GeometryError};
use crate::lattice::LatticeSpec;
use crate::spectral::{ingham_constants, SpectralError, TranslationConfig};

/// Tolerances at which survey verdicts are compared for stability.
pub const SWEEP_TOLERANCES: [f64; 5] = [1e-12, 1e-10, 1e-8, 1e-6, 1e-4];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRecord {
    pub config: TranslationConfig,
    pub connected: bool,
    pub a2: bool,
    pub kappa1: f64,
    pub kappa2: f64,
    /// `κ₂/κ₁` for configurations satisfying (A2).
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyResult {
    pub tiling: String,
    pub m: usize,
    /// Grid `{0..grid_max}²`; `None` for polyomino surveys.
    pub grid_max: Option<i64>,
    pub rel_tol: f64,
    pub total: usize,
    pub passing: usize,
    pub failing: usize,
    pub records: Vec<SurveyRecord>,
}

impl SurveyResult {
    fn from_records(
        tiling: &str,
        m: usize,
        grid_max: Option<i64>,
        rel_tol: f64,
        mut records: Vec<SurveyRecord>,
    ) -> Self {
        records.sort_by(|a, b| a.config.cmp(&b.config));
        let passing = records.iter().filter(|r| r.a2).count();
        Self {
            tiling: tiling.to_string(),
            m,
            grid_max,
            rel_tol,
            total: records.len(),
            passing,
            failing: records.len() - passing,
            records,
        }
    }

    /// Failing count if the survey were re-thresholded at `rel_tol`.
    pub fn failing_at(&self, rel_tol: f64) -> usize {
        self.records.iter().filter(|r| r.kappa1 / r.kappa2 <= rel_tol).count()
    }

    /// Failing counts at each of [`SWEEP_TOLERANCES`].
    pub fn sweep(&self) -> Vec<(f64, usize)> {
        SWEEP_TOLERANCES.iter().map(|&t| (t, self.failing_at(t))).collect()
    }

    pub fn is_sweep_stable(&self) -> bool {
        self.sweep().iter().map(|s| s.1).all_equal()
    }

    pub fn connected_records(&self) -> impl Iterator<Item = &SurveyRecord> {
        self.records.iter().filter(|r| r.connected)
    }
}

/// All `m`-subsets of `{0..grid_max}²` in lexicographic order.
pub fn enumerate_configs(grid_max: i64, m: usize) -> impl Iterator<Item = TranslationConfig> {
    let points: Vec<[i64; 2]> = (0..=grid_max).cartesian_product(0..=grid_max).map(|(a, b)| [a, b]).collect();
    points.into_iter().combinations(m).map(|ns| TranslationConfig::new(ns).expect("grid points are distinct"))
}

fn record(spec: &LatticeSpec, config: TranslationConfig, rel_tol: f64) -> Result<SurveyRecord, SpectralError> {
    let res = ingham_constants(spec, &config, rel_tol)?;
    Ok(SurveyRecord {
        connected: is_connected(config.ns()),
        a2: res.satisfies_a2,
        kappa1: res.kappa1,
        kappa2: res.kappa2,
        ratio: res.satisfies_a2.then(|| res.ratio()),
        config,
    })
}

fn survey(
    spec: &LatticeSpec,
    configs: Vec<TranslationConfig>,
    grid_max: Option<i64>,
    rel_tol: f64,
) -> Result<SurveyResult, SearchError> {
    let records = configs.into_par_iter().map(|c| record(spec, c, rel_tol)).collect::<Result<Vec<_>, _>>()?;
    Ok(SurveyResult::from_records(&spec.name, spec.m(), grid_max, rel_tol, records))
}

/// Classifies every `M`-subset of the grid `{0..grid_max}²`.
pub fn classify_all(spec: &LatticeSpec, grid_max: i64, rel_tol: f64) -> Result<SurveyResult, SearchError> {
    survey(spec, enumerate_configs(grid_max, spec.m()).collect(), Some(grid_max), rel_tol)
}

/// Classifies every fixed polyomino with `M` cells.
pub fn connected_survey(spec: &LatticeSpec, rel_tol: f64) -> Result<SurveyResult, SearchError> {
    let configs = fixed_polyominoes(spec.m())?.iter().map(|p| p.to_config()).collect();
    survey(spec, configs, None, rel_tol)
}

/// Passing records ordered by ascending `κ₂/κ₁`, ties by configuration.
pub fn rank_by_conditioning(result: &SurveyResult) -> Vec<SurveyRecord> {
    // Ratios are bucketed at 1e-9 so symmetric copies with rounding noise tie.
    let key = |r: &SurveyRecord| (r.ratio.unwrap_or(f64::INFINITY) * 1e9).round() as i128;
    let mut out: Vec<SurveyRecord> = result.records.iter().filter(|r| r.a2).cloned().collect();
    out.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.config.cmp(&b.config)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationClass {
    pub representative: TranslationConfig,
    pub members: usize,
}

/// Groups configurations that differ by a common integer translation.
pub fn translation_classes<'a>(configs: impl IntoIterator<Item = &'a TranslationConfig>) -> Vec<TranslationClass> {
    let mut classes: BTreeMap<TranslationConfig, usize> = BTreeMap::new();
    for c in configs {
        *classes.entry(c.canonical()).or_default() += 1;
    }
    classes.into_iter().map(|(representative, members)| TranslationClass { representative, members }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveySummary {
    pub tiling: String,
    pub m: usize,
    pub grid_max: Option<i64>,
    pub rel_tol: f64,
    pub total: usize,
    pub passing: usize,
    pub failing: usize,
    pub connected_total: usize,
    pub connected_passing: usize,
    pub sweep: Vec<(f64, usize)>,
    pub sweep_stable: bool,
    pub best: Option<SurveyRecord>,
}

pub fn summarize(result: &SurveyResult) -> SurveySummary {
    SurveySummary {
        tiling: result.tiling.clone(),
        m: result.m,
        grid_max: result.grid_max,
        rel_tol: result.rel_tol,
        total: result.total,
        passing: result.passing,
        failing: result.failing,
        connected_total: result.connected_records().count(),
        connected_passing: result.connected_records().filter(|r| r.a2).count(),
        sweep: result.sweep(),
        sweep_stable: result.is_sweep_stable(),
        best: rank_by_conditioning(result).into_iter().next(),
    }
}

/// One row per configuration: `cells,connected,a2,kappa1,kappa2,ratio`.
pub fn survey_csv(result: &SurveyResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["cells", "connected", "a2", "kappa1", "kappa2", "ratio"]).expect("in-memory write");
    for r in &result.records {
        w.write_record([
            r.config.to_string(),
            r.connected.to_string(),
            r.a2.to_string(),
            r.kappa1.to_string(),
            r.kappa2.to_string(),
            r.ratio.map(|x| x.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
