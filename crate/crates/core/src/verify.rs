//! Finite-support certificates for the Ingham inequality over `Ω`.
//!
//! For a finite set of exponentials `e^{i(λ,x)}` the Gram matrix
//! `G[p][q] = ∫_Ω e^{i(λ_p−λ_q, x)} dx` satisfies `a*Ga = ∫_Ω |Σ a_λ e^{i(λ,x)}|²`,
//! so its spectrum must sit inside `[c₁, c₂]` for every support. All entries
//! are evaluated in closed form; no quadrature is involved.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{omega_cells, DomainGeometry};
use crate::lattice::{int_vec, mat_vec, vec_add, vec_sub, BBox, LatticePoint, LatticeSpec, QVec};
use crate::quad::QuadNumber;
use crate::spectral::{dot_int, hermitian_eigenvalues, ingham_constants, unit_phase, SpectralError, TranslationConfig};

/// Relative slack on frame bounds: `ε = FRAME_EPS·c₂`.
pub const FRAME_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("support is empty")]
    EmptySupport,
    #[error("support lists {0:?} twice")]
    DuplicateItem(LatticePoint),
    #[error("support item {item:?} refers to translate {} but the lattice has {m}", item.j)]
    BadTranslate { item: LatticePoint, m: usize },
    #[error("condition (A2) fails; upper bound check: λ_max = {lambda_max}, c2 = {c2_full}, ok = {upper_ok}")]
    A2Violated { lambda_max: f64, c2_full: f64, upper_ok: bool },
    #[error("hole is empty or not strictly inside a single cell of the domain")]
    HoleOutsideDomain,
    #[error("support {0} is not a strict subset of the next one")]
    NotNested(usize),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportSet {
    items: Vec<LatticePoint>,
}

impl SupportSet {
    pub fn new(items: Vec<LatticePoint>) -> Result<Self, VerifyError> {
        if items.is_empty() {
            return Err(VerifyError::EmptySupport);
        }
        let mut seen = BTreeSet::new();
        for it in &items {
            if !seen.insert(*it) {
                return Err(VerifyError::DuplicateItem(*it));
            }
        }
        Ok(Self { items })
    }

    /// All translates `j` with `m ∈ [lo, hi]²`.
    pub fn box_range(m: usize, lo: i64, hi: i64) -> Self {
        let items = (0..m)
            .flat_map(|j| (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| LatticePoint::new(j, [a, b]))))
            .collect();
        Self { items }
    }

    /// All translates with `|m|∞ ≤ radius`.
    pub fn centered_box(m: usize, radius: i64) -> Self {
        Self::box_range(m, -radius, radius)
    }

    pub fn items(&self) -> &[LatticePoint] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_strict_subset_of(&self, other: &SupportSet) -> bool {
        let big: BTreeSet<_> = other.items.iter().collect();
        self.len() < other.len() && self.items.iter().all(|p| big.contains(p))
    }
}

/// `∫₀^{2π} e^{ixt} dx = (e^{2πix}−1)/(ix)`, exact at integers.
fn phi(x: &QuadNumber) -> Complex64 {
    if x.is_integer() {
        return if x.is_zero() { Complex64::new(2.0 * PI, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    // (e^{2πix}−1)/(ix) = e^{iπx}·2·sin(πx)/x
    let half = unit_phase(&(*x * QuadNumber::frac(1, 2)));
    half * (2.0 * half.im / x.to_f64())
}

fn offset(spec: &LatticeSpec, p: LatticePoint) -> QVec {
    vec_add(&spec.us[p.j], &int_vec(p.m))
}

/// `∫_Ω e^{i(λ_p−λ_q, x)} dx`.
///
/// # Panics
/// If `p.j` or `q.j` is not a translate index of `spec`.
pub fn inner_product(spec: &LatticeSpec, config: &TranslationConfig, p: LatticePoint, q: LatticePoint) -> Complex64 {
    let mu = vec_sub(&offset(spec, p), &offset(spec, q)).expect("spec is single-field");
    let phases: Complex64 = config.ns().iter().map(|&n| unit_phase(&dot_int(&mu, n))).sum();
    phases * phi(&mu[0]) * phi(&mu[1]) / spec.det_l_abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: DMatrix<Complex64>,
    pub support: SupportSet,
    pub domain: DomainGeometry,
}

impl GramMatrix {
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries).expect("Gram matrix is Hermitian by construction")
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }
}

fn check_support(spec: &LatticeSpec, config: &TranslationConfig, support: &SupportSet) -> Result<(), VerifyError> {
    if config.len() != spec.m() {
        return Err(SpectralError::SizeMismatch { spec: spec.m(), config: config.len() }.into());
    }
    if support.is_empty() {
        return Err(VerifyError::EmptySupport);
    }
    if let Some(item) = support.items.iter().find(|p| p.j >= spec.m()) {
        return Err(VerifyError::BadTranslate { item: *item, m: spec.m() });
    }
    Ok(())
}

/// Fills a Hermitian matrix from its upper triangle.
fn hermitian_from<F>(n: usize, entry: F) -> DMatrix<Complex64>
where
    F: Fn(usize, usize) -> Complex64 + Sync,
{
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect();
    let vals: Vec<Complex64> = pairs.par_iter().map(|&(p, q)| entry(p, q)).collect();
    let mut g = DMatrix::zeros(n, n);
    for (&(p, q), v) in pairs.iter().zip(vals) {
        if p == q {
            g[(p, p)] = Complex64::new(v.re, 0.0);
        } else {
            g[(p, q)] = v;
            g[(q, p)] = v.conj();
        }
    }
    g
}

pub fn gram(spec: &LatticeSpec, config: &TranslationConfig, support: &SupportSet) -> Result<GramMatrix, VerifyError> {
    check_support(spec, config, support)?;
    let items = support.items();
    let entries = hermitian_from(items.len(), |p, q| inner_product(spec, config, items[p], items[q]));
    Ok(GramMatrix { entries, support: support.clone(), domain: omega_cells(spec, config) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameBoundCheck {
    pub support_size: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub c1_full: f64,
    pub c2_full: f64,
    pub epsilon: f64,
    pub pass: bool,
}

/// Checks `c₁ − ε ≤ λ_min(G) ≤ λ_max(G) ≤ c₂ + ε`.
pub fn frame_bound_check(
    spec: &LatticeSpec,
    config: &TranslationConfig,
    support: &SupportSet,
    rel_tol: f64,
) -> Result<FrameBoundCheck, VerifyError> {
    let consts = ingham_constants(spec, config, rel_tol)?;
    let g = gram(spec, config, support)?;
    let vals = g.eigenvalues();
    let (lambda_min, lambda_max) = (vals[0], vals[vals.len() - 1]);
    let epsilon = FRAME_EPS * consts.c2_full;
    let upper_ok = lambda_max <= consts.c2_full + epsilon;
    if !consts.satisfies_a2 {
        return Err(VerifyError::A2Violated { lambda_max, c2_full: consts.c2_full, upper_ok });
    }
    Ok(FrameBoundCheck {
        support_size: support.len(),
        lambda_min,
        lambda_max,
        c1_full: consts.c1_full,
        c2_full: consts.c2_full,
        epsilon,
        pass: upper_ok && consts.c1_full - epsilon <= lambda_min,
    })
}

/// `∫_a^b e^{iδx} dx`, with `zero` deciding the `δ = 0` branch exactly.
fn interval_integral(delta: f64, zero: bool, a: f64, b: f64) -> Complex64 {
    if zero {
        return Complex64::new(b - a, 0.0);
    }
    Complex64::from_polar(1.0, delta * (a + b) / 2.0) * (2.0 * (delta * (b - a) / 2.0).sin() / delta)
}

/// `∫_ω e^{i(λ_p−λ_q, x)} dx` over an axis-aligned rectangle.
pub fn hole_inner_product(spec: &LatticeSpec, hole: &BBox, p: LatticePoint, q: LatticePoint) -> Complex64 {
    let mu = vec_sub(&offset(spec, p), &offset(spec, q)).expect("spec is single-field");
    let delta = mat_vec(&spec.l_star, &mu).expect("spec is single-field");
    let s = spec.scale();
    interval_integral(s * delta[0].to_f64(), delta[0].is_zero(), hole.x0, hole.x1)
        * interval_integral(s * delta[1].to_f64(), delta[1].is_zero(), hole.y0, hole.y1)
}

/// Index of the cell of `Ω` whose interior strictly contains the rectangle.
pub fn hole_cell(spec: &LatticeSpec, config: &TranslationConfig, hole: &BBox) -> Option<usize> {
    if hole.is_empty() {
        return None;
    }
    let l = spec.l_f64();
    let corners = [[hole.x0, hole.y0], [hole.x1, hole.y0], [hole.x1, hole.y1], [hole.x0, hole.y1]];
    let tau = 2.0 * PI;
    config.ns().iter().position(|n| {
        corners.iter().all(|c| {
            let y = [
                (l[0][0] * c[0] + l[0][1] * c[1]) / tau - n[0] as f64,
                (l[1][0] * c[0] + l[1][1] * c[1]) / tau - n[1] as f64,
            ];
            y.iter().all(|&t| t > 1e-12 && t < 1.0 - 1e-12)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessStep {
    pub support_size: usize,
    /// `λ_min(G_{Ω∖ω})`.
    pub lambda_min: f64,
    /// `λ_min(G_Ω)` on the same support.
    pub lambda_min_full: f64,
}

/// `λ_min` of the Gram matrix over `Ω∖ω` for each of a nested family of supports.
pub fn removal_witness(
    spec: &LatticeSpec,
    config: &TranslationConfig,
    hole: &BBox,
    supports: &[SupportSet],
) -> Result<Vec<WitnessStep>, VerifyError> {
    if hole_cell(spec, config, hole).is_none() {
        return Err(VerifyError::HoleOutsideDomain);
    }
    if let Some(i) = supports.windows(2).position(|w| !w[0].is_strict_subset_of(&w[1])) {
        return Err(VerifyError::NotNested(i));
    }
    supports
        .iter()
        .map(|support| {
            let g = gram(spec, config, support)?;
            let items = support.items();
            let h = hermitian_from(items.len(), |p, q| hole_inner_product(spec, hole, items[p], items[q]));
            let full = g.eigenvalues()[0];
            let cut = hermitian_eigenvalues(&(&g.entries - h))?[0];
            Ok(WitnessStep { support_size: support.len(), lambda_min: cut, lambda_min_full: full })
        })
        .collect()
}

/// `support_size,lambda_min` rows.
pub fn witness_csv(steps: &[WitnessStep]) -> String {
    let mut out = String::from("support_size,lambda_min\n");
    for s in steps {
        out.push_str(&format!("{},{}\n", s.support_size, s.lambda_min));
    }
    out
}
