//! Lattices of the form `Λ = ⋃_j L*(u_j + ℤ²)` with exact coefficients.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{join_radicands, ratio_to_f64, QuadError, QuadNumber, Rational};

pub type QVec = [QuadNumber; 2];
/// Row-major 2×2 matrix: `m[row][col]`.
pub type QMat = [[QuadNumber; 2]; 2];

/// Largest progression period `line_lattice_subset` is willing to scan.
pub const MAX_PERIOD: i128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("L* is singular")]
    SingularL,
    #[error("translates u_{0} and u_{1} coincide modulo Z^2")]
    DuplicateTranslate(usize, usize),
    #[error("lattice needs at least one translate")]
    NoTranslates,
    #[error("entries mix radicals: {0}")]
    MixedRadicals(QuadError),
    #[error("point is not expressible in the lattice's field: {0}")]
    FieldMismatch(QuadError),
    #[error("point is not in the lattice")]
    NotInLattice,
    #[error("a and b coincide")]
    CoincidentPoints,
    #[error("progression period {0} exceeds the scan limit")]
    PeriodTooLarge(i128),
    #[error("expected {expected} witnesses, got {got}")]
    WitnessCount { expected: usize, got: usize },
    #[error("witnesses {0} and {1} coincide")]
    DuplicateWitness(usize, usize),
}

/// `λ = L*(u_j + m)`; `j` is the zero-based translate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub j: usize,
    pub m: [i64; 2],
}

impl LatticePoint {
    pub fn new(j: usize, m: [i64; 2]) -> Self {
        Self { j, m }
    }
}

/// Exact description of `Λ = √s · ⋃_j L*(u_j + ℤ²)`.
///
/// `scale_sq` (`s`) is an optional rational homothety squared, used when the
/// natural scale is a radical outside the field of the translates (the
/// two-square tiling). All exact operations work in the unscaled frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub name: String,
    pub l_star: QMat,
    pub us: Vec<QVec>,
    pub scale_sq: Rational,
}

pub fn mat_vec(m: &QMat, v: &QVec) -> Result<QVec, QuadError> {
    let row = |r: usize| m[r][0].checked_mul(&v[0])?.checked_add(&m[r][1].checked_mul(&v[1])?);
    Ok([row(0)?, row(1)?])
}

pub fn vec_sub(a: &QVec, b: &QVec) -> Result<QVec, QuadError> {
    Ok([a[0].checked_add(&-b[0])?, a[1].checked_add(&-b[1])?])
}

pub fn vec_add(a: &QVec, b: &QVec) -> QVec {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn int_vec(m: [i64; 2]) -> QVec {
    [QuadNumber::from(m[0]), QuadNumber::from(m[1])]
}

pub fn det(m: &QMat) -> QuadNumber {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let d = det(m).inv()?;
    Some([[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]])
}

/// Integer vector `v` if every component is an exact integer.
fn as_integer(v: &QVec) -> Option<[i64; 2]> {
    if v[0].is_integer() && v[1].is_integer() {
        let x = v[0].rational_part().to_integer();
        let y = v[1].rational_part().to_integer();
        Some([i64::try_from(x).ok()?, i64::try_from(y).ok()?])
    } else {
        None
    }
}

impl LatticeSpec {
    /// Builds and validates a spec with unit scale.
    pub fn new(name: &str, l_star: QMat, us: Vec<QVec>) -> Result<Self, LatticeError> {
        validate_spec(Self { name: name.to_string(), l_star, us, scale_sq: Rational::one() })
    }

    pub fn m(&self) -> usize {
        self.us.len()
    }

    pub fn dim(&self) -> usize {
        2
    }

    /// Radicand of the field all exact entries live in (`1` for ℚ).
    pub fn field(&self) -> Result<u32, LatticeError> {
        let mut d = 1;
        let entries = self.l_star.iter().flatten().chain(self.us.iter().flatten());
        for x in entries {
            d = join_radicands(d, x.radicand()).map_err(LatticeError::MixedRadicals)?;
        }
        Ok(d)
    }

    pub fn det_l_star(&self) -> QuadNumber {
        det(&self.l_star)
    }

    /// `|det L|` including the homothety (`det L = det L*`).
    pub fn det_l_abs(&self) -> f64 {
        self.det_l_star().to_f64().abs() * ratio_to_f64(self.scale_sq)
    }

    pub fn scale(&self) -> f64 {
        ratio_to_f64(self.scale_sq).sqrt()
    }

    pub fn l_star_inv(&self) -> QMat {
        inverse(&self.l_star).expect("validated spec has invertible L*")
    }

    /// Floating `L*` with the homothety applied.
    pub fn l_star_f64(&self) -> [[f64; 2]; 2] {
        let s = self.scale();
        let e = |r: usize, c: usize| self.l_star[r][c].to_f64() * s;
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// Floating `L = (L*)ᵀ` with the homothety applied.
    pub fn l_f64(&self) -> [[f64; 2]; 2] {
        let m = self.l_star_f64();
        [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
    }

    /// `L⁻¹` as floats.
    pub fn l_inv_f64(&self) -> [[f64; 2]; 2] {
        let l = self.l_f64();
        let d = l[0][0] * l[1][1] - l[0][1] * l[1][0];
        [[l[1][1] / d, -l[0][1] / d], [-l[1][0] / d, l[0][0] / d]]
    }

    /// Exact point `L*(u_j + m)` in the unscaled frame.
    pub fn point(&self, p: LatticePoint) -> QVec {
        let v = vec_add(&self.us[p.j], &int_vec(p.m));
        mat_vec(&self.l_star, &v).expect("validated spec has one field")
    }

    /// Point in ambient coordinates, homothety applied.
    pub fn point_f64(&self, p: LatticePoint) -> [f64; 2] {
        let q = self.point(p);
        let s = self.scale();
        [q[0].to_f64() * s, q[1].to_f64() * s]
    }
}

pub fn validate_spec(spec: LatticeSpec) -> Result<LatticeSpec, LatticeError> {
    if spec.us.is_empty() {
        return Err(LatticeError::NoTranslates);
    }
    spec.field()?;
    if spec.det_l_star().is_zero() || spec.scale_sq <= Rational::zero() {
        return Err(LatticeError::SingularL);
    }
    for i in 0..spec.us.len() {
        for k in i + 1..spec.us.len() {
            let diff = vec_sub(&spec.us[i], &spec.us[k]).map_err(LatticeError::MixedRadicals)?;
            if as_integer(&diff).is_some() {
                return Err(LatticeError::DuplicateTranslate(i, k));
            }
        }
    }
    Ok(spec)
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BBox {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn is_empty(&self) -> bool {
        !(self.x1 > self.x0 && self.y1 > self.y0)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        const EPS: f64 = 1e-12;
        p[0] >= self.x0 - EPS && p[0] <= self.x1 + EPS && p[1] >= self.y0 - EPS && p[1] <= self.y1 + EPS
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizedPoint {
    pub point: LatticePoint,
    pub xy: [f64; 2],
}

/// All lattice points inside `bbox`, ordered by `(j, m)`.
pub fn realize_points(spec: &LatticeSpec, bbox: BBox) -> Vec<RealizedPoint> {
    if bbox.is_empty() {
        return Vec::new();
    }
    // Preimage of the box under √s·L* bounds the integer search window.
    let l = spec.l_star_f64();
    let d = l[0][0] * l[1][1] - l[0][1] * l[1][0];
    let inv = [[l[1][1] / d, -l[0][1] / d], [-l[1][0] / d, l[0][0] / d]];
    let corners = [[bbox.x0, bbox.y0], [bbox.x1, bbox.y0], [bbox.x0, bbox.y1], [bbox.x1, bbox.y1]];
    let pre: Vec<[f64; 2]> =
        corners.iter().map(|c| [inv[0][0] * c[0] + inv[0][1] * c[1], inv[1][0] * c[0] + inv[1][1] * c[1]]).collect();
    let lo = |k: usize| pre.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
    let hi = |k: usize| pre.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);

    let mut out = Vec::new();
    for (j, u) in spec.us.iter().enumerate() {
        let uf = [u[0].to_f64(), u[1].to_f64()];
        let r0 = (lo(0) - uf[0]).floor() as i64 - 1..=(hi(0) - uf[0]).ceil() as i64 + 1;
        for m0 in r0 {
            let r1 = (lo(1) - uf[1]).floor() as i64 - 1..=(hi(1) - uf[1]).ceil() as i64 + 1;
            for m1 in r1 {
                let p = LatticePoint::new(j, [m0, m1]);
                let xy = spec.point_f64(p);
                if bbox.contains(xy) {
                    out.push(RealizedPoint { point: p, xy });
                }
            }
        }
    }
    out
}

/// Exact membership test for a point given in the unscaled frame.
pub fn contains(spec: &LatticeSpec, p: &QVec) -> Result<Option<LatticePoint>, LatticeError> {
    let d = spec.field()?;
    for x in p {
        join_radicands(d, x.radicand()).map_err(LatticeError::FieldMismatch)?;
    }
    let y = mat_vec(&spec.l_star_inv(), p).map_err(LatticeError::FieldMismatch)?;
    for (j, u) in spec.us.iter().enumerate() {
        let diff = vec_sub(&y, u).map_err(LatticeError::FieldMismatch)?;
        if let Some(m) = as_integer(&diff) {
            return Ok(Some(LatticePoint::new(j, m)));
        }
    }
    Ok(None)
}

/// Whether the progression `{a + k(b − a) : k ∈ ℤ}` stays inside `Λ`.
///
/// In lattice coordinates the progression is `x₀ + kδ`. An irrational
/// component in `δ` admits at most one hit per translate, so the answer is
/// `false`. Otherwise membership is periodic in `k` with period equal to the
/// lcm of the denominators of `δ`, and one period is scanned.
pub fn line_lattice_subset(spec: &LatticeSpec, a: &QVec, b: &QVec) -> Result<bool, LatticeError> {
    if a == b {
        return Err(LatticeError::CoincidentPoints);
    }
    if contains(spec, a)?.is_none() || contains(spec, b)?.is_none() {
        return Err(LatticeError::NotInLattice);
    }
    let inv = spec.l_star_inv();
    let x0 = mat_vec(&inv, a).map_err(LatticeError::FieldMismatch)?;
    let diff = vec_sub(b, a).map_err(LatticeError::FieldMismatch)?;
    let delta = mat_vec(&inv, &diff).map_err(LatticeError::FieldMismatch)?;
    if !delta.iter().all(QuadNumber::is_rational) {
        return Ok(false);
    }
    let period = delta.iter().map(|c| *c.rational_part().denom()).fold(1i128, |acc, q| acc.lcm(&q));
    if period > MAX_PERIOD {
        return Err(LatticeError::PeriodTooLarge(period));
    }
    let mut x = x0;
    for _ in 0..period {
        let hit = spec.us.iter().any(|u| vec_sub(&x, u).map(|dv| as_integer(&dv).is_some()).unwrap_or(false));
        if !hit {
            return Ok(false);
        }
        x = vec_add(&x, &delta);
    }
    Ok(true)
}

/// `true` when every pair of witnesses spans a progression leaving `Λ`,
/// which certifies that no representation of `Λ` uses fewer translates.
pub fn minimality_certificate(spec: &LatticeSpec, witnesses: &[QVec]) -> Result<bool, LatticeError> {
    if witnesses.len() != spec.m() {
        return Err(LatticeError::WitnessCount { expected: spec.m(), got: witnesses.len() });
    }
    for i in 0..witnesses.len() {
        for k in i + 1..witnesses.len() {
            if witnesses[i] == witnesses[k] {
                return Err(LatticeError::DuplicateWitness(i, k));
            }
            if line_lattice_subset(spec, &witnesses[i], &witnesses[k])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
