//! The exponential matrix `E`, condition (A2), and the Ingham constants.
//!
//! For translates `u_j` and grid offsets `n_k` (with `v_k = 2π·n_k`) the
//! matrix is `E[j][k] = exp(2πi⟨u_j, n_k⟩)`. The optimal constants of the
//! pointwise estimate behind the Ingham inequality are the extreme
//! eigenvalues `κ₁ ≤ κ₂` of `EE*`; multiplying by `(2π)²/|det L|` gives the
//! constants of the integral estimate over `Ω`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{LatticeError, LatticeSpec, QVec};
use crate::quad::{QuadNumber, Rational};

/// Default relative threshold on `κ₁/κ₂` for (A2).
///
/// Exactly singular catalog configurations sit at `κ₁/κ₂ < 1e-15` and the
/// nearest regular ones at `≥ 1.5e-9` (two squares, r=1, R=4).
pub const DEFAULT_A2_TOL: f64 = 1e-12;

/// Allowed asymmetry before a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("configuration has {config} offsets but the lattice has {spec} translates")]
    SizeMismatch { spec: usize, config: usize },
    #[error("offset {0:?} appears twice")]
    DuplicateOffset([i64; 2]),
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("two-square tiling degenerates for r = {r}, R = {big_r}")]
    DegenerateTiling { r: String, big_r: String },
    #[error("two-square tiling needs 0 < r < R (got r = {r}, R = {big_r})")]
    InvalidTiling { r: String, big_r: String },
    #[error("cannot parse configuration {0:?}")]
    ParseConfig(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Grid offsets `n_k`; the translation vectors are `v_k = 2π·n_k`, so every
/// coordinate is a multiple of `2π` by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TranslationConfig {
    ns: Vec<[i64; 2]>,
}

impl TranslationConfig {
    pub fn new(ns: Vec<[i64; 2]>) -> Result<Self, SpectralError> {
        for (i, a) in ns.iter().enumerate() {
            if ns[..i].contains(a) {
                return Err(SpectralError::DuplicateOffset(*a));
            }
        }
        Ok(Self { ns })
    }

    pub fn ns(&self) -> &[[i64; 2]] {
        &self.ns
    }

    pub fn len(&self) -> usize {
        self.ns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ns.is_empty()
    }

    /// Same offsets shifted by a common integer vector.
    pub fn translated(&self, t: [i64; 2]) -> Self {
        Self { ns: self.ns.iter().map(|n| [n[0] + t[0], n[1] + t[1]]).collect() }
    }

    /// Offsets sorted and shifted so the componentwise minimum is zero.
    pub fn canonical(&self) -> Self {
        let mx = self.ns.iter().map(|n| n[0]).min().unwrap_or(0);
        let my = self.ns.iter().map(|n| n[1]).min().unwrap_or(0);
        let mut ns: Vec<[i64; 2]> = self.ns.iter().map(|n| [n[0] - mx, n[1] - my]).collect();
        ns.sort_unstable();
        Self { ns }
    }
}

impl FromStr for TranslationConfig {
    type Err = SpectralError;

    /// `"a,b;a,b;…"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SpectralError::ParseConfig(s.to_string());
        let ns = s
            .split(';')
            .filter(|part| !part.trim().is_empty())
            .map(|part| {
                let (a, b) = part.split_once(',').ok_or_else(err)?;
                Ok([a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?])
            })
            .collect::<Result<Vec<_>, SpectralError>>()?;
        if ns.is_empty() {
            return Err(err());
        }
        Self::new(ns)
    }
}

impl fmt::Display for TranslationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ns.iter().map(|n| format!("{},{}", n[0], n[1])).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentMatrix {
    pub entries: DMatrix<Complex64>,
}

impl ExponentMatrix {
    /// `EE*`.
    pub fn gram(&self) -> DMatrix<Complex64> {
        &self.entries * self.entries.adjoint()
    }

    pub fn det_abs(&self) -> f64 {
        self.entries.clone().determinant().norm()
    }
}

/// `exp(2πi·x)` with the rational part of `x` reduced mod 1 before rounding.
pub fn unit_phase(x: &QuadNumber) -> Complex64 {
    let t = x.reduce_rational_mod1().to_f64();
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

pub(crate) fn dot_int(u: &QVec, n: [i64; 2]) -> QuadNumber {
    u[0] * QuadNumber::from(n[0]) + u[1] * QuadNumber::from(n[1])
}

pub fn build_e(spec: &LatticeSpec, config: &TranslationConfig) -> Result<ExponentMatrix, SpectralError> {
    let m = spec.m();
    if config.len() != m {
        return Err(SpectralError::SizeMismatch { spec: m, config: config.len() });
    }
    let entries = DMatrix::from_fn(m, m, |j, k| unit_phase(&dot_int(&spec.us[j], config.ns[k])));
    Ok(ExponentMatrix { entries })
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Result<Vec<f64>, SpectralError> {
    if h.nrows() != h.ncols() {
        return Err(SpectralError::NotSquare);
    }
    let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let asym = (h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if asym > HERMITIAN_TOL * scale {
        return Err(SpectralError::NotHermitian(asym));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

pub fn hermitian_extremes(h: &DMatrix<Complex64>) -> Result<(f64, f64), SpectralError> {
    let vals = hermitian_eigenvalues(h)?;
    Ok((vals[0], vals[vals.len() - 1]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub kappa1: f64,
    pub kappa2: f64,
    pub eigenvalues: Vec<f64>,
    pub det_abs: f64,
    pub satisfies_a2: bool,
    pub c1_full: f64,
    pub c2_full: f64,
}

impl SpectralResult {
    pub fn ratio(&self) -> f64 {
        self.kappa2 / self.kappa1
    }
}

/// `(2π)²/|det L|`, the factor turning `κ` into integral constants.
pub fn volume_factor(spec: &LatticeSpec) -> f64 {
    (2.0 * PI).powi(2) / spec.det_l_abs()
}

pub fn ingham_constants(
    spec: &LatticeSpec,
    config: &TranslationConfig,
    rel_tol: f64,
) -> Result<SpectralResult, SpectralError> {
    let e = build_e(spec, config)?;
    let eigenvalues = hermitian_eigenvalues(&e.gram())?;
    // Rounding can push a zero eigenvalue slightly negative.
    let kappa1 = eigenvalues[0].max(0.0);
    let kappa2 = eigenvalues[eigenvalues.len() - 1];
    let factor = volume_factor(spec);
    Ok(SpectralResult {
        kappa1,
        kappa2,
        det_abs: e.det_abs(),
        satisfies_a2: kappa1 / kappa2 > rel_tol,
        c1_full: kappa1 * factor,
        c2_full: kappa2 * factor,
        eigenvalues,
    })
}

pub fn check_a2(spec: &LatticeSpec, config: &TranslationConfig, rel_tol: f64) -> Result<bool, SpectralError> {
    Ok(ingham_constants(spec, config, rel_tol)?.satisfies_a2)
}

/// `v = 2π·{(0,0), (1,0), (0,1), (1,1)}`, the configuration whose domain is a square.
pub fn two_square_canonical_config() -> TranslationConfig {
    TranslationConfig::new(vec![[0, 0], [1, 0], [0, 1], [1, 1]]).expect("distinct")
}

fn check_two_square(r: f64, big_r: f64, show: impl Fn() -> (String, String)) -> Result<(), SpectralError> {
    if r == 0.0 || r == big_r {
        let (r, big_r) = show();
        return Err(SpectralError::DegenerateTiling { r, big_r });
    }
    if !(r > 0.0 && r < big_r) {
        let (r, big_r) = show();
        return Err(SpectralError::InvalidTiling { r, big_r });
    }
    Ok(())
}

/// Tiling by squares of sides `r < R`, rotated so the centres of the small
/// squares lie on `√(R²+r²)·ℤ²`.
///
/// The translates are the vertices of the small square centred at the origin:
/// `u_j = A(cos θ_j, sin θ_j)` with `A = r/√(2(R²+r²))`, `θ_j = −α + jπ/2`,
/// `α = arctan(r/R)`. Their coordinates are `±rR/(√2(R²+r²))` and
/// `±r²/(√2(R²+r²))`, exact in `ℚ(√2)`; the homothety `√(R²+r²)` is kept as
/// `scale_sq`.
pub fn two_square_spec(r: Rational, big_r: Rational) -> Result<LatticeSpec, SpectralError> {
    if r.is_zero() || r == big_r {
        return Err(SpectralError::DegenerateTiling { r: r.to_string(), big_r: big_r.to_string() });
    }
    if r < Rational::zero() || r > big_r {
        return Err(SpectralError::InvalidTiling { r: r.to_string(), big_r: big_r.to_string() });
    }
    let s = big_r * big_r + r * r;
    let two = Rational::from_integer(2);
    let z = Rational::zero();
    let c = QuadNumber::new(z, r * big_r / (two * s), 2).expect("2 is square-free"); // A cos α
    let sn = QuadNumber::new(z, r * r / (two * s), 2).expect("2 is square-free"); // A sin α
    let us = vec![[sn, c], [-c, sn], [-sn, -c], [c, -sn]];
    let one = QuadNumber::one();
    let zero = QuadNumber::zero();
    let mut spec = LatticeSpec::new(&format!("two_square_r{r}_R{big_r}"), [[one, zero], [zero, one]], us)?;
    spec.scale_sq = s;
    Ok(crate::lattice::validate_spec(spec)?)
}

/// Closed-form `det E` for the canonical two-square configuration,
/// `(C²−1)(D²−1)(C²D²−4CD+C²+D²+1)` with `C = exp(2πiA cos α)` and
/// `D = exp(2πiA sin α)`.
///
/// With these phases the displayed product agrees in modulus with the
/// determinant of `E` built from the translates (the printed matrix is `Eᵀ`
/// with permuted columns, which changes only the sign).
pub fn two_square_delta(r: f64, big_r: f64) -> Result<Complex64, SpectralError> {
    check_two_square(r, big_r, || (r.to_string(), big_r.to_string()))?;
    let alpha = (r / big_r).atan();
    let amp = r / (2.0 * (big_r * big_r + r * r)).sqrt();
    let c = Complex64::from_polar(1.0, 2.0 * PI * amp * alpha.cos());
    let d = Complex64::from_polar(1.0, 2.0 * PI * amp * alpha.sin());
    let one = Complex64::new(1.0, 0.0);
    let (c2, d2) = (c * c, d * d);
    Ok((c2 - one) * (d2 - one) * (c2 * d2 - 4.0 * c * d + c2 + d2 + one))
}

/// `|sin(2β+2γ) − 4sin(β+γ) + sin2β + sin2γ − 4sin(β+γ)(cosβ cosγ − 1)|`.
pub fn trig_identity_residual(beta: f64, gamma: f64) -> f64 {
    let lhs = (2.0 * beta + 2.0 * gamma).sin() - 4.0 * (beta + gamma).sin() + (2.0 * beta).sin() + (2.0 * gamma).sin();
    let rhs = 4.0 * (beta + gamma).sin() * (beta.cos() * gamma.cos() - 1.0);
    (lhs - rhs).abs()
}
