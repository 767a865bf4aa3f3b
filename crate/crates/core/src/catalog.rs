//! Exact data for the twelve tilings, their reference configurations, and the
//! published values the reproduction harness compares against.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{LatticeError, LatticeSpec, QMat, QVec};
use crate::quad::{parse_rational, QuadError, QuadNumber as Q, QuadRepr, Rational};
use crate::spectral::{two_square_canonical_config, two_square_spec, SpectralError, TranslationConfig};

/// Absolute tolerance for constants printed with two decimals.
pub const PAIR_TOL: f64 = 0.015;
/// Relative tolerance against closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Relative tolerance against printed decimals.
pub const PRINTED_TOL: f64 = 5e-4;

pub const NAMES: [&str; 12] = [
    "square",
    "triangular",
    "honeycomb",
    "two_square",
    "elongated_triangular",
    "trihexagonal",
    "snub_square",
    "truncated_square",
    "snub_hexagonal",
    "rhombitrihexagonal",
    "truncated_hexagonal",
    "truncated_trihexagonal",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown tiling {0:?}")]
    UnknownTiling(String),
    #[error("invalid spec file: {0}")]
    Json(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedConfig {
    pub label: String,
    pub config: TranslationConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub spec: LatticeSpec,
    pub default_configs: Vec<NamedConfig>,
    pub expected: Vec<ExpectedRecord>,
}

impl CatalogEntry {
    /// The first reference configuration.
    pub fn default_config(&self) -> &TranslationConfig {
        &self.default_configs[0].config
    }

    pub fn config(&self, label: &str) -> Option<&TranslationConfig> {
        self.default_configs.iter().find(|c| c.label == label).map(|c| &c.config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    A2Verdict,
    KappaPair,
    SurveyCount,
    Area,
    Diameter,
    RadiusBound,
    PolyominoCount,
    Minimality,
}

/// What is measured for an expected record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum Quantity {
    /// `1` if (A2) holds, `0` otherwise.
    A2Verdict {
        config: TranslationConfig,
    },
    /// `(κ₁, κ₂)`.
    KappaPair {
        config: TranslationConfig,
    },
    SurveyFailing {
        grid: i64,
    },
    SurveyPassing {
        grid: i64,
    },
    /// Every passing configuration on the grid has this `(κ₁, κ₂)`.
    UniformPassingPair {
        grid: i64,
    },
    /// `1` if the failing count is the same at every sweep tolerance.
    SweepStable {
        grid: i64,
    },
    /// Passing configurations among the fixed polyominoes with `M` cells.
    ConnectedPassing,
    Area {
        config: TranslationConfig,
    },
    HalfDiameter {
        config: TranslationConfig,
    },
    NecessaryRadius {
        config: TranslationConfig,
    },
    BesselRadius,
    /// Triangular parallelogram area over the honeycomb domain area.
    DensityRatio,
    PolyominoCount {
        size: usize,
    },
    /// `1` if the images `L*u_j` certify that no fewer translates suffice.
    Minimality,
}

impl Quantity {
    pub fn kind(&self) -> Kind {
        match self {
            Quantity::A2Verdict { .. } => Kind::A2Verdict,
            Quantity::KappaPair { .. } | Quantity::UniformPassingPair { .. } => Kind::KappaPair,
            Quantity::SurveyFailing { .. }
            | Quantity::SurveyPassing { .. }
            | Quantity::SweepStable { .. }
            | Quantity::ConnectedPassing => Kind::SurveyCount,
            Quantity::Area { .. } | Quantity::DensityRatio => Kind::Area,
            Quantity::HalfDiameter { .. } => Kind::Diameter,
            Quantity::NecessaryRadius { .. } | Quantity::BesselRadius => Kind::RadiusBound,
            Quantity::PolyominoCount { .. } => Kind::PolyominoCount,
            Quantity::Minimality => Kind::Minimality,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Exact,
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    pub fn accepts(&self, expected: f64, computed: f64) -> bool {
        match *self {
            Tolerance::Exact => expected == computed,
            Tolerance::Absolute(t) => (expected - computed).abs() <= t,
            Tolerance::Relative(t) => (expected - computed).abs() <= t * expected.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRecord {
    pub tiling: String,
    pub kind: Kind,
    #[serde(flatten)]
    pub quantity: Quantity,
    pub values: Vec<f64>,
    pub tolerance: Tolerance,
    pub source: String,
}

impl ExpectedRecord {
    pub fn new(tiling: &str, quantity: Quantity, values: Vec<f64>, tolerance: Tolerance, source: &str) -> Self {
        Self {
            tiling: tiling.to_string(),
            kind: quantity.kind(),
            quantity,
            values,
            tolerance,
            source: source.to_string(),
        }
    }

    /// Compares computed values elementwise.
    pub fn accepts(&self, computed: &[f64]) -> bool {
        computed.len() == self.values.len()
            && self.values.iter().zip(computed).all(|(&e, &c)| self.tolerance.accepts(e, c))
    }
}

fn cfg(s: &str) -> TranslationConfig {
    s.parse().expect("catalog configurations are well formed")
}

fn named(label: &str, s: &str) -> NamedConfig {
    NamedConfig { label: label.to_string(), config: cfg(s) }
}

fn q(p: i128, s: i128, d: u32, den: i128) -> Q {
    Q::surd(p, s, d, den)
}

fn r(p: i128, den: i128) -> Q {
    Q::frac(p, den)
}

fn spec(name: &str, l_star: QMat, us: Vec<QVec>) -> LatticeSpec {
    LatticeSpec::new(name, l_star, us).expect("catalog data is valid")
}

fn pair(tiling: &str, config: &str, k1: f64, k2: f64, source: &str) -> ExpectedRecord {
    ExpectedRecord::new(
        tiling,
        Quantity::KappaPair { config: cfg(config) },
        vec![k1, k2],
        Tolerance::Absolute(PAIR_TOL),
        source,
    )
}

fn a2(tiling: &str, config: &str, holds: bool, source: &str) -> ExpectedRecord {
    let v = if holds { 1.0 } else { 0.0 };
    ExpectedRecord::new(tiling, Quantity::A2Verdict { config: cfg(config) }, vec![v], Tolerance::Exact, source)
}

fn count(tiling: &str, quantity: Quantity, n: usize, source: &str) -> ExpectedRecord {
    ExpectedRecord::new(tiling, quantity, vec![n as f64], Tolerance::Exact, source)
}

fn measured(tiling: &str, quantity: Quantity, value: f64, tolerance: Tolerance, source: &str) -> ExpectedRecord {
    ExpectedRecord::new(tiling, quantity, vec![value], tolerance, source)
}

const COLUMN: &str = "0,0;0,1;0,2;0,3;0,4;0,5";
const COLUMN_BENT: &str = "0,0;0,1;0,2;0,3;0,4;1,4";
const STAIRCASE: &str = "0,0;0,1;0,2;0,3;1,3;1,4";

fn square() -> CatalogEntry {
    let n = "square";
    CatalogEntry {
        spec: spec(n, [[Q::one(), Q::zero()], [Q::zero(), Q::one()]], vec![[Q::zero(), Q::zero()]]),
        default_configs: vec![named("unit", "0,0")],
        expected: vec![pair(n, "0,0", 1.0, 1.0, "Parseval baseline")],
    }
}

// 6.28 below is the printed decimal, not an approximation of τ.
#[allow(clippy::approx_constant)]
fn triangular() -> CatalogEntry {
    let n = "triangular";
    let c = cfg("0,0");
    let printed = Tolerance::Relative(PRINTED_TOL);
    let exact = Tolerance::Relative(CLOSED_FORM_TOL);
    CatalogEntry {
        spec: spec(n, [[Q::one(), r(1, 2)], [Q::zero(), q(0, 1, 3, 2)]], vec![[Q::zero(), Q::zero()]]),
        default_configs: vec![named("unit", "0,0")],
        expected: vec![
            a2(n, "0,0", true, "triangular lattice, single translate"),
            pair(n, "0,0", 1.0, 1.0, "single translate gives Parseval constants"),
            measured(n, Quantity::Area { config: c.clone() }, 8.0 * PI * PI / 3f64.sqrt(), exact, "area 8π²/√3"),
            measured(n, Quantity::HalfDiameter { config: c.clone() }, 2.0 * PI, exact, "half diameter 2π"),
            measured(n, Quantity::HalfDiameter { config: c.clone() }, 6.28, printed, "half diameter ≈ 6.28"),
            measured(
                n,
                Quantity::NecessaryRadius { config: c.clone() },
                2.0 * (2.0 * PI).sqrt() / 3f64.powf(0.25),
                exact,
                "necessary radius 2√(2π)/3^¼",
            ),
            measured(n, Quantity::NecessaryRadius { config: c }, 3.8, printed, "necessary radius ≈ 3.8"),
            measured(n, Quantity::BesselRadius, 4.8096, Tolerance::Absolute(PRINTED_TOL), "2ρ₂ ≈ 4.8096"),
            measured(n, Quantity::DensityRatio, 1.5, exact, "density 1.5 times larger"),
        ],
    }
}

fn honeycomb() -> CatalogEntry {
    let n = "honeycomb";
    let c = cfg("0,0;1,0");
    let printed = Tolerance::Relative(PRINTED_TOL);
    let exact = Tolerance::Relative(CLOSED_FORM_TOL);
    CatalogEntry {
        spec: spec(
            n,
            [[r(3, 2), Q::zero()], [q(0, 1, 3, 2), Q::sqrt(3)]],
            vec![[Q::zero(), Q::zero()], [r(2, 3), r(-1, 3)]],
        ),
        default_configs: vec![named("horizontal", "0,0;1,0"), named("vertical", "0,0;0,1")],
        expected: vec![
            a2(n, "0,0;1,0", true, "honeycomb, v₂ = (2π, 0)"),
            a2(n, "0,0;0,1", true, "honeycomb, v₂ = (0, 2π)"),
            measured(
                n,
                Quantity::Area { config: c.clone() },
                16.0 * PI * PI / (3.0 * 3f64.sqrt()),
                exact,
                "area 16π²/(3√3)",
            ),
            measured(
                n,
                Quantity::HalfDiameter { config: c.clone() },
                2.0 * PI * 7f64.sqrt() / 3.0,
                exact,
                "half diameter 2π√7/3",
            ),
            measured(n, Quantity::HalfDiameter { config: c.clone() }, 5.54, printed, "half diameter ≈ 5.54"),
            measured(
                n,
                Quantity::NecessaryRadius { config: c.clone() },
                4.0 * (PI / (3.0 * 3f64.sqrt())).sqrt(),
                exact,
                "necessary radius 4√(π/(3√3))",
            ),
            measured(n, Quantity::NecessaryRadius { config: c }, 3.11, printed, "necessary radius ≈ 3.11"),
            count(n, Quantity::Minimality, 1, "two translates are needed"),
        ],
    }
}

fn two_square_expected(name: &str, r: i64, big_r: i64) -> Vec<ExpectedRecord> {
    let failing = match (r, big_r) {
        (1, 2) => 9,
        (1, 3) => 28,
        (1, 4) => 0,
        (1, 5) => 4,
        _ => return vec![a2(name, "0,0;1,0;0,1;1,1", true, "square domain for 0 < r < R")],
    };
    vec![
        count(name, Quantity::SurveyFailing { grid: 3 }, failing, "failing domains over 1820"),
        count(name, Quantity::SweepStable { grid: 3 }, 1, "failing count independent of the (A2) threshold"),
    ]
}

/// Two-square tiling with sides `r < R`.
pub fn two_square(r: Rational, big_r: Rational) -> Result<CatalogEntry, CatalogError> {
    let spec = two_square_spec(r, big_r)?;
    let expected = if r.is_integer() && big_r.is_integer() {
        let (a, b) = (r.to_integer(), big_r.to_integer());
        two_square_expected(&spec.name, a as i64, b as i64)
    } else {
        vec![]
    };
    Ok(CatalogEntry {
        default_configs: vec![NamedConfig { label: "square".to_string(), config: two_square_canonical_config() }],
        expected,
        spec,
    })
}

fn elongated_triangular() -> CatalogEntry {
    let n = "elongated_triangular";
    CatalogEntry {
        spec: spec(
            n,
            [[Q::one(), r(1, 2)], [Q::zero(), q(2, 1, 3, 2)]],
            vec![[Q::zero(), Q::zero()], [q(-1, 1, 3, 1), q(4, -2, 3, 1)]],
        ),
        default_configs: vec![
            named("vertical", "0,0;0,1"),
            named("horizontal", "0,0;1,0"),
            named("antidiagonal", "0,1;1,0"),
        ],
        expected: vec![
            pair(n, "0,0;0,1", 1.77, 2.22, "elongated triangular, first domain"),
            pair(n, "0,0;1,0", 0.66, 3.33, "elongated triangular, second domain"),
            pair(n, "0,1;1,0", 0.36, 3.63, "elongated triangular, third domain"),
        ],
    }
}

fn trihexagonal() -> CatalogEntry {
    let n = "trihexagonal";
    CatalogEntry {
        spec: spec(
            n,
            [[Q::sqrt(3), Q::sqrt(3)], [Q::one(), Q::int(-1)]],
            vec![[Q::zero(), Q::zero()], [Q::zero(), r(1, 2)], [r(1, 2), Q::zero()]],
        ),
        default_configs: vec![named("corner", "0,0;0,1;1,0")],
        expected: vec![
            pair(n, "0,0;0,1;1,0", 1.0, 4.0, "trihexagonal constants 1 and 4"),
            count(n, Quantity::SurveyPassing { grid: 2 }, 36, "36 over the 84 domains satisfy (A2)"),
            ExpectedRecord::new(
                n,
                Quantity::UniformPassingPair { grid: 2 },
                vec![1.0, 4.0],
                Tolerance::Absolute(1e-9),
                "constants constantly equal to 1 and 4",
            ),
            count(n, Quantity::SweepStable { grid: 2 }, 1, "passing count independent of the (A2) threshold"),
        ],
    }
}

fn snub_square() -> CatalogEntry {
    let n = "snub_square";
    CatalogEntry {
        spec: spec(
            n,
            [[q(2, 1, 3, 2), r(-1, 2)], [r(1, 2), q(2, 1, 3, 2)]],
            vec![
                [Q::zero(), Q::zero()],
                [q(2, -1, 3, 2), r(1, 2)],
                [q(3, -1, 3, 2), q(-1, 1, 3, 2)],
                [r(1, 2), q(0, 1, 3, 2)],
            ],
        ),
        default_configs: vec![
            named("T", "0,0;0,1;0,2;1,1"),
            named("L", "0,0;0,1;0,2;1,0"),
            named("I", "0,0;0,1;0,2;0,3"),
            named("S", "0,0;0,1;1,1;1,2"),
            named("O", "0,0;0,1;1,0;1,1"),
        ],
        expected: vec![
            pair(n, "0,0;0,1;0,2;1,1", 1.03, 6.66, "snub square representative (A)"),
            pair(n, "0,0;0,1;0,2;1,0", 0.16, 7.83, "snub square representative (B)"),
            pair(n, "0,0;0,1;0,2;0,3", 1.33, 6.66, "snub square representative (C)"),
            pair(n, "0,0;0,1;1,1;1,2", 1.12, 6.87, "snub square representative (D)"),
            pair(n, "0,0;0,1;1,0;1,1", 0.54, 2.16, "snub square representative (E), the square tetromino"),
            count(n, Quantity::ConnectedPassing, 19, "every connected domain satisfies (A2)"),
            count(n, Quantity::SurveyFailing { grid: 3 }, 76, "76 over 1820 domains fail (A2)"),
            count(n, Quantity::SweepStable { grid: 3 }, 1, "failing count independent of the (A2) threshold"),
            count(n, Quantity::PolyominoCount { size: 4 }, 19, "19 fixed tetrominoes"),
        ],
    }
}

fn truncated_square() -> CatalogEntry {
    let n = "truncated_square";
    CatalogEntry {
        spec: spec(
            n,
            [[q(2, 1, 2, 1), q(2, 1, 2, 2)], [Q::zero(), q(2, 1, 2, 2)]],
            vec![
                [Q::zero(), Q::zero()],
                [q(2, -1, 2, 2), Q::zero()],
                [Q::zero(), q(2, -1, 2, 1)],
                [q(0, 1, 2, 2), q(2, -1, 2, 1)],
            ],
        ),
        default_configs: vec![
            named("T", "0,0;1,0;1,1;2,0"),
            named("L", "0,0;0,1;1,1;2,1"),
            named("J", "0,0;0,1;1,0;2,0"),
            named("S", "0,1;0,2;1,0;1,1"),
            named("O", "0,0;0,1;1,0;1,1"),
            named("T'", "0,1;1,0;1,1;2,0"),
        ],
        expected: vec![
            pair(n, "0,0;1,0;1,1;2,0", 1.02, 7.24, "truncated square connected domain"),
            pair(n, "0,0;0,1;1,1;2,1", 0.71, 6.23, "truncated square connected domain"),
            pair(n, "0,0;0,1;1,0;2,0", 0.83, 7.33, "truncated square connected domain"),
            pair(n, "0,1;0,2;1,0;1,1", 1.17, 8.02, "truncated square connected domain"),
            pair(n, "0,0;0,1;1,0;1,1", 1.24, 7.53, "truncated square connected domain"),
            pair(n, "0,1;1,0;1,1;2,0", 0.22, 7.92, "truncated square connected domain"),
            count(n, Quantity::ConnectedPassing, 9, "connected domains satisfying (A2) contain 9 elements"),
            count(n, Quantity::SurveyFailing { grid: 3 }, 892, "892 over 1820 domains fail (A2)"),
            count(n, Quantity::SweepStable { grid: 3 }, 1, "failing count independent of the (A2) threshold"),
        ],
    }
}

fn snub_hexagonal() -> CatalogEntry {
    let n = "snub_hexagonal";
    let sevenths = |a, b| [r(a, 7), r(b, 7)];
    CatalogEntry {
        spec: spec(
            n,
            [[Q::sqrt(3), q(0, 1, 3, 2)], [Q::int(2), r(-5, 2)]],
            vec![sevenths(0, 0), sevenths(3, 1), sevenths(2, 3), sevenths(5, 4), sevenths(1, 5), sevenths(4, 6)],
        ),
        default_configs: vec![named("column", COLUMN), named("bent", COLUMN_BENT)],
        expected: vec![
            pair(n, COLUMN, 1.0, 7.0, "snub hexagonal column, constants 1 and 7"),
            a2(n, COLUMN_BENT, false, "snub hexagonal bent column fails (A2)"),
        ],
    }
}

fn rhombitrihexagonal() -> CatalogEntry {
    let n = "rhombitrihexagonal";
    CatalogEntry {
        spec: spec(
            n,
            [[q(1, 1, 3, 1), q(1, 1, 3, 2)], [Q::zero(), q(3, 1, 3, 2)]],
            vec![
                [Q::zero(), Q::zero()],
                [q(-1, 1, 3, 2), Q::zero()],
                [q(-3, 2, 3, 3), q(3, -1, 3, 3)],
                [q(-1, 1, 3, 2), q(3, -1, 3, 2)],
                [q(3, 1, 3, 6), q(3, -1, 3, 3)],
                [q(3, 1, 3, 6), q(3, 1, 3, 6)],
            ],
        ),
        default_configs: vec![named("staircase", STAIRCASE), named("column", COLUMN), named("bent", COLUMN_BENT)],
        expected: vec![
            a2(n, COLUMN, false, "rhombitrihexagonal column fails (A2)"),
            a2(n, COLUMN_BENT, false, "rhombitrihexagonal bent column fails (A2)"),
            pair(n, STAIRCASE, 0.47, 11.92, "rhombitrihexagonal staircase constants"),
        ],
    }
}

fn truncated_hexagonal() -> CatalogEntry {
    let n = "truncated_hexagonal";
    CatalogEntry {
        spec: spec(
            n,
            [[q(2, 1, 3, 2), r(1, 2)], [r(1, 2), q(2, 1, 3, 2)]],
            vec![
                [q(0, 1, 3, 3), q(6, -2, 3, 3)],
                [q(3, -1, 3, 3), q(-3, 2, 3, 3)],
                [q(-3, 2, 3, 3), q(3, -1, 3, 3)],
                [q(6, -2, 3, 3), q(0, 1, 3, 3)],
                [q(0, 1, 3, 3), q(0, 1, 3, 3)],
                [q(3, -1, 3, 3), q(3, -1, 3, 3)],
            ],
        ),
        default_configs: vec![named("staircase", STAIRCASE), named("column", COLUMN), named("bent", COLUMN_BENT)],
        expected: vec![
            a2(n, COLUMN, false, "truncated hexagonal column fails (A2)"),
            a2(n, COLUMN_BENT, false, "truncated hexagonal bent column fails (A2)"),
            pair(n, STAIRCASE, 0.15, 15.6, "truncated hexagonal staircase constants"),
        ],
    }
}

const BLOCK_6X2: &str = "0,0;0,1;1,0;1,1;2,0;2,1;3,0;3,1;4,0;4,1;5,0;5,1";
const BLOCK_3X4: &str = "0,0;0,1;0,2;0,3;1,0;1,1;1,2;1,3;2,0;2,1;2,2;2,3";

fn truncated_trihexagonal() -> CatalogEntry {
    let n = "truncated_trihexagonal";
    let sixths = |x: Q, y: Q| [x * r(1, 6), y * r(1, 6)];
    let (two, four) = (Q::int(2), Q::int(4));
    let (a, b, c) = (q(5, -1, 3, 1), q(-1, 1, 3, 1), q(7, -1, 3, 1));
    let d = q(1, 1, 3, 1);
    CatalogEntry {
        spec: spec(
            n,
            [[q(3, 1, 3, 2), q(3, -1, 3, 2)], [q(3, -1, 3, 2), q(3, 1, 3, 2)]],
            vec![
                sixths(two, a),
                sixths(b, a),
                sixths(b, two),
                sixths(two, b),
                sixths(a, b),
                sixths(a, two),
                sixths(four, c),
                sixths(d, c),
                sixths(d, four),
                sixths(four, d),
                sixths(c, d),
                sixths(c, four),
            ],
        ),
        default_configs: vec![named("block6x2", BLOCK_6X2), named("block3x4", BLOCK_3X4)],
        expected: vec![
            pair(n, BLOCK_6X2, 2.71, 28.02, "truncated trihexagonal 6×2 block constants"),
            a2(n, BLOCK_3X4, false, "truncated trihexagonal 3×4 block fails (A2)"),
        ],
    }
}

/// Parses `two_square`, `two_square_r1_R3`, `two_square_r1/2_R2`.
fn parse_two_square(name: &str) -> Option<Result<CatalogEntry, CatalogError>> {
    if name == "two_square" {
        return Some(two_square(Rational::from_integer(1), Rational::from_integer(3)));
    }
    let rest = name.strip_prefix("two_square_r")?;
    let (r, big_r) = rest.split_once("_R")?;
    let (r, big_r) = (parse_rational(r).ok()?, parse_rational(big_r).ok()?);
    Some(two_square(r, big_r))
}

pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    if let Some(entry) = parse_two_square(name) {
        return entry;
    }
    Ok(match name {
        "square" => square(),
        "triangular" => triangular(),
        "honeycomb" => honeycomb(),
        "elongated_triangular" => elongated_triangular(),
        "trihexagonal" => trihexagonal(),
        "snub_square" => snub_square(),
        "truncated_square" => truncated_square(),
        "snub_hexagonal" => snub_hexagonal(),
        "rhombitrihexagonal" => rhombitrihexagonal(),
        "truncated_hexagonal" => truncated_hexagonal(),
        "truncated_trihexagonal" => truncated_trihexagonal(),
        _ => return Err(CatalogError::UnknownTiling(name.to_string())),
    })
}

pub fn expected_results(name: &str) -> Result<Vec<ExpectedRecord>, CatalogError> {
    Ok(get(name)?.expected)
}

/// Two-square parameters with published survey counts.
pub const TWO_SQUARE_SURVEYS: [(i64, i64); 4] = [(1, 2), (1, 3), (1, 4), (1, 5)];

/// Every entry the reproduction harness runs: the fixed tilings plus the
/// surveyed two-square parameters.
pub fn reproduction_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for name in NAMES {
        if name == "two_square" {
            for (r, big_r) in TWO_SQUARE_SURVEYS {
                out.push(
                    two_square(Rational::from_integer(r.into()), Rational::from_integer(big_r.into()))
                        .expect("valid parameters"),
                );
            }
        } else {
            out.push(get(name).expect("catalog name"));
        }
    }
    out
}

/// Interchange form: `{name, d, l_star, us[, scale_sq]}` with exact
/// rationals as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub name: String,
    pub d: u32,
    pub l_star: [[QuadRepr; 2]; 2],
    pub us: Vec<[QuadRepr; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale_sq: Option<String>,
}

pub fn spec_to_json(spec: &LatticeSpec) -> SpecJson {
    let repr = |v: &[Q; 2]| [QuadRepr::from_quad(&v[0]), QuadRepr::from_quad(&v[1])];
    SpecJson {
        name: spec.name.clone(),
        d: spec.field().expect("validated spec"),
        l_star: [repr(&spec.l_star[0]), repr(&spec.l_star[1])],
        us: spec.us.iter().map(repr).collect(),
        scale_sq: (spec.scale_sq != Rational::from_integer(1)).then(|| spec.scale_sq.to_string()),
    }
}

pub fn spec_from_json(json: &SpecJson) -> Result<LatticeSpec, CatalogError> {
    let quad = |v: &[QuadRepr; 2]| -> Result<QVec, CatalogError> { Ok([v[0].to_quad(json.d)?, v[1].to_quad(json.d)?]) };
    let l_star = [quad(&json.l_star[0])?, quad(&json.l_star[1])?];
    let us = json.us.iter().map(quad).collect::<Result<Vec<_>, _>>()?;
    let mut spec = LatticeSpec::new(&json.name, l_star, us)?;
    if let Some(s) = &json.scale_sq {
        spec.scale_sq = parse_rational(s)?;
        spec = crate::lattice::validate_spec(spec)?;
    }
    Ok(spec)
}

pub fn parse_spec_json(text: &str) -> Result<LatticeSpec, CatalogError> {
    let json: SpecJson = serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
    spec_from_json(&json)
}
