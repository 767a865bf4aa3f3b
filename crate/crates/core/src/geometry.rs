//! The integration domain `Ω = L⁻¹(⋃_k (2πn_k + Ω₀))`, `Ω₀ = (0,2π)²`.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::LatticeSpec;
use crate::spectral::TranslationConfig;

pub type Point = [f64; 2];

/// Largest polyomino size `fixed_polyominoes` enumerates.
pub const MAX_POLYOMINO: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polyomino size {0} is outside 1..={MAX_POLYOMINO}")]
    SizeTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainGeometry {
    /// One parallelogram per offset, vertices in boundary order.
    pub cells: Vec<[Point; 4]>,
    pub area: f64,
    pub diameter: f64,
    pub connected: bool,
}

fn apply(m: &[[f64; 2]; 2], p: Point) -> Point {
    [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
}

fn shoelace(poly: &[Point]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    twice.abs() / 2.0
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn omega_cells(spec: &LatticeSpec, config: &TranslationConfig) -> DomainGeometry {
    let l_inv = spec.l_inv_f64();
    let tau = 2.0 * PI;
    let corners = [[0.0, 0.0], [tau, 0.0], [tau, tau], [0.0, tau]];
    let cells: Vec<[Point; 4]> = config
        .ns()
        .iter()
        .map(|n| {
            let base = [tau * n[0] as f64, tau * n[1] as f64];
            corners.map(|c| apply(&l_inv, [base[0] + c[0], base[1] + c[1]]))
        })
        .collect();
    let area = cells.iter().map(|c| shoelace(c)).sum();
    let verts: Vec<Point> = cells.iter().flatten().copied().collect();
    let diameter = verts
        .iter()
        .enumerate()
        .flat_map(|(i, a)| verts[i + 1..].iter().map(move |b| dist(*a, *b)))
        .fold(0.0, f64::max);
    DomainGeometry { cells, area, diameter, connected: is_connected(config.ns()) }
}

/// `M·(2π)²/|det L|`, independent of which offsets are chosen.
pub fn expected_area(spec: &LatticeSpec, m: usize) -> f64 {
    m as f64 * (2.0 * PI).powi(2) / spec.det_l_abs()
}

/// Relative deviation of the measured area of `Ω` from [`expected_area`].
pub fn area_check(geometry: &DomainGeometry, spec: &LatticeSpec) -> f64 {
    let want = expected_area(spec, geometry.cells.len());
    (geometry.area - want).abs() / want
}

/// Area of the union of the cells, measured in offset coordinates where the
/// cells are axis-aligned squares, so overlaps are counted once.
pub fn union_area(spec: &LatticeSpec, config: &TranslationConfig) -> f64 {
    let distinct: BTreeSet<[i64; 2]> = config.ns().iter().copied().collect();
    distinct.len() as f64 * (2.0 * PI).powi(2) / spec.det_l_abs()
}

/// Convex hull of all cell vertices, counter-clockwise from the lowest-leftmost point.
pub fn hull(geometry: &DomainGeometry) -> Vec<Point> {
    let mut pts: Vec<Point> = geometry.cells.iter().flatten().copied().collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| dist(*a, *b) < 1e-9);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let scale = pts.iter().map(|p| p[0].abs().max(p[1].abs())).fold(1.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Polygon rows `cell_index,vertex_index,x,y`.
pub fn cells_csv(geometry: &DomainGeometry) -> String {
    let mut out = String::from("cell_index,vertex_index,x,y\n");
    for (i, cell) in geometry.cells.iter().enumerate() {
        for (k, v) in cell.iter().enumerate() {
            writeln!(out, "{i},{k},{},{}", v[0], v[1]).unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskBounds {
    /// Half the diameter: a disk this large contains a translate of `Ω`.
    pub r_sufficient: f64,
    /// `√(|Ω|/π)`: no smaller disk has the area of `Ω`.
    pub r_necessary: f64,
    /// `2ρ₂`, twice the first positive zero of `J₀`.
    pub r_bessel: f64,
}

pub fn disk_bounds(geometry: &DomainGeometry) -> DiskBounds {
    DiskBounds {
        r_sufficient: geometry.diameter / 2.0,
        r_necessary: (geometry.area / PI).sqrt(),
        r_bessel: 2.0 * bessel_j0_root(),
    }
}

/// `J₀(x) = Σ (−1)^k (x/2)^{2k} / (k!)²`, summed until the terms vanish.
///
/// Accurate for moderate `x` (the series is used on `[0, 10]` here).
pub fn bessel_j0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Smallest positive zero of `J₀`, by bisection on `[2, 3]`.
pub fn bessel_j0_root() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    let f_lo = bessel_j0(lo);
    debug_assert!(f_lo > 0.0 && bessel_j0(hi) < 0.0);
    while hi - lo > 4.0 * f64::EPSILON {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Edge-adjacency (4-neighbourhood) connectivity of grid cells.
pub fn is_connected(ns: &[[i64; 2]]) -> bool {
    if ns.is_empty() {
        return false;
    }
    let cells: BTreeSet<[i64; 2]> = ns.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([ns[0]]);
    seen.insert(ns[0]);
    while let Some(c) = queue.pop_front() {
        for d in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            let nb = [c[0] + d[0], c[1] + d[1]];
            if cells.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == cells.len()
}

/// Polyomino considered up to translation only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PolyominoShape {
    cells: Vec<[i64; 2]>,
}

impl PolyominoShape {
    /// Translates so the minimum coordinates are zero and sorts the cells.
    pub fn canonical(cells: &[[i64; 2]]) -> Self {
        let mx = cells.iter().map(|c| c[0]).min().unwrap_or(0);
        let my = cells.iter().map(|c| c[1]).min().unwrap_or(0);
        let mut v: Vec<[i64; 2]> = cells.iter().map(|c| [c[0] - mx, c[1] - my]).collect();
        v.sort_unstable();
        v.dedup();
        Self { cells: v }
    }

    pub fn cells(&self) -> &[[i64; 2]] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn rotated90(&self) -> Self {
        let r: Vec<[i64; 2]> = self.cells.iter().map(|c| [-c[1], c[0]]).collect();
        Self::canonical(&r)
    }

    pub fn reflected(&self) -> Self {
        let r: Vec<[i64; 2]> = self.cells.iter().map(|c| [-c[0], c[1]]).collect();
        Self::canonical(&r)
    }

    pub fn to_config(&self) -> TranslationConfig {
        TranslationConfig::new(self.cells.clone()).expect("canonical cells are distinct")
    }
}

/// All fixed polyominoes with `size` cells, canonical and sorted.
pub fn fixed_polyominoes(size: usize) -> Result<Vec<PolyominoShape>, GeometryError> {
    if size == 0 || size > MAX_POLYOMINO {
        return Err(GeometryError::SizeTooLarge(size));
    }
    let mut shapes: BTreeSet<PolyominoShape> = BTreeSet::from([PolyominoShape::canonical(&[[0, 0]])]);
    for _ in 1..size {
        let mut grown = BTreeSet::new();
        for s in &shapes {
            for c in s.cells() {
                for d in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
                    let nb = [c[0] + d[0], c[1] + d[1]];
                    if s.cells().contains(&nb) {
                        continue;
                    }
                    let mut cells = s.cells().to_vec();
                    cells.push(nb);
                    grown.insert(PolyominoShape::canonical(&cells));
                }
            }
        }
        shapes = grown;
    }
    Ok(shapes.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadNumber as Q;
    use itertools::Itertools;

    fn square() -> LatticeSpec {
        LatticeSpec::new("square", [[Q::one(), Q::zero()], [Q::zero(), Q::one()]], vec![[Q::zero(), Q::zero()]])
            .unwrap()
    }

    fn cfg(ns: &[[i64; 2]]) -> TranslationConfig {
        TranslationConfig::new(ns.to_vec()).unwrap()
    }

    #[test]
    fn identity_cell_is_the_cube() {
        let g = omega_cells(&square(), &cfg(&[[0, 0]]));
        let t = 2.0 * PI;
        assert_eq!(g.cells[0], [[0.0, 0.0], [t, 0.0], [t, t], [0.0, t]]);
        assert!((g.area - t * t).abs() < 1e-12);
        let b = disk_bounds(&g);
        assert!((b.r_sufficient - 2f64.sqrt() * PI).abs() < 1e-12);
        assert!((b.r_necessary - 2.0 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn j0_root() {
        let rho = bessel_j0_root();
        assert!((rho - 2.404_825_557_695_773).abs() < 1e-7);
        assert!(bessel_j0(rho).abs() < 1e-10);
        assert!((bessel_j0(0.0) - 1.0).abs() < 1e-15);
        // J₀(1) from standard tables
        assert!((bessel_j0(1.0) - 0.765_197_686_557_966_6).abs() < 1e-14);
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&[[0, 0], [1, 0], [2, 0], [3, 0]]));
        assert!(!is_connected(&[[0, 0], [1, 1]]));
        assert!(is_connected(&[[0, 0], [0, 1], [0, 2], [0, 3], [1, 3], [1, 4]]));
        assert!(!is_connected(&[]));
    }

    /// Independent count: connected `size`-subsets of a box, up to translation.
    fn brute_force_count(size: usize) -> usize {
        let n = size as i64;
        let pts: Vec<[i64; 2]> = (0..n).cartesian_product(0..n).map(|(a, b)| [a, b]).collect();
        pts.iter()
            .copied()
            .combinations(size)
            .filter(|c| is_connected(c))
            .map(|c| PolyominoShape::canonical(&c))
            .collect::<BTreeSet<_>>()
            .len()
    }

    #[test]
    fn polyomino_counts_match_brute_force() {
        for size in 1..=5 {
            assert_eq!(fixed_polyominoes(size).unwrap().len(), brute_force_count(size), "size {size}");
        }
        let counts: Vec<usize> = (1..=8).map(|s| fixed_polyominoes(s).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 19, 63, 216, 760, 2725]);
        assert!(fixed_polyominoes(0).is_err());
        assert!(fixed_polyominoes(9).is_err());
    }

    #[test]
    fn rotation_permutes_tetrominoes() {
        let t = fixed_polyominoes(4).unwrap();
        let mut rotated: Vec<PolyominoShape> = t.iter().map(PolyominoShape::rotated90).collect();
        rotated.sort();
        assert_eq!(rotated, t);
        assert!(t.iter().all(|s| is_connected(s.cells())));
    }

    #[test]
    fn csv_rows() {
        let g = omega_cells(&square(), &cfg(&[[0, 0], [1, 0]]));
        let csv = cells_csv(&g);
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.starts_with("cell_index,vertex_index,x,y\n0,0,0,0\n"));
    }

    #[test]
    fn hull_of_domino_is_rectangle() {
        let g = omega_cells(&square(), &cfg(&[[0, 0], [1, 0]]));
        let h = hull(&g);
        assert_eq!(h.len(), 4);
        assert!((shoelace(&h) - g.area).abs() < 1e-9);
    }
}
