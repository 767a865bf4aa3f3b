use std::collections::BTreeSet;

use ingham_core::catalog;
use ingham_core::geometry::{fixed_polyominoes, PolyominoShape};
use ingham_core::search::translation_classes;
use ingham_core::spectral::{build_e, ingham_constants, DEFAULT_A2_TOL};
use ingham_core::verify::{frame_bound_check, gram, SupportSet, VerifyError};
use ingham_core::{LatticePoint, QuadNumber as Q, TranslationConfig};
use proptest::prelude::*;

fn tiling() -> impl Strategy<Value = &'static str> {
    prop::sample::select(catalog::NAMES.to_vec())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-20i128..=20, -20i128..=20, prop::sample::select(vec![1u32, 2, 3, 5, 7]), 1i128..=12)
        .prop_map(|(p, s, d, den)| Q::surd(p, s, d, den))
}

fn same_field(a: &Q, b: &Q) -> bool {
    a.radicand() == b.radicand() || a.radicand() == 1 || b.radicand() == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_supports_respect_frame_bounds(
        name in tiling(),
        picks in prop::collection::btree_set((0usize..12, -3i64..=3, -3i64..=3), 1..50),
    ) {
        let entry = catalog::get(name).unwrap();
        let m = entry.spec.m();
        let items: BTreeSet<LatticePoint> = picks.into_iter().map(|(j, a, b)| LatticePoint::new(j % m, [a, b])).collect();
        let support = SupportSet::new(items.into_iter().collect()).unwrap();
        for nc in &entry.default_configs {
            match frame_bound_check(&entry.spec, &nc.config, &support, DEFAULT_A2_TOL) {
                Ok(c) => prop_assert!(c.pass, "{name} {}: {c:?}", nc.label),
                Err(VerifyError::A2Violated { upper_ok, .. }) => prop_assert!(upper_ok),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn dropping_one_item_interlaces(name in tiling(), radius in 1i64..=2, drop in 0usize..200) {
        let entry = catalog::get(name).unwrap();
        let m = entry.spec.m();
        let big = SupportSet::box_range(m, 0, radius);
        prop_assume!(big.len() <= 50 && big.len() > 1);
        let mut items = big.items().to_vec();
        items.remove(drop % items.len());
        let small = SupportSet::new(items).unwrap();
        let config = entry.default_config();
        let a = gram(&entry.spec, config, &small).unwrap().eigenvalues();
        let b = gram(&entry.spec, config, &big).unwrap().eigenvalues();
        let tol = 1e-9 * b[b.len() - 1];
        for k in 0..a.len() {
            prop_assert!(b[k] <= a[k] + tol && a[k] <= b[k + 1] + tol);
        }
    }

    #[test]
    fn e_rows_have_unit_modulus(name in tiling(), shift in (-5i64..=5, -5i64..=5)) {
        let entry = catalog::get(name).unwrap();
        let config = entry.default_config().translated([shift.0, shift.1]);
        let e = build_e(&entry.spec, &config).unwrap();
        prop_assert!(e.entries.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        let res = ingham_constants(&entry.spec, &config, DEFAULT_A2_TOL).unwrap();
        // trace(EE*) = M² puts the mean eigenvalue at M
        let m = entry.spec.m() as f64;
        prop_assert!(res.kappa1 <= m + 1e-9 && res.kappa2 >= m - 1e-9);
    }

    #[test]
    fn config_text_round_trips(ns in prop::collection::btree_set((-9i64..=9, -9i64..=9), 1..8)) {
        let c = TranslationConfig::new(ns.into_iter().map(|(a, b)| [a, b]).collect()).unwrap();
        let back: TranslationConfig = c.to_string().parse().unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(c.translated([3, -2]).canonical(), c.canonical());
    }

    #[test]
    fn quad_field_laws(a in small_q(), b in small_q(), c in small_q()) {
        prop_assume!(same_field(&a, &b) && same_field(&b, &c) && same_field(&a, &c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a + b) * c, a * c + b * c);
        prop_assert_eq!(a - a, Q::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a * inv, Q::one());
        }
        let f = (a * b).to_f64();
        prop_assert!((f - a.to_f64() * b.to_f64()).abs() <= 1e-9 * (1.0 + f.abs()));
    }
}

#[test]
fn snub_square_pairs_are_symmetric() {
    let entry = catalog::get("snub_square").unwrap();
    for shape in fixed_polyominoes(4).unwrap() {
        let base = ingham_constants(&entry.spec, &shape.to_config(), DEFAULT_A2_TOL).unwrap();
        let mut images = vec![shape.clone()];
        for _ in 0..3 {
            let next = images.last().unwrap().rotated90();
            images.push(next);
        }
        let reflected: Vec<PolyominoShape> = images.iter().map(|s| s.reflected()).collect();
        images.extend(reflected);
        for img in images {
            let r = ingham_constants(&entry.spec, &img.to_config(), DEFAULT_A2_TOL).unwrap();
            assert!(
                (r.kappa1 - base.kappa1).abs() < 1e-9 && (r.kappa2 - base.kappa2).abs() < 1e-9,
                "{:?} vs {:?}",
                img.cells(),
                shape.cells()
            );
        }
    }
}

#[test]
fn tetromino_classes() {
    let shapes = fixed_polyominoes(4).unwrap();
    let configs: Vec<_> = shapes.iter().map(|s| s.to_config()).collect();
    assert_eq!(translation_classes(&configs).len(), 19);
    assert_eq!(fixed_polyominoes(1).unwrap().len(), 1);
    assert_eq!(fixed_polyominoes(2).unwrap().len(), 2);
    assert_eq!(fixed_polyominoes(3).unwrap().len(), 6);
    assert_eq!(fixed_polyominoes(5).unwrap().len(), 63);
}
