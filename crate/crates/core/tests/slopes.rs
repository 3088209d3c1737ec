use twistknot_core::slopes::{family_sample, mirror_intervals, Reduction};
use twistknot_core::{find_witness, sweep, theorem_intervals, Error, Family, GridSpec, Tol, WitnessKind};

#[test]
fn witnessed_slopes_are_certified() {
    let tol = Tol::with_abs(1e-9);
    for (m, n) in [(1, 2), (2, 2), (3, -1), (2, -3)] {
        let set = theorem_intervals(m, n).unwrap();
        for (p, q) in [(-7, 2), (-3, 1), (-1, 3), (1, 2), (5, 2)] {
            match find_witness(m, n, p, q, &tol) {
                Ok(w) => {
                    assert!(set.contains_rational(p, q));
                    if w.kind == WitnessKind::Representation {
                        let s = w.sample.unwrap();
                        let sign = if w.reduction == Reduction::Mirror { -1.0 } else { 1.0 };
                        assert!((sign * s.r - p as f64 / q as f64).abs() <= 1e-8);
                        assert!(s.relation_residual <= 1e-9);
                    }
                }
                Err(Error::SlopeNotCertified { .. }) => assert!(!set.contains_rational(p, q)),
                Err(e) => panic!("({m},{n}) {p}/{q}: {e}"),
            }
        }
    }
}

#[test]
fn mirror_sets_match_negated_sets() {
    for m in 1..=3 {
        for n in [-3i64, -2, -1, 1, 2, 3] {
            if (m, n) != (1, 1) {
                assert_eq!(mirror_intervals(m, n).unwrap(), theorem_intervals(m, n).unwrap().negate());
            }
        }
    }
}

#[test]
fn sweep_matches_pointwise_samples() {
    let res = sweep(Family::F2, 1, 3, &GridSpec::new(16)).unwrap();
    assert!(res.errors.is_empty());
    for s in &res.samples {
        let t = family_sample(Family::F2, 1, 3, s.param).unwrap();
        assert_eq!(s, &t);
        assert!(s.r > -4.0 * 3.0 - 2.0 && s.r < 0.0);
    }
}

#[test]
fn trefoil_is_excluded() {
    assert_eq!(theorem_intervals(1, 1), Err(Error::TrefoilExcluded));
    assert_eq!(find_witness(1, 1, -1, 1, &Tol::default()), Err(Error::TrefoilExcluded));
}
