use num_traits::Zero;
use umbilic_core::interval::RealValue;
use umbilic_core::local::{corank_and_hessian, cubic_discriminant};
use umbilic_core::strata::*;
use umbilic_core::umbilic::phi_alpha;
use umbilic_core::{qi, Scalar};

/// What the patch at `(s, t)` actually does: degenerate discriminant, repeated
/// root of phi, common root of phi and alpha.
fn computed(plane: Plane, s: &Scalar, t: &Scalar) -> (bool, bool, bool) {
    let w = plane_patch(plane, s, t).parametrisation().principal_bde(2);
    let (corank, _) = corank_and_hessian(&w.one_jet().discriminant());
    let (phi, alpha) = phi_alpha(&w).unwrap();
    let repeated = phi.degree().unwrap_or(0) <= 1 || phi.gcd(&phi.derivative()).degree() != Some(0);
    let common = alpha.is_zero() || phi.gcd(&alpha).degree() != Some(0);
    (corank != 0, repeated, common)
}

fn curves(plane: Plane) -> Vec<StratumCurve> {
    plane_curves(plane).into_iter().map(|(c, _)| c).collect()
}

#[test]
fn curve_points_lie_on_their_curves() {
    for plane in Plane::ALL {
        for curve in curves(plane) {
            let pts = curve_points(plane, curve, 20);
            assert_eq!(pts.len(), 20, "{} {}", plane, curve);
            for (s, t) in pts {
                let label = stratify(plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone())).unwrap();
                assert!(label.on_curves.contains(&curve), "{} {} at ({}, {})", plane, curve, s, t);
                let (degenerate, repeated, common) = computed(plane, &s, &t);
                match curve {
                    StratumCurve::DegenerateDiscriminant => assert!(degenerate, "{} ({}, {})", plane, s, t),
                    StratumCurve::PhiRepeatedRoot => assert!(repeated, "{} ({}, {})", plane, s, t),
                    StratumCurve::PhiAlphaCommonRoot => assert!(common, "{} ({}, {})", plane, s, t),
                    StratumCurve::InnerHypocycloid => {
                        let c = beta_cubic(&s, &t);
                        let d = cubic_discriminant(&c.coeff(3, 0), &c.coeff(2, 1), &c.coeff(1, 2), &c.coeff(0, 3));
                        assert!(d.is_zero(), "cubic at ({}, {}) has simple roots", s, t);
                    }
                }
            }
        }
    }
}

#[test]
fn off_curve_points_are_generic() {
    for plane in [Plane::Beta, Plane::TimelikeI] {
        for a in -6..=6 {
            for b in -6..=6 {
                let (s, t) = (Scalar::new(a.into(), 3.into()), Scalar::new(b.into(), 3.into()));
                let label = stratify(plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone())).unwrap();
                let (degenerate, repeated, common) = computed(plane, &s, &t);
                let on = |c| label.on_curves.contains(&c);
                assert_eq!(degenerate, on(StratumCurve::DegenerateDiscriminant), "{} ({}, {})", plane, s, t);
                assert_eq!(repeated, on(StratumCurve::PhiRepeatedRoot), "{} ({}, {})", plane, s, t);
                assert_eq!(common, on(StratumCurve::PhiAlphaCommonRoot), "{} ({}, {})", plane, s, t);
            }
        }
    }
}

#[test]
fn catalog_agrees_with_config_analysis() {
    let cat = catalog();
    assert!(cat.iter().filter(|e| e.plane == Plane::Beta).count() >= 4);
    assert!(cat.iter().filter(|e| e.plane == Plane::TimelikeI).count() >= 10);
    for e in cat {
        let (s, t) = &e.sample;
        let label = stratify(e.plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone())).unwrap();
        assert!(label.on_curves.is_empty());
        assert_eq!(label.region_id, e.region_id);
        assert_eq!(config_at(e.plane, s, t), e.config, "{} region {}", e.plane, e.region_id);
    }
}

#[test]
fn mult_one_exactly_off_the_circle() {
    for a in -8..=8 {
        for b in -8..=8 {
            let (s, t) = (Scalar::new(a.into(), 2.into()), Scalar::new(b.into(), 2.into()));
            let on_circle = &s * &s + &t * &t == qi(9);
            assert_eq!(stratify_beta(&s, &t).mult_one, !on_circle);
        }
    }
}

#[test]
fn enclosed_points_near_a_curve_are_undetermined() {
    let tiny = Scalar::new(1.into(), 1000.into());
    let s = RealValue::Enclosed(umbilic_core::interval::Interval::new(qi(3) - &tiny, qi(3) + &tiny));
    let t = RealValue::Exact(qi(0));
    assert!(stratify(Plane::Beta, &s, &t).is_err());
    let s = RealValue::Enclosed(umbilic_core::interval::Interval::new(-tiny.clone(), tiny));
    assert_eq!(stratify(Plane::Beta, &s, &t).unwrap().predicted_config, stratify_beta(&qi(0), &qi(0)).predicted_config);
}
