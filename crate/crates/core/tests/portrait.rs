use core::f64::consts::PI;
use umbilic_core::jet::{q, JetPoly};
use umbilic_core::portrait::*;
use umbilic_core::strata::{plane_patch, Plane};
use umbilic_core::surface::{BdeGerm, MongePatch};
use umbilic_core::umbilic::classify_config;

fn fixtures() -> Vec<(&'static str, MongePatch)> {
    vec![
        ("star", plane_patch(Plane::Beta, &q(0, 1), &q(0, 1))),
        ("monstar", plane_patch(Plane::Beta, &q(-4, 1), &q(0, 1))),
        ("lemon", plane_patch(Plane::Beta, &q(-1, 1), &q(-3, 1))),
        ("timelike_3s", plane_patch(Plane::TimelikeI, &q(-1, 2), &q(0, 1))),
    ]
}

#[test]
fn separatrices_follow_phi_roots() {
    for (name, p) in fixtures() {
        let x = p.parametrisation();
        let exact: Vec<f64> = classify_config(&x.principal_bde(2)).unwrap().phi_roots.iter().map(|r| r.0.angle()).collect();
        let found = separatrix_angles(&x.principal_bde(6));
        assert_eq!(found.len(), exact.len(), "{}", name);
        for t in &exact {
            let best = found.iter().map(|s| angle_gap(*s, *t)).fold(PI, f64::min);
            assert!(best < 1e-6, "{}: phi root at {} missed by {}", name, t, best);
        }
    }
}

#[test]
fn separatrix_lines_leave_along_their_direction() {
    let opts = PortraitOptions::default();
    for (name, p) in fixtures() {
        let pp = portrait(&p, &opts).unwrap();
        let angles = separatrix_angles(&p.parametrisation().principal_bde(opts.order));
        let seps: Vec<_> = pp.lines.iter().filter(|l| l.separatrix).collect();
        assert!(seps.len() >= angles.len(), "{}", name);
        for l in seps {
            let (a, b) = (l.points[0], l.points[1]);
            let t = libm::atan2(a.1, a.0);
            // starts on a separatrix ray and heads outward along it
            assert!(angles.iter().any(|s| angle_gap(*s, t) < 1e-9), "{}", name);
            let chord = libm::atan2(b.1 - a.1, b.0 - a.0);
            assert!(angle_gap(chord, t) < 0.05, "{}: chord {} vs {}", name, chord, t);
        }
    }
}

#[test]
fn portraits_keep_their_invariants() {
    let opts = PortraitOptions::default();
    for (name, p) in fixtures() {
        let pp = portrait(&p, &opts).unwrap();
        let field = LineField::new(&p.parametrisation().principal_bde(opts.order));
        assert!(!pp.lines.is_empty());
        assert!(max_point_gap(&pp) <= opts.step * (1.0 + 1e-9), "{}", name);
        for l in &pp.lines {
            for &pt in &l.points {
                assert!(pp.bbox.contains(pt), "{} leaves the box at {:?}", name, pt);
                let tube = field.distance_to_discriminant(pt.0, pt.1) < 4.0 * opts.step;
                assert!(tube || field.discriminant(pt.0, pt.1) >= 0.0, "{}: line in the empty region at {:?}", name, pt);
            }
            // the tracked root moves continuously away from the tube
            for w in l.points.windows(3) {
                let clear = w.iter().all(|&(u, v)| {
                    field.distance_to_discriminant(u, v) > 8.0 * opts.step && libm::hypot(u, v) > 10.0 * opts.step
                });
                if clear {
                    let t1 = libm::atan2(w[1].1 - w[0].1, w[1].0 - w[0].0);
                    let t2 = libm::atan2(w[2].1 - w[1].1, w[2].0 - w[1].0);
                    assert!(angle_gap(t1, t2) < 0.2, "{}: branch jump at {:?}", name, w[1]);
                }
            }
        }
    }
}

#[test]
fn lifted_and_direct_integration_agree() {
    let p = plane_patch(Plane::Beta, &q(-1, 1), &q(-3, 1));
    let field = LineField::new(&p.parametrisation().principal_bde(6));
    let step = 0.004;
    let bbox = BoundingBox::square(0.5);
    let opts = TraceOptions { step, max_len: 0.2, bbox };
    for start in [(0.2, 0.1), (-0.15, 0.3), (0.3, -0.25)] {
        for fol in [Foliation::First, Foliation::Second] {
            let t = field.angle(fol, start.0, start.1).unwrap();
            let heading = (libm::cos(t), libm::sin(t));
            let direct = integrate_lines(&field, &[start], &opts).unwrap();
            let line = direct
                .lines
                .iter()
                .find(|l| l.foliation == fol && l.points[0] == start && {
                    let d = (l.points[1].0 - start.0, l.points[1].1 - start.1);
                    d.0 * heading.0 + d.1 * heading.1 > 0.0
                })
                .unwrap();
            let lifted = field.lifted_path(fol, start, heading, step, 20);
            for pt in lifted {
                let dist = line
                    .points
                    .windows(2)
                    .map(|w| segment_distance(pt, w[0], w[1]))
                    .fold(f64::INFINITY, f64::min);
                assert!(dist < step * step, "{:?} off the direct line by {}", pt, dist);
            }
        }
    }
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    libm::hypot(p.0 - a.0 - t * dx, p.1 - a.1 - t * dy)
}

#[test]
fn no_real_directions_no_lines() {
    let e = JetPoly::EXACT;
    let w = BdeGerm::new(JetPoly::one(e), JetPoly::zero(e), JetPoly::one(e));
    let field = LineField::new(&w);
    let opts = TraceOptions { step: 0.01, max_len: 1.0, bbox: BoundingBox::square(1.0) };
    let pp = integrate_lines(&field, &[(0.1, 0.2), (-0.5, 0.5)], &opts).unwrap();
    assert!(pp.lines.is_empty());
    assert!(matches!(integrate_lines(&field, &[(2.0, 0.0)], &opts), Err(umbilic_core::Error::SeedOutsideDomain)));
}

#[test]
fn empty_portrait_is_a_frame() {
    let svg = emit_svg(&PhasePortrait::empty(BoundingBox::square(1.0)), &SvgStyle::default());
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<rect class=\"frame\""));
    assert!(!svg.contains("<polyline"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn output_is_reproducible() {
    let (_, p) = &fixtures()[3];
    let opts = PortraitOptions::default();
    let a = emit_svg(&portrait(p, &opts).unwrap(), &SvgStyle::default());
    let b = emit_svg(&portrait(p, &opts).unwrap(), &SvgStyle::default());
    assert_eq!(a, b);
}
