use umbilic_core::deform::*;
use umbilic_core::jet::{q, to_f64, JetPoly};
use umbilic_core::models::model_library;
use umbilic_core::surface::MongePatch;
use umbilic_core::upoly::UPoly;
use umbilic_core::Scalar;

fn spacelike(k: u32) -> MongePatch {
    MongePatch::minkowski_z(JetPoly::from_ints(&[(3, 0, 1), (1, k + 1, -1)], JetPoly::EXACT))
}

fn timelike(k: u32) -> MongePatch {
    MongePatch::minkowski_y(JetPoly::from_ints(&[(3, 0, 1), (1, k + 1, 1)], JetPoly::EXACT))
}

fn xy(eps: Scalar) -> Perturbation {
    Perturbation { terms: vec![(1, 1, eps)] }
}

/// `g(0, v)` as a polynomial in `v`.
fn on_v_axis(g: &JetPoly) -> UPoly {
    g.swap_vars().restrict_v0()
}

#[test]
fn unperturbed_cusp_has_one_umbilic() {
    let p = MongePatch::minkowski_z(JetPoly::from_ints(&[(3, 0, 1), (1, 2, -1)], JetPoly::EXACT));
    let r = default_radius();
    assert_eq!(complex_count(&p, &r).unwrap(), 1);
    let found = find_umbilics(&p, &r, 1e-12).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!((found[0].u, found[0].v, found[0].cluster), (0.0, 0.0, 1));
    assert!(found[0].simple);
}

#[test]
fn ladders_count_their_multiplicity() {
    let r = default_radius();
    for k in 1..=3 {
        assert_eq!(complex_count(&spacelike(k), &r).unwrap(), k as u64, "spacelike {}", k);
        assert_eq!(complex_count(&timelike(k), &r).unwrap(), k as u64, "timelike {}", k);
        let found = find_umbilics(&spacelike(k), &r, 1e-12).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].cluster, k as u64);
    }
}

#[test]
fn xy_splits_the_double_umbilic() {
    let r = default_radius();
    for eps in [q(1, 64), q(1, 256), q(1, 1000)] {
        let p = xy(eps.clone()).apply(&spacelike(2));
        assert_eq!(complex_count(&p, &r).unwrap(), 2);
        let found = find_umbilics(&p, &r, 1e-12).unwrap();
        assert_eq!(found.len(), 2, "eps {}", eps);
        // exact oracle: the pair restricted to u = 0 has a common quadratic factor
        let (b, c) = coefficient_pair(&p, &r).unwrap();
        let g = on_v_axis(&b).gcd(&on_v_axis(&c));
        let roots: Vec<f64> = g.isolate_real_roots(&q(1, 1 << 40)).iter().map(|i| to_f64(&i.midpoint())).collect();
        let inside: Vec<f64> = roots.into_iter().filter(|v| v.abs() < 0.125).collect();
        assert_eq!(inside.len(), 2);
        for (u, v) in found.iter().map(|f| (f.u, f.v)).zip(inside) {
            assert!(u.0.abs() < 1e-12 && (u.1 - v).abs() < 1e-9, "{:?} vs {}", u, v);
        }
        assert!(found.iter().all(|f| f.simple && f.cluster == 1));
        // the opposite sign leaves a complex pair
        let p = xy(-eps).apply(&spacelike(2));
        assert_eq!(complex_count(&p, &r).unwrap(), 2);
        assert!(find_umbilics(&p, &r, 1e-12).unwrap().is_empty());
    }
}

#[test]
fn perturbed_library_models() {
    let r = default_radius();
    let d123 = model_library("D1_23").unwrap();
    let base = d123.surface.patch().unwrap();
    assert_eq!(pair_order(base, &r).unwrap(), Some(2));
    let m = split_member(base, &Perturbation { terms: vec![(0, 3, q(1, 100))] }, &r, 1e-12).unwrap();
    assert_eq!(m.complex_count, 2);
    let d22p = model_library("D2_2p").unwrap();
    let base = d22p.surface.patch().unwrap();
    assert_eq!(pair_order(base, &r).unwrap(), Some(3));
    let delta = Perturbation { terms: vec![(1, 2, q(1, 1000)), (0, 3, q(1, 3000))] };
    let m = split_member(base, &delta, &r, 1e-12).unwrap();
    assert_eq!(m.complex_count, 3);
    assert_eq!(complex_count_at(&delta.apply(base), &r, 3).unwrap(), 3);
}

#[test]
fn grid_conserves_the_count() {
    let mags = vec![q(-1, 64), q(-1, 256), q(0, 1), q(1, 256), q(1, 64)];
    let family = Family { directions: vec![((1, 1), mags.clone()), ((1, 2), mags)] };
    for p in [spacelike(2), timelike(2)] {
        let report = split_experiment(&p, &family, &default_radius(), 1e-12).unwrap();
        assert_eq!(report.members.len(), 25);
        assert_eq!(report.m_u, 2);
        assert!(report.conserved);
        assert_eq!(report.max_real_observed, 2);
        assert!(report.all_simple);
        for m in &report.members {
            assert!(m.real_umbilics.iter().map(|u| u.cluster).sum::<u64>() <= m.complex_count);
        }
    }
}

#[test]
fn far_seed_is_outside_the_branch() {
    // no metric coefficient is sign-definite on a disk through the light cone
    let p = MongePatch::minkowski_z(JetPoly::from_ints(&[(1, 0, 1)], JetPoly::EXACT));
    assert!(complex_count(&p, &default_radius()).is_err());
}
