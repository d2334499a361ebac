//! Distance-squared functions on a patch: the `D4` singularity at the focal
//! centre of an umbilic and its versality, plus transversality of the
//! Monge-Taylor map to the umbilic stratum.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::{qi, JetPoly, Scalar, Var};
use crate::linalg::{rank, Matrix};
use crate::local::{classify_singularity, cubic_discriminant, Mult};
use crate::surface::{Ambient, GraphAxis, MongePatch, Parametrisation};
use crate::umbilic::{causal_type_of, parametrisation_multiplicity, with_ladder, CausalType, Options};

/// Monomials `u^i v^j` spanning jets of degree at most 3, in the order
/// `1, u, v, u^2, uv, v^2, u^3, u^2 v, u v^2, v^3`.
pub const JET_BASIS: [(u32, u32); 10] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

/// Coordinates of the 3-jet of `p` in [`JET_BASIS`].
pub fn jet_coordinates(p: &JetPoly) -> Vec<Scalar> {
    JET_BASIS.iter().map(|&(i, j)| p.coeff(i, j)).collect()
}

type Point = [Scalar; 3];

fn inner(ambient: Ambient, a: &Point, b: &Point) -> Scalar {
    (0..3).map(|i| qi(ambient.metric_sign(i)) * &a[i] * &b[i]).sum()
}

/// `<x - v, x - v>` along the parametrised germ, to order `n`.
pub fn distance_squared(x: &Parametrisation, v: &Point, n: u32) -> JetPoly {
    let mut acc = JetPoly::zero(n);
    for (i, c) in x.comps.iter().enumerate() {
        let d = (c - &JetPoly::constant(v[i].clone(), JetPoly::EXACT)).jet(n);
        acc = &acc + &(&d * &d).jet(n).scale(&qi(x.ambient.metric_sign(i)));
    }
    acc
}

pub fn distance_squared_jet(p: &MongePatch, v: &Point) -> JetPoly {
    distance_squared(&p.parametrisation(), v, p.order())
}

fn derivative_at_origin(c: &JetPoly, vars: &[Var]) -> Scalar {
    let mut d = c.clone();
    for &v in vars {
        d = d.derive(v);
    }
    d.constant_term()
}

fn vector(x: &Parametrisation, vars: &[Var]) -> Point {
    core::array::from_fn(|i| derivative_at_origin(&x.comps[i], vars))
}

/// Centre of the pseudo-sphere with the highest contact at an umbilic at the
/// origin: `x(0) + lambda N` where `N` is normal and `I = lambda II_N`.
/// `None` when the second fundamental form vanishes (no finite centre).
pub fn focal_centre(x: &Parametrisation) -> Result<Option<Point>> {
    let amb = x.ambient;
    let xu = vector(x, &[Var::U]);
    let xv = vector(x, &[Var::V]);
    let cross = [
        &xu[1] * &xv[2] - &xu[2] * &xv[1],
        &xu[2] * &xv[0] - &xu[0] * &xv[2],
        &xu[0] * &xv[1] - &xu[1] * &xv[0],
    ];
    // Raising the index makes N orthogonal to the tangent plane.
    let normal: Point = core::array::from_fn(|i| qi(amb.metric_sign(i)) * &cross[i]);
    let second = [[Var::U, Var::U], [Var::U, Var::V], [Var::V, Var::V]];
    let h: Vec<Scalar> = second.iter().map(|vars| inner(amb, &vector(x, vars), &normal)).collect();
    let g = [inner(amb, &xu, &xu), inner(amb, &xu, &xv), inner(amb, &xv, &xv)];
    let Some(k) = (0..3).find(|&k| !h[k].is_zero()) else {
        return Ok(None);
    };
    let lambda = &g[k] / &h[k];
    if (0..3).any(|i| g[i] != &lambda * &h[i]) {
        return Err(Error::NotUmbilic);
    }
    let origin = vector(x, &[]);
    Ok(Some(core::array::from_fn(|i| &origin[i] + &lambda * &normal[i])))
}

/// Outcome of the distance-squared analysis at an umbilic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Versality {
    /// `None` at umbilics with vanishing second fundamental form.
    pub centre: Option<Point>,
    /// Cubic part of the distance squared function from the centre.
    pub cubic: Option<JetPoly>,
    pub has_d4: bool,
    pub versal: bool,
}

pub fn analyze_versality(x: &Parametrisation) -> Result<Versality> {
    if causal_type_of(&x.fundamental_forms(2)) == CausalType::NotUmbilic {
        return Err(Error::NotUmbilic);
    }
    let Some(centre) = focal_centre(x)? else {
        return Ok(Versality { centre: None, cubic: None, has_d4: false, versal: false });
    };
    let d = distance_squared(x, &centre, 4);
    if (1..=2).any(|k| !d.homogeneous(k).is_zero()) {
        return Err(Error::Internal("distance squared from the focal centre is not 2-flat"));
    }
    let cubic = d.homogeneous(3);
    let [a, b, c, e] = [(3, 0), (2, 1), (1, 2), (0, 3)].map(|(i, j)| cubic.coeff(i, j));
    let has_d4 = !cubic_discriminant(&a, &b, &c, &e).is_zero();
    let versal = has_d4 && versal_at_three_jet(x, &centre, &d);
    Ok(Versality { centre: Some(centre), cubic: Some(cubic), has_d4, versal })
}

/// `d4_and_versality` for a graph patch: `(has_D4, versal)`.
pub fn d4_and_versality(p: &MongePatch) -> Result<(bool, bool)> {
    let v = analyze_versality(&p.parametrisation())?;
    Ok((v.has_d4, v.versal))
}

/// Rows spanning `m<d_u, d_v> + R{1, d_a, d_b, d_c}` modulo `m^4`. Only the
/// products with monomials of degree at most one survive the truncation.
pub fn versality_rows(x: &Parametrisation, centre: &Point, d: &JetPoly) -> Matrix {
    let partials = [d.derive(Var::U).jet(3), d.derive(Var::V).jet(3)];
    let mut rows = Vec::new();
    for g in &partials {
        for m in [JetPoly::one(3), JetPoly::u(3), JetPoly::v(3)] {
            rows.push(jet_coordinates(&(&m * g).jet(3)));
        }
    }
    rows.push(jet_coordinates(&JetPoly::one(3)));
    for (k, c) in x.comps.iter().enumerate() {
        // derivative of <x - v, x - v> in v_k
        let moved = (c - &JetPoly::constant(centre[k].clone(), JetPoly::EXACT)).jet(3);
        rows.push(jet_coordinates(&moved.scale(&qi(-2 * x.ambient.metric_sign(k)))));
    }
    rows
}

fn versal_at_three_jet(x: &Parametrisation, centre: &Point, d: &JetPoly) -> bool {
    rank(&versality_rows(x, centre, d)) == JET_BASIS.len()
}

/// Transversality of the Monge-Taylor map to the umbilic stratum.
///
/// Spacelike umbilics need a `z`-graph and timelike ones a Minkowski
/// `y`-graph, both with vanishing 1-jet; the tangent vectors to the image of
/// the map then come from the moving-frame formulas. Lightlike umbilics use
/// a fixed frame on a Minkowski `z`-graph.
pub fn monge_taylor_transversality(p: &MongePatch) -> Result<bool> {
    let x = p.parametrisation();
    let causal = causal_type_of(&x.fundamental_forms(2));
    let f = p.f();
    match causal {
        CausalType::NotUmbilic => Err(Error::NotUmbilic),
        CausalType::Lightlike => {
            if p.ambient != Ambient::Minkowski || p.axis != GraphAxis::Z {
                return Err(Error::NotAdapted("lightlike umbilics need a Minkowski z-graph"));
            }
            Ok(lightlike_transversality(f))
        }
        CausalType::Spacelike | CausalType::Timelike => {
            if !f.homogeneous(1).is_zero() {
                return Err(Error::NotAdapted("graph must be tangent to the coordinate plane"));
            }
            let timelike = match (causal, p.ambient, p.axis) {
                (CausalType::Spacelike, _, GraphAxis::Z) => false,
                (CausalType::Timelike, Ambient::Minkowski, GraphAxis::Y) => true,
                _ => return Err(Error::UnsupportedCausalType),
            };
            let (v1, v2) = frame_tangents(f, timelike);
            // eta1 = d a21, eta2 = d a20 -+ d a22
            let s = if timelike { qi(1) } else { qi(-1) };
            let eta1 = |w: &JetPoly| w.coeff(1, 1);
            let eta2 = |w: &JetPoly| w.coeff(2, 0) + &s * w.coeff(0, 2);
            let det = eta1(&v1) * eta2(&v2) - eta1(&v2) * eta2(&v1);
            Ok(!det.is_zero())
        }
    }
}

/// Tangent vectors to the image of the Monge-Taylor map at the origin, as
/// 3-jets. The timelike chart flips the signs of the `f_z f` terms.
pub fn frame_tangents(f: &JetPoly, timelike: bool) -> (JetPoly, JetPoly) {
    let n = 3;
    let f = f.jet(n + 1);
    let fu = f.derive(Var::U).jet(n);
    let fv = f.derive(Var::V).jet(n);
    let [fuu, fuv, fvv] = [[Var::U, Var::U], [Var::U, Var::V], [Var::V, Var::V]].map(|d| derivative_at_origin(&f, &d));
    let u = JetPoly::u(n);
    let v = JetPoly::v(n);
    let fuf = (&fu * &f).jet(n);
    let fvf = (&fv * &f).jet(n);
    let s = if timelike { qi(1) } else { qi(-1) };
    let v1 = &(&(&fu - &u.scale(&fuu)) - &v.scale(&fuv)) + &(&fvf.scale(&(&s * &fuv)) - &fuf.scale(&fuu));
    let v2 = &(&(&fv - &u.scale(&fuv)) - &v.scale(&fvv)) + &(&fuf.scale(&(&s * &fuv)) + &fvf.scale(&(&s * &fvv)));
    (v1, v2)
}

/// Fixed-frame version for `z = f(x, y)` through a lightlike point: the
/// stratum is cut out by the three minors below, of which two are
/// independent, and the image of the map is spanned by the jets of `f_x`
/// and `f_y`.
fn lightlike_transversality(f: &JetPoly) -> bool {
    let at = |w: &JetPoly| -> [Scalar; 5] { [w.coeff(1, 0), w.coeff(0, 1), w.coeff(2, 0), w.coeff(1, 1), w.coeff(0, 2)] };
    let [p, q, a20, a21, a22] = at(f);
    let one = qi(1);
    let two = qi(2);
    let pp = &p * &p - &one;
    let qq = &q * &q - &one;
    // Gradients in (a10, a01, a20, a21, a22) of
    //   g1 = (a01^2 - 1) a21 - 2 a10 a01 a22
    //   g2 = (a01^2 - 1) a20 - (a10^2 - 1) a22
    //   g3 = (a10^2 - 1) a21 - 2 a10 a01 a20
    let grads: [[Scalar; 5]; 3] = [
        [-&two * &q * &a22, &two * &q * &a21 - &two * &p * &a22, Scalar::zero(), qq.clone(), -&two * &p * &q],
        [-&two * &p * &a22, &two * &q * &a20, qq, Scalar::zero(), -pp.clone()],
        [&two * &p * &a21 - &two * &q * &a20, -&two * &p * &a20, -&two * &p * &q, pp, Scalar::zero()],
    ];
    let tangents = [at(&f.derive(Var::U)), at(&f.derive(Var::V))];
    let m: Matrix = grads
        .iter()
        .map(|g| tangents.iter().map(|t| g.iter().zip(t).map(|(a, b)| a * b).sum()).collect())
        .collect();
    rank(&m) == 2
}


/// The four characterisations of a simple umbilic side by side. `None`
/// where a predicate is not available for the patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalencePanel {
    pub mult_one: bool,
    /// Morse discriminant, or Morse LD at a lightlike umbilic.
    pub morse: bool,
    pub d4: Option<bool>,
    /// Versality of the distance-squared family; only asserted with `D4`.
    pub versal: Option<bool>,
    pub transverse: Option<bool>,
}

impl EquivalencePanel {
    /// Names of the predicates that disagree with `m_u = 1`.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.morse != self.mult_one {
            out.push("morse");
        }
        if self.d4 == Some(true) && self.versal.is_some_and(|v| v != self.mult_one) {
            out.push("versal");
        }
        if self.transverse.is_some_and(|t| t != self.mult_one) {
            out.push("transverse");
        }
        out
    }

    pub fn consistent(&self) -> bool {
        self.disagreements().is_empty()
    }
}

pub fn equivalence_panel(p: &MongePatch, opts: Options) -> Result<EquivalencePanel> {
    let x = p.parametrisation();
    let causal = causal_type_of(&x.fundamental_forms(2));
    if causal == CausalType::NotUmbilic {
        return Err(Error::NotUmbilic);
    }
    let mult_one = parametrisation_multiplicity(&x, opts)?.value == Mult::Finite(1);
    let morse = if causal == CausalType::Lightlike {
        with_ladder(opts, |n| classify_singularity(&x.fundamental_forms(n).ld()))?.is_morse()
    } else {
        with_ladder(opts, |n| classify_singularity(&x.principal_bde(n).discriminant().jet(n)))?.is_morse()
    };
    let (d4, versal) = match analyze_versality(&x) {
        Ok(v) => (Some(v.has_d4), Some(v.versal)),
        Err(Error::NotUmbilic) => return Err(Error::NotUmbilic),
        Err(_) => (None, None),
    };
    let transverse = match monge_taylor_transversality(p) {
        Ok(t) => Some(t),
        Err(Error::NotAdapted(_) | Error::UnsupportedCausalType) => None,
        Err(e) => return Err(e),
    };
    Ok(EquivalencePanel { mult_one, morse, d4, versal, transverse })
}
