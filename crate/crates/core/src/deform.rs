//! Umbilics of perturbed patches: real ones located numerically, complex ones
//! counted exactly through resultants.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bivar::resultant_in_v;
use crate::error::{Error, Result};
use crate::interval::{eval_jet, Interval};
use crate::jet::{q, to_f64, FloatPoly, JetPoly, Scalar};
use crate::surface::{BdeGerm, MongePatch};
use crate::local::{intersection_multiplicity, Mult};
use crate::umbilic::{umbilic_multiplicity_with, Options};
use crate::upoly::{RootInterval, UPoly};

/// Terms `c u^i v^j` added to the graph function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Perturbation {
    pub terms: Vec<(u32, u32, Scalar)>,
}

impl Perturbation {
    pub fn apply(&self, p: &MongePatch) -> MongePatch {
        let delta = JetPoly::from_terms(self.terms.iter().cloned(), JetPoly::EXACT);
        MongePatch::new(p.ambient, p.axis, p.f() + &delta)
            .expect("perturbations have no constant term")
            .with_order(p.order())
    }
}

/// The pair of BDE coefficients whose common zeros are the umbilics on the
/// disk, chosen by the first metric coefficient of constant sign there.
pub fn coefficient_pair(p: &MongePatch, radius: &Scalar) -> Result<(JetPoly, JetPoly)> {
    let ff = p.parametrisation().fundamental_forms(JetPoly::EXACT);
    let w: BdeGerm = ff.bde();
    let disk = Interval::new(-radius.clone(), radius.clone());
    let definite = |m: &JetPoly| eval_jet(m, &disk, &disk).sign().is_some_and(|s| s != 0);
    if definite(&ff.e) {
        Ok((w.b, w.c))
    } else if definite(&ff.f) {
        Ok((w.a, w.c))
    } else if definite(&ff.g) {
        Ok((w.a, w.b))
    } else {
        Err(Error::BranchInvalid)
    }
}

/// Eliminants of the pair in `u` and in `v`.
pub fn eliminants(b: &JetPoly, c: &JetPoly) -> Result<(UPoly, UPoly)> {
    let ru = resultant_in_v(b, c);
    let rv = resultant_in_v(&b.swap_vars(), &c.swap_vars());
    if ru.is_zero() || rv.is_zero() {
        return Err(Error::NonIsolatedUmbilics);
    }
    Ok((ru, rv))
}

/// Slopes of the linear charts `u' = u + s v`, `v' = v - s u` tried in turn.
/// Zeros far from the origin but on a coordinate axis project into the disk
/// in one variable only; a small rotation moves them out.
const SLOPES: [(i64, i64); 5] = [(0, 1), (1, 2), (-1, 3), (2, 3), (-3, 5)];

/// A jet of the coefficient pair and its eliminants in a rotated chart.
struct Chart {
    slope: Scalar,
    ru: UPoly,
    rv: UPoly,
    count: usize,
}

impl Chart {
    /// Original coordinates of a chart point.
    fn to_patch(&self, u: f64, v: f64) -> (f64, f64) {
        let s = to_f64(&self.slope);
        let n = 1.0 + s * s;
        ((u - s * v) / n, (v + s * u) / n)
    }
}

fn rotate(f: &JetPoly, slope: &Scalar) -> JetPoly {
    if slope.is_zero() {
        return f.clone();
    }
    let e = JetPoly::EXACT;
    let n = Scalar::one() + slope * slope;
    let h1 = JetPoly::from_terms([(1, 0, n.recip()), (0, 1, -slope / &n)], e);
    let h2 = JetPoly::from_terms([(1, 0, slope / &n), (0, 1, n.recip())], e);
    f.compose(&h1, &h2).expect("linear substitution")
}

/// First chart in which both eliminants of the pair count the same roots in
/// the disk.
fn chart_of(b0: &JetPoly, c0: &JetPoly, radius: &Scalar) -> Result<Chart> {
    for (n, d) in SLOPES {
        let slope = q(n, d);
        let (b, c) = (rotate(b0, &slope), rotate(c0, &slope));
        let (ru, rv) = eliminants(&b, &c)?;
        let (Some(nu), Some(nv)) = (ru.count_roots_in_disk(radius), rv.count_roots_in_disk(radius)) else {
            continue;
        };
        if nu == nv {
            return Ok(Chart { slope, ru, rv, count: nu });
        }
    }
    Err(Error::IllConditioned)
}

/// Highest jet order of the pair tried when no order is certified.
pub const MAX_PAIR_ORDER: u32 = 6;

/// Jet order of the pair that determines its zeros near the origin, when the
/// origin is an isolated umbilic: some power of the maximal ideal lies in the
/// ideal of the pair, so higher terms and small perturbations keep the count.
pub fn pair_order(p: &MongePatch, radius: &Scalar) -> Result<Option<u32>> {
    let (b, c) = coefficient_pair(p, radius)?;
    if !b.constant_term().is_zero() || !c.constant_term().is_zero() {
        return Ok(None);
    }
    let m = intersection_multiplicity(&b, &c)?;
    match m.value {
        Mult::Finite(_) => Ok(Some(m.stabilized_at.max(1))),
        Mult::Infinite => Err(Error::NonIsolatedUmbilics),
    }
}

fn chart_at(p: &MongePatch, radius: &Scalar, order: u32) -> Result<Chart> {
    let (b, c) = coefficient_pair(p, radius)?;
    chart_of(&b.truncate(order), &c.truncate(order), radius)
}

/// Without a certified order, the lowest order whose count the next order
/// reproduces.
fn chart_uncertified(p: &MongePatch, radius: &Scalar) -> Result<Chart> {
    let (b, c) = coefficient_pair(p, radius)?;
    let top = b.degree().unwrap_or(0).max(c.degree().unwrap_or(0)).clamp(1, MAX_PAIR_ORDER);
    let mut below: Option<Chart> = None;
    for n in 1..=top {
        let here = match chart_of(&b.truncate(n), &c.truncate(n), radius) {
            Ok(ch) => ch,
            Err(Error::IllConditioned | Error::NonIsolatedUmbilics) => {
                below = None;
                continue;
            }
            Err(e) => return Err(e),
        };
        match below {
            Some(ch) if ch.count == here.count => return Ok(ch),
            _ => below = Some(here),
        }
    }
    below.filter(|_| top < MAX_PAIR_ORDER).ok_or(Error::IllConditioned)
}

fn chart(p: &MongePatch, radius: &Scalar) -> Result<Chart> {
    match pair_order(p, radius)? {
        Some(n) => chart_at(p, radius, n),
        None => chart_uncertified(p, radius),
    }
}

/// Number of complex common zeros, with multiplicity, of the coefficient pair
/// in a polydisk of the given radius.
///
/// The pair is truncated to the order given by [`pair_order`] when the origin
/// is an umbilic, and otherwise to the lowest order whose count the next one
/// reproduces. Both eliminants must count the same number of roots in the
/// disk. When they do not, some zero has one coordinate inside and one
/// outside; the count is retried in slightly rotated charts before giving up.
pub fn complex_count(p: &MongePatch, radius: &Scalar) -> Result<u64> {
    Ok(chart(p, radius)?.count as u64)
}

/// As [`complex_count`] with the pair truncated at `order`.
pub fn complex_count_at(p: &MongePatch, radius: &Scalar, order: u32) -> Result<u64> {
    Ok(chart_at(p, radius, order)?.count as u64)
}

/// A real umbilic found on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct LocatedUmbilic {
    pub u: f64,
    pub v: f64,
    /// Multiplicity of the cluster, read off the eliminants.
    pub cluster: u64,
    /// `|b| + |c|` after refinement.
    pub residual: f64,
    /// Transverse zero of the pair with a Morse discriminant.
    pub simple: bool,
}

fn width() -> Scalar {
    Scalar::new(1.into(), num_bigint::BigInt::from(1u64 << 50))
}

/// Multiplicity of the root of `p` isolated by `r` (an isolating interval of
/// the squarefree part).
fn root_multiplicity(p: &UPoly, r: &RootInterval) -> u64 {
    let mut m = 1;
    let mut g = p.gcd(&p.derivative());
    while g.degree().unwrap_or(0) > 0 {
        let inside = if r.is_exact() { g.eval(&r.lo).is_zero() } else { g.count_roots_between(&r.lo, &r.hi) > 0 };
        if !inside {
            break;
        }
        m += 1;
        g = g.gcd(&g.derivative());
    }
    m
}

fn real_roots_in(p: &UPoly, radius: &Scalar) -> Vec<(f64, u64)> {
    let sq = p.squarefree();
    sq.isolate_real_roots(&width())
        .into_iter()
        .filter(|r| r.hi > -radius.clone() && r.lo < *radius)
        .map(|r| (to_f64(&r.midpoint()), root_multiplicity(p, &r)))
        .collect()
}

/// Damped Newton on `(b, c) = 0` from `(u, v)`.
fn newton(b: &FloatPoly, c: &FloatPoly, mut u: f64, mut v: f64, tol: f64) -> (f64, f64, f64) {
    let res = |u: f64, v: f64| b.eval(u, v).abs() + c.eval(u, v).abs();
    for _ in 0..60 {
        let r = res(u, v);
        if r < tol {
            break;
        }
        let (fb, bu, bv) = b.eval_grad(u, v);
        let (fc, cu, cv) = c.eval_grad(u, v);
        let det = bu * cv - bv * cu;
        if det.abs() < 1e-300 {
            break;
        }
        let du = (fb * cv - fc * bv) / det;
        let dv = (bu * fc - cu * fb) / det;
        let mut step = 1.0;
        while step > 1e-6 && res(u - step * du, v - step * dv) >= r {
            step /= 2.0;
        }
        if step <= 1e-6 {
            break;
        }
        u -= step * du;
        v -= step * dv;
    }
    (u, v, res(u, v))
}

/// Whether the zero at `(u, v)` is a transverse zero of the pair and the
/// discriminant `b^2 - 4ac` has a nondegenerate Hessian there.
/// The pair is in chart coordinates `at`, the BDE in patch coordinates `x`.
fn simple_at(w: &BdeGerm, pair: (&FloatPoly, &FloatPoly), at: (f64, f64), x: (f64, f64)) -> bool {
    let [a, b, c] = [&w.a, &w.b, &w.c].map(FloatPoly::from);
    let (_, au, av) = a.eval_grad(x.0, x.1);
    let (_, bu, bv) = b.eval_grad(x.0, x.1);
    let (_, cu, cv) = c.eval_grad(x.0, x.1);
    let (_, pu, pv) = pair.0.eval_grad(at.0, at.1);
    let (_, qu, qv) = pair.1.eval_grad(at.0, at.1);
    let s = [au, av, bu, bv, cu, cv].iter().fold(1e-300f64, |m, x| m.max(x.abs()));
    let transverse = (pu * qv - pv * qu).abs() > 1e-9 * s * s;
    // Hessian of the discriminant at a common zero of a, b, c
    let huu = 2.0 * bu * bu - 8.0 * au * cu;
    let huv = 2.0 * bu * bv - 4.0 * (au * cv + av * cu);
    let hvv = 2.0 * bv * bv - 8.0 * av * cv;
    let morse = (huu * hvv - huv * huv).abs() > 1e-9 * (s * s) * (s * s);
    transverse && morse
}

/// Real umbilics on the square `|u|, |v| < radius`, refined until the
/// residual is below `tol`.
pub fn find_umbilics(p: &MongePatch, radius: &Scalar, tol: f64) -> Result<Vec<LocatedUmbilic>> {
    find_in_chart(p, &chart(p, radius)?, radius, tol)
}

fn find_in_chart(p: &MongePatch, ch: &Chart, radius: &Scalar, tol: f64) -> Result<Vec<LocatedUmbilic>> {
    let w = p.parametrisation().principal_bde(JetPoly::EXACT);
    let (b, c) = coefficient_pair(p, radius)?;
    let (b, c) = (rotate(&b, &ch.slope), rotate(&c, &ch.slope));
    let (fb, fc) = (FloatPoly::from(&b), FloatPoly::from(&c));
    let scale = b.terms().chain(c.terms()).map(|(_, _, x)| to_f64(&x.abs())).fold(1.0, f64::max);
    let mut out: Vec<LocatedUmbilic> = Vec::new();
    let us = real_roots_in(&ch.ru, radius);
    let vs = real_roots_in(&ch.rv, radius);
    let r = to_f64(radius);
    for &(u0, mu) in &us {
        for &(v0, mv) in &vs {
            let (u, v, res) = newton(&fb, &fc, u0, v0, tol);
            if res > 1e-6 * scale || u.abs() >= r || v.abs() >= r {
                continue;
            }
            let (x, y) = ch.to_patch(u, v);
            if out.iter().any(|o| (o.u - x).abs() + (o.v - y).abs() < 1e-7) {
                continue;
            }
            let cluster = mu.min(mv);
            let simple = cluster == 1 && simple_at(&w, (&fb, &fc), (u, v), (x, y));
            out.push(LocatedUmbilic { u: x, v: y, cluster, residual: res, simple });
        }
    }
    out.sort_by(|a, b| (a.u, a.v).partial_cmp(&(b.u, b.v)).expect("finite coordinates"));
    Ok(out)
}

/// Perturbation directions: each entry is a monomial `u^i v^j` with the
/// magnitudes to try. Members of the family are all combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub directions: Vec<((u32, u32), Vec<Scalar>)>,
}

impl Family {
    pub fn members(&self) -> Vec<Perturbation> {
        let mut out = alloc::vec![Perturbation::default()];
        for ((i, j), mags) in &self.directions {
            let mut next = Vec::new();
            for base in &out {
                for m in mags {
                    let mut p = base.clone();
                    if !m.is_zero() {
                        p.terms.push((*i, *j, m.clone()));
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitMember {
    pub perturbation: Perturbation,
    pub radius: Scalar,
    pub complex_count: u64,
    pub real_umbilics: Vec<LocatedUmbilic>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub m_u: u64,
    pub members: Vec<SplitMember>,
    pub max_real_observed: usize,
    /// `complex_count == m_u` for every member.
    pub conserved: bool,
    /// Every located real umbilic of a perturbed member is simple.
    pub all_simple: bool,
}

/// Halvings of the radius tried on an ill-conditioned disk.
pub const MAX_HALVINGS: u32 = 6;

/// Counts and locates umbilics for one member, halving the radius when a
/// zero sits on the boundary. The pair is truncated at the order certified
/// for the unperturbed patch.
pub fn split_member(p: &MongePatch, delta: &Perturbation, radius: &Scalar, tol: f64) -> Result<SplitMember> {
    let q = delta.apply(p);
    let mut r = radius.clone();
    for _ in 0..=MAX_HALVINGS {
        let ch = match pair_order(p, &r)? {
            Some(n) => chart_at(&q, &r, n),
            None => chart_uncertified(&q, &r),
        };
        match ch {
            Ok(ch) => {
                let real_umbilics = find_in_chart(&q, &ch, &r, tol)?;
                return Ok(SplitMember { perturbation: delta.clone(), radius: r, complex_count: ch.count as u64, real_umbilics });
            }
            Err(Error::IllConditioned) => r /= Scalar::from_integer(2.into()),
            Err(e) => return Err(e),
        }
    }
    Err(Error::IllConditioned)
}

/// Assembles a report from members computed in any order.
pub fn summarize(m_u: u64, members: Vec<SplitMember>) -> SplitReport {
    let max_real_observed = members.iter().map(|m| m.real_umbilics.len()).max().unwrap_or(0);
    let conserved = members.iter().all(|m| m.complex_count == m_u);
    let all_simple = members
        .iter()
        .filter(|m| !m.perturbation.terms.is_empty())
        .all(|m| m.real_umbilics.iter().all(|u| u.simple));
    SplitReport { m_u, members, max_real_observed, conserved, all_simple }
}

pub fn split_experiment(p: &MongePatch, family: &Family, radius: &Scalar, tol: f64) -> Result<SplitReport> {
    let m_u = umbilic_multiplicity_with(p, Options::at_order(p.order()))?
        .finite()
        .ok_or(Error::NonIsolatedUmbilics)?;
    let members = family.members().iter().map(|d| split_member(p, d, radius, tol)).collect::<Result<Vec<_>>>()?;
    Ok(summarize(m_u, members))
}

/// Default radius of the search disk.
pub fn default_radius() -> Scalar {
    Scalar::new(1.into(), 8.into())
}
