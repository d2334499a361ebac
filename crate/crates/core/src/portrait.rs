//! Principal line portraits near an umbilic and their SVG rendering.
//!
//! Everything here is floating point. Lines are traced with a fixed-step RK4
//! scheme so that output is reproducible byte for byte. At a point the BDE
//! `a dv^2 + b du dv + c du^2 = 0` has the solutions
//!
//! ```text
//! 2 theta = psi +- acos(-(a + c) / 2R),   psi = atan2(b, c - a),
//! R = |((c - a) / 2, b / 2)|
//! ```
//!
//! and the sign picks the foliation; the label is consistent away from
//! umbilics (`R = 0`). Near the discriminant the two roots collide, so inside
//! a tube of half-width `4 step` lines follow the lifted field on the surface
//! `a p^2 + b p + c = 0` in `(u, v, p)`, in the chart `p = dv/du` or
//! `q = du/dv`, and are projected back.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::jet::FloatPoly;
use crate::surface::{BdeGerm, MongePatch};
use crate::umbilic::{classify_config, ConfigLabel, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Foliation {
    First,
    Second,
}

impl Foliation {
    fn sign(self) -> f64 {
        match self {
            Foliation::First => 1.0,
            Foliation::Second => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub foliation: Foliation,
    pub separatrix: bool,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlayKind {
    Discriminant,
    Ld,
    Lpl,
}

impl OverlayKind {
    pub fn name(self) -> &'static str {
        match self {
            OverlayKind::Discriminant => "discriminant",
            OverlayKind::Ld => "ld",
            OverlayKind::Lpl => "lpl",
        }
    }
}

/// Zero set of a function on the box, as segments from marching squares.
#[derive(Clone, Debug, PartialEq)]
pub struct Overlay {
    pub kind: OverlayKind,
    pub segments: Vec<[(f64, f64); 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MarkerKind {
    Umbilic,
    /// Singular point of the lifted field over the umbilic, drawn at the end
    /// of its separatrix direction.
    Folded(RootType),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Marker {
    pub kind: MarkerKind,
    pub at: (f64, f64),
}

/// `[umin, umax] x [vmin, vmax]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl BoundingBox {
    pub fn square(r: f64) -> Self {
        BoundingBox { umin: -r, umax: r, vmin: -r, vmax: r }
    }

    pub fn contains(&self, (u, v): (f64, f64)) -> bool {
        u >= self.umin && u <= self.umax && v >= self.vmin && v <= self.vmax
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhasePortrait {
    pub bbox: BoundingBox,
    pub lines: Vec<Polyline>,
    pub markers: Vec<Marker>,
    pub overlays: Vec<Overlay>,
}

impl PhasePortrait {
    pub fn empty(bbox: BoundingBox) -> Self {
        PhasePortrait { bbox, lines: Vec::new(), markers: Vec::new(), overlays: Vec::new() }
    }
}

/// Floating-point BDE on the plane.
#[derive(Clone, Debug)]
pub struct LineField {
    a: FloatPoly,
    b: FloatPoly,
    c: FloatPoly,
}

/// Below this `R` the point is treated as an umbilic.
const UMBILIC_R: f64 = 1e-10;

impl LineField {
    pub fn new(w: &BdeGerm) -> Self {
        LineField { a: FloatPoly::from(&w.a), b: FloatPoly::from(&w.b), c: FloatPoly::from(&w.c) }
    }

    fn coeffs(&self, u: f64, v: f64) -> (f64, f64, f64) {
        (self.a.eval(u, v), self.b.eval(u, v), self.c.eval(u, v))
    }

    pub fn discriminant(&self, u: f64, v: f64) -> f64 {
        let (a, b, c) = self.coeffs(u, v);
        b * b - 4.0 * a * c
    }

    /// Distance to the discriminant curve to first order.
    pub fn distance_to_discriminant(&self, u: f64, v: f64) -> f64 {
        let (a, au, av) = self.a.eval_grad(u, v);
        let (b, bu, bv) = self.b.eval_grad(u, v);
        let (c, cu, cv) = self.c.eval_grad(u, v);
        let d = b * b - 4.0 * a * c;
        let du = 2.0 * b * bu - 4.0 * (au * c + a * cu);
        let dv = 2.0 * b * bv - 4.0 * (av * c + a * cv);
        let g = libm::hypot(du, dv);
        if g == 0.0 {
            return f64::INFINITY;
        }
        d.abs() / g
    }

    /// Angle of the line of `fol` at `(u, v)`, defined modulo `pi`; `None`
    /// where the discriminant is negative or at an umbilic.
    pub fn angle(&self, fol: Foliation, u: f64, v: f64) -> Option<f64> {
        let (a, b, c) = self.coeffs(u, v);
        let r = libm::hypot((c - a) / 2.0, b / 2.0);
        if r < UMBILIC_R {
            return None;
        }
        let x = -(a + c) / (2.0 * r);
        if !(-1.0..=1.0).contains(&x) {
            return None;
        }
        let psi = libm::atan2(b, c - a);
        Some((psi + fol.sign() * libm::acos(x)) / 2.0)
    }

    /// Unit direction of `fol` at `(u, v)` pointing along `prev`.
    fn direction(&self, fol: Foliation, (u, v): (f64, f64), prev: (f64, f64)) -> Option<(f64, f64)> {
        let t = self.angle(fol, u, v)?;
        let d = (libm::cos(t), libm::sin(t));
        Some(if d.0 * prev.0 + d.1 * prev.1 < 0.0 { (-d.0, -d.1) } else { d })
    }

    /// One RK4 step along `fol`.
    fn rk4(&self, fol: Foliation, x: (f64, f64), prev: (f64, f64), h: f64) -> Option<((f64, f64), (f64, f64))> {
        let k1 = self.direction(fol, x, prev)?;
        let k2 = self.direction(fol, (x.0 + h / 2.0 * k1.0, x.1 + h / 2.0 * k1.1), k1)?;
        let k3 = self.direction(fol, (x.0 + h / 2.0 * k2.0, x.1 + h / 2.0 * k2.1), k1)?;
        let k4 = self.direction(fol, (x.0 + h * k3.0, x.1 + h * k3.1), k1)?;
        let du = (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0) / 6.0;
        let dv = (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) / 6.0;
        let n = libm::hypot(du, dv);
        if n == 0.0 {
            return None;
        }
        let d = (du / n, dv / n);
        Some(((x.0 + h * d.0, x.1 + h * d.1), d))
    }

    /// Lifted field in the chart `p = dv/du` (`swapped = false`) or
    /// `q = du/dv`, as `(du, dv, dp)`.
    fn lifted(&self, (u, v, p): (f64, f64, f64), swapped: bool) -> (f64, f64, f64) {
        let (a, au, av) = self.a.eval_grad(u, v);
        let (b, bu, bv) = self.b.eval_grad(u, v);
        let (c, cu, cv) = self.c.eval_grad(u, v);
        if !swapped {
            // F = a p^2 + b p + c
            let fp = 2.0 * a * p + b;
            let fu = au * p * p + bu * p + cu;
            let fv = av * p * p + bv * p + cv;
            (fp, p * fp, -(fu + p * fv))
        } else {
            // G = a + b q + c q^2
            let gq = b + 2.0 * c * p;
            let gu = au + bu * p + cu * p * p;
            let gv = av + bv * p + cv * p * p;
            (p * gq, gq, -(p * gu + gv))
        }
    }

    /// Pulls the fibre coordinate back onto the lifted surface.
    fn project(&self, (u, v, p): (f64, f64, f64), swapped: bool) -> f64 {
        let (a, b, c) = self.coeffs(u, v);
        let (a, c) = if swapped { (c, a) } else { (a, c) };
        let f = a * p * p + b * p + c;
        let fp = 2.0 * a * p + b;
        if fp.abs() > 1e-300 && (f / fp).abs() < 1.0 {
            p - f / fp
        } else {
            p
        }
    }

    /// RK4 step of length `h` in `(u, v, p)` along the normalised lifted field.
    fn lifted_rk4(&self, x: (f64, f64, f64), swapped: bool, orient: f64, h: f64) -> Option<(f64, f64, f64)> {
        let unit = |y: (f64, f64, f64)| -> Option<(f64, f64, f64)> {
            let (a, b, c) = self.lifted(y, swapped);
            let n = libm::sqrt(a * a + b * b + c * c);
            (n > 1e-14).then(|| (orient * a / n, orient * b / n, orient * c / n))
        };
        let add = |y: (f64, f64, f64), k: (f64, f64, f64), s: f64| (y.0 + s * k.0, y.1 + s * k.1, y.2 + s * k.2);
        let k1 = unit(x)?;
        let k2 = unit(add(x, k1, h / 2.0))?;
        let k3 = unit(add(x, k2, h / 2.0))?;
        let k4 = unit(add(x, k3, h))?;
        let k = (
            (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0) / 6.0,
            (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) / 6.0,
            (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2) / 6.0,
        );
        let y = add(x, k, h);
        Some((y.0, y.1, self.project(y, swapped)))
    }

    /// `n` steps of the lifted field alone from `start` on the line of `fol`
    /// heading along `heading`, projected to the plane. Away from the
    /// discriminant this follows the same curve as direct integration.
    pub fn lifted_path(&self, fol: Foliation, start: (f64, f64), heading: (f64, f64), step: f64, n: usize) -> Vec<(f64, f64)> {
        let mut out = alloc::vec![start];
        let mut l = Lift::enter(self, fol, start, heading);
        let mut d = heading;
        for _ in 0..n {
            let Some(y) = self.lifted_rk4(l.y, l.swapped, l.orient, step) else {
                break;
            };
            let last = out[out.len() - 1];
            let moved = libm::hypot(y.0 - last.0, y.1 - last.1);
            if moved > 0.0 {
                d = ((y.0 - last.0) / moved, (y.1 - last.1) / moved);
            }
            out.push((y.0, y.1));
            let next = Lift { y, ..l };
            l = if y.2.abs() > 2.0 { next.flip(self, d) } else { next };
        }
        out
    }

    /// Foliation whose line at `x` is closest to the direction `d`.
    fn nearest_foliation(&self, x: (f64, f64), d: (f64, f64)) -> Option<Foliation> {
        let t = libm::atan2(d.1, d.0);
        let gap = |fol| self.angle(fol, x.0, x.1).map(|s| angle_gap(s, t));
        match (gap(Foliation::First), gap(Foliation::Second)) {
            (Some(g1), Some(g2)) => Some(if g1 <= g2 { Foliation::First } else { Foliation::Second }),
            (Some(_), None) => Some(Foliation::First),
            (None, Some(_)) => Some(Foliation::Second),
            (None, None) => None,
        }
    }
}

/// Distance between two line directions, in `[0, pi/2]`.
pub fn angle_gap(s: f64, t: f64) -> f64 {
    let d = libm::fmod(libm::fmod(s - t, PI) + PI, PI);
    d.min(PI - d)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceOptions {
    pub step: f64,
    pub max_len: f64,
    pub bbox: BoundingBox,
}

impl TraceOptions {
    fn tube(&self) -> f64 {
        4.0 * self.step
    }
}

/// Position on the lifted surface: `(u, v, p)` in the chart `p = dv/du`, or
/// `(u, v, q)` with `q = du/dv` when `swapped`.
#[derive(Clone, Copy, Debug)]
struct Lift {
    y: (f64, f64, f64),
    swapped: bool,
    orient: f64,
}

impl Lift {
    fn new(field: &LineField, y: (f64, f64, f64), swapped: bool, heading: (f64, f64)) -> Self {
        let (du, dv, _) = field.lifted(y, swapped);
        let orient = if du * heading.0 + dv * heading.1 < 0.0 { -1.0 } else { 1.0 };
        Lift { y, swapped, orient }
    }

    /// Enters the lifted surface above `x` on the line of `fol`, or along
    /// `heading` when that line is not defined.
    fn enter(field: &LineField, fol: Foliation, x: (f64, f64), heading: (f64, f64)) -> Self {
        let (dx, dy) = match field.angle(fol, x.0, x.1) {
            Some(t) => (libm::cos(t), libm::sin(t)),
            None => heading,
        };
        if dy.abs() <= dx.abs() {
            Lift::new(field, (x.0, x.1, dy / dx), false, heading)
        } else {
            Lift::new(field, (x.0, x.1, dx / dy), true, heading)
        }
    }

    /// Same point in the other chart.
    fn flip(self, field: &LineField, heading: (f64, f64)) -> Self {
        Lift::new(field, (self.y.0, self.y.1, 1.0 / self.y.2), !self.swapped, heading)
    }
}

/// Traces from `start` along `fol` in the direction closest to `heading`.
/// Inside the discriminant tube the trace follows the lifted field and may
/// come out on the other foliation; each stretch on one foliation is a
/// separate polyline.
fn trace(field: &LineField, fol: Foliation, start: (f64, f64), heading: (f64, f64), opts: &TraceOptions) -> Vec<Polyline> {
    let h = opts.step;
    let mut out = Vec::new();
    let mut fol = fol;
    let mut cur = Polyline { foliation: fol, separatrix: false, points: alloc::vec![start] };
    let (mut x, mut d) = (start, heading);
    let mut lift: Option<Lift> = None;
    let mut len = 0.0;
    let max_steps = (4.0 * opts.max_len / h) as usize + 1;
    for _ in 0..max_steps {
        if len >= opts.max_len {
            break;
        }
        let near = field.distance_to_discriminant(x.0, x.1) < opts.tube();
        match (near, lift) {
            (true, None) => lift = Some(Lift::enter(field, fol, x, d)),
            (false, Some(_)) => {
                lift = None;
                match field.nearest_foliation(x, d) {
                    Some(f) if f != fol => {
                        if cur.points.len() > 1 {
                            out.push(cur);
                        }
                        fol = f;
                        cur = Polyline { foliation: fol, separatrix: false, points: alloc::vec![x] };
                    }
                    Some(_) => {}
                    None => break,
                }
            }
            _ => {}
        }
        if let Some(l) = lift {
            let Some(y) = field.lifted_rk4(l.y, l.swapped, l.orient, h) else {
                break;
            };
            let p = (y.0, y.1);
            if !opts.bbox.contains(p) {
                break;
            }
            let moved = libm::hypot(p.0 - x.0, p.1 - x.1);
            if moved > 0.0 {
                d = ((p.0 - x.0) / moved, (p.1 - x.1) / moved);
            }
            len += moved;
            cur.points.push(p);
            x = p;
            let next = Lift { y, ..l };
            lift = Some(if y.2.abs() > 2.0 { next.flip(field, d) } else { next });
            continue;
        }
        let Some((next, dir)) = field.rk4(fol, x, d, h) else {
            break;
        };
        if !opts.bbox.contains(next) {
            break;
        }
        cur.points.push(next);
        len += h;
        x = next;
        d = dir;
    }
    if cur.points.len() > 1 {
        out.push(cur);
    }
    out
}

/// Lines of both foliations through each seed, traced both ways.
pub fn integrate_lines(field: &LineField, seeds: &[(f64, f64)], opts: &TraceOptions) -> Result<PhasePortrait> {
    let mut pp = PhasePortrait::empty(opts.bbox);
    for &s in seeds {
        if !opts.bbox.contains(s) {
            return Err(Error::SeedOutsideDomain);
        }
    }
    for &s in seeds {
        for fol in [Foliation::First, Foliation::Second] {
            let Some(t) = field.angle(fol, s.0, s.1) else {
                continue;
            };
            let d = (libm::cos(t), libm::sin(t));
            pp.lines.extend(trace(field, fol, s, d, opts));
            pp.lines.extend(trace(field, fol, s, (-d.0, -d.1), opts));
        }
    }
    Ok(pp)
}

/// Directions at the origin along which the line of the 1-jet field is
/// radial, found by scanning the angle and bisecting. These are the
/// separatrix directions of a generic umbilic.
pub fn separatrix_angles(w: &BdeGerm) -> Vec<f64> {
    let j = w.one_jet();
    let field = LineField::new(&j);
    let g = |t: f64| {
        let (s, c) = (libm::sin(t), libm::cos(t));
        let (a, b, cc) = field.coeffs(c, s);
        a * s * s + b * s * c + cc * c * c
    };
    // the scan starts off the axes, where roots sit for symmetric germs
    let n = 2048;
    let offset = 0.123_456_789;
    let at = |k: usize| -FRAC_PI_2 + offset + PI * k as f64 / n as f64;
    let mut out = Vec::new();
    for k in 0..n {
        let (mut lo, mut hi) = (at(k), at(k + 1));
        let (glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            out.push(lo);
            continue;
        }
        if glo * ghi > 0.0 {
            continue;
        }
        if ghi == 0.0 {
            continue;
        }
        for _ in 0..100 {
            let mid = (lo + hi) / 2.0;
            if g(mid) * glo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((lo + hi) / 2.0);
    }
    for t in out.iter_mut() {
        if *t > FRAC_PI_2 {
            *t -= PI;
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Zero set of `f` on an `n x n` grid by marching squares; saddle cells are
/// split by the value at the centre.
pub fn contour(f: &dyn Fn(f64, f64) -> f64, bbox: &BoundingBox, n: usize) -> Vec<[(f64, f64); 2]> {
    let du = (bbox.umax - bbox.umin) / n as f64;
    let dv = (bbox.vmax - bbox.vmin) / n as f64;
    let pt = |i: usize, k: usize| (bbox.umin + i as f64 * du, bbox.vmin + k as f64 * dv);
    let mut vals = Vec::with_capacity((n + 1) * (n + 1));
    for k in 0..=n {
        for i in 0..=n {
            let (u, v) = pt(i, k);
            vals.push(f(u, v));
        }
    }
    let val = |i: usize, k: usize| vals[k * (n + 1) + i];
    let cross = |p: (f64, f64), fp: f64, q: (f64, f64), fq: f64| {
        let t = fp / (fp - fq);
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    };
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            let corners = [(i, k), (i + 1, k), (i + 1, k + 1), (i, k + 1)];
            let fs = corners.map(|(a, b)| val(a, b));
            let ps = corners.map(|(a, b)| pt(a, b));
            let mut hits = Vec::new();
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if (fs[a] > 0.0) != (fs[b] > 0.0) {
                    hits.push(cross(ps[a], fs[a], ps[b], fs[b]));
                }
            }
            match hits.len() {
                2 => out.push([hits[0], hits[1]]),
                4 => {
                    let centre = f(ps[0].0 + du / 2.0, ps[0].1 + dv / 2.0);
                    if (centre > 0.0) == (fs[0] > 0.0) {
                        out.push([hits[0], hits[3]]);
                        out.push([hits[1], hits[2]]);
                    } else {
                        out.push([hits[0], hits[1]]);
                        out.push([hits[2], hits[3]]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PortraitOptions {
    /// Half-width of the square box around the umbilic.
    pub radius: f64,
    pub step: f64,
    pub max_len: f64,
    /// Seeds per side of the seed grid.
    pub seeds: usize,
    /// Jet order of the BDE used for evaluation.
    pub order: u32,
    /// Marching-squares cells per side for overlays.
    pub grid: usize,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions { radius: 0.5, step: 0.004, max_len: 1.5, seeds: 7, order: 6, grid: 160 }
    }
}

/// Portrait of the principal lines of a patch around its umbilic at the
/// origin: a seed grid, separatrices from the separatrix directions, the LD
/// and LPL curves and markers.
pub fn portrait(p: &MongePatch, opts: &PortraitOptions) -> Result<PhasePortrait> {
    let x = p.parametrisation();
    let w = x.principal_bde(opts.order);
    let field = LineField::new(&w);
    let bbox = BoundingBox::square(opts.radius);
    let trace_opts = TraceOptions { step: opts.step, max_len: opts.max_len, bbox };
    let n = opts.seeds.max(1);
    let mut seeds = Vec::new();
    for k in 0..n {
        for i in 0..n {
            let s = |j: usize| opts.radius * ((2 * j + 1) as f64 / n as f64 - 1.0) * 0.97;
            let seed = (s(i), s(k));
            if libm::hypot(seed.0, seed.1) > 4.0 * opts.step {
                seeds.push(seed);
            }
        }
    }
    let mut pp = integrate_lines(&field, &seeds, &trace_opts)?;

    let config = classify_config(&x.principal_bde(2)).ok();
    let start = 2.0 * opts.step;
    for t in separatrix_angles(&w) {
        for ray in [t, t + PI] {
            let d = (libm::cos(ray), libm::sin(ray));
            let s = (start * d.0, start * d.1);
            let Some(fol) = field.nearest_foliation(s, d) else {
                continue;
            };
            for mut line in trace(&field, fol, s, d, &trace_opts) {
                line.separatrix = true;
                pp.lines.push(line);
            }
        }
    }

    pp.markers.push(Marker { kind: MarkerKind::Umbilic, at: (0.0, 0.0) });
    if let Some(ConfigLabel { phi_roots, .. }) = &config {
        let r = 0.12 * opts.radius;
        for (root, kind) in phi_roots {
            let t = root.angle();
            for ray in [t, t + PI] {
                pp.markers.push(Marker { kind: MarkerKind::Folded(*kind), at: (r * libm::cos(ray), r * libm::sin(ray)) });
            }
        }
    }

    let curves = x.special_curves(opts.order);
    let ld = FloatPoly::from(&curves.ld);
    let lpl = FloatPoly::from(&curves.lpl);
    for (kind, f) in [(OverlayKind::Ld, &ld), (OverlayKind::Lpl, &lpl)] {
        let segments = contour(&|u, v| f.eval(u, v), &bbox, opts.grid);
        if !segments.is_empty() {
            pp.overlays.push(Overlay { kind, segments });
        }
    }
    Ok(pp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgStyle {
    /// Width and height in pixels.
    pub size: u32,
    pub title: Option<String>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { size: 600, title: None }
    }
}

/// One decimal, without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{:.1}", x);
    if s == "-0.0" {
        String::from("0.0")
    } else {
        s
    }
}

/// Drops points closer than 1.5 px to the last kept one; the last point is
/// always kept.
fn thin(pts: impl Iterator<Item = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut last = None;
    for p in pts {
        match out.last() {
            Some(q) if libm::hypot(p.0 - q.0, p.1 - q.1) < 1.5 => last = Some(p),
            _ => {
                out.push(p);
                last = None;
            }
        }
    }
    out.extend(last);
    out
}

/// SVG 1.1 document. The output depends only on the portrait and style.
pub fn emit_svg(pp: &PhasePortrait, style: &SvgStyle) -> String {
    let size = style.size as f64;
    let margin = 20.0;
    let inner = size - 2.0 * margin;
    let b = pp.bbox;
    let scale = inner / (b.umax - b.umin).max(b.vmax - b.vmin);
    let px = |(u, v): (f64, f64)| (margin + (u - b.umin) * scale, size - margin - (v - b.vmin) * scale);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        style.size
    );
    if let Some(t) = &style.title {
        let t = t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        let _ = writeln!(s, "<title>{}</title>", t);
    }
    let _ = writeln!(
        s,
        "<style>\n\
         .frame {{ fill: none; stroke: #000; stroke-width: 1 }}\n\
         .axis {{ stroke: #bbb; stroke-width: 0.5 }}\n\
         .f1 {{ fill: none; stroke: #1f4e99; stroke-width: 0.8 }}\n\
         .f2 {{ fill: none; stroke: #a3302a; stroke-width: 0.8; stroke-dasharray: 4 2 }}\n\
         .sep {{ stroke-width: 1.8 }}\n\
         .discriminant {{ fill: none; stroke: #555; stroke-width: 1.2 }}\n\
         .ld {{ fill: none; stroke: #2a8a3a; stroke-width: 1.2; stroke-dasharray: 1 2 }}\n\
         .lpl {{ fill: none; stroke: #c07a00; stroke-width: 1.6 }}\n\
         .umbilic {{ fill: #fff; stroke: #000; stroke-width: 1.2 }}\n\
         .folded {{ fill: #000; stroke: none }}\n\
         .label {{ font: 11px sans-serif }}\n\
         </style>"
    );
    let (x0, y0) = px((b.umin, b.vmax));
    let (x1, y1) = px((b.umax, b.vmin));
    let _ = writeln!(
        s,
        r#"<rect class="frame" x="{}" y="{}" width="{}" height="{}"/>"#,
        num(x0),
        num(y0),
        num(x1 - x0),
        num(y1 - y0)
    );
    if b.umin < 0.0 && b.umax > 0.0 {
        let (a, c) = (px((0.0, b.vmin)), px((0.0, b.vmax)));
        let _ = writeln!(s, r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a.0), num(a.1), num(c.0), num(c.1));
    }
    if b.vmin < 0.0 && b.vmax > 0.0 {
        let (a, c) = (px((b.umin, 0.0)), px((b.umax, 0.0)));
        let _ = writeln!(s, r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a.0), num(a.1), num(c.0), num(c.1));
    }
    for o in &pp.overlays {
        let mut d = String::new();
        for [p, q] in &o.segments {
            let (p, q) = (px(*p), px(*q));
            let _ = write!(d, "M{} {}L{} {}", num(p.0), num(p.1), num(q.0), num(q.1));
        }
        let _ = writeln!(s, r#"<path class="{}" d="{}"/>"#, o.kind.name(), d);
    }
    for line in &pp.lines {
        let class = match (line.foliation, line.separatrix) {
            (Foliation::First, false) => "f1",
            (Foliation::Second, false) => "f2",
            (Foliation::First, true) => "f1 sep",
            (Foliation::Second, true) => "f2 sep",
        };
        let pts: Vec<String> = thin(line.points.iter().map(|&p| px(p))).iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
        let _ = writeln!(s, r#"<polyline class="{}" points="{}"/>"#, class, pts.join(" "));
    }
    for m in &pp.markers {
        let (x, y) = px(m.at);
        match m.kind {
            MarkerKind::Umbilic => {
                let _ = writeln!(s, r#"<circle class="umbilic" cx="{}" cy="{}" r="4"/>"#, num(x), num(y));
            }
            MarkerKind::Folded(kind) => {
                let label = match kind {
                    RootType::Saddle => "S",
                    RootType::Node => "N",
                    RootType::Degenerate => "?",
                };
                let _ = writeln!(s, r#"<circle class="folded" cx="{}" cy="{}" r="2.5"/>"#, num(x), num(y));
                let _ = writeln!(s, r#"<text class="label" x="{}" y="{}">{}</text>"#, num(x + 4.0), num(y - 4.0), label);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Largest gap between consecutive points over all polylines.
pub fn max_point_gap(pp: &PhasePortrait) -> f64 {
    pp.lines
        .iter()
        .flat_map(|l| l.points.windows(2).map(|w| libm::hypot(w[1].0 - w[0].0, w[1].1 - w[0].1)))
        .fold(0.0, f64::max)
}
