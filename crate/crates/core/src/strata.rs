//! Reduction of cubic forms under Lorentz boosts and the stratification of
//! the parameter planes of umbilic 1-jets.
//!
//! A boost with rapidity `theta` acts on the cubic part of a graph `y = f(x, z)`
//! by `x = ch X - sh Z`, `z = -sh X + ch Z`. Up to the common factor `ch^3`,
//! which a dilatation removes, the new coefficients are polynomials in
//! `T = tanh(theta)`. Normal-form parameters are therefore rational functions of
//! `T`, exact whenever the boost is.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{eval_jet, rational_at_root, refine_root, Interval, RealValue};
use crate::jet::{q, qi, JetPoly, Scalar};
use crate::surface::MongePatch;
use crate::umbilic::{classify_config, ConfigKind};
use crate::upoly::{RootInterval, UPoly};

/// `a1 x^3 + a2 x^2 z + a3 x z^2 + a4 z^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    pub a: [Scalar; 4],
}

impl CubicForm {
    pub fn new(a1: Scalar, a2: Scalar, a3: Scalar, a4: Scalar) -> Self {
        CubicForm { a: [a1, a2, a3, a4] }
    }

    pub fn from_ints(a: [i64; 4]) -> Self {
        CubicForm { a: a.map(qi) }
    }

    /// Reads the homogeneous cubic part of `p(u, v)` with `(u, v) = (x, z)`.
    pub fn from_jet(p: &JetPoly) -> Self {
        CubicForm::new(p.coeff(3, 0), p.coeff(2, 1), p.coeff(1, 2), p.coeff(0, 3))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn to_jet(&self) -> JetPoly {
        let a = &self.a;
        JetPoly::from_terms(
            [(3, 0, a[0].clone()), (2, 1, a[1].clone()), (1, 2, a[2].clone()), (0, 3, a[3].clone())],
            JetPoly::EXACT,
        )
    }

    pub fn eval(&self, x: &Scalar, z: &Scalar) -> Scalar {
        let a = &self.a;
        &a[0] * x * x * x + &a[1] * x * x * z + &a[2] * x * z * z + &a[3] * z * z * z
    }

    pub fn scale(&self, c: &Scalar) -> CubicForm {
        CubicForm { a: self.a.clone().map(|x| x * c) }
    }

    /// Coefficients of `C(X - T Z, -T X + Z)` as polynomials in `T`.
    fn boost_coeffs(&self) -> [UPoly; 4] {
        let x = (UPoly::constant(Scalar::one()), UPoly::from_ints(&[0, -1]));
        let z = (UPoly::from_ints(&[0, -1]), UPoly::constant(Scalar::one()));
        let mut out: [UPoly; 4] = Default::default();
        for (k, c) in self.a.iter().enumerate() {
            // x^(3-k) z^k as a binary form, coefficients of X^(d-i) Z^i
            let mut form = alloc::vec![UPoly::constant(c.clone())];
            for step in 0..3 {
                let (p, q) = if step < 3 - k { &x } else { &z };
                let mut next = alloc::vec![UPoly::zero(); form.len() + 1];
                for (i, f) in form.iter().enumerate() {
                    next[i] = &next[i] + &(f * p);
                    next[i + 1] = &next[i + 1] + &(f * q);
                }
                form = next;
            }
            for (o, f) in out.iter_mut().zip(&form) {
                *o = &*o + f;
            }
        }
        out
    }

    /// The cubic after the boost with `tanh = t`, without the `cosh^3` factor.
    pub fn boosted(&self, t: &Scalar) -> CubicForm {
        CubicForm { a: self.boost_coeffs().map(|p| p.eval(t)) }
    }

    /// Quotient by `x + eps z`, if it divides.
    fn divide_lightlike(&self, eps: &Scalar) -> Option<[Scalar; 3]> {
        let a = &self.a;
        let q1 = a[0].clone();
        let q2 = &a[1] - eps * &q1;
        let q3 = &a[2] - eps * &q2;
        (a[3] == eps * &q3).then_some([q1, q2, q3])
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_jet())
    }
}

/// Causal character of a root direction of a cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootCausalType {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Causal character of the root `a x + b z` of a cubic in the graph
/// `y = f(x, z)`, read from the tangent of the curve it cuts out.
pub fn root_causal_type(a: &Scalar, b: &Scalar) -> RootCausalType {
    let (a2, b2) = (a * a, b * b);
    if b2 > a2 {
        RootCausalType::Spacelike
    } else if b2 < a2 {
        RootCausalType::Timelike
    } else {
        RootCausalType::Lightlike
    }
}

/// Normal forms of a nonzero cubic at a timelike umbilic:
/// (i) `x(x^2 + s xz + t z^2)`, (ii) `z(t x^2 + s xz + z^2)`,
/// (iii) `(x +- z)(x^2 + s xz + t z^2)`, (iv) `x^2 z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicNormalForm {
    I,
    Ii,
    IiiPlus,
    IiiMinus,
    Iv,
}

impl CubicNormalForm {
    pub fn name(self) -> &'static str {
        match self {
            CubicNormalForm::I => "i",
            CubicNormalForm::Ii => "ii",
            CubicNormalForm::IiiPlus => "iii_plus",
            CubicNormalForm::IiiMinus => "iii_minus",
            CubicNormalForm::Iv => "iv",
        }
    }

    /// The normal-form cubic for rational parameters.
    pub fn cubic(self, s: &Scalar, t: &Scalar) -> CubicForm {
        let one = Scalar::one();
        let zero = Scalar::zero();
        match self {
            CubicNormalForm::I => CubicForm::new(one, s.clone(), t.clone(), zero),
            CubicNormalForm::Ii => CubicForm::new(zero, t.clone(), s.clone(), one),
            CubicNormalForm::IiiPlus | CubicNormalForm::IiiMinus => {
                let e = if self == CubicNormalForm::IiiPlus { one.clone() } else { -one.clone() };
                CubicForm::new(one, s + &e, t + &e * s, &e * t)
            }
            CubicNormalForm::Iv => CubicForm::new(zero.clone(), one, zero.clone(), zero),
        }
    }
}

impl fmt::Display for CubicNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of the boost reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicReduction {
    pub form: CubicNormalForm,
    /// `None` for form (iv).
    pub s: Option<RealValue>,
    pub t: Option<RealValue>,
    /// `tanh` of the boost rapidity.
    pub boost: RealValue,
}

/// Width of the enclosures reported for irrational boosts.
pub fn enclosure_width() -> Scalar {
    Scalar::new(1.into(), num_bigint::BigInt::from(1u64 << 40))
}

/// A root of a polynomial in the open interval `(-1, 1)`.
#[derive(Clone, Debug)]
struct UnitRoot {
    /// Squarefree polynomial the interval isolates a root of.
    poly: UPoly,
    at: RootInterval,
}

impl UnitRoot {
    fn value(&self, num: &UPoly, den: &UPoly) -> Option<RealValue> {
        rational_at_root(&self.poly, &self.at, num, den, &enclosure_width())
    }

    fn vanishes(&self, h: &UPoly) -> bool {
        if self.at.is_exact() {
            return h.eval(&self.at.lo).is_zero();
        }
        let g = self.poly.gcd(h);
        g.degree().unwrap_or(0) > 0 && g.count_roots_between(&self.at.lo, &self.at.hi) > 0
    }

    fn boost(&self) -> RealValue {
        if self.at.is_exact() {
            return RealValue::Exact(self.at.lo.clone());
        }
        let r = refine_root(&self.poly, &self.at, &enclosure_width());
        if r.is_exact() {
            RealValue::Exact(r.lo)
        } else {
            RealValue::Enclosed(Interval::new(r.lo, r.hi))
        }
    }
}

/// Roots of `p` in `(-1, 1)`, rational ones first. `p` must not vanish at `+-1`.
fn unit_roots(p: &UPoly) -> Vec<UnitRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let one = Scalar::one();
    let mut out = Vec::new();
    let mut rest = p.squarefree();
    for r in p.rational_roots() {
        rest = rest.div_rem(&UPoly::new(alloc::vec![-r.clone(), one.clone()])).0;
        if r.abs() < one {
            out.push(UnitRoot { poly: UPoly::new(alloc::vec![-r.clone(), one.clone()]), at: RootInterval { lo: r.clone(), hi: r } });
        }
    }
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    for mut r in rest.isolate_real_roots(&q(1, 4)) {
        // +-1 are not roots, so refining separates the root from them.
        while r.lo < -one.clone() && r.hi > -one.clone() || r.lo < one && r.hi > one {
            r = refine_root(&rest, &r, &((&r.hi - &r.lo) / qi(2)));
        }
        if r.lo >= -one.clone() && r.hi <= one {
            out.push(UnitRoot { poly: rest.clone(), at: r });
        }
    }
    out
}

/// Brings a nonzero cubic to one of the forms (i)-(iv) by a boost and a
/// dilatation. A lightlike root is looked for first, then timelike roots,
/// then spacelike ones.
pub fn reduce_cubic(c: &CubicForm) -> Result<CubicReduction> {
    if c.is_zero() {
        return Err(Error::ZeroCubic);
    }
    let one = Scalar::one();
    for (eps, form) in [(one.clone(), CubicNormalForm::IiiPlus), (-one.clone(), CubicNormalForm::IiiMinus)] {
        if c.divide_lightlike(&eps).is_some() {
            return Ok(reduce_lightlike(c, &eps, form));
        }
    }
    let [a1, a2, a3, a4] = c.boost_coeffs();
    let timelike = unit_roots(&a4);
    for r in &timelike {
        if let (Some(s), Some(t)) = (r.value(&a2, &a1), r.value(&a3, &a1)) {
            return Ok(CubicReduction { form: CubicNormalForm::I, s: Some(s), t: Some(t), boost: r.boost() });
        }
    }
    // Every timelike root also kills the X^3 coefficient: the cubic is
    // X Z (A2 X + A3 Z) in boosted coordinates.
    if let Some(r) = timelike.first() {
        if r.vanishes(&a3) {
            return Ok(CubicReduction { form: CubicNormalForm::Iv, s: None, t: None, boost: r.boost() });
        }
        if r.vanishes(&a2) {
            return Err(Error::NoNormalForm);
        }
    }
    for r in unit_roots(&a1) {
        if let (Some(s), Some(t)) = (r.value(&a3, &a4), r.value(&a2, &a4)) {
            return Ok(CubicReduction { form: CubicNormalForm::Ii, s: Some(s), t: Some(t), boost: r.boost() });
        }
    }
    Err(Error::NoNormalForm)
}

fn reduce_lightlike(c: &CubicForm, eps: &Scalar, form: CubicNormalForm) -> CubicReduction {
    let [q1, ..] = c.divide_lightlike(eps).expect("lightlike factor");
    // A boost only rescales x + eps z, so the quotient keeps its shape; pick
    // one making the x^2 coefficient nonzero.
    let boost = if q1.is_zero() {
        (2i64..)
            .flat_map(|n| [q(1, n), q(-1, n)])
            .find(|t| !c.boosted(t).divide_lightlike(eps).expect("lightlike factor")[0].is_zero())
            .expect("some boost works")
    } else {
        Scalar::zero()
    };
    let [q1, q2, q3] = c.boosted(&boost).divide_lightlike(eps).expect("lightlike factor");
    CubicReduction {
        form,
        s: Some(RealValue::Exact(&q2 / &q1)),
        t: Some(RealValue::Exact(&q3 / &q1)),
        boost: RealValue::Exact(boost),
    }
}

/// Parameter planes of umbilic 1-jets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Plane {
    /// Spacelike umbilics, cubic `Re(z^3 + beta z^2 zbar)` with `beta = s + i t`.
    Beta,
    TimelikeI,
    TimelikeIiiPlus,
    TimelikeIiiMinus,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Beta => "beta",
            Plane::TimelikeI => "timelike_i",
            Plane::TimelikeIiiPlus => "timelike_iii_plus",
            Plane::TimelikeIiiMinus => "timelike_iii_minus",
        }
    }

    pub const ALL: [Plane; 4] = [Plane::Beta, Plane::TimelikeI, Plane::TimelikeIiiPlus, Plane::TimelikeIiiMinus];
}

impl FromStr for Plane {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        Plane::ALL.into_iter().find(|p| p.name() == s).ok_or(())
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exceptional curves of the parameter planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumCurve {
    /// The BDE discriminant is worse than Morse.
    DegenerateDiscriminant,
    PhiRepeatedRoot,
    PhiAlphaCommonRoot,
    /// The distance-squared function is worse than D4 (beta plane only).
    InnerHypocycloid,
}

impl StratumCurve {
    pub fn name(self) -> &'static str {
        match self {
            StratumCurve::DegenerateDiscriminant => "degenerate_discriminant",
            StratumCurve::PhiRepeatedRoot => "phi_repeated_root",
            StratumCurve::PhiAlphaCommonRoot => "phi_alpha_common_root",
            StratumCurve::InnerHypocycloid => "inner_hypocycloid",
        }
    }

    /// Whether crossing the curve changes the configuration.
    pub fn bifurcates(self) -> bool {
        self != StratumCurve::InnerHypocycloid
    }
}

impl fmt::Display for StratumCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn st(terms: &[(u32, u32, i64)]) -> JetPoly {
    JetPoly::from_ints(terms, JetPoly::EXACT)
}

/// `s^2 + t^2 - 9`.
pub fn beta_circle() -> JetPoly {
    st(&[(2, 0, 1), (0, 2, 1), (0, 0, -9)])
}

/// Implicit equation of the outer hypocycloid `-3(2 e^{2i theta} + e^{-4i theta})`,
/// the binary discriminant of `phi = (3 - s) p^3 - t p^2 - (9 + s) p - t`
/// divided by `-4`.
pub fn beta_outer_hypocycloid() -> JetPoly {
    st(&[(4, 0, 1), (3, 0, 24), (2, 2, 2), (2, 0, 162), (1, 2, -72), (0, 4, 1), (0, 2, 162), (0, 0, -2187)])
}

/// Inner hypocycloid, where the cubic has a repeated root.
pub fn beta_inner_hypocycloid() -> JetPoly {
    st(&[(0, 0, -27), (2, 0, 18), (3, 0, -8), (4, 0, 1), (0, 2, 18), (1, 2, 24), (2, 2, 2), (0, 4, 1)])
}

/// `s^2 - t^2 - 3t`.
pub fn timelike_i_hyperbola() -> JetPoly {
    st(&[(2, 0, 1), (0, 2, -1), (0, 1, -3)])
}

/// Discriminant of `phi = t p^3 + 2s p^2 + (2t + 3) p + s` up to the factor `-1`.
pub fn timelike_i_phi_discriminant() -> JetPoly {
    st(&[(4, 0, 32), (2, 2, -61), (0, 4, 32), (2, 1, -156), (0, 3, 144), (2, 0, -36), (0, 2, 216), (0, 1, 108)])
}

/// `(s + t + 1)(s - t - 1)`.
pub fn timelike_i_common_root() -> JetPoly {
    st(&[(2, 0, 1), (0, 2, -1), (0, 1, -2), (0, 0, -1)])
}

/// Curves of a plane with their defining polynomials in `(s, t)`. Curves
/// given by a product list each factor.
pub fn plane_curves(plane: Plane) -> Vec<(StratumCurve, Vec<JetPoly>)> {
    use StratumCurve::*;
    match plane {
        Plane::Beta => alloc::vec![
            (DegenerateDiscriminant, alloc::vec![beta_circle()]),
            (PhiRepeatedRoot, alloc::vec![beta_outer_hypocycloid()]),
            (PhiAlphaCommonRoot, alloc::vec![beta_circle()]),
            (InnerHypocycloid, alloc::vec![beta_inner_hypocycloid()]),
        ],
        Plane::TimelikeI => alloc::vec![
            (DegenerateDiscriminant, alloc::vec![timelike_i_hyperbola()]),
            (PhiRepeatedRoot, alloc::vec![timelike_i_phi_discriminant()]),
            (PhiAlphaCommonRoot, alloc::vec![st(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]), st(&[(1, 0, 1), (0, 1, -1), (0, 0, -1)])]),
        ],
        Plane::TimelikeIiiPlus | Plane::TimelikeIiiMinus => {
            let e = if plane == Plane::TimelikeIiiPlus { -1 } else { 1 };
            alloc::vec![
                (DegenerateDiscriminant, alloc::vec![st(&[(0, 1, 1), (0, 0, -1)]), st(&[(0, 0, 1), (0, 1, 1), (1, 0, e)])]),
                (PhiRepeatedRoot, alloc::vec![st(&[(2, 0, 3), (0, 2, -4), (0, 1, -4), (0, 0, -4)])]),
                // phi and alpha share the root of the lightlike factor everywhere.
                (PhiAlphaCommonRoot, alloc::vec![JetPoly::zero(JetPoly::EXACT)]),
            ]
        }
    }
}

/// Distinct nonzero curve polynomials whose signs index the regions.
fn region_polys(plane: Plane) -> Vec<JetPoly> {
    let mut out: Vec<JetPoly> = Vec::new();
    for (_, ps) in plane_curves(plane) {
        for p in ps {
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Where a parameter point sits in the stratification of its plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLabel {
    pub plane: Plane,
    /// Encodes the signs of the curve polynomials; open regions with the
    /// same signs (mirror images under the symmetries of the plane) share it.
    pub region_id: u32,
    pub on_curves: Vec<StratumCurve>,
    /// Configuration from the region catalog; degenerate on a bifurcation curve.
    pub predicted_config: Option<ConfigKind>,
    pub mult_one: bool,
}

impl StratumLabel {
    pub fn is_open(&self) -> bool {
        !self.on_curves.iter().any(|c| c.bifurcates())
    }
}

fn sign_of(p: &JetPoly, s: &RealValue, t: &RealValue) -> Result<i32> {
    match (s, t) {
        (RealValue::Exact(s), RealValue::Exact(t)) => Ok(crate::jet::sign(&p.eval(s, t))),
        _ => eval_jet(p, &s.interval(), &t.interval()).sign().ok_or(Error::UndeterminedAtPrecision),
    }
}

/// Region id from the sign vector `(e_0, e_1, ...)`: `sum 3^i (e_i + 1)`.
fn region_code(signs: &[i32]) -> u32 {
    signs.iter().rev().fold(0, |acc, &e| 3 * acc + (e + 1) as u32)
}

/// Locates `(s, t)` in the stratification of `plane`. Enclosed coordinates
/// give an answer only when every curve test is decided by the enclosure.
pub fn stratify(plane: Plane, s: &RealValue, t: &RealValue) -> Result<StratumLabel> {
    let polys = region_polys(plane);
    let signs = polys.iter().map(|p| sign_of(p, s, t)).collect::<Result<Vec<_>>>()?;
    let mut on_curves = Vec::new();
    for (curve, factors) in plane_curves(plane) {
        let mut on = false;
        for f in &factors {
            on |= match polys.iter().position(|p| p == f) {
                Some(i) => signs[i] == 0,
                None => true,
            };
        }
        if on {
            on_curves.push(curve);
        }
    }
    let region_id = region_code(&signs);
    let mult_one = !on_curves.contains(&StratumCurve::DegenerateDiscriminant);
    let predicted_config = if on_curves.iter().any(|c| c.bifurcates()) {
        Some(ConfigKind::Degenerate)
    } else {
        // On a curve that does not change the configuration, either side will do.
        let open: Vec<i32> = signs.iter().map(|&e| if e == 0 { 1 } else { e }).collect();
        let code = region_code(&open);
        catalog().into_iter().find(|e| e.plane == plane && e.region_id == code).map(|e| e.config)
    };
    Ok(StratumLabel { plane, region_id, on_curves, predicted_config, mult_one })
}

pub fn stratify_beta(s: &Scalar, t: &Scalar) -> StratumLabel {
    stratify(Plane::Beta, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone())).expect("exact point")
}

pub fn stratify_timelike(s: &Scalar, t: &Scalar, case: CubicNormalForm) -> Result<StratumLabel> {
    let plane = match case {
        CubicNormalForm::I | CubicNormalForm::Ii => Plane::TimelikeI,
        CubicNormalForm::IiiPlus => Plane::TimelikeIiiPlus,
        CubicNormalForm::IiiMinus => Plane::TimelikeIiiMinus,
        CubicNormalForm::Iv => return Err(Error::UnsupportedCausalType),
    };
    stratify(plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone()))
}

/// Cubic `(1 + s) x^3 - t x^2 y + (s - 3) x y^2 - t y^3`, the real part of
/// `z^3 + beta z^2 zbar`.
pub fn beta_cubic(s: &Scalar, t: &Scalar) -> JetPoly {
    let one = Scalar::one();
    JetPoly::from_terms(
        [(3, 0, &one + s), (2, 1, -t.clone()), (1, 2, s - qi(3)), (0, 3, -t.clone())],
        JetPoly::EXACT,
    )
}

/// Patch realising the point `(s, t)` of `plane`: `z = (x^2 + y^2)/2 + C` in
/// Minkowski space for the beta plane, `y = (x^2 - z^2)/2 + C` otherwise.
pub fn plane_patch(plane: Plane, s: &Scalar, t: &Scalar) -> MongePatch {
    let half = q(1, 2);
    match plane {
        Plane::Beta => {
            let quad = JetPoly::from_terms([(2, 0, half.clone()), (0, 2, half)], JetPoly::EXACT);
            MongePatch::minkowski_z(&quad + &beta_cubic(s, t))
        }
        _ => {
            let form = match plane {
                Plane::TimelikeI => CubicNormalForm::I,
                Plane::TimelikeIiiPlus => CubicNormalForm::IiiPlus,
                _ => CubicNormalForm::IiiMinus,
            };
            let quad = JetPoly::from_terms([(2, 0, half.clone()), (0, 2, -half)], JetPoly::EXACT);
            MongePatch::minkowski_y(&quad + &form.cubic(s, t).to_jet())
        }
    }
}

/// Configuration of the patch at `(s, t)` computed from its 1-jet.
pub fn config_at(plane: Plane, s: &Scalar, t: &Scalar) -> ConfigKind {
    let w = plane_patch(plane, s, t).parametrisation().principal_bde(2);
    classify_config(&w).map(|c| c.kind).unwrap_or(ConfigKind::Degenerate)
}

/// `n` distinct rational points on `curve` of `plane`, from rational
/// parametrisations of each component.
pub fn curve_points(plane: Plane, curve: StratumCurve, n: usize) -> Vec<(Scalar, Scalar)> {
    use StratumCurve::*;
    let one = Scalar::one();
    let params = (1..).map(|k: i64| q(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }, 7)).filter(|m| m.abs() != one);
    // cos and sin of the angle with tan(theta/2) = m
    let trig = |m: &Scalar| {
        let d = &one + m * m;
        ((&one - m * m) / &d, (m + m) / d)
    };
    let mut out: Vec<(Scalar, Scalar)> = Vec::new();
    for (k, m) in params.enumerate() {
        if out.len() == n {
            break;
        }
        let p = match (plane, curve) {
            (Plane::Beta, DegenerateDiscriminant | PhiAlphaCommonRoot) => {
                let (c, s) = trig(&m);
                (qi(3) * c, qi(3) * s)
            }
            (Plane::Beta, PhiRepeatedRoot) => {
                // -3 (2 e^{2i theta} + e^{-4i theta})
                let (c, s) = trig(&m);
                let (c2, s2) = (&c * &c - &s * &s, qi(2) * &c * &s);
                let (c4, s4) = (&c2 * &c2 - &s2 * &s2, qi(2) * &c2 * &s2);
                (qi(-3) * (qi(2) * &c2 + c4), qi(-3) * (qi(2) * s2 - s4))
            }
            (Plane::Beta, InnerHypocycloid) => {
                let (c, s) = trig(&m);
                let (c2, s2) = (&c * &c - &s * &s, qi(2) * &c * &s);
                (qi(2) * &c + c2, qi(2) * s - s2)
            }
            (Plane::TimelikeI, DegenerateDiscriminant) => {
                let d = &one - &m * &m;
                (qi(3) * &m / &d, qi(3) * &m * &m / d)
            }
            (Plane::TimelikeI, PhiRepeatedRoot) => {
                // double root p0 = m of t p^3 + 2s p^2 + (2t + 3) p + s
                let m2 = &m * &m;
                let d = qi(-2) * &m2 * &m2 + &m2 - qi(2);
                (qi(6) * &m2 * &m / &d, (qi(3) - qi(6) * m2) / d)
            }
            (Plane::TimelikeI, PhiAlphaCommonRoot) => {
                if k % 2 == 0 {
                    (m.clone(), &m - &one)
                } else {
                    (m.clone(), -&m - &one)
                }
            }
            (Plane::TimelikeIiiPlus | Plane::TimelikeIiiMinus, DegenerateDiscriminant) => {
                let e = if plane == Plane::TimelikeIiiPlus { one.clone() } else { -one.clone() };
                if k % 2 == 0 {
                    (m.clone(), one.clone())
                } else {
                    (e * (&one + &m), m.clone())
                }
            }
            (Plane::TimelikeIiiPlus | Plane::TimelikeIiiMinus, PhiRepeatedRoot) => {
                // lines through (1, -1/2) on 3s^2 - 4t^2 - 4t - 4 = 0
                let den = qi(3) * &m * &m - qi(4);
                let u = qi(-6) * &m / den;
                (&one + &m * &u, u - q(1, 2))
            }
            (Plane::TimelikeIiiPlus | Plane::TimelikeIiiMinus, PhiAlphaCommonRoot) => (m.clone(), qi(k as i64 % 5)),
            _ => return Vec::new(),
        };
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// One frozen sample of an open region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub plane: Plane,
    pub region_id: u32,
    pub sample: (Scalar, Scalar),
    pub config: ConfigKind,
}

const CATALOG: &str = include_str!("../fixtures/region_catalog.txt");

/// The region catalog fixture: `plane region_id s t config` per line.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_catalog_line(l).expect("well-formed region catalog"))
        .collect()
}

fn parse_catalog_line(line: &str) -> Option<CatalogEntry> {
    let mut w = line.split_whitespace();
    let plane = w.next()?.parse().ok()?;
    let region_id = w.next()?.parse().ok()?;
    let s = Scalar::from_str(w.next()?).ok()?;
    let t = Scalar::from_str(w.next()?).ok()?;
    let config = w.next()?.parse().ok()?;
    Some(CatalogEntry { plane, region_id, sample: (s, t), config })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn red(a: [i64; 4]) -> CubicReduction {
        reduce_cubic(&CubicForm::from_ints(a)).unwrap()
    }

    fn exact(v: &Option<RealValue>) -> Scalar {
        v.as_ref().and_then(|v| v.exact().cloned()).expect("exact parameter")
    }

    #[test]
    fn reduced_form_i_is_fixed() {
        let r = red([1, 2, 5, 0]);
        assert_eq!(r.form, CubicNormalForm::I);
        assert_eq!((exact(&r.s), exact(&r.t)), (qi(2), qi(5)));
        assert_eq!(r.boost, RealValue::Exact(qi(0)));
    }

    #[test]
    fn x_squared_z_is_form_iv() {
        assert_eq!(red([0, 1, 0, 0]).form, CubicNormalForm::Iv);
    }

    #[test]
    fn lightlike_factor_gives_form_iii() {
        // (x + z)(x^2 + xz + 3z^2)
        let r = red([1, 2, 4, 3]);
        assert_eq!(r.form, CubicNormalForm::IiiPlus);
        assert_eq!((exact(&r.s), exact(&r.t)), (qi(1), qi(3)));
        let r = red([1, 0, -1, 0]);
        assert_eq!(r.form, CubicNormalForm::IiiPlus);
    }

    #[test]
    fn double_spacelike_root_has_no_normal_form() {
        assert_eq!(reduce_cubic(&CubicForm::from_ints([0, 0, 1, 0])), Err(Error::NoNormalForm));
        assert_eq!(reduce_cubic(&CubicForm::from_ints([0; 4])), Err(Error::ZeroCubic));
    }

    #[test]
    fn spacelike_roots_only_give_form_ii() {
        // z (x^2 + z^2) ... after rescaling: roots z only (real), spacelike
        let r = red([0, 1, 0, 1]);
        assert_eq!(r.form, CubicNormalForm::Ii);
        assert_eq!((exact(&r.s), exact(&r.t)), (qi(0), qi(1)));
    }

    #[test]
    fn irrational_boost_is_enclosed() {
        // x^3 - 3 x z^2 + z^3 has three real roots, all irrational
        let c = CubicForm::from_ints([1, 0, -3, 1]);
        let r = reduce_cubic(&c).unwrap();
        assert_eq!(r.form, CubicNormalForm::I);
        let RealValue::Enclosed(b) = &r.boost else { panic!("boost should be irrational") };
        assert!(b.width() <= enclosure_width());
        // C(-T, 1) vanishes at the boost
        let t = r.boost.approx();
        assert!((-(t * t * t) + 3.0 * t + 1.0).abs() < 1e-9);
    }

    #[test]
    fn root_types() {
        assert_eq!(root_causal_type(&qi(1), &qi(0)), RootCausalType::Timelike);
        assert_eq!(root_causal_type(&qi(0), &qi(1)), RootCausalType::Spacelike);
        assert_eq!(root_causal_type(&qi(1), &qi(-1)), RootCausalType::Lightlike);
    }

    #[test]
    fn boost_coefficients_match_direct_substitution() {
        let c = CubicForm::from_ints([2, -1, 3, 5]);
        let t = q(1, 3);
        let b = c.boosted(&t);
        for (x, z) in [(qi(1), qi(0)), (qi(2), qi(-1)), (q(1, 2), qi(3))] {
            let lhs = b.eval(&x, &z);
            let rhs = c.eval(&(&x - &t * &z), &(-&t * &x + &z));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn beta_plane_examples() {
        let l = stratify_beta(&qi(0), &qi(0));
        assert!(l.mult_one && l.is_open());
        assert_eq!(l.predicted_config, Some(ConfigKind::Star));
        let l = stratify_beta(&qi(3), &qi(0));
        assert!(!l.mult_one);
        assert!(l.on_curves.contains(&StratumCurve::DegenerateDiscriminant));
        assert_eq!(stratify_beta(&qi(0), &qi(4)).predicted_config, Some(ConfigKind::Lemon));
    }

    #[test]
    fn timelike_plane_examples() {
        let l = stratify_timelike(&qi(0), &q(-3, 2), CubicNormalForm::I).unwrap();
        assert!(l.mult_one);
        let l = stratify_timelike(&qi(2), &qi(1), CubicNormalForm::I).unwrap();
        assert!(!l.mult_one);
        let l = stratify_timelike(&qi(0), &qi(-1), CubicNormalForm::IiiPlus).unwrap();
        assert!(l.on_curves.contains(&StratumCurve::PhiAlphaCommonRoot));
        assert_eq!(l.predicted_config, Some(ConfigKind::Degenerate));
    }
}
