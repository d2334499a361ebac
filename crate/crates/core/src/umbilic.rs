//! Umbilic detection, the umbilic multiplicity, the BDE multiplicity and the
//! saddle/node configuration read off the 1-jet of the principal BDE.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Degeneracy, Error, Result};
use crate::jet::{q, qi, sign, to_f64, JetPoly, Scalar, Var};
use crate::local::{
    classify_singularity, corank_and_hessian, intersection_multiplicity, Mult, MultiplicityResult, Sign,
    SingularityClass,
};
use crate::surface::{BdeGerm, FundamentalForms, MongePatch, Parametrisation};
use crate::upoly::{RootInterval, UPoly};

/// Causal character of an umbilic point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalType {
    Spacelike,
    Timelike,
    Lightlike,
    NotUmbilic,
}

impl CausalType {
    pub fn name(self) -> &'static str {
        match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Lightlike => "lightlike",
            CausalType::NotUmbilic => "not_umbilic",
        }
    }
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Truncation ladder used when a computation is not determined by the
/// current jet order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub order: u32,
    pub max_order: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: 7, max_order: 14 }
    }
}

impl Options {
    pub fn at_order(order: u32) -> Self {
        Options { order, max_order: order.max(14) }
    }
}

/// Runs `step` at increasing truncation orders until it no longer reports
/// an insufficient truncation. Past `max_order` the step runs once more on
/// exact polynomials, which settles infinite values.
pub fn with_ladder<T>(opts: Options, mut step: impl FnMut(u32) -> Result<T>) -> Result<T> {
    for n in opts.order.max(2)..=opts.max_order.max(2) {
        match step(n) {
            Err(Error::TruncationInsufficient { .. }) => continue,
            other => return other,
        }
    }
    step(JetPoly::EXACT)
}

pub fn causal_type_of(ff: &FundamentalForms) -> CausalType {
    if !ff.bde().vanishes_at_origin() {
        return CausalType::NotUmbilic;
    }
    match sign(&ff.ld().constant_term()) {
        -1 => CausalType::Spacelike,
        1 => CausalType::Timelike,
        _ => CausalType::Lightlike,
    }
}

pub fn detect_umbilic(p: &MongePatch) -> CausalType {
    causal_type_of(&p.parametrisation().fundamental_forms(2))
}

/// Multiplicity of the umbilic from the pair of BDE coefficients selected by
/// the first of `E, F, G` that is nonzero at the origin.
pub fn multiplicity_from_forms(ff: &FundamentalForms) -> Result<MultiplicityResult> {
    let w = ff.bde();
    if !w.vanishes_at_origin() {
        return Err(Error::NotUmbilic);
    }
    let [e, f, g] = ff.metric_at_origin();
    if !e.is_zero() {
        intersection_multiplicity(&w.b, &w.c)
    } else if !f.is_zero() {
        intersection_multiplicity(&w.a, &w.c)
    } else if !g.is_zero() {
        intersection_multiplicity(&w.a, &w.b)
    } else {
        Err(Error::NoNonzeroMetricCoefficient)
    }
}

pub fn parametrisation_multiplicity(x: &Parametrisation, opts: Options) -> Result<MultiplicityResult> {
    with_ladder(opts, |n| multiplicity_from_forms(&x.fundamental_forms(n)))
}

pub fn umbilic_multiplicity(p: &MongePatch) -> Result<MultiplicityResult> {
    umbilic_multiplicity_with(p, Options::at_order(p.order()))
}

pub fn umbilic_multiplicity_with(p: &MongePatch, opts: Options) -> Result<MultiplicityResult> {
    parametrisation_multiplicity(&p.parametrisation(), opts)
}

/// `m(omega)`: half the intersection number of the discriminant `delta` with
/// `a delta_u^2 - b delta_u delta_v + c delta_v^2`.
pub fn bde_multiplicity(w: &BdeGerm) -> Result<MultiplicityResult> {
    let order = w.a.order().min(w.b.order()).min(w.c.order());
    folded_multiplicity(w, order)
}

fn folded_multiplicity(w: &BdeGerm, n: u32) -> Result<MultiplicityResult> {
    let (a, b, c) = (w.a.jet(n), w.b.jet(n), w.c.jet(n));
    let four = JetPoly::constant(qi(4), JetPoly::EXACT);
    let delta = (&(&b * &b) - &(&four * &(&a * &c))).jet(n);
    let m = n.saturating_sub(1);
    let du = delta.derive(Var::U).jet(m);
    let dv = delta.derive(Var::V).jet(m);
    let sq = |x: &JetPoly, y: &JetPoly| (x * y).jet(m);
    let expr = (&(&(&a * &sq(&du, &du)) - &(&b * &sq(&du, &dv))) + &(&c * &sq(&dv, &dv))).jet(m);
    if !delta.constant_term().is_zero() || !expr.constant_term().is_zero() {
        // No folded singularity at the origin.
        return Ok(MultiplicityResult { value: Mult::Finite(0), stabilized_at: 0 });
    }
    let r = intersection_multiplicity(&delta, &expr)?;
    match r.value {
        Mult::Infinite => Ok(r),
        Mult::Finite(d) if d % 2 == 1 => Err(Error::OddDimension(d)),
        Mult::Finite(d) => Ok(MultiplicityResult { value: Mult::Finite(d / 2), ..r }),
    }
}

pub fn patch_bde_multiplicity(p: &MongePatch, opts: Options) -> Result<MultiplicityResult> {
    parametrisation_bde_multiplicity(&p.parametrisation(), opts)
}

pub fn parametrisation_bde_multiplicity(x: &Parametrisation, opts: Options) -> Result<MultiplicityResult> {
    with_ladder(opts, |n| bde_multiplicity(&x.principal_bde(n)))
}

/// Values of `m_u` and `m(omega)` together with whether `m(omega) >= 3 m_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub m_u: u64,
    pub m_omega: u64,
    pub holds: bool,
}

pub fn check_inequality(p: &MongePatch, opts: Options) -> Result<InequalityCheck> {
    check_inequality_parametrised(&p.parametrisation(), opts)
}

pub fn check_inequality_parametrised(x: &Parametrisation, opts: Options) -> Result<InequalityCheck> {
    let m_u = parametrisation_multiplicity(x, opts)?.finite().ok_or(Error::TruncationInsufficient { order: opts.max_order })?;
    let m_omega = parametrisation_bde_multiplicity(x, opts)?
        .finite()
        .ok_or(Error::TruncationInsufficient { order: opts.max_order })?;
    Ok(InequalityCheck { m_u, m_omega, holds: m_omega >= 3 * m_u })
}

fn linear_coeffs(p: &JetPoly) -> (Scalar, Scalar) {
    (p.coeff(1, 0), p.coeff(0, 1))
}

/// The cubic `phi` and quadratic `alpha` of the 1-jet of the BDE, in the
/// chart `p = dv/du`.
pub fn phi_alpha(w: &BdeGerm) -> Result<(UPoly, UPoly)> {
    let (au, av) = linear_coeffs(&w.a);
    let (bu, bv) = linear_coeffs(&w.b);
    let (cu, cv) = linear_coeffs(&w.c);
    if [&au, &av, &bu, &bv, &cu, &cv].iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroOneJet);
    }
    let half = q(1, 2);
    let phi = UPoly::new(alloc::vec![cu, &bu + &cv, &au + &bv, av.clone()]);
    let alpha = UPoly::new(alloc::vec![&bu * &half, &bv * &half + &au, av]);
    Ok((phi, alpha))
}

/// The same pair in the chart `q = du/dv`, centred at the direction `p = infinity`.
fn phi_alpha_at_infinity(w: &BdeGerm) -> (UPoly, UPoly) {
    let swapped = BdeGerm::new(w.c.swap_vars(), w.b.swap_vars(), w.a.swap_vars());
    phi_alpha(&swapped).expect("1-jet already checked")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    Saddle,
    Node,
    Degenerate,
}

impl RootType {
    pub fn name(self) -> &'static str {
        match self {
            RootType::Saddle => "saddle",
            RootType::Node => "node",
            RootType::Degenerate => "degenerate",
        }
    }
}

/// A root of `phi` on the projective line of directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionRoot {
    /// Real root isolated in `[lo, hi]` (degenerate when exact).
    Finite(RootInterval),
    /// The vertical direction `du = 0`.
    Infinity,
}

impl DirectionRoot {
    /// Slope `dv/du`, infinite for the vertical direction.
    pub fn slope(&self) -> f64 {
        match self {
            DirectionRoot::Finite(r) => to_f64(&r.midpoint()),
            DirectionRoot::Infinity => f64::INFINITY,
        }
    }

    /// Angle of the direction in `(-pi/2, pi/2]`.
    pub fn angle(&self) -> f64 {
        match self {
            DirectionRoot::Finite(_) => libm::atan(self.slope()),
            DirectionRoot::Infinity => core::f64::consts::FRAC_PI_2,
        }
    }
}

impl fmt::Display for DirectionRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionRoot::Finite(r) if r.is_exact() => write!(f, "{}", r.lo),
            DirectionRoot::Finite(_) => write!(f, "~{:.9}", self.slope()),
            DirectionRoot::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConfigKind {
    Lemon,
    Monstar,
    Star,
    Timelike { saddles: u32, nodes: u32 },
    Degenerate,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::Lemon => f.write_str("lemon"),
            ConfigKind::Monstar => f.write_str("monstar"),
            ConfigKind::Star => f.write_str("star"),
            ConfigKind::Timelike { saddles, nodes } => write!(f, "timelike({}S,{}N)", saddles, nodes),
            ConfigKind::Degenerate => f.write_str("degenerate"),
        }
    }
}

impl core::str::FromStr for ConfigKind {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        let kind = match s {
            "lemon" => ConfigKind::Lemon,
            "monstar" => ConfigKind::Monstar,
            "star" => ConfigKind::Star,
            "degenerate" => ConfigKind::Degenerate,
            _ => {
                let inner = s.strip_prefix("timelike(").and_then(|r| r.strip_suffix("N)")).ok_or(())?;
                let (sad, nod) = inner.split_once("S,").ok_or(())?;
                ConfigKind::Timelike { saddles: sad.parse().map_err(|_| ())?, nodes: nod.parse().map_err(|_| ())? }
            }
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigLabel {
    pub kind: ConfigKind,
    pub phi_roots: Vec<(DirectionRoot, RootType)>,
}

impl ConfigLabel {
    pub fn degenerate() -> Self {
        ConfigLabel { kind: ConfigKind::Degenerate, phi_roots: Vec::new() }
    }
}

fn root_type_from_sign(s: i32) -> RootType {
    match s {
        1 => RootType::Saddle,
        -1 => RootType::Node,
        _ => RootType::Degenerate,
    }
}

/// Sign of `h` at the unique root of the squarefree `p` inside `r`, assuming
/// `h` does not vanish at that root.
fn sign_at_root(p: &UPoly, h: &UPoly, r: &RootInterval) -> i32 {
    if r.is_exact() {
        return sign(&h.eval(&r.lo));
    }
    let (mut lo, mut hi) = (r.lo.clone(), r.hi.clone());
    loop {
        if !h.eval(&lo).is_zero() && !h.eval(&hi).is_zero() && h.count_roots_between(&lo, &hi) == 0 {
            return sign(&h.eval(&hi));
        }
        let mid = (&lo + &hi) / qi(2);
        if p.eval(&mid).is_zero() {
            return sign(&h.eval(&mid));
        }
        if p.count_roots_between(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Width to which roots of `phi` are isolated for reporting.
fn report_width() -> Scalar {
    Scalar::new(1.into(), num_bigint::BigInt::from(1u64 << 40))
}

/// Labels the configuration of the principal lines from the 1-jet of the BDE.
pub fn classify_config(w: &BdeGerm) -> Result<ConfigLabel> {
    let (phi, alpha) = phi_alpha(w)?;
    let j1 = w.one_jet();
    let (corank, hess) = corank_and_hessian(&j1.discriminant());
    if corank != 0 {
        return Err(Error::DegenerateConfig(Degeneracy::NonMorseDiscriminant));
    }
    let deg = phi.degree();
    // Projective multiplicity of the root at infinity is 3 - deg(phi).
    match deg {
        None | Some(0) | Some(1) => return Err(Error::DegenerateConfig(Degeneracy::RepeatedRoot)),
        _ => {}
    }
    if phi.gcd(&phi.derivative()).degree() != Some(0) {
        return Err(Error::DegenerateConfig(Degeneracy::RepeatedRoot));
    }
    if phi.gcd(&alpha).degree() != Some(0) && !alpha.is_zero() {
        return Err(Error::DegenerateConfig(Degeneracy::CommonRoot));
    }
    if alpha.is_zero() {
        return Err(Error::DegenerateConfig(Degeneracy::CommonRoot));
    }
    let mut roots = Vec::new();
    let dphi = phi.derivative();
    for r in phi.isolate_real_roots(&report_width()) {
        let s = sign_at_root(&phi, &(&dphi * &alpha), &r);
        roots.push((DirectionRoot::Finite(r), root_type_from_sign(s)));
    }
    if deg == Some(2) {
        let (phi_inf, alpha_inf) = phi_alpha_at_infinity(w);
        if alpha_inf.coeff(0).is_zero() {
            return Err(Error::DegenerateConfig(Degeneracy::CommonRoot));
        }
        let s = sign(&(phi_inf.derivative().coeff(0) * alpha_inf.coeff(0)));
        roots.push((DirectionRoot::Infinity, root_type_from_sign(s)));
    }
    let saddles = roots.iter().filter(|r| r.1 == RootType::Saddle).count() as u32;
    let nodes = roots.iter().filter(|r| r.1 == RootType::Node).count() as u32;
    let kind = if hess > 0 {
        match (saddles, nodes) {
            (1, 0) => ConfigKind::Lemon,
            (3, 0) => ConfigKind::Star,
            (2, 1) => ConfigKind::Monstar,
            _ => return Err(Error::Internal("saddle/node count impossible at a definite discriminant")),
        }
    } else {
        ConfigKind::Timelike { saddles, nodes }
    };
    Ok(ConfigLabel { kind, phi_roots: roots })
}

/// Full analysis of the umbilic at the origin of a patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmbilicReport {
    pub causal_type: CausalType,
    pub m_u: MultiplicityResult,
    pub m_omega: MultiplicityResult,
    pub discriminant_class: SingularityClass,
    pub ld_class: Option<SingularityClass>,
    pub config: ConfigLabel,
}

pub fn analyze(p: &MongePatch, opts: Options) -> Result<UmbilicReport> {
    analyze_parametrisation(&p.parametrisation(), opts)
}

/// As [`analyze`], for a parametrised germ that need not be a graph. The
/// causal type is read off the metric at the origin even when the germ is
/// singular there.
pub fn analyze_parametrisation(x: &Parametrisation, opts: Options) -> Result<UmbilicReport> {
    let causal_type = causal_type_of(&x.fundamental_forms(2));
    if causal_type == CausalType::NotUmbilic {
        return Err(Error::NotUmbilic);
    }
    let m_u = parametrisation_multiplicity(x, opts)?;
    let m_omega = parametrisation_bde_multiplicity(x, opts)?;
    let discriminant_class = with_ladder(opts, |n| classify_singularity(&x.principal_bde(n).discriminant().jet(n)))?;
    let ld_class = if causal_type == CausalType::Lightlike {
        Some(with_ladder(opts, |n| classify_singularity(&x.fundamental_forms(n).ld()))?)
    } else {
        None
    };
    let config = classify_config(&x.principal_bde(2)).unwrap_or_else(|_| ConfigLabel::degenerate());
    Ok(UmbilicReport { causal_type, m_u, m_omega, discriminant_class, ld_class, config })
}

/// Candidate multiplicities read off from the singularity class of the LPL
/// at a timelike umbilic. `D2k-` is ambiguous between `2` and `k`.
pub fn lpl_class_multiplicity(class: &SingularityClass) -> Vec<u64> {
    match *class {
        SingularityClass::A(n, Sign::Minus) if n % 2 == 1 => alloc::vec![((n + 1) / 2) as u64],
        SingularityClass::D(n, _) if n % 2 == 1 => alloc::vec![2],
        SingularityClass::D(n, Sign::Plus) if n % 2 == 0 => alloc::vec![2],
        SingularityClass::D(n, Sign::Minus) if n % 2 == 0 => {
            let k = (n / 2) as u64;
            if k == 2 {
                alloc::vec![2]
            } else {
                alloc::vec![2, k]
            }
        }
        SingularityClass::E7 => alloc::vec![3],
        _ => Vec::new(),
    }
}
