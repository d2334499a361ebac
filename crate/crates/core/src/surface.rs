//! Graph patches in Euclidean and Minkowski 3-space, their fundamental forms
//! and the binary differential equation of the lines of principal curvature.

use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jet::{sign, JetPoly, Scalar, Var};

/// Ambient inner product. Minkowski uses `x0 y0 + x1 y1 - x2 y2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Euclidean,
    Minkowski,
}

impl Ambient {
    /// Sign of the `i`-th squared coordinate in the inner product.
    pub fn metric_sign(self, i: usize) -> i64 {
        match (self, i) {
            (Ambient::Minkowski, 2) => -1,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ambient::Euclidean => "euclidean",
            Ambient::Minkowski => "minkowski",
        }
    }
}

/// Which coordinate is the graph of the function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphAxis {
    /// `z = f(x, y)`, parameters `(u, v) = (x, y)`.
    Z,
    /// `y = f(x, z)`, parameters `(u, v) = (x, z)`.
    Y,
}

impl GraphAxis {
    pub fn name(self) -> &'static str {
        match self {
            GraphAxis::Z => "z",
            GraphAxis::Y => "y",
        }
    }
}

/// Surface germ given as a polynomial graph over a coordinate plane, with
/// the working truncation order used by jet computations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MongePatch {
    pub ambient: Ambient,
    pub axis: GraphAxis,
    f: JetPoly,
    order: u32,
}

/// Default working truncation order.
pub const DEFAULT_ORDER: u32 = 7;

impl MongePatch {
    /// `f` is read as an exact polynomial; it must vanish at the origin.
    pub fn new(ambient: Ambient, axis: GraphAxis, f: JetPoly) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::NotAtOrigin);
        }
        Ok(MongePatch { ambient, axis, f: f.with_order(JetPoly::EXACT), order: DEFAULT_ORDER })
    }

    pub fn euclidean(f: JetPoly) -> Self {
        MongePatch::new(Ambient::Euclidean, GraphAxis::Z, f).expect("graph through the origin")
    }

    pub fn minkowski_z(f: JetPoly) -> Self {
        MongePatch::new(Ambient::Minkowski, GraphAxis::Z, f).expect("graph through the origin")
    }

    pub fn minkowski_y(f: JetPoly) -> Self {
        MongePatch::new(Ambient::Minkowski, GraphAxis::Y, f).expect("graph through the origin")
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order.max(2);
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The graph function as an exact polynomial.
    pub fn f(&self) -> &JetPoly {
        &self.f
    }

    pub fn parametrisation(&self) -> Parametrisation {
        let u = JetPoly::u(JetPoly::EXACT);
        let v = JetPoly::v(JetPoly::EXACT);
        let comps = match self.axis {
            GraphAxis::Z => [u, v, self.f.clone()],
            GraphAxis::Y => [u, self.f.clone(), v],
        };
        Parametrisation { ambient: self.ambient, comps }
    }

    pub fn fundamental_forms(&self) -> FundamentalForms {
        self.parametrisation().fundamental_forms(self.order)
    }

    pub fn principal_bde(&self) -> BdeGerm {
        self.parametrisation().principal_bde(self.order)
    }

    pub fn special_curves(&self) -> SpecialCurves {
        self.parametrisation().special_curves(self.order)
    }
}

/// Polynomial parametrisation `(u, v) -> (x0, x1, x2)` of a surface germ at
/// the parameter origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parametrisation {
    pub ambient: Ambient,
    pub comps: [JetPoly; 3],
}

type Vec3 = [JetPoly; 3];

fn det3(a: &Vec3, b: &Vec3, c: &Vec3, n: u32) -> JetPoly {
    let minor = |x: &JetPoly, y: &JetPoly, z: &JetPoly, w: &JetPoly| (&(x * y) - &(z * w)).jet(n);
    let t1 = &a[0] * &minor(&b[1], &c[2], &b[2], &c[1]);
    let t2 = &a[1] * &minor(&b[0], &c[2], &b[2], &c[0]);
    let t3 = &a[2] * &minor(&b[0], &c[1], &b[1], &c[0]);
    (&(&t1 - &t2) + &t3).jet(n)
}

impl Parametrisation {
    pub fn new(ambient: Ambient, comps: [JetPoly; 3]) -> Self {
        Parametrisation { ambient, comps: comps.map(|c| c.with_order(JetPoly::EXACT)) }
    }

    fn inner(&self, a: &Vec3, b: &Vec3, n: u32) -> JetPoly {
        let mut acc = &a[0] * &b[0];
        acc = &acc + &(&a[1] * &b[1]);
        let last = &a[2] * &b[2];
        match self.ambient {
            Ambient::Euclidean => (&acc + &last).jet(n),
            Ambient::Minkowski => (&acc - &last).jet(n),
        }
    }

    fn partials(&self, n: u32) -> [Vec3; 5] {
        let d = |c: &JetPoly, vars: &[Var]| {
            let mut out = c.clone();
            for &v in vars {
                out = out.derive(v);
            }
            out.jet(n)
        };
        let map = |vars: &[Var]| -> Vec3 {
            [d(&self.comps[0], vars), d(&self.comps[1], vars), d(&self.comps[2], vars)]
        };
        [
            map(&[Var::U]),
            map(&[Var::V]),
            map(&[Var::U, Var::U]),
            map(&[Var::U, Var::V]),
            map(&[Var::V, Var::V]),
        ]
    }

    /// Coefficients of the first fundamental form and the unnormalised second
    /// fundamental form, as jets of order `n`.
    pub fn fundamental_forms(&self, n: u32) -> FundamentalForms {
        let [xu, xv, xuu, xuv, xvv] = self.partials(n);
        FundamentalForms {
            e: self.inner(&xu, &xu, n),
            f: self.inner(&xu, &xv, n),
            g: self.inner(&xv, &xv, n),
            lbar: det3(&xu, &xv, &xuu, n),
            mbar: det3(&xu, &xv, &xuv, n),
            nbar: det3(&xu, &xv, &xvv, n),
            order: n,
        }
    }

    pub fn principal_bde(&self, n: u32) -> BdeGerm {
        self.fundamental_forms(n).bde()
    }

    pub fn special_curves(&self, n: u32) -> SpecialCurves {
        let ff = self.fundamental_forms(n);
        let w = ff.bde();
        let disc = w.discriminant();
        SpecialCurves { ld: ff.ld(), lpl: disc.clone(), bde_discriminant: disc }
    }

    /// Applies a linear map of the ambient space.
    pub fn transform(&self, m: &[[Scalar; 3]; 3]) -> Parametrisation {
        let comps = core::array::from_fn(|i| {
            let mut acc = JetPoly::zero(JetPoly::EXACT);
            for (k, c) in self.comps.iter().enumerate() {
                acc = &acc + &c.scale(&m[i][k]);
            }
            acc
        });
        Parametrisation { ambient: self.ambient, comps }
    }

    /// Precomposes with a reparametrisation `(u, v) -> (h1, h2)`.
    pub fn reparametrise(&self, h1: &JetPoly, h2: &JetPoly) -> Result<Parametrisation> {
        let mut comps = self.comps.clone();
        for c in comps.iter_mut() {
            let base = c.constant_term();
            let moving = &*c - &JetPoly::constant(base.clone(), JetPoly::EXACT);
            *c = &moving.compose(h1, h2)? + &JetPoly::constant(base, JetPoly::EXACT);
        }
        Ok(Parametrisation { ambient: self.ambient, comps })
    }
}

/// `E, F, G` and the determinant coefficients `lbar, mbar, nbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalForms {
    pub e: JetPoly,
    pub f: JetPoly,
    pub g: JetPoly,
    pub lbar: JetPoly,
    pub mbar: JetPoly,
    pub nbar: JetPoly,
    /// Truncation order of the jets.
    pub order: u32,
}

impl FundamentalForms {
    pub fn bde(&self) -> BdeGerm {
        let n = self.order;
        let pair = |x: &JetPoly, y: &JetPoly, z: &JetPoly, w: &JetPoly| (&(x * y) - &(z * w)).jet(n);
        BdeGerm {
            a: pair(&self.f, &self.nbar, &self.g, &self.mbar),
            b: pair(&self.e, &self.nbar, &self.g, &self.lbar),
            c: pair(&self.e, &self.mbar, &self.f, &self.lbar),
        }
    }

    /// `F^2 - EG`; negative on Riemannian points, positive on Lorentzian ones.
    pub fn ld(&self) -> JetPoly {
        (&(&self.f * &self.f) - &(&self.e * &self.g)).jet(self.order)
    }

    /// Values of `E, F, G` at the origin.
    pub fn metric_at_origin(&self) -> [Scalar; 3] {
        [self.e.constant_term(), self.f.constant_term(), self.g.constant_term()]
    }
}

/// BDE `a dv^2 + b du dv + c du^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdeGerm {
    pub a: JetPoly,
    pub b: JetPoly,
    pub c: JetPoly,
}

impl BdeGerm {
    pub fn new(a: JetPoly, b: JetPoly, c: JetPoly) -> Self {
        BdeGerm { a, b, c }
    }

    pub fn discriminant(&self) -> JetPoly {
        let four = JetPoly::constant(Scalar::from_integer(4.into()), JetPoly::EXACT);
        &(&self.b * &self.b) - &(&four * &(&self.a * &self.c))
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.a.constant_term().is_zero() && self.b.constant_term().is_zero() && self.c.constant_term().is_zero()
    }

    pub fn one_jet(&self) -> BdeGerm {
        let cut = |p: &JetPoly| p.homogeneous(1).with_order(JetPoly::EXACT);
        BdeGerm { a: cut(&self.a), b: cut(&self.b), c: cut(&self.c) }
    }

    pub fn scale(&self, s: &Scalar) -> BdeGerm {
        BdeGerm { a: self.a.scale(s), b: self.b.scale(s), c: self.c.scale(s) }
    }

    pub fn truncate(&self, n: u32) -> BdeGerm {
        BdeGerm { a: self.a.truncate(n), b: self.b.truncate(n), c: self.c.truncate(n) }
    }
}

impl fmt::Display for BdeGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Locus of degeneracy, lightlike principal locus and BDE discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCurves {
    pub ld: JetPoly,
    pub lpl: JetPoly,
    pub bde_discriminant: JetPoly,
}

/// Causal character of the tangent plane at the origin from `F^2 - EG`.
pub fn metric_signature(ff: &FundamentalForms) -> i32 {
    sign(&ff.ld().constant_term())
}

/// Lorentz boost in the `(x0, x2)` plane with rational parameter `m`:
/// `cosh = (1 + m^2) / (1 - m^2)`, `sinh = 2m / (1 - m^2)`.
pub fn rational_boost(m: &Scalar) -> [[Scalar; 3]; 3] {
    let one = Scalar::one();
    let den = &one - m * m;
    let ch = (&one + m * m) / &den;
    let sh = (m + m) / &den;
    [
        [ch.clone(), Scalar::zero(), -sh.clone()],
        [Scalar::zero(), one, Scalar::zero()],
        [-sh, Scalar::zero(), ch],
    ]
}
