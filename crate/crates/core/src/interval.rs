//! Closed rational intervals and real numbers known either exactly or by a
//! certified enclosure.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::jet::{qi, to_f64, JetPoly, Scalar};
use crate::upoly::{RootInterval, UPoly};

/// `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Scalar) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero or is the point zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::point(Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient; `None` if the divisor contains zero.
    pub fn div(&self, d: &Interval) -> Option<Interval> {
        if d.contains_zero() {
            return None;
        }
        let inv = Interval::new(Scalar::one() / &d.hi, Scalar::one() / &d.lo);
        Some(self * &inv)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Enclosure of `p` over `x` by Horner's scheme.
pub fn eval_upoly(p: &UPoly, x: &Interval) -> Interval {
    let mut acc = Interval::point(Scalar::zero());
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &Interval::point(c.clone());
    }
    acc
}

/// Enclosure of `p(u, v)` over the box `u x v`.
pub fn eval_jet(p: &JetPoly, u: &Interval, v: &Interval) -> Interval {
    let mut acc = Interval::point(Scalar::zero());
    for (i, j, c) in p.terms() {
        let term = &(&u.pow(i) * &v.pow(j)) * &Interval::point(c.clone());
        acc = &acc + &term;
    }
    acc
}

/// A real number, exact when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealValue {
    Exact(Scalar),
    /// Certified enclosure `[lo, hi]`.
    Enclosed(Interval),
}

impl RealValue {
    pub fn approx(&self) -> f64 {
        match self {
            RealValue::Exact(x) => to_f64(x),
            RealValue::Enclosed(i) => (to_f64(&i.lo) + to_f64(&i.hi)) / 2.0,
        }
    }

    pub fn exact(&self) -> Option<&Scalar> {
        match self {
            RealValue::Exact(x) => Some(x),
            RealValue::Enclosed(_) => None,
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            RealValue::Exact(x) => Interval::point(x.clone()),
            RealValue::Enclosed(i) => i.clone(),
        }
    }
}

impl From<Scalar> for RealValue {
    fn from(x: Scalar) -> Self {
        RealValue::Exact(x)
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(x) => write!(f, "{}", x),
            RealValue::Enclosed(_) => write!(f, "~{:.12}", self.approx()),
        }
    }
}

/// Halves the isolating interval of the root of the squarefree `p` in `r`
/// until its width is at most `width`.
pub fn refine_root(p: &UPoly, r: &RootInterval, width: &Scalar) -> RootInterval {
    let (mut lo, mut hi) = (r.lo.clone(), r.hi.clone());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / qi(2);
        if p.eval(&mid).is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if p.count_roots_between(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Value of `num / den` at the root of the squarefree `p` isolated by `r`,
/// enclosed to width at most `width`. `None` if `den` vanishes at the root.
pub fn rational_at_root(p: &UPoly, r: &RootInterval, num: &UPoly, den: &UPoly, width: &Scalar) -> Option<RealValue> {
    if r.is_exact() {
        let d = den.eval(&r.lo);
        return (!d.is_zero()).then(|| RealValue::Exact(num.eval(&r.lo) / d));
    }
    let g = p.gcd(den);
    if g.degree().unwrap_or(0) > 0 && g.count_roots_between(&r.lo, &r.hi) > 0 {
        return None;
    }
    let mut r = r.clone();
    loop {
        let x = Interval::new(r.lo.clone(), r.hi.clone());
        if let Some(q) = eval_upoly(num, &x).div(&eval_upoly(den, &x)) {
            if q.width() <= *width {
                return Some(RealValue::Enclosed(q));
            }
        }
        let next = refine_root(p, &r, &((&r.hi - &r.lo) / qi(4)));
        if next.is_exact() {
            return rational_at_root(p, &next, num, den, width);
        }
        r = next;
    }
}
