//! Exact scalars and truncated bivariate jets.
//!
//! A [`JetPoly`] is a polynomial in two variables `(u, v)` with rational
//! coefficients, together with a truncation order `N`: every stored exponent
//! satisfies `i + j <= N`, and ring operations discard anything above the
//! smallest order involved. The special order [`JetPoly::EXACT`] marks a
//! polynomial that is known exactly (no truncation ever happens).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::upoly::UPoly;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Scalar = BigRational;

/// Builds the rational `num / den`. Panics when `den == 0`.
pub fn q(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Best `f64` approximation of a rational.
pub fn to_f64(s: &Scalar) -> f64 {
    if let Some(v) = s.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerators or denominators: scale down both.
    let n = s.numer();
    let d = s.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = n >> shift as usize;
    let d = d >> shift as usize;
    let nf = n.to_f64().unwrap_or(0.0);
    let df = d.to_f64().unwrap_or(1.0);
    nf / df
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(s: &Scalar) -> i32 {
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

/// Variable selector for derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
}

/// Errors raised by jet operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JetError {
    /// A substitution germ has a nonzero constant term.
    NonOriginPreserving,
}

impl fmt::Display for JetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetError::NonOriginPreserving => {
                f.write_str("substitution does not fix the origin (nonzero constant term)")
            }
        }
    }
}

/// Truncated bivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
    order: u32,
}

impl JetPoly {
    /// Truncation order of an exactly known polynomial.
    pub const EXACT: u32 = u32::MAX;

    pub fn zero(order: u32) -> Self {
        JetPoly { terms: BTreeMap::new(), order }
    }

    pub fn constant(c: Scalar, order: u32) -> Self {
        let mut p = JetPoly::zero(order);
        p.add_term(0, 0, c);
        p
    }

    pub fn one(order: u32) -> Self {
        JetPoly::constant(Scalar::one(), order)
    }

    /// The coordinate function `u`.
    pub fn u(order: u32) -> Self {
        JetPoly::monomial(1, 0, Scalar::one(), order)
    }

    /// The coordinate function `v`.
    pub fn v(order: u32) -> Self {
        JetPoly::monomial(0, 1, Scalar::one(), order)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar, order: u32) -> Self {
        let mut p = JetPoly::zero(order);
        p.add_term(i, j, c);
        p
    }

    /// Builds a jet from `(i, j, coefficient)` triples; repeated exponents add up
    /// and terms above `order` are dropped.
    pub fn from_terms<I>(terms: I, order: u32) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Scalar)>,
    {
        let mut p = JetPoly::zero(order);
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Shorthand for small integer-coefficient polynomials, used heavily in tests.
    pub fn from_ints(terms: &[(u32, u32, i64)], order: u32) -> Self {
        JetPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, qi(c))), order)
    }

    /// Adds `c u^i v^j` in place, respecting truncation and zero-pruning.
    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        if c.is_zero() || !self.admits(i, j) {
            return;
        }
        let key = (i, j);
        let remove = match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                existing.is_zero()
            }
            None => {
                self.terms.insert(key, c);
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    fn admits(&self, i: u32, j: u32) -> bool {
        self.order == Self::EXACT || (i as u64 + j as u64) <= self.order as u64
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == Self::EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0, 0)
    }

    /// Total degree of the highest stored term (`None` for the zero jet).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Order of vanishing at the origin (`None` for the zero jet).
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> JetPoly {
        JetPoly::from_terms(
            self.terms().filter(|&(i, j, _)| i + j == d).map(|(i, j, c)| (i, j, c.clone())),
            self.order,
        )
    }

    /// Drops every term of degree above `n` and records the new order.
    pub fn truncate(&self, n: u32) -> JetPoly {
        let order = n.min(self.order);
        JetPoly::from_terms(
            self.terms().filter(|&(i, j, _)| i + j <= order).map(|(i, j, c)| (i, j, c.clone())),
            order,
        )
    }

    /// The `n`-jet. An exact polynomial of degree at most `n` stays exact.
    pub fn jet(&self, n: u32) -> JetPoly {
        if self.is_exact() && self.degree().unwrap_or(0) <= n {
            self.clone()
        } else {
            self.truncate(n)
        }
    }

    /// Reinterprets the stored coefficients at another order. Raising the
    /// order asserts that the missing higher terms are genuinely zero.
    pub fn with_order(&self, n: u32) -> JetPoly {
        if n <= self.order {
            self.truncate(n)
        } else {
            JetPoly { terms: self.terms.clone(), order: n }
        }
    }

    pub fn scale(&self, c: &Scalar) -> JetPoly {
        if c.is_zero() {
            return JetPoly::zero(self.order);
        }
        JetPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            order: self.order,
        }
    }

    pub fn pow(&self, e: u32) -> JetPoly {
        let mut acc = JetPoly::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative. The truncation order drops by one.
    pub fn derive(&self, var: Var) -> JetPoly {
        let order = if self.is_exact() { Self::EXACT } else { self.order.saturating_sub(1) };
        let mut out = JetPoly::zero(order);
        for (i, j, c) in self.terms() {
            match var {
                Var::U if i > 0 => out.add_term(i - 1, j, c * qi(i as i64)),
                Var::V if j > 0 => out.add_term(i, j - 1, c * qi(j as i64)),
                _ => {}
            }
        }
        out
    }

    /// Substitutes `u -> h1(u, v)`, `v -> h2(u, v)`. Both substitutions must
    /// vanish at the origin; the result keeps the smallest order involved.
    pub fn compose(&self, h1: &JetPoly, h2: &JetPoly) -> Result<JetPoly, JetError> {
        if !h1.constant_term().is_zero() || !h2.constant_term().is_zero() {
            return Err(JetError::NonOriginPreserving);
        }
        let order = self.order.min(h1.order).min(h2.order);
        let deg_u = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let deg_v = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut pow_u = Vec::with_capacity(deg_u as usize + 1);
        pow_u.push(JetPoly::one(order));
        for k in 1..=deg_u as usize {
            let next = &pow_u[k - 1] * &h1.with_order(order);
            pow_u.push(next);
        }
        let mut pow_v = Vec::with_capacity(deg_v as usize + 1);
        pow_v.push(JetPoly::one(order));
        for k in 1..=deg_v as usize {
            let next = &pow_v[k - 1] * &h2.with_order(order);
            pow_v.push(next);
        }
        let mut out = JetPoly::zero(order);
        for (i, j, c) in self.terms() {
            let t = &pow_u[i as usize] * &pow_v[j as usize];
            for (a, b, d) in t.terms() {
                out.add_term(a, b, c * d);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, u: &Scalar, v: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, j, c) in self.terms() {
            acc += c * pow_scalar(u, i) * pow_scalar(v, j);
        }
        acc
    }

    /// Floating-point evaluation (only used by numerical consumers).
    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        FloatPoly::from(self).eval(u, v)
    }

    /// Restriction to the `u`-axis as a univariate polynomial in `u`.
    pub fn restrict_v0(&self) -> UPoly {
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (i, j, c) in self.terms() {
            if j == 0 {
                let i = i as usize;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Scalar::zero());
                }
                coeffs[i] += c;
            }
        }
        UPoly::new(coeffs)
    }

    /// Coefficients as a polynomial in `v` whose coefficients are polynomials in `u`.
    pub fn coeffs_in_v(&self) -> Vec<UPoly> {
        let deg_v = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut raw: Vec<Vec<Scalar>> = alloc::vec![Vec::new(); deg_v + 1];
        for (i, j, c) in self.terms() {
            let row = &mut raw[j as usize];
            let i = i as usize;
            if row.len() <= i {
                row.resize(i + 1, Scalar::zero());
            }
            row[i] += c;
        }
        raw.into_iter().map(UPoly::new).collect()
    }

    /// Swaps the roles of `u` and `v`.
    pub fn swap_vars(&self) -> JetPoly {
        JetPoly::from_terms(self.terms().map(|(i, j, c)| (j, i, c.clone())), self.order)
    }

    /// Exact division by `u^a v^b` when every term is divisible.
    pub fn divide_monomial(&self, a: u32, b: u32) -> Option<JetPoly> {
        if self.terms.keys().any(|&(i, j)| i < a || j < b) {
            return None;
        }
        let order = if self.is_exact() { Self::EXACT } else { self.order.saturating_sub(a + b) };
        Some(JetPoly::from_terms(self.terms().map(|(i, j, c)| (i - a, j - b, c.clone())), order))
    }

    fn binary(&self, other: &JetPoly, negate: bool) -> JetPoly {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (i, j, c) in other.terms() {
            out.add_term(i, j, if negate { -c.clone() } else { c.clone() });
        }
        out
    }
}

fn pow_scalar(x: &Scalar, e: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Debug for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)?;
        if self.is_exact() {
            f.write_str(" [exact]")
        } else {
            write!(f, " [+O({})]", self.order + 1)
        }
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Graded order: lowest degree first, then by decreasing power of u.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = i + j > 0;
            if !mono || !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({}/{})", abs.numer(), abs.denom())?;
                }
                if mono {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("u")?,
                _ => write!(f, "u^{}", i)?,
            }
            if i > 0 && j > 0 {
                f.write_str("*")?;
            }
            match j {
                0 => {}
                1 => f.write_str("v")?,
                _ => write!(f, "v^{}", j)?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &'a JetPoly) -> JetPoly {
        self.binary(rhs, false)
    }
}

impl<'a> Sub<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &'a JetPoly) -> JetPoly {
        self.binary(rhs, true)
    }
}

impl<'a> Mul<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &'a JetPoly) -> JetPoly {
        let order = self.order.min(rhs.order);
        let mut out = JetPoly::zero(order);
        for (i, j, c) in self.terms() {
            for (a, b, d) in rhs.terms() {
                if out.admits(i + a, j + b) {
                    out.add_term(i + a, j + b, c * d);
                }
            }
        }
        out
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        JetPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
            order: self.order,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<JetPoly> for JetPoly {
            type Output = JetPoly;
            fn $m(self, rhs: JetPoly) -> JetPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a JetPoly> for JetPoly {
            type Output = JetPoly;
            fn $m(self, rhs: &'a JetPoly) -> JetPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<JetPoly> for &'a JetPoly {
            type Output = JetPoly;
            fn $m(self, rhs: JetPoly) -> JetPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        -&self
    }
}

/// Floating-point copy of a jet, for fast evaluation in numerical code.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    terms: Vec<(u32, u32, f64)>,
}

impl FloatPoly {
    pub fn new(mut terms: Vec<(u32, u32, f64)>) -> Self {
        terms.sort_by_key(|t| (t.0, t.1));
        FloatPoly { terms }
    }

    pub fn terms(&self) -> &[(u32, u32, f64)] {
        &self.terms
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let mut acc = 0.0;
        for &(i, j, c) in &self.terms {
            acc += c * powi(u, i) * powi(v, j);
        }
        acc
    }

    /// Value and gradient `(p, p_u, p_v)`.
    pub fn eval_grad(&self, u: f64, v: f64) -> (f64, f64, f64) {
        let mut p = 0.0;
        let mut pu = 0.0;
        let mut pv = 0.0;
        for &(i, j, c) in &self.terms {
            let ui = powi(u, i);
            let vj = powi(v, j);
            p += c * ui * vj;
            if i > 0 {
                pu += c * i as f64 * powi(u, i - 1) * vj;
            }
            if j > 0 {
                pv += c * j as f64 * ui * powi(v, j - 1);
            }
        }
        (p, pu, pv)
    }

    pub fn derive(&self, var: Var) -> FloatPoly {
        let mut out = Vec::new();
        for &(i, j, c) in &self.terms {
            match var {
                Var::U if i > 0 => out.push((i - 1, j, c * i as f64)),
                Var::V if j > 0 => out.push((i, j - 1, c * j as f64)),
                _ => {}
            }
        }
        FloatPoly::new(out)
    }
}

impl From<&JetPoly> for FloatPoly {
    fn from(p: &JetPoly) -> Self {
        FloatPoly::new(p.terms().map(|(i, j, c)| (i, j, to_f64(c))).collect())
    }
}

pub(crate) fn powi(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(terms: &[(u32, u32, i64)], n: u32) -> JetPoly {
        JetPoly::from_ints(terms, n)
    }

    #[test]
    fn product_of_coordinates() {
        let x = JetPoly::u(7);
        let y = JetPoly::v(7);
        assert_eq!(&x * &y, j(&[(1, 1, 1)], 7));
    }

    #[test]
    fn difference_of_squares_truncates() {
        let a = j(&[(0, 0, 1), (1, 0, 1)], 2);
        let b = j(&[(0, 0, 1), (1, 0, -1)], 2);
        assert_eq!(&a * &b, j(&[(0, 0, 1), (2, 0, -1)], 2));
    }

    #[test]
    fn square_drops_terms_above_order() {
        let a = j(&[(1, 0, 1), (0, 2, 1)], 2);
        let sq = &a * &a;
        assert_eq!(sq, j(&[(2, 0, 1)], 2));
        assert_eq!(sq.order(), 2);
    }

    #[test]
    fn mixed_orders_use_minimum() {
        let a = j(&[(1, 0, 1), (3, 0, 1)], 5);
        let b = j(&[(0, 1, 1)], 2);
        let s = &a + &b;
        assert_eq!(s.order(), 2);
        assert_eq!(s, j(&[(1, 0, 1), (0, 1, 1)], 2));
    }

    #[test]
    fn compose_swap_is_symmetric() {
        let f = j(&[(2, 0, 1), (0, 2, 1)], 7);
        let g = f.compose(&JetPoly::v(7), &JetPoly::u(7)).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn compose_shear() {
        let f = JetPoly::u(7);
        let h1 = j(&[(1, 0, 1), (0, 1, 1)], 7);
        assert_eq!(f.compose(&h1, &JetPoly::v(7)).unwrap(), h1);
    }

    #[test]
    fn compose_square_expansion() {
        let f = j(&[(2, 0, 1)], 4);
        let h1 = j(&[(1, 0, 1), (0, 2, 1)], 4);
        let out = f.compose(&h1, &JetPoly::v(4)).unwrap();
        assert_eq!(out, j(&[(2, 0, 1), (1, 2, 2), (0, 4, 1)], 4));
    }

    #[test]
    fn compose_rejects_constant_terms() {
        let f = JetPoly::u(3);
        let h1 = j(&[(0, 0, 1), (1, 0, 1)], 3);
        assert_eq!(f.compose(&h1, &JetPoly::v(3)), Err(JetError::NonOriginPreserving));
    }

    #[test]
    fn derivatives() {
        assert_eq!(j(&[(3, 0, 1)], 7).derive(Var::U), j(&[(2, 0, 3)], 6));
        assert_eq!(j(&[(1, 1, 1)], 7).derive(Var::V), j(&[(1, 0, 1)], 6));
        assert_eq!(
            j(&[(2, 0, 1), (0, 2, -1), (3, 0, 1)], 7).derive(Var::U),
            j(&[(1, 0, 2), (2, 0, 3)], 6)
        );
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let a = j(&[(1, 0, 1)], 4);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn display_is_readable() {
        let p = JetPoly::from_terms([(2, 0, q(1, 2)), (0, 1, qi(-3))], 5);
        assert_eq!(alloc::format!("{}", p), "-3*v + (1/2)*u^2");
    }
}
