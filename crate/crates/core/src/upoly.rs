//! Univariate polynomials over the rationals: Euclidean algorithm, Sturm
//! sequences, real root isolation and root counting in a disk.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::jet::{qi, sign, to_f64, Scalar};

/// Polynomial `c[0] + c[1] x + ... + c[n] x^n`, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        UPoly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Multiplicity of `0` as a root (`None` for the zero polynomial).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * qi(i as i64))
                .collect(),
        )
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::constant(Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lc = self.leading();
        self.scale(&(Scalar::one() / lc))
    }

    /// Scales to an integer polynomial with coprime coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Scalar::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if self.leading().is_negative() {
            g = -g;
        }
        UPoly::new(ints.into_iter().map(|v| Scalar::from_integer(v / &g)).collect())
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &factor * c;
            }
            q[k] = factor;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part `p / gcd(p, p')`.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive()
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Reverses the coefficient list relative to degree `n`: `x^n p(1/x)`.
    pub fn reversed(&self, n: usize) -> UPoly {
        let mut c = vec![Scalar::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reversal degree below polynomial degree");
            c[n - i] = a.clone();
        }
        UPoly::new(c)
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        signed_remainder_sequence(self, &self.derivative())
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_between(&self, a: &Scalar, b: &Scalar) -> usize {
        if self.is_zero() {
            panic!("root count of the zero polynomial");
        }
        let seq = self.sturm_sequence();
        let va = sign_changes_at(&seq, a);
        let vb = sign_changes_at(&seq, b);
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        sign_changes_at_infinity(&seq, true) - sign_changes_at_infinity(&seq, false)
    }

    /// Bound `B` such that every complex root satisfies `|x| < B`.
    pub fn cauchy_bound(&self) -> Scalar {
        let lc = self.leading().abs();
        let mut m = Scalar::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        m + Scalar::one()
    }

    /// Disjoint isolating intervals `[lo, hi]` of the distinct real roots,
    /// sorted increasingly, each of width at most `width`. Exact rational roots
    /// are returned as degenerate intervals.
    pub fn isolate_real_roots(&self, width: &Scalar) -> Vec<RootInterval> {
        let p = self.squarefree();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = p.sturm_sequence();
        let b = p.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        // Each interval is half-open (lo, hi]; Sturm counts roots there.
        while let Some((lo, hi)) = stack.pop() {
            let n = sign_changes_at(&seq, &lo) - sign_changes_at(&seq, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if p.eval(&hi).is_zero() {
                    out.push(RootInterval { lo: hi.clone(), hi });
                    continue;
                }
                if &hi - &lo <= *width {
                    out.push(RootInterval { lo, hi });
                    continue;
                }
            }
            let mid = (&lo + &hi) / qi(2);
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Distinct rational roots, sorted.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let p = self.primitive();
        let Some(deg) = p.degree() else { return Vec::new() };
        let mut roots = Vec::new();
        let mut p = p;
        if p.coeff(0).is_zero() {
            roots.push(Scalar::zero());
            let k = p.order_at_zero().unwrap();
            p = UPoly::new(p.coeffs[k..].to_vec());
        }
        if deg == 0 || p.degree() == Some(0) {
            return roots;
        }
        // A rational root has denominator dividing the leading coefficient L,
        // and two such fractions are at least 1/L^2 apart, so the simplest
        // rational inside a narrower isolating interval is the only candidate.
        let lead = p.leading().abs();
        let width = Scalar::one() / (&lead * &lead * qi(2));
        for r in p.isolate_real_roots(&width) {
            if let Some(c) = simplest_rational_between(&r.lo, &r.hi) {
                if p.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Number of roots (with multiplicity) in the open disk `|x| < r`.
    ///
    /// Maps the disk to the left half-plane by `x = r (1 + w) / (1 - w)` and
    /// counts roots there through a Cauchy index. Returns `None` when some root
    /// lies on the boundary circle.
    pub fn count_roots_in_disk(&self, r: &Scalar) -> Option<usize> {
        let n = self.degree().expect("root count of the zero polynomial");
        if n == 0 {
            return Some(0);
        }
        if self.eval(&-r.clone()).is_zero() || self.eval(r).is_zero() {
            return None;
        }
        // q(w) = (1 - w)^n p(r (1 + w) / (1 - w))
        let one_plus = UPoly::new(vec![r.clone(), r.clone()]);
        let one_minus = UPoly::from_ints(&[1, -1]);
        let mut q = UPoly::zero();
        let mut pow_plus = vec![UPoly::constant(Scalar::one())];
        let mut pow_minus = vec![UPoly::constant(Scalar::one())];
        for k in 1..=n {
            pow_plus.push(&pow_plus[k - 1] * &one_plus);
            pow_minus.push(&pow_minus[k - 1] * &one_minus);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            q = &q + &(&pow_plus[k] * &pow_minus[n - k]).scale(c);
        }
        count_left_half_plane(&q)
    }
}

/// Isolating interval for a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Scalar {
        (&self.lo + &self.hi) / qi(2)
    }
}

/// Simplest fraction (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_rational_between(lo: &Scalar, hi: &Scalar) -> Option<Scalar> {
    if lo > hi {
        return None;
    }
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Some(Scalar::zero());
    }
    if hi.is_negative() {
        return simplest_rational_between(&-hi.clone(), &-lo.clone()).map(|v| -v);
    }
    // Stern-Brocot descent via continued fractions.
    let fl = lo.floor();
    if &fl == lo {
        return Some(fl);
    }
    if fl.clone() + Scalar::one() <= *hi {
        return Some(fl + Scalar::one());
    }
    let inner = simplest_rational_between(
        &(Scalar::one() / (hi - &fl)),
        &(Scalar::one() / (lo - &fl)),
    )?;
    Some(fl + Scalar::one() / inner)
}

fn signed_remainder_sequence(a: &UPoly, b: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![a.clone()];
    if b.is_zero() {
        return seq;
    }
    seq.push(b.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Rescale by a positive factor to keep coefficients small.
        let p = r.primitive();
        let p = if sign(&p.leading()) == sign(&r.leading()) { p } else { -p };
        seq.push(-p);
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign_changes_at(seq: &[UPoly], x: &Scalar) -> usize {
    sign_changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn sign_changes_at_infinity(seq: &[UPoly], negative: bool) -> usize {
    sign_changes(seq.iter().map(|p| {
        let s = sign(&p.leading());
        if negative && p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Cauchy index of `num / den` over the whole real line, i.e. the number of
/// jumps from -inf to +inf minus jumps from +inf to -inf.
fn cauchy_index(num: &UPoly, den: &UPoly) -> i64 {
    let seq = signed_remainder_sequence(den, num);
    sign_changes_at_infinity(&seq, true) as i64 - sign_changes_at_infinity(&seq, false) as i64
}

/// Number of roots (with multiplicity) of a real polynomial in the open left
/// half-plane; `None` if it has roots on the imaginary axis.
pub fn count_left_half_plane(q: &UPoly) -> Option<usize> {
    let n = q.degree().expect("zero polynomial");
    // q(iy) = A(y) + i B(y)
    let mut re = vec![Scalar::zero(); n + 1];
    let mut im = vec![Scalar::zero(); n + 1];
    for (k, c) in q.coeffs().iter().enumerate() {
        // i^k cycles 1, i, -1, -i
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c.clone(),
            _ => im[k] = -c.clone(),
        }
    }
    let a = UPoly::new(re);
    let b = UPoly::new(im);
    let g = a.gcd(&b);
    if g.degree().unwrap_or(0) > 0 && g.count_real_roots() > 0 {
        return None;
    }
    // Total change of arg q(iy) over the line, in units of pi, equals
    // [atan(B/A)] endpoint term minus the Cauchy index of B/A.
    let end_term: i64 = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) if db > da => {
            // B/A tends to +-inf at both ends.
            let ratio_sign = sign(&b.leading()) * sign(&a.leading());
            let at_pos = ratio_sign;
            let at_neg = if (db - da) % 2 == 1 { -ratio_sign } else { ratio_sign };
            (at_pos - at_neg) as i64 / 2
        }
        (None, Some(_)) => {
            // q(iy) purely imaginary: arg is constant +-pi/2 except sign changes of B.
            0
        }
        _ => 0,
    };
    let idx = if a.is_zero() { 0 } else { cauchy_index(&b, &a) };
    let diff = end_term - idx;
    let total = n as i64;
    let left = (total + diff) / 2;
    debug_assert!((total + diff) % 2 == 0);
    Some(left as usize)
}

/// Resultant of two univariate polynomials via the Sylvester matrix with the
/// given formal degrees.
pub fn resultant_formal(p: &UPoly, dp: usize, q: &UPoly, dq: usize) -> Scalar {
    let n = dp + dq;
    if n == 0 {
        return Scalar::one();
    }
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for row in 0..dq {
        for k in 0..=dp {
            m[row][row + k] = p.coeff(dp - k);
        }
    }
    for row in 0..dp {
        for k in 0..=dq {
            m[dq + row][row + k] = q.coeff(dq - k);
        }
    }
    crate::linalg::determinant(m)
}

pub fn resultant(p: &UPoly, q: &UPoly) -> Scalar {
    match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) => resultant_formal(p, dp, q, dq),
        _ => Scalar::zero(),
    }
}

/// Lagrange interpolation through `(x_k, y_k)`.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UPoly {
    assert_eq!(xs.len(), ys.len());
    // Newton divided differences.
    let n = xs.len();
    let mut coef: Vec<Scalar> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UPoly::new(vec![-xs[i].clone(), Scalar::one()])) + &UPoly::constant(coef[i].clone());
    }
    acc
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            if i == 0 || !a.is_one() {
                write!(f, "{}", a)?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -self.clone()
    }
}
