//! Local algebra of plane curve germs at the origin.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bivar;
use crate::error::{Error, Result};
use crate::jet::{q, qi, sign, JetPoly, Scalar, Var};
use crate::linalg;
use crate::upoly::UPoly;

/// Either a finite count or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl Mult {
    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(v) => Some(v),
            Mult::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Mult::Infinite
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(v) => write!(f, "{}", v),
            Mult::Infinite => f.write_str("inf"),
        }
    }
}

/// A multiplicity together with the truncation order at which it is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityResult {
    pub value: Mult,
    /// Smallest truncation order of the inputs at which the value is reached
    /// and certified.
    pub stabilized_at: u32,
}

impl MultiplicityResult {
    pub fn finite(&self) -> Option<u64> {
        self.value.finite()
    }
}

/// Sign attached to an A or D class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Unsigned,
}

impl Sign {
    fn from_int(s: i32) -> Sign {
        match s.signum() {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Unsigned,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Unsigned => "",
        }
    }
}

/// Simple singularity classes of function germs in two variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityClass {
    Regular,
    A(u32, Sign),
    D(u32, Sign),
    E6,
    E7,
    E8,
    NonSimple,
    Degenerate,
}

impl SingularityClass {
    /// Milnor number of the class, when the class fixes it.
    pub fn milnor(&self) -> Option<u64> {
        match *self {
            SingularityClass::Regular => Some(0),
            SingularityClass::A(k, _) | SingularityClass::D(k, _) => Some(k as u64),
            SingularityClass::E6 => Some(6),
            SingularityClass::E7 => Some(7),
            SingularityClass::E8 => Some(8),
            SingularityClass::NonSimple | SingularityClass::Degenerate => None,
        }
    }

    pub fn is_simple(&self) -> bool {
        !matches!(
            self,
            SingularityClass::Regular | SingularityClass::NonSimple | SingularityClass::Degenerate
        )
    }

    pub fn is_morse(&self) -> bool {
        matches!(self, SingularityClass::A(1, _))
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityClass::Regular => f.write_str("regular"),
            SingularityClass::A(k, s) => write!(f, "A{}{}", k, s.suffix()),
            SingularityClass::D(k, s) => write!(f, "D{}{}", k, s.suffix()),
            SingularityClass::E6 => f.write_str("E6"),
            SingularityClass::E7 => f.write_str("E7"),
            SingularityClass::E8 => f.write_str("E8"),
            SingularityClass::NonSimple => f.write_str("non-simple"),
            SingularityClass::Degenerate => f.write_str("degenerate"),
        }
    }
}

/// Scales a polynomial to integer coefficients with trivial content.
fn primitive(p: &JetPoly) -> JetPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut den = BigInt::one();
    for (_, _, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for (_, _, c) in p.terms() {
        g = g.gcd(&(c * Scalar::from_integer(den.clone())).to_integer());
    }
    p.scale(&Scalar::new(den, g))
}

/// Local intersection number at the origin of two polynomials, computed by
/// Fulton's algorithm. Both inputs are read as exact polynomials.
pub fn fulton(f: &JetPoly, g: &JetPoly) -> Mult {
    let mut f = primitive(&f.with_order(JetPoly::EXACT));
    let mut g = primitive(&g.with_order(JetPoly::EXACT));
    // Without a common component the total is bounded by Bezout; a common
    // component makes the v-splitting step repeat forever.
    let bound = f.degree().unwrap_or(0) as u64 * g.degree().unwrap_or(0) as u64;
    let mut acc: u64 = 0;
    loop {
        if acc > bound {
            return Mult::Infinite;
        }
        if f.is_zero() || g.is_zero() {
            return Mult::Infinite;
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Mult::Finite(acc);
        }
        let fr = f.restrict_v0();
        let gr = g.restrict_v0();
        match (fr.is_zero(), gr.is_zero()) {
            (true, true) => return Mult::Infinite,
            (false, true) => core::mem::swap(&mut f, &mut g),
            (true, false) => {
                // f = v h: I(f, g) = I(v, g) + I(h, g)
                acc += gr.order_at_zero().unwrap() as u64;
                f = f.divide_monomial(0, 1).expect("v divides f");
            }
            (false, false) => {
                let (r, s) = (fr.degree().unwrap(), gr.degree().unwrap());
                let (fr, gr) = if r > s {
                    core::mem::swap(&mut f, &mut g);
                    (gr, fr)
                } else {
                    (fr, gr)
                };
                let shift = (gr.degree().unwrap() - fr.degree().unwrap()) as u32;
                let lead = JetPoly::monomial(shift, 0, gr.leading(), JetPoly::EXACT);
                let next = &g.scale(&fr.leading()) - &(&lead * &f);
                g = primitive(&next);
            }
        }
    }
}

fn monomial_index(i: u32, j: u32) -> usize {
    let d = i + j;
    (d * (d + 1) / 2 + j) as usize
}

/// Coefficient rows of all monomial multiples of `f` and `g`, reduced modulo
/// `m^(deg+1)`, over the monomials of degree at most `deg`.
fn multiples_mod(f: &JetPoly, g: &JetPoly, deg: u32) -> linalg::Matrix {
    let cols = monomial_index(0, deg) + 1;
    let mut rows: linalg::Matrix = Vec::new();
    for h in [f, g] {
        let h = h.truncate(deg);
        let Some(low) = h.lowest_degree() else { continue };
        if low > deg {
            continue;
        }
        for d in 0..=deg - low {
            for b in 0..=d {
                let shifted = JetPoly::monomial(d - b, b, Scalar::one(), deg) * &h;
                let mut row = alloc::vec![Scalar::zero(); cols];
                for (i, j, c) in shifted.terms() {
                    row[monomial_index(i, j)] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Whether `m^k` lies in the ideal `(f, g)`, decided from the `k`-jets: by
/// Nakayama, `m^k ⊂ I + m^(k+1)` suffices.
fn maximal_power_inside(f: &JetPoly, g: &JetPoly, k: u32) -> bool {
    let mut rows = multiples_mod(f, g, k);
    let base = linalg::rank(&rows);
    let cols = monomial_index(0, k) + 1;
    for b in 0..=k {
        let mut row = alloc::vec![Scalar::zero(); cols];
        row[monomial_index(k - b, b)] = Scalar::one();
        rows.push(row);
    }
    linalg::rank(&rows) == base
}

/// `dim O / (f, g)` given `m^k ⊂ (f, g)`: count monomials of degree below `k`
/// not reached by the ideal modulo `m^k`.
fn colength(f: &JetPoly, g: &JetPoly, k: u32) -> u64 {
    let total = (k * (k + 1) / 2) as usize;
    if k == 0 {
        return 0;
    }
    (total - linalg::rank(&multiples_mod(f, g, k - 1))) as u64
}

/// Smallest `n` in `1..=hi` whose jets certify the value, assuming `hi` does.
/// Certification is monotone in `n`.
fn first_certified(f: &JetPoly, g: &JetPoly, hi: u32) -> u32 {
    let (mut lo, mut hi) = (1, hi.max(1));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if maximal_power_inside(&f.truncate(mid), &g.truncate(mid), mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Intersection multiplicity of two germs at the origin.
///
/// Truncated inputs at order `N` are certified when `m^N` lies in the ideal:
/// the discarded terms then lie in the maximal ideal times the ideal, so the
/// ideal is determined by the jets and its colength is read off by linear
/// algebra. Otherwise, including a common component of truncated inputs, the
/// result is `TruncationInsufficient`. Exact inputs are first checked for a
/// common component through the origin. `stabilized_at` is the smallest order
/// whose jets certify the value.
pub fn intersection_multiplicity(f: &JetPoly, g: &JetPoly) -> Result<MultiplicityResult> {
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Err(Error::NotAtOrigin);
    }
    let order = f.order().min(g.order());
    if order != JetPoly::EXACT {
        if !maximal_power_inside(f, g, order) {
            return Err(Error::TruncationInsufficient { order });
        }
        let at = first_certified(f, g, order);
        let value = Mult::Finite(colength(&f.truncate(at), &g.truncate(at), at));
        return Ok(MultiplicityResult { value, stabilized_at: at });
    }
    if bivar::common_component_through_origin(f, g) {
        let top = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0)).max(1);
        return Ok(MultiplicityResult { value: Mult::Infinite, stabilized_at: top });
    }
    // Finite colength v means m^v lies in the ideal; double until it shows.
    let mut hi = 1;
    while !maximal_power_inside(&f.truncate(hi), &g.truncate(hi), hi) {
        hi *= 2;
    }
    let at = first_certified(f, g, hi);
    let value = Mult::Finite(colength(&f.truncate(at), &g.truncate(at), at));
    Ok(MultiplicityResult { value, stabilized_at: at })
}

/// Milnor number: the intersection multiplicity of the two partials. Returns
/// zero when the origin is not a critical point.
pub fn milnor_number(f: &JetPoly) -> Result<MultiplicityResult> {
    if !f.constant_term().is_zero() {
        return Err(Error::NotAtOrigin);
    }
    if !f.homogeneous(1).is_zero() {
        return Ok(MultiplicityResult { value: Mult::Finite(0), stabilized_at: 1 });
    }
    let r = intersection_multiplicity(&f.derive(Var::U), &f.derive(Var::V))?;
    Ok(MultiplicityResult { stabilized_at: r.stabilized_at.saturating_add(1), ..r })
}

/// Corank of the Hessian at the origin and the sign of its determinant.
pub fn corank_and_hessian(f: &JetPoly) -> (u32, i32) {
    let a = f.coeff(2, 0);
    let b = f.coeff(1, 1);
    let c = f.coeff(0, 2);
    let det = qi(4) * &a * &c - &b * &b;
    let corank = if a.is_zero() && b.is_zero() && c.is_zero() {
        2
    } else if det.is_zero() {
        1
    } else {
        0
    };
    (corank, sign(&det))
}

/// Recognises the simple singularity type of a germ at the origin.
pub fn classify_singularity(f: &JetPoly) -> Result<SingularityClass> {
    if !f.constant_term().is_zero() {
        return Err(Error::NotAtOrigin);
    }
    if !f.homogeneous(1).is_zero() {
        return Ok(SingularityClass::Regular);
    }
    let mu = match milnor_number(f)?.value {
        Mult::Infinite => return Ok(SingularityClass::Degenerate),
        Mult::Finite(m) => m as u32,
    };
    // The germ is (mu + 1)-determined; cut exact inputs down to size.
    let f = if f.is_exact() { f.truncate(mu + 2) } else { f.clone() };
    let (corank, det_sign) = corank_and_hessian(&f);
    match corank {
        0 => Ok(SingularityClass::A(1, Sign::from_int(det_sign))),
        1 => {
            let s = corank_one_sign(&f, mu)?;
            Ok(SingularityClass::A(mu, s))
        }
        _ => classify_corank_two(&f, mu),
    }
}

/// Sign of an A-type germ with rank-one Hessian: reduce to `lambda X^2 + c Y^(mu+1)`
/// by the splitting lemma and compare the signs of `lambda` and `c`.
fn corank_one_sign(f: &JetPoly, mu: u32) -> Result<Sign> {
    let n = f.order();
    if n != JetPoly::EXACT && n < mu + 1 {
        return Err(Error::TruncationInsufficient { order: n });
    }
    let a = f.coeff(2, 0);
    let b = f.coeff(1, 1);
    let c = f.coeff(0, 2);
    let (g, lambda) = if !a.is_zero() {
        let shift = -&b / (qi(2) * &a);
        let h1 = &JetPoly::u(n) + &JetPoly::v(n).scale(&shift);
        (f.compose(&h1, &JetPoly::v(n))?, a)
    } else {
        (f.swap_vars(), c)
    };
    // Solve dg/dX = 0 for X = phi(Y) by fixed-point iteration.
    let gx = g.derive(Var::U);
    let rest = &gx - &JetPoly::u(gx.order()).scale(&(qi(2) * &lambda));
    let inv = -(Scalar::one() / (qi(2) * &lambda));
    let mut phi = JetPoly::zero(n);
    for _ in 0..=mu + 1 {
        let next = rest.compose(&phi, &JetPoly::v(n))?.scale(&inv);
        // Only the dependence on Y matters.
        phi = JetPoly::from_terms(next.terms().filter(|t| t.0 == 0).map(|(i, j, c)| (i, j, c.clone())), n);
    }
    let restricted = g.compose(&phi, &JetPoly::v(n))?;
    let lowest = restricted.lowest_degree();
    if lowest != Some(mu + 1) {
        return Err(Error::Internal("splitting lemma disagrees with the Milnor number"));
    }
    let lead = restricted.coeff(0, mu + 1);
    if mu % 2 == 0 {
        Ok(Sign::Unsigned)
    } else {
        Ok(Sign::from_int(sign(&lambda) * sign(&lead)))
    }
}

fn classify_corank_two(f: &JetPoly, mu: u32) -> Result<SingularityClass> {
    let a = f.coeff(3, 0);
    let b = f.coeff(2, 1);
    let c = f.coeff(1, 2);
    let d = f.coeff(0, 3);
    if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
        return Ok(SingularityClass::NonSimple);
    }
    let disc = cubic_discriminant(&a, &b, &c, &d);
    if !disc.is_zero() {
        if mu != 4 {
            return Err(Error::Internal("nondegenerate cubic with Milnor number other than 4"));
        }
        let s = if disc.is_positive() { Sign::Minus } else { Sign::Plus };
        return Ok(SingularityClass::D(4, s));
    }
    let triple = (&b * &b - qi(3) * &a * &c).is_zero()
        && (&b * &c - qi(9) * &a * &d).is_zero()
        && (&c * &c - qi(3) * &b * &d).is_zero();
    if triple {
        return Ok(match mu {
            6 => SingularityClass::E6,
            7 => SingularityClass::E7,
            8 => SingularityClass::E8,
            _ => SingularityClass::NonSimple,
        });
    }
    if mu < 5 {
        return Err(Error::Internal("cubic with a double root but Milnor number below 5"));
    }
    if mu % 2 == 1 {
        return Ok(SingularityClass::D(mu, Sign::Unsigned));
    }
    let (simple, double) = split_double_root(&a, &b, &c, &d);
    let residual = hensel_residual(f, &simple, &double, mu)?;
    let inner = corank_one_sign(&residual, mu - 3)?;
    Ok(SingularityClass::D(mu, inner))
}

/// Discriminant of the binary cubic `a u^3 + b u^2 v + c u v^2 + d v^3`.
pub fn cubic_discriminant(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Scalar {
    b * b * c * c - qi(4) * a * c * c * c - qi(4) * b * b * b * d - qi(27) * a * a * d * d
        + qi(18) * a * b * c * d
}

/// Writes a cubic with an exactly double root as `M * L^2` with linear `M`, `L`,
/// each given as `(coefficient of u, coefficient of v)`.
fn split_double_root(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> ((Scalar, Scalar), (Scalar, Scalar)) {
    if a.is_zero() && b.is_zero() {
        // v^2 (c u + d v)
        return ((c.clone(), d.clone()), (Scalar::zero(), Scalar::one()));
    }
    if a.is_zero() {
        // v (b u^2 + c u v + d v^2): either the quadratic is a square, or v is double.
        if (c * c - qi(4) * b * d).is_zero() {
            let r = -c / (qi(2) * b);
            return ((Scalar::zero(), b.clone()), (Scalar::one(), -r));
        }
        unreachable!("a = 0 and b != 0 with a double root forces a square quadratic");
    }
    let p = UPoly::new(alloc::vec![d.clone(), c.clone(), b.clone(), a.clone()]);
    let g = p.gcd(&p.derivative());
    let r = -g.coeff(0) / g.coeff(1);
    let beta = b + qi(2) * &r * a;
    ((a.clone(), beta), (Scalar::one(), -r))
}

/// Lifts the tangent cone factorisation `M L^2` of `f` to `f = l * g` with
/// `l` tangent to `M` and `g` tangent to `L^2`; returns `g`.
fn hensel_residual(
    f: &JetPoly,
    simple: &(Scalar, Scalar),
    double: &(Scalar, Scalar),
    mu: u32,
) -> Result<JetPoly> {
    let n = if f.is_exact() { mu + 2 } else { f.order() };
    if n < mu {
        return Err(Error::TruncationInsufficient { order: n });
    }
    let lin = |p: &(Scalar, Scalar)| {
        JetPoly::from_terms([(1, 0, p.0.clone()), (0, 1, p.1.clone())], JetPoly::EXACT)
    };
    let m = lin(simple);
    let l = lin(double);
    let l2 = &l * &l;
    // Graded pieces: ell[i] of degree i, gee[j] of degree j.
    let mut ell: Vec<JetPoly> = alloc::vec![JetPoly::zero(JetPoly::EXACT), m.clone()];
    let mut gee: Vec<JetPoly> = alloc::vec![JetPoly::zero(JetPoly::EXACT); 2];
    gee.push(l2.clone());
    for e in 4..=n {
        let mut rhs = f.homogeneous(e).with_order(JetPoly::EXACT);
        for i in 2..e - 2 {
            let j = (e - i) as usize;
            let i = i as usize;
            if i < ell.len() && j < gee.len() {
                rhs = &rhs - &(&ell[i] * &gee[j]);
            }
        }
        // Unknowns: g_{e-1} (e coefficients) then l_{e-2} (e-1 coefficients).
        let rows = (e + 1) as usize;
        let cols = (e + e - 1) as usize;
        let mut mat = alloc::vec![alloc::vec![Scalar::zero(); cols]; rows];
        for k in 0..e {
            let basis = JetPoly::monomial(e - 1 - k, k, Scalar::one(), JetPoly::EXACT);
            let prod = &m * &basis;
            for (i, j, c) in prod.terms() {
                debug_assert_eq!(i + j, e);
                mat[j as usize][k as usize] += c;
            }
        }
        for k in 0..e - 1 {
            let basis = JetPoly::monomial(e - 2 - k, k, Scalar::one(), JetPoly::EXACT);
            let prod = &l2 * &basis;
            for (_, j, c) in prod.terms() {
                mat[j as usize][(e + k) as usize] += c;
            }
        }
        let target: Vec<Scalar> = (0..=e).map(|j| rhs.coeff(e - j, j)).collect();
        let sol = linalg::solve(&mat, &target).ok_or(Error::Internal("tangent cone factors not coprime"))?;
        let g_next = JetPoly::from_terms((0..e).map(|k| (e - 1 - k, k, sol[k as usize].clone())), JetPoly::EXACT);
        let l_next = JetPoly::from_terms(
            (0..e - 1).map(|k| (e - 2 - k, k, sol[(e + k) as usize].clone())),
            JetPoly::EXACT,
        );
        gee.push(g_next);
        if ell.len() == (e - 2) as usize {
            ell.push(l_next);
        } else {
            ell[(e - 2) as usize] = l_next;
        }
    }
    let mut g = JetPoly::zero(n - 1);
    for piece in &gee {
        g = &g + &piece.with_order(n - 1);
    }
    Ok(g)
}

/// Positive weights `(r1, r2)` with `r1 i + r2 j = 1` on every exponent of
/// `f`, if they exist.
pub fn quasihomogeneous_weights(f: &JetPoly) -> Option<(Scalar, Scalar)> {
    let exps: Vec<(u32, u32)> = f.terms().map(|(i, j, _)| (i, j)).collect();
    if exps.is_empty() {
        return None;
    }
    if exps.len() == 1 {
        let (i, j) = exps[0];
        return Some((q(1, (i + j) as i64), q(1, (i + j) as i64)));
    }
    let mat: linalg::Matrix = exps.iter().map(|&(i, j)| alloc::vec![qi(i as i64), qi(j as i64)]).collect();
    let rhs: Vec<Scalar> = exps.iter().map(|_| Scalar::one()).collect();
    let sol = linalg::solve(&mat, &rhs)?;
    if linalg::rank(&mat) < 2 {
        return None;
    }
    let (r1, r2) = (sol[0].clone(), sol[1].clone());
    (r1.is_positive() && r2.is_positive()).then_some((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(terms: &[(u32, u32, i64)]) -> JetPoly {
        JetPoly::from_ints(terms, 7)
    }

    fn im(f: &JetPoly, g: &JetPoly) -> Mult {
        intersection_multiplicity(f, g).unwrap().value
    }

    #[test]
    fn transverse_lines() {
        assert_eq!(im(&JetPoly::u(7), &JetPoly::v(7)), Mult::Finite(1));
    }

    #[test]
    fn tangent_parabola() {
        assert_eq!(im(&j(&[(0, 1, 1)]), &j(&[(0, 1, 1), (2, 0, -1)])), Mult::Finite(2));
    }

    #[test]
    fn common_component_is_infinite() {
        let f = JetPoly::from_ints(&[(1, 0, 1), (1, 1, 1)], JetPoly::EXACT);
        let g = JetPoly::from_ints(&[(1, 0, 2), (2, 0, 1)], JetPoly::EXACT);
        assert_eq!(im(&f, &g), Mult::Infinite);
        // Truncated, the common factor might be broken by higher terms.
        assert_eq!(
            intersection_multiplicity(&f.truncate(7), &g.truncate(7)),
            Err(Error::TruncationInsufficient { order: 7 })
        );
    }

    #[test]
    fn not_at_origin() {
        assert_eq!(
            intersection_multiplicity(&j(&[(0, 0, 1)]), &JetPoly::u(7)),
            Err(Error::NotAtOrigin)
        );
    }

    #[test]
    fn uncertified_values_are_refused() {
        // m^5 is the first power inside (x^3, y^3).
        let f = JetPoly::from_ints(&[(3, 0, 1)], 4);
        let g = JetPoly::from_ints(&[(0, 3, 1)], 4);
        assert_eq!(
            intersection_multiplicity(&f, &g),
            Err(Error::TruncationInsufficient { order: 4 })
        );
        let f = JetPoly::from_ints(&[(3, 0, 1)], JetPoly::EXACT);
        let g = JetPoly::from_ints(&[(0, 3, 1)], JetPoly::EXACT);
        assert_eq!(intersection_multiplicity(&f, &g).unwrap().value, Mult::Finite(9));
    }

    #[test]
    fn stabilization_order_is_recorded() {
        let f = j(&[(0, 1, 1)]);
        let g = j(&[(0, 1, 1), (2, 0, -1)]);
        assert_eq!(intersection_multiplicity(&f, &g).unwrap().stabilized_at, 2);
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&j(&[(2, 0, 1), (0, 2, 1)])).unwrap().value, Mult::Finite(1));
        // x^2 y - y^4 is D5
        assert_eq!(milnor_number(&j(&[(2, 1, 1), (0, 4, -1)])).unwrap().value, Mult::Finite(5));
        assert_eq!(milnor_number(&j(&[(1, 0, 1)])).unwrap().value, Mult::Finite(0));
    }

    #[test]
    fn hessian_corank() {
        assert_eq!(corank_and_hessian(&j(&[(2, 0, 1), (0, 2, -1)])), (0, -1));
        assert_eq!(corank_and_hessian(&j(&[(2, 0, 1), (0, 3, 1)])), (1, 0));
        assert_eq!(corank_and_hessian(&j(&[(3, 0, 1), (0, 3, 1)])), (2, 0));
    }

    #[test]
    fn classification_examples() {
        use SingularityClass::*;
        let c = |t: &[(u32, u32, i64)]| classify_singularity(&j(t)).unwrap();
        assert_eq!(c(&[(1, 0, 1)]), Regular);
        assert_eq!(c(&[(2, 0, 1), (0, 2, 1)]), A(1, Sign::Plus));
        assert_eq!(c(&[(2, 0, 1), (0, 2, -1)]), A(1, Sign::Minus));
        assert_eq!(c(&[(2, 0, 1), (0, 4, 1)]), A(3, Sign::Plus));
        assert_eq!(c(&[(2, 0, 1), (0, 4, -1)]), A(3, Sign::Minus));
        assert_eq!(c(&[(2, 0, 1), (0, 3, 1)]), A(2, Sign::Unsigned));
        assert_eq!(c(&[(2, 1, 1), (0, 3, 1)]), D(4, Sign::Plus));
        assert_eq!(c(&[(2, 1, 1), (0, 3, -1)]), D(4, Sign::Minus));
        assert_eq!(c(&[(2, 1, 1), (0, 4, 1)]), D(5, Sign::Unsigned));
        assert_eq!(c(&[(2, 1, 1), (0, 5, 1)]), D(6, Sign::Plus));
        assert_eq!(c(&[(2, 1, 1), (0, 5, -1)]), D(6, Sign::Minus));
        assert_eq!(c(&[(3, 0, 1), (0, 4, 1)]), E6);
        assert_eq!(c(&[(3, 0, 1), (1, 3, 1)]), E7);
        let x4y4 = JetPoly::from_ints(&[(4, 0, 1), (0, 4, 1)], JetPoly::EXACT);
        assert_eq!(classify_singularity(&x4y4).unwrap(), NonSimple);
        assert_eq!(classify_singularity(&x4y4.truncate(7)).unwrap(), NonSimple);
        let x2 = JetPoly::from_ints(&[(2, 0, 1)], JetPoly::EXACT);
        assert_eq!(classify_singularity(&x2).unwrap(), Degenerate);
        assert_eq!(
            classify_singularity(&x2.truncate(7)),
            Err(Error::TruncationInsufficient { order: 6 })
        );
    }

    #[test]
    fn sign_survives_a_shear() {
        // (x + y)^2 + y^4 in disguise
        let f = j(&[(2, 0, 1), (1, 1, 2), (0, 2, 1), (0, 4, 1)]);
        assert_eq!(classify_singularity(&f).unwrap(), SingularityClass::A(3, Sign::Plus));
        let g = j(&[(2, 0, -1), (1, 1, -2), (0, 2, -1), (0, 4, 1)]);
        assert_eq!(classify_singularity(&g).unwrap(), SingularityClass::A(3, Sign::Minus));
    }

    #[test]
    fn e8_needs_exact_or_high_order() {
        let f = JetPoly::from_ints(&[(3, 0, 1), (0, 5, 1)], JetPoly::EXACT);
        assert_eq!(classify_singularity(&f).unwrap(), SingularityClass::E8);
    }

    #[test]
    fn weights() {
        assert_eq!(quasihomogeneous_weights(&j(&[(2, 0, 1), (0, 3, 1)])), Some((q(1, 2), q(1, 3))));
        assert_eq!(quasihomogeneous_weights(&j(&[(2, 0, 1), (1, 2, 1)])), Some((q(1, 2), q(1, 4))));
        assert_eq!(quasihomogeneous_weights(&j(&[(2, 0, 1), (3, 0, 1), (0, 2, 1)])), None);
    }
}
