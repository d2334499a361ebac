//! Greatest common divisors of bivariate polynomials, viewed as polynomials
//! in `v` with coefficients in `Q[u]`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::jet::{JetPoly, Scalar};
use crate::upoly::{interpolate, resultant_formal, UPoly};

/// Coefficients in `v`, lowest first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bivar(Vec<UPoly>);

impl Bivar {
    fn from_jet(p: &JetPoly) -> Self {
        Bivar(p.coeffs_in_v()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Monic gcd of the coefficients.
    fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// Divides out the content and clears denominators.
    fn primitive_part(&self) -> Bivar {
        let c = self.content();
        let parts: Vec<UPoly> = self.0.iter().map(|p| p.div_rem(&c).0).collect();
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for p in &parts {
            for a in p.coeffs() {
                den = den.lcm(a.denom());
            }
        }
        for p in &parts {
            for a in p.coeffs() {
                num = num.gcd(&(a * Scalar::from_integer(den.clone())).to_integer());
            }
        }
        let s = Scalar::new(den, num);
        Bivar(parts.iter().map(|p| p.scale(&s)).collect()).trimmed()
    }

    /// Pseudo-remainder with respect to `v`.
    fn prem(&self, b: &Bivar) -> Bivar {
        let n = b.degree();
        let lc = b.0[n].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= n {
            let d = r.degree();
            let lr = r.0[d].clone();
            let mut next: Vec<UPoly> = r.0.iter().map(|c| c * &lc).collect();
            for (i, c) in b.0.iter().enumerate() {
                next[d - n + i] = &next[d - n + i] - &(c * &lr);
            }
            r = Bivar(next).trimmed();
        }
        r
    }

    fn lead(&self) -> &UPoly {
        &self.0[self.degree()]
    }

    /// Specialisation `u = u0`, as a polynomial in `v`.
    fn at_u(&self, u0: &Scalar) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c.eval(u0)).collect())
    }

    fn u_degree(&self) -> usize {
        self.0.iter().filter_map(UPoly::degree).max().unwrap_or(0)
    }

    fn at_origin(&self) -> Scalar {
        self.0.first().map_or_else(Scalar::zero, |c| c.coeff(0))
    }
}

/// Whether `f` and `g` share a nonconstant factor vanishing at the origin.
pub(crate) fn common_component_through_origin(f: &JetPoly, g: &JetPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return true;
    }
    let (a, b) = (Bivar::from_jet(f), Bivar::from_jet(g));
    let content = a.content().gcd(&b.content());
    if content.degree().unwrap_or(0) > 0 && content.coeff(0).is_zero() {
        return true;
    }
    if a.degree() == 0 || b.degree() == 0 {
        return false;
    }
    if let Some(h) = gcd_by_specialisation(&a, &b) {
        return h.degree() > 0 && h.at_origin().is_zero();
    }
    prs_common_component(a, b)
}

/// Resultant of `f` and `g` with respect to `v`, a polynomial in `u`, built
/// by interpolating resultants of specialisations at the formal `v`-degrees.
pub(crate) fn resultant_in_v(f: &JetPoly, g: &JetPoly) -> UPoly {
    let (a, b) = (Bivar::from_jet(f), Bivar::from_jet(g));
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    let (da, db) = (a.degree(), b.degree());
    let bound = a.u_degree() * db + b.u_degree() * da;
    let xs: Vec<Scalar> = (0..=bound as i64).map(|k| Scalar::from_integer(BigInt::from(k))).collect();
    let ys: Vec<Scalar> = xs.iter().map(|x| resultant_formal(&a.at_u(x), da, &b.at_u(x), db)).collect();
    interpolate(&xs, &ys)
}

/// Sample points `0, 1, -1, 2, -2, ...` where neither leading coefficient in `v` vanishes.
fn good_points<'a>(a: &'a Bivar, b: &'a Bivar) -> impl Iterator<Item = Scalar> + 'a {
    (0i64..)
        .map(|k| Scalar::from_integer(if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 }.into()))
        .filter(move |x| !a.lead().eval(x).is_zero() && !b.lead().eval(x).is_zero())
}

/// The gcd in `v`, up to a factor in `u` alone, rebuilt from
/// its values on lines `u = u0` and checked by pseudo-division. `None` when
/// the check fails (all sampled lines unlucky).
fn gcd_by_specialisation(a: &Bivar, b: &Bivar) -> Option<Bivar> {
    let d = good_points(a, b).take(3).map(|x| a.at_u(&x).gcd(&b.at_u(&x)).degree().unwrap_or(0)).min()?;
    if d == 0 {
        return Some(Bivar(alloc::vec![UPoly::constant(Scalar::one())]));
    }
    // lc(a)(u0) * monic gcd(u0) equals the specialisation of lc(a / h) * h,
    // whose u-degree is at most that of a.
    let need = a.u_degree() + 1;
    let mut xs = Vec::with_capacity(need);
    let mut rows: Vec<Vec<Scalar>> = (0..=d).map(|_| Vec::with_capacity(need)).collect();
    for x in good_points(a, b).take(4 * need + 8) {
        let g = a.at_u(&x).gcd(&b.at_u(&x));
        if g.degree() != Some(d) {
            continue;
        }
        let g = g.monic().scale(&a.lead().eval(&x));
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(g.coeff(i));
        }
        xs.push(x);
        if xs.len() == need {
            break;
        }
    }
    if xs.len() < need {
        return None;
    }
    let h = Bivar(rows.iter().map(|ys| interpolate(&xs, ys)).collect()).trimmed().primitive_part();
    (h.degree() == d && a.prem(&h).is_zero() && b.prem(&h).is_zero()).then_some(h)
}

fn prs_common_component(a: Bivar, b: Bivar) -> bool {
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    if b.degree() == 0 {
        return false;
    }
    loop {
        let r = a.prem(&b);
        if r.is_zero() {
            return b.at_origin().is_zero();
        }
        if r.degree() == 0 {
            return false;
        }
        a = b;
        b = r.primitive_part();
    }
}
