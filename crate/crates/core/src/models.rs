//! Concrete surface germs with known umbilic invariants.
//!
//! Names:
//!
//! - `D1_2`, `D1_23`, `D2_1`, `D2_2p`, `D2_3`, `D2_h_a`, `D2_h_b` (`D2_h` is
//!   `D2_h_a`): codimension one and two umbilics of Euclidean graphs;
//! - `crosscap`: the cross-cap `(u, v^2, uv)`;
//! - `spacelike_A<k>`, `timelike_A<k>`, `lightlike_A<k>` for `k >= 1`: the
//!   ladders of multiplicity `k`;
//! - `D<k>+`, `D<k>-` for even `k >= 4` and `D<k>` for odd `k >= 5`: timelike
//!   umbilics whose LPL has a `D_k` singularity;
//! - `E7`: timelike umbilic with an `E7` LPL.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jet::{q, qi, JetPoly, Scalar};
use crate::local::{Mult, Sign, SingularityClass};
use crate::surface::{Ambient, MongePatch, Parametrisation};
use crate::umbilic::{lpl_class_multiplicity, CausalType};

/// The germ of a model: a graph, or a parametrisation when the germ is not
/// an immersion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSurface {
    Graph(MongePatch),
    Parametrised(Parametrisation),
}

impl ModelSurface {
    pub fn parametrisation(&self) -> Parametrisation {
        match self {
            ModelSurface::Graph(p) => p.parametrisation(),
            ModelSurface::Parametrised(x) => x.clone(),
        }
    }

    pub fn patch(&self) -> Option<&MongePatch> {
        match self {
            ModelSurface::Graph(p) => Some(p),
            ModelSurface::Parametrised(_) => None,
        }
    }
}

/// Expected values; `None` means not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub causal_type: Option<CausalType>,
    pub m_u: Option<u64>,
    pub m_omega: Option<Mult>,
    pub discriminant_class: Option<SingularityClass>,
    pub ld_class: Option<SingularityClass>,
    /// Multiplicities allowed by the LPL singularity class.
    pub lpl_candidates: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    pub surface: ModelSurface,
    pub expected: Expected,
}

/// Names of the fixed models plus small members of each ladder.
pub fn model_names() -> Vec<String> {
    let mut out: Vec<String> =
        ["D1_2", "D1_23", "D2_1", "D2_2p", "D2_3", "D2_h_a", "D2_h_b", "crosscap"].iter().map(|s| s.to_string()).collect();
    for k in 1..=4 {
        out.push(format!("spacelike_A{}", k));
    }
    for k in 1..=4 {
        out.push(format!("timelike_A{}", k));
    }
    for k in 1..=3 {
        out.push(format!("lightlike_A{}", k));
    }
    out.extend(["D4+", "D4-", "D5", "D6+", "D6-", "E7"].iter().map(|s| s.to_string()));
    out
}

pub fn model_library(name: &str) -> Result<Model> {
    let unknown = || Error::UnknownModel(name.to_string());
    let (surface, expected) = match name {
        "D1_2" => garcia_soto(Coeffs { a: 2, b: 1, c: 1, ..Coeffs::default() }, 1),
        "D1_23" => garcia_soto(Coeffs { a: 1, b: 1, ..Coeffs::default() }, 2),
        "D2_1" => garcia_soto(Coeffs { a: 2, b: 1, ..Coeffs::default() }, 1),
        "D2_2p" => garcia_soto(Coeffs { a: 1, b: 1, d40: 2, d50: 20, ..Coeffs::default() }, 3),
        "D2_3" => garcia_soto(Coeffs { a: 1, b: 1, d40: 2, ..Coeffs::default() }, 3),
        "D2_h" | "D2_h_a" => garcia_soto(Coeffs { c: 1, d31: 1, ..Coeffs::default() }, 2),
        "D2_h_b" => garcia_soto(Coeffs { a: 1, d13: 1, ..Coeffs::default() }, 2),
        "crosscap" => crosscap(),
        "E7" => e7(),
        _ => {
            if let Some(k) = ladder_index(name, "spacelike_A") {
                spacelike_ladder(k)
            } else if let Some(k) = ladder_index(name, "timelike_A") {
                timelike_ladder(k)
            } else if let Some(k) = ladder_index(name, "lightlike_A") {
                lightlike_ladder(k)
            } else {
                let (k, sign) = parse_d(name).ok_or_else(unknown)?;
                d_model(k, sign)
            }
        }
    };
    Ok(Model { name: name.to_string(), surface, expected })
}

fn ladder_index(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&k| (1..=12).contains(&k))
}

fn parse_d(name: &str) -> Option<(u32, Sign)> {
    let rest = name.strip_prefix('D')?;
    let (digits, sign) = match rest.chars().last()? {
        '+' => (&rest[..rest.len() - 1], Sign::Plus),
        '-' => (&rest[..rest.len() - 1], Sign::Minus),
        _ => (rest, Sign::Plus),
    };
    let k: u32 = digits.parse().ok()?;
    let signed = k % 2 == 0;
    let explicit = digits.len() != rest.len();
    ((4..=12).contains(&k) && signed == explicit && !(k == 4 && !signed)).then_some((k, sign))
}

fn poly(terms: &[(u32, u32, Scalar)]) -> JetPoly {
    JetPoly::from_terms(terms.iter().cloned(), JetPoly::EXACT)
}

/// Coefficients of `f = (x^2 + y^2)/2 + a x^3/6 + b x y^2/2 + c y^3/6 +
/// d40 x^4/24 + d31 x^3 y/6 + d22 x^2 y^2/4 + d13 x y^3/6 + d50 x^5/120`.
#[derive(Clone, Copy, Default)]
struct Coeffs {
    a: i64,
    b: i64,
    c: i64,
    d40: i64,
    d31: i64,
    d22: i64,
    d13: i64,
    d50: i64,
}

fn garcia_soto(k: Coeffs, m_u: u64) -> (ModelSurface, Expected) {
    let f = poly(&[
        (2, 0, q(1, 2)),
        (0, 2, q(1, 2)),
        (3, 0, q(k.a, 6)),
        (1, 2, q(k.b, 2)),
        (0, 3, q(k.c, 6)),
        (4, 0, q(k.d40, 24)),
        (3, 1, q(k.d31, 6)),
        (2, 2, q(k.d22, 4)),
        (1, 3, q(k.d13, 6)),
        (5, 0, q(k.d50, 120)),
    ]);
    let expected = Expected { causal_type: Some(CausalType::Spacelike), m_u: Some(m_u), ..Expected::default() };
    (ModelSurface::Graph(MongePatch::euclidean(f)), expected)
}

fn crosscap() -> (ModelSurface, Expected) {
    let e = JetPoly::EXACT;
    let x = Parametrisation::new(
        Ambient::Minkowski,
        [JetPoly::u(e), JetPoly::from_ints(&[(0, 2, 1)], e), JetPoly::from_ints(&[(1, 1, 1)], e)],
    );
    // The causal type of the regular-point classifier means nothing here.
    (ModelSurface::Parametrised(x), Expected { m_u: Some(1), ..Expected::default() })
}

/// `z = x^3 - x y^(k+1)` in Minkowski space: discriminant `A_(2k-1)+`.
fn spacelike_ladder(k: u32) -> (ModelSurface, Expected) {
    let f = poly(&[(3, 0, qi(1)), (1, k + 1, qi(-1))]);
    let expected = Expected {
        causal_type: Some(CausalType::Spacelike),
        m_u: Some(k as u64),
        m_omega: Some(Mult::Finite(3 * k as u64)),
        discriminant_class: Some(SingularityClass::A(2 * k - 1, Sign::Plus)),
        ..Expected::default()
    };
    (ModelSurface::Graph(MongePatch::minkowski_z(f)), expected)
}

/// `y = x^3 + x z^(k+1)`: LPL `A_(2k-1)-`.
fn timelike_ladder(k: u32) -> (ModelSurface, Expected) {
    let f = poly(&[(3, 0, qi(1)), (1, k + 1, qi(1))]);
    let class = SingularityClass::A(2 * k - 1, Sign::Minus);
    let expected = Expected {
        causal_type: Some(CausalType::Timelike),
        m_u: Some(k as u64),
        m_omega: Some(Mult::Finite(3 * k as u64)),
        lpl_candidates: lpl_class_multiplicity(&class),
        discriminant_class: Some(class),
        ..Expected::default()
    };
    (ModelSurface::Graph(MongePatch::minkowski_y(f)), expected)
}

/// `z = 3x/5 + 4y/5 + x^3/3 + y^(k+2)/(k+2)`: LD `A_k`.
fn lightlike_ladder(k: u32) -> (ModelSurface, Expected) {
    let f = poly(&[(1, 0, q(3, 5)), (0, 1, q(4, 5)), (3, 0, q(1, 3)), (0, k + 2, q(1, k as i64 + 2))]);
    let ld = if k % 2 == 1 { SingularityClass::A(k, Sign::Plus) } else { SingularityClass::A(k, Sign::Unsigned) };
    let expected = Expected {
        causal_type: Some(CausalType::Lightlike),
        m_u: Some(k as u64),
        m_omega: Some(Mult::Finite(4 * k as u64 + 1)),
        ld_class: Some(ld),
        ..Expected::default()
    };
    (ModelSurface::Graph(MongePatch::minkowski_z(f)), expected)
}

/// `y = (x^2 - z^2) + (x - z)(x + z)^2 + e (x - z)^k`. For even `k` the sign
/// `e = +1` gives `D_k-` (three real branches) and `e = -1` gives `D_k+`.
fn d_model(k: u32, sign: Sign) -> (ModelSurface, Expected) {
    let e = JetPoly::EXACT;
    let l = JetPoly::from_ints(&[(1, 0, 1), (0, 1, -1)], e);
    let r = JetPoly::from_ints(&[(1, 0, 1), (0, 1, 1)], e);
    let eps = if sign == Sign::Plus && k % 2 == 0 { qi(-1) } else { qi(1) };
    let f = &(&(&l * &r) + &(&l * &r.pow(2))) + &l.pow(k).scale(&eps);
    let class = SingularityClass::D(k, if k % 2 == 0 { sign } else { Sign::Unsigned });
    let expected = Expected {
        causal_type: Some(CausalType::Timelike),
        m_u: Some(2),
        m_omega: Some(Mult::Infinite),
        lpl_candidates: lpl_class_multiplicity(&class),
        discriminant_class: Some(class),
        ..Expected::default()
    };
    (ModelSurface::Graph(MongePatch::minkowski_y(f)), expected)
}

/// `y = (x^2 - z^2) - (x - z)^2 (x + z) + (x - z)^2 (x + z)^2 - (x + z)^4`.
fn e7() -> (ModelSurface, Expected) {
    let e = JetPoly::EXACT;
    let l = JetPoly::from_ints(&[(1, 0, 1), (0, 1, -1)], e);
    let r = JetPoly::from_ints(&[(1, 0, 1), (0, 1, 1)], e);
    let f = &(&(&(&l * &r) - &(&l.pow(2) * &r)) + &(&l.pow(2) * &r.pow(2))) - &r.pow(4);
    let expected = Expected {
        causal_type: Some(CausalType::Timelike),
        m_u: Some(3),
        m_omega: Some(Mult::Infinite),
        discriminant_class: Some(SingularityClass::E7),
        lpl_candidates: alloc::vec![3],
        ..Expected::default()
    };
    (ModelSurface::Graph(MongePatch::minkowski_y(f)), expected)
}
