use proptest::prelude::*;
use umbilic_core::jet::{qi, JetPoly};
use umbilic_core::local::*;

fn j(terms: &[(u32, u32, i64)]) -> JetPoly {
    JetPoly::from_ints(terms, JetPoly::EXACT)
}

fn im(f: &JetPoly, g: &JetPoly) -> Mult {
    intersection_multiplicity(f, g).unwrap().value
}

#[test]
fn monomial_powers() {
    for a in 1..=5u32 {
        for b in 1..=5u32 {
            let (f, g) = (j(&[(a, 0, 1)]), j(&[(0, b, 1)]));
            assert_eq!(im(&f, &g), Mult::Finite((a * b) as u64), "x^{} y^{}", a, b);
            assert_eq!(fulton(&f, &g), Mult::Finite((a * b) as u64));
        }
    }
}

#[test]
fn ade_milnor_numbers() {
    let mut cases = Vec::new();
    for k in 1..=8u32 {
        cases.push((j(&[(k + 1, 0, 1), (0, 2, 1)]), k));
    }
    for k in 4..=8u32 {
        cases.push((j(&[(2, 1, 1), (0, k - 1, 1)]), k));
    }
    cases.push((j(&[(3, 0, 1), (0, 4, 1)]), 6));
    cases.push((j(&[(3, 0, 1), (1, 3, 1)]), 7));
    cases.push((j(&[(3, 0, 1), (0, 5, 1)]), 8));
    for (f, mu) in cases {
        assert_eq!(milnor_number(&f).unwrap().value, Mult::Finite(mu as u64), "{}", f);
        let class = classify_singularity(&f).unwrap();
        assert_eq!(class.milnor(), Some(mu as u64), "{} classified as {}", f, class);
    }
    assert_eq!(classify_singularity(&j(&[(3, 0, 1), (0, 4, 1)])).unwrap(), SingularityClass::E6);
    assert_eq!(classify_singularity(&j(&[(3, 0, 1), (1, 3, 1)])).unwrap(), SingularityClass::E7);
    assert_eq!(classify_singularity(&j(&[(3, 0, 1), (0, 5, 1)])).unwrap(), SingularityClass::E8);
}

/// A germ through the origin: `c0 u^a + c1 v^b` plus small terms of degree
/// two to four.
fn germ() -> impl Strategy<Value = JetPoly> {
    (1u32..=3, 1u32..=3, -2i64..=2, -2i64..=2, prop::collection::vec((0u32..=4, 0u32..=4, -2i64..=2), 0..4)).prop_map(
        |(a, b, c0, c1, rest)| {
            let mut p = j(&[(a, 0, if c0 == 0 { 1 } else { c0 }), (0, b, c1)]);
            for (i, k, c) in rest {
                if (2..=4).contains(&(i + k)) {
                    p.add_term(i, k, qi(c));
                }
            }
            p
        },
    )
}

/// An origin-preserving substitution with invertible linear part.
fn substitution() -> impl Strategy<Value = (JetPoly, JetPoly)> {
    ((-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2), (-1i64..=1, -1i64..=1, -1i64..=1))
        .prop_filter("invertible", |((a, b, c, d), _)| a * d - b * c != 0)
        .prop_map(|((a, b, c, d), (p, q, r))| {
            (j(&[(1, 0, a), (0, 1, b), (2, 0, p), (1, 1, q)]), j(&[(1, 0, c), (0, 1, d), (0, 2, r)]))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn colength_matches_fulton_and_ideal_moves(f in germ(), g in germ(), h in germ()) {
        let m = im(&f, &g);
        prop_assert_eq!(m, fulton(&f, &g));
        prop_assert_eq!(m, im(&g, &f));
        // same ideal, other generators
        prop_assert_eq!(m, im(&f, &(&g + &(&h * &f))));
        let unit = &JetPoly::one(JetPoly::EXACT) + &h;
        prop_assert_eq!(m, im(&(&unit * &f), &g));
    }

    #[test]
    fn reparametrisation_keeps_multiplicity(f in germ(), g in germ(), (h1, h2) in substitution()) {
        let (f2, g2) = (f.compose(&h1, &h2).unwrap(), g.compose(&h1, &h2).unwrap());
        prop_assert_eq!(im(&f, &g), im(&f2, &g2));
        prop_assert_eq!(milnor_number(&f).unwrap().value, milnor_number(&f2).unwrap().value);
    }
}
