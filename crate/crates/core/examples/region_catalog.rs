//! Regenerates `fixtures/region_catalog.txt`.
//!
//! Samples a rational grid in each catalogued plane, groups open points by
//! region id, checks that every region shows a single configuration, and
//! prints the simplest sample of each region.
//!
//!     cargo run --release -p umbilic-core --example region_catalog > crates/core/fixtures/region_catalog.txt

use std::collections::BTreeMap;

use umbilic_core::interval::RealValue;
use umbilic_core::jet::q;
use umbilic_core::strata::{config_at, stratify, Plane};
use umbilic_core::Scalar;

fn height(x: &Scalar) -> i64 {
    let n: i64 = x.numer().try_into().unwrap();
    let d: i64 = x.denom().try_into().unwrap();
    n.abs() + d
}

fn main() {
    println!("# plane region_id s t config");
    println!("# generated by examples/region_catalog.rs");
    for plane in [Plane::Beta, Plane::TimelikeI] {
        let mut seen: BTreeMap<u32, (Scalar, Scalar, String)> = BTreeMap::new();
        let mut clash = false;
        for den in [1i64, 2, 4] {
            for a in -12 * den..=12 * den {
                for b in -12 * den..=12 * den {
                    let (s, t) = (q(a, den), q(b, den));
                    let label = stratify(plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone())).unwrap();
                    if !label.on_curves.is_empty() {
                        continue;
                    }
                    let config = config_at(plane, &s, &t).to_string();
                    match seen.get(&label.region_id) {
                        Some((s0, t0, c0)) if *c0 != config => {
                            eprintln!("{} region {}: {} at ({}, {}) but {} at ({}, {})", plane, label.region_id, c0, s0, t0, config, s, t);
                            clash = true;
                        }
                        Some((s0, t0, _)) if height(s0) + height(t0) <= height(&s) + height(&t) => {}
                        _ => {
                            seen.insert(label.region_id, (s, t, config));
                        }
                    }
                }
            }
        }
        assert!(!clash, "region ids do not determine the configuration");
        for (id, (s, t, c)) in seen {
            println!("{} {} {} {} {}", plane, id, s, t, c);
        }
    }
}
