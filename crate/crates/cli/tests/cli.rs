use std::process::Command;

use proptest::prelude::*;
use umbilic_cli::spec::{parse, SurfaceSpec};
use umbilic_cli::{exact_number, run};
use umbilic_core::models::{model_library, model_names, ModelSurface};
use umbilic_core::surface::{Ambient, GraphAxis, MongePatch};
use umbilic_core::{q, JetPoly};

fn umbilic(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["umbilic"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_spec(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn patch() -> impl Strategy<Value = MongePatch> {
    let term = (0u32..=5, 0u32..=5, -9i64..=9, 1i64..=12);
    (any::<bool>(), any::<bool>(), prop::collection::vec(term, 0..10), 2u32..=9).prop_map(|(mink, y, terms, order)| {
        let mut f = JetPoly::zero(JetPoly::EXACT);
        for (i, j, n, d) in terms {
            if i + j >= 1 && i + j <= order {
                f.add_term(i, j, q(n, d));
            }
        }
        let ambient = if mink { Ambient::Minkowski } else { Ambient::Euclidean };
        let axis = if y { GraphAxis::Y } else { GraphAxis::Z };
        MongePatch::new(ambient, axis, f).unwrap().with_order(order)
    })
}

proptest! {
    #[test]
    fn spec_round_trip(p in patch()) {
        let spec = SurfaceSpec::from_patch(Some("p".into()), &p);
        let text = spec.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.patch().unwrap(), p.clone());
        prop_assert_eq!(back.to_string(), text.clone());
        prop_assert_eq!(parse(&back.to_string()).unwrap().patch().unwrap(), p);
        // coefficients stay exact rationals
        prop_assert!(!text.contains('.'));
    }
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("ambient = minkowski\ngraph = z\nf[1,2] = 1/0\n", 3, 10, "zero denominator in f[1,2] = 1/0"),
        ("ambient = minkowski\ngraph = z\nf[2,0] = 0.5\n", 3, 10, "decimal"),
        ("ambient = minkowski\ngraph = z\norder = 3\nf[2,2] = 1\n", 4, 1, "degree 4 above order 3"),
        ("ambient = minkowski\ngraph = z\nf[2,0] = 1\n  f[2, 0] = 2\n", 4, 3, "duplicate"),
        ("ambient = lorentz\n", 1, 11, "ambient must be"),
        ("ambient = euclidean\ngraph = z\nf[0,0] = 1\n", 3, 1, "origin"),
        ("ambient = euclidean\ngraph = z\nf[1,1]\n", 3, 1, "key = value"),
        ("ambient = euclidean\ngraph = z\nperturb[1,1] = 1/64, x\n", 3, 22, "malformed"),
        ("ambient = euclidean\nf[1,1] = 1\nx0[1,0] = 1\n", 3, 1, "cannot mix"),
    ];
    for (text, line, column, needle) in cases {
        let e = parse(text).unwrap_err();
        assert_eq!((e.line, e.column), (line, column), "{:?}: {}", text, e);
        assert!(e.message.contains(needle), "{:?}: {}", text, e);
    }
}

#[test]
fn comments_and_defaults() {
    let s = parse("# header\nambient = minkowski   # metric\ngraph = y\n\nf[3,0] = 1\nf[1,2] = +2/4\n").unwrap();
    assert_eq!(s.order, 7);
    let p = s.patch().unwrap();
    assert_eq!(p.f(), &JetPoly::from_terms([(3, 0, q(1, 1)), (1, 2, q(1, 2))], JetPoly::EXACT));
    assert_eq!(p.axis, GraphAxis::Y);
}

#[test]
fn bundled_models_match_the_library() {
    let dir = umbilic_cli::models_dir();
    for name in model_names() {
        let text = std::fs::read_to_string(dir.join(format!("{}.surf", name))).unwrap();
        let spec = parse(&text).unwrap();
        let m = model_library(&name).unwrap();
        match &m.surface {
            ModelSurface::Graph(p) => assert_eq!(spec.patch().as_ref(), Some(p), "{}", name),
            ModelSurface::Parametrised(x) => assert_eq!(&spec.parametrisation(), x, "{}", name),
        }
        // files are canonical apart from comments
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{}\n", l)).collect();
        assert_eq!(spec.to_string(), body, "{}", name);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(&dir, "bad.surf", "ambient = minkowski\ngraph = z\nf[1,2] = 1/0\n");
    let (code, _, err) = umbilic(&["analyze", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 10") && err.contains("f[1,2] = 1/0"), "{}", err);

    let flat = write_spec(&dir, "flat.surf", "ambient = minkowski\ngraph = z\nf[1,1] = 1\n");
    assert_eq!(umbilic(&["analyze", &flat]).0, 3);
    assert_eq!(umbilic(&["analyze", "no_such_model"]).0, 2);
    assert_eq!(umbilic(&["frobnicate"]).0, 2);
    assert_eq!(umbilic(&["deform", "crosscap"]).0, 3);
    assert_eq!(umbilic(&["stratify", "gamma"]).0, 2);
    assert_eq!(umbilic(&["--help"]).0, 0);
}

#[test]
fn analyze_reports_panel_and_keeps_order() {
    let (code, out, _) = umbilic(&["analyze", "spacelike_A2", "D1_23", "timelike_3s"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = out.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(names, ["spacelike_A2", "D1_23", "timelike_3s"]);
    assert!(out.contains("m_u: 2"));
    assert!(out.contains("panel: m_u=1 yes, morse yes, d4 no, versal no, transverse yes"));
    assert_eq!(out.matches("panel agrees").count(), 3);

    let (_, out, _) = umbilic(&["--format", "records", "analyze", "D1_23", "crosscap"]);
    let recs: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs[0]["m_u"]["value"], "2");
    assert_eq!(recs[0]["panel"]["d4"], true);
    assert_eq!(recs[1]["name"], "crosscap");
    assert!(recs[1]["panel"].is_null());
}

#[test]
fn deform_with_a_family_from_the_spec() {
    let dir = tempfile::tempdir().unwrap();
    let text = "name = split\nambient = minkowski\ngraph = z\nf[3,0] = 1\nf[1,3] = -1\nradius = 1/8\nperturb[1,1] = -1/64, 1/64\n";
    let path = write_spec(&dir, "split.surf", text);
    let out_file = dir.path().join("report.txt");
    let (code, stdout, _) = umbilic(&["deform", &path, "--out", out_file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let report = std::fs::read_to_string(out_file).unwrap();
    assert!(report.starts_with("split: m_u = 2"), "{}", report);
    assert!(report.contains("conserved=true max_real_observed=2"), "{}", report);
    assert_eq!(umbilic(&["deform", &path, "--radius", "0.1"]).0, 2);
}

#[test]
fn stratify_grid_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("beta.svg");
    let (code, out, _) = umbilic(&["stratify", "beta", "--s-range", "-4:0", "--t-range", "0:0", "--steps", "2", "--out", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["-4 0 region=20 curves=- config=monstar m_u=1:true", "0 0 region=0 curves=- config=star m_u=1:true"]);
    let svg = std::fs::read_to_string(svg).unwrap();
    for class in ["degenerate_discriminant", "phi_repeated_root", "inner_hypocycloid"] {
        assert!(svg.contains(&format!("class=\"{}\"", class)), "{}", class);
    }
}

#[test]
fn models_list_and_env_override() {
    let (code, out, _) = umbilic(&["models", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("crosscap ") && l.contains("parametrised")));
    assert!(out.lines().count() >= 29);

    let dir = tempfile::tempdir().unwrap();
    write_spec(&dir, "mine.surf", "ambient = euclidean\ngraph = z\nf[2,0] = 1/2\nf[0,2] = 1/2\nf[3,0] = 1/3\n");
    let run_bin = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_umbilic")).args(args).env("UMBILIC_MODELS_DIR", dir.path()).output().unwrap()
    };
    let listed = run_bin(&["models", "list"]);
    assert!(listed.status.success());
    assert_eq!(String::from_utf8_lossy(&listed.stdout).lines().count(), 1);
    let analyzed = run_bin(&["analyze", "mine"]);
    assert!(analyzed.status.success(), "{}", String::from_utf8_lossy(&analyzed.stderr));
    assert!(String::from_utf8_lossy(&analyzed.stdout).starts_with("mine\n"));
    assert_eq!(run_bin(&["analyze", "star"]).status.code(), Some(2));
}

#[test]
fn grid_numbers_are_exact() {
    assert_eq!(exact_number("0.125"), Some(q(1, 8)));
    assert_eq!(exact_number("-1/3"), Some(q(-1, 3)));
    assert_eq!(exact_number("-.5"), Some(q(-1, 2)));
    assert_eq!(exact_number("1/0"), None);
    assert_eq!(exact_number("x"), None);
}
