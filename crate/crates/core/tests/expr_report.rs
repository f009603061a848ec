use kappa_core::expr::{parse_element, parse_expression, render};
use kappa_core::hopf::axioms::random_element;
use kappa_core::report::SCHEMA;
use kappa_core::{Check, Dual, Error, Group, Metric, Report, Scalar, Status};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn parse_normalizes_products() {
    let g = Group::new(&Metric::minkowski(), false);
    let a = parse_element("x[1]*x[0]", &g).unwrap();
    let b = parse_element("x[0]*x[1] - i/k*x[1]", &g).unwrap();
    assert_eq!(a, b);
    assert_eq!(parse_element("2*L[0,1] - L[0,1]", &g).unwrap(), g.lam(0, 1));
    assert_eq!(render(&g.alg, &parse_element("0*x[2]", &g).unwrap()), "0");
}

#[test]
fn parse_dual_symbols() {
    let d = Dual::new(&Metric::light_cone(), true);
    assert_eq!(parse_element("F*Finv", &d).unwrap(), parse_element("1", &d).unwrap());
    assert_eq!(parse_element("P[2]", &d).unwrap(), d.p(2));
    assert_eq!(parse_element("D", &d).unwrap(), d.d());
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_expression("x[") {
        Err(Error::SyntaxError { line, column, .. }) => assert_eq!((line, column), (1, 2)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_expression(""), Err(Error::SyntaxError { .. })));
    assert!(matches!(parse_expression("x[1] +"), Err(Error::SyntaxError { .. })));
    let g = Group::new(&Metric::minkowski(), false);
    assert!(matches!(parse_element("x[1]/x[0]", &g), Err(Error::SyntaxError { .. })));
    assert!(matches!(parse_element("eb", &g), Err(Error::UnknownSymbol(_))));
    assert!(matches!(parse_element("P[1]", &g), Err(Error::UnknownSymbol(_))));
}

#[test]
fn render_examples() {
    let g = Group::new(&Metric::minkowski(), false);
    assert_eq!(render(&g.alg, &g.x(1)), "x[1]");
    let e = g.x(1).scale(&Scalar::i_over_k());
    assert_eq!(parse_element(&render(&g.alg, &e), &g).unwrap(), e);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parse_inverts_render(seed in 0u64..10_000, weyl in any::<bool>()) {
        let m = if weyl { Metric::light_cone() } else { Metric::random(seed % 7) };
        let g = Group::new(&m, weyl);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&g, &mut rng, 3).unwrap();
        let text = render(&g.alg, &a);
        prop_assert_eq!(parse_element(&text, &g).unwrap(), a);
    }
}

fn sample_report() -> Report {
    let mut r = Report::new("hopf", "poincare", "minkowski", 4);
    r.note("a note");
    r.push(Check::pass("b-check").certified("3 cases"));
    r.push(Check::fail("a-check", "x[1]"));
    r.push(Check::with_status("c-check", Status::Unverifiable, "lam[0]"));
    r.finish()
}

#[test]
fn report_machine_round_trip() {
    let r = sample_report();
    let text = r.to_machine();
    assert!(text.contains(&format!("\"schema\": \"{SCHEMA}\"")));
    let back = Report::from_machine(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_machine(), text);
    assert!(Report::from_machine("{\"schema\": 1}").is_err());
}

#[test]
fn report_counts_and_order() {
    let r = sample_report();
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["a-check", "b-check", "c-check"]);
    assert_eq!((r.passed(), r.failed()), (1, 1));
    assert!(!r.all_pass());
    let text = r.to_text();
    assert!(text.contains("a-check") && text.contains("[3 cases]"));
    assert!(text.ends_with("3 checks: 1 pass, 1 fail\n"));

    let mut all = Report::new("verify", "poincare", "minkowski", 4);
    all.absorb(r);
    assert!(all.get("hopf/a-check").is_some());
    assert_eq!(all.notes, ["a note"]);
}

#[test]
fn unverifiable_does_not_fail() {
    let mut r = Report::new("qlie", "weyl", "light-cone", 0);
    r.push(Check::pass("p"));
    r.push(Check::with_status("u", Status::Unverifiable, "lam[1]"));
    r.push(Check::with_status("i", Status::Info, "M2"));
    assert!(r.all_pass());
    assert_eq!(Check::from_residual("z", "0".into()).status, Status::Pass);
    assert_eq!(Check::from_residual("z", "x[0]".into()).status, Status::Fail);
}
