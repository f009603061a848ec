use kappa_core::calculus::forms::{W, WB};
use kappa_core::calculus::suite::{d_word, expected_exterior_dimension};
use kappa_core::calculus::{calculus_consistency_suite, Calculus, Complex, Form};
use kappa_core::ncalg::algebra::{Element, Gen};
use kappa_core::{Group, Metric, Scalar, Variant};

const BOUND: usize = 4;

fn cases() -> Vec<(Variant, Metric)> {
    vec![
        (Variant::PoincareGeneral, Metric::minkowski()),
        (Variant::PoincareG00Zero, Metric::light_cone()),
        (Variant::Weyl, Metric::light_cone()),
    ]
}

#[test]
fn differential_of_unit_vanishes() {
    let g = Group::for_variant(Variant::PoincareGeneral, &Metric::minkowski()).unwrap();
    let c = Calculus::new(&g, Variant::PoincareGeneral, BOUND).unwrap();
    assert!(c.differential(&Element::one()).unwrap().is_zero());
    assert!(c.differential(&Element::scalar(Scalar::i_over_k())).unwrap().is_zero());
}

#[test]
fn differential_of_coordinates() {
    for (v, m) in cases() {
        let g = Group::for_variant(v, &m).unwrap();
        let c = Calculus::new(&g, v, BOUND).unwrap();
        for nu in 0..4 {
            let mut want = Form::zero();
            for mu in 0..4 {
                want.add(W + mu, &g.mul(&g.eb(1), &g.lam(nu, mu)).unwrap());
            }
            assert_eq!(c.differential(&g.x(nu)).unwrap(), want, "{} x[{nu}]", v.name());
        }
    }
}

#[test]
fn differential_of_dilatation() {
    let g = Group::for_variant(Variant::Weyl, &Metric::light_cone()).unwrap();
    let c = Calculus::new(&g, Variant::Weyl, BOUND).unwrap();
    let mut want = Form::zero();
    want.add(WB, &g.eb(1));
    assert_eq!(c.differential(&g.eb(1)).unwrap(), want);
}

#[test]
fn differential_respects_relations_and_leibniz() {
    for (v, m) in cases() {
        let g = Group::for_variant(v, &m).unwrap();
        let c = Calculus::new(&g, v, BOUND).unwrap();
        let (x0, x1, l) = (Gen::Letter(0), Gen::Letter(1), Gen::Var(1));
        for w in [[x1, x0], [x0, x1], [l, x1], [x1, l]] {
            let prod = g.alg.word_of(&w).unwrap();
            assert_eq!(d_word(&c, &w).unwrap(), c.differential(&prod).unwrap(), "{} {w:?}", v.name());
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    for (v, m) in cases() {
        let g = Group::for_variant(v, &m).unwrap();
        let cx = Complex::new(&g, v, BOUND).unwrap();
        let mut gens: Vec<Element> = (0..4).map(|i| g.x(i)).collect();
        gens.push(g.lam(0, 2));
        gens.push(g.eb(1));
        for a in &gens {
            let dd = cx.d_form(&cx.calc.differential(a).unwrap()).unwrap();
            assert!(dd.is_zero(), "{}", v.name());
        }
        assert_eq!(cx.ext.rank, expected_exterior_dimension(v));
    }
}

#[test]
fn null_time_suite_passes() {
    let v = Variant::PoincareG00Zero;
    let g = Group::for_variant(v, &Metric::light_cone()).unwrap();
    let r = calculus_consistency_suite(&g, v, 5).unwrap();
    assert!(r.all_pass(), "{}", r.to_text());
}
