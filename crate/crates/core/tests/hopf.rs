use kappa_core::hopf::ideal::expected_dimension;
use kappa_core::hopf::{hopf_axiom_suite, ideal_theorem_suite, GroupHopf, IdealElements, Quotient, TensorElement};
use kappa_core::ncalg::algebra::{Element, Gen};
use kappa_core::{Error, Group, Metric, Scalar, Variant};

/// `m ∘ (S ⊗ id) ∘ Δ`.
fn antipode_contract(g: &Group, h: &GroupHopf, t: &TensorElement) -> Element {
    let mut r = Element::zero();
    for (legs, c) in t.terms() {
        let a = h.antipode(&Element::term(legs[0].clone(), Scalar::one())).unwrap();
        let b = Element::term(legs[1].clone(), c.clone());
        r += &g.mul(&a, &b).unwrap();
    }
    r
}

#[test]
fn counit_on_generators() {
    let g = Group::new(&Metric::light_cone(), true);
    let h = GroupHopf::new(&g);
    for mu in 0..4 {
        assert!(h.counit(&g.x(mu)).is_zero());
        for nu in 0..4 {
            let want = if mu == nu { Scalar::one() } else { Scalar::zero() };
            assert_eq!(h.counit(&g.lam(mu, nu)), want);
        }
    }
    assert_eq!(h.counit(&g.eb(1)), Scalar::one());
}

#[test]
fn lorentz_coproduct_is_matrix_product() {
    let g = Group::new(&Metric::minkowski(), false);
    let h = GroupHopf::new(&g);
    let mut want = TensorElement::zero();
    for c in 0..4 {
        want.add_assign(&TensorElement::pure(&Scalar::one(), &[&g.lam(1, c), &g.lam(c, 2)]));
    }
    assert_eq!(h.coproduct(&g.lam(1, 2)).unwrap(), want);
}

#[test]
fn coordinate_coproduct_weyl() {
    let g = Group::new(&Metric::light_cone(), true);
    let h = GroupHopf::new(&g);
    let mut want = TensorElement::pure(&Scalar::one(), &[&g.x(0), &Element::one()]);
    for nu in 0..4 {
        let left = g.mul(&g.eb(1), &g.lam(0, nu)).unwrap();
        want.add_assign(&TensorElement::pure(&Scalar::one(), &[&left, &g.x(nu)]));
    }
    assert_eq!(h.coproduct(&g.x(0)).unwrap(), want);
}

#[test]
fn antipode_inverts_and_satisfies_axiom() {
    for (m, weyl) in [(Metric::minkowski(), false), (Metric::light_cone(), true)] {
        let g = Group::new(&m, weyl);
        let h = GroupHopf::new(&g);
        let mut gens: Vec<Element> = (0..4).map(|i| g.x(i)).collect();
        gens.push(g.lam(0, 3));
        gens.push(g.mul(&g.x(1), &g.x(0)).unwrap());
        if weyl {
            gens.push(g.eb(1));
        }
        for a in &gens {
            assert_eq!(&h.antipode(&h.antipode_inv(a).unwrap()).unwrap(), a);
            let lhs = antipode_contract(&g, &h, &h.coproduct(a).unwrap());
            assert_eq!(lhs, Element::scalar(h.counit(a)));
        }
    }
}

#[test]
fn lorentz_antipode_is_transpose() {
    let g = Group::new(&Metric::minkowski(), false);
    let h = GroupHopf::new(&g);
    // S Λ^0_1 = Λ_1^0 = g_{11} Λ^1_0 g^{00}
    assert_eq!(h.antipode(&g.lam(0, 1)).unwrap(), -g.lam(1, 0));
    assert_eq!(h.antipode_gen(Gen::Letter(0)), &h.antipode(&g.x(0)).unwrap());
}

#[test]
fn axiom_suite_passes() {
    let g = Group::new(&Metric::minkowski(), false);
    let r = hopf_axiom_suite(&g, 4, 3).unwrap();
    assert!(r.all_pass(), "{}", r.to_text());
}

#[test]
fn quotient_projection_examples() {
    let m = Metric::light_cone();
    let v = Variant::PoincareG00Zero;
    let g = Group::for_variant(v, &m).unwrap();
    let h = GroupHopf::new(&g);
    let q = Quotient::new(&g, v, 4).unwrap();
    assert_eq!(q.span.quotient_dim(), expected_dimension(v));
    assert_eq!(q.basis.len(), 10);

    let c = q.project(&h, &g.x(2)).unwrap();
    for (n, s) in c.iter().enumerate() {
        assert_eq!(s, &if n == 2 { Scalar::one() } else { Scalar::zero() });
    }
    // g^{00} = 0, so x^0 x^0 ≡ (i/κ) x^0
    let c = q.project(&h, &g.mul(&g.x(0), &g.x(0)).unwrap()).unwrap();
    assert_eq!(c[0], Scalar::i_over_k());
    assert!(c[1..].iter().all(|s| s.is_zero()));

    assert!(matches!(q.project(&h, &Element::one()), Err(Error::NotInKernel)));
}

#[test]
fn ideal_membership_examples() {
    let m = Metric::light_cone();
    let v = Variant::PoincareG00Zero;
    let g = Group::for_variant(v, &m).unwrap();
    let el = IdealElements::new(&g);
    let q = Quotient::new(&g, v, 4).unwrap();
    assert!(q.span.contains(&g.x(0)).unwrap().is_none());
    assert!(q.span.contains(&el.d(1, 2)).unwrap().is_none());
    let x2 = el.x2(0, 1);
    assert!(q.span.contains(&x2).unwrap().is_some());
    let prod = g.mul(&x2, &g.x(3)).unwrap();
    assert!(q.span.contains(&prod).unwrap().is_some());
}

#[test]
fn ideal_theorem_general() {
    let g = Group::for_variant(Variant::PoincareGeneral, &Metric::minkowski()).unwrap();
    let r = ideal_theorem_suite(&g, Variant::PoincareGeneral, 4).unwrap();
    assert!(r.all_pass(), "{}", r.to_text());
    assert_eq!(r.get("quotient-dimension").unwrap().status, kappa_core::Status::Pass);
}

#[test]
fn weyl_requires_null_time_metric() {
    let e = Group::for_variant(Variant::Weyl, &Metric::minkowski());
    assert!(matches!(e, Err(Error::MetricVariantMismatch { .. })));
}
