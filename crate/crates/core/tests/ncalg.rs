use kappa_core::hopf::axioms::random_element;
use kappa_core::ncalg::algebra::{Algebra, Element};
use kappa_core::ncalg::confluence::{confluence_dual, confluence_group, confluence_toy};
use kappa_core::{Dual, Group, Metric, Scalar, Status};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assoc(alg: &Algebra, gens: &[Element]) {
    for a in gens {
        for b in gens {
            for c in gens {
                let l = alg.mul(&alg.mul(a, b).unwrap(), c).unwrap();
                let r = alg.mul(a, &alg.mul(b, c).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn spatial_coordinate_moves_past_time() {
    let g = Group::new(&Metric::minkowski(), false);
    let p = g.mul(&g.x(1), &g.x(0)).unwrap();
    let want = &g.mul(&g.x(0), &g.x(1)).unwrap() - &g.x(1).scale(&Scalar::i_over_k());
    assert_eq!(p, want);
}

#[test]
fn spatial_coordinates_commute() {
    let g = Group::new(&Metric::random(4), false);
    assert_eq!(g.mul(&g.x(2), &g.x(1)).unwrap(), g.mul(&g.x(1), &g.x(2)).unwrap());
}

#[test]
fn lorentz_entries_commute() {
    let g = Group::new(&Metric::light_cone(), true);
    let a = g.lam(0, 1);
    let b = g.lam(2, 3);
    assert_eq!(g.mul(&a, &b).unwrap(), g.mul(&b, &a).unwrap());
    let e = g.eb(1);
    assert_eq!(g.mul(&e, &g.eb(-1)).unwrap(), Element::one());
}

#[test]
fn group_products_associate() {
    for m in [Metric::minkowski(), Metric::light_cone()] {
        for weyl in [false, true] {
            if weyl && !m.g00_zero() {
                continue;
            }
            let g = Group::new(&m, weyl);
            let mut gens: Vec<Element> = (0..4).map(|i| g.x(i)).collect();
            gens.push(g.lam(0, 1));
            gens.push(g.lam(2, 0));
            if weyl {
                gens.push(g.eb(1));
            }
            assoc(&g.alg, &gens);
        }
    }
}

#[test]
fn dual_products_associate() {
    for (m, weyl) in [(Metric::minkowski(), false), (Metric::light_cone(), true)] {
        let d = Dual::new(&m, weyl);
        let mut gens: Vec<Element> = (1..4).map(|i| d.p(i)).collect();
        gens.push(d.f(1));
        for l in 0..d.alg.nletters() as u8 {
            gens.push(d.alg.letter_elem(l));
        }
        assoc(&d.alg, &gens);
    }
}

#[test]
fn toy_system_is_confluent() {
    let r = confluence_toy();
    assert!(r.all_pass(), "{}", r.to_text());
}

#[test]
fn group_systems_are_confluent() {
    for (m, weyl) in [(Metric::minkowski(), false), (Metric::light_cone(), true)] {
        let r = confluence_group(&Group::new(&m, weyl), false, 3, 1).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}

#[test]
fn corrupted_relation_is_detected() {
    let m = Metric::minkowski();
    let r = confluence_group(&Group::corrupted(&m, false), true, 3, 1).unwrap();
    assert!(r.failed() > 0, "{}", r.to_text());
    assert!(r.checks.iter().any(|c| c.status == Status::Fail && c.residual != "0"));
}

#[test]
fn dual_systems_are_confluent() {
    for (m, weyl) in [(Metric::minkowski(), false), (Metric::light_cone(), true), (Metric::random(5), false)] {
        let r = confluence_dual(&Dual::new(&m, weyl), 4, 1).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}

#[test]
fn star_fixes_coordinates() {
    let g = Group::new(&Metric::minkowski(), false);
    for mu in 0..4 {
        assert_eq!(g.alg.star(&g.x(mu)).unwrap(), g.x(mu));
    }
    let iok = g.x(1).scale(&Scalar::i_over_k());
    assert_eq!(g.alg.star(&iok).unwrap(), -iok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn star_is_an_antilinear_anti_involution(seed in 0u64..10_000) {
        let g = Group::new(&Metric::light_cone(), false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&g, &mut rng, 2).unwrap();
        let b = random_element(&g, &mut rng, 2).unwrap();
        let s = |e: &Element| g.alg.star(e).unwrap();
        prop_assert_eq!(s(&s(&a)), a.clone());
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&a.scale(&Scalar::i())), s(&a).scale(&-Scalar::i()));
        prop_assert_eq!(s(&g.mul(&a, &b).unwrap()), g.mul(&s(&b), &s(&a)).unwrap());
    }

    #[test]
    fn multiplication_is_bilinear_and_associative(seed in 0u64..10_000) {
        let g = Group::new(&Metric::minkowski(), false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&g, &mut rng, 2).unwrap();
        let b = random_element(&g, &mut rng, 2).unwrap();
        let c = random_element(&g, &mut rng, 2).unwrap();
        let m = |x: &Element, y: &Element| g.mul(x, y).unwrap();
        prop_assert_eq!(m(&a, &(&b + &c)), &m(&a, &b) + &m(&a, &c));
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
    }
}
