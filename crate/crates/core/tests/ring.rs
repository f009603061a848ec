use kappa_core::ring::metric::{epsilon_component, ident4, index_move, invert, matmul, Direction, MetricError};
use kappa_core::ring::{gauss, q, qf, Metric, Scalar, Q};
use num::Zero;
use proptest::prelude::*;

fn mat(rows: [[i64; 4]; 4]) -> [[Q; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| q(rows[i][j])))
}

#[test]
fn identity_inverse() {
    let (inv, det) = invert(&ident4()).unwrap();
    assert_eq!(inv, ident4());
    assert_eq!(det, q(1));
}

#[test]
fn minkowski_is_self_inverse() {
    let g = Metric::minkowski();
    assert_eq!(g.g_inv, g.g);
    assert_eq!(g.det, q(-1));
}

#[test]
fn light_cone_is_self_inverse() {
    let rows = mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
    let g = Metric::light_cone();
    assert_eq!(g.g, rows);
    assert_eq!(g.g_inv, rows);
    assert_eq!(g.det, q(-1));
    assert!(g.g00_zero());
}

#[test]
fn metric_validation_errors() {
    let asym = mat([[1, 1, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
    assert!(matches!(Metric::new(asym, "a"), Err(MetricError::NonSymmetric(..))));
    let sing = mat([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
    assert!(Metric::new(sing, "s").is_err());
    let big = mat([[2, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
    assert!(matches!(Metric::new(big, "b"), Err(MetricError::DeterminantNotUnit(_))));
}

#[test]
fn metric_json_round_trip() {
    for g in [Metric::minkowski(), Metric::light_cone(), Metric::random(11)] {
        let text = g.to_json();
        let back = Metric::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
    }
    assert!(matches!(Metric::from_json("{\"g\": [[1,0]]}"), Err(MetricError::Format(_))));
    assert!(Metric::from_json("not json").is_err());
}

#[test]
fn lowering_spatial_index_flips_sign() {
    let g = Metric::minkowski();
    // x^1 = 1, others zero
    let mut x = vec![Q::zero(); 4];
    x[1] = q(1);
    let lo = index_move(&x, 1, 0, Direction::Lower, &g).unwrap();
    assert_eq!(lo[1], q(-1));
}

#[test]
fn identity_metric_raising_is_identity() {
    let g = Metric::euclidean();
    let t: Vec<Q> = (0..16).map(|k| qf(k, 3)).collect();
    assert_eq!(index_move(&t, 2, 1, Direction::Raise, &g).unwrap(), t);
    assert!(index_move(&t, 2, 2, Direction::Raise, &g).is_err());
}

#[test]
fn epsilon_examples() {
    assert_eq!(epsilon_component(0, 1, 2, 3), 1);
    assert_eq!(epsilon_component(1, 0, 2, 3), -1);
    assert_eq!(epsilon_component(0, 0, 2, 3), 0);
    let g = Metric::minkowski();
    assert_eq!(g.eps_down([0, 1, 2, 3]), &q(1));
    // raising all four indices picks up det g⁻¹ = −1
    assert_eq!(g.eps_up([0, 1, 2, 3]), &q(-1));
    assert_eq!(g.with_orientation(-1).eps_down([0, 1, 2, 3]), &q(-1));
}

#[test]
fn epsilon_is_alternating() {
    for g in [Metric::minkowski(), Metric::light_cone(), Metric::random(2)] {
        for p in 0..256usize {
            let ix = [p >> 6 & 3, p >> 4 & 3, p >> 2 & 3, p & 3];
            for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                let mut jx = ix;
                jx.swap(a, b);
                assert_eq!(g.eps_down(ix), &-g.eps_down(jx).clone());
                // mixed positions alternate only among slots of the same position
                if a != 1 && b != 1 {
                    assert_eq!(g.eps([true, false, true, true], ix), &-g.eps([true, false, true, true], jx).clone());
                }
            }
        }
    }
}

#[test]
fn scalar_normalize_examples() {
    let iok = Scalar::i_over_k();
    assert!((&iok + &-iok.clone()).is_zero());
    assert_eq!(&Scalar::i() * &Scalar::i(), -Scalar::one());
    assert_eq!(&Scalar::kinv(1) * &Scalar::kinv(1), Scalar::kinv(2));
    assert_eq!(Scalar::kinv(-1).shift(1), Scalar::one());
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i32..4, -5i64..6, 1i64..4, -5i64..6), 0..4).prop_map(|terms| {
        let mut s = Scalar::zero();
        for (p, a, b, c) in terms {
            s.add_term(p, gauss(qf(a, b), q(c)));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert!((&a + &-a.clone()).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn random_metric_inverse(seed in 0u64..500) {
        let g = Metric::random(seed);
        prop_assert_eq!(matmul(&g.g, &g.g_inv), ident4());
        let (back, _) = invert(&g.g_inv).unwrap();
        prop_assert_eq!(back, g.g.clone());
        prop_assert!(g.det == q(1) || g.det == q(-1));
    }

    #[test]
    fn lower_then_raise_is_identity(seed in 0u64..100, vals in prop::collection::vec(-9i64..10, 16)) {
        let g = Metric::random(seed);
        let t: Vec<Q> = vals.into_iter().map(q).collect();
        for pos in 0..2 {
            let lo = index_move(&t, 2, pos, Direction::Lower, &g).unwrap();
            prop_assert_eq!(index_move(&lo, 2, pos, Direction::Raise, &g).unwrap(), t.clone());
        }
    }
}
