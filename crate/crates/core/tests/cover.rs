use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rweis::arith::Phase;
use rweis::cover::{
    cocycle_winding, compose, compose_at, invert, lift, CoverElement, Matrix2, COCYCLE_TOLERANCE,
};
use rweis::multiplier::random_gamma0;

fn matrix() -> impl Strategy<Value = Matrix2> {
    (any::<u64>()).prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_gamma0(1, 1000, &mut rng)
    })
}

fn element(order: u64) -> impl Strategy<Value = CoverElement> {
    (matrix(), 0..order as i64).prop_map(move |(m, e)| CoverElement::new(m, order, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn associativity(g1 in element(18), g2 in element(18), g3 in element(18)) {
        let left = compose(&compose(&g1, &g2).unwrap(), &g3);
        let right = compose(&g1, &compose(&g2, &g3).unwrap());
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn inverse_laws(g in element(6)) {
        let id = CoverElement::identity(6).unwrap();
        let inv = invert(&g).unwrap();
        prop_assert_eq!(compose(&g, &inv).unwrap(), id);
        prop_assert_eq!(compose(&inv, &g).unwrap(), id);
        prop_assert_eq!(compose(&g, &id).unwrap(), g);
        prop_assert_eq!(compose(&id, &g).unwrap(), g);
    }

    #[test]
    fn cocycle_independent_of_tau(g1 in element(4), g2 in element(4)) {
        let at_i = compose(&g1, &g2).unwrap();
        let elsewhere = compose_at(&g1, &g2, Complex64::new(1.0, 2.0)).unwrap();
        prop_assert_eq!(at_i, elsewhere);
    }
}

#[test]
fn cocycle_residual_is_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let g1 = random_gamma0(1, 1000, &mut rng);
        let g2 = random_gamma0(1, 1000, &mut rng);
        let (m, residual) = cocycle_winding(&g1, &g2, 10_000, Complex64::new(0.0, 1.0)).unwrap();
        assert!((-1..=1).contains(&m));
        worst = worst.max(residual);
    }
    assert!(worst < COCYCLE_TOLERANCE, "worst residual {worst:e}");
}

#[test]
fn minus_identity_squares_to_generator() {
    for d in [1u64, 2, 3, 9] {
        let minus = lift(-1, 0, 0, -1, 2 * d).unwrap();
        let sq = compose(&minus, &minus).unwrap();
        assert_eq!(sq.matrix, Matrix2::IDENTITY);
        assert_eq!(sq.eps(), Phase::from_ratio(1, 2 * d as i64));
    }
}
