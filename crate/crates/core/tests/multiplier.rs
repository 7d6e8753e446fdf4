use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rweis::arith::{divisors, int, rat, Phase, Rational};
use rweis::cover::{compose, lift_matrix, CoverElement};
use rweis::multiplier::{
    chi_general, chi_integer, chi_special, is_trivial_condition3, probe_trivial,
    random_cover_element, special_matrix, PrimeLevelSpec,
};

fn random_rational<R: Rng>(rng: &mut R, den: i64) -> Rational {
    rat(rng.gen_range(-60..=60), den)
}

#[test]
fn character_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u64, 3, 5, 11] {
        for den in [1i64, 3, 9] {
            let spec = PrimeLevelSpec::new(
                p,
                random_rational(&mut rng, den),
                random_rational(&mut rng, den),
            )
            .unwrap();
            let eta = spec.eta_spec();
            for _ in 0..100 {
                let g1 = random_cover_element(p, eta.cover_order(), 1000, &mut rng).unwrap();
                let g2 = random_cover_element(p, eta.cover_order(), 1000, &mut rng).unwrap();
                let g12 = compose(&g1, &g2).unwrap();
                let lhs = chi_general(&eta, &g12).unwrap();
                let rhs = chi_general(&eta, &g1).unwrap() + chi_general(&eta, &g2).unwrap();
                assert_eq!(lhs, rhs, "p={p} g1={:?} g2={:?}", g1, g2);
            }
        }
    }
}

#[test]
fn special_families_agree_with_general() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in (2u64..=50).filter(|&p| rweis::arith::is_prime(p)) {
        let spec = PrimeLevelSpec::new(
            p,
            random_rational(&mut rng, 7),
            random_rational(&mut rng, 5),
        )
        .unwrap();
        let eta = spec.eta_spec();
        let mut checked = 0;
        for family in 1u8..=4 {
            let base = match family {
                1 => p as i64 - 1,
                2 => p as i64 + 1,
                3 => p as i64 - 2,
                _ => p as i64 + 2,
            };
            if base < 1 || (family >= 3 && p < 3) {
                continue;
            }
            for t in divisors(base as u64) {
                let m = special_matrix(p, family, t).unwrap();
                let g = lift_matrix(m, eta.cover_order()).unwrap();
                assert_eq!(
                    chi_special(&spec, family, t).unwrap(),
                    chi_general(&eta, &g).unwrap(),
                    "p={p} family={family} t={t}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 2);
    }
}

#[test]
fn integer_formula_agrees_with_general() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in [2u64, 3, 5, 7, 13] {
        let mut found = 0;
        while found < 6 {
            let r1: i64 = rng.gen_range(-40..=40);
            let rp: i64 = rng.gen_range(-40..=40);
            if (r1 + p as i64 * rp) % 24 != 0 {
                continue;
            }
            found += 1;
            let spec = PrimeLevelSpec::new(p, int(r1), int(rp)).unwrap();
            let eta = spec.eta_spec();
            for _ in 0..100 {
                let g = random_cover_element(p, eta.cover_order(), 1000, &mut rng).unwrap();
                assert_eq!(
                    chi_integer(&spec, &g).unwrap(),
                    chi_general(&eta, &g).unwrap(),
                    "p={p} r=({r1},{rp}) g={g:?}"
                );
            }
        }
    }
}

#[test]
fn condition3_forces_trivial_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (p, r1, rp) in [
        (2u64, 8i64, 8i64),
        (5, 24, 0),
        (3, 6, -18),
        (7, 4, -28),
        (2, -8, 16),
    ] {
        let spec = PrimeLevelSpec::new(p, int(r1), int(rp)).unwrap();
        assert!(is_trivial_condition3(&spec).unwrap(), "{p} {r1} {rp}");
        assert!(probe_trivial(&spec, 300, &mut rng).unwrap());
    }
    // the converse direction is only probed
    let spec = PrimeLevelSpec::new(3, int(9), int(-3)).unwrap();
    assert!(!is_trivial_condition3(&spec).unwrap());
    assert!(!probe_trivial(&spec, 300, &mut rng).unwrap());
}

#[test]
fn minus_identity_is_minus_half_weight() {
    for (p, r1, rp) in [
        (3u64, rat(1, 3), rat(5, 3)),
        (11, rat(44, 9), rat(-4, 9)),
        (2, int(16), int(-8)),
    ] {
        let spec = PrimeLevelSpec::new(p, r1, rp).unwrap();
        let eta = spec.eta_spec();
        let minus = lift_matrix(rweis::cover::Matrix2::MINUS_IDENTITY, eta.cover_order()).unwrap();
        assert_eq!(
            chi_general(&eta, &minus).unwrap(),
            Phase::new(-eta.weight() / int(2))
        );
        let id = CoverElement::identity(eta.cover_order()).unwrap();
        assert!(chi_general(&eta, &id).unwrap().is_zero());
    }
}
