mod common;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use proptest::prelude::*;
use sumset_core::adele::CircleValue;
use sumset_core::phasepoly::{multilinearize, multilinearize_fn, PhasePolynomial};
use sumset_core::{Rational, Result};

fn iterated_derivative(phi: &PhasePolynomial, qs: &[Rational]) -> PhasePolynomial {
    qs.iter().fold(phi.clone(), |acc, q| acc.derivative(q).unwrap())
}

/// An arbitrary angle table on ℚ, not a polynomial phase.
fn scrambled(q: &Rational) -> Result<CircleValue> {
    let mut h = DefaultHasher::new();
    q.to_string().hash(&mut h);
    Ok(CircleValue::new(Rational::new((h.finish() % 997) as i64, 997)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_is_multiplicative(seed: u64, d1 in 0usize..4, d2 in 0usize..4) {
        let mut rng = common::rng(seed);
        let (phi, psi) = (common::phase(&mut rng, d1), common::phase(&mut rng, d2));
        let q = common::smooth_rational(&mut rng);
        let lhs = phi.product(&psi).unwrap().derivative(&q).unwrap();
        let rhs = phi.derivative(&q).unwrap().product(&psi.derivative(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_matches_pointwise(seed: u64, d in 0usize..5) {
        let mut rng = common::rng(seed);
        let phi = common::phase(&mut rng, d);
        let (q, t) = (common::smooth_rational(&mut rng), common::smooth_rational(&mut rng));
        let direct = &phi.eval(&(&t + &q)).unwrap() - &phi.eval(&t).unwrap();
        prop_assert_eq!(phi.derivative(&q).unwrap().eval(&t).unwrap(), direct);
    }

    #[test]
    fn multilinearize_symmetric(seed: u64, k in 1usize..=4) {
        let mut rng = common::rng(seed);
        let phi = common::phase(&mut rng, k);
        let qs: Vec<Rational> = (0..k).map(|_| common::smooth_rational(&mut rng)).collect();
        let base = multilinearize(&phi, &qs).unwrap();
        let mut rev = qs.clone();
        rev.reverse();
        prop_assert_eq!(&multilinearize(&phi, &rev).unwrap(), &base);
        let mut rot = qs.clone();
        rot.rotate_left(1);
        prop_assert_eq!(&multilinearize(&phi, &rot).unwrap(), &base);
    }

    #[test]
    fn multilinearize_additive(seed: u64, k in 1usize..=3, deg in 0usize..=3) {
        prop_assume!(deg <= k);
        let mut rng = common::rng(seed);
        let phi = common::phase(&mut rng, deg);
        let mut qs: Vec<Rational> = (0..k).map(|_| common::smooth_rational(&mut rng)).collect();
        let slot = (seed as usize) % k;
        let extra = common::smooth_rational(&mut rng);
        let a = multilinearize(&phi, &qs).unwrap();
        let saved = qs[slot].clone();
        qs[slot] = extra.clone();
        let b = multilinearize(&phi, &qs).unwrap();
        qs[slot] = &saved + &extra;
        prop_assert_eq!(multilinearize(&phi, &qs).unwrap(), a + b);
    }

    #[test]
    fn leading_coefficient_is_top_derivative(seed: u64, k in 1usize..=5) {
        let mut rng = common::rng(seed);
        let phi = common::phase(&mut rng, k);
        prop_assume!(phi.degree() == k);
        let qs: Vec<Rational> = (0..k).map(|_| common::smooth_rational(&mut rng)).collect();
        let top = multilinearize(&phi, &qs).unwrap();
        prop_assert_eq!(&phi.leading_coefficient().eval(&qs).unwrap(), &top);
        let iterated = iterated_derivative(&phi, &qs);
        prop_assert_eq!(iterated.degree(), 0);
        prop_assert_eq!(iterated.constant(), &top);
    }

    #[test]
    fn derivatives_collapse(seed: u64, k in 0usize..=5) {
        let mut rng = common::rng(seed);
        let phi = common::phase(&mut rng, k);
        let qs: Vec<Rational> = (0..=k).map(|_| common::smooth_rational(&mut rng)).collect();
        prop_assert!(iterated_derivative(&phi, &qs).is_trivial());
        if k >= 1 {
            prop_assert!(multilinearize(&phi, &qs).unwrap().is_one());
        }
    }
}

#[test]
fn non_polynomial_table_is_not_multilinear() {
    let mut rng = common::rng(7);
    let failures = (0..50)
        .filter(|_| {
            let (a, b, c) = (common::smooth_rational(&mut rng), common::smooth_rational(&mut rng), common::smooth_rational(&mut rng));
            let split = multilinearize_fn(scrambled, &[a.clone(), c.clone()]).unwrap()
                + multilinearize_fn(scrambled, &[b.clone(), c.clone()]).unwrap();
            multilinearize_fn(scrambled, &[&a + &b, c]).unwrap() != split
        })
        .count();
    assert!(failures > 0);
}
