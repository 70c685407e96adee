#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sumset_core::adele::{AdeleClassElement, CircleValue, PAdicNumber};
use sumset_core::exactq::BinomPoly;
use sumset_core::phasepoly::PhasePolynomial;
use sumset_core::Rational;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Small denominators built from the primes in `PRIMES` and 11.
pub fn smooth_rational(rng: &mut ChaCha8Rng) -> Rational {
    let dens = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 21, 35];
    Rational::new(rng.gen_range(-40i64..=40), dens[rng.gen_range(0..dens.len())])
}

/// Mixes exact rational components, truncated digit components and
/// generic (digit-sourced) elements.
pub fn adele(rng: &mut ChaCha8Rng) -> AdeleClassElement {
    let real = rational(rng, 30, 24);
    match rng.gen_range(0..4) {
        0 => AdeleClassElement::from_real(real),
        1 => {
            let mut parts = Vec::new();
            for p in PRIMES {
                if rng.gen_bool(0.5) {
                    parts.push(PAdicNumber::from_rational(p, rational(rng, 50, 36)));
                }
            }
            AdeleClassElement::from_parts(real, parts).unwrap()
        }
        2 => {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            let digits: Vec<u32> = (0..40).map(|_| rng.gen_range(0..p as u32)).collect();
            let x = PAdicNumber::from_digits(p, rng.gen_range(-2..=2), &digits).unwrap();
            AdeleClassElement::from_parts(real, [x]).unwrap()
        }
        _ => {
            let g = AdeleClassElement::generic_element(&PRIMES[..rng.gen_range(1..=4)], 48, rng.gen_range(0..20)).unwrap();
            g.add(&AdeleClassElement::from_real(real)).unwrap()
        }
    }
}

pub fn circle(rng: &mut ChaCha8Rng) -> CircleValue {
    CircleValue::new(rational(rng, 50, 60))
}

pub fn phase(rng: &mut ChaCha8Rng, degree: usize) -> PhasePolynomial {
    PhasePolynomial::new(circle(rng), (0..degree).map(|_| adele(rng)).collect())
}

pub fn binom_poly(rng: &mut ChaCha8Rng, degree: usize) -> BinomPoly {
    let mut c: Vec<Rational> = (0..=degree).map(|_| rational(rng, 9, 6)).collect();
    if c[degree].is_zero() {
        c[degree] = Rational::one();
    }
    BinomPoly::new(c)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
