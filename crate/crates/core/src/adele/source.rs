use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Deterministic digit streams for lazily extended p-adic numbers.
///
/// Digits are a pure function of `(seed, prime, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DigitSource {
    /// Nonzero digit exactly at index 0 and at indices `i` with `i + seed` a
    /// perfect square. Never eventually periodic, so the number is irrational,
    /// and always a unit.
    Squares { seed: u64 },
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

impl DigitSource {
    pub fn digit(&self, prime: u64, index: u32) -> u32 {
        match *self {
            DigitSource::Squares { seed } => {
                let pos = index as u64 + seed;
                if index == 0 || is_square(pos) {
                    (1 + pos % (prime - 1)) as u32
                } else {
                    0
                }
            }
        }
    }

    /// `Σ_{i<n} digit(i) p^i`.
    pub fn residue(&self, prime: u64, n: u32) -> BigInt {
        (0..n).rev().fold(BigInt::zero(), |acc, i| acc * prime + self.digit(prime, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_positions() {
        let s = DigitSource::Squares { seed: 1 };
        let ones: Vec<u32> = (0..64).filter(|&i| s.digit(2, i) != 0).collect();
        assert_eq!(ones, vec![0, 3, 8, 15, 24, 35, 48, 63]);
        let s = DigitSource::Squares { seed: 5 };
        let ones: Vec<u32> = (0..32).filter(|&i| s.digit(3, i) != 0).collect();
        assert_eq!(ones, vec![0, 4, 11, 20, 31]);
        assert!((0..200).all(|i| s.digit(7, i) < 7));
    }

    #[test]
    fn first_64_digits_have_no_short_period() {
        for seed in 0..6 {
            let s = DigitSource::Squares { seed };
            let d: Vec<u32> = (0..64).map(|i| s.digit(2, i)).collect();
            for period in 1..=16 {
                assert!((0..64 - period).any(|i| d[i] != d[i + period]), "seed {seed} period {period}");
            }
        }
    }

    #[test]
    fn serde_form() {
        let s = DigitSource::Squares { seed: 1 };
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"squares","seed":1}"#);
    }
}
