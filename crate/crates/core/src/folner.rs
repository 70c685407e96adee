//! Følner sets in ℚ, relative densities along them, and the return-time
//! sets `D_δ = {q : ‖q‖ < δ}`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::Rational;

/// Default cap on the number of tuples enumerated before deduplication.
pub const DEFAULT_SIZE_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FolnerFamily {
    /// `Φ_N = {Σ_{n=1}^N a_n / n : −N ≤ a_n ≤ N}`.
    Harmonic,
    /// `Φ_N = {k / N! : |k| ≤ N·N!}`; nested and tractable to `N ≈ 8`.
    #[serde(rename = "factorial")]
    FactorialGrid,
}

impl FolnerFamily {
    /// Temperedness as recorded metadata: the factorial grid is nested, so the
    /// standard check is immediate; nothing is claimed for the harmonic family.
    pub fn is_tempered(&self) -> Option<bool> {
        match self {
            FolnerFamily::FactorialGrid => Some(true),
            FolnerFamily::Harmonic => None,
        }
    }

    /// Number of tuples enumerated before deduplication.
    pub fn raw_count(&self, n: u32) -> u128 {
        match self {
            FolnerFamily::Harmonic => (2 * n as u128 + 1).saturating_pow(n),
            FolnerFamily::FactorialGrid => 2 * n as u128 * factorial_u128(n) + 1,
        }
    }
}

impl fmt::Display for FolnerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FolnerFamily::Harmonic => "harmonic",
            FolnerFamily::FactorialGrid => "factorial",
        })
    }
}

impl FromStr for FolnerFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harmonic" => Ok(FolnerFamily::Harmonic),
            "factorial" | "factorial-grid" => Ok(FolnerFamily::FactorialGrid),
            _ => Err(Error::Parse(format!("unknown Følner family {s:?}"))),
        }
    }
}

fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

pub fn enumerate(family: FolnerFamily, n: u32) -> Result<Vec<Rational>> {
    enumerate_capped(family, n, DEFAULT_SIZE_CAP)
}

/// The deduplicated value set `Φ_N`, sorted increasingly.
pub fn enumerate_capped(family: FolnerFamily, n: u32, cap: u128) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let count = family.raw_count(n);
    if count > cap {
        return Err(Error::SizeCap { count, cap });
    }
    match family {
        FolnerFamily::FactorialGrid => {
            let den = factorial_u128(n) as i64;
            let bound = n as i64 * den;
            Ok((-bound..=bound).map(|k| Rational::new(k, den)).collect())
        }
        FolnerFamily::Harmonic => {
            let l = (1..=n as i64).fold(1i64, |a, b| a.lcm(&b));
            let weights: Vec<i64> = (1..=n as i64).map(|m| l / m).collect();
            let mut sums: HashSet<i64> = HashSet::from([0]);
            for w in &weights {
                let mut next = HashSet::with_capacity(sums.len() * (2 * n as usize + 1));
                for s in &sums {
                    for a in -(n as i64)..=(n as i64) {
                        next.insert(s + a * w);
                    }
                }
                sums = next;
            }
            let mut nums: Vec<i64> = sums.into_iter().collect();
            nums.sort_unstable();
            Ok(nums.into_iter().map(|k| Rational::new(k, l)).collect())
        }
    }
}

/// A pure membership test on ℚ, optionally with an explicit finite support.
#[derive(Clone)]
pub struct RationalSetPredicate {
    name: String,
    test: Arc<dyn Fn(&Rational) -> bool + Send + Sync>,
    support: Option<Arc<BTreeSet<Rational>>>,
}

impl RationalSetPredicate {
    pub fn from_fn(name: impl Into<String>, f: impl Fn(&Rational) -> bool + Send + Sync + 'static) -> Self {
        RationalSetPredicate { name: name.into(), test: Arc::new(f), support: None }
    }

    pub fn all() -> Self {
        RationalSetPredicate::from_fn("Q", |_| true)
    }

    pub fn empty() -> Self {
        let mut p = RationalSetPredicate::from_fn("empty", |_| false);
        p.support = Some(Arc::new(BTreeSet::new()));
        p
    }

    pub fn finite(name: impl Into<String>, set: BTreeSet<Rational>) -> Self {
        let set = Arc::new(set);
        let inner = Arc::clone(&set);
        RationalSetPredicate {
            name: name.into(),
            test: Arc::new(move |q| inner.contains(q)),
            support: Some(set),
        }
    }

    /// `A + x = {a + x : a ∈ A}`.
    pub fn translate(&self, x: &Rational) -> Self {
        let test = Arc::clone(&self.test);
        let shift = x.clone();
        RationalSetPredicate {
            name: format!("({}) + {}", self.name, x),
            test: Arc::new(move |q| test(&(q - &shift))),
            support: self
                .support
                .as_ref()
                .map(|s| Arc::new(s.iter().map(|a| a + x).collect())),
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        (self.test)(q)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support(&self) -> Option<&BTreeSet<Rational>> {
        self.support.as_deref()
    }
}

impl fmt::Debug for RationalSetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSetPredicate({})", self.name)
    }
}

/// `D_δ = {q ∈ ℚ : ‖q‖ < δ}`, where `‖·‖` is the distance to the nearest integer.
pub fn return_time_set(delta: &Rational) -> Result<RationalSetPredicate> {
    if delta.is_negative() || delta.is_zero() || *delta > Rational::new(1, 2) {
        return Err(Error::InvalidInput(format!("delta {delta} outside (0, 1/2]")));
    }
    let d = delta.clone();
    Ok(RationalSetPredicate::from_fn(format!("delta:{delta}"), move |q| q.dist_to_int() < d))
}

/// Counts `|A ∩ Φ_N|` and `|Φ_N|`.
pub fn count(set: &RationalSetPredicate, family: FolnerFamily, n: u32) -> Result<(usize, usize)> {
    let phi = enumerate(family, n)?;
    let hits = phi.iter().filter(|q| set.contains(q)).count();
    Ok((hits, phi.len()))
}

/// `|A ∩ Φ_N| / |Φ_N|`, exactly.
pub fn density(set: &RationalSetPredicate, family: FolnerFamily, n: u32) -> Result<Rational> {
    let (hits, total) = count(set, family, n)?;
    Ok(Rational::new(hits as i64, total as i64))
}

/// `|(Φ_N + x) △ Φ_N| / |Φ_N|`, exactly.
pub fn folner_defect(family: FolnerFamily, n: u32, x: &Rational) -> Result<Rational> {
    let phi = enumerate(family, n)?;
    let members: HashSet<&Rational> = phi.iter().collect();
    let escaped = phi.iter().filter(|q| !members.contains(&(*q + x))).count();
    Ok(Rational::new(2 * escaped as i64, phi.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn enumerate_examples() {
        let h1 = enumerate(FolnerFamily::Harmonic, 1).unwrap();
        assert_eq!(h1, vec![q(-1, 1), q(0, 1), q(1, 1)]);
        // oracle: the 25 tuples a1 + a2/2, deduplicated by hand
        let mut oracle: Vec<Rational> = Vec::new();
        for a1 in -2..=2 {
            for a2 in -2..=2 {
                let v = q(a1, 1) + q(a2, 2);
                if !oracle.contains(&v) {
                    oracle.push(v);
                }
            }
        }
        oracle.sort();
        assert_eq!(enumerate(FolnerFamily::Harmonic, 2).unwrap(), oracle);
        assert_eq!(oracle.len(), 13);
        let g2 = enumerate(FolnerFamily::FactorialGrid, 2).unwrap();
        assert_eq!(g2, (-4..=4).map(|k| q(k, 2)).collect::<Vec<_>>());
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            enumerate_capped(FolnerFamily::Harmonic, 6, 1000),
            Err(Error::SizeCap { count: 4826809, cap: 1000 })
        ));
        assert!(enumerate(FolnerFamily::FactorialGrid, 0).is_err());
    }

    #[test]
    fn density_examples() {
        for fam in [FolnerFamily::Harmonic, FolnerFamily::FactorialGrid] {
            assert_eq!(density(&RationalSetPredicate::all(), fam, 3).unwrap(), Rational::one());
            assert_eq!(density(&RationalSetPredicate::empty(), fam, 3).unwrap(), Rational::zero());
        }
        let d = return_time_set(&q(1, 4)).unwrap();
        assert_eq!(density(&d, FolnerFamily::Harmonic, 2).unwrap(), q(7, 13));
    }

    #[test]
    fn defect_examples() {
        for fam in [FolnerFamily::Harmonic, FolnerFamily::FactorialGrid] {
            assert_eq!(folner_defect(fam, 3, &Rational::zero()).unwrap(), Rational::zero());
        }
        // oracle: explicit symmetric difference of {k/6 : |k| <= 18} and its shift by 3/6
        let phi: BTreeSet<i64> = (-18..=18).collect();
        let shifted: BTreeSet<i64> = phi.iter().map(|k| k + 3).collect();
        let sym = phi.symmetric_difference(&shifted).count() as i64;
        assert_eq!(
            folner_defect(FolnerFamily::FactorialGrid, 3, &q(1, 2)).unwrap(),
            q(sym, phi.len() as i64)
        );
        assert_eq!(q(sym, 37), q(6, 37));
    }

    #[test]
    fn return_time_membership() {
        assert!(return_time_set(&q(1, 2)).unwrap().contains(&q(1, 4)));
        assert!(!return_time_set(&q(1, 4)).unwrap().contains(&q(1, 2)));
        assert!(return_time_set(&q(1, 4)).unwrap().contains(&q(17, 16)));
        assert!(return_time_set(&q(0, 1)).is_err());
        assert!(return_time_set(&q(3, 4)).is_err());
    }

    #[test]
    fn translated_finite_sets() {
        let a = RationalSetPredicate::finite("A", [q(0, 1), q(1, 2)].into_iter().collect());
        let b = a.translate(&q(1, 1));
        assert!(b.contains(&q(3, 2)) && !b.contains(&q(1, 2)));
        assert_eq!(b.support().unwrap().len(), 2);
    }
}
