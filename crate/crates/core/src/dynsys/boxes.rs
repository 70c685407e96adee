//! Basic open sets of `(𝔸/ℚ)^n`: products of an open arc in the real angle
//! and fixed leading `p`-adic digits, read off the canonical representative.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OrbitPoint;
use crate::adele::AdeleClassElement;
use crate::error::{Error, Result};
use crate::exactq::Rational;

/// The open arc `{x : 0 < (x − lo) mod 1 < len}` with `0 < len ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleInterval {
    lo: Rational,
    len: Rational,
}

impl AngleInterval {
    /// The arc from `lo` up to `hi`; wraps through 0 when `hi < lo`.
    /// `hi = lo + 1` gives the circle minus one point.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        let diff = &hi - &lo;
        let len = if !diff.is_negative() && !diff.is_zero() && diff <= Rational::one() {
            diff
        } else {
            diff.fract_mod1()
        };
        if len.is_zero() {
            return Err(Error::InvalidInput(format!("empty arc ({lo}, {hi})")));
        }
        Ok(AngleInterval { lo: lo.fract_mod1(), len })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> Rational {
        &self.lo + &self.len
    }

    pub fn len(&self) -> &Rational {
        &self.len
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let d = (x - &self.lo).fract_mod1();
        !d.is_zero() && d < self.len
    }

    /// The arc sum `{x + y}`, or `None` when it covers the circle.
    pub fn sum(&self, other: &AngleInterval) -> Option<AngleInterval> {
        let len = &self.len + &other.len;
        (len < Rational::one()).then(|| AngleInterval { lo: (&self.lo + &other.lo).fract_mod1(), len })
    }

    pub fn is_disjoint(&self, other: &AngleInterval) -> bool {
        (&other.lo - &self.lo).fract_mod1() >= self.len && (&self.lo - &other.lo).fract_mod1() >= other.len
    }
}

impl Serialize for AngleInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, self.hi()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AngleInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Rational, Rational)>::deserialize(d)?;
        AngleInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// A basic open set of 𝔸/ℚ. No constraints means the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassBox {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<AngleInterval>,
    /// Required digits of the `p`-adic component, from position 0 upward.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub digits: BTreeMap<u64, Vec<u32>>,
}

fn digit_value(p: u64, ds: &[u32]) -> BigInt {
    ds.iter().rev().fold(BigInt::from(0), |acc, &d| acc * p + d)
}

impl ClassBox {
    pub fn whole() -> Self {
        ClassBox::default()
    }

    pub fn arc(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(ClassBox { interval: Some(AngleInterval::new(lo, hi)?), digits: BTreeMap::new() })
    }

    pub fn is_whole(&self) -> bool {
        self.interval.is_none() && self.digits.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for (&p, ds) in &self.digits {
            if ds.iter().any(|&d| d as u64 >= p) {
                return Err(Error::InvalidInput(format!("digit out of range for p = {p}")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, a: &AdeleClassElement) -> Result<bool> {
        if let Some(iv) = &self.interval {
            if !iv.contains(a.real_angle()) {
                return Ok(false);
            }
        }
        for (&p, ds) in &self.digits {
            let r = a.component(p).residue_mod(ds.len() as u32)?;
            if r != digit_value(p, ds) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Certifies `(self + other) ∩ target = ∅`. A `false` answer means only
    /// that disjointness could not be established from the constraints.
    pub fn sum_disjoint_from(&self, other: &ClassBox, target: &ClassBox) -> bool {
        if let (Some(a), Some(b), Some(c)) = (&self.interval, &other.interval, &target.interval) {
            if a.sum(b).is_some_and(|s| s.is_disjoint(c)) {
                return true;
            }
        }
        // The real parts add with a carry w ∈ {0, 1} that is subtracted from
        // every p-adic component of the canonical sum.
        for (&p, da) in &self.digits {
            let (Some(db), Some(dc)) = (other.digits.get(&p), target.digits.get(&p)) else {
                continue;
            };
            let n = da.len().min(db.len()).min(dc.len());
            if n == 0 {
                continue;
            }
            let m = BigInt::from(p).pow(n as u32);
            let reduce = |x: BigInt| ((x % &m) + &m) % &m;
            let s = digit_value(p, &da[..n]) + digit_value(p, &db[..n]);
            let c = digit_value(p, &dc[..n]);
            if reduce(s.clone()) != c && reduce(s - 1) != c {
                return true;
            }
        }
        false
    }
}

/// A product of [`ClassBox`]es over the coordinates of a `k × l` point,
/// listed row by row. Missing trailing coordinates are unconstrained.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBox {
    pub coords: Vec<ClassBox>,
}

impl OpenBox {
    pub fn whole() -> Self {
        OpenBox::default()
    }

    pub fn new(coords: Vec<ClassBox>) -> Self {
        OpenBox { coords }
    }

    pub fn contains(&self, point: &OrbitPoint) -> Result<bool> {
        let flat: Vec<&AdeleClassElement> = point.coords.iter().flatten().collect();
        if self.coords.len() > flat.len() {
            return Err(Error::InvalidInput("box has more coordinates than the point".into()));
        }
        for (b, a) in self.coords.iter().zip(flat) {
            if !b.contains(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
