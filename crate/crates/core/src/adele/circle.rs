use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactq::Rational;

/// A point `e^{2πi·angle}` of the unit circle, stored as a rational angle in `[0, 1)`.
///
/// The group law is angle addition mod 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CircleValue {
    angle: Rational,
}

impl CircleValue {
    pub fn new(angle: Rational) -> Self {
        CircleValue { angle: angle.fract_mod1() }
    }

    pub fn one() -> Self {
        CircleValue { angle: Rational::zero() }
    }

    pub fn angle(&self) -> &Rational {
        &self.angle
    }

    pub fn is_one(&self) -> bool {
        self.angle.is_zero()
    }

    pub fn conj(&self) -> Self {
        CircleValue::new(-&self.angle)
    }

    pub fn pow(&self, n: i64) -> Self {
        CircleValue::new(&self.angle * Rational::from(n))
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * self.angle.to_f64();
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Add for CircleValue {
    type Output = CircleValue;
    fn add(self, rhs: CircleValue) -> CircleValue {
        CircleValue::new(self.angle + rhs.angle)
    }
}

impl Add<&CircleValue> for &CircleValue {
    type Output = CircleValue;
    fn add(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.angle + &rhs.angle)
    }
}

impl Sub for CircleValue {
    type Output = CircleValue;
    fn sub(self, rhs: CircleValue) -> CircleValue {
        CircleValue::new(self.angle - rhs.angle)
    }
}

impl Sub<&CircleValue> for &CircleValue {
    type Output = CircleValue;
    fn sub(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.angle - &rhs.angle)
    }
}

impl Neg for CircleValue {
    type Output = CircleValue;
    fn neg(self) -> CircleValue {
        self.conj()
    }
}

impl std::iter::Sum for CircleValue {
    fn sum<I: Iterator<Item = CircleValue>>(iter: I) -> Self {
        iter.fold(CircleValue::one(), |a, b| a + b)
    }
}

impl fmt::Debug for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.angle)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.angle, f)
    }
}

impl Serialize for CircleValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.angle.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(CircleValue::new(Rational::deserialize(d)?))
    }
}
