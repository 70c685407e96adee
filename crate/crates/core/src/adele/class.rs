use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::circle::CircleValue;
use super::padic::PAdicNumber;
use super::source::DigitSource;
use crate::error::{Error, Result};
use crate::exactq::Rational;

/// Sign convention for the distinguished character of 𝔸/ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterConvention {
    /// `e((a_∞ − Σ_p frac_p(a_p)))`
    #[default]
    Standard,
    /// The complex conjugate of `Standard`.
    Conjugate,
}

/// A point of the adele class group 𝔸/ℚ in canonical form.
///
/// The representative has real component `real_angle ∈ [0, 1)` and every
/// finite component in ℤ_p. Finitely many primes are listed explicitly in
/// `parts`; at every other prime the component is the rational `tail`
/// (which is `p`-integral there). With `real_angle` pinned to `[0, 1)` the
/// representative is unique, so the tail is forced: subtracting a diagonal
/// rational moves every finite component at once.
#[derive(Clone)]
pub struct AdeleClassElement {
    real_angle: Rational,
    parts: BTreeMap<u64, PAdicNumber>,
    tail: Rational,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Primes dividing `n` that are not in `skip`. `n` is first stripped of the
/// skipped primes, so the trial division only sees the new cofactor.
fn new_prime_factors(n: &BigInt, skip: &BTreeMap<u64, PAdicNumber>) -> Vec<u64> {
    let mut m = n.clone();
    for &p in skip.keys() {
        let bp = BigInt::from(p);
        while m.is_multiple_of(&bp) {
            m /= &bp;
        }
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while !m.is_one() {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            out.push(m.to_u64().expect("prime factor fits in u64"));
            break;
        }
        if m.is_multiple_of(&bd) {
            out.push(d);
            while m.is_multiple_of(&bd) {
                m /= &bd;
            }
        }
        d += 1;
    }
    out
}

impl AdeleClassElement {
    pub fn zero() -> Self {
        AdeleClassElement { real_angle: Rational::zero(), parts: BTreeMap::new(), tail: Rational::zero() }
    }

    /// Canonical representative of the class of the adele with real component
    /// `real`, the given finite components, and value `tail` at every prime
    /// not listed in `parts`.
    ///
    /// Subtracts the diagonal rational `Σ_p frac_p(a_p)` and then the integer
    /// part of the real component.
    pub fn canonicalize(
        real: Rational,
        parts: impl IntoIterator<Item = PAdicNumber>,
        tail: Rational,
    ) -> Result<Self> {
        let mut map: BTreeMap<u64, PAdicNumber> = BTreeMap::new();
        for x in parts {
            let p = x.prime();
            if map.insert(p, x).is_some() {
                return Err(Error::InvalidInput(format!("prime {p} listed twice")));
            }
        }
        for p in new_prime_factors(tail.denom(), &map) {
            map.insert(p, PAdicNumber::from_rational(p, tail.clone()));
        }

        let mut shift = Rational::zero();
        for x in map.values() {
            shift += &x.frac_p()?;
        }
        let real = real - &shift;
        let whole = Rational::from_integer(real.floor());
        let shift = shift + &whole;
        let real_angle = real - &whole;
        let tail = tail - &shift;
        let neg = -&shift;
        let parts = map
            .into_iter()
            .map(|(p, x)| if neg.is_zero() { (p, x) } else { (p, x.add_rational(&neg)) })
            .filter(|(_, x)| x.as_rational() != Some(&tail))
            .collect();
        Ok(AdeleClassElement { real_angle, parts, tail })
    }

    /// The class of the adele `(real, 0, 0, ...)`.
    pub fn from_real(real: Rational) -> Self {
        AdeleClassElement::canonicalize(real, [], Rational::zero()).expect("no finite parts")
    }

    /// The class of the adele with the given finite components and zero
    /// at every other place.
    pub fn from_parts(real: Rational, parts: impl IntoIterator<Item = PAdicNumber>) -> Result<Self> {
        AdeleClassElement::canonicalize(real, parts, Rational::zero())
    }

    /// The diagonal image of `q`; always the zero class.
    pub fn diagonal(q: &Rational) -> Self {
        AdeleClassElement::canonicalize(q.clone(), [], q.clone()).expect("diagonal rationals are exact")
    }

    /// A deterministic element whose `p`-adic components are aperiodic digit
    /// streams (nonzero digits at square positions), reproducible from `seed`.
    pub fn generic_element(primes: &[u64], precision: u32, seed: u64) -> Result<Self> {
        if precision < 16 {
            return Err(Error::InvalidInput(format!("precision {precision} < 16")));
        }
        let mut parts = Vec::new();
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if parts.iter().any(|x: &PAdicNumber| x.prime() == p) {
                return Err(Error::InvalidInput(format!("prime {p} listed twice")));
            }
            parts.push(PAdicNumber::from_source(p, DigitSource::Squares { seed }, precision));
        }
        AdeleClassElement::from_parts(Rational::zero(), parts)
    }

    pub fn real_angle(&self) -> &Rational {
        &self.real_angle
    }

    pub fn parts(&self) -> &BTreeMap<u64, PAdicNumber> {
        &self.parts
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    /// The `p`-adic component of the canonical representative.
    pub fn component(&self, p: u64) -> PAdicNumber {
        match self.parts.get(&p) {
            Some(x) => x.clone(),
            None => PAdicNumber::from_rational(p, self.tail.clone()),
        }
    }

    /// Smallest absolute precision over the truncated components.
    pub fn min_precision(&self) -> Option<i64> {
        self.parts.values().filter_map(PAdicNumber::absolute_precision).min()
    }

    pub fn e_q(&self) -> CircleValue {
        CircleValue::new(self.real_angle.clone())
    }

    pub fn e_q_with(&self, convention: CharacterConvention) -> CircleValue {
        match convention {
            CharacterConvention::Standard => self.e_q(),
            CharacterConvention::Conjugate => self.e_q().conj(),
        }
    }

    pub fn add(&self, other: &AdeleClassElement) -> Result<Self> {
        let primes: Vec<u64> = self.parts.keys().chain(other.parts.keys()).copied().collect();
        let mut parts = BTreeMap::new();
        for p in primes {
            parts.entry(p).or_insert_with(|| self.component(p).add(&other.component(p)));
        }
        AdeleClassElement::canonicalize(
            &self.real_angle + &other.real_angle,
            parts.into_values(),
            &self.tail + &other.tail,
        )
    }

    pub fn neg(&self) -> Result<Self> {
        self.scalar_mul(&Rational::from(-1))
    }

    pub fn sub(&self, other: &AdeleClassElement) -> Result<Self> {
        self.add(&other.neg()?)
    }

    /// The ℚ-vector-space action `q · a`.
    pub fn scalar_mul(&self, q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Ok(AdeleClassElement::zero());
        }
        if *q == Rational::one() {
            return Ok(self.clone());
        }
        AdeleClassElement::canonicalize(
            &self.real_angle * q,
            self.parts.values().map(|x| x.mul_rational(q)),
            &self.tail * q,
        )
    }

    /// Equality up to the common known precision of the truncated components.
    pub fn agrees_with(&self, other: &AdeleClassElement) -> bool {
        self.real_angle == other.real_angle
            && self.tail == other.tail
            && self
                .parts
                .keys()
                .chain(other.parts.keys())
                .all(|&p| self.component(p).agrees_with(&other.component(p)))
    }

    /// The zero class, to known precision.
    pub fn is_zero(&self) -> bool {
        self.real_angle.is_zero() && self.tail.is_zero() && self.parts.values().all(PAdicNumber::is_known_zero)
    }

    /// `Σ_i w_i · v_i` for a rational covector `w` and a vector `v` of classes.
    pub fn pairing(w: &[Rational], v: &[AdeleClassElement]) -> Result<Self> {
        assert_eq!(w.len(), v.len(), "dimension mismatch");
        let mut acc = AdeleClassElement::zero();
        for (wi, vi) in w.iter().zip(v) {
            if !wi.is_zero() {
                acc = acc.add(&vi.scalar_mul(wi)?)?;
            }
        }
        Ok(acc)
    }
}

/// Equality of classes up to common known precision; see [`AdeleClassElement::agrees_with`].
impl PartialEq for AdeleClassElement {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl fmt::Debug for AdeleClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.real_angle)?;
        for x in self.parts.values() {
            write!(f, "; {x:?}")?;
        }
        if !self.tail.is_zero() {
            write!(f, "; else {}", self.tail)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct PAdicRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digits: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<DigitSource>,
}

impl PAdicRepr {
    fn from_padic(x: &PAdicNumber) -> Self {
        match x.truncated_parts() {
            None => PAdicRepr {
                exact: x.as_rational().cloned(),
                valuation: None,
                digits: None,
                precision: None,
                source: None,
            },
            Some((residue, _, shift)) => {
                let digits = x.digits();
                let valuation = if residue.is_zero() { -(shift as i64) } else { x.valuation().unwrap() };
                PAdicRepr {
                    exact: None,
                    valuation: Some(valuation),
                    precision: Some(digits.len() as u32),
                    digits: Some(digits),
                    source: x.source().copied(),
                }
            }
        }
    }

    fn into_padic(self, p: u64) -> Result<PAdicNumber> {
        if let Some(r) = self.exact {
            return Ok(PAdicNumber::from_rational(p, r));
        }
        let bad = |why: &str| Error::Parse(format!("p-adic component at {p}: {why}"));
        let valuation = self.valuation.ok_or_else(|| bad("missing valuation"))?;
        let digits = self.digits.ok_or_else(|| bad("missing digits"))?;
        if let Some(n) = self.precision {
            if n as usize != digits.len() {
                return Err(bad("precision does not match digit count"));
            }
        }
        let x = PAdicNumber::from_digits(p, valuation, &digits)?;
        match self.source {
            None => Ok(x),
            Some(src) => {
                let (_, known, shift) = x.truncated_parts().expect("truncated");
                if shift != 0 {
                    return Err(bad("sourced digits must be integral"));
                }
                let y = PAdicNumber::from_source(p, src, known);
                if y.truncated_parts() != x.truncated_parts() {
                    return Err(bad("digits disagree with their source"));
                }
                Ok(y)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    real: Rational,
    #[serde(default)]
    padic: BTreeMap<u64, PAdicRepr>,
    #[serde(default, skip_serializing_if = "Rational::is_zero")]
    tail: Rational,
}

impl Serialize for AdeleClassElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr {
            real: self.real_angle.clone(),
            padic: self.parts.iter().map(|(&p, x)| (p, PAdicRepr::from_padic(x))).collect(),
            tail: self.tail.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdeleClassElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ClassRepr::deserialize(d)?;
        let mut parts = Vec::new();
        for (p, x) in r.padic {
            if !is_prime(p) {
                return Err(D::Error::custom(format!("{p} is not prime")));
            }
            parts.push(x.into_padic(p).map_err(D::Error::custom)?);
        }
        AdeleClassElement::canonicalize(r.real, parts, r.tail).map_err(D::Error::custom)
    }
}

/// The character `e_ℚ` on 𝔸/ℚ in the standard convention.
pub fn e_q(a: &AdeleClassElement) -> CircleValue {
    a.e_q()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn part(p: u64, r: Rational) -> PAdicNumber {
        PAdicNumber::from_rational(p, r)
    }

    #[test]
    fn diagonal_rationals_are_zero() {
        let z = AdeleClassElement::diagonal(&q(7, 3));
        assert!(z.is_zero());
        assert!(z.parts().is_empty());
        assert_eq!(z.e_q(), CircleValue::one());
    }

    #[test]
    fn canonical_examples() {
        let a = AdeleClassElement::from_parts(Rational::zero(), [part(5, q(1, 5))]).unwrap();
        assert_eq!(a.real_angle(), &q(4, 5));
        assert!(a.component(5).is_integral());
        assert_eq!(a.e_q().angle(), &q(4, 5));

        let b = AdeleClassElement::from_real(q(3, 2));
        assert_eq!(b.real_angle(), &q(1, 2));
        assert!(b.parts().is_empty());

        let c = AdeleClassElement::from_real(q(1, 3));
        assert_eq!(c.e_q().angle(), &q(1, 3));

        for p in [2u64, 3, 7, 11] {
            let x = AdeleClassElement::from_parts(Rational::zero(), [part(p, q(1, p as i64))]).unwrap();
            assert_eq!(x.e_q().angle(), &(Rational::one() - q(1, p as i64)));
        }
    }

    #[test]
    fn tail_carries_unlisted_primes() {
        // (0, 1/5 at 5) ~ (4/5, 1 at 5, 4/5 elsewhere)
        let a = AdeleClassElement::from_parts(Rational::zero(), [part(5, q(1, 5))]).unwrap();
        assert_eq!(a.tail(), &q(4, 5));
        // direct: (1/7)(0, 1/35 at 5) has angle -frac_5(1/35) = -3/5
        let b = a.scalar_mul(&q(1, 7)).unwrap();
        assert_eq!(b.e_q().angle(), &q(2, 5));
    }

    #[test]
    fn scalar_examples() {
        let a = AdeleClassElement::from_real(q(1, 3));
        assert!(a.scalar_mul(&Rational::zero()).unwrap().is_zero());
        assert_eq!(a.scalar_mul(&q(2, 1)).unwrap().real_angle(), &q(2, 3));
        let one = AdeleClassElement::canonicalize(Rational::one(), [], Rational::one()).unwrap();
        assert!(one.scalar_mul(&q(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn add_examples() {
        let a = AdeleClassElement::from_parts(q(2, 7), [part(3, q(5, 9)), part(2, q(1, 4))]).unwrap();
        assert_eq!(a.add(&AdeleClassElement::zero()).unwrap(), a);
        assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
        let t = AdeleClassElement::from_real(q(2, 3));
        assert_eq!(t.add(&t).unwrap().real_angle(), &q(1, 3));
    }

    #[test]
    fn generic_elements() {
        let a = AdeleClassElement::generic_element(&[2], 64, 1).unwrap();
        let b = AdeleClassElement::generic_element(&[2], 64, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(!a.is_zero());
        assert!(AdeleClassElement::generic_element(&[], 64, 1).unwrap().is_zero());
        assert!(AdeleClassElement::generic_element(&[2], 8, 1).is_err());
        assert!(AdeleClassElement::generic_element(&[4], 64, 1).is_err());
    }

    #[test]
    fn precision_loss_is_reported() {
        let x = PAdicNumber::from_digits(2, 0, &[1, 0, 1]).unwrap();
        let a = AdeleClassElement::from_parts(Rational::zero(), [x]).unwrap();
        assert!(a.scalar_mul(&q(1, 4)).is_ok());
        assert!(matches!(a.scalar_mul(&q(1, 16)), Err(Error::InsufficientPrecision { prime: 2, .. })));
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let a = AdeleClassElement::generic_element(&[2, 3, 5], 20, 3).unwrap();
        let b = a.scalar_mul(&q(7, 12)).unwrap();
        let c = AdeleClassElement::from_parts(q(1, 3), [part(5, q(1, 5)), part(2, q(3, 4))]).unwrap();
        for x in [a, b, c, AdeleClassElement::zero()] {
            let s = serde_json::to_string(&x).unwrap();
            let back: AdeleClassElement = serde_json::from_str(&s).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
            assert_eq!(back, x);
        }
    }

    #[test]
    fn json_schema_shape() {
        let a = AdeleClassElement::generic_element(&[2], 16, 1).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"real":"0/1","padic":{"2":{"valuation":0,"digits":[1,0,0,1,0,0,0,0,1,0,0,0,0,0,0,1],"precision":16,"source":{"kind":"squares","seed":1}}}}"#
        );
        let tampered = s.replace("[1,0,0,1", "[1,1,0,1");
        assert!(serde_json::from_str::<AdeleClassElement>(&tampered).is_err());
    }
}
