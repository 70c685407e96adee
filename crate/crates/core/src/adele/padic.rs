use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::source::DigitSource;
use crate::error::{Error, Result};
use crate::exactq::{int_valuation, Rational};

pub(crate) fn pow_p(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Inverse of `a` modulo `m`; `a` must be a unit.
pub(crate) fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one() || m.is_one());
    e.x.mod_floor(m)
}

/// Image of a `p`-integral rational in `ℤ/p^n`.
pub(crate) fn rational_mod_pn(r: &Rational, p: u64, n: u32) -> BigInt {
    let m = pow_p(p, n);
    if m.is_one() {
        return BigInt::zero();
    }
    let num = r.numer().mod_floor(&m);
    (num * mod_inv(r.denom(), &m)).mod_floor(&m)
}

/// Splits `r = p^v · u` and returns `(v, u)`; `r` must be nonzero.
fn split_p(r: &Rational, p: u64) -> (i64, Rational) {
    let v = r.valuation(p).expect("nonzero");
    let pv = Rational::from_integer(pow_p(p, v.unsigned_abs() as u32));
    let u = if v >= 0 { r / &pv } else { r * &pv };
    (v, u)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    /// A rational number; every digit is known.
    Exact(Rational),
    /// `x = residue / p^shift`, with `residue` known modulo `p^known`.
    /// Normalized so that `p ∤ residue` whenever `shift > 0` and `known > 0`.
    Truncated {
        residue: BigInt,
        known: u32,
        shift: u32,
        source: Option<DigitSource>,
    },
}

/// An element of ℚ_p known either exactly (a rational) or modulo a power of `p`.
///
/// Truncated values carry an absolute precision `known - shift`: the value is
/// determined modulo `p^(known - shift)`. A value built from a [`DigitSource`]
/// can be extended on demand to any precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdicNumber {
    prime: u64,
    pub(crate) repr: Repr,
}

impl PAdicNumber {
    pub fn from_rational(prime: u64, r: Rational) -> Self {
        assert!(prime >= 2);
        PAdicNumber { prime, repr: Repr::Exact(r) }
    }

    /// Value `Σ digits[i] p^(valuation + i)` known to `digits.len()` digits.
    pub fn from_digits(prime: u64, valuation: i64, digits: &[u32]) -> Result<Self> {
        if prime < 2 {
            return Err(Error::InvalidInput(format!("prime {prime} < 2")));
        }
        if let Some(d) = digits.iter().find(|&&d| d as u64 >= prime) {
            return Err(Error::InvalidInput(format!("digit {d} out of range for p = {prime}")));
        }
        let shift = (-valuation).max(0) as u32;
        let offset = (valuation + shift as i64) as u32;
        let mut residue = BigInt::zero();
        for &d in digits.iter().rev() {
            residue = residue * prime + d;
        }
        residue *= pow_p(prime, offset);
        let known = offset + digits.len() as u32;
        Ok(PAdicNumber { prime, repr: Repr::Truncated { residue, known, shift, source: None } }
            .normalized())
    }

    /// The `ℤ_p` element whose digits come from `source`, materialized to `precision` digits.
    pub fn from_source(prime: u64, source: DigitSource, precision: u32) -> Self {
        let residue = source.residue(prime, precision);
        PAdicNumber {
            prime,
            repr: Repr::Truncated { residue, known: precision, shift: 0, source: Some(source) },
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.repr {
            Repr::Exact(r) => Some(r),
            Repr::Truncated { .. } => None,
        }
    }

    pub fn source(&self) -> Option<&DigitSource> {
        match &self.repr {
            Repr::Truncated { source, .. } => source.as_ref(),
            Repr::Exact(_) => None,
        }
    }

    /// The value is determined modulo `p^absolute_precision`; `None` when exact.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Exact(_) => None,
            Repr::Truncated { known, shift, .. } => Some(*known as i64 - *shift as i64),
        }
    }

    /// Position of the lowest nonzero digit. Known-zero truncated values
    /// report their absolute precision; exact zero reports `None`.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Exact(r) => r.valuation(self.prime),
            Repr::Truncated { residue, known, shift, .. } => {
                if residue.is_zero() {
                    Some(*known as i64 - *shift as i64)
                } else {
                    let p = BigInt::from(self.prime);
                    Some(int_valuation(residue, &p) as i64 - *shift as i64)
                }
            }
        }
    }

    /// Known digits starting at [`valuation`](Self::valuation) (for a
    /// known-zero value: all known digits from position `-shift`).
    pub fn digits(&self) -> Vec<u32> {
        match &self.repr {
            Repr::Exact(_) => Vec::new(),
            Repr::Truncated { residue, known, shift, .. } => {
                let start = if residue.is_zero() {
                    0
                } else {
                    (self.valuation().unwrap() + *shift as i64) as u32
                };
                let mut out = Vec::with_capacity((*known - start.min(*known)) as usize);
                let mut r = residue / pow_p(self.prime, start);
                let p = BigInt::from(self.prime);
                for _ in start..*known {
                    let (q, d) = r.div_rem(&p);
                    out.push(d.to_u32().unwrap());
                    r = q;
                }
                out
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        match &self.repr {
            Repr::Exact(r) => r.is_zero() || r.valuation(self.prime).unwrap() >= 0,
            Repr::Truncated { shift, .. } => *shift == 0,
        }
    }

    fn normalized(mut self) -> Self {
        if let Repr::Truncated { residue, known, shift, .. } = &mut self.repr {
            let p = BigInt::from(self.prime);
            while *shift > 0 && *known > 0 {
                let (q, r) = residue.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                *residue = q;
                *known -= 1;
                *shift -= 1;
            }
        }
        self
    }

    /// Materializes more digits from the source, if any. Returns whether the
    /// value now has at least `known` digits.
    fn ensure_known(&mut self, want: u32) -> bool {
        match &mut self.repr {
            Repr::Exact(_) => true,
            Repr::Truncated { residue, known, shift, source } => {
                if *known >= want {
                    return true;
                }
                match source {
                    Some(src) if *shift == 0 => {
                        *residue = src.residue(self.prime, want);
                        *known = want;
                        true
                    }
                    _ => false,
                }
            }
        }
    }

    /// The unique `r ∈ [0, 1)` with `p`-power denominator such that `x - r ∈ ℤ_p`.
    pub fn frac_p(&self) -> Result<Rational> {
        match &self.repr {
            Repr::Exact(r) => Ok(frac_p_rational(r, self.prime)),
            Repr::Truncated { residue, known, shift, .. } => {
                if *shift == 0 {
                    return Ok(Rational::zero());
                }
                if known < shift {
                    return Err(Error::InsufficientPrecision {
                        prime: self.prime,
                        needed: *shift as i64,
                        available: *known as i64,
                    });
                }
                let m = pow_p(self.prime, *shift);
                Ok(Rational::new(residue.mod_floor(&m), m))
            }
        }
    }

    /// `(residue, known, shift)` view; exact values are reduced to `want` digits.
    fn frame(&self, want_shift: u32, want_known: u32) -> (BigInt, u32) {
        match &self.repr {
            Repr::Exact(r) => {
                let scaled = r * Rational::from_integer(pow_p(self.prime, want_shift));
                (rational_mod_pn(&scaled, self.prime, want_known), want_known)
            }
            Repr::Truncated { residue, known, shift, .. } => {
                let up = want_shift - shift;
                let k = known + up;
                ((residue * pow_p(self.prime, up)).mod_floor(&pow_p(self.prime, k)), k)
            }
        }
    }

    fn min_shift(&self) -> u32 {
        match &self.repr {
            Repr::Exact(r) => r.valuation(self.prime).map_or(0, |v| (-v).max(0) as u32),
            Repr::Truncated { shift, .. } => *shift,
        }
    }

    pub fn add(&self, other: &PAdicNumber) -> PAdicNumber {
        assert_eq!(self.prime, other.prime, "mixed primes");
        if let (Repr::Exact(a), Repr::Exact(b)) = (&self.repr, &other.repr) {
            return PAdicNumber::from_rational(self.prime, a + b);
        }
        let shift = self.min_shift().max(other.min_shift());
        let abs = [self.absolute_precision(), other.absolute_precision()]
            .into_iter()
            .flatten()
            .min()
            .unwrap();
        let known = (abs + shift as i64).max(0) as u32;
        let (a, _) = self.frame(shift, known);
        let (b, _) = other.frame(shift, known);
        let m = pow_p(self.prime, known);
        PAdicNumber {
            prime: self.prime,
            repr: Repr::Truncated { residue: (a + b).mod_floor(&m), known, shift, source: None },
        }
        .normalized()
    }

    pub fn add_rational(&self, r: &Rational) -> PAdicNumber {
        self.add(&PAdicNumber::from_rational(self.prime, r.clone()))
    }

    pub fn neg(&self) -> PAdicNumber {
        self.mul_rational(&Rational::from(-1))
    }

    /// Multiplication by a rational. Division by `p^e` costs `e` digits of
    /// absolute precision unless the value has a digit source to draw from.
    pub fn mul_rational(&self, s: &Rational) -> PAdicNumber {
        if s.is_zero() {
            return PAdicNumber::from_rational(self.prime, Rational::zero());
        }
        if *s == Rational::one() {
            return self.clone();
        }
        let p = self.prime;
        match &self.repr {
            Repr::Exact(r) => PAdicNumber::from_rational(p, r * s),
            Repr::Truncated { .. } => {
                let (v, unit) = split_p(s, p);
                let mut base = self.clone();
                if v < 0 {
                    if let Repr::Truncated { known, .. } = base.repr {
                        base.ensure_known(known + (-v) as u32);
                    }
                }
                let Repr::Truncated { residue, known, shift, .. } = base.repr else { unreachable!() };
                let m = pow_p(p, known);
                let mut residue = (residue * rational_mod_pn(&unit, p, known)).mod_floor(&m);
                let (mut known, mut shift) = (known, shift);
                if v >= 0 {
                    let up = v as u32;
                    residue *= pow_p(p, up);
                    known += up;
                    // absorb into the denominator first
                    let drop = shift.min(up);
                    if drop > 0 {
                        residue /= pow_p(p, drop);
                        known -= drop;
                        shift -= drop;
                    }
                } else {
                    shift += (-v) as u32;
                }
                PAdicNumber { prime: p, repr: Repr::Truncated { residue, known, shift, source: None } }
                    .normalized()
            }
        }
    }

    /// Image of an integral value in `ℤ/p^n`.
    pub fn residue_mod(&self, n: u32) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::InvalidInput(format!("{self:?} is not in Z_{}", self.prime)));
        }
        let mut x = self.clone();
        x.ensure_known(n);
        match &x.repr {
            Repr::Exact(r) => Ok(rational_mod_pn(r, self.prime, n)),
            Repr::Truncated { residue, known, .. } => {
                if *known < n {
                    return Err(Error::InsufficientPrecision {
                        prime: self.prime,
                        needed: n as i64,
                        available: *known as i64,
                    });
                }
                Ok(residue.mod_floor(&pow_p(self.prime, n)))
            }
        }
    }

    /// True when the two values agree to their common known precision.
    pub fn agrees_with(&self, other: &PAdicNumber) -> bool {
        if self.prime != other.prime {
            return false;
        }
        let diff = self.add(&other.neg());
        match &diff.repr {
            Repr::Exact(r) => r.is_zero(),
            Repr::Truncated { residue, .. } => residue.is_zero(),
        }
    }

    /// Exact zero, or truncated with every known digit zero.
    pub fn is_known_zero(&self) -> bool {
        match &self.repr {
            Repr::Exact(r) => r.is_zero(),
            Repr::Truncated { residue, .. } => residue.is_zero(),
        }
    }

    pub(crate) fn truncated_parts(&self) -> Option<(&BigInt, u32, u32)> {
        match &self.repr {
            Repr::Truncated { residue, known, shift, .. } => Some((residue, *known, *shift)),
            Repr::Exact(_) => None,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_truncated(prime: u64, residue: BigInt, known: u32, shift: u32, source: Option<DigitSource>) -> Self {
        let m = pow_p(prime, known);
        PAdicNumber { prime, repr: Repr::Truncated { residue: residue.mod_floor(&m), known, shift, source } }
    }
}

/// `frac_p` of a rational: the `p`-power-denominator part reduced into `[0, 1)`.
pub fn frac_p_rational(r: &Rational, p: u64) -> Rational {
    let Some(v) = r.valuation(p) else { return Rational::zero() };
    if v >= 0 {
        return Rational::zero();
    }
    let e = (-v) as u32;
    let pe = pow_p(p, e);
    // r = a / (p^e b'), the principal part is (a b'^{-1} mod p^e) / p^e
    let cofactor = r.denom() / &pe;
    let a = r.numer().mod_floor(&pe);
    let top = (a * mod_inv(&cofactor, &pe)).mod_floor(&pe);
    Rational::new(top, pe)
}

impl fmt::Debug for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact(r) => write!(f, "{r} in Q_{}", self.prime),
            Repr::Truncated { residue, known, shift, .. } => {
                let sign = if residue.is_negative() { "-" } else { "" };
                write!(f, "{sign}{residue}/{}^{shift} mod {}^{}", self.prime, self.prime, *known as i64 - *shift as i64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn frac_examples() {
        assert_eq!(PAdicNumber::from_rational(2, q(1, 2)).frac_p().unwrap(), q(1, 2));
        assert_eq!(PAdicNumber::from_rational(3, q(5, 1)).frac_p().unwrap(), Rational::zero());
        assert_eq!(PAdicNumber::from_rational(2, q(3, 4)).frac_p().unwrap(), q(3, 4));
        // 1/6 at p=3: 1/6 = 2^{-1}/3, 2^{-1} = 2 mod 3
        assert_eq!(frac_p_rational(&q(1, 6), 3), q(2, 3));
        assert_eq!(frac_p_rational(&q(-1, 5), 5), q(4, 5));
    }

    #[test]
    fn digits_roundtrip() {
        let x = PAdicNumber::from_digits(5, -2, &[3, 0, 4, 1]).unwrap();
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(x.digits(), vec![3, 0, 4, 1]);
        assert_eq!(x.absolute_precision(), Some(2));
        assert_eq!(x.frac_p().unwrap(), q(3, 25));
        let y = PAdicNumber::from_digits(3, 2, &[1, 2]).unwrap();
        assert_eq!(y.valuation(), Some(2));
        assert_eq!(y.digits(), vec![1, 2]);
        assert_eq!(y.absolute_precision(), Some(4));
    }

    #[test]
    fn insufficient_precision_for_frac() {
        // digits only up to position -2 of a number with valuation -3
        let x = PAdicNumber::from_digits(2, -3, &[1]).unwrap();
        assert_eq!(x.absolute_precision(), Some(-2));
        assert!(matches!(x.frac_p(), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn truncated_matches_exact() {
        // 1/3 in Z_2 to 20 digits
        let r = q(1, 3);
        let t = PAdicNumber::from_truncated(2, rational_mod_pn(&r, 2, 20), 20, 0, None);
        let e = PAdicNumber::from_rational(2, r.clone());
        assert!(t.agrees_with(&e));
        let s = q(5, 8);
        let ts = t.mul_rational(&s);
        assert_eq!(ts.absolute_precision(), Some(17));
        assert!(ts.agrees_with(&e.mul_rational(&s)));
        assert_eq!(ts.frac_p().unwrap(), frac_p_rational(&(&r * &s), 2));
        let sum = ts.add_rational(&q(7, 2));
        assert!(sum.agrees_with(&PAdicNumber::from_rational(2, &r * &s + q(7, 2))));
    }

    #[test]
    fn multiplying_by_p_gains_precision() {
        let t = PAdicNumber::from_truncated(3, BigInt::from(7), 4, 0, None);
        let u = t.mul_rational(&q(9, 1));
        assert_eq!(u.absolute_precision(), Some(6));
        assert_eq!(u.valuation(), Some(2));
        let back = u.mul_rational(&q(1, 9));
        assert!(back.agrees_with(&t));
        assert_eq!(back.absolute_precision(), Some(4));
    }

    #[test]
    fn sourced_values_extend_on_division() {
        let src = DigitSource::Squares { seed: 1 };
        let x = PAdicNumber::from_source(2, src, 16);
        let y = x.mul_rational(&q(1, 8));
        assert_eq!(y.absolute_precision(), Some(16));
        assert_eq!(y.frac_p().unwrap(), Rational::new(src.residue(2, 3), 8));
        // no loss: the stream was extended by three digits first
        let z = y.mul_rational(&q(8, 1));
        assert_eq!(z.absolute_precision(), Some(19));
        assert!(z.agrees_with(&x));
    }
}
