use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Generalized binomial coefficient `x (x-1) ... (x-j+1) / j!`.
pub fn binom(x: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    let one = Rational::one();
    for i in 1..=j {
        acc = acc * &term / Rational::from(i);
        term -= &one;
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).map(Rational::from).product()
}

/// A polynomial over ℚ stored in the binomial basis, `P(x) = Σ c_j C(x, j)`.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients and `degree` is the index of the last stored coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinomPoly {
    coeffs: Vec<Rational>,
}

impl BinomPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        BinomPoly { coeffs }
    }

    pub fn zero() -> Self {
        BinomPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        BinomPoly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn identity() -> Self {
        BinomPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Builds the polynomial from power-basis coefficients `a_0 + a_1 x + ...`
    /// using Newton forward differences at `0, 1, ..., d`.
    pub fn from_power(power: &[Rational]) -> Self {
        let d = power.len();
        let mut values: Vec<Rational> = (0..d)
            .map(|n| {
                let x = Rational::from(n);
                power.iter().rev().fold(Rational::zero(), |acc, a| acc * &x + a)
            })
            .collect();
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        BinomPoly::new(coeffs)
    }

    /// Power-basis coefficients `a_0, a_1, ...` (trailing zeros trimmed).
    pub fn to_power(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        // falling factorial x(x-1)...(x-j+1), built incrementally
        let mut falling = vec![Rational::one()];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                let shift = Rational::from(j - 1);
                let mut next = vec![Rational::zero(); falling.len() + 1];
                for (i, f) in falling.iter().enumerate() {
                    next[i + 1] += f;
                    next[i] -= &(f * &shift);
                }
                falling = next;
            }
            if !c.is_zero() {
                let scale = c / factorial(j);
                for (i, f) in falling.iter().enumerate() {
                    out[i] += &(f * &scale);
                }
            }
        }
        while out.last().is_some_and(Rational::is_zero) {
            out.pop();
        }
        out
    }

    /// Leading coefficient in the power basis (`c_d / d!`).
    pub fn leading_power_coeff(&self) -> Rational {
        match self.coeffs.last() {
            Some(c) => c / factorial(self.degree()),
            None => Rational::zero(),
        }
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut b = Rational::one();
        let mut term = q.clone();
        let one = Rational::one();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                b = b * &term / Rational::from(j);
                term -= &one;
            }
            if !c.is_zero() {
                acc += &(c * &b);
            }
        }
        acc
    }

    /// `Q(x) = P(x + r) - P(x)`, via the Vandermonde identity
    /// `C(x+r, j) = Σ_i C(x, i) C(r, j-i)`.
    pub fn shift_diff(&self, r: &Rational) -> BinomPoly {
        let d = self.coeffs.len();
        let rb: Vec<Rational> = (0..d).map(|i| binom(r, i)).collect();
        let coeffs = (0..d)
            .map(|i| {
                let shifted: Rational = (i..d).map(|j| &self.coeffs[j] * &rb[j - i]).sum();
                shifted - &self.coeffs[i]
            })
            .collect();
        BinomPoly::new(coeffs)
    }

    /// The sequence `P_0 = P`, `P_j(x) = P_{j-1}(x+1) - P_{j-1}(x) - P_{j-1}(1)`,
    /// stopping at the linear member `P_{d-1}`.
    pub fn derived_sequence(&self) -> Result<Vec<BinomPoly>> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !self.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let d = self.degree();
        let one = Rational::one();
        let mut seq = vec![self.clone()];
        for _ in 1..d {
            let prev = seq.last().unwrap();
            let c = prev.eval(&one);
            let next = prev.shift_diff(&one) - BinomPoly::constant(c);
            seq.push(next);
        }
        let last = seq.last().unwrap();
        debug_assert_eq!(last.degree(), 1);
        debug_assert_eq!(
            last.to_power(),
            vec![Rational::zero(), factorial(d) * self.leading_power_coeff()]
        );
        Ok(seq)
    }

    pub fn scale(&self, s: &Rational) -> BinomPoly {
        BinomPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// True when every `c_j` is an integer, i.e. `P` maps ℤ into ℤ.
    pub fn is_integer_valued(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }
}

impl std::ops::Add for BinomPoly {
    type Output = BinomPoly;
    fn add(self, rhs: BinomPoly) -> BinomPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BinomPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl std::ops::Sub for BinomPoly {
    type Output = BinomPoly;
    fn sub(self, rhs: BinomPoly) -> BinomPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BinomPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl fmt::Debug for BinomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinomPoly{:?}", self.coeffs)
    }
}

/// Power-basis rendering, e.g. `x^2 + 3/2*x - 1`.
impl fmt::Display for BinomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = self.to_power();
        if power.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in power.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let coef = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                mag.to_string()
            };
            match (i, coef.as_str()) {
                (0, c) => write!(f, "{c}")?,
                (1, "1") => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                (_, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Parses a power-basis expression in `x`, such as `x^2`, `3/2*x^3 - x + 1`
/// or `2x^2+x`.
impl FromStr for BinomPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut power: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef, exp) = match body.find('x') {
                None => (body.parse::<Rational>()?, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() { Rational::one() } else { c.parse::<Rational>()? };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    (coef, exp)
                }
            };
            if power.len() <= exp {
                power.resize(exp + 1, Rational::zero());
            }
            let coef = if neg { -coef } else { coef };
            power[exp] += &coef;
        }
        Ok(BinomPoly::from_power(&power))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    basis: String,
    coeffs: Vec<Rational>,
}

impl Serialize for BinomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr { basis: "binomial".into(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinomPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        match r.basis.as_str() {
            "binomial" => Ok(BinomPoly::new(r.coeffs)),
            "power" => Ok(BinomPoly::from_power(&r.coeffs)),
            other => Err(serde::de::Error::custom(format!("unknown basis {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pw(cs: &[i64]) -> BinomPoly {
        BinomPoly::from_power(&cs.iter().map(|&c| Rational::from(c)).collect::<Vec<_>>())
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&Rational::from(5), 2), Rational::from(10));
        assert_eq!(binom(&q(7, 3), 0), Rational::one());
        assert_eq!(binom(&q(1, 2), 2), q(-1, 8));
    }

    #[test]
    fn eval_examples() {
        let x = BinomPoly::identity();
        assert_eq!(x.eval(&Rational::from(7)), Rational::from(7));
        let c2 = BinomPoly::new(vec![Rational::zero(), Rational::zero(), Rational::one()]);
        assert_eq!(c2.eval(&Rational::from(4)), Rational::from(6));
        let sq = BinomPoly::new(vec![Rational::zero(), Rational::one(), Rational::from(2)]);
        assert_eq!(sq.eval(&q(1, 2)), q(1, 4));
    }

    #[test]
    fn shift_diff_examples() {
        assert_eq!(pw(&[0, 0, 1]).shift_diff(&Rational::one()), pw(&[1, 2]));
        assert!(pw(&[3, 1, 4, 1]).shift_diff(&Rational::zero()).is_zero());
        assert_eq!(pw(&[0, 0, 0, 1]).shift_diff(&Rational::from(2)), pw(&[8, 12, 6]));
    }

    #[test]
    fn derived_sequence_examples() {
        let seq = pw(&[0, 0, 1]).derived_sequence().unwrap();
        assert_eq!(seq, vec![pw(&[0, 0, 1]), pw(&[0, 2])]);
        let seq = pw(&[0, 0, 0, 1]).derived_sequence().unwrap();
        assert_eq!(seq.last().unwrap(), &pw(&[0, 6]));
        assert_eq!(pw(&[0, 1]).derived_sequence().unwrap(), vec![pw(&[0, 1])]);
        assert_eq!(pw(&[5]).derived_sequence(), Err(Error::ConstantPolynomial));
        assert_eq!(pw(&[1, 1]).derived_sequence(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn basis_examples() {
        let sq = pw(&[0, 0, 1]);
        assert_eq!(sq.coeffs(), &[Rational::zero(), Rational::one(), Rational::from(2)]);
        assert_eq!(pw(&[1]).coeffs(), &[Rational::one()]);
        assert_eq!(sq.leading_power_coeff(), Rational::one());
    }

    #[test]
    fn parse_and_display() {
        let p: BinomPoly = "3/2*x^3 - x + 1".parse().unwrap();
        assert_eq!(p.to_power(), vec![Rational::one(), Rational::from(-1), Rational::zero(), q(3, 2)]);
        assert_eq!(p.to_string(), "3/2*x^3 - x + 1");
        let p: BinomPoly = "2x^2+x".parse().unwrap();
        assert_eq!(p.to_string(), "2*x^2 + x");
        assert_eq!("x^2".parse::<BinomPoly>().unwrap(), pw(&[0, 0, 1]));
        assert!("x^".parse::<BinomPoly>().is_err());
        assert!("".parse::<BinomPoly>().is_err());
    }

    #[test]
    fn serde_form() {
        let sq = pw(&[0, 0, 1]);
        let s = serde_json::to_string(&sq).unwrap();
        assert_eq!(s, r#"{"basis":"binomial","coeffs":["0/1","1/1","2/1"]}"#);
        let back: BinomPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sq);
        let p: BinomPoly = serde_json::from_str(r#"{"basis":"power","coeffs":["0/1","0/1","1/1"]}"#).unwrap();
        assert_eq!(p, sq);
    }
}
