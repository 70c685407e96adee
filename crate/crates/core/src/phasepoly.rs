//! Polynomial phases `φ: ℚ → S¹` in tuple form.
//!
//! A phase of degree at most `k` is `φ(q) = c · e_ℚ(Σ_j a_j C(q, j))` with
//! `c ∈ S¹` and `a_1..a_k ∈ 𝔸/ℚ`, and this tuple is unique. Products of
//! phases correspond to componentwise addition of tuples.

use serde::{Deserialize, Serialize};

use crate::adele::{AdeleClassElement, CircleValue};
use crate::error::Result;
use crate::exactq::{binom, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePolynomial {
    c: CircleValue,
    coeffs: Vec<AdeleClassElement>,
}

fn trim(mut coeffs: Vec<AdeleClassElement>) -> Vec<AdeleClassElement> {
    while coeffs.last().is_some_and(AdeleClassElement::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl PhasePolynomial {
    /// `coeffs[j-1]` is `a_j`.
    pub fn new(c: CircleValue, coeffs: Vec<AdeleClassElement>) -> Self {
        PhasePolynomial { c, coeffs: trim(coeffs) }
    }

    pub fn trivial() -> Self {
        PhasePolynomial { c: CircleValue::one(), coeffs: Vec::new() }
    }

    pub fn constant(&self) -> &CircleValue {
        &self.c
    }

    pub fn coeffs(&self) -> &[AdeleClassElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.c.is_one() && self.coeffs.is_empty()
    }

    pub fn eval(&self, q: &Rational) -> Result<CircleValue> {
        let mut acc = self.c.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            let b = binom(q, i + 1);
            if !b.is_zero() {
                acc = acc + a.scalar_mul(&b)?.e_q();
            }
        }
        Ok(acc)
    }

    /// The multiplicative derivative `∂_q φ(t) = φ(t + q) · conj(φ(t))`.
    ///
    /// Its tuple is `(φ(q)·c̄, a'_1(q), ..., a'_{k-1}(q))` with
    /// `a'_i(q) = Σ_{j=i+1}^k C(q, j-i) a_j`. A constant phase has the
    /// trivial phase as its derivative.
    pub fn derivative(&self, q: &Rational) -> Result<PhasePolynomial> {
        let k = self.degree();
        let c = &self.eval(q)? - &self.c;
        let binoms: Vec<Rational> = (0..=k).map(|n| binom(q, n)).collect();
        let mut coeffs = Vec::with_capacity(k.saturating_sub(1));
        for i in 1..k {
            let mut acc = AdeleClassElement::zero();
            for j in (i + 1)..=k {
                let b = &binoms[j - i];
                if !b.is_zero() {
                    acc = acc.add(&self.coeffs[j - 1].scalar_mul(b)?)?;
                }
            }
            coeffs.push(acc);
        }
        Ok(PhasePolynomial::new(c, coeffs))
    }

    pub fn product(&self, other: &PhasePolynomial) -> Result<PhasePolynomial> {
        let n = self.degree().max(other.degree());
        let zero = AdeleClassElement::zero();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.add(b)?);
        }
        Ok(PhasePolynomial::new(&self.c + &other.c, coeffs))
    }

    pub fn inverse(&self) -> Result<PhasePolynomial> {
        let coeffs = self.coeffs.iter().map(AdeleClassElement::neg).collect::<Result<Vec<_>>>()?;
        Ok(PhasePolynomial::new(self.c.conj(), coeffs))
    }

    /// The multilinear form `D^k φ` for `k = deg φ`, generated by `a_k`.
    pub fn leading_coefficient(&self) -> MultilinearForm {
        MultilinearForm {
            arity: self.degree(),
            generator: self.coeffs.last().cloned().unwrap_or_else(AdeleClassElement::zero),
        }
    }
}

/// `η(q_1, ..., q_k) = e_ℚ(q_1 ⋯ q_k · α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultilinearForm {
    pub arity: usize,
    pub generator: AdeleClassElement,
}

impl MultilinearForm {
    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn eval(&self, qs: &[Rational]) -> Result<CircleValue> {
        assert_eq!(qs.len(), self.arity, "arity mismatch");
        let prod: Rational = qs.iter().cloned().product();
        Ok(self.generator.scalar_mul(&prod)?.e_q())
    }
}

/// `D^k f(q_1..q_k) = Σ_{J ⊆ [k]} (−1)^{k−|J|} f(Σ_{j∈J} q_j)` for an
/// arbitrary function `f: ℚ → S¹`, written additively in angles.
pub fn multilinearize_fn<F>(f: F, qs: &[Rational]) -> Result<CircleValue>
where
    F: Fn(&Rational) -> Result<CircleValue>,
{
    let k = qs.len();
    assert!(k < 32, "too many directions");
    let mut acc = CircleValue::one();
    for mask in 0u32..(1 << k) {
        let point: Rational = (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| &qs[j]).sum();
        let v = f(&point)?;
        if (k as u32 - mask.count_ones()) % 2 == 0 {
            acc = acc + v;
        } else {
            acc = acc - v;
        }
    }
    Ok(acc)
}

/// `D^k φ(q_1, ..., q_k)`; equals the `k`-fold iterated derivative of `φ` at 0.
pub fn multilinearize(phi: &PhasePolynomial, qs: &[Rational]) -> Result<CircleValue> {
    multilinearize_fn(|q| phi.eval(q), qs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn real(r: Rational) -> AdeleClassElement {
        AdeleClassElement::from_real(r)
    }

    #[test]
    fn eval_examples() {
        let phi = PhasePolynomial::new(CircleValue::new(q(1, 7)), vec![real(q(1, 3)), real(q(2, 5))]);
        assert_eq!(phi.eval(&Rational::zero()).unwrap(), CircleValue::new(q(1, 7)));

        let psi = PhasePolynomial::new(CircleValue::one(), vec![real(q(1, 3))]);
        assert_eq!(psi.eval(&q(2, 1)).unwrap().angle(), &q(2, 3));

        let id = phi.product(&phi.inverse().unwrap()).unwrap();
        assert!(id.is_trivial());
        assert!(id.eval(&q(5, 2)).unwrap().is_one());
    }

    #[test]
    fn derivative_examples() {
        let a1 = AdeleClassElement::generic_element(&[2, 3], 32, 1).unwrap();
        let lin = PhasePolynomial::new(CircleValue::one(), vec![a1.clone()]);
        let t = q(3, 4);
        let d = lin.derivative(&t).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.constant(), &a1.scalar_mul(&t).unwrap().e_q());

        let a2 = AdeleClassElement::generic_element(&[2, 3], 32, 2).unwrap();
        let quad = PhasePolynomial::new(CircleValue::one(), vec![AdeleClassElement::zero(), a2.clone()]);
        let d = quad.derivative(&t).unwrap();
        assert_eq!(d.constant(), &a2.scalar_mul(&binom(&t, 2)).unwrap().e_q());
        assert_eq!(d.coeffs(), &[a2.scalar_mul(&t).unwrap()]);

        assert!(quad.derivative(&Rational::zero()).unwrap().is_trivial());
        let constant = PhasePolynomial::new(CircleValue::new(q(1, 3)), vec![]);
        assert!(constant.derivative(&q(1, 2)).unwrap().is_trivial());
    }

    #[test]
    fn multilinear_examples() {
        let phi = PhasePolynomial::new(CircleValue::new(q(1, 9)), vec![real(q(1, 5)), real(q(1, 4))]);
        let x = q(3, 2);
        assert_eq!(
            multilinearize(&phi, &[x.clone()]).unwrap(),
            &phi.eval(&x).unwrap() - &phi.eval(&Rational::zero()).unwrap()
        );
        assert!(multilinearize(&phi, &[q(2, 3), Rational::zero()]).unwrap().is_one());
        assert!(multilinearize(&phi, &[q(1, 3), q(2, 7), q(5, 2)]).unwrap().is_one());

        let two = PhasePolynomial::new(CircleValue::one(), vec![AdeleClassElement::zero(), real(q(1, 4))]);
        assert_eq!(multilinearize(&two, &[q(1, 1), q(1, 1)]).unwrap().angle(), &q(1, 4));
        let form = two.leading_coefficient();
        assert_eq!(form.eval(&[q(1, 1), q(1, 1)]).unwrap().angle(), &q(1, 4));
    }

    #[test]
    fn zero_leading_coefficient() {
        let phi = PhasePolynomial::new(CircleValue::one(), vec![real(q(1, 3)), AdeleClassElement::zero()]);
        assert_eq!(phi.degree(), 1);
        assert!(PhasePolynomial::trivial().leading_coefficient().is_zero());
    }

    #[test]
    fn json_form() {
        let phi = PhasePolynomial::new(CircleValue::new(q(1, 2)), vec![real(q(1, 3))]);
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"{"c":"1/2","coeffs":[{"real":"1/3","padic":{}}]}"#);
        let back: PhasePolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
    }
}
