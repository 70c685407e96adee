//! Concrete ℚ-systems on powers of 𝔸/ℚ: rotations, affine skew products
//! (the Abramov towers), the quadratic counterexample system and integer-time
//! torus skew products.
//!
//! A point of a system with tower height `k` over `V = (𝔸/ℚ)^l` is a `k × l`
//! array of classes.

mod averages;
mod boxes;
mod search;

pub use averages::{empirical_average, vdc_diagnostic, weyl_sum, AverageMode, VdcReport};
pub use boxes::{AngleInterval, ClassBox, OpenBox};
pub use search::{certify_chain, efs_search, efs_search_with_budget, remark_counterexample_check, EfsOutcome, RemarkReport, DEFAULT_NODE_BUDGET};

use serde::{Deserialize, Serialize};

use crate::adele::{AdeleClassElement, CircleValue};
use crate::error::{Error, Result};
use crate::exactq::{binom, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkewVariant {
    /// `S^q(v)_i = v_i + Σ_{j<i} C(q, i−j) v_j + C(q, i) α`, for `q ∈ ℚ`.
    QAdelic,
    /// `T^q(v)_i = Σ_{j=0}^{i} C(i, j) q^{i−j} v_j` with `v_0 = α`; for `k = 2`
    /// this is `(x, y) ↦ (x + qα, y + 2qx + q²α)`.
    Power,
    /// The `QAdelic` formula at integer times on real-only coordinates:
    /// `S(x_1, ..., x_d) = (x_1 + α, x_2 + x_1, ..., x_d + x_{d−1})`.
    ZTorus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewSystem {
    pub l: usize,
    pub k: usize,
    pub alpha: Vec<AdeleClassElement>,
    pub variant: SkewVariant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub coords: Vec<Vec<AdeleClassElement>>,
}

impl OrbitPoint {
    pub fn origin(k: usize, l: usize) -> Self {
        OrbitPoint { coords: vec![vec![AdeleClassElement::zero(); l]; k] }
    }

    pub fn add(&self, other: &OrbitPoint) -> Result<OrbitPoint> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitPoint { coords })
    }

    /// `π₁`: the first tower coordinate.
    pub fn base(&self) -> &[AdeleClassElement] {
        &self.coords[0]
    }
}

/// Classes of `(x, n, n, …)` with `n ∈ ℤ`, i.e. images of the real circle.
fn is_real_only(a: &AdeleClassElement) -> bool {
    a.parts().is_empty() && a.tail().is_integer()
}

fn add_scaled(acc: &mut [AdeleClassElement], v: &[AdeleClassElement], s: &Rational) -> Result<()> {
    if s.is_zero() {
        return Ok(());
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a = a.add(&x.scalar_mul(s)?)?;
    }
    Ok(())
}

impl SkewSystem {
    pub fn new(variant: SkewVariant, k: usize, alpha: Vec<AdeleClassElement>) -> Result<Self> {
        if k == 0 || alpha.is_empty() {
            return Err(Error::InvalidInput("need k ≥ 1 and l ≥ 1".into()));
        }
        if variant == SkewVariant::ZTorus && !alpha.iter().all(is_real_only) {
            return Err(Error::InvalidInput("torus systems take real-only α".into()));
        }
        Ok(SkewSystem { l: alpha.len(), k, alpha, variant })
    }

    /// The rotation `v ↦ v + qα` on `(𝔸/ℚ)^l`.
    pub fn rotation(alpha: Vec<AdeleClassElement>) -> Result<Self> {
        SkewSystem::new(SkewVariant::QAdelic, 1, alpha)
    }

    /// `T^q(x, y) = (x + qα, y + 2qx + q²α)` on `(𝔸/ℚ)²`.
    pub fn remark(alpha: AdeleClassElement) -> Result<Self> {
        SkewSystem::new(SkewVariant::Power, 2, vec![alpha])
    }

    pub fn origin(&self) -> OrbitPoint {
        OrbitPoint::origin(self.k, self.l)
    }

    pub fn check_point(&self, point: &OrbitPoint) -> Result<()> {
        if point.coords.len() != self.k || point.coords.iter().any(|c| c.len() != self.l) {
            return Err(Error::InvalidInput(format!("point is not {}×{}", self.k, self.l)));
        }
        if self.variant == SkewVariant::ZTorus && !point.coords.iter().flatten().all(is_real_only) {
            return Err(Error::InvalidInput("torus points are real-only".into()));
        }
        Ok(())
    }

    pub fn apply(&self, q: &Rational, point: &OrbitPoint) -> Result<OrbitPoint> {
        self.check_point(point)?;
        if self.variant == SkewVariant::ZTorus && !q.is_integer() {
            return Err(Error::NonIntegerTime(q.to_string()));
        }
        if q.is_zero() && self.variant != SkewVariant::ZTorus {
            return Ok(point.clone());
        }
        let v = &point.coords;
        let mut out = Vec::with_capacity(self.k);
        for i in 1..=self.k {
            let mut acc = v[i - 1].clone();
            match self.variant {
                SkewVariant::QAdelic | SkewVariant::ZTorus => {
                    for j in 1..i {
                        add_scaled(&mut acc, &v[j - 1], &binom(q, i - j))?;
                    }
                    add_scaled(&mut acc, &self.alpha, &binom(q, i))?;
                }
                SkewVariant::Power => {
                    let ii = Rational::from(i as u64);
                    for j in 1..i {
                        let c = binom(&ii, j) * q.pow((i - j) as u32);
                        add_scaled(&mut acc, &v[j - 1], &c)?;
                    }
                    add_scaled(&mut acc, &self.alpha, &q.pow(i as u32))?;
                }
            }
            if self.variant == SkewVariant::ZTorus {
                // drop the integer tail left by carries in the real angle
                acc = acc.iter().map(|x| AdeleClassElement::from_real(x.real_angle().clone())).collect();
            }
            out.push(acc);
        }
        Ok(OrbitPoint { coords: out })
    }

    /// `R^t z = z + tα` on the base `(𝔸/ℚ)^l`.
    pub fn rotate_base(&self, t: &Rational, z: &[AdeleClassElement]) -> Result<Vec<AdeleClassElement>> {
        let mut out = z.to_vec();
        add_scaled(&mut out, &self.alpha, t)?;
        Ok(out)
    }

    /// The derivative of a character along `S^q`.
    ///
    /// Returns the constant `e_ℚ(Σ_j C(q, j) w_j(α))` and the character `w'(q)`
    /// with `w'_i = Σ_{j>i} C(q, j−i) w_j`, after checking
    /// `g_w(S^q v) · conj(g_w(v)) = constant · g_{w'}(v)` at `point`.
    pub fn char_derivative_identity(
        &self,
        g: &CharacterObservable,
        q: &Rational,
        point: &OrbitPoint,
    ) -> Result<(CircleValue, CharacterObservable)> {
        if self.variant != SkewVariant::QAdelic {
            return Err(Error::PreconditionFailed("character derivative needs a QAdelic system".into()));
        }
        g.check_dims(self.k, self.l)?;
        let k = self.k;
        let mut c_angle = AdeleClassElement::zero();
        for j in 1..=k {
            let b = binom(q, j);
            if !b.is_zero() {
                c_angle = c_angle.add(&AdeleClassElement::pairing(&g.w[j - 1], &self.alpha)?.scalar_mul(&b)?)?;
            }
        }
        let constant = c_angle.e_q();
        let mut w_new = vec![vec![Rational::zero(); self.l]; k];
        for i in 1..=k {
            for j in (i + 1)..=k {
                let b = binom(q, j - i);
                for (t, wj) in w_new[i - 1].iter_mut().zip(&g.w[j - 1]) {
                    *t += &(&b * wj);
                }
            }
        }
        let derived = CharacterObservable { w: w_new };

        let lhs = &g.eval(&self.apply(q, point)?)? - &g.eval(point)?;
        let rhs = &constant + &derived.eval(point)?;
        if lhs != rhs {
            return Err(Error::IdentityViolated(format!("Δ_q g_w: {lhs} vs {rhs}")));
        }
        Ok((constant, derived))
    }
}

/// The character `g_w(v) = e_ℚ(Σ_i w_i · v_i)` of a `k × l` tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterObservable {
    pub w: Vec<Vec<Rational>>,
}

impl CharacterObservable {
    pub fn trivial(k: usize, l: usize) -> Self {
        CharacterObservable { w: vec![vec![Rational::zero(); l]; k] }
    }

    pub fn is_trivial(&self) -> bool {
        self.w.iter().flatten().all(Rational::is_zero)
    }

    fn check_dims(&self, k: usize, l: usize) -> Result<()> {
        if self.w.len() != k || self.w.iter().any(|r| r.len() != l) {
            return Err(Error::InvalidInput(format!("character is not {k}×{l}")));
        }
        Ok(())
    }

    pub fn eval(&self, point: &OrbitPoint) -> Result<CircleValue> {
        self.eval_rows(&point.coords)
    }

    /// Evaluation on the leading rows of `rows`.
    fn eval_rows(&self, rows: &[Vec<AdeleClassElement>]) -> Result<CircleValue> {
        let mut acc = CircleValue::one();
        for (wi, vi) in self.w.iter().zip(rows) {
            if wi.len() != vi.len() {
                return Err(Error::InvalidInput("character and point dimensions differ".into()));
            }
            acc = acc + AdeleClassElement::pairing(wi, vi)?.e_q();
        }
        Ok(acc)
    }
}

pub fn char_eval(g: &CharacterObservable, point: &OrbitPoint) -> Result<CircleValue> {
    g.eval(point)
}
