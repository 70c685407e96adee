//! Finite Følner averages of orbit observables.
//!
//! Terms are evaluated in parallel but always summed over `Φ_N` in increasing
//! order, so results do not depend on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CharacterObservable, OrbitPoint, SkewSystem};
use crate::adele::{AdeleClassElement, CircleValue};
use crate::error::{Error, Result};
use crate::exactq::{BinomPoly, Rational};
use crate::folner::{enumerate, FolnerFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AverageMode {
    /// Rotate the base by `P(q) + q`.
    Sigma,
    /// Rotate the base by `P(q)`.
    Lambda,
}

fn mean(values: impl Iterator<Item = Complex64>, count: usize) -> Complex64 {
    let total: Complex64 = values.fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    total / count as f64
}

/// `(1/|Φ_N|) Σ_q f(T^q base) · g(R^{t(q)} π₁(base))`, with `t(q) = P(q) + q`
/// or `P(q)` according to `mode`, and `R` the rotation by `α` on the base.
#[allow(clippy::too_many_arguments)]
pub fn empirical_average(
    system: &SkewSystem,
    p: &BinomPoly,
    f: &CharacterObservable,
    g: &CharacterObservable,
    base: &OrbitPoint,
    family: FolnerFamily,
    n: u32,
    mode: AverageMode,
) -> Result<Complex64> {
    system.check_point(base)?;
    if g.w.len() != 1 {
        return Err(Error::InvalidInput("g must be a character of the base rotation".into()));
    }
    let phi = enumerate(family, n)?;
    let values = phi
        .par_iter()
        .map(|q| {
            let fv = if f.is_trivial() { CircleValue::one() } else { f.eval(&system.apply(q, base)?)? };
            let gv = if g.is_trivial() {
                CircleValue::one()
            } else {
                let mut t = p.eval(q);
                if mode == AverageMode::Sigma {
                    t += q;
                }
                g.eval_rows(&[system.rotate_base(&t, base.base())?])?
            };
            Ok((fv + gv).to_complex())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(mean(values.into_iter(), phi.len()))
}

/// `(1/|Φ_N|) Σ_q e_ℚ(Σ_j q^j β_j)` with `betas[j-1] = β_j`.
pub fn weyl_sum(betas: &[AdeleClassElement], family: FolnerFamily, n: u32) -> Result<Complex64> {
    if betas.is_empty() {
        return Err(Error::InvalidInput("need at least one β".into()));
    }
    let phi = enumerate(family, n)?;
    let values = phi
        .par_iter()
        .map(|q| {
            let mut acc = AdeleClassElement::zero();
            for (j, b) in betas.iter().enumerate() {
                if !b.is_zero() {
                    acc = acc.add(&b.scalar_mul(&q.pow(j as u32 + 1))?)?;
                }
            }
            Ok(acc.e_q().to_complex())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(mean(values.into_iter(), phi.len()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VdcReport {
    /// `|avg_{q ∈ Φ_N} u(q)|²`.
    pub mean_norm_sq: f64,
    /// `avg_{r ∈ Φ_R} |z(r)|` with `z(r) = avg_{q ∈ Φ_N} u(q + r) · conj(u(q))`.
    pub mean_abs_correlation: f64,
    pub n: u32,
    pub r: u32,
}

/// Both sides of the van der Corput comparison at finite `N` and `R`.
/// Nothing is asserted about them.
pub fn vdc_diagnostic<F>(u: F, family: FolnerFamily, n: u32, r: u32) -> Result<VdcReport>
where
    F: Fn(&Rational) -> Result<Complex64>,
{
    let phi = enumerate(family, n)?;
    let shifts = enumerate(family, r)?;
    let base: Vec<Complex64> = phi.iter().map(&u).collect::<Result<_>>()?;
    let avg = mean(base.iter().copied(), base.len());
    let mut total = 0.0;
    for s in &shifts {
        let z = mean(
            phi.iter().zip(&base).map(|(q, uq)| u(&(q + s)).map(|v| v * uq.conj())).collect::<Result<Vec<_>>>()?.into_iter(),
            phi.len(),
        );
        total += z.norm();
    }
    Ok(VdcReport { mean_norm_sq: avg.norm_sqr(), mean_abs_correlation: total / shifts.len() as f64, n, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn constant_observables_average_to_one() {
        let sys = SkewSystem::new(super::super::SkewVariant::QAdelic, 2, vec![AdeleClassElement::from_real(q(1, 7))]).unwrap();
        let base = sys.origin();
        for fam in [FolnerFamily::Harmonic, FolnerFamily::FactorialGrid] {
            for mode in [AverageMode::Sigma, AverageMode::Lambda] {
                let z = empirical_average(
                    &sys,
                    &BinomPoly::from_power(&[Rational::zero(), Rational::zero(), Rational::one()]),
                    &CharacterObservable::trivial(2, 1),
                    &CharacterObservable::trivial(1, 1),
                    &base,
                    fam,
                    3,
                    mode,
                )
                .unwrap();
                assert_eq!(z, Complex64::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn trivial_weyl_sums() {
        let zero = AdeleClassElement::zero();
        assert_eq!(weyl_sum(&[zero.clone(), zero], FolnerFamily::FactorialGrid, 3).unwrap(), Complex64::new(1.0, 0.0));
        let diag = AdeleClassElement::diagonal(&q(3, 7));
        assert_eq!(weyl_sum(&[diag], FolnerFamily::FactorialGrid, 3).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn weyl_matches_direct_sum() {
        // real-only β: e(q²β) is e^{2πi q² β} directly
        let beta = q(1, 7);
        let z = weyl_sum(&[AdeleClassElement::zero(), AdeleClassElement::from_real(beta.clone())], FolnerFamily::FactorialGrid, 3).unwrap();
        let mut re = 0.0;
        let mut im = 0.0;
        for k in -18i64..=18 {
            let x = (k * k) as f64 / 36.0 / 7.0;
            re += (2.0 * std::f64::consts::PI * x).cos();
            im += (2.0 * std::f64::consts::PI * x).sin();
        }
        assert!((z.re - re / 37.0).abs() < 1e-12 && (z.im - im / 37.0).abs() < 1e-12);
    }

    #[test]
    fn vdc_constant_and_alternating() {
        let one = vdc_diagnostic(|_| Ok(Complex64::new(1.0, 0.0)), FolnerFamily::FactorialGrid, 3, 2).unwrap();
        assert_eq!((one.mean_norm_sq, one.mean_abs_correlation), (1.0, 1.0));
        // ±1 by parity of the grid numerator k in q = k/6
        let alt = vdc_diagnostic(
            |t| {
                let k = (t * &q(6, 1)).floor();
                Ok(Complex64::new(if k.is_even() { 1.0 } else { -1.0 }, 0.0))
            },
            FolnerFamily::FactorialGrid,
            3,
            1,
        )
        .unwrap();
        assert!(alt.mean_norm_sq < 0.01);
    }
}
