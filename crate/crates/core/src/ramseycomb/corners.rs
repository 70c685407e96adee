//! Functional corner counts on `(ℤ/n)²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::Rational;

/// `F: (ℤ/n)² → [0, 1]`, stored row-major: `f[x·n + y] = F(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornersInstance {
    n: usize,
    f: Vec<Rational>,
}

impl CornersInstance {
    pub fn new(n: usize, f: Vec<Rational>) -> Result<Self> {
        if n == 0 || f.len() != n * n {
            return Err(Error::InvalidInput(format!("need n ≥ 1 and n² = {} values", n * n)));
        }
        if let Some(v) = f.iter().find(|v| v.is_negative() || **v > Rational::one()) {
            return Err(Error::InvalidInput(format!("value {v} outside [0, 1]")));
        }
        Ok(CornersInstance { n, f })
    }

    pub fn from_fn(n: usize, g: impl Fn(usize, usize) -> Rational) -> Result<Self> {
        CornersInstance::new(n, (0..n * n).map(|i| g(i / n, i % n)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, x: usize, y: usize) -> &Rational {
        &self.f[(x % self.n) * self.n + y % self.n]
    }

    pub fn mean(&self) -> Rational {
        self.f.iter().sum::<Rational>() / Rational::from(self.f.len())
    }
}

/// `(1/n³) Σ_{x,y,t} F(x,y) F(x+t,y) F(x,y+t)`, exactly.
pub fn corners_count(inst: &CornersInstance) -> Rational {
    let n = inst.n;
    let mut total = Rational::zero();
    for x in 0..n {
        for y in 0..n {
            let a = inst.at(x, y);
            if a.is_zero() {
                continue;
            }
            for t in 0..n {
                let b = inst.at(x + t, y);
                let c = inst.at(x, y + t);
                if !b.is_zero() && !c.is_zero() {
                    total += &(a * b * c);
                }
            }
        }
    }
    total / Rational::from(n * n * n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkovReport {
    pub epsilon: Rational,
    pub mean: Rational,
    /// Density of `E = {F ≥ ε/2}`.
    pub level_density: Rational,
    pub corners_f: Rational,
    pub corners_level: Rational,
    /// `density(E) ≥ ε/2`.
    pub density_ok: bool,
    /// `corners(F) ≥ (ε/2)³ · corners(1_E)`.
    pub corners_ok: bool,
}

impl MarkovReport {
    pub fn passed(&self) -> bool {
        self.density_ok && self.corners_ok
    }
}

pub fn markov_level_set(inst: &CornersInstance, epsilon: &Rational) -> Result<MarkovReport> {
    let mean = inst.mean();
    if mean < *epsilon {
        return Err(Error::MeanTooSmall { mean: mean.to_string(), epsilon: epsilon.to_string() });
    }
    let half = epsilon / &Rational::from(2);
    let level = CornersInstance {
        n: inst.n,
        f: inst.f.iter().map(|v| Rational::from(u32::from(*v >= half))).collect(),
    };
    let level_density = level.mean();
    let corners_f = corners_count(inst);
    let corners_level = corners_count(&level);
    Ok(MarkovReport {
        density_ok: level_density >= half,
        corners_ok: corners_f >= half.pow(3) * &corners_level,
        epsilon: epsilon.clone(),
        mean,
        level_density,
        corners_f,
        corners_level,
    })
}
