//! The measure-theoretic ordered Ramsey inequality on finite probability spaces.

use serde::{Deserialize, Serialize};

use super::ordered::{ordered_ramsey_number, OrderedHypergraph, RamseyOutcome};
use crate::error::{Error, Result};
use crate::exactq::{binom, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteProbabilitySpace {
    weights: Vec<Rational>,
}

impl FiniteProbabilitySpace {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(Rational::is_negative) {
            return Err(Error::InvalidInput("weights must be nonnegative and nonempty".into()));
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::one() {
            return Err(Error::InvalidInput(format!("weights sum to {total}")));
        }
        Ok(FiniteProbabilitySpace { weights })
    }

    pub fn uniform(n: usize) -> Self {
        FiniteProbabilitySpace { weights: vec![Rational::new(1, n as i64); n] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// A function `X^l → ℚ`, stored with the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub l: usize,
    pub values: Vec<Rational>,
}

impl Table {
    pub fn from_fn(size: usize, l: usize, f: impl Fn(&[usize]) -> Rational) -> Self {
        let values = tuples(size, l).iter().map(|t| f(t)).collect();
        Table { l, values }
    }

    fn at(&self, size: usize, idx: impl Iterator<Item = usize>) -> &Rational {
        &self.values[idx.fold(0, |acc, i| acc * size + i)]
    }
}

fn tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

fn check_partition(space: &FiniteProbabilitySpace, phis: &[Table], l: usize) -> Result<()> {
    let n = space.len();
    for phi in phis {
        if phi.l != l || phi.values.len() != n.pow(l as u32) {
            return Err(Error::InvalidInput(format!("tables must be indexed by X^{l}")));
        }
        if let Some(v) = phi.values.iter().find(|v| v.is_negative() || **v > Rational::one()) {
            return Err(Error::InvalidInput(format!("table value {v} outside [0, 1]")));
        }
    }
    for (i, t) in tuples(n, l).iter().enumerate() {
        let s: Rational = phis.iter().map(|p| &p.values[i]).sum();
        if s != Rational::one() {
            return Err(Error::PartitionOfUnityViolated(format!("{t:?} (sum {s})")));
        }
    }
    Ok(())
}

/// `Σ_k ∫_{X^m} Π_{e ∈ E(H)} φ_k((x_j)_{j ∈ e}) dμ^m`, exactly.
pub fn measure_ramsey_lhs(space: &FiniteProbabilitySpace, phis: &[Table], h: &OrderedHypergraph) -> Result<Rational> {
    if phis.is_empty() {
        return Err(Error::InvalidInput("need at least one function".into()));
    }
    check_partition(space, phis, h.l())?;
    let n = space.len();
    let mut total = Rational::zero();
    for x in tuples(n, h.m()) {
        let mu: Rational = x.iter().map(|&i| space.weights()[i].clone()).product();
        if mu.is_zero() {
            continue;
        }
        for phi in phis {
            let mut prod = mu.clone();
            for e in h.edges() {
                let v = phi.at(n, e.iter().map(|&j| x[j - 1]));
                if v.is_zero() {
                    prod = Rational::zero();
                    break;
                }
                prod *= v;
            }
            total += &prod;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureRamseyReport {
    pub lhs: Rational,
    /// `1 / C(R_<(H, r), m)`, absent when the Ramsey number is above the cap.
    pub rhs: Option<Rational>,
    pub ramsey: RamseyOutcome,
    /// `None` when no bound could be computed.
    pub passed: Option<bool>,
}

pub fn measure_ramsey_bound_check(
    space: &FiniteProbabilitySpace,
    phis: &[Table],
    h: &OrderedHypergraph,
    cap: usize,
) -> Result<MeasureRamseyReport> {
    let r = u8::try_from(phis.len()).map_err(|_| Error::InvalidInput("too many colors".into()))?;
    let ramsey = ordered_ramsey_number(h, r, cap)?;
    measure_ramsey_bound_check_with(space, phis, h, ramsey)
}

/// As [`measure_ramsey_bound_check`], with a precomputed Ramsey number.
pub fn measure_ramsey_bound_check_with(
    space: &FiniteProbabilitySpace,
    phis: &[Table],
    h: &OrderedHypergraph,
    ramsey: RamseyOutcome,
) -> Result<MeasureRamseyReport> {
    let lhs = measure_ramsey_lhs(space, phis, h)?;
    let rhs = match ramsey {
        RamseyOutcome::Exact { n } => Some(binom(&Rational::from(n), h.m()).recip()),
        RamseyOutcome::AboveCap { .. } => None,
    };
    let passed = rhs.as_ref().map(|b| lhs >= *b);
    Ok(MeasureRamseyReport { lhs, rhs, ramsey, passed })
}
