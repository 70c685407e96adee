//! Finite-depth search for progression chains and the exhaustive check of the
//! quadratic counterexample system.

use std::cell::RefCell;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClassBox, OpenBox, OrbitPoint, SkewSystem};
use crate::adele::AdeleClassElement;
use crate::error::{Error, Result};
use crate::exactq::{BinomPoly, Rational};
use crate::folner::{enumerate, FolnerFamily};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EfsOutcome {
    /// Distinct times `s_1..s_m` with `T^{s_i} x₀ ∈ U` and
    /// `T^{P(s_i) + s_j} x₀ ∈ V` for all `i < j`, re-verified exactly.
    Found { chain: Vec<Rational> },
    NotFound { nodes: u64, budget_hit: bool },
}

/// Verifies a chain from scratch, without any cached membership.
pub fn certify_chain(
    system: &SkewSystem,
    x0: &OrbitPoint,
    p: &BinomPoly,
    u: &OpenBox,
    v: &OpenBox,
    chain: &[Rational],
) -> Result<bool> {
    for (i, s) in chain.iter().enumerate() {
        if chain[..i].contains(s) || !u.contains(&system.apply(s, x0)?)? {
            return Ok(false);
        }
    }
    for i in 0..chain.len() {
        let ps = p.eval(&chain[i]);
        for sj in &chain[i + 1..] {
            if !v.contains(&system.apply(&(&ps + sj), x0)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
pub fn efs_search(
    system: &SkewSystem,
    x0: &OrbitPoint,
    p: &BinomPoly,
    u: &OpenBox,
    v: &OpenBox,
    m: usize,
    family: FolnerFamily,
    n: u32,
) -> Result<EfsOutcome> {
    efs_search_with_budget(system, x0, p, u, v, m, family, n, DEFAULT_NODE_BUDGET)
}

/// Depth-first search over `Φ_N` (in increasing order) for a chain of length
/// `m`. Each candidate extension tried counts as one node.
#[allow(clippy::too_many_arguments)]
pub fn efs_search_with_budget(
    system: &SkewSystem,
    x0: &OrbitPoint,
    p: &BinomPoly,
    u: &OpenBox,
    v: &OpenBox,
    m: usize,
    family: FolnerFamily,
    n: u32,
    budget: u64,
) -> Result<EfsOutcome> {
    if m == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    system.check_point(x0)?;
    let phi = enumerate(family, n)?;
    let flags = phi.par_iter().map(|q| u.contains(&system.apply(q, x0)?)).collect::<Result<Vec<bool>>>()?;
    let cands: Vec<Rational> = phi.into_iter().zip(flags).filter_map(|(q, f)| f.then_some(q)).collect();
    let in_v: RefCell<HashMap<Rational, bool>> = RefCell::new(HashMap::new());
    let member = |t: Rational| -> Result<bool> {
        if let Some(&b) = in_v.borrow().get(&t) {
            return Ok(b);
        }
        let b = v.contains(&system.apply(&t, x0)?)?;
        in_v.borrow_mut().insert(t, b);
        Ok(b)
    };

    struct Dfs<'a, F> {
        cands: &'a [Rational],
        p: &'a BinomPoly,
        member: F,
        m: usize,
        nodes: u64,
        budget: u64,
        chain: Vec<usize>,
        p_values: Vec<Rational>,
    }

    impl<F: Fn(Rational) -> Result<bool>> Dfs<'_, F> {
        /// `Ok(true)` once the chain is complete; `Ok(false)` when exhausted.
        fn run(&mut self) -> Result<bool> {
            if self.chain.len() == self.m {
                return Ok(true);
            }
            for idx in 0..self.cands.len() {
                if self.chain.contains(&idx) {
                    continue;
                }
                if self.nodes >= self.budget {
                    return Ok(false);
                }
                self.nodes += 1;
                let s = &self.cands[idx];
                let mut ok = true;
                for ps in &self.p_values {
                    if !(self.member)(ps + s)? {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                self.chain.push(idx);
                self.p_values.push(self.p.eval(s));
                if self.run()? {
                    return Ok(true);
                }
                self.chain.pop();
                self.p_values.pop();
            }
            Ok(false)
        }
    }

    let mut dfs = Dfs { cands: &cands, p, member, m, nodes: 0, budget, chain: Vec::new(), p_values: Vec::new() };
    if dfs.run()? {
        let chain: Vec<Rational> = dfs.chain.iter().map(|&i| cands[i].clone()).collect();
        if !certify_chain(system, x0, p, u, v, &chain)? {
            return Err(Error::IdentityViolated("search produced an uncertified chain".into()));
        }
        return Ok(EfsOutcome::Found { chain });
    }
    Ok(EfsOutcome::NotFound { nodes: dfs.nodes, budget_hit: dfs.nodes >= budget })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemarkReport {
    /// Size of `A = {q ∈ Φ_N : qα ∈ U, q²α ∈ V}`.
    pub a_size: usize,
    pub pairs_checked: usize,
    /// Pairs `(b₁, b₂)` of `A` with `b₁² + b₂ ∈ A`; empty when the check passes.
    pub violations: Vec<(Rational, Rational)>,
    pub passed: bool,
}

/// Exhaustively checks `b₁² + b₂ ∉ A` for all `b₁, b₂ ∈ A ∩ Φ_N`, where
/// membership of `b₁² + b₂` is tested in all of ℚ.
pub fn remark_counterexample_check(
    alpha: &AdeleClassElement,
    u: &ClassBox,
    v: &ClassBox,
    family: FolnerFamily,
    n: u32,
) -> Result<RemarkReport> {
    if !v.sum_disjoint_from(u, u) {
        return Err(Error::PreconditionFailed("could not certify (V + U) ∩ U = ∅".into()));
    }
    let in_a = |q: &Rational| -> Result<bool> {
        Ok(u.contains(&alpha.scalar_mul(q)?)? && v.contains(&alpha.scalar_mul(&q.pow(2))?)?)
    };
    let phi = enumerate(family, n)?;
    let flags = phi.par_iter().map(in_a).collect::<Result<Vec<bool>>>()?;
    let a: Vec<Rational> = phi.into_iter().zip(flags).filter_map(|(q, f)| f.then_some(q)).collect();
    let rows = a
        .par_iter()
        .map(|b1| {
            let sq = b1.pow(2);
            let mut hits = Vec::new();
            for b2 in &a {
                if in_a(&(&sq + b2))? {
                    hits.push((b1.clone(), b2.clone()));
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<(Rational, Rational)> = rows.into_iter().flatten().collect();
    Ok(RemarkReport {
        a_size: a.len(),
        pairs_checked: a.len() * a.len(),
        passed: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn square() -> BinomPoly {
        BinomPoly::from_power(&[Rational::zero(), Rational::zero(), Rational::one()])
    }

    #[test]
    fn whole_space_chain() {
        let sys = SkewSystem::rotation(vec![AdeleClassElement::from_real(q(1, 7))]).unwrap();
        let out = efs_search(&sys, &sys.origin(), &square(), &OpenBox::whole(), &OpenBox::whole(), 3, FolnerFamily::FactorialGrid, 2)
            .unwrap();
        let EfsOutcome::Found { chain } = out else { panic!("expected a chain") };
        assert_eq!(chain.len(), 3);
    }

    #[test]
    fn rotation_chain_matches_scan() {
        let alpha = AdeleClassElement::generic_element(&[2, 3], 32, 1).unwrap();
        let sys = SkewSystem::rotation(vec![alpha]).unwrap();
        let x0 = OrbitPoint { coords: vec![vec![AdeleClassElement::generic_element(&[5], 32, 2).unwrap()]] };
        let half = OpenBox::new(vec![ClassBox::arc(q(0, 1), q(1, 2)).unwrap()]);
        let out = efs_search(&sys, &x0, &square(), &half, &half, 3, FolnerFamily::FactorialGrid, 3).unwrap();
        let EfsOutcome::Found { chain } = out else { panic!("expected a chain") };
        assert!(certify_chain(&sys, &x0, &square(), &half, &half, &chain).unwrap());
    }

    #[test]
    fn remark_preconditions() {
        let alpha = AdeleClassElement::generic_element(&[2, 3, 5], 64, 1).unwrap();
        let whole = ClassBox::whole();
        assert!(matches!(
            remark_counterexample_check(&alpha, &whole, &whole, FolnerFamily::FactorialGrid, 2),
            Err(Error::PreconditionFailed(_))
        ));
        let u = ClassBox::arc(q(0, 1), q(1, 8)).unwrap();
        let v = ClassBox::arc(q(1, 2), q(5, 8)).unwrap();
        let small = remark_counterexample_check(&alpha, &u, &v, FolnerFamily::FactorialGrid, 1).unwrap();
        assert!(small.passed);
        let r = remark_counterexample_check(&alpha, &u, &v, FolnerFamily::FactorialGrid, 4).unwrap();
        assert!(r.passed && r.violations.is_empty());
    }
}
