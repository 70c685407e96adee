//! Finite constructions of `{b_i² + b_j : i < j}` inside a piecewise syndetic
//! set, and Δ-set search.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::Rational;

pub const DEFAULT_PREFIX_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SumsetOutcome {
    /// `b_i² + b_j + t ∈ A` for all `i < j`, re-verified.
    Found { b: Vec<u64>, t: u32, prefix: Vec<u64> },
    Exhausted { prefix: Vec<u64> },
}

/// `χ({i, j}) = min{t ≤ k : c_i² + c_j + t ∈ A}`.
fn min_shift(a: &impl Fn(u64) -> bool, x: u64, k: u32) -> Option<u32> {
    (0..=k).find(|&t| a(x + t as u64))
}

/// First index set (lexicographically) of size `m` with all pairs of
/// color `color`, by exhaustive search.
fn mono_subset(colors: &[Vec<Option<u32>>], m: usize, color: u32) -> Option<Vec<usize>> {
    fn rec(start: usize, colors: &[Vec<Option<u32>>], m: usize, c: u32, cur: &mut Vec<usize>) -> bool {
        if cur.len() == m {
            return true;
        }
        for v in start..colors.len() {
            if colors.len() - v < m - cur.len() {
                break;
            }
            if cur.iter().all(|&u| colors[u][v] == Some(c)) {
                cur.push(v);
                if rec(v + 1, colors, m, c, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::with_capacity(m);
    rec(0, colors, m, color, &mut cur).then_some(cur)
}

/// Greedy extraction for large `m`: repeatedly keep the next index joined
/// in color `color` to everything kept so far.
fn greedy_mono(colors: &[Vec<Option<u32>>], m: usize, color: u32) -> Option<Vec<usize>> {
    let mut kept: Vec<usize> = Vec::new();
    for v in 0..colors.len() {
        if kept.iter().all(|&u| colors[u][v] == Some(color)) {
            kept.push(v);
            if kept.len() == m {
                return Some(kept);
            }
        }
    }
    None
}

/// Builds `c_1 = 1 < c_2 < …` with `c_{n+1} + c_i² ∈ T = A ∪ (A−1) ∪ … ∪ (A−k)`
/// for all `i ≤ n`, colors pairs by the least shift, and looks for an
/// `m`-element monochromatic subset after each new `c_n`.
///
/// All membership queries stay below `horizon`. The prefix is capped at
/// `prefix_cap` terms; subsets are searched exhaustively for `m ≤ 6`.
pub fn greedy_sumset_builder(
    a: impl Fn(u64) -> bool,
    horizon: u64,
    k: u32,
    m: usize,
    prefix_cap: usize,
) -> Result<SumsetOutcome> {
    if m < 2 {
        return Err(Error::InvalidInput("need m ≥ 2".into()));
    }
    let in_t = |x: u64| min_shift(&a, x, k).is_some();
    let mut c: Vec<u64> = Vec::new();
    let mut colors: Vec<Vec<Option<u32>>> = Vec::new();
    let mut next = 1u64;
    while c.len() < prefix_cap {
        let mut cand = next;
        let found = loop {
            let reach = c.iter().map(|&ci| ci * ci).max().unwrap_or(0) + cand + k as u64;
            if reach >= horizon {
                break None;
            }
            if c.iter().all(|&ci| in_t(ci * ci + cand)) {
                break Some(cand);
            }
            cand += 1;
        };
        let Some(cn) = found else {
            return Ok(SumsetOutcome::Exhausted { prefix: c });
        };
        for (i, row) in colors.iter_mut().enumerate() {
            row.push(min_shift(&a, c[i] * c[i] + cn, k));
        }
        c.push(cn);
        colors.push(vec![None; c.len()]);
        for row in colors.iter_mut() {
            row.resize(c.len(), None);
        }
        next = cn + 1;
        if c.len() < m {
            continue;
        }
        for t in 0..=k {
            let pick = if m <= 6 { mono_subset(&colors, m, t) } else { greedy_mono(&colors, m, t) };
            if let Some(idx) = pick {
                let b: Vec<u64> = idx.iter().map(|&i| c[i]).collect();
                if !verify_sumset(&a, &b, t) {
                    return Err(Error::IdentityViolated("builder output failed re-verification".into()));
                }
                return Ok(SumsetOutcome::Found { b, t, prefix: c });
            }
        }
    }
    Ok(SumsetOutcome::Exhausted { prefix: c })
}

/// `b_i² + b_j + t ∈ A` for every `i < j`.
pub fn verify_sumset(a: &impl Fn(u64) -> bool, b: &[u64], t: u32) -> bool {
    (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| a(b[i] * b[i] + b[j] + t as u64)))
}

pub fn is_delta_set(a: &BTreeSet<Rational>, b: &[Rational]) -> bool {
    (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| b[j] > b[i] && a.contains(&(&b[j] - &b[i]))))
}

/// First `b_1 < … < b_size` from `grid` (in increasing order, depth first)
/// with every difference `b_j − b_i`, `i < j`, in `a`.
pub fn delta_set_search(
    a: &BTreeSet<Rational>,
    size: usize,
    grid: &[Rational],
    budget: u64,
) -> Result<Option<Vec<Rational>>> {
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    let grid: Vec<Rational> = grid.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut nodes = 0u64;

    fn rec(
        start: usize,
        grid: &[Rational],
        a: &BTreeSet<Rational>,
        size: usize,
        cur: &mut Vec<Rational>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if cur.len() == size {
            return Ok(true);
        }
        for v in start..grid.len() {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Budget(budget));
            }
            if cur.iter().all(|u| a.contains(&(&grid[v] - u))) {
                cur.push(grid[v].clone());
                if rec(v + 1, grid, a, size, cur, nodes, budget)? {
                    return Ok(true);
                }
                cur.pop();
            }
        }
        Ok(false)
    }

    let mut cur = Vec::with_capacity(size);
    Ok(rec(0, &grid, a, size, &mut cur, &mut nodes, budget)?.then_some(cur))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn builder_examples() {
        let evens = |x: u64| x % 2 == 0;
        let SumsetOutcome::Found { b, t, .. } = greedy_sumset_builder(evens, 10_000, 1, 3, DEFAULT_PREFIX_CAP).unwrap() else {
            panic!("expected a set")
        };
        assert!(verify_sumset(&evens, &b, t));

        let all = |_: u64| true;
        let out = greedy_sumset_builder(all, 10_000, 0, 4, DEFAULT_PREFIX_CAP).unwrap();
        assert_eq!(out, SumsetOutcome::Found { b: vec![1, 2, 3, 4], t: 0, prefix: vec![1, 2, 3, 4] });

        let small = |x: u64| x <= 10;
        assert!(matches!(
            greedy_sumset_builder(small, 1000, 0, 4, DEFAULT_PREFIX_CAP).unwrap(),
            SumsetOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn delta_examples() {
        let a: BTreeSet<Rational> = ints(&[1, 2, 3]).into_iter().collect();
        let grid = ints(&[0, 1, 2, 3]);
        let b = delta_set_search(&a, 3, &grid, 10_000).unwrap().unwrap();
        assert_eq!(b, ints(&[0, 1, 2]));
        assert!(is_delta_set(&a, &b) && is_delta_set(&a, &ints(&[0, 1, 3])));

        let one: BTreeSet<Rational> = ints(&[1]).into_iter().collect();
        assert_eq!(delta_set_search(&one, 3, &ints(&[0, 1, 2, 3, 4, 5]), 10_000).unwrap(), None);
        assert_eq!(delta_set_search(&one, 2, &grid, 10_000).unwrap(), Some(ints(&[0, 1])));
        assert!(matches!(delta_set_search(&a, 3, &grid, 2), Err(Error::Budget(2))));
    }
}
