//! Ordered hypergraphs and exhaustive ordered Ramsey numbers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `l`-uniform hypergraph on the ordered vertex set `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct OrderedHypergraph {
    m: usize,
    l: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    m: usize,
    l: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for OrderedHypergraph {
    type Error = Error;
    fn try_from(r: RawHypergraph) -> Result<Self> {
        OrderedHypergraph::new(r.m, r.l, r.edges)
    }
}

impl OrderedHypergraph {
    /// Edges are sorted internally; duplicates and out-of-range vertices are rejected.
    pub fn new(m: usize, l: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if l == 0 || l > m {
            return Err(Error::InvalidInput(format!("need 1 ≤ l ≤ m, got l = {l}, m = {m}")));
        }
        let mut clean: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.len() != l || e.iter().any(|&v| v == 0 || v > m) {
                return Err(Error::InvalidInput(format!("bad edge {e:?}")));
            }
            if clean.contains(&e) {
                return Err(Error::InvalidInput(format!("repeated edge {e:?}")));
            }
            clean.push(e);
        }
        Ok(OrderedHypergraph { m, l, edges: clean })
    }

    /// The monotone path `1 − 2 − … − m`.
    pub fn monotone_path(m: usize) -> Self {
        OrderedHypergraph::new(m, 2, (1..m).map(|i| vec![i, i + 1]).collect()).expect("valid path")
    }

    pub fn single_edge(l: usize) -> Self {
        OrderedHypergraph::new(l, l, vec![(1..=l).collect()]).expect("valid edge")
    }

    /// `d`-uniform on `2d − 1` vertices with edges `{1..d}` and `{d..2d−1}`.
    pub fn efs(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput("need d ≥ 2".into()));
        }
        OrderedHypergraph::new(2 * d - 1, d, vec![(1..=d).collect(), (d..=2 * d - 1).collect()])
    }

    pub fn complete(m: usize, l: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for_each_subset(m, l, |s| edges.push(s.iter().map(|v| v + 1).collect()));
        OrderedHypergraph::new(m, l, edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// Calls `f` on every increasing `k`-subset of `0..n`, lexicographically.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f);
}

/// A coloring of the edges of the complete `l`-uniform hypergraph on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring")]
pub struct EdgeColoring {
    n: usize,
    l: usize,
    /// Colors of the edges in lexicographic order.
    colors: Vec<u8>,
    #[serde(skip)]
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Deserialize)]
struct RawColoring {
    n: usize,
    l: usize,
    colors: Vec<u8>,
}

impl TryFrom<RawColoring> for EdgeColoring {
    type Error = Error;
    fn try_from(r: RawColoring) -> Result<Self> {
        EdgeColoring::new(r.n, r.l, r.colors)
    }
}

impl EdgeColoring {
    pub fn edges_of(n: usize, l: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_subset(n, l, |s| out.push(s.iter().map(|v| v + 1).collect()));
        out
    }

    pub fn new(n: usize, l: usize, colors: Vec<u8>) -> Result<Self> {
        let edges = Self::edges_of(n, l);
        if edges.len() != colors.len() {
            return Err(Error::InvalidInput(format!("expected {} edge colors, got {}", edges.len(), colors.len())));
        }
        let index = edges.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(EdgeColoring { n, l, colors, index })
    }

    pub fn from_fn(n: usize, l: usize, f: impl Fn(&[usize]) -> u8) -> Self {
        let colors = Self::edges_of(n, l).iter().map(|e| f(e)).collect();
        EdgeColoring::new(n, l, colors).expect("lengths agree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Color of a sorted edge with vertices in `1..=n`.
    pub fn color(&self, edge: &[usize]) -> u8 {
        self.colors[self.index[edge]]
    }
}

/// Whether some strictly increasing `f: [m] → [n]` maps every edge of `h`
/// to an edge of color `color`.
pub fn contains_ordered_copy(coloring: &EdgeColoring, h: &OrderedHypergraph, color: u8) -> bool {
    assert_eq!(coloring.l, h.l, "uniformity mismatch");
    if coloring.n < h.m {
        return false;
    }
    let mut found = false;
    for_each_subset(coloring.n, h.m, |f| {
        if found {
            return;
        }
        found = h.edges.iter().all(|e| {
            let img: Vec<usize> = e.iter().map(|&v| f[v - 1] + 1).collect();
            coloring.color(&img) == color
        });
    });
    found
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RamseyOutcome {
    Exact { n: usize },
    AboveCap { cap: usize },
}

pub const DEFAULT_RAMSEY_BUDGET: u64 = 50_000_000;

pub fn ordered_ramsey_number(h: &OrderedHypergraph, r: u8, cap: usize) -> Result<RamseyOutcome> {
    ordered_ramsey_number_with_budget(h, r, cap, DEFAULT_RAMSEY_BUDGET)
}

/// Smallest `n ≤ cap` such that every `r`-coloring of `K_n^{(l)}` has a
/// monochromatic ordered copy of `h`.
///
/// For each `n`, colors are assigned to edges in lexicographic order with
/// the first edge fixed to color 0; a branch is cut as soon as the edge just
/// colored completes a monochromatic copy.
pub fn ordered_ramsey_number_with_budget(h: &OrderedHypergraph, r: u8, cap: usize, budget: u64) -> Result<RamseyOutcome> {
    if r == 0 {
        return Err(Error::InvalidInput("need at least one color".into()));
    }
    if h.edges.is_empty() {
        // with no edges every map is a copy
        return Ok(if h.m <= cap { RamseyOutcome::Exact { n: h.m } } else { RamseyOutcome::AboveCap { cap } });
    }
    let mut nodes = 0u64;
    for n in h.m..=cap {
        if !has_avoiding_coloring(h, r, n, budget, &mut nodes)? {
            return Ok(RamseyOutcome::Exact { n });
        }
    }
    Ok(RamseyOutcome::AboveCap { cap })
}

fn has_avoiding_coloring(h: &OrderedHypergraph, r: u8, n: usize, budget: u64, nodes: &mut u64) -> Result<bool> {
    let edges = EdgeColoring::edges_of(n, h.l);
    let index: HashMap<&[usize], usize> = edges.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    // copies grouped by their lexicographically last edge
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); edges.len()];
    for_each_subset(n, h.m, |f| {
        let ids: Vec<usize> = h
            .edges
            .iter()
            .map(|e| {
                let img: Vec<usize> = e.iter().map(|&v| f[v - 1] + 1).collect();
                index[img.as_slice()]
            })
            .collect();
        let last = *ids.iter().max().expect("nonempty");
        closing[last].push(ids);
    });

    fn rec(
        pos: usize,
        colors: &mut Vec<u8>,
        r: u8,
        closing: &[Vec<Vec<usize>>],
        budget: u64,
        nodes: &mut u64,
    ) -> Result<bool> {
        if pos == closing.len() {
            return Ok(true);
        }
        let range = if pos == 0 { 0..1 } else { 0..r };
        for c in range {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Budget(budget));
            }
            colors.push(c);
            let mono = closing[pos].iter().any(|ids| ids.iter().all(|&i| colors[i] == c));
            if !mono && rec(pos + 1, colors, r, closing, budget, nodes)? {
                return Ok(true);
            }
            colors.pop();
        }
        Ok(false)
    }

    rec(0, &mut Vec::with_capacity(edges.len()), r, &closing, budget, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_validation() {
        assert!(OrderedHypergraph::new(3, 2, vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(OrderedHypergraph::new(3, 2, vec![vec![1, 4]]).is_err());
        assert_eq!(OrderedHypergraph::efs(2).unwrap(), OrderedHypergraph::monotone_path(3));
        let json = r#"{"m":3,"l":2,"edges":[[1,2],[2,3]]}"#;
        let h: OrderedHypergraph = serde_json::from_str(json).unwrap();
        assert_eq!(h, OrderedHypergraph::monotone_path(3));
        assert_eq!(serde_json::to_string(&h).unwrap(), json);
    }

    #[test]
    fn copies() {
        let path = OrderedHypergraph::monotone_path(3);
        // K4 colored by whether the edge has length 1
        let c = EdgeColoring::from_fn(4, 2, |e| u8::from(e[1] - e[0] == 1));
        assert!(contains_ordered_copy(&c, &path, 1));
        // color 0 edges 13, 14, 24: no a<b<c with ab, bc both of color 0
        assert!(!contains_ordered_copy(&c, &path, 0));
        let single = OrderedHypergraph::single_edge(2);
        assert!(contains_ordered_copy(&c, &single, 0) && contains_ordered_copy(&c, &single, 1));
    }

    #[test]
    fn small_ramsey_numbers() {
        for l in 1..=3 {
            for r in 1..=3 {
                assert_eq!(ordered_ramsey_number(&OrderedHypergraph::single_edge(l), r, 6).unwrap(), RamseyOutcome::Exact { n: l });
            }
        }
        let path = OrderedHypergraph::monotone_path(3);
        assert_eq!(ordered_ramsey_number(&path, 2, 8).unwrap(), RamseyOutcome::Exact { n: 5 });
        assert_eq!(ordered_ramsey_number(&path, 2, 4).unwrap(), RamseyOutcome::AboveCap { cap: 4 });
        assert!(matches!(ordered_ramsey_number_with_budget(&path, 2, 8, 10), Err(Error::Budget(10))));
    }
}
