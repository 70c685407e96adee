//! An explicit 5-coloring of ℕ with no infinite monochromatic
//! `{b_i, b_i² + b_j : i < j}`, with finite checkers for the two mechanisms
//! that rule such sets out.
//!
//! `χ(n) = odd` for odd `n`; otherwise `χ(n) = even_{ij}` with `i` the binary
//! digit of `n` at position `2·v₂(n)` and `j = ⌊log₂ v₂(n)⌋ mod 2`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest `e` with `2^e | n`. Requires `n ≥ 1`.
pub fn v2(n: u64) -> u32 {
    assert!(n >= 1, "v2 of 0");
    n.trailing_zeros()
}

/// Binary digit of `n` at position `2·v₂(n)`.
pub fn c_bit(n: u64) -> u8 {
    let pos = 2 * v2(n);
    if pos >= 64 {
        0
    } else {
        ((n >> pos) & 1) as u8
    }
}

/// `⌊log₂ m⌋ mod 2`. Requires `m ≥ 1`.
pub fn d_dyadic(m: u64) -> u8 {
    assert!(m >= 1, "d of 0");
    ((63 - m.leading_zeros()) % 2) as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Odd,
    Even00,
    Even01,
    Even10,
    Even11,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Odd => "odd",
            Color::Even00 => "even00",
            Color::Even01 => "even01",
            Color::Even10 => "even10",
            Color::Even11 => "even11",
        })
    }
}

pub fn five_color(n: u64) -> Color {
    if n % 2 == 1 {
        return Color::Odd;
    }
    match (c_bit(n), d_dyadic(v2(n) as u64)) {
        (0, 0) => Color::Even00,
        (0, _) => Color::Even01,
        (_, 0) => Color::Even10,
        _ => Color::Even11,
    }
}

/// `{b_i} ∪ {b_i² + b_j : i < j}` for `B` in the given order.
pub fn pattern_values(b: &[u64]) -> Vec<u64> {
    let mut out = b.to_vec();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            out.push(b[i].checked_mul(b[i]).and_then(|s| s.checked_add(b[j])).expect("pattern value overflows u64"));
        }
    }
    out
}

pub fn pattern_colors<C: Ord>(coloring: impl Fn(u64) -> C, b: &[u64]) -> BTreeSet<C> {
    pattern_values(b).into_iter().map(coloring).collect()
}

/// Which argument shows that `B` is not monochromatic under [`five_color`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CaseTag {
    OddMember { x: u64 },
    /// `x < y` with `v₂(x) = v₂(y) = v`; then `c(x² + y) ≠ c(y)`.
    EqualValuation { x: u64, y: u64, v: u32 },
    /// `x < y` even with `2·v₂(x) < v₂(y)`; then `v₂(x² + y) = 2·v₂(x)`.
    Doubling { x: u64, y: u64 },
    NoCaseApplies,
}

/// Cases are tried in the order odd member, equal valuation, doubling; the
/// first witness pair in lexicographic order is reported.
pub fn classify_case(b: &[u64]) -> CaseTag {
    let mut sorted = b.to_vec();
    sorted.sort_unstable();
    if let Some(&x) = sorted.iter().find(|&&x| x % 2 == 1) {
        return CaseTag::OddMember { x };
    }
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[i + 1..] {
            if x < y && v2(x) == v2(y) {
                return CaseTag::EqualValuation { x, y, v: v2(x) };
            }
        }
    }
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[i + 1..] {
            if x < y && 2 * v2(x) < v2(y) {
                return CaseTag::Doubling { x, y };
            }
        }
    }
    CaseTag::NoCaseApplies
}

/// First `(b₁, b₂)` in lexicographic order with `b₁ < b₂ ≤ bound` and
/// `χ(b₁) = χ(b₂) = χ(b₁² + b₂)`.
pub fn bergelson_triple_search<C: PartialEq>(coloring: impl Fn(u64) -> C, bound: u64) -> Option<(u64, u64)> {
    for b1 in 1..bound {
        let c1 = coloring(b1);
        let sq = b1 * b1;
        for b2 in (b1 + 1)..=bound {
            if coloring(b2) == c1 && coloring(sq + b2) == c1 {
                return Some((b1, b2));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCheckReport {
    pub max: u64,
    pub sizes: Vec<usize>,
    pub sets_checked: u64,
    pub sets_applicable: u64,
    /// Sets with a case witness whose pattern is nonetheless monochromatic.
    pub violations: Vec<Vec<u64>>,
    pub equal_valuation_pairs: u64,
    pub doubling_pairs: u64,
    /// Pairs where the predicted color change did not happen.
    pub mechanism_failures: Vec<(u64, u64)>,
}

impl ColorCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.mechanism_failures.is_empty()
    }
}

fn subsets(max: u64, size: usize, f: &mut impl FnMut(&[u64])) {
    fn rec(start: u64, max: u64, size: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let need = (size - cur.len()) as u64;
        let mut x = start;
        while x + need - 1 <= max {
            cur.push(x);
            rec(x + 1, max, size, cur, f);
            cur.pop();
            x += 1;
        }
    }
    rec(1, max, size, &mut Vec::with_capacity(size), f);
}

/// Exhaustive check over all `B ⊆ {1..max}` of the given sizes, plus the two
/// pairwise mechanisms: equal valuations for `x < y ≤ max`, and doubling for
/// even `x ≤ max` against `y = 2^e·u ≤ max` and every `y = 2^e` with
/// `2·v₂(x) < e ≤ max_doubling_exp`.
pub fn color_check(max: u64, sizes: &[usize], max_doubling_exp: u32) -> ColorCheckReport {
    let mut report = ColorCheckReport { max, sizes: sizes.to_vec(), ..Default::default() };
    let colors: Vec<Color> = (0..=max).map(|n| if n == 0 { Color::Odd } else { five_color(n) }).collect();
    for &size in sizes {
        subsets(max, size, &mut |b| {
            report.sets_checked += 1;
            if classify_case(b) == CaseTag::NoCaseApplies {
                return;
            }
            report.sets_applicable += 1;
            let first = colors[b[0] as usize];
            let mono = pattern_values(b).into_iter().all(|v| {
                let c = if v <= max { colors[v as usize] } else { five_color(v) };
                c == first
            });
            if mono {
                report.violations.push(b.to_vec());
            }
        });
    }
    for x in 1..=max {
        for y in (x + 1)..=max {
            if v2(x) == v2(y) && x % 2 == 0 {
                report.equal_valuation_pairs += 1;
                let s = x * x + y;
                if c_bit(s) == c_bit(y) || five_color(s) == five_color(y) {
                    report.mechanism_failures.push((x, y));
                }
            }
        }
    }
    for x in (2..=max).step_by(2) {
        let mut ys: Vec<u64> = ((x + 1)..=max).filter(|&y| 2 * v2(x) < v2(y)).collect();
        ys.extend((0..=max_doubling_exp.min(62)).map(|e| 1u64 << e).filter(|&y| y > max && 2 * v2(x) < v2(y)));
        for y in ys {
            report.doubling_pairs += 1;
            let s = x * x + y;
            if v2(s) != 2 * v2(x) || five_color(s) == five_color(x) {
                report.mechanism_failures.push((x, y));
            }
        }
    }
    report
}
