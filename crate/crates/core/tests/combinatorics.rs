mod common;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sumset_core::colorings::{classify_case, color_check, five_color, pattern_colors, CaseTag};
use sumset_core::ramseycomb::{
    corners_count, greedy_sumset_builder, measure_ramsey_lhs, ordered_ramsey_number, CornersInstance,
    FiniteProbabilitySpace, OrderedHypergraph, RamseyOutcome, SumsetOutcome, Table, DEFAULT_PREFIX_CAP,
};
use sumset_core::Rational;

/// Every 2-coloring of the pairs of `0..n`, as a bitmask over the pairs in
/// lexicographic order.
fn all_graph_colorings(n: usize) -> (Vec<(usize, usize)>, u32) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    let count = 1u32 << pairs.len();
    (pairs, count)
}

fn color_of(pairs: &[(usize, usize)], mask: u32, a: usize, b: usize) -> u32 {
    let i = pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    (mask >> i) & 1
}

/// Least `n` with every 2-coloring of `K_n` holding a monochromatic triangle.
fn naive_triangle_ramsey() -> usize {
    (3..=7)
        .find(|&n| {
            let (pairs, count) = all_graph_colorings(n);
            (0..count).all(|mask| {
                (0..n).any(|a| {
                    ((a + 1)..n).any(|b| {
                        ((b + 1)..n).any(|c| {
                            let ab = color_of(&pairs, mask, a, b);
                            ab == color_of(&pairs, mask, b, c) && ab == color_of(&pairs, mask, a, c)
                        })
                    })
                })
            })
        })
        .unwrap()
}

/// Least `n` with every 2-coloring holding `a < b < c` with `ab`, `bc` the same color.
fn naive_path_ramsey() -> usize {
    (3..=7)
        .find(|&n| {
            let (pairs, count) = all_graph_colorings(n);
            (0..count).all(|mask| {
                (0..n).any(|a| {
                    ((a + 1)..n).any(|b| ((b + 1)..n).any(|c| color_of(&pairs, mask, a, b) == color_of(&pairs, mask, b, c)))
                })
            })
        })
        .unwrap()
}

#[test]
fn ordered_numbers_match_naive_search() {
    let k3 = OrderedHypergraph::complete(3, 2).unwrap();
    assert_eq!(naive_triangle_ramsey(), 6);
    assert_eq!(ordered_ramsey_number(&k3, 2, 7).unwrap(), RamseyOutcome::Exact { n: 6 });
    assert_eq!(naive_path_ramsey(), 5);
    assert_eq!(ordered_ramsey_number(&OrderedHypergraph::monotone_path(3), 2, 7).unwrap(), RamseyOutcome::Exact { n: 5 });
}

fn random_unit(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1i64..=5);
    Rational::new(rng.gen_range(0..=d), d)
}

fn random_space(rng: &mut ChaCha8Rng, size: usize) -> FiniteProbabilitySpace {
    let raw: Vec<i64> = (0..size).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    FiniteProbabilitySpace::new(raw.iter().map(|&w| Rational::new(w, total)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn measure_lhs_relabeling_invariant(seed: u64, size in 1usize..=4) {
        let mut rng = common::rng(seed);
        let space = random_space(&mut rng, size);
        let h = OrderedHypergraph::monotone_path(3);
        let first: Vec<Rational> = (0..size * size).map(|_| random_unit(&mut rng)).collect();
        let phi0 = Table { l: 2, values: first.clone() };
        let phi1 = Table { l: 2, values: first.iter().map(|v| Rational::one() - v).collect() };
        let lhs = measure_ramsey_lhs(&space, &[phi0.clone(), phi1.clone()], &h).unwrap();

        let mut perm: Vec<usize> = (0..size).collect();
        for i in (1..size).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        // moved point perm[x] carries the weight of x
        let mut weights = vec![Rational::zero(); size];
        for x in 0..size {
            weights[perm[x]] = space.weights()[x].clone();
        }
        let moved = FiniteProbabilitySpace::new(weights).unwrap();
        let relabel = |t: &Table| {
            let mut values = vec![Rational::zero(); size * size];
            for x in 0..size {
                for y in 0..size {
                    values[perm[x] * size + perm[y]] = t.values[x * size + y].clone();
                }
            }
            Table { l: 2, values }
        };
        prop_assert_eq!(measure_ramsey_lhs(&moved, &[relabel(&phi0), relabel(&phi1)], &h).unwrap(), lhs);
    }

    #[test]
    fn corners_dominate_diagonal_term(seed: u64, n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let values: Vec<Rational> = (0..n * n).map(|_| random_unit(&mut rng)).collect();
        let inst = CornersInstance::new(n, values.clone()).unwrap();
        let diagonal: Rational = values.iter().map(|v| v.pow(3)).sum::<Rational>() / Rational::from((n * n * n) as u64);
        prop_assert!(corners_count(&inst) >= diagonal);
    }

    #[test]
    fn builder_output_reverifies(seed: u64, k in 1u32..=3, m in 2usize..=4) {
        let mut rng = common::rng(seed);
        let modulus = rng.gen_range(2u64..=6);
        let allowed: Vec<bool> = (0..modulus).map(|_| rng.gen_bool(0.5)).collect();
        let a = move |x: u64| allowed[(x % modulus) as usize];
        if let SumsetOutcome::Found { b, t, prefix } = greedy_sumset_builder(&a, 200_000, k, m, DEFAULT_PREFIX_CAP).unwrap() {
            prop_assert_eq!(b.len(), m);
            prop_assert!(t <= k);
            prop_assert!(b.iter().all(|x| prefix.contains(x)));
            for i in 0..m {
                for j in (i + 1)..m {
                    prop_assert!(b[i] < b[j]);
                    prop_assert!(a(b[i] * b[i] + b[j] + t as u64));
                }
            }
        }
    }
}

#[test]
fn small_coloring_check_matches_direct_scan() {
    let report = color_check(60, &[2, 3], 12);
    assert!(report.passed());
    let mut applicable = 0;
    for x in 1..=60u64 {
        for y in (x + 1)..=60 {
            let b = [x, y];
            if classify_case(&b) != CaseTag::NoCaseApplies {
                applicable += 1;
                assert!(pattern_colors(five_color, &b).len() >= 2, "{b:?}");
            }
        }
    }
    assert!(applicable > 0);
}
