//! Exact minimum feedback arc set for small digraphs.
//!
//! Both solvers use the linear-ordering formulation: the backward edges of any
//! vertex order form a decycling set, and an acyclic graph has an order with no
//! backward edges, so the minimum over all orders is exactly the minimum
//! feedback arc set size.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Edge};
use crate::error::ExactError;

pub const BRUTEFORCE_MAX_N: usize = 10;
pub const SUBSET_DP_MAX_N: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub beta: usize,
    /// An optimal linear order (first to last).
    pub order: Vec<usize>,
    /// The backward edges of `order`.
    pub removed: Vec<Edge>,
}

/// Edges pointing from a later to an earlier vertex of `order`.
pub fn backward_edges(g: &Digraph, order: &[usize]) -> Vec<Edge> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    g.edges().filter(|&(u, v)| pos[u] > pos[v]).collect()
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("xs[i + 1] > xs[i]");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Minimum over all `n!` orders. The lexicographically smallest optimal order
/// is returned.
pub fn beta_bruteforce(g: &Digraph) -> Result<ExactResult, ExactError> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(ExactError::TooLarge { method: "brute force", n, max: BRUTEFORCE_MAX_N });
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut pos = vec![0; n];
    let mut best = (usize::MAX, order.clone());
    loop {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = edges.iter().filter(|&&(u, v)| pos[u] > pos[v]).count();
        if back < best.0 {
            best = (back, order.clone());
        }
        if best.0 == 0 || !next_permutation(&mut order) {
            break;
        }
    }
    let (beta, order) = best;
    let removed = backward_edges(g, &order);
    Ok(ExactResult { beta, order, removed })
}

/// Dynamic program over vertex subsets. `f(S)` is the fewest backward edges
/// among orders of `S`; placing `v` last in `S` makes its out-edges into
/// `S \ {v}` backward.
pub fn beta_subset_dp(g: &Digraph) -> Result<ExactResult, ExactError> {
    let n = g.n();
    if n > SUBSET_DP_MAX_N {
        return Err(ExactError::TooLarge { method: "subset DP", n, max: SUBSET_DP_MAX_N });
    }
    let out_mask: Vec<u32> = (0..n)
        .map(|v| g.out_neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let cost = |v: usize, rest: u32| (out_mask[v] & rest).count_ones() as u16;

    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut f = vec![0u16; 1usize << n];
    for s in 1..=full {
        let mut best = u16::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            best = best.min(f[rest as usize] + cost(v, rest));
        }
        f[s as usize] = best;
    }

    // Walk back from the full set, peeling off the smallest valid last vertex.
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut bits = s;
        loop {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            if f[rest as usize] + cost(v, rest) == f[s as usize] {
                order.push(v);
                s = rest;
                break;
            }
        }
    }
    order.reverse();
    let removed = backward_edges(g, &order);
    debug_assert_eq!(removed.len(), f[full as usize] as usize);
    Ok(ExactResult { beta: f[full as usize] as usize, order, removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::tests::{cycle, transitive_tournament};

    #[test]
    fn permutations_are_lexicographic() {
        let mut xs = vec![0, 1, 2];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            seen.push(xs.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
    }

    #[test]
    fn bruteforce_examples() {
        let r = beta_bruteforce(&cycle(4)).unwrap();
        assert_eq!(r.beta, 1);
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert_eq!(r.removed, vec![(3, 0)]);
        assert_eq!(beta_bruteforce(&cycle(5)).unwrap().beta, 1);
        assert_eq!(beta_bruteforce(&transitive_tournament(5)).unwrap().beta, 0);
        assert!(beta_bruteforce(&Digraph::empty(11)).is_err());
    }

    #[test]
    fn subset_dp_examples() {
        assert_eq!(beta_subset_dp(&cycle(4)).unwrap().beta, 1);
        assert_eq!(beta_subset_dp(&Digraph::empty(6)).unwrap().beta, 0);
        assert_eq!(beta_subset_dp(&Digraph::empty(0)).unwrap().beta, 0);
        assert!(beta_subset_dp(&Digraph::empty(23)).is_err());
        // two disjoint triangles plus a digon
        let g = Digraph::from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7), (7, 6)]).unwrap();
        let r = beta_subset_dp(&g).unwrap();
        assert_eq!(r.beta, 3);
        assert!(g.remove_edges(&r.removed).unwrap().is_acyclic());
    }
}
