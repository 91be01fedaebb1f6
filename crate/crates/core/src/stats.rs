//! Pivot neighbourhoods and the three-way vertex partitions built from them.
//!
//! For a pivot `v`, `A` is its out-neighbourhood, `B` its in-neighbourhood and
//! `C` everything else. A partition puts `B` (plus part of `C`) into `V1`, `A`
//! (plus the rest of `C`) into `V2`, and `v` alone. Deleting every `V2 -> V1`
//! edge kills all cycles that are not inside `G[V1]` or `G[V2]`.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, FreenessWitness};
use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Pivot,
    Out,
    In,
    Rest,
}

fn roles(g: &Digraph, v: usize) -> Vec<Role> {
    let mut role = vec![Role::Rest; g.n()];
    role[v] = Role::Pivot;
    for &a in g.out_neighbors(v) {
        role[a] = Role::Out;
    }
    for &b in g.in_neighbors(v) {
        role[b] = Role::In;
    }
    role
}

/// Counts attached to one vertex `u` of `C(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestCounts {
    pub u: usize,
    /// Edges from `A` into `u`.
    pub k: usize,
    /// Edges from `u` into `B`.
    pub l: usize,
    /// `min(k, l)`.
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStats {
    pub v: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    /// Nonadjacent pairs with one end in `A` and the other in `B`.
    pub g: usize,
    /// Edges with both ends in `C`.
    pub t: usize,
    /// One entry per member of `c`, in the same order.
    pub per_u: Vec<RestCounts>,
    /// Sum of `m` over `C`.
    pub big_m: usize,
}

impl VertexStats {
    pub fn sum_kl(&self) -> usize {
        self.per_u.iter().map(|r| r.k * r.l).sum()
    }

    pub fn sum_m_squared(&self) -> usize {
        self.per_u.iter().map(|r| r.m * r.m).sum()
    }
}

/// Neighbourhood statistics of pivot `v`.
///
/// Fails if `v` lies on a digon or on a directed triangle through an `A -> B`
/// edge, since either would corrupt the counts.
pub fn local_stats(g: &Digraph, v: usize) -> Result<VertexStats, GraphError> {
    let n = g.n();
    if v >= n {
        return Err(GraphError::SubsetOutOfRange { vertex: v, n });
    }
    let role = roles(g, v);
    if let Some(&x) = g.out_neighbors(v).iter().find(|&&x| g.has_edge(x, v)) {
        return Err(GraphError::NotThreeFree(FreenessWitness::Digon(v.min(x), v.max(x))));
    }
    let a: Vec<usize> = g.out_neighbors(v).to_vec();
    let b: Vec<usize> = g.in_neighbors(v).to_vec();
    let mut back_edges = 0;
    for &x in &a {
        if let Some(&y) = g.out_neighbors(x).iter().find(|&&y| role[y] == Role::In) {
            return Err(GraphError::NotThreeFree(FreenessWitness::Triangle(v, x, y)));
        }
    }
    for &y in &b {
        back_edges += g.out_neighbors(y).iter().filter(|&&x| role[x] == Role::Out).count();
    }
    let c: Vec<usize> = (0..n).filter(|&u| role[u] == Role::Rest).collect();
    let mut t = 0;
    let mut per_u = Vec::with_capacity(c.len());
    for &u in &c {
        let k = g.in_neighbors(u).iter().filter(|&&w| role[w] == Role::Out).count();
        let l = g.out_neighbors(u).iter().filter(|&&w| role[w] == Role::In).count();
        t += g.out_neighbors(u).iter().filter(|&&w| role[w] == Role::Rest).count();
        per_u.push(RestCounts { u, k, l, m: k.min(l) });
    }
    let big_m = per_u.iter().map(|r| r.m).sum();
    Ok(VertexStats {
        v,
        g: a.len() * b.len() - back_edges,
        a,
        b,
        c,
        t,
        per_u,
        big_m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionMetrics {
    /// Nonadjacent pairs whose ends lie in different parts.
    pub rho: usize,
    /// Edges from `V2` to `V1`.
    pub tau: usize,
    /// Edges from `C_A = C ∩ V2` to `C_B = C ∩ V1`.
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub v: usize,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub c_b: Vec<usize>,
    pub c_a: Vec<usize>,
    pub rho: usize,
    pub tau: usize,
    pub e: usize,
}

impl Partition {
    pub fn metrics(&self) -> PartitionMetrics {
        PartitionMetrics { rho: self.rho, tau: self.tau, e: self.e }
    }

    /// The `V2 -> V1` edges.
    pub fn decycling_edges(&self, g: &Digraph) -> Vec<(usize, usize)> {
        let mut in_v1 = vec![false; g.n()];
        for &x in &self.v1 {
            in_v1[x] = true;
        }
        let mut edges: Vec<_> = self
            .v2
            .iter()
            .flat_map(|&x| g.out_neighbors(x).iter().filter(|&&y| in_v1[y]).map(move |&y| (x, y)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Missing and decycling counts for an arbitrary split `v1, v2, {v}` of the
/// vertex set, computed by a direct scan of pairs and edges.
pub fn partition_metrics(g: &Digraph, v: usize, v1: &[usize], v2: &[usize]) -> Result<PartitionMetrics, GraphError> {
    const UNSET: u8 = 0;
    const PIVOT: u8 = 1;
    const ONE: u8 = 2;
    const TWO: u8 = 3;

    let n = g.n();
    if v >= n {
        return Err(GraphError::NotAPartition(format!("pivot {v} is outside 0..{n}")));
    }
    let mut part = vec![UNSET; n];
    part[v] = PIVOT;
    for (members, tag) in [(v1, ONE), (v2, TWO)] {
        for &x in members {
            if x >= n {
                return Err(GraphError::NotAPartition(format!("vertex {x} is outside 0..{n}")));
            }
            if part[x] != UNSET {
                return Err(GraphError::NotAPartition(format!("vertex {x} appears twice")));
            }
            part[x] = tag;
        }
    }
    if let Some(x) = part.iter().position(|&p| p == UNSET) {
        return Err(GraphError::NotAPartition(format!("vertex {x} is in no part")));
    }

    let (s1, s2) = (v1.len(), v2.len());
    let cross_pairs = s1 * s2 + s1 + s2;
    let role = roles(g, v);
    let mut adjacent_cross = 0;
    let mut tau = 0;
    let mut e = 0;
    for (x, y) in g.edges() {
        if part[x] != part[y] && (x < y || !g.has_edge(y, x)) {
            adjacent_cross += 1;
        }
        if part[x] == TWO && part[y] == ONE {
            tau += 1;
            if role[x] == Role::Rest && role[y] == Role::Rest {
                e += 1;
            }
        }
    }
    Ok(PartitionMetrics { rho: cross_pairs - adjacent_cross, tau, e })
}

/// The canonical partition at `v`: `u ∈ C` joins `V1` iff `l(u) > k(u)`,
/// otherwise `V2`.
pub fn canonical_partition(g: &Digraph, v: usize) -> Result<Partition, GraphError> {
    let stats = local_stats(g, v)?;
    Ok(canonical_from_stats(g, &stats))
}

pub(crate) fn canonical_from_stats(g: &Digraph, stats: &VertexStats) -> Partition {
    let (c_b, c_a): (Vec<usize>, Vec<usize>) = stats.per_u.iter().map(|r| (r.u, r.l > r.k)).fold(
        (Vec::new(), Vec::new()),
        |(mut to_one, mut to_two), (u, one)| {
            if one { to_one.push(u) } else { to_two.push(u) }
            (to_one, to_two)
        },
    );
    partition_from_split(g, stats, c_b, c_a)
}

fn partition_from_split(g: &Digraph, stats: &VertexStats, c_b: Vec<usize>, c_a: Vec<usize>) -> Partition {
    let mut v1: Vec<usize> = stats.b.iter().chain(&c_b).copied().collect();
    let mut v2: Vec<usize> = stats.a.iter().chain(&c_a).copied().collect();
    v1.sort_unstable();
    v2.sort_unstable();
    let m = partition_metrics(g, stats.v, &v1, &v2).expect("A, B and C partition V minus the pivot");
    Partition { v: stats.v, v1, v2, c_b, c_a, rho: m.rho, tau: m.tau, e: m.e }
}

/// Largest `|C(v)|` for which [`best_split`] will enumerate all splits.
pub const MAX_SPLIT_ENUMERATION: usize = 24;

/// Enumerates every split of `C(v)` into `(C_B, C_A)` and returns the one with
/// the best missing-to-decycling ratio (`tau = 0` beats every finite ratio;
/// ties keep the earlier split in enumeration order).
///
/// Returns `None` when `|C(v)|` exceeds [`MAX_SPLIT_ENUMERATION`].
pub fn best_split(g: &Digraph, stats: &VertexStats) -> Option<Partition> {
    let size = stats.c.len();
    if size > MAX_SPLIT_ENUMERATION {
        return None;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &u) in stats.c.iter().enumerate() {
        pos[u] = i;
    }
    let in_a = |x: usize| stats.a.binary_search(&x).is_ok();
    let in_b = |x: usize| stats.b.binary_search(&x).is_ok();

    // Per-vertex contributions when u sits in C_B (bit set) or C_A (bit clear).
    let mut decyc_if_b = vec![0u64; size];
    let mut decyc_if_a = vec![0u64; size];
    let mut missing_if_b = vec![0u64; size];
    let mut missing_if_a = vec![0u64; size];
    let mut out_c = vec![0u32; size];
    let mut adj_c = vec![0u32; size];
    for (i, r) in stats.per_u.iter().enumerate() {
        let u = r.u;
        decyc_if_b[i] = r.k as u64;
        decyc_if_a[i] = r.l as u64;
        let mut adj_a = 0;
        let mut adj_b = 0;
        let mut seen = |w: usize, out: bool| {
            if in_a(w) {
                adj_a += 1;
            } else if in_b(w) {
                adj_b += 1;
            } else if pos[w] != usize::MAX {
                adj_c[i] |= 1 << pos[w];
                if out {
                    out_c[i] |= 1 << pos[w];
                }
            }
        };
        for &w in g.out_neighbors(u) {
            seen(w, true);
        }
        for &w in g.in_neighbors(u) {
            if !g.has_edge(u, w) {
                seen(w, false);
            }
        }
        missing_if_b[i] = (stats.a.len() - adj_a) as u64;
        missing_if_a[i] = (stats.b.len() - adj_b) as u64;
    }

    let base = (stats.g + size) as u64;
    let mut best: Option<(u32, u64, u64)> = None;
    for mask in 0u32..(1u32 << size) {
        let count_b = mask.count_ones() as u64;
        let mut rho = base;
        let mut tau = 0u64;
        for i in 0..size {
            if mask >> i & 1 == 1 {
                rho += missing_if_b[i];
                tau += decyc_if_b[i];
            } else {
                rho += missing_if_a[i] + count_b - (adj_c[i] & mask).count_ones() as u64;
                tau += decyc_if_a[i] + (out_c[i] & mask).count_ones() as u64;
            }
        }
        let better = match best {
            None => true,
            Some((_, br, bt)) => ratio_gt(rho, tau, br, bt),
        };
        if better {
            best = Some((mask, rho, tau));
        }
    }
    let (mask, rho, tau) = best.expect("at least the empty split is enumerated");
    let (c_b, c_a): (Vec<usize>, Vec<usize>) = stats.c.iter().enumerate().fold(
        (Vec::new(), Vec::new()),
        |(mut to_one, mut to_two), (i, &u)| {
            if mask >> i & 1 == 1 { to_one.push(u) } else { to_two.push(u) }
            (to_one, to_two)
        },
    );
    let p = partition_from_split(g, stats, c_b, c_a);
    debug_assert_eq!((p.rho as u64, p.tau as u64), (rho, tau));
    Some(p)
}

/// `rho1 / tau1 > rho2 / tau2`, with `tau = 0` read as +infinity.
pub(crate) fn ratio_gt(rho1: u64, tau1: u64, rho2: u64, tau2: u64) -> bool {
    match (tau1, tau2) {
        (0, 0) => false,
        (0, _) => true,
        (_, 0) => false,
        _ => (rho1 as u128) * (tau2 as u128) > (rho2 as u128) * (tau1 as u128),
    }
}

/// Right-hand side of the per-pivot sufficient condition on `g(v)`:
///
/// `c² (1+μ) ( (1+μ + sqrt((1+μ)² + 4(1+μ) e / c²)) / 2 + e / c² )`
///
/// where `c = |C(v)|`. `None` when `c = 0`, where the expression is undefined.
pub fn margin_threshold(c: usize, e: usize, mu: f64) -> Option<f64> {
    if c == 0 {
        return None;
    }
    let c2 = (c * c) as f64;
    let x = e as f64 / c2;
    let s = 1.0 + mu;
    Some(c2 * s * ((s + (s * s + 4.0 * s * x).sqrt()) / 2.0 + x))
}
