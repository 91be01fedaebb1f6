//! Simple finite digraphs on the dense vertex set `0..n`.
//!
//! Both out- and in-adjacency are kept sorted so neighbourhood queries in
//! either direction cost `O(deg)` and edge lookups cost `O(log deg)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// An ordered pair `(tail, head)`.
pub type Edge = (usize, usize);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Outcome of [`Digraph::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Built {
    pub graph: Digraph,
    /// Number of input pairs dropped because they repeated an earlier pair.
    pub collapsed: usize,
}

/// A forbidden short directed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "lowercase")]
pub enum FreenessWitness {
    /// `u -> v` and `v -> u`.
    Digon(usize, usize),
    /// `a -> b -> c -> a`.
    Triangle(usize, usize, usize),
}

impl FreenessWitness {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            FreenessWitness::Digon(u, v) => vec![u, v],
            FreenessWitness::Triangle(a, b, c) => vec![a, b, c],
        }
    }
}

impl fmt::Display for FreenessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FreenessWitness::Digon(u, v) => write!(f, "digon {u} <-> {v}"),
            FreenessWitness::Triangle(a, b, c) => write!(f, "directed triangle {a} -> {b} -> {c} -> {a}"),
        }
    }
}

/// Result of an acyclicity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    /// A linear order of all vertices with every edge pointing forward.
    Acyclic(Vec<usize>),
    /// The vertices of a directed cycle, in cycle order.
    Cyclic(Vec<usize>),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic(_))
    }
}

/// Map between the vertices of an induced subgraph and its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    to_old: Vec<usize>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Relabeling { to_old: (0..n).collect() }
    }

    /// `labels` must be strictly increasing.
    pub fn from_old_labels(labels: Vec<usize>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Relabeling { to_old: labels }
    }

    /// Parent label of subgraph vertex `new`.
    pub fn old_of(&self, new: usize) -> usize {
        self.to_old[new]
    }

    /// Subgraph label of parent vertex `old`, if it was kept.
    pub fn new_of(&self, old: usize) -> Option<usize> {
        self.to_old.binary_search(&old).ok()
    }

    /// Parent labels, indexed by subgraph label (strictly increasing).
    pub fn old_labels(&self) -> &[usize] {
        &self.to_old
    }

    pub fn len(&self) -> usize {
        self.to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_old.is_empty()
    }
}

impl Digraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Validates and builds a digraph. Repeated pairs are collapsed and counted.
    pub fn build<I>(n: usize, edges: I) -> Result<Built, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut seen = 0usize;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { edge: (u, v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
            seen += 1;
        }
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            outs.dedup();
            edge_count += outs.len();
            for &v in outs.iter() {
                in_adj[v].push(u);
            }
        }
        // in-lists come out sorted because tails are visited in increasing order
        Ok(Built {
            graph: Digraph { out_adj, in_adj, edge_count },
            collapsed: seen - edge_count,
        })
    }

    /// [`Digraph::build`] without the collapse count.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        Digraph::build(n, edges).map(|b| b.graph)
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Number of unordered vertex pairs joined by at least one edge.
    pub fn adjacent_pair_count(&self) -> usize {
        let digons = self
            .edges()
            .filter(|&(u, v)| u < v && self.has_edge(v, u))
            .count();
        self.edge_count - digons
    }

    /// Number of unordered pairs of distinct, nonadjacent vertices.
    pub fn gamma(&self) -> usize {
        let n = self.n();
        n * n.saturating_sub(1) / 2 - self.adjacent_pair_count()
    }

    /// Topological order if acyclic, otherwise a directed cycle.
    ///
    /// The cycle is the first one closed by a depth-first search that visits
    /// roots and out-neighbours in increasing index order.
    pub fn acyclicity(&self) -> Acyclicity {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;

        let n = self.n();
        let mut colour = vec![WHITE; n];
        let mut postorder = Vec::with_capacity(n);
        // (vertex, index of next out-neighbour to try)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if colour[root] != WHITE {
                continue;
            }
            colour[root] = GREY;
            stack.push((root, 0));
            while let Some(top) = stack.last_mut() {
                let (v, next) = *top;
                if let Some(&w) = self.out_adj[v].get(next) {
                    top.1 += 1;
                    match colour[w] {
                        WHITE => {
                            colour[w] = GREY;
                            stack.push((w, 0));
                        }
                        GREY => {
                            let start = stack.iter().position(|&(x, _)| x == w).expect("grey vertex is on the stack");
                            return Acyclicity::Cyclic(stack[start..].iter().map(|&(x, _)| x).collect());
                        }
                        _ => {}
                    }
                } else {
                    colour[v] = BLACK;
                    postorder.push(v);
                    stack.pop();
                }
            }
        }
        postorder.reverse();
        Acyclicity::Acyclic(postorder)
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclicity().is_acyclic()
    }

    /// `None` iff the graph has no digon and no directed triangle.
    ///
    /// Digons are scanned first. A reported triangle `(a, b, c)` has `a` as its
    /// smallest vertex, and the first one found in `(a, b, c)` order wins.
    pub fn three_free_check(&self) -> Option<FreenessWitness> {
        for (u, v) in self.edges() {
            if u < v && self.has_edge(v, u) {
                return Some(FreenessWitness::Digon(u, v));
            }
        }
        for a in 0..self.n() {
            let into_a = &self.in_adj[a];
            for &b in self.out_adj[a].iter().filter(|&&b| b > a) {
                if let Some(c) = first_common_above(&self.out_adj[b], into_a, a) {
                    return Some(FreenessWitness::Triangle(a, b, c));
                }
            }
        }
        None
    }

    pub fn is_three_free(&self) -> bool {
        self.three_free_check().is_none()
    }

    /// The subgraph induced by `subset`, relabelled in increasing order.
    /// Duplicate members are ignored.
    pub fn induced(&self, subset: &[usize]) -> Result<(Digraph, Relabeling), GraphError> {
        let n = self.n();
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.last().filter(|&&v| v >= n) {
            return Err(GraphError::SubsetOutOfRange { vertex: bad, n });
        }
        let mut new_label = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_label[v] = i;
        }
        let mut out_adj = vec![Vec::new(); keep.len()];
        let mut in_adj = vec![Vec::new(); keep.len()];
        let mut edge_count = 0;
        for (i, &u) in keep.iter().enumerate() {
            for &v in &self.out_adj[u] {
                let j = new_label[v];
                if j != usize::MAX {
                    out_adj[i].push(j);
                    in_adj[j].push(i);
                    edge_count += 1;
                }
            }
        }
        Ok((Digraph { out_adj, in_adj, edge_count }, Relabeling { to_old: keep }))
    }

    /// Same vertex set with the edges of `removed` deleted.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Digraph, GraphError> {
        let mut drop = BTreeSet::new();
        for &(u, v) in removed {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge((u, v)));
            }
            drop.insert((u, v));
        }
        Digraph::from_edges(self.n(), self.edges().filter(|e| !drop.contains(e)))
    }
}

/// Smallest element `> floor` present in both sorted slices.
fn first_common_above(xs: &[usize], ys: &[usize], floor: usize) -> Option<usize> {
    let mut i = xs.partition_point(|&x| x <= floor);
    let mut j = ys.partition_point(|&y| y <= floor);
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(xs[i]),
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub(crate) fn transitive_tournament(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn build_c4() {
        let g = cycle(4);
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.out_neighbors(3), &[0]);
        assert_eq!(g.in_neighbors(0), &[3]);
    }

    #[test]
    fn build_collapses_duplicates() {
        let built = Digraph::build(3, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(built.graph.edge_count(), 1);
        assert_eq!(built.collapsed, 1);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Digraph::build(2, [(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
        assert!(matches!(
            Digraph::build(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { edge: (0, 2), n: 2 }
        ));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(cycle(4).gamma(), 2);
        assert_eq!(transitive_tournament(3).gamma(), 0);
        assert_eq!(Digraph::empty(5).gamma(), 10);
        assert_eq!(Digraph::empty(0).gamma(), 0);
        // a digon counts as a single adjacent pair
        assert_eq!(Digraph::from_edges(3, [(0, 1), (1, 0)]).unwrap().gamma(), 2);
    }

    #[test]
    fn acyclicity_examples() {
        assert_eq!(cycle(4).acyclicity(), Acyclicity::Cyclic(vec![0, 1, 2, 3]));
        assert_eq!(transitive_tournament(3).acyclicity(), Acyclicity::Acyclic(vec![0, 1, 2]));
        assert!(Digraph::empty(4).is_acyclic());
    }

    #[test]
    fn three_free_examples() {
        assert_eq!(cycle(4).three_free_check(), None);
        let digon = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.three_free_check(), Some(FreenessWitness::Digon(0, 1)));
        assert_eq!(cycle(3).three_free_check(), Some(FreenessWitness::Triangle(0, 1, 2)));
        // rotated labels still report the smallest vertex first
        let tri = Digraph::from_edges(5, [(4, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(tri.three_free_check(), Some(FreenessWitness::Triangle(2, 3, 4)));
    }

    #[test]
    fn induced_examples() {
        let (h, map) = cycle(4).induced(&[1, 2]).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.old_labels(), &[1, 2]);
        assert_eq!(map.new_of(2), Some(1));
        assert_eq!(map.new_of(0), None);

        let (h, map) = cycle(4).induced(&[]).unwrap();
        assert_eq!(h.n(), 0);
        assert!(map.is_empty());

        let (h, map) = cycle(5).induced(&[4, 3]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!((map.old_of(0), map.old_of(1)), (3, 4));

        assert!(matches!(cycle(4).induced(&[4]), Err(GraphError::SubsetOutOfRange { vertex: 4, n: 4 })));
    }

    #[test]
    fn remove_edges_examples() {
        let g = cycle(4);
        let h = g.remove_edges(&[(2, 3)]).unwrap();
        assert!(h.is_acyclic());
        assert_eq!(h.edge_count(), 3);
        assert_eq!(g.remove_edges(&[]).unwrap(), g);
        assert_eq!(g.remove_edges(&[(0, 2)]).unwrap_err(), GraphError::NotAnEdge((0, 2)));
    }
}
