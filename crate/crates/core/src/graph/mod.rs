//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is kept twice: sorted neighbor lists for traversal and one
//! bitmask row per vertex for the search kernels. Both are built once and the
//! graph is immutable afterwards.

pub mod generate;
pub mod graph6;
pub mod io;
mod set;

use std::collections::VecDeque;

pub use generate::{generate, Family};
pub use set::VertexSet;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            rows: (0..n).map(|_| VertexSet::new(n)).collect(),
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v, n));
            }
            if g.rows[u].insert(v) {
                g.rows[v].insert(u);
                g.m += 1;
            }
        }
        for v in 0..n {
            g.adj[v] = g.rows[v].to_vec();
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a bitmask row.
    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// Union of the neighborhoods of the members of `s`, members included.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.rows[v]);
        }
        out
    }

    /// Adjacency rows as single words; only valid when `n <= 64`.
    pub fn rows_u64(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.rows
                .iter()
                .map(|r| r.words().first().copied().unwrap_or(0))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reach(0, &VertexSet::full(self.n)).len() == self.n
    }

    /// Whether the subgraph induced by `s` is connected.
    pub fn induced_is_connected(&self, s: &VertexSet) -> Result<bool> {
        let start = s.first().ok_or(Error::EmptySet)?;
        if s.universe() != self.n {
            return Err(Error::Structure(format!(
                "vertex set over {} vertices used with a graph on {}",
                s.universe(),
                self.n
            )));
        }
        Ok(self.reach(start, s).len() == s.len())
    }

    /// Vertices reachable from `start` while staying inside `within`.
    pub fn reach(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if within.contains(v) && seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Connected components as vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all = VertexSet::full(self.n);
        let mut done = VertexSet::new(self.n);
        let mut out = Vec::new();
        for v in 0..self.n {
            if !done.contains(v) {
                let comp = self.reach(v, &all);
                done.union_with(&comp);
                out.push(comp.to_vec());
            }
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then_some((i, index[w])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("induced edges are valid")
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
            .collect();
        Graph::from_edges(self.n, edges).expect("subset of valid edges")
    }

    /// Contracts edge `uv`: `v` is merged into `u` and the vertices above `v`
    /// shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::Precondition(format!("({u}, {v}) is not an edge")));
        }
        let map = |w: usize| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let edges: Vec<_> = self
            .edges()
            .map(|(a, b)| (map(a), map(b)))
            .filter(|(a, b)| a != b)
            .collect();
        Graph::from_edges(self.n - 1, edges)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(self.n, self.edges().map(|(a, b)| (perm[a], perm[b])).collect::<Vec<_>>())
            .expect("permutation keeps edges valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self
            .edges()
            .chain(other.edges().map(|(a, b)| (a + off, b + off)))
            .collect::<Vec<_>>();
        Graph::from_edges(self.n + other.n, edges).expect("shifted edges are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::InvalidEdge(1, 1, 3)));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_connected());
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn induced_connectivity() {
        let c = cycle(6);
        assert!(c.induced_is_connected(&VertexSet::from_indices(6, [0, 1, 2])).unwrap());
        assert!(!c.induced_is_connected(&VertexSet::from_indices(6, [0, 2])).unwrap());
        assert_eq!(c.induced_is_connected(&VertexSet::new(6)), Err(Error::EmptySet));
    }

    #[test]
    fn contraction_and_deletion() {
        let c4 = cycle(4);
        let k3 = c4.contract_edge(2, 3).unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert!(c4.contract_edge(0, 2).is_err());
        assert_eq!(c4.without_vertex(0).edge_count(), 2);
        assert_eq!(c4.without_edge(1, 0).edge_count(), 3);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c = cycle(5);
        let h = c.induced_subgraph(&[4, 0, 1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
