//! Exact vertex colouring, critical subgraphs, and fan minors of k-chromatic graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::generate::fan;
use crate::graph::{Graph, VertexSet};
use crate::minor::search::{greedy_clique, max_clique};
use crate::minor::MinorModel;

/// A proper colouring with colours `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.colors.iter().all(|&c| (1..=self.k).contains(&c))
            && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// `count[v * (k + 1) + c]`: neighbours of `v` holding colour `c`.
    count: Vec<u32>,
    sat: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        Dsatur {
            g,
            k,
            colors: vec![0; g.n()],
            count: vec![0; g.n() * (k + 1)],
            sat: vec![0; g.n()],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * (self.k + 1) + c];
            if *slot == 0 {
                self.sat[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * (self.k + 1) + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    /// Colours are opened in order, so a vertex may only take an existing
    /// colour or the next unused one.
    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        if self.sat[v] >= self.k {
            return false;
        }
        for c in 1..=(used + 1).min(self.k) {
            if self.count[v * (self.k + 1) + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(used.max(c)) {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

/// A proper `k`-colouring, or `None` when none exists.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    if g.n() == 0 {
        return Some(Coloring { k, colors: Vec::new() });
    }
    if k == 0 {
        return None;
    }
    let mut s = Dsatur::new(g, k);
    if s.solve(0) {
        Some(Coloring { k, colors: s.colors })
    } else {
        None
    }
}

/// Greedy DSATUR colouring; an upper bound on the chromatic number.
fn greedy_dsatur(g: &Graph) -> Coloring {
    let k = g.n().max(1);
    let mut s = Dsatur::new(g, k);
    let mut used = 0;
    while let Some(v) = s.pick() {
        let c = (1..=k).find(|&c| s.count[v * (k + 1) + c] == 0).unwrap();
        used = used.max(c);
        s.assign(v, c);
    }
    Coloring { k: used, colors: s.colors }
}

fn clique_bound(g: &Graph) -> usize {
    match g.rows_u64() {
        Some(rows) => max_clique(&rows).count_ones() as usize,
        None => greedy_clique(g).len(),
    }
}

/// Chromatic number with a witness colouring.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    if g.n() == 0 {
        return (0, Coloring { k: 0, colors: Vec::new() });
    }
    let mut best = greedy_dsatur(g);
    let lower = clique_bound(g);
    // search downwards from the greedy bound; each success tightens it
    while best.k > lower {
        match is_k_colorable(g, best.k - 1) {
            Some(c) => best = c,
            None => break,
        }
    }
    debug_assert!(best.is_proper(g));
    (best.k, best)
}

/// An induced-and-pruned subgraph together with its original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertices[i]` is the original id of vertex `i` of `graph`.
    pub vertices: Vec<usize>,
}

fn chi_at_least(g: &Graph, k: usize) -> bool {
    k == 0 || is_k_colorable(g, k - 1).is_none()
}

/// A `χ(g)`-critical subgraph, found by greedily deleting vertices (by
/// increasing degree) and then edges (in lexicographic order) whenever the
/// chromatic number survives the deletion.
pub fn critical_subgraph(g: &Graph) -> Result<Subgraph> {
    if g.n() == 0 {
        return Err(Error::Precondition("critical subgraph of the empty graph".into()));
    }
    let (k, _) = chromatic_number(g);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut keep = VertexSet::full(g.n());
    for v in order {
        if keep.len() == 1 {
            break;
        }
        keep.remove(v);
        if !chi_at_least(&g.induced_subgraph(&keep.to_vec()), k) {
            keep.insert(v);
        }
    }
    let vertices = keep.to_vec();
    let mut h = g.induced_subgraph(&vertices);
    let edges: Vec<_> = h.edges().collect();
    for (u, v) in edges {
        let trial = h.without_edge(u, v);
        if chi_at_least(&trial, k) {
            h = trial;
        }
    }
    Ok(Subgraph { graph: h, vertices })
}

/// Greedily grown path that cannot be extended at either end.
fn maximal_path(g: &Graph, start: usize) -> VecDeque<usize> {
    let mut on_path = VertexSet::new(g.n());
    on_path.insert(start);
    let mut path = VecDeque::from([start]);
    loop {
        let mut grew = false;
        while let Some(&w) = g.neighbors(*path.back().unwrap()).iter().find(|&&w| !on_path.contains(w)) {
            on_path.insert(w);
            path.push_back(w);
            grew = true;
        }
        while let Some(&w) = g.neighbors(*path.front().unwrap()).iter().find(|&&w| !on_path.contains(w)) {
            on_path.insert(w);
            path.push_front(w);
            grew = true;
        }
        if !grew {
            return path;
        }
    }
}

/// A verified model of the fan `W_k` in `g`, `k = χ(g) >= 2`.
///
/// Inside a k-critical subgraph every vertex has degree at least `k - 1`.
/// The head `v_0` of a non-extendable path has all its neighbours on the path,
/// so it sees at least `k - 1` path positions `i_1 < ... < i_{k-1}`. The hub
/// is `{v_0}` and fan vertex `j` takes the path segment `(i_{j-1}, i_j]`
/// (with `i_0 = 0`), which contains the hub neighbour `v_{i_j}`.
pub fn extract_w_minor(g: &Graph) -> Result<MinorModel> {
    let (k, _) = chromatic_number(g);
    if k < 2 {
        return Err(Error::Precondition(format!("need chromatic number >= 2, got {k}")));
    }
    let crit = critical_subgraph(g)?;
    let h = &crit.graph;
    let path: Vec<usize> = maximal_path(h, 0).into_iter().collect();
    let head = path[0];
    let mut position = vec![usize::MAX; h.n()];
    for (i, &v) in path.iter().enumerate() {
        position[v] = i;
    }
    assert!(
        h.neighbors(head).iter().all(|&w| position[w] != usize::MAX),
        "path head has a neighbour off the path"
    );
    let mut hits: Vec<usize> = h.neighbors(head).iter().map(|&w| position[w]).collect();
    hits.sort_unstable();
    if hits.len() < k - 1 {
        return Err(Error::Internal(format!(
            "critical subgraph vertex of degree {} < {}",
            hits.len(),
            k - 1
        )));
    }
    hits.truncate(k - 1);

    let to_g = |i: usize| crit.vertices[path[i]];
    let mut sets = vec![VertexSet::from_indices(g.n(), [to_g(0)])];
    let mut prev = 0;
    for &i in &hits {
        sets.push(VertexSet::from_indices(g.n(), (prev + 1..=i).map(to_g)));
        prev = i;
    }
    MinorModel::verified(g.clone(), fan(k), sets)
        .map_err(|e| Error::Internal(format!("fan model failed to verify: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, grid, star};
    use crate::product::cartesian_product;

    pub(crate) fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn odd_cycle() {
        assert!(is_k_colorable(&cycle(5), 2).is_none());
        let c = is_k_colorable(&cycle(5), 3).unwrap();
        assert!(c.is_proper(&cycle(5)));
    }

    #[test]
    fn petersen_three_colourable() {
        let p = petersen();
        let c = is_k_colorable(&p, 3).unwrap();
        assert!(c.is_proper(&p));
        assert_eq!(chromatic_number(&p).0, 3);
    }

    #[test]
    fn zero_colours() {
        assert!(is_k_colorable(&Graph::empty(0), 0).is_some());
        assert!(is_k_colorable(&Graph::empty(1), 0).is_none());
    }

    #[test]
    fn chromatic_numbers() {
        for n in 1..8 {
            assert_eq!(chromatic_number(&complete(n)).0, n);
        }
        assert_eq!(chromatic_number(&grid(3)).0, 2);
        assert_eq!(chromatic_number(&Graph::empty(4)).0, 1);
        let (k4k7, _) = cartesian_product(&complete(4), &complete(7)).unwrap();
        let (k, c) = chromatic_number(&k4k7);
        assert_eq!(k, 7);
        assert!(c.is_proper(&k4k7));
    }

    #[test]
    fn large_complete_graph() {
        assert_eq!(chromatic_number(&complete(144)).0, 144);
    }

    #[test]
    fn critical_of_k4_with_pendant() {
        let g = Graph::from_edges(5, complete(4).edges().chain([(3, 4)]).collect::<Vec<_>>()).unwrap();
        let c = critical_subgraph(&g).unwrap();
        assert_eq!(c.graph, complete(4));
        assert_eq!(c.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn critical_of_odd_and_even_cycles() {
        assert_eq!(critical_subgraph(&cycle(5)).unwrap().graph, cycle(5));
        let c6 = critical_subgraph(&cycle(6)).unwrap();
        assert_eq!(c6.graph, complete(2));
    }

    #[test]
    fn critical_min_degree() {
        let p = petersen();
        let c = critical_subgraph(&p).unwrap();
        assert_eq!(chromatic_number(&c.graph).0, 3);
        assert!(c.graph.min_degree() >= 2);
    }

    #[test]
    fn w_minor_small_cases() {
        let m = extract_w_minor(&complete(4)).unwrap();
        assert!(m.branch_sets().iter().all(|s| s.len() == 1));
        assert_eq!(m.pattern(), &fan(4));
        let m = extract_w_minor(&cycle(5)).unwrap();
        assert_eq!(m.pattern(), &complete(3));
        assert!(m.is_valid());
        let m = extract_w_minor(&complete(2)).unwrap();
        assert_eq!(m.pattern(), &complete(2));
    }

    #[test]
    fn w_minor_needs_an_edge() {
        assert!(extract_w_minor(&Graph::empty(3)).is_err());
        assert!(extract_w_minor(&star(3)).unwrap().is_valid());
    }

    #[test]
    fn coloring_json() {
        let c = is_k_colorable(&cycle(4), 2).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"k":2,"colors":[1,2,1,2]}"#);
    }
}
