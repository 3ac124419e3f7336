//! Cartesian products, powers and prime factorization.
//!
//! Product vertices are flat indices under a mixed-radix labeling with the
//! first factor most significant: `<i_1, ..., i_k>` maps to
//! `((i_1 * n_2 + i_2) * n_3 + i_3) ...`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Bijection between coordinate tuples and flat product indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductLabeling {
    sizes: Vec<usize>,
}

impl ProductLabeling {
    pub fn new(sizes: Vec<usize>) -> Self {
        ProductLabeling { sizes }
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dimension(&self) -> usize {
        self.sizes.len()
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.sizes.len(), "coordinate arity");
        coords.iter().zip(&self.sizes).fold(0, |acc, (&c, &n)| {
            assert!(c < n, "coordinate {c} out of range {n}");
            acc * n + c
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.len(), "flat index out of range");
        let mut out = vec![0; self.sizes.len()];
        for (slot, &n) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }
}

/// `g □ h` with vertex `<i, j>` at `i * h.n() + j`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductLabeling)> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::Precondition("product factors must be nonempty".into()));
    }
    let labeling = ProductLabeling::new(vec![g.n(), h.n()]);
    let nh = h.n();
    let mut edges = Vec::with_capacity(g.n() * h.edge_count() + g.edge_count() * nh);
    for i in 0..g.n() {
        for (a, b) in h.edges() {
            edges.push((i * nh + a, i * nh + b));
        }
    }
    for (a, b) in g.edges() {
        for j in 0..nh {
            edges.push((a * nh + j, b * nh + j));
        }
    }
    Ok((Graph::from_edges(g.n() * nh, edges)?, labeling))
}

/// Product of a list of factors, first factor most significant.
pub fn cartesian_product_all(factors: &[Graph]) -> Result<(Graph, ProductLabeling)> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Precondition("need at least one factor".into()))?;
    if first.n() == 0 {
        return Err(Error::Precondition("product factors must be nonempty".into()));
    }
    let mut acc = first.clone();
    for f in rest {
        acc = cartesian_product(&acc, f)?.0;
    }
    Ok((acc, ProductLabeling::new(factors.iter().map(Graph::n).collect())))
}

/// `g^d`, built by repeated multiplication on the right.
pub fn cartesian_power(g: &Graph, d: usize) -> Result<(Graph, ProductLabeling)> {
    if d == 0 {
        return Err(Error::Precondition("power exponent must be at least 1".into()));
    }
    cartesian_product_all(&vec![g.clone(); d])
}

/// Model-level relabeling of `a □ b` into `b □ a`: flat index map.
pub fn swap_map(na: usize, nb: usize) -> Vec<usize> {
    (0..na * nb).map(|v| (v % nb) * na + v / nb).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationResult {
    pub factors: Vec<Graph>,
    /// `coordinates[v]` is the tuple of factor vertices for vertex `v` of the input.
    pub coordinates: Vec<Vec<usize>>,
    #[serde(skip)]
    pub labeling: ProductLabeling,
}

impl FactorizationResult {
    /// Re-multiplies the factors and checks that the coordinate map is an
    /// isomorphism onto `g`.
    pub fn certifies(&self, g: &Graph) -> bool {
        let Ok((prod, lab)) = cartesian_product_all(&self.factors) else {
            return false;
        };
        if prod.n() != g.n() || prod.edge_count() != g.edge_count() || self.coordinates.len() != g.n() {
            return false;
        }
        let mut flat = Vec::with_capacity(g.n());
        let mut seen = VertexSet::new(g.n());
        for c in &self.coordinates {
            if c.len() != lab.dimension() || c.iter().zip(lab.factor_sizes()).any(|(&x, &n)| x >= n) {
                return false;
            }
            let f = lab.encode(c);
            if !seen.insert(f) {
                return false;
            }
            flat.push(f);
        }
        g.edges().all(|(u, v)| prod.has_edge(flat[u], flat[v]))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn all_distances(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.n())
        .map(|s| {
            let mut d = vec![u32::MAX; g.n()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in g.neighbors(u) {
                    if d[v] == u32::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// Partition of the edges of a connected graph into the classes of the
/// product relation. Each class is the edge set of one prime factor's fibers.
fn product_relation(g: &Graph, edges: &[(usize, usize)]) -> Vec<usize> {
    let id: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eid = |a: usize, b: usize| id[&(a.min(b), a.max(b))];
    let mut uf = UnionFind::new(edges.len());

    // Square property on pairs of incident edges.
    for u in 0..g.n() {
        let ns = g.neighbors(u);
        for (i, &v) in ns.iter().enumerate() {
            for &w in &ns[i + 1..] {
                if g.has_edge(v, w) {
                    uf.union(eid(u, v), eid(u, w));
                    continue;
                }
                let mut common = g.row(v).clone();
                common.intersect_with(g.row(w));
                common.remove(u);
                match common.len() {
                    0 => uf.union(eid(u, v), eid(u, w)),
                    1 => {
                        let x = common.first().unwrap();
                        if g.has_edge(u, x) {
                            uf.union(eid(u, v), eid(u, w));
                        } else {
                            // chordless square u-v-x-w: opposite sides
                            uf.union(eid(u, v), eid(w, x));
                            uf.union(eid(u, w), eid(v, x));
                        }
                    }
                    _ => uf.union(eid(u, v), eid(u, w)),
                }
            }
        }
    }

    // Djokovic-Winkler relation; together with the incident-pair rules above
    // its closure is exactly the product relation of a connected graph.
    let d = all_distances(g);
    for (i, &(x, y)) in edges.iter().enumerate() {
        for (j, &(a, b)) in edges.iter().enumerate().skip(i + 1) {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            if d[x][a] + d[y][b] != d[x][b] + d[y][a] {
                uf.union(i, j);
            }
        }
    }
    (0..edges.len()).map(|i| uf.find(i)).collect()
}

/// Components of `g` restricted to edges accepted by `keep`; returns a
/// component label per vertex.
fn component_labels(g: &Graph, keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in 0..g.n() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX && keep(u, v) {
                    label[v] = next;
                    q.push_back(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// Prime factors of a connected graph with a coordinate certificate.
///
/// Factors come out in canonical order: by vertex count, then edge count, then
/// canonical edge list; each factor is relabeled into its canonical form.
pub fn prime_factorize(g: &Graph) -> Result<FactorizationResult> {
    if g.n() < 2 {
        return Err(Error::Precondition("factorization needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges: Vec<_> = g.edges().collect();
    let class = product_relation(g, &edges);
    let mut roots: Vec<usize> = class.clone();
    roots.sort_unstable();
    roots.dedup();
    let edge_class: HashMap<(usize, usize), usize> = edges
        .iter()
        .zip(&class)
        .map(|(&e, &c)| (e, roots.binary_search(&c).unwrap()))
        .collect();
    let class_of = |a: usize, b: usize| edge_class[&(a.min(b), a.max(b))];

    let mut factors = Vec::with_capacity(roots.len());
    let mut coords = vec![Vec::with_capacity(roots.len()); g.n()];
    for c in 0..roots.len() {
        // fiber through vertex 0 and the projection onto it
        let along = component_labels(g, |a, b| class_of(a, b) == c);
        let across = component_labels(g, |a, b| class_of(a, b) != c);
        let fiber: Vec<usize> = (0..g.n()).filter(|&v| along[v] == along[0]).collect();
        let mut slot_of_layer = HashMap::new();
        for (i, &f) in fiber.iter().enumerate() {
            if slot_of_layer.insert(across[f], i).is_some() {
                return Err(Error::Internal("fiber meets a layer twice".into()));
            }
        }
        for v in 0..g.n() {
            let slot = *slot_of_layer
                .get(&across[v])
                .ok_or_else(|| Error::Internal("layer misses the root fiber".into()))?;
            coords[v].push(slot);
        }
        factors.push(g.induced_subgraph(&fiber));
    }

    // canonical relabeling and ordering
    let mut keyed: Vec<(CanonKey, Graph, Vec<usize>, usize)> = factors
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let perm = canonical_permutation(&f);
            let cf = f.relabel(&perm);
            (canon_key(&cf), cf, perm, i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let coordinates: Vec<Vec<usize>> = coords
        .iter()
        .map(|c| keyed.iter().map(|(_, _, perm, i)| perm[c[*i]]).collect())
        .collect();
    let factors: Vec<Graph> = keyed.into_iter().map(|(_, f, _, _)| f).collect();
    let labeling = ProductLabeling::new(factors.iter().map(Graph::n).collect());
    let result = FactorizationResult {
        factors,
        coordinates,
        labeling,
    };
    if !result.certifies(g) {
        return Err(Error::Internal("factorization certificate failed".into()));
    }
    Ok(result)
}

pub fn is_prime_graph(g: &Graph) -> Result<bool> {
    Ok(prime_factorize(g)?.factors.len() == 1)
}

type CanonKey = (usize, usize, Vec<(usize, usize)>);

fn canon_key(g: &Graph) -> CanonKey {
    (g.n(), g.edge_count(), g.edges().collect())
}

/// Largest graph for which [`canonical_permutation`] is exhaustive.
pub const CANONICAL_EXHAUSTIVE_LIMIT: usize = 8;

/// Relabeling `perm` (vertex `v` goes to `perm[v]`) giving the
/// lexicographically smallest sorted edge list. Exhaustive up to
/// [`CANONICAL_EXHAUSTIVE_LIMIT`] vertices; larger graphs get a deterministic
/// degree-then-BFS order that is not guaranteed canonical.
pub fn canonical_permutation(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n > CANONICAL_EXHAUSTIVE_LIMIT {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut perm = vec![usize::MAX; n];
        let mut next = 0;
        for &s in &order {
            if perm[s] != usize::MAX {
                continue;
            }
            perm[s] = next;
            next += 1;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in g.neighbors(u) {
                    if perm[v] == usize::MAX {
                        perm[v] = next;
                        next += 1;
                        q.push_back(v);
                    }
                }
            }
        }
        return perm;
    }
    let edges: Vec<_> = g.edges().collect();
    let key = |perm: &[usize]| {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        e.sort_unstable();
        e
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_perm = perm.clone();
    let mut best = key(&perm);
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = key(&perm);
            if k < best {
                best = k;
                best_perm.clone_from(&perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best_perm
}

/// Canonical form of a small graph (exhaustive up to 8 vertices).
pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_permutation(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, grid, hypercube, path, star};

    #[test]
    fn labeling_round_trip() {
        let lab = ProductLabeling::new(vec![3, 4, 2]);
        assert_eq!(lab.len(), 24);
        for i in 0..24 {
            assert_eq!(lab.encode(&lab.decode(i)), i);
        }
        assert_eq!(lab.encode(&[1, 0, 0]), 8);
    }

    #[test]
    fn square() {
        let (g, _) = cartesian_product(&complete(2), &complete(2)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert!(g.is_connected());
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn k7_by_k144() {
        let (g, _) = cartesian_product(&complete(7), &complete(144)).unwrap();
        assert_eq!(g.n(), 1008);
        assert!((0..1008).all(|v| g.degree(v) == 149));
        assert_eq!(g.edge_count(), 75096);
    }

    #[test]
    fn path_squared_is_grid() {
        let (g, _) = cartesian_product(&path(3), &path(3)).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g, grid(3));
    }

    #[test]
    fn powers() {
        let (q3, _) = cartesian_power(&complete(2), 3).unwrap();
        assert_eq!((q3.n(), q3.edge_count()), (8, 12));
        assert_eq!(cartesian_power(&cycle(5), 1).unwrap().0, cycle(5));
        let (c3sq, _) = cartesian_power(&cycle(3), 2).unwrap();
        assert_eq!((c3sq.n(), c3sq.edge_count()), (9, 18));
        assert!(cartesian_power(&cycle(3), 0).is_err());
    }

    #[test]
    fn empty_factor_rejected() {
        assert!(cartesian_product(&Graph::empty(0), &complete(2)).is_err());
    }

    #[test]
    fn swap_map_is_isomorphism() {
        let a = path(3);
        let b = cycle(4);
        let (ab, _) = cartesian_product(&a, &b).unwrap();
        let (ba, _) = cartesian_product(&b, &a).unwrap();
        let map = swap_map(3, 4);
        assert_eq!(ab.relabel(&map), ba);
    }

    #[test]
    fn factor_c4() {
        let r = prime_factorize(&cycle(4)).unwrap();
        assert_eq!(r.factors, vec![complete(2), complete(2)]);
        assert!(r.certifies(&cycle(4)));
    }

    #[test]
    fn factor_q3() {
        let q3 = hypercube(3);
        let r = prime_factorize(&q3).unwrap();
        assert_eq!(r.factors, vec![complete(2); 3]);
    }

    #[test]
    fn p4_is_prime() {
        // exhaustive: the only candidate split of 4 vertices is K2 x K2 = C4, not P4
        let p4 = path(4);
        let c4 = cartesian_product(&complete(2), &complete(2)).unwrap().0;
        assert_ne!(canonical_form(&p4), canonical_form(&c4));
        assert_eq!(prime_factorize(&p4).unwrap().factors.len(), 1);
        assert!(is_prime_graph(&p4).unwrap());
    }

    #[test]
    fn primes() {
        assert!(is_prime_graph(&complete(2)).unwrap());
        assert!(!is_prime_graph(&cycle(4)).unwrap());
        assert!(is_prime_graph(&cycle(5)).unwrap());
        assert!(is_prime_graph(&star(3)).unwrap());
        assert!(is_prime_graph(&complete(5)).unwrap());
    }

    #[test]
    fn factorization_errors() {
        assert_eq!(prime_factorize(&Graph::empty(1)).unwrap_err().to_string(), Error::Precondition("factorization needs at least 2 vertices".into()).to_string());
        assert_eq!(prime_factorize(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn mixed_factors() {
        let (g, _) = cartesian_product_all(&[cycle(5), star(3), complete(3)]).unwrap();
        let r = prime_factorize(&g).unwrap();
        let want: Vec<Graph> = {
            let mut v = vec![canonical_form(&cycle(5)), canonical_form(&star(3)), canonical_form(&complete(3))];
            v.sort_by_key(canon_key);
            v
        };
        assert_eq!(r.factors, want);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let h = g.relabel(&[4, 2, 0, 1, 3]);
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }
}
