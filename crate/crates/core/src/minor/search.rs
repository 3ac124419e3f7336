//! Exact minor search for small hosts (at most 64 vertices).
//!
//! The search walks quotient graphs of the host. A state is a family of
//! disjoint connected vertex groups ("parts"); every part will end up inside
//! one branch set or unused. Branching on a part `v` covers three cases:
//! `v` is contracted with a neighbouring part, `v` is frozen as a complete
//! branch set on its own, or `v` is deleted. A state succeeds as soon as the
//! pattern embeds into the quotient as a subgraph. Failed states are memoized
//! by their canonical part list.
//!
//! Clique patterns get extra reductions that are sound for `K_h` only:
//! unfrozen parts of degree 0 (h >= 2) and 1 (h >= 3) are deleted, and
//! degree-2 parts (h >= 4) are contracted into a neighbour.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::generate::complete;
use crate::graph::{Graph, VertexSet};
use crate::minor::MinorModel;

/// Node limit for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(200_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorSearch {
    Found(MinorModel),
    /// The search completed without finding a model.
    Absent,
    /// The node budget ran out first.
    Indeterminate,
}

impl MinorSearch {
    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            MinorSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

struct Exhausted;

type Outcome = std::result::Result<Option<Vec<u64>>, Exhausted>;

#[derive(Clone, Debug)]
struct State {
    /// `(members, frozen)` sorted by `members`.
    parts: Vec<(u64, bool)>,
}

#[derive(Clone, Copy)]
enum Op {
    Delete(usize),
    Freeze(usize),
    Contract(usize, usize),
}

impl State {
    fn apply(&self, op: Op) -> State {
        let mut parts = self.parts.clone();
        match op {
            Op::Delete(i) => {
                parts.remove(i);
            }
            Op::Freeze(i) => parts[i].1 = true,
            Op::Contract(i, j) => {
                let merged = parts[i].0 | parts[j].0;
                let (lo, hi) = (i.min(j), i.max(j));
                parts.remove(hi);
                parts[lo] = (merged, false);
                parts.sort_unstable_by_key(|p| p.0);
            }
        }
        State { parts }
    }

    fn key(&self) -> (Vec<u64>, u64) {
        let frozen = self
            .parts
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, p)| acc | (p.1 as u64) << i);
        (self.parts.iter().map(|p| p.0).collect(), frozen)
    }

    fn frozen_mask(&self) -> u64 {
        self.key().1
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            b
        })
    })
}

struct Engine {
    rows: Vec<u64>,
    nodes: u64,
    limit: u64,
    memo: HashSet<(Vec<u64>, u64)>,
}

const MEMO_CAP: usize = 20_000_000;

impl Engine {
    fn new(host: &Graph, budget: Budget) -> Self {
        Engine {
            rows: host.rows_u64().expect("host has at most 64 vertices"),
            nodes: 0,
            limit: budget.0,
            memo: HashSet::new(),
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn remember(&mut self, key: (Vec<u64>, u64)) {
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
    }

    /// Quotient adjacency over part indices.
    fn quotient(&self, st: &State) -> Vec<u64> {
        let nb: Vec<u64> = st
            .parts
            .iter()
            .map(|&(m, _)| bits(m).fold(0, |acc, v| acc | self.rows[v]) & !m)
            .collect();
        let k = st.parts.len();
        let mut adj = vec![0u64; k];
        for i in 0..k {
            for j in i + 1..k {
                if nb[i] & st.parts[j].0 != 0 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        adj
    }

    fn clique(&mut self, mut st: State, h: usize) -> Outcome {
        self.tick()?;
        let adj = loop {
            let adj = self.quotient(&st);
            let frozen = st.frozen_mask();
            for i in bits(frozen) {
                let deg = adj[i].count_ones() as usize;
                if deg + 1 < h || frozen & !adj[i] & !(1 << i) != 0 {
                    return Ok(None);
                }
            }
            let mut op = None;
            for (i, &(_, fz)) in st.parts.iter().enumerate() {
                if fz {
                    continue;
                }
                match adj[i].count_ones() {
                    0 => op = Some(Op::Delete(i)),
                    1 if h >= 3 => op = Some(Op::Delete(i)),
                    2 if h >= 4 => {
                        let mut nb = bits(adj[i]);
                        let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
                        op = Some(if !st.parts[a].1 {
                            Op::Contract(i, a)
                        } else if !st.parts[b].1 {
                            Op::Contract(i, b)
                        } else {
                            Op::Delete(i)
                        });
                    }
                    _ => continue,
                }
                break;
            }
            match op {
                Some(op) => st = st.apply(op),
                None => break adj,
            }
        };

        let k = st.parts.len();
        if k < h {
            return Ok(None);
        }
        if let Some(found) = find_clique(&adj, h) {
            return Ok(Some(bits(found).map(|i| st.parts[i].0).collect()));
        }

        let comps = components(&adj);
        if comps.len() > 1 {
            let frozen = st.frozen_mask();
            let targets: Vec<u64> = if frozen != 0 {
                match comps.iter().find(|&&c| c & frozen != 0) {
                    Some(&c) if c & frozen == frozen => vec![c],
                    _ => return Ok(None),
                }
            } else {
                comps
            };
            for c in targets {
                let sub = State {
                    parts: bits(c).map(|i| st.parts[i]).collect(),
                };
                if let Some(found) = self.clique(sub, h)? {
                    return Ok(Some(found));
                }
            }
            return Ok(None);
        }

        // In a connected quotient, branch sets need k_used - h internal edges
        // plus the clique edges, and every deleted part carries its own edge.
        let e: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        if e < h * (h - 1) / 2 + (k - h) {
            return Ok(None);
        }

        let key = st.key();
        if self.memo.contains(&key) {
            return Ok(None);
        }

        let frozen = st.frozen_mask();
        let Some(v) = (0..k)
            .filter(|&i| !st.parts[i].1)
            .min_by_key(|&i| (adj[i].count_ones(), i))
        else {
            self.remember(key);
            return Ok(None);
        };
        for u in bits(adj[v] & !frozen) {
            if let Some(found) = self.clique(st.apply(Op::Contract(v, u)), h)? {
                return Ok(Some(found));
            }
        }
        if adj[v].count_ones() as usize + 1 >= h && (frozen.count_ones() as usize) < h {
            if let Some(found) = self.clique(st.apply(Op::Freeze(v)), h)? {
                return Ok(Some(found));
            }
        }
        if let Some(found) = self.clique(st.apply(Op::Delete(v)), h)? {
            return Ok(Some(found));
        }
        self.remember(key);
        Ok(None)
    }

    /// General pattern: returns the part mask assigned to each pattern vertex.
    fn general(&mut self, st: State, pattern: &PatternInfo) -> Outcome {
        self.tick()?;
        let k = st.parts.len();
        if k < pattern.n {
            return Ok(None);
        }
        let adj = self.quotient(&st);
        let e: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        if e < pattern.m {
            return Ok(None);
        }
        if let Some(map) = embed(&pattern.adj, &adj) {
            return Ok(Some(map.into_iter().map(|i| st.parts[i].0).collect()));
        }
        let key = st.key();
        if self.memo.contains(&key) {
            return Ok(None);
        }
        let frozen = st.frozen_mask();
        let Some(v) = (0..k)
            .filter(|&i| !st.parts[i].1)
            .min_by_key(|&i| (adj[i].count_ones(), i))
        else {
            self.remember(key);
            return Ok(None);
        };
        for u in bits(adj[v] & !frozen) {
            if let Some(found) = self.general(st.apply(Op::Contract(v, u)), pattern)? {
                return Ok(Some(found));
            }
        }
        if (frozen.count_ones() as usize) < pattern.n {
            if let Some(found) = self.general(st.apply(Op::Freeze(v)), pattern)? {
                return Ok(Some(found));
            }
        }
        if let Some(found) = self.general(st.apply(Op::Delete(v)), pattern)? {
            return Ok(Some(found));
        }
        self.remember(key);
        Ok(None)
    }
}

struct PatternInfo {
    n: usize,
    m: usize,
    adj: Vec<u64>,
}

fn components(adj: &[u64]) -> Vec<u64> {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut left = all;
    let mut out = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let next = bits(frontier).fold(0, |acc, i| acc | adj[i]) & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Some clique of exactly `h` vertices, as a mask.
pub(crate) fn find_clique(adj: &[u64], h: usize) -> Option<u64> {
    fn rec(adj: &[u64], chosen: u64, size: usize, cand: u64, h: usize) -> Option<u64> {
        if size == h {
            return Some(chosen);
        }
        let mut cand = cand;
        while cand != 0 {
            if size + (cand.count_ones() as usize) < h {
                return None;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if let Some(c) = rec(adj, chosen | 1 << v, size + 1, cand & adj[v], h) {
                return Some(c);
            }
        }
        None
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    // only vertices with enough neighbours can be in a K_h
    let cand = (0..adj.len())
        .filter(|&v| adj[v].count_ones() as usize + 1 >= h)
        .fold(0u64, |acc, v| acc | 1 << v)
        & all;
    rec(adj, 0, 0, cand, h)
}

/// Largest clique, as a mask.
pub(crate) fn max_clique(adj: &[u64]) -> u64 {
    fn rec(adj: &[u64], chosen: u64, cand: u64, best: &mut u64) {
        if cand == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        let mut cand = cand;
        while cand != 0 {
            if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(adj, chosen | 1 << v, cand & adj[v], best);
        }
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = 0;
    rec(adj, 0, all, &mut best);
    best
}

/// Subgraph embedding of `pattern` into `host` (both as adjacency masks).
fn embed(pattern: &[u64], host: &[u64]) -> Option<Vec<usize>> {
    let p = pattern.len();
    if p == 0 {
        return Some(Vec::new());
    }
    // order: each next vertex maximizes links to those already placed
    let mut order = Vec::with_capacity(p);
    let mut placed = 0u64;
    while order.len() < p {
        let next = (0..p)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((pattern[v] & placed).count_ones(), pattern[v].count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let all = if host.len() == 64 { u64::MAX } else { (1u64 << host.len()) - 1 };
    let mut map = vec![usize::MAX; p];

    fn rec(
        depth: usize,
        order: &[usize],
        pattern: &[u64],
        host: &[u64],
        all: u64,
        used: u64,
        map: &mut Vec<usize>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let need = pattern[v].count_ones();
        let mut cand = all & !used;
        for w in bits(pattern[v]) {
            if map[w] != usize::MAX {
                cand &= host[map[w]];
            }
        }
        for c in bits(cand) {
            if host[c].count_ones() < need {
                continue;
            }
            map[v] = c;
            if rec(depth + 1, order, pattern, host, all, used | 1 << c, map) {
                return true;
            }
        }
        map[v] = usize::MAX;
        false
    }

    rec(0, &order, pattern, host, all, 0, &mut map).then_some(map)
}

fn initial_state(n: usize) -> State {
    State {
        parts: (0..n).map(|v| (1u64 << v, false)).collect(),
    }
}

fn masks_to_model(host: &Graph, pattern: Graph, masks: Vec<u64>) -> Result<MinorModel> {
    let sets = masks
        .into_iter()
        .map(|m| VertexSet::from_indices(host.n(), bits(m)))
        .collect();
    MinorModel::verified(host.clone(), pattern, sets)
        .map_err(|e| Error::Internal(format!("search produced an invalid model: {e}")))
}

/// Exact minor test for hosts with at most 64 vertices.
///
/// Complete patterns use the clique-specific search; everything else goes
/// through the general quotient search with a subgraph-embedding check.
pub fn has_minor(host: &Graph, pattern: &Graph, budget: Budget) -> Result<MinorSearch> {
    if host.n() > 64 {
        return Err(Error::TooLarge(host.n()));
    }
    if pattern.n() > 64 {
        return Ok(MinorSearch::Absent);
    }
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(MinorSearch::Absent);
    }
    let mut engine = Engine::new(host, budget);
    let outcome = if pattern.is_complete() {
        let h = pattern.n();
        if h == 0 {
            Ok(Some(Vec::new()))
        } else if h == 1 {
            Ok(Some(vec![1]))
        } else {
            engine.clique(initial_state(host.n()), h)
        }
    } else {
        let info = PatternInfo {
            n: pattern.n(),
            m: pattern.edge_count(),
            adj: pattern.rows_u64().expect("checked above"),
        };
        engine.general(initial_state(host.n()), &info)
    };
    match outcome {
        Err(Exhausted) => Ok(MinorSearch::Indeterminate),
        Ok(None) => Ok(MinorSearch::Absent),
        Ok(Some(masks)) => Ok(MinorSearch::Found(masks_to_model(host, pattern.clone(), masks)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadwigerResult {
    /// Largest `h` with a verified `K_h` model.
    pub value: usize,
    /// False when a budget ran out (or the host is too large to search), in
    /// which case `value` is only a certified lower bound.
    pub exact: bool,
    pub witness: MinorModel,
}

/// Hadwiger number by increasing `h` from the clique number until a `K_h`
/// query is proven absent. `budget` applies to each query separately.
pub fn hadwiger_exact(g: &Graph, budget: Budget) -> Result<HadwigerResult> {
    let n = g.n();
    if g.is_complete() {
        return Ok(HadwigerResult {
            value: n,
            exact: true,
            witness: MinorModel::trivial(g),
        });
    }
    let (lower, clique_set) = match g.rows_u64() {
        Some(rows) => {
            let c = max_clique(&rows);
            (c.count_ones() as usize, bits(c).collect::<Vec<_>>())
        }
        None => {
            let c = greedy_clique(g);
            (c.len(), c)
        }
    };
    let sets: Vec<VertexSet> = clique_set.iter().map(|&v| VertexSet::from_indices(n, [v])).collect();
    let mut best = HadwigerResult {
        value: lower,
        exact: false,
        witness: MinorModel::verified(g.clone(), complete(lower), sets)?,
    };
    if n > 64 {
        return Ok(best);
    }
    loop {
        let h = best.value + 1;
        if h > n || h * (h - 1) / 2 > g.edge_count() {
            best.exact = true;
            return Ok(best);
        }
        match has_minor(g, &complete(h), budget)? {
            MinorSearch::Found(m) => {
                best.value = h;
                best.witness = m;
            }
            MinorSearch::Absent => {
                best.exact = true;
                return Ok(best);
            }
            MinorSearch::Indeterminate => return Ok(best),
        }
    }
}

/// Greedy clique by descending degree, for hosts too large for the exact kernel.
pub(crate) fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, grid, path, star};
    use crate::product::cartesian_product;

    #[test]
    fn k3_in_c4() {
        let r = has_minor(&cycle(4), &complete(3), Budget::default()).unwrap();
        assert!(r.model().unwrap().is_valid());
    }

    #[test]
    fn no_k5_in_grid() {
        let r = has_minor(&grid(3), &complete(5), Budget::default()).unwrap();
        assert_eq!(r, MinorSearch::Absent);
    }

    #[test]
    fn k1_always() {
        let r = has_minor(&path(3), &complete(1), Budget::default()).unwrap();
        assert_eq!(r.model().unwrap().branch_lists(), vec![vec![0]]);
    }

    #[test]
    fn general_pattern() {
        // C4 is a minor of the 3x3 grid but K_{1,4} is not a minor of C_6
        let r = has_minor(&grid(3), &cycle(4), Budget::default()).unwrap();
        assert!(r.model().unwrap().is_valid());
        let r = has_minor(&cycle(6), &star(4), Budget::default()).unwrap();
        assert_eq!(r, MinorSearch::Absent);
        let r = has_minor(&grid(3), &star(4), Budget::default()).unwrap();
        assert!(r.model().is_some());
    }

    #[test]
    fn tiny_budget_is_indeterminate() {
        let q4 = crate::graph::generate::hypercube(4);
        let r = has_minor(&q4, &complete(6), Budget(3)).unwrap();
        assert_eq!(r, MinorSearch::Indeterminate);
    }

    #[test]
    fn hadwiger_small() {
        assert_eq!(hadwiger_exact(&cycle(4), Budget::default()).unwrap().value, 3);
        assert_eq!(hadwiger_exact(&path(4), Budget::default()).unwrap().value, 2);
        assert_eq!(hadwiger_exact(&Graph::empty(3), Budget::default()).unwrap().value, 1);
        assert_eq!(hadwiger_exact(&Graph::empty(0), Budget::default()).unwrap().value, 0);
        for n in 1..=6 {
            let r = hadwiger_exact(&complete(n), Budget::default()).unwrap();
            assert_eq!((r.value, r.exact), (n, true));
        }
    }

    #[test]
    fn miller_examples() {
        let (c6k2, _) = cartesian_product(&cycle(6), &complete(2)).unwrap();
        let r = hadwiger_exact(&c6k2, Budget::default()).unwrap();
        assert_eq!((r.value, r.exact), (4, true));
        assert!(r.witness.is_valid());
        let (tk3, _) = cartesian_product(&star(3), &complete(3)).unwrap();
        assert_eq!(hadwiger_exact(&tk3, Budget::default()).unwrap().value, 4);
    }

    #[test]
    fn large_host_rejected() {
        assert_eq!(has_minor(&path(65), &complete(2), Budget::default()), Err(Error::TooLarge(65)));
    }

    #[test]
    fn cliques() {
        let c5 = cycle(5).rows_u64().unwrap();
        assert_eq!(max_clique(&c5).count_ones(), 2);
        assert!(find_clique(&c5, 3).is_none());
        let k4 = complete(4).rows_u64().unwrap();
        assert_eq!(find_clique(&k4, 4), Some(0b1111));
    }
}
