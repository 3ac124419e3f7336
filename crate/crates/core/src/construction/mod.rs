//! Explicit clique-minor constructions in Cartesian products, and the bounds
//! they feed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::affine::{affine_plane, is_prime, AffinePlane};
use crate::coloring::{chromatic_number, extract_w_minor};
use crate::error::{Error, Result};
use crate::graph::generate::{complete, double_grid, fan};
use crate::graph::{Graph, VertexSet};
use crate::minor::{compose_models, hadwiger_exact, product_of_models, Budget, MinorModel};
use crate::product::{cartesian_power, cartesian_product, swap_map};

/// Largest odd prime `p` with `(p(p+1))^2 <= l`.
pub fn max_construction_prime(l: usize) -> Option<usize> {
    let fits = |p: usize| (p * (p + 1)).checked_pow(2).is_some_and(|v| v <= l);
    let mut p = (l as f64).powf(0.25) as usize + 1;
    while p >= 3 && !fits(p) {
        p -= 1;
    }
    (3..=p).rev().find(|&p| p % 2 == 1 && is_prime(p as u64))
}

/// Layout of the clique model in `K_h □ K_l`.
///
/// Copy `(i, j, m)` of `K_l` (1-based, `i ≤ s`, `j ≤ (p-1)/2`, `m ≤ 2p+1`)
/// is `K_h` vertex `(i-1)g + (j-1)(2p+1) + (m-1)`; higher `K_h` vertices are
/// unused. Inside a copy, `K_l` vertices `0..p^4` form the big square (point
/// `(x, y)` at `x·p^2 + y`), followed by the small squares `Q_1..Q_{2p+1}`,
/// each `p × p` row-major. The remaining `K_l` vertices are unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub h: usize,
    pub l: usize,
    pub p: usize,
    /// Copies per large group, `(p-1)(2p+1)/2`.
    pub g: usize,
    /// Number of large groups, `⌊h/g⌋`.
    pub s: usize,
}

impl ConstructionParams {
    pub fn new(h: usize, l: usize) -> Result<Self> {
        let p = max_construction_prime(l).ok_or_else(|| {
            Error::Precondition(format!("no odd prime p >= 3 with (p(p+1))^2 <= {l}"))
        })?;
        let g = (p - 1) * (2 * p + 1) / 2;
        if h < g {
            return Err(Error::Precondition(format!("h = {h} is below one group of {g} copies")));
        }
        assert!(p * p + 1 >= g, "plane has too few parallel classes");
        Ok(ConstructionParams { h, l, p, g, s: h / g })
    }

    /// Size of the clique the construction certifies, `s·p^2·g`.
    pub fn clique_size(&self) -> usize {
        self.s * self.p * self.p * self.g
    }

    pub fn modulus(&self) -> usize {
        2 * self.p + 1
    }

    /// 1-based residue of `m + delta` modulo `2p+1`.
    pub fn wrap(&self, m: usize, delta: isize) -> usize {
        let r = self.modulus() as isize;
        ((m as isize - 1 + delta).rem_euclid(r) + 1) as usize
    }

    pub fn copy_index(&self, i: usize, j: usize, m: usize) -> usize {
        (i - 1) * self.g + (j - 1) * self.modulus() + (m - 1)
    }

    /// `K_l` vertex of entry `(a, b)` (1-based) of small square `Q_k`.
    pub fn square_vertex(&self, k: usize, a: usize, b: usize) -> usize {
        let p = self.p;
        p.pow(4) + (k - 1) * p * p + (a - 1) * p + (b - 1)
    }

    pub fn vertex(&self, copy: usize, kl: usize) -> usize {
        copy * self.l + kl
    }

    /// Host vertices of `M(i, j, m, t)`.
    pub fn branch_set(&self, plane: &AffinePlane, i: usize, j: usize, m: usize, t: usize) -> Vec<usize> {
        let p = self.p;
        let (a1, a2) = ((t - 1) / p + 1, (t - 1) % p + 1);
        let home = self.copy_index(i, j, m);
        let row_copy = self.copy_index(i, j, self.wrap(m, a2 as isize));
        let col_copy = self.copy_index(i, j, self.wrap(m, -(a1 as isize)));
        let line = plane.line((j - 1) * self.modulus() + m, t);
        let mut out: Vec<usize> = line.iter().map(|&x| self.vertex(home, x)).collect();
        out.push(self.vertex(home, self.square_vertex(m, a1, a2)));
        out.extend((1..=p).map(|b| self.vertex(row_copy, self.square_vertex(m, a1, b))));
        out.extend((1..=p).map(|a| self.vertex(col_copy, self.square_vertex(m, a, a2))));
        out
    }

    /// All branch sets, ordered by `(i, j, m, t)`.
    pub fn branch_sets(&self) -> Result<Vec<Vec<usize>>> {
        let plane = affine_plane((self.p * self.p) as u64)?;
        let mut sets = Vec::with_capacity(self.clique_size());
        for i in 1..=self.s {
            for j in 1..=(self.p - 1) / 2 {
                for m in 1..=self.modulus() {
                    for t in 1..=self.p * self.p {
                        sets.push(self.branch_set(&plane, i, j, m, t));
                    }
                }
            }
        }
        Ok(sets)
    }
}

/// A verified `K_N` model in `K_h □ K_l`, `N = ⌊h/g⌋·p^2·g`.
pub fn product_clique_model(h: usize, l: usize) -> Result<MinorModel> {
    product_clique_model_with(h, l, true)
}

/// As [`product_clique_model`]; `verify = false` skips the final check.
pub fn product_clique_model_with(h: usize, l: usize, verify: bool) -> Result<MinorModel> {
    let params = ConstructionParams::new(h, l)?;
    let sets = params.branch_sets()?;
    let (host, _) = cartesian_product(&complete(h), &complete(l))?;
    let model = MinorModel::from_lists(host, complete(sets.len()), &sets)?;
    if verify {
        model
            .ensure_verified()
            .map_err(|e| Error::Internal(format!("clique product model failed to verify: {e}")))?;
    }
    Ok(model)
}

/// Why two branch sets of the clique product model are adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    /// Both sets meet the same copy of `K_l`.
    SameCopy,
    /// Both sets hold copies of one big-square vertex.
    LineIntersection,
    /// Both sets hold copies of one small-square vertex.
    CrossOverlap,
}

/// Labels every pair of branch sets with the first mechanism that makes them
/// adjacent. Fails if some pair is covered by none.
pub fn product_clique_mechanisms(h: usize, l: usize) -> Result<Vec<(usize, usize, Mechanism)>> {
    let params = ConstructionParams::new(h, l)?;
    let sets = params.branch_sets()?;
    let big = params.p.pow(4);
    let split = |s: &Vec<usize>| {
        let mut copies = VertexSet::new(h);
        let mut kl = VertexSet::new(l);
        for &v in s {
            copies.insert(v / l);
            kl.insert(v % l);
        }
        (copies, kl)
    };
    let parts: Vec<_> = sets.iter().map(split).collect();
    let mut out = Vec::with_capacity(sets.len() * sets.len().saturating_sub(1) / 2);
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let (ca, ka) = &parts[a];
            let (cb, kb) = &parts[b];
            let mechanism = if ca.intersects(cb) {
                Mechanism::SameCopy
            } else {
                let mut shared = ka.clone();
                shared.intersect_with(kb);
                match shared.first() {
                    Some(v) if v < big => Mechanism::LineIntersection,
                    Some(_) => Mechanism::CrossOverlap,
                    None => {
                        return Err(Error::Internal(format!(
                            "branch sets {a} and {b} share neither a copy nor a vertex"
                        )))
                    }
                }
            };
            out.push((a, b, mechanism));
        }
    }
    Ok(out)
}

/// The hooks `B_i = {<i,0..=i>} ∪ {<0..i, i>}` as a verified `K_n` model in
/// `W_n □ W_n`, with `<a, b>` at `a·n + b`.
pub fn wn_square_clique_model(n: usize) -> Result<MinorModel> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let (host, _) = cartesian_product(&fan(n), &fan(n))?;
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..=i).map(|b| i * n + b).chain((0..i).map(|a| a * n + i)).collect())
        .collect();
    let model = MinorModel::from_lists(host, complete(n), &sets)?;
    model.ensure_verified()?;
    Ok(model)
}

/// Row `i` of the first grid plus column `i` of the second, as a verified
/// `K_n` model in the double grid. Vertex `(<r, c>, copy)` is `(r·n + c)·2 + copy`.
pub fn double_grid_clique_model(n: usize) -> Result<MinorModel> {
    if n < 2 {
        return Err(Error::InvalidParameter("double grid model needs n >= 2".into()));
    }
    let cell = |r: usize, c: usize, copy: usize| (r * n + c) * 2 + copy;
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|c| cell(i, c, 0)).chain((0..n).map(|r| cell(r, i, 1))).collect())
        .collect();
    let model = MinorModel::from_lists(double_grid(n), complete(n), &sets)?;
    model.ensure_verified()?;
    Ok(model)
}

/// Largest `h` with `n + m - 2 + (nm/h - 1)(n - 2) >= h - 1`, for `n >= m >= 1`.
///
/// Multiplying through by `h > 0` gives `h(m+1) - h^2 + nm(n-2) >= 0`, a
/// concave quadratic that is nonnegative at `h = 1`.
pub fn upper_bound_kn_km(n: usize, m: usize) -> Result<usize> {
    if m == 0 || n < m {
        return Err(Error::Precondition(format!("need n >= m >= 1, got n = {n}, m = {m}")));
    }
    let (n, m) = (n as i128, m as i128);
    let ok = |h: i128| h * (m + 1) - h * h + n * m * (n - 2) >= 0;
    let (mut lo, mut hi) = (1i128, n * m + m + 2);
    debug_assert!(ok(lo) && !ok(hi));
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h = lo as usize;
    assert!(
        h as f64 <= n as f64 * (m as f64).sqrt() + m as f64 + 1e-9,
        "bound {h} exceeds n·sqrt(m) + m"
    );
    Ok(h)
}

/// `2^⌊(k-1)/2⌋`, a lower bound on the Hadwiger number of `Q_k`.
pub fn hypercube_lower_bound(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(1 << ((k - 1) / 2))
}

/// A verified `K_n` model in `g □ h` where `n = χ(g) = χ(h)`: fan minors of
/// both factors, lifted to the product and composed with the hook model.
pub fn equal_chi_clique_model(g: &Graph, h: &Graph) -> Result<MinorModel> {
    let (cg, _) = chromatic_number(g);
    let (ch, _) = chromatic_number(h);
    if cg != ch {
        return Err(Error::Precondition(format!("chromatic numbers differ: {cg} and {ch}")));
    }
    let (host, _) = cartesian_product(g, h)?;
    if cg == 1 {
        return MinorModel::verified(host.clone(), complete(1), vec![VertexSet::from_indices(host.n(), [0])]);
    }
    let lifted = product_of_models(&extract_w_minor(g)?, &extract_w_minor(h)?)?;
    compose_models(&wn_square_clique_model(cg)?, &lifted)
}

/// A verified `K_{χ(f)}` model in `f^d`, via `f^d = f^⌈d/2⌉ □ f^⌊d/2⌋`.
pub fn power_clique_model(f: &Graph, d: usize) -> Result<MinorModel> {
    if d < 2 {
        return Err(Error::InvalidParameter("power needs d >= 2".into()));
    }
    let (left, _) = cartesian_power(f, d.div_ceil(2))?;
    let (right, _) = cartesian_power(f, d / 2)?;
    let model = equal_chi_clique_model(&left, &right)?;
    // mixed-radix labels of the split agree with those of the full power
    debug_assert_eq!(model.host(), &cartesian_power(f, d)?.0);
    Ok(model)
}

/// Products with at most this many vertices also get an exact search.
pub const EXACT_PRODUCT_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBounds {
    pub graph: Graph,
    pub eta: usize,
    pub eta_exact: bool,
    pub chi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    pub witness_id: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: usize,
    pub formula: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A certified `K_χ` minor exists.
    Holds,
    /// The exact Hadwiger number is below the chromatic number.
    Violated,
}

/// Exact values and certified bounds for the Hadwiger number of `g1 □ g2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph: Graph,
    pub factors: Vec<FactorBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_exact: Option<usize>,
    pub lower: Vec<LowerBound>,
    pub upper: Vec<UpperBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Verified models keyed by `witness_id`.
    pub witnesses: BTreeMap<String, MinorModel>,
}

impl BoundReport {
    pub fn best_lower(&self) -> usize {
        self.lower.iter().map(|b| b.value).max().unwrap_or(0)
    }

    pub fn best_upper(&self) -> Option<usize> {
        self.upper.iter().map(|b| b.value).min()
    }

    fn add_lower(&mut self, id: &str, provenance: &str, model: MinorModel) {
        debug_assert!(model.is_valid());
        self.lower.push(LowerBound {
            value: model.pattern().n(),
            witness_id: id.to_string(),
            provenance: provenance.to_string(),
        });
        self.witnesses.insert(id.to_string(), model);
    }
}

fn point_model(g: &Graph) -> MinorModel {
    MinorModel::new(g.clone(), complete(1), vec![VertexSet::from_indices(g.n(), [0])])
        .expect("shape matches")
}

/// Collects every bound this crate can certify for `g1 □ g2`: copies of the
/// factor clique minors, the clique product construction in both
/// orientations, an exact search on small products, and the counting and
/// complete-factor upper bounds.
pub fn product_bound_report(g1: &Graph, g2: &Graph, budget: Budget) -> Result<BoundReport> {
    if g1.n() == 0 || g2.n() == 0 {
        return Err(Error::Precondition("product factors must be nonempty".into()));
    }
    let (host, _) = cartesian_product(g1, g2)?;
    let e1 = hadwiger_exact(g1, budget)?;
    let e2 = hadwiger_exact(g2, budget)?;
    let (c1, _) = chromatic_number(g1);
    let (c2, _) = chromatic_number(g2);
    let mut report = BoundReport {
        graph: host.clone(),
        factors: vec![
            FactorBounds { graph: g1.clone(), eta: e1.value, eta_exact: e1.exact, chi: c1 },
            FactorBounds { graph: g2.clone(), eta: e2.value, eta_exact: e2.exact, chi: c2 },
        ],
        eta_exact: None,
        chi_exact: Some(c1.max(c2)),
        lower: Vec::new(),
        upper: Vec::new(),
        verdict: None,
        witnesses: BTreeMap::new(),
    };

    let lift1 = product_of_models(&e1.witness, &point_model(g2))?;
    report.add_lower("factor-1", "clique minor of the first factor", lift1);
    let lift2 = product_of_models(&point_model(g1), &e2.witness)?;
    report.add_lower("factor-2", "clique minor of the second factor", lift2);

    let lifted = product_of_models(&e1.witness, &e2.witness)?;
    if let Ok(inner) = product_clique_model(e1.value, e2.value) {
        let model = compose_models(&inner, &lifted)?;
        report.add_lower("clique-product", "clique product construction", model);
    }
    if let Ok(inner) = product_clique_model(e2.value, e1.value) {
        let swapped = product_of_models(&e2.witness, &e1.witness)?;
        let model = compose_models(&inner, &swapped)?;
        let model = model.map_host(host.clone(), &swap_map(g2.n(), g1.n()))?;
        model
            .ensure_verified()
            .map_err(|e| Error::Internal(format!("swapped model failed to verify: {e}")))?;
        report.add_lower("clique-product-swapped", "clique product construction, factors swapped", model);
    }

    if host.n() <= EXACT_PRODUCT_LIMIT {
        let exact = hadwiger_exact(&host, budget)?;
        if exact.exact {
            report.eta_exact = Some(exact.value);
        }
        report.add_lower("search", "exhaustive minor search", exact.witness);
    }

    report.upper.push(UpperBound { value: host.n(), formula: "vertex count".into() });
    let m = host.edge_count();
    let edge_bound = (0..=host.n()).take_while(|h| h * h.saturating_sub(1) / 2 <= m).last().unwrap_or(0);
    report.upper.push(UpperBound { value: edge_bound, formula: "h(h-1)/2 <= edge count".into() });
    if g1.is_complete() && g2.is_complete() {
        let (n, k) = (g1.n().max(g2.n()), g1.n().min(g2.n()));
        report.upper.push(UpperBound {
            value: upper_bound_kn_km(n, k)?,
            formula: "n + m - 2 + (nm/h - 1)(n - 2) >= h - 1".into(),
        });
    }

    let chi = c1.max(c2);
    report.verdict = if report.best_lower() >= chi {
        Some(Verdict::Holds)
    } else if report.eta_exact.is_some_and(|eta| eta < chi) {
        Some(Verdict::Violated)
    } else {
        None
    };
    if let (Some(eta), Some(up)) = (report.eta_exact, report.best_upper()) {
        assert!(report.best_lower() <= eta && eta <= up, "bounds do not sandwich the exact value");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{cycle, path};

    #[test]
    fn construction_primes() {
        assert_eq!(max_construction_prime(144), Some(3));
        assert_eq!(max_construction_prime(143), None);
        assert_eq!(max_construction_prime(1600), Some(5));
        assert_eq!(max_construction_prime(3136), Some(7));
        assert_eq!(max_construction_prime(3135), Some(5));
        assert_eq!(max_construction_prime(1), None);
    }

    #[test]
    fn k63_in_k7_k144() {
        let m = product_clique_model(7, 144).unwrap();
        assert_eq!(m.pattern().n(), 63);
        assert_eq!(m.host().n(), 1008);
        assert!(m.branch_sets().iter().all(|s| s.len() == 16));
        // one group and l = (p(p+1))^2: the sets cover every host vertex
        assert_eq!(m.branch_sets().iter().map(VertexSet::len).sum::<usize>(), 1008);
    }

    #[test]
    fn k126_in_k20_k144() {
        let m = product_clique_model(20, 144).unwrap();
        assert_eq!(m.pattern().n(), 126);
        assert!(m.is_valid());
    }

    #[test]
    fn too_few_copies() {
        assert!(matches!(product_clique_model(6, 144), Err(Error::Precondition(_))));
        assert!(matches!(product_clique_model(7, 143), Err(Error::Precondition(_))));
    }

    #[test]
    fn rows_and_columns_use_distinct_copies() {
        let c = ConstructionParams::new(7, 144).unwrap();
        for m in 1..=c.modulus() {
            for a1 in 1..=c.p {
                for a2 in 1..=c.p {
                    let row = c.wrap(m, a2 as isize);
                    let col = c.wrap(m, -(a1 as isize));
                    assert_ne!(row, col);
                    assert_ne!(row, m);
                    assert_ne!(col, m);
                }
            }
        }
    }

    #[test]
    fn wrap_is_one_based() {
        let c = ConstructionParams::new(7, 144).unwrap();
        assert_eq!(c.wrap(7, 1), 1);
        assert_eq!(c.wrap(1, -1), 7);
        assert_eq!(c.wrap(3, 2), 5);
    }

    #[test]
    fn every_pair_has_a_mechanism() {
        assert_eq!(product_clique_mechanisms(7, 144).unwrap().len(), 63 * 62 / 2);
        // cross overlaps only occur between different large groups
        let labels = product_clique_mechanisms(20, 144).unwrap();
        for kind in [Mechanism::SameCopy, Mechanism::LineIntersection, Mechanism::CrossOverlap] {
            assert!(labels.iter().any(|&(_, _, k)| k == kind), "{kind:?} never fires");
        }
    }

    #[test]
    fn hooks() {
        let m = wn_square_clique_model(1).unwrap();
        assert_eq!(m.branch_lists(), vec![vec![0]]);
        let m = wn_square_clique_model(4).unwrap();
        let sizes: Vec<_> = m.branch_sets().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![1, 3, 5, 7]);
        assert!(wn_square_clique_model(10).unwrap().is_valid());
        assert!(wn_square_clique_model(0).is_err());
    }

    #[test]
    fn double_grid_models() {
        let m = double_grid_clique_model(3).unwrap();
        assert_eq!(m.host().n(), 18);
        assert!(m.branch_sets().iter().all(|s| s.len() == 6));
        assert_eq!(double_grid_clique_model(2).unwrap().pattern().n(), 2);
        assert!(double_grid_clique_model(8).unwrap().is_valid());
        assert!(double_grid_clique_model(1).is_err());
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound_kn_km(2, 2).unwrap(), 3);
        for n in 1..20 {
            assert!(upper_bound_kn_km(n, 1).unwrap() >= n);
        }
        let v = upper_bound_kn_km(5, 5).unwrap();
        assert!(v as f64 <= 5.0 * 5f64.sqrt() + 5.0);
        assert!(upper_bound_kn_km(2, 3).is_err());
    }

    #[test]
    fn hypercube_bounds() {
        assert_eq!(hypercube_lower_bound(1).unwrap(), 1);
        assert_eq!(hypercube_lower_bound(3).unwrap(), 2);
        assert_eq!(hypercube_lower_bound(5).unwrap(), 4);
        assert!(hypercube_lower_bound(0).is_err());
    }

    #[test]
    fn equal_chi_pairs() {
        let m = equal_chi_clique_model(&cycle(5), &cycle(5)).unwrap();
        assert_eq!((m.pattern().n(), m.host().n()), (3, 25));
        assert_eq!(equal_chi_clique_model(&complete(4), &complete(4)).unwrap().pattern().n(), 4);
        assert_eq!(equal_chi_clique_model(&complete(3), &cycle(5)).unwrap().pattern().n(), 3);
        assert!(equal_chi_clique_model(&complete(3), &complete(4)).is_err());
        let empty = Graph::empty(2);
        assert_eq!(equal_chi_clique_model(&empty, &empty).unwrap().pattern().n(), 1);
    }

    #[test]
    fn powers() {
        let m = power_clique_model(&complete(2), 2).unwrap();
        assert_eq!((m.pattern().n(), m.host().n()), (2, 4));
        assert_eq!(power_clique_model(&cycle(5), 2).unwrap().pattern().n(), 3);
        let m = power_clique_model(&path(3), 3).unwrap();
        assert_eq!((m.pattern().n(), m.host().n()), (2, 27));
        assert!(power_clique_model(&path(3), 1).is_err());
    }

    #[test]
    fn report_k7_k144() {
        let r = product_bound_report(&complete(7), &complete(144), Budget::default()).unwrap();
        let cp = r.lower.iter().find(|b| b.witness_id == "clique-product").unwrap();
        assert_eq!(cp.value, 63);
        assert!(r.lower.iter().all(|b| r.witnesses[&b.witness_id].is_valid()));
        assert_eq!(r.chi_exact, Some(144));
        assert_eq!(r.verdict, Some(Verdict::Holds));
    }

    #[test]
    fn report_swapped_orientation() {
        let r = product_bound_report(&complete(144), &complete(7), Budget::default()).unwrap();
        let cp = r.lower.iter().find(|b| b.witness_id == "clique-product-swapped").unwrap();
        assert_eq!(cp.value, 63);
        assert!(r.witnesses["clique-product-swapped"].is_valid());
    }

    #[test]
    fn report_identity_factor() {
        let g = cycle(5);
        let r = product_bound_report(&g, &complete(1), Budget::default()).unwrap();
        assert_eq!(r.eta_exact, Some(3));
        assert_eq!(r.factors[0].eta, 3);
    }

    #[test]
    fn report_c6_k2_factor() {
        let (g1, _) = cartesian_product(&cycle(6), &complete(2)).unwrap();
        let r = product_bound_report(&g1, &complete(2), Budget::default()).unwrap();
        assert_eq!((r.factors[0].eta, r.factors[0].eta_exact), (4, true));
        let up = r.best_upper().unwrap();
        assert!(r.best_lower() <= up);
    }
}
