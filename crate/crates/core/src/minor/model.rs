use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::product::cartesian_product;

/// A certificate that `pattern` is a minor of `host`: one branch set of host
/// vertices per pattern vertex.
///
/// Construction only checks shape (set count and index range). Whether the
/// sets are disjoint, connected and adjacent along pattern edges is the job of
/// [`MinorModel::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    host: Graph,
    pattern: Graph,
    branch_sets: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Overlap,
    Disconnected,
    MissingAdjacency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Pattern vertices involved: one for `disconnected`, two otherwise.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

impl MinorModel {
    pub fn new(host: Graph, pattern: Graph, branch_sets: Vec<VertexSet>) -> Result<Self> {
        if branch_sets.len() != pattern.n() {
            return Err(Error::Structure(format!(
                "{} branch sets for a pattern on {} vertices",
                branch_sets.len(),
                pattern.n()
            )));
        }
        if let Some(s) = branch_sets.iter().find(|s| s.universe() != host.n()) {
            return Err(Error::Structure(format!(
                "branch set over {} vertices for a host on {}",
                s.universe(),
                host.n()
            )));
        }
        Ok(MinorModel {
            host,
            pattern,
            branch_sets,
        })
    }

    /// Builds a model from index lists, rejecting out-of-range indices.
    pub fn from_lists(host: Graph, pattern: Graph, sets: &[Vec<usize>]) -> Result<Self> {
        let n = host.n();
        let branch_sets = sets
            .iter()
            .map(|s| {
                if let Some(&v) = s.iter().find(|&&v| v >= n) {
                    return Err(Error::Structure(format!("vertex {v} outside host of size {n}")));
                }
                Ok(VertexSet::from_indices(n, s.iter().copied()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(host, pattern, branch_sets)
    }

    /// Like [`MinorModel::new`] but also requires the model to verify.
    pub fn verified(host: Graph, pattern: Graph, branch_sets: Vec<VertexSet>) -> Result<Self> {
        let m = Self::new(host, pattern, branch_sets)?;
        m.ensure_verified()?;
        Ok(m)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn branch_sets(&self) -> &[VertexSet] {
        &self.branch_sets
    }

    pub fn branch_lists(&self) -> Vec<Vec<usize>> {
        self.branch_sets.iter().map(VertexSet::to_vec).collect()
    }

    /// Checks all three model conditions and reports every violation found.
    pub fn verify(&self) -> VerificationReport {
        let mut violations = Vec::new();

        let mut owner = vec![usize::MAX; self.host.n()];
        let mut overlaps = std::collections::BTreeSet::new();
        for (x, set) in self.branch_sets.iter().enumerate() {
            for v in set {
                if owner[v] == usize::MAX {
                    owner[v] = x;
                } else {
                    overlaps.insert((owner[v], x));
                }
            }
        }
        violations.extend(overlaps.into_iter().map(|(a, b)| Violation {
            kind: ViolationKind::Overlap,
            vertices: vec![a, b],
        }));

        let (connected, neighborhoods): (Vec<bool>, Vec<VertexSet>) = self
            .branch_sets
            .par_iter()
            .map(|s| {
                let ok = self.host.induced_is_connected(s).unwrap_or(false);
                (ok, self.host.closed_neighborhood(s))
            })
            .unzip();
        violations.extend(
            connected
                .iter()
                .enumerate()
                .filter(|(_, &ok)| !ok)
                .map(|(x, _)| Violation {
                    kind: ViolationKind::Disconnected,
                    vertices: vec![x],
                }),
        );

        let pattern_edges: Vec<_> = self.pattern.edges().collect();
        let missing: Vec<Violation> = pattern_edges
            .par_iter()
            .filter(|&&(x, y)| !neighborhoods[x].intersects(&self.branch_sets[y]))
            .map(|&(x, y)| Violation {
                kind: ViolationKind::MissingAdjacency,
                vertices: vec![x, y],
            })
            .collect();
        violations.extend(missing);

        VerificationReport::from_violations(violations)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().ok
    }

    pub(crate) fn ensure_verified(&self) -> Result<()> {
        let report = self.verify();
        if report.ok {
            Ok(())
        } else {
            Err(Error::UnverifiedModel(format!("{:?}", report.violations)))
        }
    }

    /// The identity model of `g` in itself.
    pub fn trivial(g: &Graph) -> Self {
        let sets = (0..g.n()).map(|v| VertexSet::from_indices(g.n(), [v])).collect();
        MinorModel::new(g.clone(), g.clone(), sets).expect("shape matches")
    }

    /// Rewrites host vertex ids through `map` onto `new_host`.
    pub(crate) fn map_host(&self, new_host: Graph, map: &[usize]) -> Result<Self> {
        let n = new_host.n();
        let sets = self
            .branch_sets
            .iter()
            .map(|s| VertexSet::from_indices(n, s.iter().map(|v| map[v])))
            .collect();
        MinorModel::new(new_host, self.pattern.clone(), sets)
    }
}

/// Lifts models of `M_1` in `G_1` and `M_2` in `G_2` to a model of
/// `M_1 □ M_2` in `G_1 □ G_2`.
///
/// Pattern vertex `<x, y>` gets the cross `(V_x × {r_y}) ∪ ({r_x} × V_y)`
/// where `r_x`, `r_y` are the smallest members of `V_x`, `V_y`. The two arms
/// meet at `<r_x, r_y>`, and each coordinate direction inherits adjacency from
/// the corresponding factor model.
pub fn product_of_models(m1: &MinorModel, m2: &MinorModel) -> Result<MinorModel> {
    m1.ensure_verified()?;
    m2.ensure_verified()?;
    let (host, _) = cartesian_product(&m1.host, &m2.host)?;
    let (pattern, _) = cartesian_product(&m1.pattern, &m2.pattern)?;
    let n2 = m2.host.n();
    let mut sets = Vec::with_capacity(pattern.n());
    for vx in &m1.branch_sets {
        let rx = vx.first().expect("verified sets are nonempty");
        for vy in &m2.branch_sets {
            let ry = vy.first().expect("verified sets are nonempty");
            let mut s = VertexSet::new(host.n());
            for a in vx {
                s.insert(a * n2 + ry);
            }
            for b in vy {
                s.insert(rx * n2 + b);
            }
            sets.push(s);
        }
    }
    let out = MinorModel::new(host, pattern, sets)?;
    out.ensure_verified()
        .map_err(|e| Error::Internal(format!("product of models failed to verify: {e}")))?;
    Ok(out)
}

/// Transitivity: `P ⪯ M` and `M ⪯ G` give `P ⪯ G`.
pub fn compose_models(outer: &MinorModel, inner: &MinorModel) -> Result<MinorModel> {
    if outer.host != inner.pattern {
        return Err(Error::Structure("outer host is not the inner pattern".into()));
    }
    outer.ensure_verified()?;
    inner.ensure_verified()?;
    let n = inner.host.n();
    let sets = outer
        .branch_sets
        .iter()
        .map(|s| {
            let mut u = VertexSet::new(n);
            for m in s {
                u.union_with(&inner.branch_sets[m]);
            }
            u
        })
        .collect();
    let out = MinorModel::new(inner.host.clone(), outer.pattern.clone(), sets)?;
    out.ensure_verified()
        .map_err(|e| Error::Internal(format!("composed model failed to verify: {e}")))?;
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    host: Graph,
    pattern: Graph,
    branch_sets: Vec<Vec<usize>>,
}

impl Serialize for MinorModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelJson {
            host: self.host.clone(),
            pattern: self.pattern.clone(),
            branch_sets: self.branch_lists(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinorModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ModelJson::deserialize(d)?;
        MinorModel::from_lists(j.host, j.pattern, &j.branch_sets).map_err(serde::de::Error::custom)
    }
}
