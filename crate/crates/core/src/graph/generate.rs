use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};
use crate::product::{cartesian_power, cartesian_product};

/// Named graph families understood by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `K_n`
    Complete,
    /// `P_n`, `n` vertices
    Path,
    /// `C_n`, `n >= 3`
    Cycle,
    /// `K_{1,n}` with centre 0
    Star,
    /// `n x n` grid `R_n`; cell `<r, c>` is vertex `r * n + c`
    Grid,
    /// `R_n □ K_2`
    DoubleGrid,
    /// `Q_d = K_2^d`
    Hypercube,
    /// `W_n`: vertex 0 universal, `1..n-1` a path
    Fan,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Complete,
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Grid,
        Family::DoubleGrid,
        Family::Hypercube,
        Family::Fan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Grid => "grid",
            Family::DoubleGrid => "double-grid",
            Family::Hypercube => "hypercube",
            Family::Fan => "fan",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

pub fn fan(n: usize) -> Graph {
    let edges = (1..n).map(|j| (0, j)).chain((2..n).map(|j| (j - 1, j)));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

pub fn grid(n: usize) -> Graph {
    cartesian_power(&path(n), 2).expect("path is nonempty").0
}

pub fn double_grid(n: usize) -> Graph {
    cartesian_product(&grid(n), &complete(2)).expect("factors are nonempty").0
}

pub fn hypercube(d: usize) -> Graph {
    cartesian_power(&complete(2), d).expect("d >= 1").0
}

/// Builds a member of a named family. Every family takes exactly one
/// positive parameter.
pub fn generate(kind: Family, params: &[usize]) -> Result<Graph> {
    let &[n] = params else {
        return Err(Error::InvalidParameter(format!(
            "{kind} takes exactly one parameter, got {}",
            params.len()
        )));
    };
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{kind} needs a positive parameter")));
    }
    Ok(match kind {
        Family::Complete => complete(n),
        Family::Path => path(n),
        Family::Cycle => {
            if n < 3 {
                return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
            }
            cycle(n)
        }
        Family::Star => star(n),
        Family::Grid => grid(n),
        Family::DoubleGrid => double_grid(n),
        Family::Hypercube => hypercube(n),
        Family::Fan => fan(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4() {
        let g = generate(Family::Complete, &[4]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 6));
    }

    #[test]
    fn fan_three_is_triangle() {
        let g = generate(Family::Fan, &[3]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn fan_degrees() {
        for n in 4..12 {
            let w = fan(n);
            assert_eq!(w.degree(0), n - 1);
            // both ends of the path 1..n-1 have degree 2
            assert_eq!(w.degree(1), 2);
            assert_eq!(w.degree(n - 1), 2);
            assert!((2..n - 1).all(|i| w.degree(i) == 3));
        }
    }

    #[test]
    fn double_grid_three() {
        let g = generate(Family::DoubleGrid, &[3]).unwrap();
        // Two 3x3 grids have 12 edges each; the matching adds 9.
        assert_eq!((g.n(), g.edge_count()), (18, 33));
    }

    #[test]
    fn hypercube_edges() {
        for d in 1..=6 {
            let q = generate(Family::Hypercube, &[d]).unwrap();
            assert_eq!(q.n(), 1 << d);
            assert_eq!(q.edge_count(), d << (d - 1));
        }
    }

    #[test]
    fn grid_cells_follow_manhattan_adjacency() {
        let n = 4;
        let g = grid(n);
        for a in 0..n * n {
            for b in 0..n * n {
                let (r1, c1) = (a / n, a % n);
                let (r2, c2) = (b / n, b % n);
                let manhattan = r1.abs_diff(r2) + c1.abs_diff(c2);
                assert_eq!(g.has_edge(a, b), manhattan == 1);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            "petersen".parse::<Family>(),
            Err(Error::UnknownFamily("petersen".into()))
        );
        assert!(generate(Family::Path, &[0]).is_err());
        assert!(generate(Family::Cycle, &[2]).is_err());
        assert!(generate(Family::Grid, &[]).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
