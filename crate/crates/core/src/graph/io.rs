//! Plain edge-list text and DOT export.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};
use crate::minor::MinorModel;

/// One `u v` pair per line, preceded by a `# vertices: n` comment so that
/// isolated vertices survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices: {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses `u v` lines (0-based). Blank lines and `#` comments are skipped;
/// a `# vertices: n` comment fixes the vertex count, otherwise it is one more
/// than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("vertices:") {
                let n = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::EdgeList(format!("line {}: {e}", lineno + 1)))?;
                declared = Some(n);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::EdgeList(format!("line {}: expected `u v`", lineno + 1))),
        }
    }
    let seen = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < seen => {
            return Err(Error::EdgeList(format!("declared {n} vertices but index {} used", seen - 1)))
        }
        Some(n) => n,
        None => seen,
    };
    Graph::from_edges(n, edges)
}

const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
    "#999999", "#66c2a5", "#fc8d62", "#8da0cb",
];

fn color_for(i: usize) -> String {
    if i < PALETTE.len() {
        PALETTE[i].to_string()
    } else {
        // golden-angle hue walk keeps later classes distinct
        let hue = (i as f64 * 0.618_033_988_75).fract();
        format!("{hue:.3} 0.7 0.9")
    }
}

/// DOT text for `g`. With a model, each branch set gets its own fill colour and
/// a `branch` attribute naming its pattern vertex.
pub fn export_dot(g: &Graph, model: Option<&MinorModel>) -> Result<String> {
    if let Some(m) = model {
        if m.host() != g {
            return Err(Error::Structure("model host differs from the exported graph".into()));
        }
    }
    let mut owner = vec![None; g.n()];
    if let Some(m) = model {
        for (x, set) in m.branch_sets().iter().enumerate() {
            for v in set {
                owner[v] = Some(x);
            }
        }
    }
    let mut out = String::from("graph G {\n");
    for (v, o) in owner.iter().enumerate() {
        match o {
            Some(x) => writeln!(
                out,
                "  {v} [style=filled, fillcolor=\"{}\", branch={x}];",
                color_for(*x)
            )
            .unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle};
    use crate::graph::VertexSet;

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_without_header() {
        let g = parse_edge_list("0 1\n\n1 2\n# comment\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_errors() {
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 x\n").is_err());
        assert!(parse_edge_list("1 1\n").is_err());
        assert!(parse_edge_list("# vertices: 2\n0 3\n").is_err());
    }

    #[test]
    fn dot_single_edge() {
        let dot = export_dot(&complete(2), None).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 1);
    }

    #[test]
    fn dot_single_vertex() {
        let dot = export_dot(&complete(1), None).unwrap();
        assert!(dot.contains("  0;"));
        assert!(!dot.contains("--"));
    }

    #[test]
    fn dot_with_model_colours_branch_sets() {
        let c4 = cycle(4);
        let sets = [vec![0], vec![1], vec![2, 3]]
            .into_iter()
            .map(|s| VertexSet::from_indices(4, s))
            .collect();
        let model = MinorModel::new(c4.clone(), complete(3), sets).unwrap();
        let dot = export_dot(&c4, Some(&model)).unwrap();
        let colours: std::collections::BTreeMap<_, usize> = dot
            .lines()
            .filter_map(|l| l.split("fillcolor=\"").nth(1))
            .map(|rest| rest.split('"').next().unwrap().to_string())
            .fold(Default::default(), |mut acc, c| {
                *acc.entry(c).or_default() += 1;
                acc
            });
        assert_eq!(colours.len(), 3);
        assert_eq!(colours.values().filter(|&&c| c == 2).count(), 1);
    }

    #[test]
    fn dot_rejects_foreign_model() {
        let sets = vec![VertexSet::from_indices(3, [0])];
        let model = MinorModel::new(complete(3), complete(1), sets).unwrap();
        assert!(export_dot(&cycle(4), Some(&model)).is_err());
    }
}
