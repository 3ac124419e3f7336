#![allow(dead_code)]

use hadwiger_core::Graph;
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let density = rng.gen_range(0.2..0.9);
        let g = random_graph(rng, n, density);
        if g.is_connected() {
            return g;
        }
    }
}

/// Largest `h` admitting an assignment of vertices to `K_h` branch sets, by
/// trying every map from vertices to `{unused, 1..=h}`.
pub fn brute_force_eta(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::from(n > 0);
    for h in 2..=n {
        if has_clique_minor(g, h) {
            best = h;
        } else {
            break;
        }
    }
    best
}

fn has_clique_minor(g: &Graph, h: usize) -> bool {
    let n = g.n();
    let mut label = vec![0usize; n];
    let total = (h + 1).pow(n as u32);
    'outer: for code in 0..total {
        let mut c = code;
        for slot in label.iter_mut() {
            *slot = c % (h + 1);
            c /= h + 1;
        }
        for x in 1..=h {
            let members: Vec<usize> = (0..n).filter(|&v| label[v] == x).collect();
            if members.is_empty() || !g.induced_subgraph(&members).is_connected() {
                continue 'outer;
            }
        }
        for x in 1..=h {
            for y in x + 1..=h {
                if !g.edges().any(|(u, v)| {
                    (label[u] == x && label[v] == y) || (label[u] == y && label[v] == x)
                }) {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}
