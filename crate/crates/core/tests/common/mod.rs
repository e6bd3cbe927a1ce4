#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tree_ecc::{Graph, NodeId, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tree from parent choices: node `i + 1` attaches to `choices[i] % (i + 1)`.
pub fn tree_from_choices(choices: &[u32]) -> Tree {
    let edges: Vec<(u64, u64)> = choices
        .iter()
        .enumerate()
        .map(|(i, &c)| ((c as u64) % (i as u64 + 1), i as u64 + 1))
        .collect();
    Tree::from_edges(choices.len() + 1, &edges).unwrap()
}

/// Random tree; `spread` bounds how far back a node may attach (0 = uniform).
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, spread: usize) -> Tree {
    let edges: Vec<(u64, u64)> = (1..n as u64)
        .map(|i| {
            let lo = if spread == 0 { 0 } else { i.saturating_sub(spread as u64) };
            (rng.gen_range(lo..i), i)
        })
        .collect();
    Tree::from_edges(n, &edges).unwrap()
}

/// Values on a 1/64 grid so that sums stay exact.
pub fn dyadic(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> f64 {
    rng.gen_range(lo * 64..=hi * 64) as f64 / 64.0
}

pub fn product(a: &Tree, b: &Tree) -> Graph {
    let (na, nb) = (a.node_count(), b.node_count());
    let mut e = Vec::new();
    for i in 0..na {
        for (u, v) in b.edges() {
            e.push(((i * nb) as u64 + u as u64, (i * nb) as u64 + v as u64));
        }
    }
    for (u, v) in a.edges() {
        for j in 0..nb {
            e.push(((u as usize * nb + j) as u64, (v as usize * nb + j) as u64));
        }
    }
    Graph::from_edges(na * nb, &e).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let t = random_tree(rng, n, 0);
    let mut e: Vec<(u64, u64)> = t.edges().map(|(u, v)| (u.min(v) as u64, u.max(v) as u64)).collect();
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n as u64), rng.gen_range(0..n as u64));
        if u != v && !e.contains(&(u.min(v), u.max(v))) {
            e.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

/// Shortest-path tree of `g` rooted at `root`.
pub fn bfs_tree(g: &Graph, root: NodeId) -> Tree {
    let d = g.bfs(root);
    let edges: Vec<(u64, u64)> = (0..g.node_count() as NodeId)
        .filter(|&v| v != root)
        .map(|v| {
            let p = *g.neighbors(v).iter().find(|&&p| d[p as usize] + 1 == d[v as usize]).unwrap();
            (p as u64, v as u64)
        })
        .collect();
    Tree::from_edges(g.node_count(), &edges).unwrap()
}
