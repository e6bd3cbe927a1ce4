//! Seeded instance generators: trees, grids, products of trees and their
//! gated subgraphs, tree systems, and embeddings with known quality.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tree_ecc::oracle::{apsp, apsp_tree, Budget};
use tree_ecc::{Embedding, EmbeddingMode, Graph, NodeId, Quality, Tree, TreeSystem};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeShape {
    /// Each node attaches to a uniform earlier node.
    Uniform,
    /// Each node attaches to one of the few latest nodes.
    Deep,
    Path,
    Star,
    /// A spine with pendant leaves.
    Caterpillar,
    /// Each node attaches to a node of low index.
    Bushy,
}

impl TreeShape {
    pub const ALL: [TreeShape; 6] = [
        TreeShape::Uniform,
        TreeShape::Deep,
        TreeShape::Path,
        TreeShape::Star,
        TreeShape::Caterpillar,
        TreeShape::Bushy,
    ];

    pub fn parse(s: &str) -> Option<TreeShape> {
        Some(match s {
            "uniform" => TreeShape::Uniform,
            "deep" => TreeShape::Deep,
            "path" => TreeShape::Path,
            "star" => TreeShape::Star,
            "caterpillar" => TreeShape::Caterpillar,
            "bushy" => TreeShape::Bushy,
            _ => return None,
        })
    }
}

/// Random tree on `n >= 1` nodes with randomly permuted labels.
pub fn random_tree(rng: &mut GenRng, n: usize, shape: TreeShape) -> Tree {
    assert!(n >= 1);
    let mut parent = vec![0usize; n];
    let spine = (n / 3).max(1);
    for v in 1..n {
        parent[v] = match shape {
            TreeShape::Uniform => rng.gen_range(0..v),
            TreeShape::Deep => v - 1 - rng.gen_range(0..v.min(3)),
            TreeShape::Path => v - 1,
            TreeShape::Star => 0,
            TreeShape::Caterpillar if v < spine => v - 1,
            TreeShape::Caterpillar => rng.gen_range(0..spine),
            TreeShape::Bushy => rng.gen_range(0..v.min(1 + (v as f64).sqrt() as usize)),
        };
    }
    let mut label: Vec<u64> = (0..n as u64).collect();
    label.shuffle(rng);
    let edges: Vec<(u64, u64)> = (1..n).map(|v| (label[v], label[parent[v]])).collect();
    Tree::from_edges(n, &edges).expect("generated edges form a tree")
}

pub fn random_shape(rng: &mut GenRng) -> TreeShape {
    // Uniform trees are the common case; the others stress degenerate shapes.
    match rng.gen_range(0..10) {
        0..=3 => TreeShape::Uniform,
        4 | 5 => TreeShape::Deep,
        6 => TreeShape::Caterpillar,
        7 => TreeShape::Bushy,
        8 => TreeShape::Path,
        _ => TreeShape::Star,
    }
}

pub fn grid(m: usize, k: usize) -> Graph {
    tree_product(&Tree::path(m), &Tree::path(k))
}

/// Cartesian product; vertex `(i, j)` is `i * |b| + j`.
pub fn tree_product(a: &Tree, b: &Tree) -> Graph {
    let (na, nb) = (a.node_count(), b.node_count());
    let mut edges = Vec::with_capacity(na * (nb - 1) + nb * (na - 1));
    for i in 0..na {
        for (u, v) in b.edges() {
            edges.push(((i * nb) as u64 + u as u64, (i * nb) as u64 + v as u64));
        }
    }
    for (u, v) in a.edges() {
        for j in 0..nb {
            edges.push(((u as usize * nb + j) as u64, (v as usize * nb + j) as u64));
        }
    }
    Graph::from_edges(na * nb, &edges).expect("product of trees is a simple connected graph")
}

/// Vertices strictly closer to `u` than to `v`.
pub fn halfspace(g: &Graph, u: NodeId, v: NodeId) -> Vec<NodeId> {
    let (du, dv) = (g.bfs(u), g.bfs(v));
    (0..g.node_count() as NodeId)
        .filter(|&w| du[w as usize] < dv[w as usize])
        .collect()
}

/// Intersection of up to `cuts` random halfspaces, each kept only if it
/// leaves at least `min_size` vertices. Returns the vertex list (sorted) and
/// the induced subgraph.
pub fn gated_subgraph(rng: &mut GenRng, g: &Graph, cuts: usize, min_size: usize) -> (Vec<NodeId>, Graph) {
    let n = g.node_count();
    let mut inside = vec![true; n];
    let mut size = n;
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    if edges.is_empty() {
        return ((0..n as NodeId).collect(), g.clone());
    }
    for _ in 0..cuts {
        let &(a, b) = edges.choose(rng).unwrap();
        if !inside[a as usize] || !inside[b as usize] {
            continue;
        }
        let (u, v) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let (du, dv) = (g.bfs(u), g.bfs(v));
        let kept = (0..n).filter(|&w| inside[w] && du[w] < dv[w]).count();
        if kept < min_size.max(1) {
            continue;
        }
        for w in 0..n {
            if du[w] >= dv[w] {
                inside[w] = false;
            }
        }
        size = kept;
    }
    let vertices: Vec<NodeId> = (0..n as NodeId).filter(|&w| inside[w as usize]).collect();
    debug_assert_eq!(vertices.len(), size);
    let sub = g.induced(&vertices);
    (vertices, sub)
}

/// Random tree of random shape with `1..=max_n` nodes.
pub fn random_factor(rng: &mut GenRng, max_n: usize) -> Tree {
    let n = rng.gen_range(1..=max_n);
    let shape = random_shape(rng);
    random_tree(rng, n, shape)
}

/// Products of small random trees glued one after another along a vertex or
/// an edge of the graph built so far.
pub fn glued_products(rng: &mut GenRng, pieces: usize, factor: usize) -> Graph {
    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut n = 0usize;
    for piece in 0..pieces.max(1) {
        let a = random_factor(rng, factor);
        let b = random_factor(rng, factor);
        let p = tree_product(&a, &b);
        let m = p.node_count();
        let pe: Vec<(NodeId, NodeId)> = p.edges().collect();
        // Map of piece vertices to global ids; glued ones reuse old ids.
        let mut map: Vec<u64> = vec![u64::MAX; m];
        if piece > 0 {
            let along_edge = !pe.is_empty() && !edges.is_empty() && rng.gen_bool(0.5);
            if along_edge {
                let &(x, y) = pe.choose(rng).unwrap();
                let &(gx, gy) = edges.choose(rng).unwrap();
                map[x as usize] = gx;
                map[y as usize] = gy;
            } else {
                map[rng.gen_range(0..m)] = rng.gen_range(0..n as u64);
            }
        }
        for slot in map.iter_mut() {
            if *slot == u64::MAX {
                *slot = n as u64;
                n += 1;
            }
        }
        for (x, y) in pe {
            let (gx, gy) = (map[x as usize], map[y as usize]);
            if seen.insert((gx.min(gy), gx.max(gy))) {
                edges.push((gx, gy));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("glued products are connected")
}

/// Random tree plus `extra` random non-tree edges.
pub fn random_connected_graph(rng: &mut GenRng, n: usize, extra: usize) -> Graph {
    let t = random_tree(rng, n, TreeShape::Uniform);
    let mut set: std::collections::BTreeSet<(u64, u64)> =
        t.edges().map(|(u, v)| (u.min(v) as u64, u.max(v) as u64)).collect();
    let mut tries = 0;
    while set.len() < n - 1 + extra && tries < 20 * (extra + 1) && n > 2 {
        tries += 1;
        let (u, v) = (rng.gen_range(0..n as u64), rng.gen_range(0..n as u64));
        if u != v {
            set.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<(u64, u64)> = set.into_iter().collect();
    Graph::from_edges(n, &edges).expect("spanning tree keeps the graph connected")
}

/// Shortest-path tree of `g` from `root`, parents chosen by first discovery.
pub fn bfs_tree(g: &Graph, root: NodeId) -> Tree {
    let n = g.node_count();
    let mut parent = vec![u32::MAX; n];
    parent[root as usize] = root;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(n - 1);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if parent[w as usize] == u32::MAX {
                parent[w as usize] = u;
                edges.push((u as u64, w as u64));
                queue.push_back(w);
            }
        }
    }
    Tree::from_edges(n, &edges).expect("BFS tree of a connected graph")
}

/// Random system of `k` trees of sizes up to `max_tree` with `points`
/// uniformly random points.
pub fn random_system(
    rng: &mut GenRng,
    k: usize,
    max_tree: usize,
    points: usize,
) -> (TreeSystem, Vec<Vec<NodeId>>) {
    let trees: Vec<Tree> = (0..k)
        .map(|_| {
            let n = rng.gen_range(1..=max_tree);
            let shape = random_shape(rng);
            random_tree(rng, n, shape)
        })
        .collect();
    let s = random_points(rng, &trees, points);
    (TreeSystem::new(trees).expect("k >= 1"), s)
}

pub fn random_points(rng: &mut GenRng, trees: &[Tree], count: usize) -> Vec<Vec<NodeId>> {
    (0..count)
        .map(|_| {
            trees
                .iter()
                .map(|t| rng.gen_range(0..t.node_count() as NodeId))
                .collect()
        })
        .collect()
}

/// Exact system embedding of `g` into the BFS trees rooted at `roots`
/// (every vertex maps to itself in each tree). Exact when the roots make
/// every distance realized in some tree, e.g. when all vertices are roots.
pub fn bfs_tree_embedding(g: &Graph, roots: &[NodeId], quality: Quality) -> Embedding {
    let trees: Vec<Tree> = roots.iter().map(|&r| bfs_tree(g, r)).collect();
    let k = trees.len();
    let points = (0..g.node_count() as NodeId).map(|v| vec![v; k]).collect();
    Embedding::new(TreeSystem::new(trees).unwrap(), points, EmbeddingMode::System, quality)
        .expect("images are in range")
}

/// Split graph: a clique of size `clique` and `independent` further vertices,
/// each adjacent to a random nonempty subset of the clique.
pub fn split_graph(rng: &mut GenRng, clique: usize, independent: usize) -> Graph {
    assert!(clique >= 1);
    let mut edges = Vec::new();
    for a in 0..clique as u64 {
        for b in a + 1..clique as u64 {
            edges.push((a, b));
        }
    }
    for i in 0..independent {
        let v = (clique + i) as u64;
        let mut any = false;
        for a in 0..clique as u64 {
            if rng.gen_bool(0.3) {
                edges.push((a, v));
                any = true;
            }
        }
        if !any {
            edges.push((rng.gen_range(0..clique as u64), v));
        }
    }
    Graph::from_edges(clique + independent, &edges).unwrap()
}

/// A split graph with its exact embedding into the shortest-path trees
/// rooted at the clique vertices.
pub fn split_embedding(rng: &mut GenRng, clique: usize, independent: usize) -> (Graph, Embedding) {
    let g = split_graph(rng, clique, independent);
    let roots: Vec<NodeId> = (0..clique as NodeId).collect();
    let emb = bfs_tree_embedding(&g, &roots, Quality::Exact);
    (g, emb)
}

/// Exact embedding of a product of `k` random trees: every vertex of the
/// product is a point.
pub fn product_embedding(rng: &mut GenRng, k: usize, max_tree: usize, mode: EmbeddingMode) -> Embedding {
    let trees: Vec<Tree> = (0..k).map(|_| random_factor(rng, max_tree)).collect();
    let mut points: Vec<Vec<NodeId>> = vec![Vec::new()];
    for t in &trees {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..t.node_count() as NodeId).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    Embedding::new(TreeSystem::new(trees).unwrap(), points, mode, Quality::Exact).unwrap()
}

/// Subdivides one random edge in each of `trees` distinct trees of an exact
/// embedding, `beta` times each. Host distances never shrink and grow by at
/// most `beta` for min and max, `trees * beta` for sums; the quality is set to
/// that stretch.
pub fn subdivide(rng: &mut GenRng, emb: &Embedding, beta: usize, trees: usize) -> Embedding {
    let k = emb.system.k();
    let mut chosen: Vec<usize> = (0..k).collect();
    chosen.shuffle(rng);
    chosen.truncate(trees.min(k));
    let mut out: Vec<Tree> = emb.system.trees().to_vec();
    let mut changed = 0;
    for &i in &chosen {
        let t = &out[i];
        let n = t.node_count();
        if n < 2 || beta == 0 {
            continue;
        }
        let mut edges: Vec<(u64, u64)> = t.edges().map(|(u, v)| (u as u64, v as u64)).collect();
        let j = rng.gen_range(0..edges.len());
        let (u, v) = edges.swap_remove(j);
        let mut prev = u;
        for s in 0..beta as u64 {
            let w = n as u64 + s;
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, v));
        out[i] = Tree::from_edges(n + beta, &edges).unwrap();
        changed += 1;
    }
    let stretch = match emb.mode {
        EmbeddingMode::Cartesian => changed * beta,
        _ => beta.min(changed * beta),
    };
    Embedding::new(
        TreeSystem::new(out).unwrap(),
        emb.points.clone(),
        emb.mode,
        Quality::Stretch(stretch as f64),
    )
    .unwrap()
}

/// System of `k` random BFS trees of a random graph, with its distortion
/// measured exactly.
pub fn distortion_embedding(rng: &mut GenRng, n: usize, extra: usize, k: usize) -> (Graph, Embedding) {
    let g = random_connected_graph(rng, n, extra);
    let roots: Vec<NodeId> = (0..k).map(|_| rng.gen_range(0..n as NodeId)).collect();
    let mut emb = bfs_tree_embedding(&g, &roots, Quality::Exact);
    let dg = apsp(&g, Budget::UNLIMITED).unwrap();
    let dts: Vec<_> = emb
        .system
        .trees()
        .iter()
        .map(|t| apsp_tree(t, Budget::UNLIMITED).unwrap())
        .collect();
    let mut a: f64 = 1.0;
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            let host = dts.iter().map(|d| d.get(u, v)).min().unwrap();
            a = a.max(host as f64 / dg.get(u, v) as f64);
        }
    }
    emb.quality = Quality::Distortion(a);
    (g, emb)
}

/// Node weights on a 1/64 grid in `[-range, range]`, each absent (`-inf`)
/// with probability `absent`.
pub fn random_alpha(rng: &mut GenRng, n: usize, range: i32, absent: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(absent) {
                f64::NEG_INFINITY
            } else {
                rng.gen_range(-range * 64..=range * 64) as f64 / 64.0
            }
        })
        .collect()
}

/// Subset queries with sizes in `1..=max_size` and finite dyadic weights.
pub fn random_queries(
    rng: &mut GenRng,
    n: usize,
    count: usize,
    max_size: usize,
    range: i32,
) -> Vec<(Vec<NodeId>, Vec<f64>)> {
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_size.max(1));
            let u = (0..k).map(|_| rng.gen_range(0..n as NodeId)).collect();
            let b = (0..k).map(|_| rng.gen_range(-range * 64..=range * 64) as f64 / 64.0).collect();
            (u, b)
        })
        .collect()
}
