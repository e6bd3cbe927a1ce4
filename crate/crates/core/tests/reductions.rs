mod common;

use rand::Rng;
use tree_ecc::oracle::{apsp, Budget};
use tree_ecc::{ecc_all, Embedding, EmbeddingMode, Graph, NodeId, Quality, TreeSystem};

#[test]
fn products_of_trees_are_exact() {
    let mut rng = common::rng(31);
    for _ in 0..30 {
        let (na, nb) = (rng.gen_range(1..=15), rng.gen_range(1..=15));
        let (a, b) = (common::random_tree(&mut rng, na, 0), common::random_tree(&mut rng, nb, 0));
        let g = common::product(&a, &b);
        let want = apsp(&g, Budget::DEFAULT).unwrap().eccentricities();
        let sys = TreeSystem::new(vec![a, b]).unwrap();
        let pts: Vec<Vec<NodeId>> = (0..na as NodeId)
            .flat_map(|i| (0..nb as NodeId).map(move |j| vec![i, j]))
            .collect();
        let emb = Embedding::new(sys, pts, EmbeddingMode::Cartesian, Quality::Exact).unwrap();
        let r = ecc_all(&emb).unwrap();
        let want: Vec<i64> = want.iter().map(|&x| x as i64).collect();
        assert_eq!(r.raw, want);
    }
}

#[test]
fn strong_products_are_exact() {
    let mut rng = common::rng(32);
    for _ in 0..30 {
        let (na, nb) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let (a, b) = (common::random_tree(&mut rng, na, 0), common::random_tree(&mut rng, nb, 0));
        let da = tree_ecc::oracle::apsp_tree(&a, Budget::DEFAULT).unwrap();
        let db = tree_ecc::oracle::apsp_tree(&b, Budget::DEFAULT).unwrap();
        let sys = TreeSystem::new(vec![a, b]).unwrap();
        let pts: Vec<Vec<NodeId>> = (0..na as NodeId)
            .flat_map(|i| (0..nb as NodeId).map(move |j| vec![i, j]))
            .collect();
        let want: Vec<i64> = pts
            .iter()
            .map(|p| {
                pts.iter()
                    .map(|q| da.get(p[0], q[0]).max(db.get(p[1], q[1])) as i64)
                    .max()
                    .unwrap()
            })
            .collect();
        let emb = Embedding::new(sys, pts, EmbeddingMode::Strong, Quality::Exact).unwrap();
        assert_eq!(ecc_all(&emb).unwrap().raw, want);
    }
}

#[test]
fn shortest_path_trees_from_every_vertex_are_exact() {
    let mut rng = common::rng(33);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let extra = rng.gen_range(0..2 * n);
        let g: Graph = common::random_graph(&mut rng, n, extra);
        let trees = (0..n as NodeId).map(|r| common::bfs_tree(&g, r)).collect();
        let sys = TreeSystem::new(trees).unwrap();
        let pts: Vec<Vec<NodeId>> = (0..n as NodeId).map(|v| vec![v; n]).collect();
        let emb = Embedding::new(sys, pts, EmbeddingMode::System, Quality::Exact).unwrap();
        let r = ecc_all(&emb).unwrap();
        let want: Vec<i64> = apsp(&g, Budget::DEFAULT).unwrap().eccentricities().iter().map(|&x| x as i64).collect();
        assert_eq!(r.raw, want);
        assert_eq!(r.diameter_raw, *want.iter().max().unwrap());
        assert_eq!(r.radius_raw, *want.iter().min().unwrap());
    }
}

#[test]
fn oversized_index_refused() {
    // 40 copies of a long path: the tuple count is far beyond any memory.
    let t = tree_ecc::Tree::path(1 << 12);
    let sys = TreeSystem::new(vec![t; 40]).unwrap();
    let pts = vec![vec![1000; 40]];
    let emb = Embedding::new(sys, pts, EmbeddingMode::System, Quality::Exact).unwrap();
    assert!(matches!(ecc_all(&emb), Err(tree_ecc::OdotError::TooLarge { .. })));
}

#[test]
fn empty_point_set_rejected() {
    let sys = TreeSystem::new(vec![tree_ecc::Tree::path(2)]).unwrap();
    assert!(Embedding::new(sys, vec![], EmbeddingMode::System, Quality::Exact).is_err());
}
