mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tree_ecc::centroid::depth_bound;
use tree_ecc::oracle::{brute_subset_ecc, Budget};
use tree_ecc::{subset_ecc_via_min, NodeId, SubsetEccIndex, Tree};

fn alpha(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| if rng.gen_bool(0.1) { f64::NEG_INFINITY } else { common::dyadic(rng, -20, 20) })
        .collect()
}

fn tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    let spread = [0, 1, 3, 20][rng.gen_range(0..4)];
    common::random_tree(rng, n, spread)
}

#[test]
fn random_queries_match_brute() {
    let mut rng = common::rng(21);
    for _ in 0..60 {
        let n = rng.gen_range(1..=400);
        let t = tree(&mut rng, n);
        let a = alpha(&mut rng, n);
        let idx = SubsetEccIndex::preprocess(&t, &a).unwrap();
        for _ in 0..10 {
            let m = rng.gen_range(1..=32);
            let u: Vec<NodeId> = (0..m).map(|_| rng.gen_range(0..n as NodeId)).collect();
            let beta: Vec<f64> = (0..m).map(|_| common::dyadic(&mut rng, -10, 10)).collect();
            let (got, trace) = idx.query_traced(&u, &beta).unwrap();
            assert_eq!(got, brute_subset_ecc(&t, &a, &u, &beta, Budget::DEFAULT).unwrap());
            for &s in &trace.level_sizes {
                assert!(s <= 2 * trace.distinct, "level size {s} vs {}", trace.distinct);
            }
            assert!(trace.depth() <= depth_bound(n));
        }
    }
}

#[test]
fn exhaustive_subsets() {
    let mut rng = common::rng(22);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let t = tree(&mut rng, n);
        let a = alpha(&mut rng, n);
        let beta_all: Vec<f64> = (0..n).map(|_| common::dyadic(&mut rng, -5, 5)).collect();
        let idx = SubsetEccIndex::preprocess(&t, &a).unwrap();
        for mask in 1u32..(1 << n) {
            let u: Vec<NodeId> = (0..n as NodeId).filter(|&v| mask >> v & 1 == 1).collect();
            let beta: Vec<f64> = u.iter().map(|&v| beta_all[v as usize]).collect();
            assert_eq!(
                idx.query(&u, &beta).unwrap(),
                brute_subset_ecc(&t, &a, &u, &beta, Budget::DEFAULT).unwrap(),
                "U = {u:?}"
            );
        }
    }
}

#[test]
fn agrees_with_min_reduction() {
    let mut rng = common::rng(23);
    for _ in 0..60 {
        let n = rng.gen_range(1..=60);
        let t = tree(&mut rng, n);
        let zero = vec![0.0; n];
        let idx = SubsetEccIndex::preprocess(&t, &zero).unwrap();
        let m = rng.gen_range(1..=4);
        let u: Vec<NodeId> = (0..m).map(|_| rng.gen_range(0..n as NodeId)).collect();
        let beta = vec![0.0; m];
        let a = idx.query(&u, &beta).unwrap();
        let b = subset_ecc_via_min(&t, &u).unwrap() as f64;
        let c = brute_subset_ecc(&t, &zero, &u, &beta, Budget::DEFAULT).unwrap();
        assert_eq!((a, b), (c, c));
    }
}

#[test]
fn errors() {
    let t = Tree::path(3);
    let idx = SubsetEccIndex::preprocess(&t, &[0.0; 3]).unwrap();
    assert!(idx.query(&[], &[]).is_err());
    assert!(idx.query(&[3], &[0.0]).is_err());
    assert!(idx.query(&[0, 1], &[0.0]).is_err());
    assert!(SubsetEccIndex::preprocess(&t, &[0.0; 2]).is_err());
}
