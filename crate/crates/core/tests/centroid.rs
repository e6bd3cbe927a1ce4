mod common;

use proptest::prelude::*;
use tree_ecc::centroid::{depth_bound, CentroidIndex};
use tree_ecc::tree::bfs_distances;
use tree_ecc::NodeId;

proptest! {
    #[test]
    fn decomposition_invariants(choices in prop::collection::vec(any::<u32>(), 0..120)) {
        let t = common::tree_from_choices(&choices);
        let n = t.node_count();
        let idx = CentroidIndex::build(&t);
        prop_assert!(idx.depth() <= depth_bound(n));
        let rows: Vec<Vec<u32>> = (0..n as NodeId).map(|v| bfs_distances(&t, v)).collect();
        // Component size of each centroid: nodes listing it as an ancestor.
        let mut comp = vec![0usize; n];
        for v in 0..n as NodeId {
            let p = idx.path(v);
            prop_assert_eq!(p[0].centroid, v);
            prop_assert_eq!(p[0].dist, 0);
            prop_assert_eq!(p.last().unwrap().centroid, idx.root());
            prop_assert!(p.len() <= depth_bound(n));
            for a in p {
                prop_assert_eq!(a.dist, rows[v as usize][a.centroid as usize]);
                comp[a.centroid as usize] += 1;
            }
        }
        for v in 0..n as NodeId {
            if let Some(c) = idx.parent(v) {
                prop_assert!(2 * comp[v as usize] <= comp[c as usize]);
            }
        }
        for a in 0..n as NodeId {
            for b in 0..n as NodeId {
                prop_assert_eq!(idx.distance(a, b), rows[a as usize][b as usize]);
            }
        }
    }
}

#[test]
fn long_path_depth() {
    for n in [1, 2, 3, 1000, 4096, 4097] {
        let idx = CentroidIndex::build(&tree_ecc::Tree::path(n));
        assert!(idx.depth() <= depth_bound(n), "n = {n}");
        assert_eq!(idx.distance(0, (n - 1) as NodeId), (n - 1) as u32);
    }
}
