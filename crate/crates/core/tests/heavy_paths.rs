mod common;

use proptest::prelude::*;
use tree_ecc::tree::bfs_distances;
use tree_ecc::{HeavyPathIndex, NodeId, Tree};

const EDGES: [(u64, u64); 16] = [
    (0, 1), (1, 2), (2, 3), (3, 7), (7, 9), (3, 4), (4, 6), (4, 5),
    (7, 8), (2, 10), (1, 11), (11, 13), (11, 12), (11, 14), (1, 15), (15, 16),
];
// Equal-size ties resolved as in the figure.
const PREFERRED: [NodeId; 4] = [7, 9, 6, 13];
// Heads of P0..P8.
const HEADS: [NodeId; 9] = [0, 4, 5, 8, 10, 11, 12, 14, 15];

fn label(idx: &HeavyPathIndex, p: u32) -> usize {
    HEADS.iter().position(|&h| h == idx.path_head(p)).expect("known head")
}

#[test]
fn figure_table() {
    let t = Tree::from_edges(17, &EDGES).unwrap();
    let idx = HeavyPathIndex::build_with_ties(&t, 0, &[0.0; 17], &PREFERRED).unwrap();
    // v: (P_v, offset, L(v), h, h^r)
    let rows: [(usize, u32, &[usize], f64, f64); 17] = [
        (0, 0, &[], 5.0, 0.0),
        (0, 1, &[5, 8], 4.0, 2.0),
        (0, 2, &[4], 3.0, 1.0),
        (0, 3, &[1], 2.0, 2.0),
        (1, 0, &[2], 1.0, 1.0),
        (2, 0, &[], 0.0, 0.0),
        (1, 1, &[], 0.0, 0.0),
        (0, 4, &[3], 1.0, 1.0),
        (3, 0, &[], 0.0, 0.0),
        (0, 5, &[], 0.0, 0.0),
        (4, 0, &[], 0.0, 0.0),
        (5, 0, &[6, 7], 1.0, 1.0),
        (6, 0, &[], 0.0, 0.0),
        (5, 1, &[], 0.0, 0.0),
        (7, 0, &[], 0.0, 0.0),
        (8, 0, &[], 1.0, 0.0),
        (8, 1, &[], 0.0, 0.0),
    ];
    for (v, &(p, off, light, h, hr)) in rows.iter().enumerate() {
        let v = v as NodeId;
        assert_eq!(label(&idx, idx.path_of(v)), p, "P_v at {v}");
        assert_eq!(idx.offset(v), off, "offset at {v}");
        let got: Vec<usize> = idx.light_paths(v).iter().map(|&q| label(&idx, q)).collect();
        assert_eq!(got, light, "L at {v}");
        assert_eq!(idx.height(v), h, "h at {v}");
        assert_eq!(idx.light_height(v), hr, "h^r at {v}");
    }
    let paths: [(&[NodeId], f64); 9] = [
        (&[0, 1, 2, 3, 7, 9], 5.0),
        (&[4, 6], 1.0),
        (&[5], 0.0),
        (&[8], 0.0),
        (&[10], 0.0),
        (&[11, 13], 1.0),
        (&[12], 0.0),
        (&[14], 0.0),
        (&[15, 16], 1.0),
    ];
    assert_eq!(idx.path_count(), 9);
    for (k, &(nodes, h)) in paths.iter().enumerate() {
        let p = idx.path_of(HEADS[k]);
        assert_eq!(idx.path_nodes(p), nodes);
        assert_eq!(idx.path_height(p), h);
    }
    // Sequences along P0: h^r - j = (0,1,-1,-1,-3,-5), h^r + j = (0,3,3,5,5,5).
    let p0 = idx.path_of(0);
    assert_eq!(idx.range_argmax_minus(p0, 0, 5).unwrap(), Some((1, 1.0)));
    assert_eq!(idx.range_argmax_plus(p0, 0, 5).unwrap().unwrap().1, 5.0);
    assert_eq!(idx.range_argmax_minus(p0, 2, 3).unwrap().unwrap().1, -1.0);
}

fn weights(n: usize, seed: &[i16]) -> Vec<f64> {
    (0..n)
        .map(|i| match seed.get(i) {
            Some(&w) if w % 7 == 0 => f64::NEG_INFINITY,
            Some(&w) => w as f64 / 64.0,
            None => 0.0,
        })
        .collect()
}

proptest! {
    #[test]
    fn heights_and_paths(choices in prop::collection::vec(any::<u32>(), 0..150),
                         ws in prop::collection::vec(any::<i16>(), 0..151),
                         root_pick in any::<u32>()) {
        let t = common::tree_from_choices(&choices);
        let n = t.node_count();
        let alpha = weights(n, &ws);
        let root = root_pick % n as u32;
        let idx = HeavyPathIndex::build(&t, root, &alpha).unwrap();
        // HP-tree depth is logarithmic.
        let bound = tree_ecc::centroid::depth_bound(n);
        prop_assert!(idx.hp_height() <= bound);
        let (parent, _) = t.rooted(root);
        for v in 0..n as NodeId {
            prop_assert!(idx.height(v) >= idx.light_height(v));
            prop_assert!(idx.light_height(v) >= idx.alpha(v));
            // h(v) by definition.
            let d = bfs_distances(&t, v);
            let mut want = f64::NEG_INFINITY;
            for x in 0..n as NodeId {
                let mut y = x;
                let below = loop {
                    if y == v { break true; }
                    if y == root { break false; }
                    y = parent[y as usize];
                };
                if below { want = want.max(d[x as usize] as f64 + alpha[x as usize]); }
            }
            prop_assert_eq!(idx.height(v), want);
            let light = idx.light_paths(v);
            for w in light.windows(2) {
                prop_assert!(idx.path_height(w[0]) >= idx.path_height(w[1]));
            }
            let p = idx.path_of(v);
            prop_assert_eq!(idx.path_node(p, idx.offset(v) as usize), v);
        }
        // Range argmax against a scan.
        for p in 0..idx.path_count() as u32 {
            let len = idx.path_len(p);
            for lo in 0..len {
                for hi in lo..len.min(lo + 6) {
                    let scan_minus = (lo..=hi)
                        .map(|j| idx.light_height(idx.path_node(p, j)) - j as f64)
                        .fold(f64::NEG_INFINITY, f64::max);
                    let scan_plus = (lo..=hi)
                        .map(|j| idx.light_height(idx.path_node(p, j)) + j as f64)
                        .fold(f64::NEG_INFINITY, f64::max);
                    prop_assert_eq!(idx.range_argmax_minus(p, lo, hi).unwrap().unwrap().1, scan_minus);
                    prop_assert_eq!(idx.range_argmax_plus(p, lo, hi).unwrap().unwrap().1, scan_plus);
                }
            }
        }
    }
}
