mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tree_ecc::median::{classified_distance, level_candidates, FiberRole};
use tree_ecc::oracle::{apsp, brute_imprints, brute_median_centroid, tree_diameter, Budget, DistanceMatrix};
use tree_ecc::{
    diameter_cube_free, diameter_report, median_centroid,
    star_decomposition, Graph, MedianError, NodeId, StarDecomposition,
};

fn random_product(rng: &mut ChaCha8Rng, max: usize) -> Graph {
    let (na, nb) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
    let (sa, sb) = ([0, 1, 3][rng.gen_range(0..3)], [0, 1, 3][rng.gen_range(0..3)]);
    let a = common::random_tree(rng, na, sa);
    let b = common::random_tree(rng, nb, sb);
    common::product(&a, &b)
}

/// Products glued one after another at single vertices.
fn glued(rng: &mut ChaCha8Rng, pieces: usize, max: usize) -> Graph {
    let mut g = random_product(rng, max);
    for _ in 1..pieces {
        let h = random_product(rng, max);
        let (n, m) = (g.node_count(), h.node_count());
        let (x, y) = (rng.gen_range(0..n as NodeId), rng.gen_range(0..m as NodeId));
        let map = |v: NodeId| -> u64 {
            if v == y {
                x as u64
            } else if v < y {
                (n as NodeId + v) as u64
            } else {
                (n as NodeId + v - 1) as u64
            }
        };
        let mut e: Vec<(u64, u64)> = g.edges().map(|(u, v)| (u as u64, v as u64)).collect();
        e.extend(h.edges().map(|(u, v)| (map(u), map(v))));
        g = Graph::from_edges(n + m - 1, &e).unwrap();
    }
    g
}

fn max_over(d: &DistanceMatrix, dec: &StarDecomposition, keep: impl Fn(u32, u32) -> bool) -> Option<u32> {
    let n = d.node_count() as NodeId;
    let mut best = None;
    for u in 0..n {
        for v in u + 1..n {
            let (fu, fv) = (dec.fiber_of[u as usize], dec.fiber_of[v as usize]);
            if fu != fv && (keep(fu, fv) || keep(fv, fu)) {
                best = Some(best.map_or(d.get(u, v), |b: u32| b.max(d.get(u, v))));
            }
        }
    }
    best
}

/// Checks one level and recurses into every fiber.
fn check_level(g: &Graph) {
    let n = g.node_count();
    if n < 2 {
        return;
    }
    let d = apsp(g, Budget::DEFAULT).unwrap();
    let c = median_centroid(g).unwrap();
    let total = |v: NodeId| d.row(v).iter().map(|&x| x as u64).sum::<u64>();
    let brute = brute_median_centroid(g, Budget::DEFAULT).unwrap();
    assert_eq!(total(c), total(brute));

    let dec = star_decomposition(g, c).unwrap();
    // Fibers partition the vertices.
    let mut seen = vec![0; n];
    for (i, f) in dec.fibers.iter().enumerate() {
        for &v in f {
            seen[v as usize] += 1;
            assert_eq!(dec.fiber_of[v as usize], i as u32);
            assert_eq!(dec.dist_c[v as usize], d.get(c, v));
            assert_eq!(dec.gate_dist[v as usize], d.get(dec.star[i], v));
        }
        assert!(2 * f.len() <= n, "fiber of size {} in {n}", f.len());
    }
    assert!(seen.iter().all(|&s| s == 1));
    assert_eq!(dec.fibers[0], vec![c]);
    for (i, role) in dec.roles.iter().enumerate() {
        if let FiberRole::Cone { panels } = role {
            assert_ne!(panels[0], panels[1]);
            for &p in panels {
                assert!(matches!(dec.roles[p as usize], FiberRole::Panel));
                assert_eq!(d.get(dec.star[p as usize], dec.star[i]), 1);
            }
        }
    }
    // Boundary trees are isometric and imprints match the definition.
    for p in &dec.panels {
        let Some(t) = &p.tree else { continue };
        for (i, &a) in p.boundary.iter().enumerate() {
            let row = tree_ecc::tree::bfs_distances(t, i as NodeId);
            for (j, &b) in p.boundary.iter().enumerate() {
                assert_eq!(row[j], d.get(a, b));
            }
        }
        let fiber = &dec.fibers[p.fiber as usize];
        let h = g.induced(fiber);
        let mut local = vec![NodeId::MAX; n];
        for (i, &v) in fiber.iter().enumerate() {
            local[v as usize] = i as NodeId;
        }
        let lb: Vec<NodeId> = p.boundary.iter().map(|&b| local[b as usize]).collect();
        for &u in fiber {
            let want = brute_imprints(&h, &lb, local[u as usize], Budget::DEFAULT).unwrap();
            assert!(want.len() <= 2);
            let mut got: Vec<NodeId> = dec.imprints[u as usize]
                .iter()
                .filter(|g| !g.is_absent())
                .map(|g| {
                    assert_eq!(g.dist, d.get(u, g.vertex));
                    local[g.vertex as usize]
                })
                .collect();
            got.sort_unstable();
            assert_eq!(got, want, "imprints of {u}");
        }
    }
    for u in 0..n as NodeId {
        for v in 0..n as NodeId {
            if let Some(x) = classified_distance(&dec, u, v) {
                assert_eq!(x, d.get(u, v), "pair {u} {v}");
            }
        }
    }
    // Each step against the pairs it is responsible for.
    let panel = |f: u32| matches!(dec.roles[f as usize], FiberRole::Panel);
    let near = |x: u32, y: u32| dec.cone_panels(y).is_some_and(|p| p.contains(&x));
    let share = |x: u32, y: u32| {
        dec.cone_panels(x).zip(dec.cone_panels(y)).is_some_and(|(a, b)| a.iter().any(|p| b.contains(p)))
    };
    let cand = level_candidates(&dec).unwrap();
    assert_eq!(cand.center_ecc, d.row(c).iter().copied().max().unwrap());
    assert_eq!(cand.panels, max_over(&d, &dec, |x, y| panel(x) && panel(y)));
    assert_eq!(
        cand.separated,
        max_over(&d, &dec, |x, y| x != 0 && dec.is_cone(y) && !near(x, y) && !share(x, y))
    );
    assert_eq!(cand.neighboring, max_over(&d, &dec, |x, y| panel(x) && near(x, y)));
    assert_eq!(cand.two_neighboring, max_over(&d, &dec, share));
    let cross = max_over(&d, &dec, |_, _| true).unwrap();
    assert_eq!(cand.max(), cross);

    for f in &dec.fibers[1..] {
        check_level(&g.induced(f));
    }
}

#[test]
fn decomposition_invariants_on_products() {
    let mut rng = common::rng(41);
    for _ in 0..40 {
        let g = random_product(&mut rng, 9);
        check_level(&g);
    }
}

#[test]
fn decomposition_invariants_on_glued_products() {
    let mut rng = common::rng(42);
    for _ in 0..30 {
        let pieces = rng.gen_range(2..=4);
        let g = glued(&mut rng, pieces, 6);
        check_level(&g);
    }
}

#[test]
fn diameter_matches_apsp() {
    let mut rng = common::rng(43);
    for i in 0..200 {
        let g = if i % 2 == 0 { random_product(&mut rng, 25) } else { glued(&mut rng, 3, 12) };
        let n = g.node_count();
        let r = diameter_report(&g).unwrap();
        assert_eq!(r.diameter, apsp(&g, Budget::DEFAULT).unwrap().diameter());
        for l in &r.levels {
            assert!(l.largest <= n >> l.depth);
            assert!(l.vertices <= n);
        }
    }
}

#[test]
fn trees_match_double_bfs() {
    let mut rng = common::rng(44);
    for _ in 0..100 {
        let n = rng.gen_range(1..=300);
        let spread = [0, 1, 4][rng.gen_range(0..3)];
        let t = common::random_tree(&mut rng, n, spread);
        assert_eq!(diameter_cube_free(&Graph::from_tree(&t)).unwrap(), tree_diameter(&t));
    }
}

#[test]
fn rejects_out_of_class() {
    // Q3 contains a cube; K_{2,3} is not median.
    let q3: Vec<(u64, u64)> = (0..8u64)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    let q3 = Graph::from_edges(8, &q3).unwrap();
    assert!(matches!(diameter_cube_free(&q3), Err(MedianError::NotCubeFree { .. })));
    let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    assert!(diameter_cube_free(&k23).is_err());
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert!(diameter_cube_free(&c5).is_err());
}
