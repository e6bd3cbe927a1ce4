//! Timing series for the scaling checks.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::Rng;
use tree_ecc::{diameter_cube_free, MaxIndex, NodeId, SubsetEccIndex};

use crate::gen::{self, TreeShape};

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Instance size: nodes, vertices, or the number of trees.
    pub n: usize,
    pub build_ns: f64,
    pub query_ns: f64,
}

/// Fastest of `reps` runs.
pub fn best_of<T>(reps: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            black_box(f());
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn ns(d: Duration) -> f64 {
    d.as_nanos() as f64
}

/// Per-instance minimum over `reps` rounds, each round timing every instance
/// once in turn, so a slow stretch of the machine hits all sizes alike.
fn interleaved(count: usize, reps: usize, mut job: impl FnMut(usize) -> Duration) -> Vec<Duration> {
    let mut best = vec![Duration::MAX; count];
    for _ in 0..reps.max(1) {
        for (i, b) in best.iter_mut().enumerate() {
            *b = (*b).min(job(i));
        }
    }
    best
}

fn timed<T>(f: impl FnOnce() -> T) -> Duration {
    let t = Instant::now();
    black_box(f());
    t.elapsed()
}

/// Subset eccentricity preprocessing and queries with `|U| = u_size` over
/// `trees` random trees of `2^e` nodes each; times are means over the trees,
/// which share the `queries` evenly.
pub fn subset_series(
    seed: u64,
    exps: &[u32],
    trees: usize,
    u_size: usize,
    queries: usize,
    reps: usize,
) -> Vec<Sample> {
    let mut rng = gen::rng(seed);
    let trees = trees.max(1);
    let per_tree = queries.div_ceil(trees);
    let inst: Vec<_> = exps
        .iter()
        .flat_map(|&e| core::iter::repeat(e).take(trees))
        .map(|e| {
            let n = 1usize << e;
            let t = gen::random_tree(&mut rng, n, TreeShape::Uniform);
            let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(-64..64) as f64 / 64.0).collect();
            let qs: Vec<Vec<NodeId>> = (0..per_tree)
                .map(|_| (0..u_size).map(|_| rng.gen_range(0..n as NodeId)).collect())
                .collect();
            (t, alpha, qs)
        })
        .collect();
    // Builds are timed before any index is kept alive.
    let build = interleaved(inst.len(), reps, |i| {
        let (t, alpha, _) = &inst[i];
        timed(|| SubsetEccIndex::preprocess(t, alpha).unwrap())
    });
    let idx: Vec<_> = inst.iter().map(|(t, alpha, _)| SubsetEccIndex::preprocess(t, alpha).unwrap()).collect();
    let beta = vec![0.0; u_size];
    let query = interleaved(inst.len(), reps, |i| {
        let (idx, qs) = (&idx[i], &inst[i].2);
        timed(|| qs.iter().map(|u| idx.query(u, &beta).unwrap()).fold(0.0, f64::max))
    });
    exps.iter()
        .enumerate()
        .map(|(k, &e)| {
            let r = k * trees..(k + 1) * trees;
            Sample {
                n: 1 << e,
                build_ns: build[r.clone()].iter().map(|&d| ns(d)).sum::<f64>() / trees as f64,
                query_ns: query[r].iter().map(|&d| ns(d)).sum::<f64>() / (trees * per_tree) as f64,
            }
        })
        .collect()
}

/// Max-index queries for systems of `k` trees of `tree_size` nodes.
pub fn max_series(seed: u64, ks: &[usize], tree_size: usize, points: usize, queries: usize, reps: usize) -> Vec<Sample> {
    let mut rng = gen::rng(seed);
    let inst: Vec<_> = ks
        .iter()
        .map(|&k| {
            let trees: Vec<_> = (0..k)
                .map(|_| gen::random_tree(&mut rng, tree_size, TreeShape::Uniform))
                .collect();
            let s = gen::random_points(&mut rng, &trees, points);
            let qs = gen::random_points(&mut rng, &trees, queries);
            let sys = tree_ecc::TreeSystem::new(trees).unwrap();
            let build = best_of(reps, || MaxIndex::build(&sys, &s).unwrap());
            (k, build, MaxIndex::build(&sys, &s).unwrap(), qs)
        })
        .collect();
    let q = interleaved(inst.len(), reps, |i| {
        let (_, _, idx, qs) = &inst[i];
        timed(|| qs.iter().map(|v| idx.query(v).unwrap()).max())
    });
    inst.iter()
        .zip(&q)
        .map(|((k, build, _, qs), &q)| Sample { n: *k, build_ns: ns(*build), query_ns: ns(q) / qs.len() as f64 })
        .collect()
}

/// Median diameter on products of two random trees with `a * b` vertices.
pub fn median_series(seed: u64, sides: &[(usize, usize)], reps: usize) -> Vec<Sample> {
    let mut rng = gen::rng(seed);
    let graphs: Vec<_> = sides
        .iter()
        .map(|&(a, b)| {
            let ta = gen::random_tree(&mut rng, a, TreeShape::Uniform);
            let tb = gen::random_tree(&mut rng, b, TreeShape::Uniform);
            gen::tree_product(&ta, &tb)
        })
        .collect();
    let d = interleaved(graphs.len(), reps, |i| timed(|| diameter_cube_free(&graphs[i]).unwrap()));
    graphs
        .iter()
        .zip(&d)
        .map(|(g, &d)| Sample { n: g.node_count(), build_ns: ns(d), query_ns: 0.0 })
        .collect()
}

/// Successive ratios `f(s[i + 1]) / f(s[i])`.
pub fn ratios(samples: &[Sample], f: impl Fn(&Sample) -> f64) -> Vec<f64> {
    samples.windows(2).map(|w| f(&w[1]) / f(&w[0])).collect()
}

pub fn table(title: &str, samples: &[Sample]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "{:>10} {:>16} {:>12}", "n", "build_ns", "query_ns");
    for s in samples {
        let _ = writeln!(out, "{:>10} {:>16.0} {:>12.1}", s.n, s.build_ns, s.query_ns);
    }
    out
}
