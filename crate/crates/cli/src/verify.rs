//! Comparison of the indexes against the brute-force oracles.

use std::fmt;

use tree_ecc::oracle::{self, brute_odot_rows, brute_subset_ecc, system_rows, Budget, OdotOp};
use tree_ecc::{
    check_cube_free, check_median, diameter_cube_free, ecc_all, Embedding, EmbeddingMode, Graph,
    MaxIndex, MinIndex, NodeId, PlusIndex, SubsetEccIndex, Tree, TreeSystem, Weight,
};

use crate::io::SubsetQuery;

/// Number of mismatches reported in full.
const SHOWN: usize = 5;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub failed: usize,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, pass: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !pass {
            self.failed += 1;
            if self.failures.len() < SHOWN {
                self.failures.push(detail());
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "pass" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failed", self.name, self.checked, self.failed)?;
        for d in &self.failures {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum VerifyError {
    Oracle(oracle::OracleError),
    Index(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Oracle(e) => write!(f, "oracle: {e}"),
            VerifyError::Index(e) => write!(f, "index: {e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<oracle::OracleError> for VerifyError {
    fn from(e: oracle::OracleError) -> Self {
        VerifyError::Oracle(e)
    }
}

fn index_err(e: impl fmt::Display) -> VerifyError {
    VerifyError::Index(e.to_string())
}

/// Subset eccentricity queries against the brute scan.
pub fn subset_queries(
    t: &Tree,
    alpha: &[Weight],
    queries: &[SubsetQuery],
    budget: Budget,
) -> Result<Report, VerifyError> {
    let mut r = Report::new("subset-ecc");
    let idx = SubsetEccIndex::preprocess(t, alpha).map_err(index_err)?;
    for q in queries {
        let got = idx.query(&q.nodes, &q.beta).map_err(index_err)?;
        let want = brute_subset_ecc(t, alpha, &q.nodes, &q.beta, budget)?;
        r.check(got == want, || format!("line {}: index {got}, oracle {want}", q.line));
    }
    Ok(r)
}

/// All three indexes on the given queries.
pub fn odot_queries(
    sys: &TreeSystem,
    s: &[Vec<NodeId>],
    queries: &[Vec<NodeId>],
    budget: Budget,
) -> Result<Report, VerifyError> {
    let mut r = Report::new("odot");
    let rows = system_rows(sys, budget)?;
    let plus = PlusIndex::build(sys, s).map_err(index_err)?;
    let min = MinIndex::build(sys, s).map_err(index_err)?;
    let max = MaxIndex::build(sys, s).map_err(index_err)?;
    for v in queries {
        let r_v: Vec<Vec<u32>> = v.iter().enumerate().map(|(i, &x)| rows[i].row(x).to_vec()).collect();
        let want = |op| brute_odot_rows(&r_v, s, op).map(|x| x.0);
        let got = plus.query(v).map_err(index_err)?.map(|x| x.0);
        r.check(got == want(OdotOp::Plus), || format!("plus at {v:?}: {got:?} vs {:?}", want(OdotOp::Plus)));
        let got = min.query(v).map_err(index_err)?.map(|x| x.0);
        r.check(got == want(OdotOp::Min), || format!("min at {v:?}: {got:?} vs {:?}", want(OdotOp::Min)));
        let got = Some(max.query(v).map_err(index_err)?);
        r.check(got == want(OdotOp::Max), || format!("max at {v:?}: {got:?} vs {:?}", want(OdotOp::Max)));
    }
    Ok(r)
}

/// Host eccentricity of every image, by scanning all pairs.
pub fn host_eccentricities(emb: &Embedding, budget: Budget) -> Result<Vec<i64>, VerifyError> {
    let rows = system_rows(&emb.system, budget)?;
    let pts = &emb.points;
    let host = |a: &[NodeId], b: &[NodeId]| -> i64 {
        let d = (0..a.len()).map(|i| rows[i].get(a[i], b[i]) as i64);
        match emb.mode {
            EmbeddingMode::System => d.min().unwrap(),
            EmbeddingMode::Cartesian => d.sum(),
            EmbeddingMode::Strong => d.max().unwrap(),
        }
    };
    Ok(pts.iter().map(|p| pts.iter().map(|q| host(p, q)).max().unwrap()).collect())
}

/// Raw eccentricities of an embedding against the host metric.
pub fn embedding(emb: &Embedding, budget: Budget) -> Result<Report, VerifyError> {
    let mut r = Report::new("ecc");
    let rep = ecc_all(emb).map_err(index_err)?;
    let want = host_eccentricities(emb, budget)?;
    for (x, (&got, &w)) in rep.raw.iter().zip(&want).enumerate() {
        r.check(got == w, || format!("point {x}: index {got}, oracle {w}"));
    }
    Ok(r)
}

/// Class membership and diameter of a cube-free median graph.
pub fn median_graph(g: &Graph, budget: Budget) -> Result<Report, VerifyError> {
    let mut r = Report::new("median-diameter");
    let want = oracle::diameter(g, budget)?;
    let median = check_median(g);
    let cube_free = check_cube_free(g);
    r.check(median, || "graph is not median".into());
    r.check(cube_free, || "graph contains a cube".into());
    if median && cube_free {
        match diameter_cube_free(g) {
            Ok(got) => r.check(got == want, || format!("diameter {got}, oracle {want}")),
            Err(e) => r.check(false, || format!("median diameter failed: {e}")),
        }
    }
    Ok(r)
}

/// Centroid and heavy-path depth bounds, and the per-level size bound of
/// subset queries, on one tree.
pub fn tree_invariants(t: &Tree, queries: &[Vec<NodeId>], r: &mut Report) -> Result<(), VerifyError> {
    use tree_ecc::centroid::depth_bound;
    let n = t.node_count();
    let bound = depth_bound(n);
    let cidx = tree_ecc::CentroidIndex::build(t);
    r.check(cidx.depth() <= bound, || format!("centroid depth {} > {bound} for n = {n}", cidx.depth()));
    let alpha = vec![0.0; n];
    let idx = SubsetEccIndex::preprocess(t, &alpha).map_err(index_err)?;
    let hp = idx.heavy_paths().hp_height();
    r.check(hp <= bound, || format!("heavy path depth {hp} > {bound} for n = {n}"));
    for u in queries {
        let beta = vec![0.0; u.len()];
        let (_, trace) = idx.query_traced(u, &beta).map_err(index_err)?;
        for (level, &size) in trace.level_sizes.iter().enumerate() {
            r.check(size <= 2 * trace.distinct, || {
                format!("level {level}: {size} nodes for {} distinct query nodes", trace.distinct)
            });
        }
    }
    Ok(())
}

/// Star decomposition invariants at every recursion level: fibers partition
/// the vertices, the centre fiber is the centroid alone, fibers have at most
/// half the vertices, cones touch two panels, total boundaries are isometric
/// trees and imprint sets match the definition (at most two).
pub fn median_invariants(g: &Graph, r: &mut Report, budget: Budget) -> Result<(), VerifyError> {
    use tree_ecc::median::FiberRole;
    use tree_ecc::{median_centroid, star_decomposition};
    let n = g.node_count();
    if n < 2 {
        return Ok(());
    }
    let c = median_centroid(g).map_err(index_err)?;
    let dec = star_decomposition(g, c).map_err(index_err)?;
    let mut seen = vec![0u32; n];
    for f in &dec.fibers {
        for &v in f {
            seen[v as usize] += 1;
        }
        r.check(2 * f.len() <= n, || format!("fiber of {} vertices in {n}", f.len()));
    }
    r.check(seen.iter().all(|&s| s == 1), || "fibers do not partition the vertices".into());
    r.check(dec.fibers[0] == [c], || format!("centre fiber {:?}", dec.fibers[0]));
    for (i, role) in dec.roles.iter().enumerate() {
        if let FiberRole::Cone { panels } = role {
            let ok = panels[0] != panels[1]
                && panels.iter().all(|&p| matches!(dec.roles[p as usize], FiberRole::Panel));
            r.check(ok, || format!("cone {i} has panels {panels:?}"));
        }
    }
    for p in &dec.panels {
        let Some(t) = &p.tree else { continue };
        r.check(t.node_count() == p.boundary.len(), || "boundary tree size".into());
        for (i, &a) in p.boundary.iter().enumerate() {
            let dg = g.bfs(a);
            let dt = tree_ecc::tree::bfs_distances(t, i as NodeId);
            let ok = p.boundary.iter().enumerate().all(|(j, &b)| dt[j] == dg[b as usize]);
            r.check(ok, || format!("boundary of panel {} is not isometric at {a}", p.fiber));
        }
        let fiber = &dec.fibers[p.fiber as usize];
        let h = g.induced(fiber);
        let mut local = vec![NodeId::MAX; n];
        for (i, &v) in fiber.iter().enumerate() {
            local[v as usize] = i as NodeId;
        }
        let lb: Vec<NodeId> = p.boundary.iter().map(|&b| local[b as usize]).collect();
        for &u in fiber {
            let want = tree_ecc::oracle::brute_imprints(&h, &lb, local[u as usize], budget)?;
            let mut got: Vec<NodeId> = dec.imprints[u as usize]
                .iter()
                .filter(|x| !x.is_absent())
                .map(|x| local[x.vertex as usize])
                .collect();
            got.sort_unstable();
            r.check(want.len() <= 2 && got == want, || format!("imprints of {u}: {got:?} vs {want:?}"));
        }
    }
    for f in &dec.fibers[1..] {
        median_invariants(&g.induced(f), r, budget)?;
    }
    Ok(())
}
