//! Brute-force reference computations. Slow on purpose; each entry point
//! refuses instances whose work estimate exceeds a [`Budget`].

use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::odot::TreeSystem;
use crate::tree::{bfs_distances, NodeId, Tree};
use crate::Weight;

/// Upper bound on elementary steps an oracle call may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(4_000_000_000);
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    fn check(self, work: u64) -> Result<(), OracleError> {
        if work > self.0 {
            Err(OracleError::OverBudget { work, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    OverBudget { work: u64, budget: u64 },
    EmptySet,
    Arity { expected: usize, got: usize },
    MissingWeight { expected: usize, got: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::OverBudget { work, budget } => {
                write!(f, "oracle work estimate {work} exceeds budget {budget}")
            }
            OracleError::EmptySet => write!(f, "empty node set"),
            OracleError::Arity { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            OracleError::MissingWeight { expected, got } => {
                write!(f, "expected {expected} weights, got {got}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// All-pairs distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: NodeId, v: NodeId) -> u32 {
        self.d[u as usize * self.n + v as usize]
    }

    pub fn row(&self, u: NodeId) -> &[u32] {
        &self.d[u as usize * self.n..(u as usize + 1) * self.n]
    }

    pub fn eccentricities(&self) -> Vec<u32> {
        (0..self.n as NodeId)
            .map(|u| self.row(u).iter().copied().max().unwrap_or(0))
            .collect()
    }

    pub fn diameter(&self) -> u32 {
        self.eccentricities().into_iter().max().unwrap_or(0)
    }

    pub fn radius(&self) -> u32 {
        self.eccentricities().into_iter().min().unwrap_or(0)
    }
}

/// One BFS per vertex.
pub fn apsp(g: &Graph, budget: Budget) -> Result<DistanceMatrix, OracleError> {
    let n = g.node_count() as u64;
    budget.check(n * (n + 2 * g.edge_count() as u64))?;
    let mut d = Vec::with_capacity(g.node_count() * g.node_count());
    for u in 0..g.node_count() as NodeId {
        d.extend_from_slice(&g.bfs(u));
    }
    Ok(DistanceMatrix { n: g.node_count(), d })
}

pub fn apsp_tree(t: &Tree, budget: Budget) -> Result<DistanceMatrix, OracleError> {
    let n = t.node_count() as u64;
    budget.check(n * n * 3)?;
    let mut d = Vec::with_capacity(t.node_count() * t.node_count());
    for u in 0..t.node_count() as NodeId {
        d.extend_from_slice(&bfs_distances(t, u));
    }
    Ok(DistanceMatrix { n: t.node_count(), d })
}

/// Eccentricity of every vertex, without storing the matrix.
pub fn eccentricities(g: &Graph, budget: Budget) -> Result<Vec<u32>, OracleError> {
    let n = g.node_count() as u64;
    budget.check(n * (n + 2 * g.edge_count() as u64))?;
    Ok((0..g.node_count() as NodeId)
        .map(|u| g.bfs(u).into_iter().max().unwrap_or(0))
        .collect())
}

pub fn diameter(g: &Graph, budget: Budget) -> Result<u32, OracleError> {
    Ok(eccentricities(g, budget)?.into_iter().max().unwrap_or(0))
}

pub fn radius(g: &Graph, budget: Budget) -> Result<u32, OracleError> {
    Ok(eccentricities(g, budget)?.into_iter().min().unwrap_or(0))
}

/// Tree diameter by two sweeps.
pub fn tree_diameter(t: &Tree) -> u32 {
    let d0 = bfs_distances(t, 0);
    let a = (0..d0.len()).max_by_key(|&v| d0[v]).unwrap_or(0);
    bfs_distances(t, a as NodeId).into_iter().max().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdotOp {
    Plus,
    Min,
    Max,
}

/// `max_{s in S}` of the `op`-combination of `d_i(v_i, s_i)`, with a maximizing
/// index into `S`. `None` when `S` is empty.
pub fn brute_odot(
    sys: &TreeSystem,
    s: &[Vec<NodeId>],
    v: &[NodeId],
    op: OdotOp,
    budget: Budget,
) -> Result<Option<(i64, usize)>, OracleError> {
    let k = sys.k();
    if v.len() != k {
        return Err(OracleError::Arity { expected: k, got: v.len() });
    }
    budget.check(sys.total_nodes() as u64 * 3 + (s.len() * k) as u64)?;
    let rows: Vec<Vec<u32>> = (0..k).map(|i| bfs_distances(sys.tree(i), v[i])).collect();
    Ok(brute_odot_rows(&rows, s, op))
}

/// Like [`brute_odot`], with `rows[i]` the distances from `v_i` in tree `i`.
pub fn brute_odot_rows(rows: &[Vec<u32>], s: &[Vec<NodeId>], op: OdotOp) -> Option<(i64, usize)> {
    let mut best: Option<(i64, usize)> = None;
    for (idx, p) in s.iter().enumerate() {
        let ds = p.iter().enumerate().map(|(i, &x)| rows[i][x as usize] as i64);
        let val = match op {
            OdotOp::Plus => ds.sum(),
            OdotOp::Min => ds.min().unwrap_or(0),
            OdotOp::Max => ds.max().unwrap_or(0),
        };
        if best.map_or(true, |(b, _)| val > b) {
            best = Some((val, idx));
        }
    }
    best
}

/// `max_v min_{u in U} (alpha(v) + d(v, u) + beta(u))`; `beta[j]` belongs to `u[j]`.
pub fn brute_subset_ecc(
    t: &Tree,
    alpha: &[Weight],
    u: &[NodeId],
    beta: &[Weight],
    budget: Budget,
) -> Result<Weight, OracleError> {
    if u.is_empty() {
        return Err(OracleError::EmptySet);
    }
    if beta.len() != u.len() {
        return Err(OracleError::MissingWeight { expected: u.len(), got: beta.len() });
    }
    if alpha.len() != t.node_count() {
        return Err(OracleError::MissingWeight { expected: t.node_count(), got: alpha.len() });
    }
    budget.check((t.node_count() * (u.len() + 1) * 3) as u64)?;
    let rows: Vec<Vec<u32>> = u.iter().map(|&x| bfs_distances(t, x)).collect();
    let mut best = Weight::NEG_INFINITY;
    for v in 0..t.node_count() {
        let mut m = Weight::INFINITY;
        for (j, row) in rows.iter().enumerate() {
            let c = row[v] as Weight + beta[j];
            if c < m {
                m = c;
            }
        }
        let val = alpha[v] + m;
        if val > best {
            best = val;
        }
    }
    Ok(best)
}

/// Vertices `a` of `boundary` such that no other boundary vertex lies on a
/// shortest path from `u` to `a`.
pub fn brute_imprints(
    g: &Graph,
    boundary: &[NodeId],
    u: NodeId,
    budget: Budget,
) -> Result<Vec<NodeId>, OracleError> {
    let work = (boundary.len() as u64 + 1) * (g.node_count() + 2 * g.edge_count()) as u64
        + (boundary.len() as u64).pow(2);
    budget.check(work)?;
    let du = g.bfs(u);
    let rows: Vec<Vec<u32>> = boundary.iter().map(|&a| g.bfs(a)).collect();
    let mut out = Vec::new();
    for (i, &a) in boundary.iter().enumerate() {
        let blocked = boundary.iter().enumerate().any(|(j, &b)| {
            j != i && b != a && du[b as usize] + rows[j][a as usize] == du[a as usize]
        });
        if !blocked {
            out.push(a);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Vertex minimizing the total distance, lowest id among ties.
pub fn brute_median_centroid(g: &Graph, budget: Budget) -> Result<NodeId, OracleError> {
    let n = g.node_count() as u64;
    budget.check(n * (n + 2 * g.edge_count() as u64))?;
    let mut best = (u64::MAX, 0);
    for v in 0..g.node_count() as NodeId {
        let total: u64 = g.bfs(v).iter().map(|&d| d as u64).sum();
        if total < best.0 {
            best = (total, v);
        }
    }
    Ok(best.1)
}

/// Distance rows for each tree of a system from every node (for exhaustive checks).
pub fn system_rows(sys: &TreeSystem, budget: Budget) -> Result<Vec<DistanceMatrix>, OracleError> {
    (0..sys.k()).map(|i| apsp_tree(sys.tree(i), budget)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize, n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let v = (i * n + j) as u64;
                if j + 1 < n {
                    e.push((v, v + 1));
                }
                if i + 1 < m {
                    e.push((v, v + n as u64));
                }
            }
        }
        Graph::from_edges(m * n, &e).unwrap()
    }

    #[test]
    fn path_and_grid() {
        let g = Graph::from_tree(&Tree::path(4));
        assert_eq!(apsp(&g, Budget::DEFAULT).unwrap().diameter(), 3);
        let g = grid(4, 4);
        let m = apsp(&g, Budget::DEFAULT).unwrap();
        assert_eq!(m.diameter(), 6);
        assert_eq!(m.radius(), 4);
        assert_eq!(diameter(&g, Budget::DEFAULT).unwrap(), 6);
    }

    #[test]
    fn budget_refuses() {
        let g = grid(10, 10);
        assert!(matches!(apsp(&g, Budget(10)), Err(OracleError::OverBudget { .. })));
    }

    #[test]
    fn odot_degenerate() {
        let sys = TreeSystem::new(vec![Tree::path(4)]).unwrap();
        let s = vec![vec![3]];
        for op in [OdotOp::Plus, OdotOp::Min, OdotOp::Max] {
            assert_eq!(brute_odot(&sys, &s, &[0], op, Budget::DEFAULT).unwrap(), Some((3, 0)));
        }
    }

    #[test]
    fn subset_ecc_basics() {
        let t = Tree::path(4);
        let z = [0.0; 4];
        assert_eq!(brute_subset_ecc(&t, &z, &[0, 1, 2, 3], &z, Budget::DEFAULT).unwrap(), 0.0);
        assert_eq!(brute_subset_ecc(&t, &z, &[0], &[0.0], Budget::DEFAULT).unwrap(), 3.0);
        assert_eq!(tree_diameter(&t), 3);
    }

    #[test]
    fn imprints() {
        let g = Graph::from_tree(&Tree::path(5));
        assert_eq!(brute_imprints(&g, &[2, 4], 2, Budget::DEFAULT).unwrap(), vec![2]);
        assert_eq!(brute_imprints(&g, &[4], 0, Budget::DEFAULT).unwrap(), vec![4]);
        assert_eq!(brute_imprints(&g, &[1, 3], 2, Budget::DEFAULT).unwrap(), vec![1, 3]);
    }
}
