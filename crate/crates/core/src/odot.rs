//! Eccentricity queries over a point set `S` in a system of trees.
//!
//! For a query tuple `v`, the plus index returns `max_s sum_i d_i(v_i, s_i)`,
//! the min index `max_s min_i d_i(v_i, s_i)` and the max index
//! `max_s max_i d_i(v_i, s_i)`.
//!
//! Plus and min enumerate tuples `c` of centroid ancestors. The points whose
//! own ancestor tuple contains `c` are grouped into one cell, stored at a leaf
//! of a trie keyed by `c`, so tuples without points are pruned level by
//! level. Inside a cell the remaining coordinates (neighbours of each `c_i`
//! toward `s_i`, and for min the index `i` and distance differences) go into
//! a range tree.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::centroid::{CentroidAncestor, CentroidIndex};
use crate::range_tree::{CoordConstraint, RangeTree};
use crate::tree::{NodeId, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OdotError {
    EmptySystem,
    EmptyPointSet,
    Arity { point: Option<usize>, expected: usize, got: usize },
    NodeOutOfRange { point: Option<usize>, tree: usize, node: NodeId },
    TooLarge { cells: usize },
}

impl fmt::Display for OdotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdotError::EmptySystem => write!(f, "system has no trees"),
            OdotError::EmptyPointSet => write!(f, "point set is empty"),
            OdotError::Arity { point: Some(p), expected, got } => {
                write!(f, "point {p} has {got} coordinates, expected {expected}")
            }
            OdotError::Arity { point: None, expected, got } => {
                write!(f, "query has {got} coordinates, expected {expected}")
            }
            OdotError::NodeOutOfRange { point: Some(p), tree, node } => {
                write!(f, "point {p}: node {node} out of range for tree {tree}")
            }
            OdotError::NodeOutOfRange { point: None, tree, node } => {
                write!(f, "query: node {node} out of range for tree {tree}")
            }
            OdotError::TooLarge { cells } => write!(f, "{cells} index points exceed the supported size"),
        }
    }
}

impl core::error::Error for OdotError {}

/// `k >= 1` trees.
#[derive(Debug, Clone)]
pub struct TreeSystem {
    trees: Vec<Tree>,
}

impl TreeSystem {
    pub fn new(trees: Vec<Tree>) -> Result<Self, OdotError> {
        if trees.is_empty() {
            return Err(OdotError::EmptySystem);
        }
        Ok(TreeSystem { trees })
    }

    pub fn k(&self) -> usize {
        self.trees.len()
    }

    pub fn tree(&self, i: usize) -> &Tree {
        &self.trees[i]
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// Total node count `N`.
    pub fn total_nodes(&self) -> usize {
        self.trees.iter().map(Tree::node_count).sum()
    }

    /// Checks a tuple of node ids against the system.
    pub fn check_point(&self, p: &[NodeId], point: Option<usize>) -> Result<(), OdotError> {
        if p.len() != self.k() {
            return Err(OdotError::Arity { point, expected: self.k(), got: p.len() });
        }
        for (tree, (&node, t)) in p.iter().zip(&self.trees).enumerate() {
            if node as usize >= t.node_count() {
                return Err(OdotError::NodeOutOfRange { point, tree, node });
            }
        }
        Ok(())
    }

    fn check_set(&self, s: &[Vec<NodeId>]) -> Result<(), OdotError> {
        if s.len() >= u32::MAX as usize {
            return Err(OdotError::TooLarge { cells: s.len() });
        }
        for (i, p) in s.iter().enumerate() {
            self.check_point(p, Some(i))?;
        }
        Ok(())
    }
}

/// Trie over fixed-length keys; leaf `j` is the `j`-th distinct key in sorted order.
#[derive(Debug, Clone)]
struct CellTrie {
    depth: usize,
    // node -> edge range
    nodes: Vec<(u32, u32)>,
    edge_key: Vec<NodeId>,
    // child node id, or leaf id on the last level
    edge_child: Vec<u32>,
}

impl CellTrie {
    /// `keys` holds `depth` entries per cell and must be sorted and distinct.
    fn build(keys: &[NodeId], depth: usize) -> Self {
        let mut trie = CellTrie {
            depth,
            nodes: Vec::new(),
            edge_key: Vec::new(),
            edge_child: Vec::new(),
        };
        let cells = keys.len() / depth;
        if cells > 0 {
            trie.build_node(keys, 0, cells, 0);
        }
        trie
    }

    fn build_node(&mut self, keys: &[NodeId], lo: usize, hi: usize, level: usize) -> u32 {
        if level == self.depth {
            return lo as u32;
        }
        let id = self.nodes.len();
        self.nodes.push((0, 0));
        let first = self.edge_key.len();
        let mut groups = Vec::new();
        let mut a = lo;
        while a < hi {
            let key = keys[a * self.depth + level];
            let mut b = a + 1;
            while b < hi && keys[b * self.depth + level] == key {
                b += 1;
            }
            self.edge_key.push(key);
            self.edge_child.push(0);
            groups.push((a, b));
            a = b;
        }
        self.nodes[id] = (first as u32, self.edge_key.len() as u32);
        for (g, (a, b)) in groups.into_iter().enumerate() {
            let child = self.build_node(keys, a, b, level + 1);
            self.edge_child[first + g] = child;
        }
        id as u32
    }

    /// Calls `f(leaf, picks)` for every stored key `(P_0[picks[0]], ...)`
    /// whose entries are drawn from the given ancestor lists.
    fn for_each(&self, lists: &[&[CentroidAncestor]], mut f: impl FnMut(usize, &[usize])) {
        if self.nodes.is_empty() {
            return;
        }
        let mut picks = vec![0usize; self.depth];
        self.walk(0, 0, lists, &mut picks, &mut f);
    }

    fn walk(
        &self,
        node: u32,
        level: usize,
        lists: &[&[CentroidAncestor]],
        picks: &mut [usize],
        f: &mut impl FnMut(usize, &[usize]),
    ) {
        let (a, b) = self.nodes[node as usize];
        let keys = &self.edge_key[a as usize..b as usize];
        for (j, anc) in lists[level].iter().enumerate() {
            if let Ok(e) = keys.binary_search(&anc.centroid) {
                picks[level] = j;
                let child = self.edge_child[a as usize + e];
                if level + 1 == self.depth {
                    f(child as usize, picks);
                } else {
                    self.walk(child, level + 1, lists, picks, f);
                }
            }
        }
    }
}

/// Cap on stored index words, about 2 GiB of coordinates.
pub const MAX_INDEX_WORDS: usize = 1 << 28;

struct CellEntries {
    k: usize,
    keys: Vec<NodeId>,
    nbrs: Vec<NodeId>,
    dists: Vec<u32>,
    owner: Vec<u32>,
}

/// Every (point, ancestor tuple) pair, sorted by tuple.
fn enumerate_cells(
    cidx: &[CentroidIndex],
    s: &[Vec<NodeId>],
) -> Result<(CellEntries, Vec<(usize, usize)>), OdotError> {
    let k = cidx.len();
    let mut total: usize = 0;
    for p in s {
        let mut c: usize = 1;
        for (i, &x) in p.iter().enumerate() {
            c = c.saturating_mul(cidx[i].path(x).len());
        }
        total = total.saturating_add(c);
    }
    // The min index stores 2k - 1 coordinates per entry and tuple position.
    let words = total.saturating_mul(k).saturating_mul(2 * k + 2);
    if total >= u32::MAX as usize || words > MAX_INDEX_WORDS {
        return Err(OdotError::TooLarge { cells: total });
    }
    let mut raw = CellEntries {
        k,
        keys: Vec::with_capacity(total * k),
        nbrs: Vec::with_capacity(total * k),
        dists: Vec::with_capacity(total * k),
        owner: Vec::with_capacity(total),
    };
    let mut pos = vec![0usize; k];
    for (si, p) in s.iter().enumerate() {
        let paths: Vec<&[CentroidAncestor]> = (0..k).map(|i| cidx[i].path(p[i])).collect();
        pos.iter_mut().for_each(|x| *x = 0);
        loop {
            for i in 0..k {
                let j = pos[i];
                let anc = paths[i][j];
                raw.keys.push(anc.centroid);
                // c_i = s_i stores s_i itself as the neighbour.
                raw.nbrs.push(if j == 0 { p[i] } else { paths[i][j - 1].centroid });
                raw.dists.push(anc.dist);
            }
            raw.owner.push(si as u32);
            let mut i = 0;
            while i < k {
                pos[i] += 1;
                if pos[i] < paths[i].len() {
                    break;
                }
                pos[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    let n = raw.owner.len();
    let max_id = raw.keys.iter().copied().max().unwrap_or(0) as u64;
    let bits = 64 - max_id.leading_zeros() as usize;
    let order: Vec<u32> = if bits * k <= 64 {
        // Pack the tuple into one integer; same order as the lexicographic one.
        let mut packed: Vec<(u64, u32)> = (0..n)
            .map(|e| {
                let key = raw.keys[e * k..(e + 1) * k]
                    .iter()
                    .fold(0u64, |acc, &c| if bits == 0 { 0 } else { (acc << bits) | c as u64 });
                (key, e as u32)
            })
            .collect();
        packed.sort_unstable();
        packed.into_iter().map(|(_, e)| e).collect()
    } else {
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            raw.keys[a * k..(a + 1) * k].cmp(&raw.keys[b * k..(b + 1) * k])
        });
        order
    };
    let mut sorted = CellEntries {
        k,
        keys: Vec::with_capacity(n * k),
        nbrs: Vec::with_capacity(n * k),
        dists: Vec::with_capacity(n * k),
        owner: Vec::with_capacity(n),
    };
    for &e in &order {
        let e = e as usize;
        sorted.keys.extend_from_slice(&raw.keys[e * k..(e + 1) * k]);
        sorted.nbrs.extend_from_slice(&raw.nbrs[e * k..(e + 1) * k]);
        sorted.dists.extend_from_slice(&raw.dists[e * k..(e + 1) * k]);
        sorted.owner.push(raw.owner[e]);
    }
    // groups of equal keys
    let mut groups = Vec::new();
    let mut a = 0;
    while a < n {
        let mut b = a + 1;
        while b < n && sorted.keys[b * k..(b + 1) * k] == sorted.keys[a * k..(a + 1) * k] {
            b += 1;
        }
        groups.push((a, b));
        a = b;
    }
    Ok((sorted, groups))
}

fn distinct_keys(entries: &CellEntries, groups: &[(usize, usize)]) -> Vec<NodeId> {
    let k = entries.k;
    let mut keys = Vec::with_capacity(groups.len() * k);
    for &(a, _) in groups {
        keys.extend_from_slice(&entries.keys[a * k..(a + 1) * k]);
    }
    keys
}

/// Cells with at most this many points are scanned rather than indexed.
pub const CELL_SCAN: usize = 64;

/// Points of all cells, stored contiguously. Cells above [`CELL_SCAN`] points
/// also get a range tree.
struct CellStore {
    dim: usize,
    coords: Vec<i64>,
    values: Vec<i64>,
    owner: Vec<u32>,
    start: Vec<u32>,
    trees: Vec<Option<Box<RangeTree<i64, u32>>>>,
}

impl CellStore {
    fn new(dim: usize) -> Self {
        CellStore {
            dim,
            coords: Vec::new(),
            values: Vec::new(),
            owner: Vec::new(),
            start: vec![0],
            trees: Vec::new(),
        }
    }

    #[inline]
    fn push_point(&mut self, coords: impl IntoIterator<Item = i64>, value: i64, owner: u32) {
        self.coords.extend(coords);
        self.values.push(value);
        self.owner.push(owner);
    }

    fn close_cell(&mut self) {
        let a = *self.start.last().unwrap() as usize;
        let b = self.values.len();
        self.start.push(b as u32);
        let tree = (b - a > CELL_SCAN).then(|| {
            Box::new(RangeTree::from_parts(
                self.dim,
                self.coords[a * self.dim..b * self.dim].to_vec(),
                self.values[a..b].to_vec(),
                self.owner[a..b].to_vec(),
            ))
        });
        self.trees.push(tree);
    }

    fn range(&self, cell: usize) -> core::ops::Range<usize> {
        self.start[cell] as usize..self.start[cell + 1] as usize
    }

    fn admits(&self, e: usize, cons: &[CoordConstraint]) -> bool {
        let c = &self.coords[e * self.dim..(e + 1) * self.dim];
        c.iter().zip(cons).all(|(&x, k)| k.admits(x))
    }

    fn best(&self, cell: usize, cons: &[CoordConstraint]) -> Option<(i64, u32)> {
        if let Some(t) = &self.trees[cell] {
            return t.query_constrained(cons).expect("valid constraints");
        }
        let mut best: Option<(i64, u32)> = None;
        for e in self.range(cell) {
            if best.map_or(true, |(b, _)| self.values[e] > b) && self.admits(e, cons) {
                best = Some((self.values[e], self.owner[e]));
            }
        }
        best
    }
}

fn neighbour_constraint(path: &[CentroidAncestor], j: usize) -> CoordConstraint {
    if j == 0 {
        CoordConstraint::Any
    } else {
        CoordConstraint::NotEq(path[j - 1].centroid as i64)
    }
}

/// Index for `e_+(v, S) = max_s sum_i d_i(v_i, s_i)`.
pub struct PlusIndex {
    sys: TreeSystem,
    cidx: Vec<CentroidIndex>,
    trie: CellTrie,
    cells: CellStore,
    set_size: usize,
    point_count: usize,
}

impl PlusIndex {
    pub fn build(sys: &TreeSystem, s: &[Vec<NodeId>]) -> Result<Self, OdotError> {
        sys.check_set(s)?;
        let k = sys.k();
        let cidx: Vec<CentroidIndex> = sys.trees().iter().map(CentroidIndex::build).collect();
        let (entries, groups) = enumerate_cells(&cidx, s)?;
        let trie = CellTrie::build(&distinct_keys(&entries, &groups), k);
        let mut cells = CellStore::new(k);
        for &(a, b) in &groups {
            for e in a..b {
                cells.push_point(
                    entries.nbrs[e * k..(e + 1) * k].iter().map(|&x| x as i64),
                    entries.dists[e * k..(e + 1) * k].iter().map(|&d| d as i64).sum(),
                    entries.owner[e],
                );
            }
            cells.close_cell();
        }
        Ok(PlusIndex {
            sys: sys.clone(),
            cidx,
            trie,
            cells,
            set_size: s.len(),
            point_count: entries.owner.len(),
        })
    }

    /// Number of stored `(point, ancestor tuple)` entries.
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    /// `(value, index into S)`, or `None` when `S` is empty.
    pub fn query(&self, v: &[NodeId]) -> Result<Option<(i64, usize)>, OdotError> {
        self.sys.check_point(v, None)?;
        let k = self.sys.k();
        let lists: Vec<&[CentroidAncestor]> = (0..k).map(|i| self.cidx[i].path(v[i])).collect();
        let mut cons = vec![CoordConstraint::Any; k];
        let mut best: Option<(i64, usize)> = None;
        self.trie.for_each(&lists, |leaf, picks| {
            let mut base = 0i64;
            for i in 0..k {
                cons[i] = neighbour_constraint(lists[i], picks[i]);
                base += lists[i][picks[i]].dist as i64;
            }
            if let Some((f, s)) = self.cells.best(leaf, &cons) {
                let val = f + base;
                if best.map_or(true, |(b, _)| val > b) {
                    best = Some((val, s as usize));
                }
            }
        });
        Ok(best)
    }

    /// Sizes of the nonempty cells `S_c` met by a query at `v`, found by
    /// filtering each cell with the query constraints. They sum to `|S|`.
    pub fn cell_sizes(&self, v: &[NodeId]) -> Result<Vec<usize>, OdotError> {
        self.sys.check_point(v, None)?;
        let k = self.sys.k();
        let lists: Vec<&[CentroidAncestor]> = (0..k).map(|i| self.cidx[i].path(v[i])).collect();
        let mut out = Vec::new();
        self.trie.for_each(&lists, |leaf, picks| {
            let cons: Vec<CoordConstraint> =
                (0..k).map(|i| neighbour_constraint(lists[i], picks[i])).collect();
            let count = self.cells.range(leaf).filter(|&e| self.cells.admits(e, &cons)).count();
            if count > 0 {
                out.push(count);
            }
        });
        Ok(out)
    }
}

/// Index for `e_min(v, S) = max_s min_i d_i(v_i, s_i)`.
///
/// A cell keyed by `c` holds, for every `i`, a range tree over the points
/// `(neighbours..., d_i(s_i, c_i) - d_j(s_j, c_j) for j != i)` with value
/// `d_i(s_i, c_i)`. The query asks, per `i`, for the points where tree `i`
/// attains the inner minimum: `d_i(s_i,c_i) - d_j(s_j,c_j) <= d_j(v_j,c_j) -
/// d_i(v_i,c_i)` for every `j != i`. Those sets cover the cell.
pub struct MinIndex {
    sys: TreeSystem,
    cidx: Vec<CentroidIndex>,
    trie: CellTrie,
    // cell leaf * k + i
    cells: CellStore,
    set_size: usize,
}

impl MinIndex {
    pub fn build(sys: &TreeSystem, s: &[Vec<NodeId>]) -> Result<Self, OdotError> {
        sys.check_set(s)?;
        let k = sys.k();
        let dim = 2 * k - 1;
        let cidx: Vec<CentroidIndex> = sys.trees().iter().map(CentroidIndex::build).collect();
        let (entries, groups) = enumerate_cells(&cidx, s)?;
        let trie = CellTrie::build(&distinct_keys(&entries, &groups), k);
        let mut cells = CellStore::new(dim);
        for &(a, b) in &groups {
            for i in 0..k {
                for e in a..b {
                    let d = &entries.dists[e * k..(e + 1) * k];
                    let nbrs = entries.nbrs[e * k..(e + 1) * k].iter().map(|&x| x as i64);
                    let deltas = (0..k).filter(|&j| j != i).map(|j| d[i] as i64 - d[j] as i64);
                    cells.push_point(nbrs.chain(deltas), d[i] as i64, entries.owner[e]);
                }
                cells.close_cell();
            }
        }
        Ok(MinIndex {
            sys: sys.clone(),
            cidx,
            trie,
            cells,
            set_size: s.len(),
        })
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn query(&self, v: &[NodeId]) -> Result<Option<(i64, usize)>, OdotError> {
        self.sys.check_point(v, None)?;
        let k = self.sys.k();
        let lists: Vec<&[CentroidAncestor]> = (0..k).map(|i| self.cidx[i].path(v[i])).collect();
        let mut cons = vec![CoordConstraint::Any; 2 * k - 1];
        let mut dv = vec![0i64; k];
        let mut best: Option<(i64, usize)> = None;
        self.trie.for_each(&lists, |leaf, picks| {
            for i in 0..k {
                cons[i] = neighbour_constraint(lists[i], picks[i]);
                dv[i] = lists[i][picks[i]].dist as i64;
            }
            for i in 0..k {
                let mut slot = k;
                for j in (0..k).filter(|&j| j != i) {
                    cons[slot] = CoordConstraint::AtMost(dv[j] - dv[i]);
                    slot += 1;
                }
                if let Some((f, s)) = self.cells.best(leaf * k + i, &cons) {
                    let val = f + dv[i];
                    if best.map_or(true, |(b, _)| val > b) {
                        best = Some((val, s as usize));
                    }
                }
            }
        });
        Ok(best)
    }
}

/// Per-tree data of the max index.
#[derive(Debug, Clone)]
struct PrunedTree {
    kept: Vec<bool>,
    attach: Vec<NodeId>,
    attach_dist: Vec<u32>,
    // max over projected nodes of d(v, .), for every v
    answer: Vec<u32>,
}

/// Index for `e_max(v, S) = max_s max_i d_i(v_i, s_i)`, answering in `O(k)`.
#[derive(Debug, Clone)]
pub struct MaxIndex {
    sys: TreeSystem,
    per_tree: Vec<PrunedTree>,
}

impl MaxIndex {
    pub fn build(sys: &TreeSystem, s: &[Vec<NodeId>]) -> Result<Self, OdotError> {
        sys.check_set(s)?;
        if s.is_empty() {
            return Err(OdotError::EmptyPointSet);
        }
        let per_tree = (0..sys.k())
            .map(|i| {
                let marks: Vec<NodeId> = s.iter().map(|p| p[i]).collect();
                prune(sys.tree(i), &marks)
            })
            .collect();
        Ok(MaxIndex { sys: sys.clone(), per_tree })
    }

    pub fn query(&self, v: &[NodeId]) -> Result<i64, OdotError> {
        self.sys.check_point(v, None)?;
        Ok(v.iter()
            .zip(&self.per_tree)
            .map(|(&x, t)| t.answer[x as usize] as i64)
            .max()
            .unwrap_or(0))
    }

    /// Whether node `v` of tree `i` survives pruning.
    pub fn kept(&self, i: usize, v: NodeId) -> bool {
        self.per_tree[i].kept[v as usize]
    }

    /// Nearest kept node of `v` in tree `i` and the distance to it.
    pub fn attachment(&self, i: usize, v: NodeId) -> (NodeId, u32) {
        let t = &self.per_tree[i];
        (t.attach[v as usize], t.attach_dist[v as usize])
    }
}

fn prune(t: &Tree, marks: &[NodeId]) -> PrunedTree {
    let n = t.node_count();
    let mut marked = vec![false; n];
    for &m in marks {
        marked[m as usize] = true;
    }
    let mut kept = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| t.neighbors(v as NodeId).len()).collect();
    let mut queue: VecDeque<NodeId> = (0..n as NodeId)
        .filter(|&v| degree[v as usize] <= 1 && !marked[v as usize])
        .collect();
    while let Some(v) = queue.pop_front() {
        if !kept[v as usize] {
            continue;
        }
        kept[v as usize] = false;
        for &w in t.neighbors(v) {
            if kept[w as usize] {
                degree[w as usize] -= 1;
                if degree[w as usize] <= 1 && !marked[w as usize] {
                    queue.push_back(w);
                }
            }
        }
    }

    // Nearest kept node for the removed ones.
    let mut attach = vec![NodeId::MAX; n];
    let mut attach_dist = vec![0u32; n];
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    for v in 0..n as NodeId {
        if kept[v as usize] {
            attach[v as usize] = v;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if attach[w as usize] == NodeId::MAX {
                attach[w as usize] = attach[v as usize];
                attach_dist[w as usize] = attach_dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }

    // Eccentricities inside the kept subtree from two diametral endpoints.
    let start = marks[0];
    let d0 = kept_bfs(t, &kept, start);
    let a = farthest(&d0);
    let da = kept_bfs(t, &kept, a);
    let b = farthest(&da);
    let db = kept_bfs(t, &kept, b);
    let answer = (0..n)
        .map(|v| {
            let x = attach[v] as usize;
            attach_dist[v] + da[x].max(db[x])
        })
        .collect();
    PrunedTree { kept, attach, attach_dist, answer }
}

fn kept_bfs(t: &Tree, kept: &[bool], root: NodeId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; t.node_count()];
    let mut queue = VecDeque::new();
    dist[root as usize] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        for &w in t.neighbors(u) {
            if kept[w as usize] && dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[u as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn farthest(dist: &[u32]) -> NodeId {
    let mut best = dist.iter().position(|&d| d == 0).expect("root present");
    for (v, &d) in dist.iter().enumerate() {
        if d != u32::MAX && d > dist[best] {
            best = v;
        }
    }
    best as NodeId
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(trees: Vec<Tree>) -> TreeSystem {
        TreeSystem::new(trees).unwrap()
    }

    #[test]
    fn plus_single_path() {
        let s = sys(vec![Tree::path(3)]);
        let idx = PlusIndex::build(&s, &[vec![0], vec![2]]).unwrap();
        assert_eq!(idx.query(&[1]).unwrap().unwrap().0, 1);
    }

    #[test]
    fn plus_two_paths() {
        let s = sys(vec![Tree::path(3), Tree::path(3)]);
        let idx = PlusIndex::build(&s, &[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(idx.query(&[0, 0]).unwrap(), Some((4, 1)));
        let mut sizes = idx.cell_sizes(&[1, 0]).unwrap();
        sizes.sort();
        assert_eq!(sizes.iter().sum::<usize>(), 2);
    }

    #[test]
    fn min_diagonal() {
        let s = sys(vec![Tree::path(5), Tree::path(5)]);
        let pts: Vec<Vec<NodeId>> = (0..5).map(|i| vec![i, i]).collect();
        let idx = MinIndex::build(&s, &pts).unwrap();
        assert_eq!(idx.query(&[0, 4]).unwrap(), Some((2, 2)));
    }

    #[test]
    fn max_star() {
        let s = sys(vec![Tree::star(6)]);
        let idx = MaxIndex::build(&s, &[vec![1]]).unwrap();
        assert_eq!(idx.query(&[3]).unwrap(), 2);
        assert!(idx.kept(0, 1));
        assert!(!idx.kept(0, 0));
        assert_eq!(idx.attachment(0, 3), (1, 2));
    }

    #[test]
    fn max_path() {
        let s = sys(vec![Tree::path(5)]);
        let idx = MaxIndex::build(&s, &[vec![0], vec![4]]).unwrap();
        assert_eq!(idx.query(&[2]).unwrap(), 2);
    }

    #[test]
    fn errors() {
        let s = sys(vec![Tree::path(3)]);
        assert!(matches!(
            PlusIndex::build(&s, &[vec![3]]),
            Err(OdotError::NodeOutOfRange { point: Some(0), .. })
        ));
        assert!(matches!(MaxIndex::build(&s, &[]), Err(OdotError::EmptyPointSet)));
        let idx = PlusIndex::build(&s, &[]).unwrap();
        assert_eq!(idx.query(&[0]).unwrap(), None);
        assert!(matches!(idx.query(&[0, 1]), Err(OdotError::Arity { .. })));
        assert!(TreeSystem::new(Vec::new()).is_err());
    }
}
