//! Heavy-path decomposition of a rooted tree with node weights.
//!
//! Besides the decomposition itself the index keeps, per node `v`, the weighted
//! heights `h(v) = max over x in subtree(v) of d(v, x) + alpha(x)` and
//! `h_r(v)`, the same maximum restricted to `v` and its light subtrees. Along
//! every heavy path the sequences `h_r(v_j) - j` and `h_r(v_j) + j` are
//! stored in range-argmax structures.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rmq::CartesianRmq;
use crate::tree::{NodeId, Tree};
use crate::Weight;

/// Heavy path identifier. Path 0 contains the root.
pub type PathId = u32;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeavyPathError {
    RootOutOfRange { root: NodeId, node_count: usize },
    AlphaLength { expected: usize, got: usize },
    NanWeight { node: NodeId },
    PathOutOfRange { path: PathId },
    OffsetOutOfRange { path: PathId, offset: usize, len: usize },
}

impl fmt::Display for HeavyPathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeavyPathError::RootOutOfRange { root, node_count } => {
                write!(f, "root {root} out of range for {node_count} nodes")
            }
            HeavyPathError::AlphaLength { expected, got } => {
                write!(f, "expected {expected} node weights, got {got}")
            }
            HeavyPathError::NanWeight { node } => write!(f, "weight of node {node} is NaN"),
            HeavyPathError::PathOutOfRange { path } => write!(f, "no heavy path {path}"),
            HeavyPathError::OffsetOutOfRange { path, offset, len } => {
                write!(f, "offset {offset} out of range for path {path} of length {len}")
            }
        }
    }
}

impl core::error::Error for HeavyPathError {}

#[derive(Debug, Clone, Copy)]
struct PathRec {
    // First position of the path in position order.
    start: u32,
    len: u32,
    depth: u32,
    // h of the head.
    height: Weight,
}

/// What a query reads at a position; one more entry closes the last light
/// range.
#[derive(Debug, Clone, Copy)]
struct Spot {
    alpha: Weight,
    // Tallest light child path and its height.
    top_h: Weight,
    top: PathId,
    // Light child paths are light_paths[light..next.light].
    light: u32,
}

/// Build-time record of a node, by BFS index.
#[derive(Debug, Clone, Copy)]
struct BNode {
    parent: u32,
    heavy: u32,
    size: u32,
    path: PathId,
    off: u32,
    alpha: Weight,
    h: Weight,
    hr: Weight,
}

/// Nodes are stored in two orders: BFS order for the rooted-tree fields, and
/// position order (paths one after another, head first) for the weights.
#[derive(Debug, Clone)]
pub struct HeavyPathIndex {
    root: NodeId,
    // BFS index <-> node
    order: Vec<NodeId>,
    bfs: Vec<u32>,
    // By BFS index: parent, heavy child and subtree size.
    nodes: Vec<(u32, u32, u32)>,
    // By node: path and offset, kept together for climbing.
    loc: Vec<(PathId, u32)>,
    paths: Vec<PathRec>,
    // Per path: parent path and offset of the attachment node on it. Kept
    // apart from `paths` so the climbing working set stays small.
    ups: Vec<(PathId, u32)>,
    // By position.
    path_nodes: Vec<NodeId>,
    spots: Vec<Spot>,
    h: Vec<Weight>,
    hr: Vec<Weight>,
    light_paths: Vec<PathId>,
    // Concatenated per-path sequences h_r(v_j) - j and h_r(v_j) + j.
    minus: CartesianRmq<Weight>,
    plus: CartesianRmq<Weight>,
}

impl HeavyPathIndex {
    /// Decomposes `t` rooted at `root`. Ties between equally heavy children go
    /// to the lowest node id.
    pub fn build(t: &Tree, root: NodeId, alpha: &[Weight]) -> Result<Self, HeavyPathError> {
        Self::build_with_ties(t, root, alpha, &[])
    }

    /// Like [`build`](Self::build), but a child listed in `preferred` wins a
    /// size tie against children that are not listed.
    pub fn build_with_ties(
        t: &Tree,
        root: NodeId,
        alpha: &[Weight],
        preferred: &[NodeId],
    ) -> Result<Self, HeavyPathError> {
        let n = t.node_count();
        if root as usize >= n {
            return Err(HeavyPathError::RootOutOfRange { root, node_count: n });
        }
        if alpha.len() != n {
            return Err(HeavyPathError::AlphaLength { expected: n, got: alpha.len() });
        }
        if let Some(v) = alpha.iter().position(|a| a.is_nan()) {
            return Err(HeavyPathError::NanWeight { node: v as NodeId });
        }
        let mut is_preferred = vec![false; if preferred.is_empty() { 0 } else { n }];
        for &v in preferred {
            if (v as usize) < n {
                is_preferred[v as usize] = true;
            }
        }
        let pref = |v: NodeId| !is_preferred.is_empty() && is_preferred[v as usize];

        // BFS order puts the children of each node next to each other. The
        // per-node fields live in one record so a random visit is one miss.
        let mut bfs = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        bfs[root as usize] = 0;
        order.push(root);
        parent.push(0);
        // Children of i are kid_start[i]..kid_start[i + 1].
        let mut kid_start = Vec::with_capacity(n + 1);
        let mut nodes: Vec<BNode> = Vec::with_capacity(n);
        while nodes.len() < order.len() {
            let i = nodes.len();
            let u = order[i];
            kid_start.push(order.len() as u32);
            for &v in t.neighbors(u) {
                if bfs[v as usize] == NONE {
                    bfs[v as usize] = order.len() as u32;
                    order.push(v);
                    parent.push(i as u32);
                }
            }
            let a = alpha[u as usize];
            nodes.push(BNode {
                parent: parent[i],
                heavy: NONE,
                size: 1,
                path: NONE,
                off: 0,
                alpha: a,
                h: a,
                hr: a,
            });
        }
        drop(parent);
        kid_start.push(n as u32);
        let kids_of = |i: usize| kid_start[i]..kid_start[i + 1];

        for i in (1..n).rev() {
            let p = nodes[i].parent as usize;
            nodes[p].size += nodes[i].size;
        }
        for i in 0..n {
            let mut best = NONE;
            for c in kids_of(i) {
                let better = best == NONE || {
                    let (sc, sb) = (nodes[c as usize].size, nodes[best as usize].size);
                    let (vc, vb) = (order[c as usize], order[best as usize]);
                    sc > sb
                        || (sc == sb
                            && (pref(vc), core::cmp::Reverse(vc)) > (pref(vb), core::cmp::Reverse(vb)))
                };
                if better {
                    best = c;
                }
            }
            nodes[i].heavy = best;
        }
        for i in (1..n).rev() {
            let p = nodes[i].parent as usize;
            let up = nodes[i].h + 1.0;
            let q = &mut nodes[p];
            if up > q.h {
                q.h = up;
            }
            if q.heavy != i as u32 && up > q.hr {
                q.hr = up;
            }
        }

        // Number paths by a preorder walk visiting children in increasing id.
        let mut paths: Vec<PathRec> = Vec::new();
        let mut ups: Vec<(PathId, u32)> = Vec::new();
        let mut at = Vec::with_capacity(n);
        let mut stack = vec![0u32];
        let mut kids: Vec<u32> = Vec::new();
        while let Some(i) = stack.pop() {
            let x = nodes[i as usize];
            if i == 0 || nodes[x.parent as usize].heavy != i {
                let id = paths.len() as PathId;
                let (up, up_off, depth) = if i == 0 {
                    (NONE, 0, 0)
                } else {
                    let q = &nodes[x.parent as usize];
                    (q.path, q.off, paths[q.path as usize].depth + 1)
                };
                let start = at.len() as u32;
                let mut y = i;
                let mut j = 0;
                loop {
                    let node = &mut nodes[y as usize];
                    node.path = id;
                    node.off = j;
                    at.push(y);
                    j += 1;
                    if node.heavy == NONE {
                        break;
                    }
                    y = node.heavy;
                }
                paths.push(PathRec { start, len: j, depth, height: x.h });
                ups.push((up, up_off));
            }
            kids.clear();
            kids.extend(kids_of(i as usize));
            kids.sort_unstable_by_key(|&c| core::cmp::Reverse(order[c as usize]));
            stack.extend_from_slice(&kids);
        }

        // Position-ordered fields in one pass over the positions.
        let mut path_nodes = Vec::with_capacity(n);
        let mut spots = Vec::with_capacity(n + 1);
        let mut h = Vec::with_capacity(n);
        let mut hr = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        let mut plus = Vec::with_capacity(n);
        let mut light_paths = Vec::new();
        let mut group: Vec<(Weight, PathId)> = Vec::new();
        for &i in &at {
            let x = nodes[i as usize];
            path_nodes.push(order[i as usize]);
            h.push(x.h);
            hr.push(x.hr);
            minus.push((x.hr - x.off as Weight, 0));
            plus.push((x.hr + x.off as Weight, 0));
            group.clear();
            for c in kids_of(i as usize) {
                if x.heavy != c {
                    let y = &nodes[c as usize];
                    group.push((y.h, y.path));
                }
            }
            group.sort_unstable_by(|a, b| {
                b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal).then(a.1.cmp(&b.1))
            });
            let (top_h, top) = group.first().copied().unwrap_or((Weight::NEG_INFINITY, NONE));
            spots.push(Spot { alpha: x.alpha, top_h, top, light: light_paths.len() as u32 });
            light_paths.extend(group.iter().map(|g| g.1));
        }
        spots.push(Spot { alpha: 0.0, top_h: 0.0, top: NONE, light: light_paths.len() as u32 });
        let mut loc = vec![(NONE, 0u32); n];
        for (x, &v) in nodes.iter().zip(&order) {
            loc[v as usize] = (x.path, x.off);
        }

        Ok(HeavyPathIndex {
            root,
            order,
            bfs,
            nodes: nodes.iter().map(|x| (x.parent, x.heavy, x.size)).collect(),
            loc,
            paths,
            ups,
            path_nodes,
            spots,
            h,
            hr,
            light_paths,
            minus: CartesianRmq::from_cells(minus),
            plus: CartesianRmq::from_cells(plus),
        })
    }

    pub fn node_count(&self) -> usize {
        self.order.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Parent in the rooted tree, `None` at the root.
    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        (v != self.root).then(|| self.order[self.nodes[self.bfs[v as usize] as usize].0 as usize])
    }

    #[inline]
    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        let c = self.nodes[self.bfs[v as usize] as usize].1;
        (c != NONE).then(|| self.order[c as usize])
    }

    #[inline]
    pub fn subtree_size(&self, v: NodeId) -> u32 {
        self.nodes[self.bfs[v as usize] as usize].2
    }

    #[inline]
    pub fn path_of(&self, v: NodeId) -> PathId {
        self.loc[v as usize].0
    }

    /// Distance from `v` to the head of its heavy path.
    #[inline]
    pub fn offset(&self, v: NodeId) -> u32 {
        self.loc[v as usize].1
    }

    /// `(path_of(v), offset(v))`.
    #[inline]
    pub fn locate(&self, v: NodeId) -> (PathId, u32) {
        self.loc[v as usize]
    }

    /// Location of the attachment node of `p` (`None` for the top path).
    #[inline]
    pub fn attach_loc(&self, p: PathId) -> Option<(PathId, u32)> {
        let up = self.ups[p as usize];
        (up.0 != NONE).then_some(up)
    }

    #[inline]
    fn pos(&self, v: NodeId) -> usize {
        let (p, j) = self.loc[v as usize];
        (self.paths[p as usize].start + j) as usize
    }

    /// Position of offset 0 of `p`. Nodes of a path occupy consecutive
    /// positions, and the `_at` accessors take positions.
    #[inline]
    pub fn path_start(&self, p: PathId) -> usize {
        self.paths[p as usize].start as usize
    }

    /// Nodes of path `p`, head first.
    #[inline]
    pub fn path_nodes(&self, p: PathId) -> &[NodeId] {
        let r = &self.paths[p as usize];
        &self.path_nodes[r.start as usize..(r.start + r.len) as usize]
    }

    #[inline]
    pub fn path_len(&self, p: PathId) -> usize {
        self.paths[p as usize].len as usize
    }

    #[inline]
    pub fn path_head(&self, p: PathId) -> NodeId {
        self.path_nodes[self.paths[p as usize].start as usize]
    }

    #[inline]
    pub fn path_node(&self, p: PathId, j: usize) -> NodeId {
        self.path_nodes[self.paths[p as usize].start as usize + j]
    }

    /// Parent of the head of `p` in the rooted tree (`None` for the top path).
    #[inline]
    pub fn path_attach(&self, p: PathId) -> Option<NodeId> {
        self.attach_loc(p).map(|(q, j)| self.path_node(q, j as usize))
    }

    /// Parent of `p` in the heavy-path tree.
    #[inline]
    pub fn hp_parent(&self, p: PathId) -> Option<PathId> {
        self.attach_loc(p).map(|x| x.0)
    }

    #[inline]
    pub fn hp_depth(&self, p: PathId) -> u32 {
        self.paths[p as usize].depth
    }

    /// Number of levels of the heavy-path tree.
    pub fn hp_height(&self) -> usize {
        self.paths.iter().map(|r| r.depth as usize + 1).max().unwrap_or(0)
    }

    #[inline]
    pub fn alpha(&self, v: NodeId) -> Weight {
        self.spots[self.pos(v)].alpha
    }

    #[inline]
    pub fn alpha_at(&self, pos: usize) -> Weight {
        self.spots[pos].alpha
    }

    #[inline]
    pub fn height(&self, v: NodeId) -> Weight {
        self.h[self.pos(v)]
    }

    #[inline]
    pub fn light_height(&self, v: NodeId) -> Weight {
        self.hr[self.pos(v)]
    }

    /// `h` of the head of path `p`.
    #[inline]
    pub fn path_height(&self, p: PathId) -> Weight {
        self.paths[p as usize].height
    }

    /// Paths whose head is a light child of `v`, by nonincreasing height
    /// (ties by path id).
    #[inline]
    pub fn light_paths(&self, v: NodeId) -> &[PathId] {
        self.light_paths_at(self.pos(v))
    }

    /// First entry of `light_paths_at(pos)` with its height.
    #[inline]
    pub fn top_light_at(&self, pos: usize) -> Option<(PathId, Weight)> {
        let s = &self.spots[pos];
        (s.top != NONE).then_some((s.top, s.top_h))
    }

    #[inline]
    pub fn light_paths_at(&self, pos: usize) -> &[PathId] {
        let (a, b) = (self.spots[pos].light, self.spots[pos + 1].light);
        &self.light_paths[a as usize..b as usize]
    }

    fn check_range(&self, p: PathId, lo: usize, hi: usize) -> Result<(), HeavyPathError> {
        if p as usize >= self.path_count() {
            return Err(HeavyPathError::PathOutOfRange { path: p });
        }
        let len = self.path_len(p);
        if lo <= hi && hi >= len {
            return Err(HeavyPathError::OffsetOutOfRange { path: p, offset: hi, len });
        }
        Ok(())
    }

    /// Offset `j` in `lo..=hi` maximizing `h_r(v_j) - j` on path `p`, with that value.
    pub fn range_argmax_minus(
        &self,
        p: PathId,
        lo: usize,
        hi: usize,
    ) -> Result<Option<(usize, Weight)>, HeavyPathError> {
        self.check_range(p, lo, hi)?;
        Ok(self.argmax_minus_unchecked(p, lo, hi))
    }

    /// Offset `j` in `lo..=hi` maximizing `h_r(v_j) + j` on path `p`, with that value.
    pub fn range_argmax_plus(
        &self,
        p: PathId,
        lo: usize,
        hi: usize,
    ) -> Result<Option<(usize, Weight)>, HeavyPathError> {
        self.check_range(p, lo, hi)?;
        Ok(self.argmax_plus_unchecked(p, lo, hi))
    }

    #[inline]
    pub(crate) fn argmax_minus_unchecked(
        &self,
        p: PathId,
        lo: usize,
        hi: usize,
    ) -> Option<(usize, Weight)> {
        let base = self.path_start(p);
        self.minus.max(base + lo, base + hi).map(|(i, w)| (i - base, w))
    }

    #[inline]
    pub(crate) fn argmax_plus_unchecked(
        &self,
        p: PathId,
        lo: usize,
        hi: usize,
    ) -> Option<(usize, Weight)> {
        let base = self.path_start(p);
        self.plus.max(base + lo, base + hi).map(|(i, w)| (i - base, w))
    }
}
