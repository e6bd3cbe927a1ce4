//! Weighted subset eccentricity on a tree:
//! `e(U, beta) = max_v min_{u in U} (alpha(v) + d(v, u) + beta(u))`.
//!
//! The query walks the heavy-path tree top-down. A frame owns a heavy path
//! `P` and the part of `U` below its head (plus the head itself, weighted by
//! the best way out of the subtree). Nodes whose closest node on `P` is a
//! projection of `U`, or lies between two projections, are settled in the
//! frame with a few range-argmax queries; subtrees hanging off `P` that
//! contain `U` nodes become child frames.
//!
//! Internally the frame works with `G(p) = min_u (d(p, u) + beta(u))` rather
//! than `D(p) = alpha(p) + G(p)`, so that `-inf` weights never meet in a
//! subtraction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::heavy_path::{HeavyPathError, HeavyPathIndex, PathId};
use crate::tree::{NodeId, Tree};
use crate::Weight;

const NONE: PathId = PathId::MAX;
const INF: Weight = Weight::INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub enum SubsetEccError {
    Index(HeavyPathError),
    EmptySet,
    BetaLength { expected: usize, got: usize },
    NodeOutOfRange { node: NodeId, node_count: usize },
    NonFiniteBeta { node: NodeId },
}

impl fmt::Display for SubsetEccError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetEccError::Index(e) => write!(f, "{e}"),
            SubsetEccError::EmptySet => write!(f, "query set is empty"),
            SubsetEccError::BetaLength { expected, got } => {
                write!(f, "expected {expected} beta values, got {got}")
            }
            SubsetEccError::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range for {node_count} nodes")
            }
            SubsetEccError::NonFiniteBeta { node } => {
                write!(f, "beta of node {node} is not a finite number")
            }
        }
    }
}

impl core::error::Error for SubsetEccError {}

impl From<HeavyPathError> for SubsetEccError {
    fn from(e: HeavyPathError) -> Self {
        SubsetEccError::Index(e)
    }
}

/// Shape of one query's recursion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryTrace {
    /// Number of distinct query nodes.
    pub distinct: usize,
    /// `level_sizes[t]`: sum over frames at heavy-path depth `t` of their
    /// distinct node counts.
    pub level_sizes: Vec<usize>,
    pub frames: usize,
}

impl QueryTrace {
    pub fn depth(&self) -> usize {
        self.level_sizes.len()
    }
}

#[derive(Debug, Clone)]
pub struct SubsetEccIndex {
    hp: HeavyPathIndex,
}

/// One heavy path on the way from the root to a query node.
#[derive(Clone, Copy)]
struct Step {
    path: PathId,
    off: u32,
    dist: u32,
}

/// A weighted node of a frame. `at` indexes the chain entry for the frame's
/// path. The head added for a child frame has `node == at == NONE`, sits at
/// offset 0 and keeps its path in `last`.
#[derive(Clone, Copy)]
struct Item {
    node: NodeId,
    at: u32,
    last: u32,
    beta: Weight,
}

#[derive(Clone, Copy)]
struct Hang {
    off: u32,
    child: PathId,
    dist: u32,
    item: Item,
}

#[derive(Default)]
struct Scratch {
    hangs: Vec<Hang>,
    projs: Vec<Proj>,
}

struct Proj {
    off: u32,
    // hangs[start..end]
    start: usize,
    end: usize,
    g0: Weight,
    eq: Weight,
    left: Weight,
    right: Weight,
    g: Weight,
}

#[inline]
fn min(a: Weight, b: Weight) -> Weight {
    if b < a {
        b
    } else {
        a
    }
}

#[inline]
fn max(a: Weight, b: Weight) -> Weight {
    if b > a {
        b
    } else {
        a
    }
}

/// `min(hi, floor(t))` if that is at least `lo`.
fn floor_within(t: Weight, lo: usize, hi: usize) -> Option<usize> {
    if !(t >= lo as Weight) {
        return None;
    }
    if t >= hi as Weight {
        return Some(hi);
    }
    Some(t as usize)
}

/// `max(lo, ceil(t))` if that is at most `hi`.
fn ceil_within(t: Weight, lo: usize, hi: usize) -> Option<usize> {
    if !(t <= hi as Weight) {
        return None;
    }
    if t <= lo as Weight {
        return Some(lo);
    }
    let c = t as usize;
    Some(if (c as Weight) < t { c + 1 } else { c })
}

impl SubsetEccIndex {
    /// Roots the tree at node 0.
    pub fn preprocess(t: &Tree, alpha: &[Weight]) -> Result<Self, SubsetEccError> {
        Self::preprocess_rooted(t, 0, alpha)
    }

    pub fn preprocess_rooted(t: &Tree, root: NodeId, alpha: &[Weight]) -> Result<Self, SubsetEccError> {
        Ok(SubsetEccIndex {
            hp: HeavyPathIndex::build(t, root, alpha)?,
        })
    }

    pub fn from_heavy_paths(hp: HeavyPathIndex) -> Self {
        SubsetEccIndex { hp }
    }

    pub fn heavy_paths(&self) -> &HeavyPathIndex {
        &self.hp
    }

    pub fn node_count(&self) -> usize {
        self.hp.node_count()
    }

    /// `e(U, beta)`; `beta[j]` is the weight of `u[j]`. Repeated nodes keep
    /// their smallest weight.
    pub fn query(&self, u: &[NodeId], beta: &[Weight]) -> Result<Weight, SubsetEccError> {
        self.run(u, beta, None)
    }

    pub fn query_traced(
        &self,
        u: &[NodeId],
        beta: &[Weight],
    ) -> Result<(Weight, QueryTrace), SubsetEccError> {
        let mut trace = QueryTrace::default();
        let e = self.run(u, beta, Some(&mut trace))?;
        Ok((e, trace))
    }

    fn run(
        &self,
        u: &[NodeId],
        beta: &[Weight],
        mut trace: Option<&mut QueryTrace>,
    ) -> Result<Weight, SubsetEccError> {
        if u.is_empty() {
            return Err(SubsetEccError::EmptySet);
        }
        if beta.len() != u.len() {
            return Err(SubsetEccError::BetaLength { expected: u.len(), got: beta.len() });
        }
        let n = self.hp.node_count();
        for (&x, &b) in u.iter().zip(beta) {
            if x as usize >= n {
                return Err(SubsetEccError::NodeOutOfRange { node: x, node_count: n });
            }
            if !b.is_finite() {
                return Err(SubsetEccError::NonFiniteBeta { node: x });
            }
        }
        let hp = &self.hp;

        // Heavy paths from the top down to each query node: entry t is the
        // node's ancestor on its depth-t path, with the distance to the node.
        let mut chains: Vec<Step> = Vec::new();
        let mut items: Vec<Item> = Vec::with_capacity(u.len());
        for (&x, &b) in u.iter().zip(beta) {
            let first = chains.len();
            let (mut p, mut off) = hp.locate(x);
            let mut dist = 0;
            loop {
                chains.push(Step { path: p, off, dist });
                match hp.attach_loc(p) {
                    Some(up) => {
                        dist += off + 1;
                        (p, off) = up;
                    }
                    None => break,
                }
            }
            chains[first..].reverse();
            items.push(Item { node: x, at: first as u32, last: chains.len() as u32 - 1, beta: b });
        }

        let track = trace.is_some() || cfg!(debug_assertions);
        let mut local = QueryTrace::default();
        if track {
            local.distinct = distinct(hp, &items);
        }

        let top = hp.path_of(hp.root());
        let mut stack: Vec<(PathId, usize, usize)> = vec![(top, 0, items.len())];
        let mut scratch = Scratch::default();
        let mut best = -INF;
        while let Some((p0, a, b)) = stack.pop() {
            if track {
                let level = hp.hp_depth(p0) as usize;
                if local.level_sizes.len() <= level {
                    local.level_sizes.resize(level + 1, 0);
                }
                local.level_sizes[level] += distinct(hp, &items[a..b]);
                local.frames += 1;
            }
            best = max(best, self.frame(p0, a..b, &chains, &mut items, &mut stack, &mut scratch));
        }
        if track {
            debug_assert!(
                local.level_sizes.iter().all(|&s| s <= 2 * local.distinct),
                "level sizes {:?} exceed twice {} query nodes",
                local.level_sizes,
                local.distinct
            );
        }
        if let Some(t) = trace.as_deref_mut() {
            *t = local;
        }
        Ok(best)
    }

    /// Maximum over nodes outside the marked subtrees; pushes child frames,
    /// whose items are appended to `items`.
    fn frame(
        &self,
        p0: PathId,
        range: core::ops::Range<usize>,
        chains: &[Step],
        items: &mut Vec<Item>,
        stack: &mut Vec<(PathId, usize, usize)>,
        scratch: &mut Scratch,
    ) -> Weight {
        let hp = &self.hp;
        let Scratch { hangs, projs } = scratch;
        hangs.clear();
        projs.clear();
        hangs.extend(items[range].iter().map(|&it| {
            if it.at == NONE {
                return Hang { off: 0, child: NONE, dist: 0, item: it };
            }
            let s = chains[it.at as usize];
            debug_assert_eq!(s.path, p0);
            let child = if it.at < it.last { chains[it.at as usize + 1].path } else { NONE };
            Hang { off: s.off, child, dist: s.dist, item: it }
        }));
        hangs.sort_unstable_by_key(|h| (h.off, h.child));

        // Going down: per projection, the best through its own subtrees.
        let mut a = 0;
        while a < hangs.len() {
            let off = hangs[a].off;
            let mut b = a;
            let (mut g0, mut eq) = (INF, INF);
            while b < hangs.len() && hangs[b].off == off {
                let h = hangs[b];
                g0 = min(g0, h.dist as Weight + h.item.beta);
                if h.child == NONE {
                    eq = min(eq, h.item.beta);
                }
                b += 1;
            }
            projs.push(Proj { off, start: a, end: b, g0, eq, left: INF, right: INF, g: INF });
            a = b;
        }
        let s = projs.len();
        // Backward and forward along the path.
        for i in 1..s {
            let step = (projs[i].off - projs[i - 1].off) as Weight;
            projs[i].left = min(projs[i - 1].left, projs[i - 1].g0) + step;
        }
        for i in (0..s.saturating_sub(1)).rev() {
            let step = (projs[i + 1].off - projs[i].off) as Weight;
            projs[i].right = min(projs[i + 1].right, projs[i + 1].g0) + step;
        }
        for p in projs.iter_mut() {
            p.g = min(p.g0, min(p.left, p.right));
        }

        let mut best = -INF;
        let len = hp.path_len(p0);
        let base = hp.path_start(p0);
        for (i, pr) in projs.iter().enumerate() {
            let pos = base + pr.off as usize;
            // The projection itself.
            best = max(best, hp.alpha_at(pos) + pr.g);

            // Tallest light subtree without query nodes.
            let marked = &hangs[pr.start..pr.end];
            let free = |q: PathId| marked.binary_search_by_key(&q, |h| h.child).is_err();
            match hp.top_light_at(pos) {
                Some((q, hq)) if free(q) => best = max(best, hq + 1.0 + pr.g),
                Some(_) => {
                    if let Some(&q) = hp.light_paths_at(pos)[1..].iter().find(|&&q| free(q)) {
                        best = max(best, hp.path_height(q) + 1.0 + pr.g);
                    }
                }
                None => {}
            }

            // Path nodes strictly between this projection and the next.
            if i + 1 < s {
                let nx = &projs[i + 1];
                let (a, b) = (pr.off as usize, nx.off as usize);
                if b > a + 1 {
                    let t = ((a + b) as Weight + nx.g - pr.g) / 2.0;
                    if let Some(hi) = floor_within(t, a + 1, b - 1) {
                        if let Some((_, w)) = hp.argmax_plus_unchecked(p0, a + 1, hi) {
                            best = max(best, w + pr.g - a as Weight);
                        }
                    }
                    if let Some(lo) = ceil_within(t, a + 1, b - 1) {
                        if let Some((_, w)) = hp.argmax_minus_unchecked(p0, lo, b - 1) {
                            best = max(best, w + b as Weight + nx.g);
                        }
                    }
                }
            }
        }
        // Before the first and after the last projection.
        let first = &projs[0];
        if first.off > 0 {
            if let Some((_, w)) = hp.argmax_minus_unchecked(p0, 0, first.off as usize - 1) {
                best = max(best, w + first.off as Weight + first.g);
            }
        }
        let last = &projs[s - 1];
        if (last.off as usize) + 1 < len {
            if let Some((_, w)) = hp.argmax_plus_unchecked(p0, last.off as usize + 1, len - 1) {
                best = max(best, w - last.off as Weight + last.g);
            }
        }

        // Child frames, one per marked child path.
        for pr in projs.iter() {
            let group = &hangs[pr.start..pr.end];
            // (value, path) of the two best child paths
            let (mut d1, mut q1, mut d2) = (INF, NONE, INF);
            let mut c = 0;
            while c < group.len() {
                let q = group[c].child;
                let mut e = c;
                let mut down = INF;
                while e < group.len() && group[e].child == q {
                    down = min(down, group[e].dist as Weight + group[e].item.beta);
                    e += 1;
                }
                if q != NONE {
                    if down < d1 {
                        d2 = d1;
                        d1 = down;
                        q1 = q;
                    } else if down < d2 {
                        d2 = down;
                    }
                }
                c = e;
            }
            let outside = min(pr.eq, min(pr.left, pr.right));
            let mut c = 0;
            while c < group.len() {
                let q = group[c].child;
                let mut e = c;
                while e < group.len() && group[e].child == q {
                    e += 1;
                }
                if q != NONE {
                    let other = if q == q1 { d2 } else { d1 };
                    let dj = 1.0 + min(outside, other);
                    let start = items.len();
                    items.extend(group[c..e].iter().map(|h| Item { at: h.item.at + 1, ..h.item }));
                    items.push(Item { node: NONE, at: NONE, last: q, beta: dj });
                    stack.push((q, start, items.len()));
                }
                c = e;
            }
        }
        best
    }
}

fn distinct(hp: &HeavyPathIndex, items: &[Item]) -> usize {
    let mut ids: Vec<NodeId> = items
        .iter()
        .map(|x| if x.node == NONE { hp.path_head(x.last) } else { x.node })
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_subset_ecc, Budget};

    #[test]
    fn path_single_end() {
        let t = Tree::path(4);
        let idx = SubsetEccIndex::preprocess(&t, &[0.0; 4]).unwrap();
        assert_eq!(idx.query(&[0], &[0.0]).unwrap(), 3.0);
        assert_eq!(idx.query(&[0, 1, 2, 3], &[0.0; 4]).unwrap(), 0.0);
    }

    #[test]
    fn singleton_tree() {
        let idx = SubsetEccIndex::preprocess(&Tree::singleton(), &[1.5]).unwrap();
        assert_eq!(idx.query(&[0], &[2.0]).unwrap(), 3.5);
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_within(2.5, 1, 4), Some(2));
        assert_eq!(floor_within(0.5, 1, 4), None);
        assert_eq!(floor_within(9.0, 1, 4), Some(4));
        assert_eq!(ceil_within(2.5, 1, 4), Some(3));
        assert_eq!(ceil_within(3.0, 1, 4), Some(3));
        assert_eq!(ceil_within(4.5, 1, 4), None);
        assert_eq!(ceil_within(-3.0, 1, 4), Some(1));
    }

    #[test]
    fn rejects_bad_queries() {
        let idx = SubsetEccIndex::preprocess(&Tree::path(3), &[0.0; 3]).unwrap();
        assert_eq!(idx.query(&[], &[]), Err(SubsetEccError::EmptySet));
        assert!(matches!(idx.query(&[0], &[]), Err(SubsetEccError::BetaLength { .. })));
        assert!(matches!(idx.query(&[5], &[0.0]), Err(SubsetEccError::NodeOutOfRange { .. })));
        assert!(matches!(
            idx.query(&[1], &[Weight::NAN]),
            Err(SubsetEccError::NonFiniteBeta { node: 1 })
        ));
    }

    #[test]
    fn small_star_exhaustive() {
        let t = Tree::star(5);
        let alpha = [0.5, -1.0, 2.0, Weight::NEG_INFINITY, 0.0];
        let idx = SubsetEccIndex::preprocess(&t, &alpha).unwrap();
        for mask in 1u32..32 {
            let u: Vec<NodeId> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
            let beta: Vec<Weight> = u.iter().map(|&x| x as Weight * 0.25).collect();
            let want = brute_subset_ecc(&t, &alpha, &u, &beta, Budget::DEFAULT).unwrap();
            assert_eq!(idx.query(&u, &beta).unwrap(), want, "U = {u:?}");
        }
    }
}
