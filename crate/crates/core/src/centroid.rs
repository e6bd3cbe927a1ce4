//! Centroid decomposition with per-node ancestor paths and distances.

use alloc::vec;
use alloc::vec::Vec;

use crate::tree::{NodeId, Tree};

/// One entry of a node's centroid-ancestor path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentroidAncestor {
    pub centroid: NodeId,
    /// Distance in the original tree between the node and `centroid`.
    pub dist: u32,
}

/// Centroid decomposition of a tree.
///
/// `path(v)` lists the centroid ancestors of `v` deepest-first: `path(v)[0]` is
/// `v` itself (every node is the centroid of exactly one component) and the
/// last entry is the root centroid. For a centroid `c = path(v)[j]` with
/// `j > 0`, `path(v)[j - 1]` is the neighbour of `c` toward `v` in the
/// decomposition tree.
#[derive(Debug, Clone)]
pub struct CentroidIndex {
    offsets: Vec<u32>,
    entries: Vec<CentroidAncestor>,
    parent: Vec<NodeId>,
    root: NodeId,
    depth: usize,
}

impl CentroidIndex {
    pub fn build(t: &Tree) -> CentroidIndex {
        let n = t.node_count();
        let mut removed = vec![false; n];
        let mut size = vec![0u32; n];
        let mut bfs_parent = vec![NodeId::MAX; n];
        let mut dist = vec![0u32; n];
        // Root-first lists, reversed at the end.
        let mut lists: Vec<Vec<CentroidAncestor>> = vec![Vec::new(); n];
        let mut cparent = vec![NodeId::MAX; n];
        let mut order: Vec<NodeId> = Vec::with_capacity(n);
        let mut root = 0;

        // (any node of the component, centroid parent)
        let mut stack: Vec<(NodeId, NodeId)> = vec![(0, NodeId::MAX)];
        while let Some((start, up)) = stack.pop() {
            // Collect the component and its subtree sizes.
            order.clear();
            order.push(start);
            bfs_parent[start as usize] = start;
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &v in t.neighbors(u) {
                    if !removed[v as usize] && v != bfs_parent[u as usize] {
                        bfs_parent[v as usize] = u;
                        order.push(v);
                    }
                }
            }
            for &v in order.iter() {
                size[v as usize] = 1;
            }
            for &v in order.iter().rev().take(order.len() - 1) {
                size[bfs_parent[v as usize] as usize] += size[v as usize];
            }
            let total = order.len() as u32;
            // Walk from the start toward the heavy side.
            let mut c = start;
            loop {
                let mut next = None;
                for &v in t.neighbors(c) {
                    if !removed[v as usize]
                        && v != bfs_parent[c as usize]
                        && size[v as usize] > total / 2
                    {
                        next = Some(v);
                        break;
                    }
                }
                match next {
                    Some(v) => c = v,
                    None => break,
                }
            }
            cparent[c as usize] = up;
            if up == NodeId::MAX {
                root = c;
            }
            // Distances from c inside the component.
            order.clear();
            order.push(c);
            bfs_parent[c as usize] = c;
            dist[c as usize] = 0;
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                lists[u as usize].push(CentroidAncestor {
                    centroid: c,
                    dist: dist[u as usize],
                });
                for &v in t.neighbors(u) {
                    if !removed[v as usize] && v != bfs_parent[u as usize] {
                        bfs_parent[v as usize] = u;
                        dist[v as usize] = dist[u as usize] + 1;
                        order.push(v);
                    }
                }
            }
            removed[c as usize] = true;
            for &v in t.neighbors(c) {
                if !removed[v as usize] {
                    stack.push((v, c));
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut entries = Vec::new();
        let mut depth = 0;
        offsets.push(0);
        for list in lists.iter_mut() {
            list.reverse();
            depth = depth.max(list.len());
            entries.extend_from_slice(list);
            offsets.push(entries.len() as u32);
        }
        CentroidIndex {
            offsets,
            entries,
            parent: cparent,
            root,
            depth,
        }
    }

    /// Centroid ancestors of `v`, deepest first.
    #[inline]
    pub fn path(&self, v: NodeId) -> &[CentroidAncestor] {
        let (a, b) = (
            self.offsets[v as usize] as usize,
            self.offsets[v as usize + 1] as usize,
        );
        &self.entries[a..b]
    }

    /// Parent of `v` in the decomposition tree, `None` for the root centroid.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v as usize];
        (p != NodeId::MAX).then_some(p)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Number of levels of the decomposition (longest ancestor path).
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Deepest common centroid ancestor of `a` and `b`, with its distances to both.
    pub fn meet(&self, a: NodeId, b: NodeId) -> (NodeId, u32, u32) {
        let (pa, pb) = (self.path(a), self.path(b));
        let (mut i, mut j) = (pa.len(), pb.len());
        let mut best = (pa[i - 1].centroid, pa[i - 1].dist, pb[j - 1].dist);
        while i > 0 && j > 0 && pa[i - 1].centroid == pb[j - 1].centroid {
            best = (pa[i - 1].centroid, pa[i - 1].dist, pb[j - 1].dist);
            i -= 1;
            j -= 1;
        }
        best
    }

    /// Tree distance through the deepest common centroid ancestor.
    pub fn distance(&self, a: NodeId, b: NodeId) -> u32 {
        let (_, da, db) = self.meet(a, b);
        da + db
    }
}

/// `floor(log2(n)) + 1`, the bound on decomposition depth for `n` nodes.
pub fn depth_bound(n: usize) -> usize {
    (usize::BITS - n.max(1).leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::bfs_distances;

    #[test]
    fn path_of_three() {
        let idx = CentroidIndex::build(&Tree::path(3));
        assert_eq!(idx.root(), 1);
        let p0 = idx.path(0);
        assert_eq!(p0[0], CentroidAncestor { centroid: 0, dist: 0 });
        assert_eq!(p0[1], CentroidAncestor { centroid: 1, dist: 1 });
        assert_eq!(idx.parent(0), Some(1));
        assert_eq!(idx.parent(1), None);
    }

    #[test]
    fn singleton() {
        let idx = CentroidIndex::build(&Tree::singleton());
        assert_eq!(idx.path(0), &[CentroidAncestor { centroid: 0, dist: 0 }]);
        assert_eq!(idx.depth(), 1);
    }

    #[test]
    fn depth_bound_values() {
        assert_eq!(depth_bound(1), 1);
        assert_eq!(depth_bound(2), 2);
        assert_eq!(depth_bound(3), 2);
        assert_eq!(depth_bound(4), 3);
        assert_eq!(depth_bound(1000), 10);
    }

    #[test]
    fn long_path_distances() {
        let t = Tree::path(100);
        let idx = CentroidIndex::build(&t);
        assert!(idx.depth() <= depth_bound(100));
        for v in 0..100 {
            let d = bfs_distances(&t, v);
            for entry in idx.path(v) {
                assert_eq!(d[entry.centroid as usize], entry.dist);
            }
            assert_eq!(idx.path(v)[0].centroid, v);
        }
    }
}
