//! Unrooted trees over dense integer ids with unit edge weights.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Node identifier. Nodes of an `n`-node tree are `0..n`.
pub type NodeId = u32;

/// Reasons an edge list is not a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    Empty,
    OutOfRange { edge: usize, node: u64, node_count: usize },
    SelfLoop { edge: usize, node: NodeId },
    DuplicateEdge { edge: usize, u: NodeId, v: NodeId },
    Cycle { edge: usize, u: NodeId, v: NodeId },
    Disconnected { components: usize },
    TooLarge { node_count: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Empty => write!(f, "tree has no nodes"),
            TreeError::OutOfRange { edge, node, node_count } => write!(
                f,
                "edge {edge}: node id {node} out of range for {node_count} nodes"
            ),
            TreeError::SelfLoop { edge, node } => write!(f, "edge {edge}: self loop at {node}"),
            TreeError::DuplicateEdge { edge, u, v } => {
                write!(f, "edge {edge}: duplicate edge {u}-{v}")
            }
            TreeError::Cycle { edge, u, v } => write!(f, "edge {edge}: {u}-{v} closes a cycle"),
            TreeError::Disconnected { components } => {
                write!(f, "edges leave {components} connected components")
            }
            TreeError::TooLarge { node_count } => {
                write!(f, "{node_count} nodes exceed the supported id range")
            }
        }
    }
}

impl core::error::Error for TreeError {}

/// A validated tree. Adjacency lists keep the order in which edges were given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    // Neighbors of v are adj[start[v]..start[v + 1]].
    start: Vec<u32>,
    adj: Vec<NodeId>,
}

struct DisjointSets {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            core::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            core::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
        true
    }
}

impl Tree {
    /// Validates `edges` as a tree on `0..node_count`.
    pub fn from_edges(node_count: usize, edges: &[(u64, u64)]) -> Result<Tree, TreeError> {
        if node_count == 0 {
            return Err(TreeError::Empty);
        }
        if node_count > u32::MAX as usize / 2 {
            return Err(TreeError::TooLarge { node_count });
        }
        let mut seen: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= node_count as u64 {
                    return Err(TreeError::OutOfRange { edge: i, node: x, node_count });
                }
            }
            let (u, v) = (u as NodeId, v as NodeId);
            if u == v {
                return Err(TreeError::SelfLoop { edge: i, node: u });
            }
            seen.push((u.min(v), u.max(v)));
        }
        let mut sorted: Vec<(NodeId, NodeId, usize)> =
            seen.iter().enumerate().map(|(i, &(a, b))| (a, b, i)).collect();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                let edge = w[0].2.max(w[1].2);
                let (u, v) = (edges[edge].0 as NodeId, edges[edge].1 as NodeId);
                return Err(TreeError::DuplicateEdge { edge, u, v });
            }
        }
        let mut sets = DisjointSets::new(node_count);
        let mut start = vec![0u32; node_count + 1];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = (u as NodeId, v as NodeId);
            if !sets.union(u, v) {
                return Err(TreeError::Cycle { edge: i, u, v });
            }
            start[u as usize + 1] += 1;
            start[v as usize + 1] += 1;
        }
        if edges.len() != node_count - 1 {
            return Err(TreeError::Disconnected {
                components: node_count - edges.len(),
            });
        }
        for v in 0..node_count {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![0; 2 * edges.len()];
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                adj[fill[a as usize] as usize] = b as NodeId;
                fill[a as usize] += 1;
            }
        }
        Ok(Tree { start, adj })
    }

    /// Single-node tree.
    pub fn singleton() -> Tree {
        Tree { start: vec![0, 0], adj: Vec::new() }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<(u64, u64)> = (1..n as u64).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// Star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Tree {
        let edges: Vec<(u64, u64)> = (1..n as u64).map(|i| (0, i)).collect();
        Tree::from_edges(n, &edges).expect("star is a tree")
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.start.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[self.start[v as usize] as usize..self.start[v as usize + 1] as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (u as NodeId) < v)
                .map(move |&v| (u as NodeId, v))
        })
    }

    /// Parent array and BFS order of the tree rooted at `root` (parent of root is itself).
    pub fn rooted(&self, root: NodeId) -> (Vec<NodeId>, Vec<NodeId>) {
        let n = self.node_count();
        let mut parent = vec![NodeId::MAX; n];
        let mut order = Vec::with_capacity(n);
        parent[root as usize] = root;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in self.neighbors(u) {
                if parent[v as usize] == NodeId::MAX {
                    parent[v as usize] = u;
                    order.push(v);
                }
            }
        }
        (parent, order)
    }
}

/// Unit-weight distances from `root` to every node.
pub fn bfs_distances(t: &Tree, root: NodeId) -> Vec<u32> {
    let n = t.node_count();
    assert!((root as usize) < n, "root {root} out of range");
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[root as usize] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in t.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A node whose removal leaves components of at most `n / 2` nodes.
/// The lowest such id is returned.
pub fn centroid(t: &Tree) -> NodeId {
    let n = t.node_count();
    let (parent, order) = t.rooted(0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v as usize] as usize] += size[v as usize];
        }
    }
    (0..n as NodeId)
        .find(|&v| {
            let mut worst = n - size[v as usize];
            for &w in t.neighbors(v) {
                if parent[w as usize] == v && w != v {
                    worst = worst.max(size[w as usize]);
                }
            }
            worst <= n / 2
        })
        .expect("every tree has a centroid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let t = Tree::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(bfs_distances(&t, 0), vec![0, 1, 2]);
        assert_eq!(centroid(&t), 1);
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = Tree::from_edges(2, &[(0, 1), (0, 1)]).unwrap_err();
        assert!(matches!(err, TreeError::DuplicateEdge { edge: 1, .. }), "{err}");
        let err = Tree::from_edges(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, TreeError::DuplicateEdge { .. }));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 3)]),
            Err(TreeError::OutOfRange { node: 3, .. })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 1)]),
            Err(TreeError::SelfLoop { .. })
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::Cycle { edge: 2, .. })
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (2, 3)]),
            Err(TreeError::Disconnected { components: 2 })
        ));
        assert!(matches!(Tree::from_edges(0, &[]), Err(TreeError::Empty)));
    }

    #[test]
    fn star_centroid_is_center() {
        assert_eq!(centroid(&Tree::star(5)), 0);
        assert_eq!(centroid(&Tree::singleton()), 0);
    }

    #[test]
    fn single_node_distances() {
        assert_eq!(bfs_distances(&Tree::singleton(), 0), vec![0]);
    }
}
