//! Cube-free median graphs: brute-force recognition, the centroid, the star
//! decomposition around it, and an exact diameter computation that handles
//! every pair of fibers at one level and recurses into the fibers.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::range_tree::{CoordConstraint, RangeTree};
use crate::subset_ecc::{SubsetEccError, SubsetEccIndex};
use crate::tree::{NodeId, Tree};
use crate::Weight;

const NONE: u32 = u32::MAX;
const NEG: Weight = Weight::NEG_INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub enum MedianError {
    /// Three neighbours of `vertex` lie on shortest paths to one vertex.
    NotCubeFree { vertex: NodeId },
    /// Majority descent did not settle.
    NoCentroid,
    /// Found while labelling edges: an odd cycle or a square that does not close.
    NotMedian { vertex: NodeId },
    /// A vertex at distance two from the centroid with three or more common
    /// neighbours.
    CommonNeighbors { vertex: NodeId, count: usize },
    /// Two nearest star vertices at the same distance.
    GateConflict { vertex: NodeId, a: NodeId, b: NodeId },
    FiberTooLarge { root: NodeId, size: usize, n: usize },
    CenterFiber { size: usize },
    /// An edge between two panels or two cones.
    AdjacentFibers { u: NodeId, v: NodeId },
    /// A cone touching a panel other than its two defining ones.
    ConePanels { cone: NodeId, panel: NodeId },
    /// A cone vertex not reached from the panel boundary inside its cone.
    Unreached { vertex: NodeId },
    BoundaryNotTree { panel: NodeId },
    Imprints { vertex: NodeId, count: usize },
    DepthExceeded { depth: usize, n: usize },
    Subset(SubsetEccError),
}

impl fmt::Display for MedianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MedianError::*;
        match self {
            NotCubeFree { vertex } => write!(f, "vertex {vertex} is a corner of a 3-cube"),
            NoCentroid => write!(f, "centroid descent did not terminate; graph is not median"),
            NotMedian { vertex } => write!(f, "graph is not median around vertex {vertex}"),
            CommonNeighbors { vertex, count } => write!(
                f,
                "vertex {vertex} has {count} common neighbours with the centroid"
            ),
            GateConflict { vertex, a, b } => {
                write!(f, "vertex {vertex} has two gates {a} and {b}")
            }
            FiberTooLarge { root, size, n } => {
                write!(f, "fiber of {root} has {size} of {n} vertices")
            }
            CenterFiber { size } => write!(f, "fiber of the centroid has {size} vertices"),
            AdjacentFibers { u, v } => write!(f, "edge {u}-{v} joins two panels or two cones"),
            ConePanels { cone, panel } => {
                write!(f, "cone {cone} touches panel {panel} outside its square")
            }
            Unreached { vertex } => write!(f, "cone vertex {vertex} has no gate in a panel"),
            BoundaryNotTree { panel } => write!(f, "boundary of panel {panel} is not a tree"),
            Imprints { vertex, count } => write!(f, "vertex {vertex} has {count} imprints"),
            DepthExceeded { depth, n } => {
                write!(f, "recursion depth {depth} exceeds log2 of {n} vertices")
            }
            Subset(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MedianError {}

impl From<SubsetEccError> for MedianError {
    fn from(e: SubsetEccError) -> Self {
        MedianError::Subset(e)
    }
}

impl MedianError {
    /// Rewrites vertex ids through `ids` (local to global).
    fn relabel(self, ids: &[NodeId]) -> Self {
        use MedianError::*;
        let m = |v: NodeId| ids.get(v as usize).copied().unwrap_or(v);
        match self {
            NotCubeFree { vertex } => NotCubeFree { vertex: m(vertex) },
            NotMedian { vertex } => NotMedian { vertex: m(vertex) },
            CommonNeighbors { vertex, count } => CommonNeighbors { vertex: m(vertex), count },
            GateConflict { vertex, a, b } => GateConflict { vertex: m(vertex), a: m(a), b: m(b) },
            FiberTooLarge { root, size, n } => FiberTooLarge { root: m(root), size, n },
            AdjacentFibers { u, v } => AdjacentFibers { u: m(u), v: m(v) },
            ConePanels { cone, panel } => ConePanels { cone: m(cone), panel: m(panel) },
            Unreached { vertex } => Unreached { vertex: m(vertex) },
            BoundaryNotTree { panel } => BoundaryNotTree { panel: m(panel) },
            Imprints { vertex, count } => Imprints { vertex: m(vertex), count },
            e => e,
        }
    }
}

fn all_bfs(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.node_count() as NodeId).map(|v| g.bfs(v)).collect()
}

/// Every triple has exactly one vertex lying on shortest paths between each
/// pair. Brute force over triples; cubic memory in bits.
pub fn check_median(g: &Graph) -> bool {
    let n = g.node_count();
    let rows = all_bfs(g);
    let words = n.div_ceil(64);
    let mut interval = vec![0u64; n * n * words];
    for x in 0..n {
        for y in x..n {
            let dxy = rows[x][y];
            for c in 0..n {
                if rows[x][c] + rows[c][y] == dxy {
                    interval[(x * n + y) * words + c / 64] |= 1 << (c % 64);
                    interval[(y * n + x) * words + c / 64] |= 1 << (c % 64);
                }
            }
        }
    }
    let iv = |a: usize, b: usize| &interval[(a * n + b) * words..(a * n + b + 1) * words];
    for x in 0..n {
        for y in x + 1..n {
            let xy = iv(x, y);
            for z in y + 1..n {
                let (yz, zx) = (iv(y, z), iv(z, x));
                let count: u32 = (0..words).map(|w| (xy[w] & yz[w] & zx[w]).count_ones()).sum();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// No 3-cube subgraph. Brute force over neighbour triples of every vertex.
pub fn check_cube_free(g: &Graph) -> bool {
    let n = g.node_count();
    let mut sorted: Vec<Vec<NodeId>> = (0..n as NodeId).map(|v| g.neighbors(v).to_vec()).collect();
    for s in &mut sorted {
        s.sort_unstable();
    }
    let adj = |a: NodeId, b: NodeId| sorted[a as usize].binary_search(&b).is_ok();
    // Vertices other than `v` adjacent to both `a` and `b`.
    let completers = |v: NodeId, a: NodeId, b: NodeId| -> Vec<NodeId> {
        sorted[a as usize]
            .iter()
            .copied()
            .filter(|&w| w != v && adj(w, b))
            .collect()
    };
    for v in 0..n as NodeId {
        let nb = &sorted[v as usize];
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let wab = completers(v, nb[i], nb[j]);
                if wab.is_empty() {
                    continue;
                }
                for k in j + 1..nb.len() {
                    let (a, b, c) = (nb[i], nb[j], nb[k]);
                    let wbc = completers(v, b, c);
                    let wac = completers(v, a, c);
                    for &x in &wab {
                        for &y in &wbc {
                            for &z in &wac {
                                if x == y || y == z || x == z {
                                    continue;
                                }
                                let closes = sorted[x as usize].iter().any(|&t| {
                                    t != a && t != b && t != c && adj(t, y) && adj(t, z)
                                });
                                if closes {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// A vertex minimizing the total distance to all others.
///
/// One BFS from vertex 0 labels the edges with their parallelism classes: a
/// vertex with one predecessor opens a new class, a vertex with two
/// predecessors copies the classes across its square. The classes separating
/// a vertex from the root are the labels on its path in the tree that links
/// each vertex to its predecessor, or to the bottom of its square, so the
/// far halfspace of a class is counted by subtree sizes. The walk then moves
/// to any neighbour whose halfspace holds more than half of the vertices and
/// crosses every class at most once.
pub fn median_centroid(g: &Graph) -> Result<NodeId, MedianError> {
    let n = g.node_count();
    let dist = g.bfs(0);
    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    order.sort_by_key(|&v| dist[v as usize]);
    // Predecessors of each vertex with the class of the edge to them.
    let mut preds: Vec<[(NodeId, u32); 2]> = vec![[(NONE, NONE); 2]; n];
    let mut sep_parent = vec![NONE; n];
    let mut sep_labels: Vec<[u32; 2]> = vec![[NONE; 2]; n];
    let mut classes = 0u32;
    for &v in &order[1..] {
        let dv = dist[v as usize];
        let mut k = 0;
        for &u in g.neighbors(v) {
            let du = dist[u as usize];
            if du == dv {
                return Err(MedianError::NotMedian { vertex: v });
            }
            if du + 1 == dv {
                if k == 2 {
                    return Err(MedianError::NotCubeFree { vertex: v });
                }
                preds[v as usize][k].0 = u;
                k += 1;
            }
        }
        if k == 1 {
            preds[v as usize][0].1 = classes;
            sep_parent[v as usize] = preds[v as usize][0].0;
            sep_labels[v as usize][0] = classes;
            classes += 1;
            continue;
        }
        let (u, w) = (preds[v as usize][0].0, preds[v as usize][1].0);
        let common = preds[u as usize]
            .iter()
            .find(|&&(x, _)| x != NONE && preds[w as usize].iter().any(|&(y, _)| y == x))
            .copied();
        let Some((x, class_xu)) = common else {
            return Err(MedianError::NotMedian { vertex: v });
        };
        let class_xw = preds[w as usize].iter().find(|&&(y, _)| y == x).unwrap().1;
        preds[v as usize][0].1 = class_xw;
        preds[v as usize][1].1 = class_xu;
        sep_parent[v as usize] = x;
        sep_labels[v as usize] = [class_xw, class_xu];
    }
    let mut size = vec![1usize; n];
    let mut far = vec![0usize; classes as usize];
    for &v in order[1..].iter().rev() {
        for &c in &sep_labels[v as usize] {
            if c != NONE {
                far[c as usize] += size[v as usize];
            }
        }
        size[sep_parent[v as usize] as usize] += size[v as usize];
    }
    let class_of = |a: NodeId, b: NodeId| -> u32 {
        let (hi, lo) = if dist[a as usize] > dist[b as usize] { (a, b) } else { (b, a) };
        preds[hi as usize].iter().find(|&&(p, _)| p == lo).unwrap().1
    };
    let mut v: NodeId = 0;
    for _ in 0..=classes {
        let step = g.neighbors(v).iter().copied().find(|&u| {
            let c = far[class_of(v, u) as usize];
            let side = if dist[u as usize] > dist[v as usize] { c } else { n - c };
            2 * side > n
        });
        match step {
            Some(u) => v = u,
            None => return Ok(v),
        }
    }
    Err(MedianError::NoCentroid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberRole {
    Center,
    Panel,
    /// Star indices of the two panels of the square defining the cone,
    /// ascending.
    Cone { panels: [u32; 2] },
}

/// A vertex with its distance, used for gates and imprints. `vertex` is
/// `u32::MAX` when absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub vertex: NodeId,
    pub dist: u32,
}

impl Gate {
    pub const ABSENT: Gate = Gate { vertex: NONE, dist: NONE };

    pub fn is_absent(&self) -> bool {
        self.vertex == NONE
    }
}

/// Per-panel data: the total boundary as a tree and the cone statistics on it.
#[derive(Debug, Clone)]
pub struct Panel {
    /// Star index of the panel.
    pub fiber: u32,
    /// Star indices of the neighbouring cones.
    pub cones: Vec<u32>,
    /// Boundary vertices; tree node `i` is `boundary[i]`.
    pub boundary: Vec<NodeId>,
    /// `None` when the panel has no neighbouring cone.
    pub tree: Option<Tree>,
    /// Farthest cone vertex gated at each boundary node (`-inf` if none).
    pub alpha: Vec<Weight>,
    /// Cone (star index) realizing `alpha`, `u32::MAX` if none.
    pub cone: Vec<u32>,
    /// Farthest vertex over the other cones.
    pub alpha2: Vec<Weight>,
}

#[derive(Debug, Clone)]
pub struct StarDecomposition {
    pub centroid: NodeId,
    /// The centroid, its neighbours in increasing id, then the far corners
    /// of the squares through the centroid in increasing id.
    pub star: Vec<NodeId>,
    pub roles: Vec<FiberRole>,
    /// Star index of the fiber of each vertex.
    pub fiber_of: Vec<u32>,
    /// Distance of each vertex to its star vertex.
    pub gate_dist: Vec<u32>,
    pub dist_c: Vec<u32>,
    pub fibers: Vec<Vec<NodeId>>,
    /// Largest distance to the centroid within each fiber.
    pub depth: Vec<u32>,
    /// Panel `i` has star index `i + 1`.
    pub panels: Vec<Panel>,
    /// For cone vertices, gates in the two panels (order of `FiberRole::Cone`).
    pub cone_gates: Vec<[Gate; 2]>,
    /// For panel vertices, imprints on the total boundary of their panel.
    pub imprints: Vec<[Gate; 2]>,
    /// Index of each boundary vertex in its panel's `boundary`.
    pub boundary_index: Vec<u32>,
}

impl StarDecomposition {
    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }

    pub fn is_cone(&self, fiber: u32) -> bool {
        matches!(self.roles[fiber as usize], FiberRole::Cone { .. })
    }

    /// Panels of a cone fiber.
    pub fn cone_panels(&self, fiber: u32) -> Option<[u32; 2]> {
        match self.roles[fiber as usize] {
            FiberRole::Cone { panels } => Some(panels),
            _ => None,
        }
    }
}

/// Decomposes `g` around its centroid `c` and checks the structural
/// invariants of cube-free median graphs on the way.
pub fn star_decomposition(g: &Graph, c: NodeId) -> Result<StarDecomposition, MedianError> {
    let n = g.node_count();
    let dist_c = g.bfs(c);

    let mut star = vec![c];
    let mut roles = vec![FiberRole::Center];
    let mut nb: Vec<NodeId> = g.neighbors(c).to_vec();
    nb.sort_unstable();
    let mut star_index = vec![NONE; n];
    star_index[c as usize] = 0;
    for &x in &nb {
        star_index[x as usize] = star.len() as u32;
        star.push(x);
        roles.push(FiberRole::Panel);
    }
    let mut parents: Vec<[u32; 3]> = vec![[NONE; 3]; n];
    let mut corners = Vec::new();
    for &x in &nb {
        for &w in g.neighbors(x) {
            if dist_c[w as usize] != 2 {
                continue;
            }
            let p = &mut parents[w as usize];
            match p.iter().position(|&s| s == NONE) {
                Some(0) => {
                    p[0] = star_index[x as usize];
                }
                Some(1) => {
                    p[1] = star_index[x as usize];
                    corners.push(w);
                }
                _ => return Err(MedianError::CommonNeighbors { vertex: w, count: 3 }),
            }
        }
    }
    corners.sort_unstable();
    for &y in &corners {
        let p = parents[y as usize];
        star_index[y as usize] = star.len() as u32;
        star.push(y);
        roles.push(FiberRole::Cone { panels: [p[0].min(p[1]), p[0].max(p[1])] });
    }

    // Fibers: multi-source BFS from the star.
    let mut fiber_of = vec![NONE; n];
    let mut gate_dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for (i, &s) in star.iter().enumerate() {
        fiber_of[s as usize] = i as u32;
        gate_dist[s as usize] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let (fu, du) = (fiber_of[u as usize], gate_dist[u as usize]);
        for &w in g.neighbors(u) {
            if gate_dist[w as usize] == u32::MAX {
                gate_dist[w as usize] = du + 1;
                fiber_of[w as usize] = fu;
                queue.push_back(w);
            } else if gate_dist[w as usize] == du + 1 && fiber_of[w as usize] != fu {
                return Err(MedianError::GateConflict {
                    vertex: w,
                    a: star[fu as usize],
                    b: star[fiber_of[w as usize] as usize],
                });
            }
        }
    }
    let mut fibers: Vec<Vec<NodeId>> = vec![Vec::new(); star.len()];
    for v in 0..n as NodeId {
        fibers[fiber_of[v as usize] as usize].push(v);
    }
    if fibers[0].len() != 1 {
        return Err(MedianError::CenterFiber { size: fibers[0].len() });
    }
    for (i, f) in fibers.iter().enumerate() {
        if f.len() > n / 2 && n > 1 {
            return Err(MedianError::FiberTooLarge { root: star[i], size: f.len(), n });
        }
    }
    let depth: Vec<u32> = fibers
        .iter()
        .map(|f| f.iter().map(|&v| dist_c[v as usize]).max().unwrap_or(0))
        .collect();

    // Edges across fibers: panel-cone only, and only along the cone's square.
    let mut on_boundary = vec![false; n];
    for (u, v) in g.edges() {
        let (fu, fv) = (fiber_of[u as usize], fiber_of[v as usize]);
        if fu == fv || fu == 0 || fv == 0 {
            continue;
        }
        let (pu, pv) = (roles[fu as usize], roles[fv as usize]);
        let (panel_v, panel_f, cone_f) = match (pu, pv) {
            (FiberRole::Panel, FiberRole::Cone { .. }) => (u, fu, fv),
            (FiberRole::Cone { .. }, FiberRole::Panel) => (v, fv, fu),
            _ => return Err(MedianError::AdjacentFibers { u, v }),
        };
        let FiberRole::Cone { panels } = roles[cone_f as usize] else { unreachable!() };
        if !panels.contains(&panel_f) {
            return Err(MedianError::ConePanels {
                cone: star[cone_f as usize],
                panel: star[panel_f as usize],
            });
        }
        on_boundary[panel_v as usize] = true;
    }

    // Boundary trees.
    let mut boundary_index = vec![NONE; n];
    let mut panels: Vec<Panel> = Vec::with_capacity(nb.len());
    for p in 1..=nb.len() as u32 {
        let boundary: Vec<NodeId> = fibers[p as usize]
            .iter()
            .copied()
            .filter(|&v| on_boundary[v as usize])
            .collect();
        for (i, &b) in boundary.iter().enumerate() {
            boundary_index[b as usize] = i as u32;
        }
        let tree = if boundary.is_empty() {
            None
        } else {
            let mut edges = Vec::new();
            for (i, &b) in boundary.iter().enumerate() {
                for &w in g.neighbors(b) {
                    if on_boundary[w as usize] && fiber_of[w as usize] == p && b < w {
                        edges.push((i as u64, boundary_index[w as usize] as u64));
                    }
                }
            }
            Some(
                Tree::from_edges(boundary.len(), &edges)
                    .map_err(|_| MedianError::BoundaryNotTree { panel: star[p as usize] })?,
            )
        };
        let m = boundary.len();
        panels.push(Panel {
            fiber: p,
            cones: Vec::new(),
            boundary,
            tree,
            alpha: vec![NEG; m],
            cone: vec![NONE; m],
            alpha2: vec![NEG; m],
        });
    }

    // Gates of cone vertices in their two panels, through the cone only.
    let mut cone_gates = vec![[Gate::ABSENT; 2]; n];
    let mut seen_source = vec![false; n];
    for y in nb.len() as u32 + 1..star.len() as u32 {
        let FiberRole::Cone { panels: pp } = roles[y as usize] else { unreachable!() };
        for (slot, &p) in pp.iter().enumerate() {
            panels[p as usize - 1].cones.push(y);
            let mut queue: VecDeque<(NodeId, NodeId, u32)> = VecDeque::new();
            let mut sources = Vec::new();
            for &v in &fibers[y as usize] {
                for &b in g.neighbors(v) {
                    if fiber_of[b as usize] == p && !seen_source[b as usize] {
                        seen_source[b as usize] = true;
                        sources.push(b);
                        queue.push_back((b, b, 0));
                    }
                }
            }
            for &b in &sources {
                seen_source[b as usize] = false;
            }
            while let Some((u, gate, d)) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if fiber_of[w as usize] != y {
                        continue;
                    }
                    let cur = &mut cone_gates[w as usize][slot];
                    if cur.is_absent() {
                        *cur = Gate { vertex: gate, dist: d + 1 };
                        queue.push_back((w, gate, d + 1));
                    } else if cur.dist == d + 1 && cur.vertex != gate {
                        return Err(MedianError::GateConflict { vertex: w, a: cur.vertex, b: gate });
                    }
                }
            }
            let panel = &mut panels[p as usize - 1];
            for &v in &fibers[y as usize] {
                let gt = cone_gates[v as usize][slot];
                if gt.is_absent() {
                    return Err(MedianError::Unreached { vertex: v });
                }
                let l = boundary_index[gt.vertex as usize] as usize;
                let val = gt.dist as Weight;
                if panel.cone[l] == y {
                    if val > panel.alpha[l] {
                        panel.alpha[l] = val;
                    }
                } else if val > panel.alpha[l] {
                    panel.alpha2[l] = panel.alpha[l];
                    panel.alpha[l] = val;
                    panel.cone[l] = y;
                } else if val > panel.alpha2[l] {
                    panel.alpha2[l] = val;
                }
            }
        }
    }

    let mut imprints = vec![[Gate::ABSENT; 2]; n];
    for panel in &panels {
        if panel.boundary.is_empty() {
            continue;
        }
        let members = &fibers[panel.fiber as usize];
        let in_t: Vec<bool> = members.iter().map(|&v| on_boundary[v as usize]).collect();
        let local = panel_imprints(&g.induced(members), &in_t).map_err(|e| match e {
            LocalError::Conflict(v, a, b) => MedianError::GateConflict {
                vertex: members[v as usize],
                a: members[a as usize],
                b: members[b as usize],
            },
            LocalError::Imprints(v) => {
                MedianError::Imprints { vertex: members[v as usize], count: 3 }
            }
        })?;
        for (i, imp) in local.into_iter().enumerate() {
            imprints[members[i] as usize] = imp.map(|gt| {
                if gt.is_absent() {
                    gt
                } else {
                    Gate { vertex: members[gt.vertex as usize], dist: gt.dist }
                }
            });
        }
    }

    Ok(StarDecomposition {
        centroid: c,
        star,
        roles,
        fiber_of,
        gate_dist,
        dist_c,
        fibers,
        depth,
        panels,
        cone_gates,
        imprints,
        boundary_index,
    })
}

enum LocalError {
    Conflict(NodeId, NodeId, NodeId),
    Imprints(NodeId),
}

fn push_imprint(slot: &mut [Gate; 2], gate: Gate, v: NodeId) -> Result<(), LocalError> {
    match slot.iter().position(Gate::is_absent) {
        Some(s) => {
            slot[s] = gate;
            Ok(())
        }
        None => Err(LocalError::Imprints(v)),
    }
}

/// BFS from `src` inside `keep`; `blocked[w]` tells whether some shortest
/// path from `src` to `w` passes through a vertex of `stop` other than `src`
/// and `w`.
fn blocked_bfs(
    g: &Graph,
    keep: &[bool],
    stop: &[bool],
    src: NodeId,
    dist: &mut [u32],
    blocked: &mut [bool],
    order: &mut Vec<NodeId>,
) {
    for &w in order.iter() {
        dist[w as usize] = u32::MAX;
        blocked[w as usize] = false;
    }
    order.clear();
    dist[src as usize] = 0;
    order.push(src);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let du = dist[u as usize];
        let carry = blocked[u as usize] || (u != src && stop[u as usize]);
        for &w in g.neighbors(u) {
            if !keep[w as usize] {
                continue;
            }
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = du + 1;
                blocked[w as usize] = carry;
                order.push(w);
            } else if dist[w as usize] == du + 1 {
                blocked[w as usize] |= carry;
            }
        }
    }
}

/// Imprints of every vertex of a panel `g` on its boundary `in_t`, in local
/// ids.
///
/// The hull of the boundary is its closure under adding vertices with two
/// neighbours inside (connected locally convex sets are convex here). A
/// vertex outside the hull has the imprints of its gate in the hull, so the
/// BFS scans run inside the hull only, from whichever of the boundary or the
/// rest of the hull is smaller.
fn panel_imprints(g: &Graph, in_t: &[bool]) -> Result<Vec<[Gate; 2]>, LocalError> {
    let m = g.node_count();
    let mut in_s = in_t.to_vec();
    let mut count = vec![0u8; m];
    let mut queue: VecDeque<NodeId> = (0..m as NodeId).filter(|&v| in_t[v as usize]).collect();
    let mut hull: Vec<NodeId> = Vec::new();
    while let Some(u) = queue.pop_front() {
        hull.push(u);
        for &x in g.neighbors(u) {
            if !in_s[x as usize] {
                count[x as usize] += 1;
                if count[x as usize] == 2 {
                    in_s[x as usize] = true;
                    queue.push_back(x);
                }
            }
        }
    }
    let inner: Vec<NodeId> = hull.iter().copied().filter(|&v| !in_t[v as usize]).collect();
    let boundary: Vec<NodeId> = hull.iter().copied().filter(|&v| in_t[v as usize]).collect();

    let mut imp = vec![[Gate::ABSENT; 2]; m];
    for &a in &boundary {
        imp[a as usize][0] = Gate { vertex: a, dist: 0 };
    }
    let mut dist = vec![u32::MAX; m];
    let mut blocked = vec![false; m];
    let mut order = Vec::new();
    if boundary.len() <= inner.len() {
        for &a in &boundary {
            blocked_bfs(g, &in_s, in_t, a, &mut dist, &mut blocked, &mut order);
            for &w in &order {
                if !in_t[w as usize] && !blocked[w as usize] {
                    push_imprint(&mut imp[w as usize], Gate { vertex: a, dist: dist[w as usize] }, w)?;
                }
            }
        }
    } else {
        for &v in &inner {
            blocked_bfs(g, &in_s, in_t, v, &mut dist, &mut blocked, &mut order);
            for &w in &order {
                if in_t[w as usize] && !blocked[w as usize] {
                    push_imprint(&mut imp[v as usize], Gate { vertex: w, dist: dist[w as usize] }, v)?;
                }
            }
        }
    }

    // Outside the hull: imprints of the gate.
    let mut gate = vec![NONE; m];
    let mut gd = vec![u32::MAX; m];
    let mut queue: VecDeque<NodeId> = VecDeque::with_capacity(m);
    for &s in &hull {
        gate[s as usize] = s;
        gd[s as usize] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let (gu, du) = (gate[u as usize], gd[u as usize]);
        for &w in g.neighbors(u) {
            if gd[w as usize] == u32::MAX {
                gd[w as usize] = du + 1;
                gate[w as usize] = gu;
                queue.push_back(w);
                let src = imp[gu as usize];
                imp[w as usize] = src.map(|x| {
                    if x.is_absent() {
                        x
                    } else {
                        Gate { vertex: x.vertex, dist: x.dist + du + 1 }
                    }
                });
            } else if gd[w as usize] == du + 1 && gate[w as usize] != gu {
                return Err(LocalError::Conflict(w, gu, gate[w as usize]));
            }
        }
    }
    Ok(imp)
}

/// Result of the rerooting pass at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryEcc {
    /// `max_z' d(z,z') + alpha(z')`.
    pub e1: Weight,
    /// Label realizing `e1` (`u32::MAX` when `e1` is `-inf`).
    pub s: u32,
    /// Best value over labels other than `s`.
    pub e2: Weight,
}

impl BoundaryEcc {
    const EMPTY: BoundaryEcc = BoundaryEcc { e1: NEG, s: NONE, e2: NEG };

    fn shift(self, d: Weight) -> Self {
        BoundaryEcc { e1: self.e1 + d, s: self.s, e2: self.e2 + d }
    }

    fn merge(self, o: Self) -> Self {
        let (a, b) = if self.e1 >= o.e1 { (self, o) } else { (o, self) };
        let other = if b.s != a.s { b.e1 } else { b.e2 };
        BoundaryEcc { e1: a.e1, s: a.s, e2: if other > a.e2 { other } else { a.e2 } }
    }
}

/// For every node `z`: the farthest weighted node, its label, and the
/// farthest weighted node over the other labels, where a node `z'` carries
/// `alpha[z']` under label `r[z']` and `alpha2[z']` under any other label.
pub fn boundary_dp(t: &Tree, alpha: &[Weight], r: &[u32], alpha2: &[Weight]) -> Vec<BoundaryEcc> {
    let n = t.node_count();
    assert!(alpha.len() == n && r.len() == n && alpha2.len() == n);
    let own = |z: usize| BoundaryEcc { e1: alpha[z], s: r[z], e2: alpha2[z] };
    let (parent, order) = t.rooted(0);
    let mut down = vec![BoundaryEcc::EMPTY; n];
    for &z in order.iter().rev() {
        let z = z as usize;
        let mut acc = own(z);
        for &c in t.neighbors(z as NodeId) {
            if parent[c as usize] == z as NodeId && c as usize != z {
                acc = acc.merge(down[c as usize].shift(1.0));
            }
        }
        down[z] = acc;
    }
    let mut up = vec![BoundaryEcc::EMPTY; n];
    let mut children: Vec<NodeId> = Vec::new();
    let mut suffix: Vec<BoundaryEcc> = Vec::new();
    for &z in &order {
        let zi = z as usize;
        children.clear();
        children.extend(
            t.neighbors(z)
                .iter()
                .copied()
                .filter(|&c| parent[c as usize] == z && c != z),
        );
        suffix.clear();
        suffix.resize(children.len() + 1, BoundaryEcc::EMPTY);
        for i in (0..children.len()).rev() {
            suffix[i] = suffix[i + 1].merge(down[children[i] as usize].shift(1.0));
        }
        let mut prefix = own(zi).merge(up[zi]);
        for (i, &c) in children.iter().enumerate() {
            up[c as usize] = prefix.merge(suffix[i + 1]).shift(1.0);
            prefix = prefix.merge(down[c as usize].shift(1.0));
        }
    }
    (0..n).map(|z| down[z].merge(up[z])).collect()
}

/// Candidate maxima of one level. `None` when a step has no pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelCandidates {
    pub center_ecc: u32,
    pub panels: Option<u32>,
    pub separated: Option<u32>,
    pub neighboring: Option<u32>,
    pub two_neighboring: Option<u32>,
}

impl LevelCandidates {
    pub fn max(&self) -> u32 {
        [self.panels, self.separated, self.neighboring, self.two_neighboring]
            .into_iter()
            .flatten()
            .fold(self.center_ecc, u32::max)
    }
}

fn bump(slot: &mut Option<u32>, v: u32) {
    *slot = Some(slot.map_or(v, |s| s.max(v)));
}

/// Largest distance between two different panels.
pub fn panel_pairs_max(dec: &StarDecomposition) -> Option<u32> {
    let mut top = [None::<u32>; 2];
    for p in &dec.panels {
        let d = dec.depth[p.fiber as usize];
        if top[0].is_none_or(|t| d > t) {
            top[1] = top[0];
            top[0] = Some(d);
        } else if top[1].is_none_or(|t| d > t) {
            top[1] = Some(d);
        }
    }
    Some(top[0]? + top[1]?)
}

/// Largest distance between separated fibers with at least one cone, through
/// a 2-d range tree keyed by the panel pairs of the cones.
pub fn separated_pairs_max(dec: &StarDecomposition) -> Option<u32> {
    let cones: Vec<u32> = (0..dec.star.len() as u32).filter(|&f| dec.is_cone(f)).collect();
    if cones.is_empty() {
        return None;
    }
    let mut coords = Vec::with_capacity(2 * cones.len());
    let mut values = Vec::with_capacity(cones.len());
    for &y in &cones {
        let [a, b] = dec.cone_panels(y).unwrap();
        coords.extend([a as i64, b as i64]);
        values.push(dec.depth[y as usize] as i64);
    }
    let payloads = cones.clone();
    let tree = RangeTree::from_parts(2, coords, values, payloads);
    let mut best = None;
    for p in &dec.panels {
        let x = p.fiber as i64;
        let q = [CoordConstraint::NotEq(x), CoordConstraint::NotEq(x)];
        if let Some((v, _)) = tree.query_constrained(&q).expect("valid constraints") {
            bump(&mut best, dec.depth[p.fiber as usize] + v as u32);
        }
    }
    for &y in &cones {
        let [a, b] = dec.cone_panels(y).unwrap();
        let c = CoordConstraint::NotIn(a as i64, b as i64);
        if let Some((v, _)) = tree.query_constrained(&[c, c]).expect("valid constraints") {
            bump(&mut best, dec.depth[y as usize] + v as u32);
        }
    }
    best
}

/// Largest distance between a panel vertex and a vertex of a neighbouring
/// cone, one subset eccentricity query per panel vertex.
pub fn neighboring_pairs_max(dec: &StarDecomposition) -> Result<Option<u32>, MedianError> {
    let mut best = None;
    for p in &dec.panels {
        let Some(tree) = &p.tree else { continue };
        let idx = SubsetEccIndex::preprocess(tree, &p.alpha)?;
        for &u in &dec.fibers[p.fiber as usize] {
            let mut set = [0 as NodeId; 2];
            let mut beta = [0.0; 2];
            let mut k = 0;
            for g in dec.imprints[u as usize].iter().filter(|g| !g.is_absent()) {
                set[k] = dec.boundary_index[g.vertex as usize];
                beta[k] = g.dist as Weight;
                k += 1;
            }
            let e = idx.query(&set[..k], &beta[..k])?;
            if e.is_finite() {
                bump(&mut best, e as u32);
            }
        }
    }
    Ok(best)
}

/// Largest distance between vertices of two different cones neighbouring a
/// common panel.
pub fn two_neighboring_pairs_max(dec: &StarDecomposition) -> Option<u32> {
    let mut best = None;
    for p in &dec.panels {
        let Some(tree) = &p.tree else { continue };
        if p.cones.len() < 2 {
            continue;
        }
        let ecc = boundary_dp(tree, &p.alpha, &p.cone, &p.alpha2);
        for &y in &p.cones {
            let panels = dec.cone_panels(y).unwrap();
            let slot = if panels[0] == p.fiber { 0 } else { 1 };
            for &v in &dec.fibers[y as usize] {
                let g = dec.cone_gates[v as usize][slot];
                let e = ecc[dec.boundary_index[g.vertex as usize] as usize];
                let far = if e.s != y { e.e1 } else { e.e2 };
                if far.is_finite() {
                    bump(&mut best, g.dist + far as u32);
                }
            }
        }
    }
    best
}

/// All cross-fiber candidates of one level.
pub fn level_candidates(dec: &StarDecomposition) -> Result<LevelCandidates, MedianError> {
    Ok(LevelCandidates {
        center_ecc: dec.dist_c.iter().copied().max().unwrap_or(0),
        panels: panel_pairs_max(dec),
        separated: separated_pairs_max(dec),
        neighboring: neighboring_pairs_max(dec)?,
        two_neighboring: two_neighboring_pairs_max(dec),
    })
}

/// Distance between vertices of different fibers from the decomposition
/// alone; `None` for vertices of one fiber.
pub fn classified_distance(dec: &StarDecomposition, u: NodeId, v: NodeId) -> Option<u32> {
    let (fu, fv) = (dec.fiber_of[u as usize], dec.fiber_of[v as usize]);
    if fu == fv {
        return None;
    }
    let dc = |w: NodeId| dec.dist_c[w as usize];
    if fu == 0 || fv == 0 {
        return Some(dc(u) + dc(v));
    }
    let (cu, cv) = (dec.is_cone(fu), dec.is_cone(fv));
    match (cu, cv) {
        (false, false) => Some(dc(u) + dc(v)),
        (false, true) | (true, false) => {
            let (pu, cv_, pf, cf) = if cu { (v, u, fv, fu) } else { (u, v, fu, fv) };
            let panels = dec.cone_panels(cf).unwrap();
            let Some(slot) = panels.iter().position(|&p| p == pf) else {
                return Some(dc(u) + dc(v));
            };
            let panel = &dec.panels[pf as usize - 1];
            let tree = panel.tree.as_ref()?;
            let g = dec.cone_gates[cv_ as usize][slot];
            let gl = dec.boundary_index[g.vertex as usize];
            let row = crate::tree::bfs_distances(tree, gl);
            dec.imprints[pu as usize]
                .iter()
                .filter(|i| !i.is_absent())
                .map(|i| i.dist + row[dec.boundary_index[i.vertex as usize] as usize] + g.dist)
                .min()
        }
        (true, true) => {
            let (pa, pb) = (dec.cone_panels(fu).unwrap(), dec.cone_panels(fv).unwrap());
            let Some((sa, &w)) = pa.iter().enumerate().find(|(_, p)| pb.contains(p)) else {
                return Some(dc(u) + dc(v));
            };
            let sb = pb.iter().position(|&p| p == w).unwrap();
            let panel = &dec.panels[w as usize - 1];
            let tree = panel.tree.as_ref()?;
            let (gu, gv) = (dec.cone_gates[u as usize][sa], dec.cone_gates[v as usize][sb]);
            let row = crate::tree::bfs_distances(tree, dec.boundary_index[gu.vertex as usize]);
            Some(gu.dist + row[dec.boundary_index[gv.vertex as usize] as usize] + gv.dist)
        }
    }
}

/// Maxima of each step over all subproblems of one recursion depth.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub depth: usize,
    pub subproblems: usize,
    pub vertices: usize,
    pub largest: usize,
    pub best: LevelCandidates,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterReport {
    pub diameter: u32,
    pub levels: Vec<LevelStats>,
}

/// Diameter of a cube-free median graph.
pub fn diameter_cube_free(g: &Graph) -> Result<u32, MedianError> {
    diameter_report(g).map(|r| r.diameter)
}

/// Diameter with per-depth statistics.
pub fn diameter_report(g: &Graph) -> Result<DiameterReport, MedianError> {
    let n = g.node_count();
    let max_depth = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let mut levels: Vec<LevelStats> = Vec::new();
    let mut diameter = 0;
    let mut queue: VecDeque<(Graph, Vec<NodeId>, usize)> = VecDeque::new();
    queue.push_back((g.clone(), (0..n as NodeId).collect(), 0));
    while let Some((h, ids, depth)) = queue.pop_front() {
        let m = h.node_count();
        if m < 2 {
            continue;
        }
        if depth > max_depth || m > n >> depth {
            return Err(MedianError::DepthExceeded { depth, n });
        }
        let c = median_centroid(&h).map_err(|e| e.relabel(&ids))?;
        let dec = star_decomposition(&h, c).map_err(|e| e.relabel(&ids))?;
        let cand = level_candidates(&dec).map_err(|e| e.relabel(&ids))?;
        diameter = diameter.max(cand.max());

        if levels.len() <= depth {
            levels.push(LevelStats { depth, ..Default::default() });
        }
        let st = &mut levels[depth];
        st.subproblems += 1;
        st.vertices += m;
        st.largest = st.largest.max(m);
        let b = &mut st.best;
        b.center_ecc = b.center_ecc.max(cand.center_ecc);
        for (slot, v) in [
            (&mut b.panels, cand.panels),
            (&mut b.separated, cand.separated),
            (&mut b.neighboring, cand.neighboring),
            (&mut b.two_neighboring, cand.two_neighboring),
        ] {
            if let Some(v) = v {
                bump(slot, v);
            }
        }

        for f in dec.fibers.iter().skip(1) {
            if f.len() >= 2 {
                let sub = h.induced(f);
                let sub_ids = f.iter().map(|&v| ids[v as usize]).collect();
                queue.push_back((sub, sub_ids, depth + 1));
            }
        }
    }
    Ok(DiameterReport { diameter, levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize, k: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..m {
            for j in 0..k {
                let v = (i * k + j) as u64;
                if j + 1 < k {
                    e.push((v, v + 1));
                }
                if i + 1 < m {
                    e.push((v, v + k as u64));
                }
            }
        }
        Graph::from_edges(m * k, &e).unwrap()
    }

    fn cube() -> Graph {
        let mut e = Vec::new();
        for v in 0..8u64 {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        Graph::from_edges(8, &e).unwrap()
    }

    #[test]
    fn recognition() {
        let p = Graph::from_tree(&Tree::path(5));
        assert!(check_median(&p) && check_cube_free(&p));
        let q = cube();
        assert!(check_median(&q));
        assert!(!check_cube_free(&q));
        let g = grid(4, 4);
        assert!(check_median(&g) && check_cube_free(&g));
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(!check_median(&c6));
    }

    #[test]
    fn centroids() {
        assert_eq!(median_centroid(&Graph::from_tree(&Tree::path(5))).unwrap(), 2);
        assert_eq!(median_centroid(&Graph::from_tree(&Tree::star(6))).unwrap(), 0);
        assert_eq!(median_centroid(&grid(5, 7)).unwrap(), 2 * 7 + 3);
    }

    #[test]
    fn grid_star() {
        let g = grid(3, 3);
        let dec = star_decomposition(&g, 4).unwrap();
        assert_eq!(dec.star.len(), 9);
        assert!(dec.fibers.iter().all(|f| f.len() == 1));
        for corner in [0, 2, 6, 8] {
            assert_eq!(dec.depth[dec.fiber_of[corner] as usize], 2);
        }
        assert_eq!(diameter_cube_free(&g).unwrap(), 4);
    }

    #[test]
    fn path_star() {
        let g = Graph::from_tree(&Tree::path(5));
        let dec = star_decomposition(&g, 2).unwrap();
        assert_eq!(dec.fibers[1], vec![0, 1]);
        assert_eq!(dec.fibers[2], vec![3, 4]);
        assert_eq!(dec.roles.len(), 3);
        assert_eq!(diameter_cube_free(&g).unwrap(), 4);
    }

    #[test]
    fn boundary_dp_pair() {
        let t = Tree::path(2);
        let out = boundary_dp(&t, &[3.0, 5.0], &[1, 2], &[NEG, NEG]);
        assert_eq!(out[0], BoundaryEcc { e1: 6.0, s: 2, e2: 3.0 });
        assert_eq!(out[1], BoundaryEcc { e1: 5.0, s: 2, e2: 4.0 });
        let single = boundary_dp(&Tree::singleton(), &[2.0], &[7], &[1.0]);
        assert_eq!(single[0], BoundaryEcc { e1: 2.0, s: 7, e2: 1.0 });
    }

    #[test]
    fn grids() {
        for m in 1..8 {
            assert_eq!(diameter_cube_free(&grid(m, m)).unwrap(), 2 * (m as u32 - 1));
        }
        assert_eq!(diameter_cube_free(&grid(3, 9)).unwrap(), 10);
    }

    #[test]
    fn cube_rejected() {
        assert!(diameter_cube_free(&cube()).is_err());
    }
}
