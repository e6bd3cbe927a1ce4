//! Static multi-level range tree answering box range-maximum queries.
//!
//! Level `j` sorts its points by coordinate `j` and hangs, below every
//! sufficiently large node of an implicit segment tree, an associated
//! structure over coordinate `j + 1`. The last level answers with a
//! constant-time range argmax. Nodes with at most [`LEAF_SIZE`] points keep
//! no associated structure and are scanned.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rmq::CartesianRmq;

/// Node size at or below which points are scanned instead of indexed.
pub const LEAF_SIZE: usize = 16;

/// A closed integer interval; `i64::MIN` / `i64::MAX` stand for `-inf` / `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: i64::MIN, hi: i64::MAX };

    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(a: i64) -> Self {
        Interval { lo: a, hi: a }
    }

    pub fn at_most(a: i64) -> Self {
        Interval { lo: i64::MIN, hi: a }
    }

    pub fn at_least(a: i64) -> Self {
        Interval { lo: a, hi: i64::MAX }
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// Per-coordinate constraint of a constrained query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordConstraint {
    Any,
    Eq(i64),
    AtMost(i64),
    NotEq(i64),
    /// Both values excluded; they must differ.
    NotIn(i64, i64),
}

impl CoordConstraint {
    pub fn admits(&self, x: i64) -> bool {
        match *self {
            CoordConstraint::Any => true,
            CoordConstraint::Eq(a) => x == a,
            CoordConstraint::AtMost(a) => x <= a,
            CoordConstraint::NotEq(a) => x != a,
            CoordConstraint::NotIn(a, b) => x != a && x != b,
        }
    }

    /// Disjoint intervals whose union is the admitted set. `NotEq` yields two
    /// and `NotIn` three, even when some of them are empty.
    pub fn intervals(&self) -> Vec<Interval> {
        match *self {
            CoordConstraint::Any => vec![Interval::ALL],
            CoordConstraint::Eq(a) => vec![Interval::point(a)],
            CoordConstraint::AtMost(a) => vec![Interval::at_most(a)],
            CoordConstraint::NotEq(a) => vec![below(a), above(a)],
            CoordConstraint::NotIn(a, b) => {
                let (a, b) = (a.min(b), a.max(b));
                vec![below(a), Interval::new(a.saturating_add(1), b.saturating_sub(1)), above(b)]
            }
        }
    }
}

fn below(a: i64) -> Interval {
    if a == i64::MIN {
        Interval::new(0, -1)
    } else {
        Interval::at_most(a - 1)
    }
}

fn above(a: i64) -> Interval {
    if a == i64::MAX {
        Interval::new(0, -1)
    } else {
        Interval::at_least(a + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeTreeError {
    DimensionMismatch { point: usize, expected: usize, got: usize },
    ZeroDimension,
    InvalidConstraint { coord: usize },
}

impl fmt::Display for RangeTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RangeTreeError::DimensionMismatch { point, expected, got } => write!(
                f,
                "point {point} has {got} coordinates, structure dimension is {expected}"
            ),
            RangeTreeError::ZeroDimension => write!(f, "dimension must be at least 1"),
            RangeTreeError::InvalidConstraint { coord } => {
                write!(f, "constraint on coordinate {coord} excludes the same value twice")
            }
        }
    }
}

impl core::error::Error for RangeTreeError {}

/// A point with a value and a caller-defined witness.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuedPoint<V, P> {
    pub coords: Vec<i64>,
    pub value: V,
    pub payload: P,
}

enum Level {
    Last {
        keys: Vec<i64>,
        order: Vec<u32>,
        rmq: CartesianRmq<Slot>,
    },
    Inner {
        keys: Vec<i64>,
        order: Vec<u32>,
        // Implicit segment tree: node i covers a range, children 2i+1, 2i+2.
        assoc: Vec<Option<Box<Level>>>,
    },
}

/// Value rank used by the last level; ties are irrelevant to correctness.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug)]
struct Slot(u32);

pub struct RangeTree<V, P> {
    dim: usize,
    coords: Vec<i64>,
    values: Vec<V>,
    payloads: Vec<P>,
    // rank[i]: position of point i in ascending value order
    rank: Vec<u32>,
    root: Option<Level>,
}

impl<V: PartialOrd + Copy, P: Copy> RangeTree<V, P> {
    pub fn build(points: Vec<ValuedPoint<V, P>>, dim: usize) -> Result<Self, RangeTreeError> {
        if dim == 0 {
            return Err(RangeTreeError::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        let mut values = Vec::with_capacity(points.len());
        let mut payloads = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.coords.len() != dim {
                return Err(RangeTreeError::DimensionMismatch {
                    point: i,
                    expected: dim,
                    got: p.coords.len(),
                });
            }
            coords.extend_from_slice(&p.coords);
            values.push(p.value);
            payloads.push(p.payload);
        }
        Ok(Self::from_parts(dim, coords, values, payloads))
    }

    /// Builds from a flat row-major coordinate array (`dim` entries per point).
    pub fn from_parts(dim: usize, coords: Vec<i64>, values: Vec<V>, payloads: Vec<P>) -> Self {
        assert!(dim > 0);
        assert_eq!(coords.len(), values.len() * dim);
        assert_eq!(values.len(), payloads.len());
        let n = values.len();
        let mut by_value: Vec<u32> = (0..n as u32).collect();
        by_value.sort_by(|&a, &b| {
            values[a as usize]
                .partial_cmp(&values[b as usize])
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        let mut rank = vec![0u32; n];
        for (r, &i) in by_value.iter().enumerate() {
            rank[i as usize] = r as u32;
        }
        let mut tree = RangeTree {
            dim,
            coords,
            values,
            payloads,
            rank,
            root: None,
        };
        if n > 0 {
            let all: Vec<u32> = (0..n as u32).collect();
            tree.root = Some(tree.build_level(all, 0));
        }
        tree
    }

    #[inline]
    fn coord(&self, i: u32, j: usize) -> i64 {
        self.coords[i as usize * self.dim + j]
    }

    fn build_level(&self, mut order: Vec<u32>, j: usize) -> Level {
        order.sort_unstable_by_key(|&i| self.coord(i, j));
        let keys: Vec<i64> = order.iter().map(|&i| self.coord(i, j)).collect();
        if j + 1 == self.dim {
            let slots = order.iter().map(|&i| Slot(self.rank[i as usize])).collect();
            return Level::Last {
                keys,
                order,
                rmq: CartesianRmq::new(slots),
            };
        }
        let n = order.len();
        let mut assoc: Vec<Option<Box<Level>>> = Vec::new();
        if n > LEAF_SIZE {
            assoc.resize_with(4 * n / LEAF_SIZE + 4, || None);
            self.build_nodes(&order, j, 0, 0, n, &mut assoc);
        }
        Level::Inner { keys, order, assoc }
    }

    fn build_nodes(
        &self,
        order: &[u32],
        j: usize,
        node: usize,
        a: usize,
        b: usize,
        assoc: &mut Vec<Option<Box<Level>>>,
    ) {
        if b - a <= LEAF_SIZE {
            return;
        }
        if node >= assoc.len() {
            assoc.resize_with(node + 1, || None);
        }
        assoc[node] = Some(Box::new(self.build_level(order[a..b].to_vec(), j + 1)));
        let mid = (a + b) / 2;
        self.build_nodes(order, j, 2 * node + 1, a, mid, assoc);
        self.build_nodes(order, j, 2 * node + 2, mid, b, assoc);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, i: usize) -> (&[i64], V, P) {
        (
            &self.coords[i * self.dim..(i + 1) * self.dim],
            self.values[i],
            self.payloads[i],
        )
    }

    /// A point inside `bx` with maximum value, as `(value, payload)`.
    pub fn query_box(&self, bx: &[Interval]) -> Option<(V, P)> {
        assert_eq!(bx.len(), self.dim, "box dimension mismatch");
        if bx.iter().any(Interval::is_empty) {
            return None;
        }
        let root = self.root.as_ref()?;
        self.query_level(root, 0, bx)
            .map(|i| (self.values[i as usize], self.payloads[i as usize]))
    }

    fn better(&self, a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if self.rank[y as usize] > self.rank[x as usize] { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn inside(&self, i: u32, from: usize, bx: &[Interval]) -> bool {
        (from..self.dim).all(|j| bx[j].contains(self.coord(i, j)))
    }

    fn scan(&self, ids: &[u32], from: usize, bx: &[Interval]) -> Option<u32> {
        let mut best = None;
        for &i in ids {
            if self.inside(i, from, bx) {
                best = self.better(best, Some(i));
            }
        }
        best
    }

    fn query_level(&self, level: &Level, j: usize, bx: &[Interval]) -> Option<u32> {
        let (keys, order) = match level {
            Level::Last { keys, order, .. } | Level::Inner { keys, order, .. } => (keys, order),
        };
        let lo = keys.partition_point(|&k| k < bx[j].lo);
        let hi = keys.partition_point(|&k| k <= bx[j].hi);
        if lo >= hi {
            return None;
        }
        match level {
            Level::Last { rmq, .. } => rmq.argmax(lo, hi - 1).map(|p| order[p]),
            Level::Inner { assoc, .. } => {
                if order.len() <= LEAF_SIZE {
                    return self.scan(&order[lo..hi], j + 1, bx);
                }
                self.query_nodes(order, assoc, j, bx, 0, 0, order.len(), lo, hi)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn query_nodes(
        &self,
        order: &[u32],
        assoc: &[Option<Box<Level>>],
        j: usize,
        bx: &[Interval],
        node: usize,
        a: usize,
        b: usize,
        lo: usize,
        hi: usize,
    ) -> Option<u32> {
        if hi <= a || b <= lo {
            return None;
        }
        if b - a <= LEAF_SIZE {
            return self.scan(&order[a.max(lo)..b.min(hi)], j + 1, bx);
        }
        if lo <= a && b <= hi {
            let sub = assoc[node].as_ref().expect("associated structure present");
            return self.query_level(sub, j + 1, bx);
        }
        let mid = (a + b) / 2;
        let left = self.query_nodes(order, assoc, j, bx, 2 * node + 1, a, mid, lo, hi);
        let right = self.query_nodes(order, assoc, j, bx, 2 * node + 2, mid, b, lo, hi);
        self.better(left, right)
    }

    /// Best point satisfying every per-coordinate constraint.
    ///
    /// Small structures are filtered directly; otherwise the constraints are
    /// expanded into boxes (see [`expand_constraints`]) and the best box
    /// answer is returned.
    pub fn query_constrained(
        &self,
        cons: &[CoordConstraint],
    ) -> Result<Option<(V, P)>, RangeTreeError> {
        assert_eq!(cons.len(), self.dim, "constraint dimension mismatch");
        validate(cons)?;
        if self.len() <= LEAF_SIZE {
            let mut best: Option<u32> = None;
            for i in 0..self.len() as u32 {
                if (0..self.dim).all(|j| cons[j].admits(self.coord(i, j))) {
                    best = self.better(best, Some(i));
                }
            }
            return Ok(best.map(|i| (self.values[i as usize], self.payloads[i as usize])));
        }
        let mut best: Option<(V, P)> = None;
        for_each_box(cons, |bx| {
            if let Some((v, p)) = self.query_box(bx) {
                if best.map_or(true, |(b, _)| v > b) {
                    best = Some((v, p));
                }
            }
        });
        Ok(best)
    }
}

fn validate(cons: &[CoordConstraint]) -> Result<(), RangeTreeError> {
    for (j, c) in cons.iter().enumerate() {
        if let CoordConstraint::NotIn(a, b) = c {
            if a == b {
                return Err(RangeTreeError::InvalidConstraint { coord: j });
            }
        }
    }
    Ok(())
}

fn for_each_box(cons: &[CoordConstraint], mut f: impl FnMut(&[Interval])) {
    let parts: Vec<Vec<Interval>> = cons.iter().map(CoordConstraint::intervals).collect();
    let mut pick = vec![0usize; parts.len()];
    let mut bx: Vec<Interval> = parts.iter().map(|p| p[0]).collect();
    loop {
        f(&bx);
        let mut j = 0;
        loop {
            if j == parts.len() {
                return;
            }
            pick[j] += 1;
            if pick[j] < parts[j].len() {
                bx[j] = parts[j][pick[j]];
                break;
            }
            pick[j] = 0;
            bx[j] = parts[j][0];
            j += 1;
        }
    }
}

/// All boxes a constrained query expands into: the product of the
/// per-coordinate interval splits.
pub fn expand_constraints(cons: &[CoordConstraint]) -> Result<Vec<Vec<Interval>>, RangeTreeError> {
    validate(cons)?;
    let mut out = Vec::new();
    for_each_box(cons, |bx| out.push(bx.to_vec()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample() -> RangeTree<i64, u32> {
        let pts = vec![
            ValuedPoint { coords: vec![1, 2], value: 5, payload: 0 },
            ValuedPoint { coords: vec![1, 3], value: 7, payload: 1 },
            ValuedPoint { coords: vec![2, 2], value: 1, payload: 2 },
        ];
        RangeTree::build(pts, 2).unwrap()
    }

    #[test]
    fn small_boxes() {
        let rt = sample();
        assert_eq!(rt.query_box(&[Interval::point(1), Interval::ALL]), Some((7, 1)));
        assert_eq!(rt.query_box(&[Interval::new(3, 4), Interval::point(0)]), None);
    }

    #[test]
    fn small_constraints() {
        let rt = sample();
        let c = [CoordConstraint::Eq(1), CoordConstraint::NotEq(2)];
        assert_eq!(rt.query_constrained(&c).unwrap().map(|x| x.0), Some(7));
        let c = [CoordConstraint::NotIn(1, 2), CoordConstraint::Any];
        assert_eq!(rt.query_constrained(&c).unwrap(), None);
        let c = [CoordConstraint::NotIn(1, 1), CoordConstraint::Any];
        assert!(rt.query_constrained(&c).is_err());
    }

    #[test]
    fn empty_structure() {
        let rt: RangeTree<f64, ()> = RangeTree::build(Vec::new(), 3).unwrap();
        assert_eq!(rt.query_box(&[Interval::ALL; 3]), None);
        assert!(RangeTree::<f64, ()>::build(Vec::new(), 0).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let pts = vec![ValuedPoint { coords: vec![1], value: 1.0, payload: () }];
        assert!(matches!(
            RangeTree::build(pts, 2),
            Err(RangeTreeError::DimensionMismatch { point: 0, .. })
        ));
    }

    #[test]
    fn box_counts() {
        use CoordConstraint::*;
        assert_eq!(expand_constraints(&[NotEq(1), NotEq(4), Any]).unwrap().len(), 4);
        assert_eq!(expand_constraints(&[NotIn(1, 2), NotIn(3, 9)]).unwrap().len(), 9);
        assert_eq!(expand_constraints(&[Eq(1), AtMost(2)]).unwrap().len(), 1);
    }

    fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<ValuedPoint<i64, u32>> {
        (0..n)
            .map(|i| ValuedPoint {
                coords: (0..dim).map(|_| rng.gen_range(-6..6)).collect(),
                value: rng.gen_range(-50..50),
                payload: i as u32,
            })
            .collect()
    }

    #[test]
    fn random_boxes_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(n, dim) in &[(10usize, 1usize), (64, 2), (200, 3), (500, 4)] {
            let pts = random_points(&mut rng, n, dim);
            let rt = RangeTree::build(pts.clone(), dim).unwrap();
            for _ in 0..100 {
                let bx: Vec<Interval> = (0..dim)
                    .map(|_| {
                        let a = rng.gen_range(-7..7);
                        let b = rng.gen_range(-7..7);
                        if rng.gen_bool(0.1) {
                            Interval::ALL
                        } else {
                            Interval::new(a.min(b), a.max(b))
                        }
                    })
                    .collect();
                let expect = pts
                    .iter()
                    .filter(|p| (0..dim).all(|j| bx[j].contains(p.coords[j])))
                    .map(|p| p.value)
                    .max();
                let got = rt.query_box(&bx);
                assert_eq!(got.map(|g| g.0), expect);
                if let Some((v, payload)) = got {
                    let p = &pts[payload as usize];
                    assert_eq!(p.value, v);
                    assert!((0..dim).all(|j| bx[j].contains(p.coords[j])));
                }
            }
        }
    }
}
