//! Static range-argmax in constant time after linear-time build.
//!
//! Each 64-element block keeps, for every position, a bitmask of the right
//! spine of the Cartesian tree of the block prefix ending there; the lowest
//! spine position at or after the query start is the in-block argmax. Block
//! maxima go into a sparse table, which has `O(n / 64 * log n)` entries.

use alloc::vec::Vec;

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct CartesianRmq<T> {
    // (value, spine mask); a short query reads one or two neighbouring cells.
    cells: Vec<(T, u64)>,
    // sparse[k][b] = argmax over blocks b .. b + 2^k
    sparse: Vec<Vec<u32>>,
}

impl<T: PartialOrd + Copy> CartesianRmq<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self::from_cells(values.into_iter().map(|v| (v, 0)).collect())
    }

    /// Builds from `(value, _)` pairs, overwriting the second halves.
    pub(crate) fn from_cells(mut cells: Vec<(T, u64)>) -> Self {
        let n = cells.len();
        let mut block_best: Vec<u32> = Vec::with_capacity(n.div_ceil(BLOCK));
        let mut start = 0;
        while start < n {
            let end = (start + BLOCK).min(n);
            let mut mask: u64 = 0;
            for i in start..end {
                let rel = i - start;
                while mask != 0 {
                    let top = 63 - mask.leading_zeros() as usize;
                    if cells[start + top].0 > cells[i].0 {
                        break;
                    }
                    mask &= !(1u64 << top);
                }
                mask |= 1u64 << rel;
                cells[i].1 = mask;
            }
            block_best.push((start + mask.trailing_zeros() as usize) as u32);
            start = end;
        }

        let blocks = block_best.len();
        let mut sparse = Vec::new();
        sparse.push(block_best);
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = sparse.last().unwrap();
            let mut level = Vec::with_capacity(blocks - 2 * width + 1);
            for b in 0..=blocks - 2 * width {
                let (x, y) = (prev[b], prev[b + width]);
                level.push(if cells[y as usize].0 > cells[x as usize].0 { y } else { x });
            }
            sparse.push(level);
            width *= 2;
        }
        CartesianRmq { cells, sparse }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    #[inline]
    pub fn value(&self, i: usize) -> T {
        self.cells[i].0
    }

    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> usize {
        let base = lo - lo % BLOCK;
        let m = self.cells[hi].1 & (!0u64 << (lo - base));
        base + m.trailing_zeros() as usize
    }

    #[inline]
    fn better(&self, a: usize, b: usize) -> usize {
        if self.cells[b].0 > self.cells[a].0 {
            b
        } else {
            a
        }
    }

    /// Index in `lo..=hi` holding a maximum value, or `None` when `lo > hi`.
    ///
    /// Panics if `hi` is out of bounds.
    #[inline]
    pub fn argmax(&self, lo: usize, hi: usize) -> Option<usize> {
        if lo > hi {
            return None;
        }
        assert!(hi < self.cells.len(), "range end {hi} out of bounds");
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return Some(self.in_block(lo, hi));
        }
        let mut best = self.in_block(lo, bl * BLOCK + BLOCK - 1);
        best = self.better(best, self.in_block(bh * BLOCK, hi));
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let x = self.sparse[k][a] as usize;
            let y = self.sparse[k][b + 1 - (1 << k)] as usize;
            best = self.better(best, self.better(x, y));
        }
        Some(best)
    }

    /// Maximum over `lo..=hi` with its index.
    #[inline]
    pub fn max(&self, lo: usize, hi: usize) -> Option<(usize, T)> {
        self.argmax(lo, hi).map(|i| (i, self.cells[i].0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scan_max<T: PartialOrd + Copy>(v: &[T], lo: usize, hi: usize) -> T {
        let mut best = v[lo];
        for &x in &v[lo..=hi] {
            if x > best {
                best = x;
            }
        }
        best
    }

    #[test]
    fn empty_interval() {
        let r = CartesianRmq::new(vec![1, 2, 3]);
        assert_eq!(r.argmax(2, 1), None);
    }

    #[test]
    fn exhaustive_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in 1..=64 {
            let v: Vec<i32> = (0..len).map(|_| rng.gen_range(-5..5)).collect();
            let r = CartesianRmq::new(v.clone());
            for lo in 0..len {
                for hi in lo..len {
                    let i = r.argmax(lo, hi).unwrap();
                    assert!((lo..=hi).contains(&i));
                    assert_eq!(v[i], scan_max(&v, lo, hi));
                }
            }
        }
    }

    #[test]
    fn random_long() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in [65usize, 128, 129, 1000, 5000] {
            let v: Vec<f64> = (0..len).map(|_| rng.gen_range(-100..100) as f64).collect();
            let r = CartesianRmq::new(v.clone());
            for _ in 0..2000 {
                let a = rng.gen_range(0..len);
                let b = rng.gen_range(0..len);
                let (lo, hi) = (a.min(b), a.max(b));
                let i = r.argmax(lo, hi).unwrap();
                assert!((lo..=hi).contains(&i));
                assert_eq!(v[i], scan_max(&v, lo, hi));
            }
        }
    }

    #[test]
    fn infinities() {
        let v = vec![f64::NEG_INFINITY, -1.0, f64::NEG_INFINITY];
        let r = CartesianRmq::new(v);
        assert_eq!(r.max(0, 2), Some((1, -1.0)));
        assert_eq!(r.max(2, 2).unwrap().1, f64::NEG_INFINITY);
    }
}
