//! All eccentricities of a finite metric space from its embedding into a
//! system, Cartesian product or strong product of trees, and the eccentricity
//! of a `k`-subset of tree nodes through the min index.

use alloc::vec;
use alloc::vec::Vec;

use crate::odot::{MaxIndex, MinIndex, OdotError, PlusIndex, TreeSystem};
use crate::tree::{NodeId, Tree};

/// How distances in the host combine per-tree distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingMode {
    /// Minimum over trees.
    System,
    /// Sum over trees.
    Cartesian,
    /// Maximum over trees.
    Strong,
}

/// Declared quality of an embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quality {
    Exact,
    /// `d(x,y) / a <= host distance <= a * d(x,y)`, with `a >= 1`.
    Distortion(f64),
    /// `|host distance - d(x,y)| <= b`, with `b >= 0`.
    Stretch(f64),
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub system: TreeSystem,
    /// Image of space point `x` is `points[x]`.
    pub points: Vec<Vec<NodeId>>,
    pub mode: EmbeddingMode,
    pub quality: Quality,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EccReport {
    /// Host eccentricity of each image within the image set.
    pub raw: Vec<i64>,
    /// Estimate of each eccentricity: `a * raw` for distortion `a`,
    /// `raw + b` for stretch `b`, `raw` when exact.
    pub estimate: Vec<f64>,
    pub diameter_raw: i64,
    pub radius_raw: i64,
    pub diameter_estimate: f64,
    pub radius_estimate: f64,
}

impl Embedding {
    pub fn new(
        system: TreeSystem,
        points: Vec<Vec<NodeId>>,
        mode: EmbeddingMode,
        quality: Quality,
    ) -> Result<Self, OdotError> {
        if points.is_empty() {
            return Err(OdotError::EmptyPointSet);
        }
        for (i, p) in points.iter().enumerate() {
            system.check_point(p, Some(i))?;
        }
        Ok(Embedding { system, points, mode, quality })
    }

    fn correct(&self, raw: i64) -> f64 {
        match self.quality {
            Quality::Exact => raw as f64,
            Quality::Distortion(a) => a * raw as f64,
            Quality::Stretch(b) => raw as f64 + b,
        }
    }
}

/// Per-point eccentricities through the index matching the embedding mode.
pub fn ecc_all(emb: &Embedding) -> Result<EccReport, OdotError> {
    let s = &emb.points;
    let raw: Vec<i64> = match emb.mode {
        EmbeddingMode::System => {
            let idx = MinIndex::build(&emb.system, s)?;
            s.iter()
                .map(|p| idx.query(p).map(|r| r.map_or(0, |x| x.0)))
                .collect::<Result<_, _>>()?
        }
        EmbeddingMode::Cartesian => {
            let idx = PlusIndex::build(&emb.system, s)?;
            s.iter()
                .map(|p| idx.query(p).map(|r| r.map_or(0, |x| x.0)))
                .collect::<Result<_, _>>()?
        }
        EmbeddingMode::Strong => {
            let idx = MaxIndex::build(&emb.system, s)?;
            s.iter().map(|p| idx.query(p)).collect::<Result<_, _>>()?
        }
    };
    let estimate: Vec<f64> = raw.iter().map(|&r| emb.correct(r)).collect();
    let diameter_raw = raw.iter().copied().max().unwrap_or(0);
    let radius_raw = raw.iter().copied().min().unwrap_or(0);
    Ok(EccReport {
        diameter_estimate: emb.correct(diameter_raw),
        radius_estimate: emb.correct(radius_raw),
        raw,
        estimate,
        diameter_raw,
        radius_raw,
    })
}

/// Eccentricity of `k`-subsets of a fixed tree: `k` copies of the tree with
/// the diagonal as point set, queried through the min index.
pub struct SubsetViaMin {
    k: usize,
    index: MinIndex,
}

impl SubsetViaMin {
    pub fn build(t: &Tree, k: usize) -> Result<Self, OdotError> {
        if k == 0 {
            return Err(OdotError::EmptySystem);
        }
        let sys = TreeSystem::new(vec![t.clone(); k])?;
        let diagonal: Vec<Vec<NodeId>> =
            (0..t.node_count() as NodeId).map(|v| vec![v; k]).collect();
        Ok(SubsetViaMin {
            k,
            index: MinIndex::build(&sys, &diagonal)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `max_v min_{u in U} d(v, u)` for `|U| = k` (order irrelevant).
    pub fn query(&self, u: &[NodeId]) -> Result<i64, OdotError> {
        Ok(self.index.query(u)?.map_or(0, |x| x.0))
    }
}

/// One-shot form of [`SubsetViaMin`].
pub fn subset_ecc_via_min(t: &Tree, u: &[NodeId]) -> Result<i64, OdotError> {
    SubsetViaMin::build(t, u.len())?.query(u)
}
