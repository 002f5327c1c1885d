//! Binary rank as an exact-cover instance, for external solvers.
//!
//! The universe is the One cells; there is one set per distinct One-set of
//! a Zero-free rectangle. A minimum exact cover is a minimum partition.

use serde::{Deserialize, Serialize};

use super::enumerate_one_sets;
use crate::error::{Error, Result};
use crate::matrix::PartialMatrix;
use crate::rect::Rect;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCoverSet {
    pub rect: Rect,
    /// Indices into the universe.
    pub covers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCoverInstance {
    pub universe: Vec<(usize, usize)>,
    pub sets: Vec<ExactCoverSet>,
}

impl ExactCoverInstance {
    /// Sizes of an exact cover by set indices; `None` if `chosen` is not one.
    pub fn check(&self, chosen: &[usize]) -> Option<usize> {
        let mut hit = vec![0u32; self.universe.len()];
        for &q in chosen {
            for &i in &self.sets.get(q)?.covers {
                hit[i] += 1;
            }
        }
        hit.iter().all(|&h| h == 1).then_some(chosen.len())
    }
}

/// Builds the instance. Fails if there are too many rectangles to list.
pub fn export_exact_cover(m: &PartialMatrix, work_limit: u64) -> Result<ExactCoverInstance> {
    let universe: Vec<(usize, usize)> = m.ones().collect();
    let rects = enumerate_one_sets(m, work_limit)
        .ok_or_else(|| Error::Unsupported("too many rectangles to enumerate".into()))?;
    let sets = rects
        .into_iter()
        .map(|rect| {
            let covers =
                universe.iter().enumerate().filter(|(_, &(r, c))| rect.contains(r, c)).map(|(i, _)| i).collect();
            ExactCoverSet { rect, covers }
        })
        .collect();
    Ok(ExactCoverInstance { universe, sets })
}
