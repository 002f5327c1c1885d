//! Exact branch-and-bound solvers for the combinatorial rank measures.
//!
//! Every solver returns an [`ExactResult`]: a proven value when the search
//! completes, or an honest `[lower, upper]` interval when the budget runs
//! out. Witnesses are always validated against the host before they are
//! returned.

mod binary;
mod boolean;
mod export;
mod fooling;
mod uniform;

pub use binary::binary_rank;
pub use boolean::boolean_rank;
pub use export::{export_exact_cover, ExactCoverInstance, ExactCoverSet};
pub use fooling::{fooling_number, is_fooling_set};
pub use uniform::{enumerate_one_sets, uniform_cover_number, ONE_SET_WORK_LIMIT};

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matrix::{Entry, PartialMatrix};
use crate::rect::{Cover, Partition, Rect};

/// Largest number of maximal rectangles the cover solvers will enumerate.
pub const MAX_CANDIDATES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub threads: usize,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64, threads: usize) -> Self {
        Self { max_nodes, max_seconds, threads: threads.max(1) }
    }

    /// Single-threaded, deterministic variant of `self`.
    pub fn sequential(self) -> Self {
        Self { threads: 1, ..self }
    }
}

impl Default for SearchBudget {
    /// 10^7 nodes, 60 seconds, all available cores.
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        Self::new(10_000_000, 60.0, threads)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Binary,
    Boolean,
    UniformCover,
    Fooling,
    Nonnegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proved,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Partition { rects: Vec<Rect> },
    Cover { rects: Vec<Rect> },
    UniformCover { multiplicity: usize, rects: Vec<Rect> },
    Fooling { cells: Vec<(usize, usize)> },
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::Partition { rects } | Witness::Cover { rects } | Witness::UniformCover { rects, .. } => {
                rects.len()
            }
            Witness::Fooling { cells } => cells.len(),
        }
    }

    /// Checks the witness against the invariants of its kind on `host`.
    pub fn validate(&self, host: &PartialMatrix) -> Result<()> {
        match self {
            Witness::Partition { rects } => Partition::new(host.clone(), rects.clone()).map(drop),
            Witness::Cover { rects } => Cover::new(host.clone(), rects.clone()).map(drop),
            Witness::UniformCover { multiplicity, rects } => validate_uniform(host, *multiplicity, rects),
            Witness::Fooling { cells } => {
                if is_fooling_set(host, cells) {
                    Ok(())
                } else {
                    Err(Error::Precondition("cells do not form a fooling set".into()))
                }
            }
        }
    }
}

fn validate_uniform(host: &PartialMatrix, t: usize, rects: &[Rect]) -> Result<()> {
    if t == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    for (i, r) in rects.iter().enumerate() {
        if !r.within(host) || !r.avoids_zeros(host) {
            return Err(Error::Precondition(format!("rectangle {i} is out of bounds or covers a 0")));
        }
    }
    for (r, c) in host.ones() {
        let k = rects.iter().filter(|q| q.contains(r, c)).count();
        if k != t {
            return Err(Error::Precondition(format!("one at ({r},{c}) is covered {k} times, expected {t}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub measure: Measure,
    pub lower: usize,
    pub upper: usize,
    pub value: Option<usize>,
    pub witness: Option<Witness>,
    pub status: Status,
    pub nodes: u64,
}

impl ExactResult {
    /// Builds a result; the interval closing is what makes it proved.
    pub fn new(measure: Measure, lower: usize, upper: usize, witness: Option<Witness>, nodes: u64) -> Self {
        debug_assert!(lower <= upper, "{measure:?}: lower {lower} > upper {upper}");
        let proved = lower == upper;
        Self {
            measure,
            lower,
            upper,
            value: proved.then_some(lower),
            witness,
            status: if proved { Status::Proved } else { Status::BudgetExhausted },
            nodes,
        }
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    /// Checks the internal invariants and the witness against `host`.
    pub fn validate(&self, host: &PartialMatrix) -> Result<()> {
        if self.lower > self.upper {
            return Err(Error::Precondition(format!("lower {} > upper {}", self.lower, self.upper)));
        }
        if self.value.is_some() != (self.lower == self.upper && self.status == Status::Proved) {
            return Err(Error::Precondition("value/status mismatch".into()));
        }
        if let Some(w) = &self.witness {
            w.validate(host)?;
            let expected = if self.measure == Measure::Fooling { self.lower } else { self.upper };
            if w.size() != expected {
                return Err(Error::Precondition(format!(
                    "witness size {} does not match bound {expected}",
                    w.size()
                )));
            }
        }
        Ok(())
    }
}

/// Node and wall-clock accounting shared by the threads of one search.
pub(crate) struct Control {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
    exhausted: AtomicBool,
}

impl Control {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let secs = if budget.max_seconds.is_finite() && budget.max_seconds >= 0.0 {
            budget.max_seconds.min(1e9)
        } else {
            1e9
        };
        Self {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + Duration::from_secs_f64(secs),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    pub(crate) fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes || (n.is_multiple_of(256) && Instant::now() >= self.deadline) {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Best solution found so far, shared across subtrees. For minimisation
/// `best` is the size of the incumbent; for maximisation it is the size of
/// the largest found.
pub(crate) struct Incumbent<W> {
    best: AtomicUsize,
    witness: Mutex<Option<W>>,
}

impl<W> Incumbent<W> {
    pub(crate) fn new(best: usize, witness: Option<W>) -> Self {
        Self { best: AtomicUsize::new(best), witness: Mutex::new(witness) }
    }

    pub(crate) fn best(&self) -> usize {
        self.best.load(Ordering::SeqCst)
    }

    /// Installs `w` if `size` beats the incumbent under `better`.
    pub(crate) fn offer(&self, size: usize, better: impl Fn(usize, usize) -> bool, w: impl FnOnce() -> W) {
        let mut guard = self.witness.lock().unwrap();
        if better(size, self.best.load(Ordering::SeqCst)) {
            self.best.store(size, Ordering::SeqCst);
            *guard = Some(w());
        }
    }

    pub(crate) fn into_inner(self) -> (usize, Option<W>) {
        (self.best.into_inner(), self.witness.into_inner().unwrap())
    }
}

/// Runs independent subtrees, in order when `threads == 1`, otherwise on a
/// dedicated work-stealing pool.
pub(crate) fn run_subtrees<S: Send>(subtrees: Vec<S>, threads: usize, f: impl Fn(S) + Sync + Send) {
    if threads <= 1 || subtrees.len() <= 1 {
        subtrees.into_iter().for_each(f);
        return;
    }
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| subtrees.into_par_iter().for_each(&f)),
        Err(_) => subtrees.into_iter().for_each(f),
    }
}

/// Dense indexing of the One cells of a matrix together with the fooling
/// relation between them.
pub(crate) struct OneIndex {
    pub cells: Vec<(usize, usize)>,
    /// `fool[i]` = Ones that form a fooling pair with One `i`.
    pub fool: Vec<BitSet>,
}

impl OneIndex {
    pub(crate) fn new(m: &PartialMatrix) -> Self {
        let cells: Vec<(usize, usize)> = m.ones().collect();
        let fool = cells
            .iter()
            .map(|&(a, b)| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(c, d))| m.get(a, d) == Entry::Zero || m.get(c, b) == Entry::Zero)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Self { cells, fool }
    }

    pub(crate) fn len(&self) -> usize {
        self.cells.len()
    }

    /// Greedy fooling set inside `pool`: repeatedly takes the candidate with
    /// most fooling partners among the remaining candidates. Returns the
    /// chosen indices.
    pub(crate) fn greedy_fooling(&self, pool: &BitSet) -> Vec<usize> {
        let mut cand = pool.clone();
        let mut chosen = Vec::new();
        while let Some(v) = cand.iter().max_by_key(|&v| (self.fool[v].intersection_len(&cand), usize::MAX - v)) {
            chosen.push(v);
            cand.intersect_with(&self.fool[v]);
        }
        chosen
    }

    /// Greedy weighted fooling set: maximises the sum of `weight` over a
    /// pairwise-fooling subset of `pool` (heuristically).
    pub(crate) fn greedy_weighted_fooling(&self, pool: &BitSet, weight: &[usize]) -> usize {
        let mut cand = pool.clone();
        let mut total = 0;
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (weight[v], self.fool[v].intersection_len(&cand), usize::MAX - v))
        {
            total += weight[v];
            cand.intersect_with(&self.fool[v]);
        }
        total
    }
}
