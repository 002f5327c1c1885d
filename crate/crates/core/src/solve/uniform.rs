//! Uniform cover number: fewest Zero-free rectangles (with repetition) that
//! cover every One the same number of times `t`, over `1 <= t <= t_max`.
//!
//! `t = 1` is exactly the binary rank. For `t >= 2` a fooling set `F`
//! forces `t * |F|` distinct rectangles, which prunes most of the search.

use std::collections::HashSet;

use super::{
    binary_rank, boolean_rank, Control, MAX_CANDIDATES, ExactResult, Incumbent, Measure, OneIndex, SearchBudget, Witness,
};
use crate::bitset::BitSet;
use crate::matrix::{Entry, PartialMatrix};
use crate::rect::{enumerate_candidate_rects_capped, Rect};

/// Work cap (subsets examined) for [`enumerate_one_sets`].
pub const ONE_SET_WORK_LIMIT: u64 = 1 << 24;

/// Every distinct set of Ones cut out by a Zero-free rectangle, each with
/// its tight rectangle (rows and columns of the set itself), in canonical
/// rectangle order. `None` if the enumeration would exceed `work_limit`.
pub fn enumerate_one_sets(m: &PartialMatrix, work_limit: u64) -> Option<Vec<Rect>> {
    let maximal = enumerate_candidate_rects_capped(m, MAX_CANDIDATES)?;
    let mut work: u64 = 0;
    for r in &maximal {
        let bits = (r.rows().len() + r.cols().len()) as u32;
        if bits >= 40 {
            return None;
        }
        work = work.saturating_add(1u64 << bits);
    }
    if work > work_limit {
        return None;
    }
    let mut seen: HashSet<Rect> = HashSet::new();
    for r in &maximal {
        let rows = r.rows().to_vec();
        let cols = r.cols().to_vec();
        for bmask in 1u64..(1 << cols.len()) {
            let b: BitSet = subset(&cols, bmask);
            // Rows of the maximal rectangle with a One inside b.
            let live: Vec<usize> =
                rows.iter().copied().filter(|&a| b.iter().any(|c| m.get(a, c) == Entry::One)).collect();
            for amask in 1u64..(1 << live.len()) {
                let a = subset(&live, amask);
                let tight_cols = b.iter().all(|c| a.iter().any(|r| m.get(r, c) == Entry::One));
                if tight_cols {
                    seen.insert(Rect::new(a, b.clone()).expect("nonempty"));
                }
            }
        }
    }
    let mut out: Vec<Rect> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

fn subset(items: &[usize], mask: u64) -> BitSet {
    items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
}

struct Search<'a> {
    idx: &'a OneIndex,
    covers: &'a [BitSet],
    by_cell: &'a [Vec<usize>],
    ctl: &'a Control,
    inc: &'a Incumbent<Vec<usize>>,
}

impl Search<'_> {
    fn dfs(&self, chosen: &mut Vec<usize>, deficit: &mut [usize], active: &mut BitSet) {
        if !self.ctl.tick() {
            return;
        }
        let best = self.inc.best();
        if active.is_empty() {
            self.inc.offer(chosen.len(), |a, b| a < b, || chosen.clone());
            return;
        }
        if chosen.len() + self.idx.greedy_weighted_fooling(active, deficit) >= best {
            return;
        }
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for x in active.iter() {
            let opts: Vec<usize> =
                self.by_cell[x].iter().copied().filter(|&q| self.covers[q].is_subset(active)).collect();
            if opts.is_empty() {
                return;
            }
            if pick.as_ref().is_none_or(|(_, o)| opts.len() < o.len()) {
                pick = Some((x, opts));
            }
        }
        let (_, mut opts) = pick.expect("active is nonempty");
        opts.sort_by_key(|&q| (std::cmp::Reverse(self.covers[q].len()), q));
        for q in opts {
            if self.ctl.exhausted() {
                return;
            }
            let saved = active.clone();
            for i in self.covers[q].iter() {
                deficit[i] -= 1;
                if deficit[i] == 0 {
                    active.remove(i);
                }
            }
            chosen.push(q);
            self.dfs(chosen, deficit, active);
            chosen.pop();
            for i in self.covers[q].iter() {
                deficit[i] += 1;
            }
            *active = saved;
        }
    }
}

/// Minimum uniform cover size over multiplicities `1..=t_max`. The
/// witness records the multiplicity that achieves the upper bound.
pub fn uniform_cover_number(m: &PartialMatrix, t_max: usize, budget: &SearchBudget) -> ExactResult {
    let t_max = t_max.max(1);
    let binary = binary_rank(m, budget);
    let boolean = boolean_rank(m, budget);
    let mut nodes = binary.nodes + boolean.nodes;
    let floor = boolean.lower;
    let start = match binary.witness {
        Some(Witness::Partition { rects }) => rects,
        _ => unreachable!("binary rank always returns a partition"),
    };
    let mut best = binary.upper;
    let mut witness = Witness::UniformCover { multiplicity: 1, rects: start };
    let mut rest_complete = true;

    let idx = OneIndex::new(m);
    let fool = idx.greedy_fooling(&BitSet::full(idx.len())).len();
    if floor < best && t_max >= 2 {
        match enumerate_one_sets(m, ONE_SET_WORK_LIMIT) {
            None => rest_complete = false,
            Some(rects) => {
                let mut by_cell = vec![Vec::new(); idx.len()];
                let covers: Vec<BitSet> = rects
                    .iter()
                    .enumerate()
                    .map(|(q, rect)| {
                        idx.cells
                            .iter()
                            .enumerate()
                            .filter(|(_, &(r, c))| rect.contains(r, c))
                            .map(|(i, _)| {
                                by_cell[i].push(q);
                                i
                            })
                            .collect()
                    })
                    .collect();
                let ctl = Control::new(budget);
                for t in 2..=t_max {
                    if t * fool >= best {
                        continue;
                    }
                    let inc = Incumbent::new(best, None);
                    let search = Search { idx: &idx, covers: &covers, by_cell: &by_cell, ctl: &ctl, inc: &inc };
                    let mut deficit = vec![t; idx.len()];
                    let mut active = BitSet::full(idx.len());
                    search.dfs(&mut Vec::new(), &mut deficit, &mut active);
                    let (found, chosen) = inc.into_inner();
                    if let Some(chosen) = chosen {
                        best = found;
                        let mut rs: Vec<Rect> = chosen.into_iter().map(|q| rects[q].clone()).collect();
                        rs.sort();
                        witness = Witness::UniformCover { multiplicity: t, rects: rs };
                    }
                    if ctl.exhausted() {
                        rest_complete = false;
                        break;
                    }
                }
                nodes += ctl.nodes();
            }
        }
    }

    let rest_lower = if rest_complete { best } else { floor };
    let lower = floor.max(binary.lower.min(rest_lower)).min(best);
    ExactResult::new(Measure::UniformCover, lower, best, Some(witness), nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(m: &PartialMatrix, t_max: usize) -> ExactResult {
        let r = uniform_cover_number(m, t_max, &SearchBudget::default().sequential());
        r.validate(m).unwrap();
        r
    }

    #[test]
    fn trivial_values() {
        assert_eq!(solve(&PartialMatrix::all_ones(3, 3), 4).value, Some(1));
        assert_eq!(solve(&PartialMatrix::identity(4), 3).value, Some(4));
    }

    #[test]
    fn one_sets_of_small_matrices() {
        let sets = enumerate_one_sets(&PartialMatrix::all_ones(2, 2), 1 << 20).unwrap();
        assert_eq!(sets.len(), 9);
        let sets = enumerate_one_sets(&PartialMatrix::identity(3), 1 << 20).unwrap();
        assert_eq!(sets.len(), 3);
        // Star-only rows are never part of a tight rectangle.
        let sets = enumerate_one_sets(&PartialMatrix::parse("1*\n**\n").unwrap(), 1 << 20).unwrap();
        assert_eq!(sets, vec![Rect::cell(0, 0)]);
        assert!(enumerate_one_sets(&PartialMatrix::all_ones(8, 8), 100).is_none());
    }

    #[test]
    fn doubling_never_beats_a_single_block() {
        let r = solve(&PartialMatrix::all_ones(2, 2), 2);
        assert_eq!(r.value, Some(1));
        assert!(matches!(r.witness, Some(Witness::UniformCover { multiplicity: 1, .. })));
    }
}
