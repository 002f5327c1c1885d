//! Boolean rank: minimum cover of the Ones by Zero-free rectangles.
//! Any cover rectangle extends to a maximal one, so the search is an exact
//! set cover over the maximal candidates.

use super::{
    binary_rank, fooling_number, run_subtrees, MAX_CANDIDATES, Control, ExactResult, Incumbent, Measure, OneIndex, SearchBudget, Witness,
};
use crate::bitset::BitSet;
use crate::matrix::{Entry, PartialMatrix};
use crate::rect::{enumerate_candidate_rects_capped, Rect};

struct Model {
    idx: OneIndex,
    rects: Vec<Rect>,
    /// One cells covered by each candidate.
    covers: Vec<BitSet>,
    /// Candidates covering each One.
    by_cell: Vec<Vec<usize>>,
}

struct Search<'a> {
    model: &'a Model,
    ctl: &'a Control,
    inc: &'a Incumbent<Vec<usize>>,
    floor: usize,
}

impl Search<'_> {
    fn children(&self, chosen: &[usize], uncovered: &BitSet) -> Option<Vec<(Vec<usize>, BitSet)>> {
        if !self.ctl.tick() {
            return None;
        }
        let best = self.inc.best();
        if best <= self.floor {
            return None;
        }
        if uncovered.is_empty() {
            self.inc.offer(chosen.len(), |a, b| a < b, || chosen.to_vec());
            return None;
        }
        if chosen.len() + self.model.idx.greedy_fooling(uncovered).len() >= best {
            return None;
        }
        let x = uncovered
            .iter()
            .min_by_key(|&x| (self.model.by_cell[x].len(), x))
            .expect("nonempty");
        let mut opts = self.model.by_cell[x].clone();
        opts.sort_by_key(|&q| (std::cmp::Reverse(self.model.covers[q].intersection_len(uncovered)), q));
        Some(
            opts.into_iter()
                .map(|q| {
                    let mut c = chosen.to_vec();
                    c.push(q);
                    (c, uncovered.difference(&self.model.covers[q]))
                })
                .collect(),
        )
    }

    fn dfs(&self, chosen: &[usize], uncovered: &BitSet) {
        if let Some(children) = self.children(chosen, uncovered) {
            for (c, u) in &children {
                if self.ctl.exhausted() {
                    return;
                }
                self.dfs(c, u);
            }
        }
    }
}

/// Minimum number of Zero-free rectangles whose union contains every One.
pub fn boolean_rank(m: &PartialMatrix, budget: &SearchBudget) -> ExactResult {
    let idx = OneIndex::new(m);
    let n = idx.len();
    if n == 0 {
        return ExactResult::new(Measure::Boolean, 0, 0, Some(Witness::Cover { rects: vec![] }), 0);
    }
    let fool = fooling_number(m, budget);
    let floor = fool.lower;
    let Some(rects) = enumerate_candidate_rects_capped(m, MAX_CANDIDATES) else {
        // Too many maximal rectangles: fall back to the rows (or columns)
        // as a cover and report the interval.
        let rows: Vec<Rect> = (0..m.n_rows())
            .filter_map(|r| Rect::new(BitSet::singleton(r), m.row_set(r, |e| e == Entry::One)).ok())
            .collect();
        let cols: Vec<Rect> = (0..m.n_cols())
            .filter_map(|c| Rect::new(m.col_set(c, |e| e == Entry::One), BitSet::singleton(c)).ok())
            .collect();
        let mut rects = if cols.len() < rows.len() { cols } else { rows };
        let binary = binary_rank(m, budget);
        if let Some(Witness::Partition { rects: part }) = binary.witness {
            if part.len() < rects.len() {
                rects = part;
            }
        }
        let upper = rects.len();
        let nodes = fool.nodes + binary.nodes;
        return ExactResult::new(Measure::Boolean, floor.min(upper), upper, Some(Witness::Cover { rects }), nodes);
    };
    let mut by_cell = vec![Vec::new(); n];
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
    let model = Model { idx, rects, covers, by_cell };

    // Greedy cover as the starting incumbent.
    let mut uncovered = BitSet::full(n);
    let mut greedy = Vec::new();
    while !uncovered.is_empty() {
        let q = (0..model.rects.len())
            .max_by_key(|&q| (model.covers[q].intersection_len(&uncovered), std::cmp::Reverse(q)))
            .unwrap();
        greedy.push(q);
        uncovered.difference_with(&model.covers[q]);
    }

    let ctl = Control::new(budget);
    let inc = Incumbent::new(greedy.len(), Some(greedy));
    let search = Search { model: &model, ctl: &ctl, inc: &inc, floor };
    let all = BitSet::full(n);
    if budget.threads <= 1 {
        search.dfs(&[], &all);
    } else {
        let target = 8 * budget.threads;
        let mut frontier = vec![(Vec::new(), all)];
        for _ in 0..8 {
            if frontier.len() >= target || frontier.is_empty() {
                break;
            }
            frontier = frontier.iter().filter_map(|(c, u)| search.children(c, u)).flatten().collect();
        }
        run_subtrees(frontier, budget.threads, |(c, u)| search.dfs(&c, &u));
    }

    let nodes = ctl.nodes() + fool.nodes;
    let exhausted = ctl.exhausted();
    let (best, chosen) = inc.into_inner();
    let mut rects: Vec<Rect> = chosen.unwrap_or_default().into_iter().map(|q| model.rects[q].clone()).collect();
    rects.sort();
    let lower = if exhausted { floor.min(best) } else { best };
    ExactResult::new(Measure::Boolean, lower, best, Some(Witness::Cover { rects }), nodes)
}
