//! Binary rank: minimum partition of the Ones into Zero-free rectangles.
//!
//! The search labels One cells with part numbers. Each open part keeps the
//! bounding rectangle of its cells; giving a cell to a part grows that
//! rectangle, and every One it then contains is forced into the same part.
//! A part is therefore always exactly the Ones of a Zero-free rectangle, so
//! candidate rectangles are generated on the fly instead of enumerated.
//! Star cells are never labelled and may be shared by any number of parts.

use super::{
    fooling_number, run_subtrees, Control, ExactResult, Incumbent, Measure, OneIndex, SearchBudget, Witness,
};
use crate::bitset::BitSet;
use crate::matrix::{Entry, PartialMatrix};
use crate::rect::Rect;

const NONE: u32 = u32::MAX;

struct Model {
    n_cols: usize,
    idx: OneIndex,
    one_at: Vec<u32>,
    zero_in_row: Vec<BitSet>,
    zero_in_col: Vec<BitSet>,
    ones_in_row: Vec<BitSet>,
    ones_in_col: Vec<BitSet>,
}

#[derive(Clone)]
struct Part {
    rows: BitSet,
    cols: BitSet,
    size: usize,
}

#[derive(Clone)]
struct State {
    label: Vec<u32>,
    parts: Vec<Part>,
    unlabeled: BitSet,
}

impl Model {
    fn new(m: &PartialMatrix) -> Self {
        let idx = OneIndex::new(m);
        let mut one_at = vec![NONE; m.n_rows() * m.n_cols()];
        for (i, &(r, c)) in idx.cells.iter().enumerate() {
            one_at[r * m.n_cols() + c] = i as u32;
        }
        Self {
            n_cols: m.n_cols(),
            one_at,
            zero_in_row: (0..m.n_rows()).map(|r| m.row_set(r, |e| e == Entry::Zero)).collect(),
            zero_in_col: (0..m.n_cols()).map(|c| m.col_set(c, |e| e == Entry::Zero)).collect(),
            ones_in_row: (0..m.n_rows()).map(|r| m.row_set(r, |e| e == Entry::One)).collect(),
            ones_in_col: (0..m.n_cols()).map(|c| m.col_set(c, |e| e == Entry::One)).collect(),
            idx,
        }
    }

    fn one(&self, r: usize, c: usize) -> u32 {
        self.one_at[r * self.n_cols + c]
    }

    /// Whether One `x` can join part `p` of `s`.
    fn fits(&self, s: &State, x: usize, p: usize) -> bool {
        let (r, c) = self.idx.cells[x];
        let part = &s.parts[p];
        let new_row = !part.rows.contains(r);
        let new_col = !part.cols.contains(c);
        let label = p as u32;
        let ok = |o: u32| o == NONE || s.label[o as usize] == NONE || s.label[o as usize] == label;
        if new_row {
            if self.zero_in_row[r].intersects(&part.cols) || self.zero_in_row[r].contains(c) {
                return false;
            }
            if !part.cols.iter().all(|col| ok(self.one(r, col))) {
                return false;
            }
        }
        if new_col {
            if self.zero_in_col[c].intersects(&part.rows) || self.zero_in_col[c].contains(r) {
                return false;
            }
            if !part.rows.iter().all(|row| ok(self.one(row, c))) {
                return false;
            }
        }
        true
    }

    /// Adds One `x` to part `p`, labelling every One the grown rectangle
    /// now contains. Assumes `fits`.
    fn join(&self, s: &State, x: usize, p: usize) -> State {
        let mut s = s.clone();
        let (r, c) = self.idx.cells[x];
        s.parts[p].rows.insert(r);
        s.parts[p].cols.insert(c);
        let label = p as u32;
        let rows = s.parts[p].rows.clone();
        let cols = s.parts[p].cols.clone();
        let claim = |o: u32, s: &mut State| {
            if o != NONE && s.label[o as usize] == NONE {
                s.label[o as usize] = label;
                s.unlabeled.remove(o as usize);
                s.parts[p].size += 1;
            }
        };
        for col in self.ones_in_row[r].intersection(&cols).iter() {
            claim(self.one(r, col), &mut s);
        }
        for row in self.ones_in_col[c].intersection(&rows).iter() {
            claim(self.one(row, c), &mut s);
        }
        s
    }

    fn open(&self, s: &State, x: usize) -> State {
        let mut s = s.clone();
        let (r, c) = self.idx.cells[x];
        s.label[x] = s.parts.len() as u32;
        s.unlabeled.remove(x);
        s.parts.push(Part { rows: BitSet::singleton(r), cols: BitSet::singleton(c), size: 1 });
        s
    }
}

struct Search<'a> {
    model: &'a Model,
    ctl: &'a Control,
    inc: &'a Incumbent<Vec<Rect>>,
    floor: usize,
}

enum Node {
    Done,
    Branch(Vec<State>),
}

impl Search<'_> {
    fn record(&self, s: &State) {
        let rects = || {
            s.parts
                .iter()
                .map(|p| Rect::new(p.rows.clone(), p.cols.clone()).expect("parts are nonempty"))
                .collect()
        };
        self.inc.offer(s.parts.len(), |a, b| a < b, rects);
    }

    fn step(&self, s: &State) -> Node {
        if !self.ctl.tick() {
            return Node::Done;
        }
        let best = self.inc.best();
        if best <= self.floor {
            return Node::Done;
        }
        let used = s.parts.len();
        if s.unlabeled.is_empty() {
            if used < best {
                self.record(s);
            }
            return Node::Done;
        }
        if used >= best {
            return Node::Done;
        }
        let can_open = used + 1 < best;
        let mut must_open = BitSet::new();
        let mut chosen: Option<(usize, Vec<usize>)> = None;
        for x in s.unlabeled.iter() {
            let opts: Vec<usize> = (0..used).filter(|&p| self.model.fits(s, x, p)).collect();
            let count = opts.len() + usize::from(can_open);
            if count == 0 {
                return Node::Done;
            }
            if opts.is_empty() {
                must_open.insert(x);
            }
            let better = match &chosen {
                None => true,
                Some((_, o)) => count < o.len() + usize::from(can_open),
            };
            if better {
                chosen = Some((x, opts));
            }
        }
        // Cells that fit no open part need fresh parts, one per member of a
        // fooling set among them.
        if !must_open.is_empty() && used + self.model.idx.greedy_fooling(&must_open).len() >= best {
            return Node::Done;
        }
        let (x, mut opts) = chosen.expect("unlabeled is nonempty");
        opts.sort_by_key(|&p| std::cmp::Reverse(s.parts[p].size));
        let mut children: Vec<State> = opts.into_iter().map(|p| self.model.join(s, x, p)).collect();
        if can_open {
            children.push(self.model.open(s, x));
        }
        Node::Branch(children)
    }

    fn dfs(&self, s: &State) {
        if let Node::Branch(children) = self.step(s) {
            for child in &children {
                if self.ctl.exhausted() {
                    return;
                }
                self.dfs(child);
            }
        }
    }
}

/// Minimum number of Zero-free rectangles covering every One exactly once.
pub fn binary_rank(m: &PartialMatrix, budget: &SearchBudget) -> ExactResult {
    let model = Model::new(m);
    let n = model.idx.len();
    if n == 0 {
        return ExactResult::new(Measure::Binary, 0, 0, Some(Witness::Partition { rects: vec![] }), 0);
    }

    let fool = fooling_number(m, budget);
    let floor = fool.lower;

    // Rows (or columns) split the Ones into a valid partition.
    let by_rows: Vec<Rect> = (0..m.n_rows())
        .filter(|&r| !model.ones_in_row[r].is_empty())
        .map(|r| Rect::new(BitSet::singleton(r), model.ones_in_row[r].clone()).unwrap())
        .collect();
    let by_cols: Vec<Rect> = (0..m.n_cols())
        .filter(|&c| !model.ones_in_col[c].is_empty())
        .map(|c| Rect::new(model.ones_in_col[c].clone(), BitSet::singleton(c)).unwrap())
        .collect();
    let start = if by_cols.len() < by_rows.len() { by_cols } else { by_rows };

    let ctl = Control::new(budget);
    let inc = Incumbent::new(start.len(), Some(start));
    let search = Search { model: &model, ctl: &ctl, inc: &inc, floor };
    let root = State { label: vec![NONE; n], parts: Vec::new(), unlabeled: BitSet::full(n) };

    if budget.threads <= 1 {
        search.dfs(&root);
    } else {
        let target = 8 * budget.threads;
        let mut frontier = vec![root];
        for _ in 0..12 {
            if frontier.len() >= target || frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for s in &frontier {
                if let Node::Branch(children) = search.step(s) {
                    next.extend(children);
                }
            }
            frontier = next;
        }
        run_subtrees(frontier, budget.threads, |s| search.dfs(&s));
    }

    let nodes = ctl.nodes() + fool.nodes;
    let exhausted = ctl.exhausted();
    let (best, rects) = inc.into_inner();
    let mut rects = rects.unwrap_or_default();
    rects.sort();
    let lower = if exhausted { floor.min(best) } else { best };
    ExactResult::new(Measure::Binary, lower, best, Some(Witness::Partition { rects }), nodes)
}
