//! Largest fooling set, as a maximum clique in the fooling graph on the
//! One cells (colour-bounded branch and bound).

use super::{run_subtrees, Control, ExactResult, Incumbent, Measure, OneIndex, SearchBudget, Witness};
use crate::bitset::BitSet;
use crate::matrix::{Entry, PartialMatrix};

/// True iff `cells` are distinct Ones and every two `(a,b)`, `(c,d)` have
/// `M[a][d] = 0` or `M[c][b] = 0`. A Star never qualifies as a 0.
pub fn is_fooling_set(m: &PartialMatrix, cells: &[(usize, usize)]) -> bool {
    let in_range = |&(r, c): &(usize, usize)| r < m.n_rows() && c < m.n_cols();
    if !cells.iter().all(|cell| in_range(cell) && m.get(cell.0, cell.1) == Entry::One) {
        return false;
    }
    cells.iter().enumerate().all(|(i, &(a, b))| {
        cells[i + 1..].iter().all(|&(c, d)| {
            (a, b) != (c, d) && (m.get(a, d) == Entry::Zero || m.get(c, b) == Entry::Zero)
        })
    })
}

struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    /// Greedy sequential colouring of `p` in index order; returns vertices
    /// sorted by colour together with their colours (1-based).
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }
}

struct Search<'a> {
    graph: &'a Graph,
    ctl: &'a Control,
    inc: &'a Incumbent<Vec<usize>>,
}

impl Search<'_> {
    fn expand(&self, clique: &mut Vec<usize>, mut p: BitSet) {
        if !self.ctl.tick() {
            return;
        }
        if p.is_empty() {
            let size = clique.len();
            self.inc.offer(size, |a, b| a > b, || clique.clone());
            return;
        }
        let (order, colors) = self.graph.color_sort(&p);
        for k in (0..order.len()).rev() {
            if clique.len() + colors[k] <= self.inc.best() || self.ctl.exhausted() {
                return;
            }
            let v = order[k];
            clique.push(v);
            self.expand(clique, p.intersection(&self.graph.adj[v]));
            clique.pop();
            p.remove(v);
        }
    }
}

/// Maximum fooling set of `m`.
pub fn fooling_number(m: &PartialMatrix, budget: &SearchBudget) -> ExactResult {
    let idx = OneIndex::new(m);
    let n = idx.len();
    if n == 0 {
        return ExactResult::new(Measure::Fooling, 0, 0, Some(Witness::Fooling { cells: vec![] }), 0);
    }

    // Renumber by decreasing degree so colour classes fill well.
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(idx.fool[v].len()), v));
    let mut pos = vec![0; n];
    for (i, &v) in by_degree.iter().enumerate() {
        pos[v] = i;
    }
    let graph = Graph {
        adj: by_degree.iter().map(|&v| idx.fool[v].iter().map(|u| pos[u]).collect()).collect(),
    };

    let greedy: Vec<usize> = idx.greedy_fooling(&BitSet::full(n)).into_iter().map(|v| pos[v]).collect();
    let ctl = Control::new(budget);
    let inc = Incumbent::new(greedy.len(), Some(greedy));

    let all = BitSet::full(n);
    let (order, colors) = graph.color_sort(&all);
    let root_bound = *colors.last().unwrap();

    if inc.best() < root_bound {
        let mut subtrees = Vec::with_capacity(n);
        let mut before = BitSet::with_capacity(n);
        for (k, &v) in order.iter().enumerate() {
            subtrees.push((v, colors[k], before.intersection(&graph.adj[v])));
            before.insert(v);
        }
        subtrees.reverse();
        let search = Search { graph: &graph, ctl: &ctl, inc: &inc };
        run_subtrees(subtrees, budget.threads, |(v, bound, p)| {
            if bound <= search.inc.best() || search.ctl.exhausted() {
                return;
            }
            let mut clique = vec![v];
            search.expand(&mut clique, p);
        });
    }

    let nodes = ctl.nodes();
    let exhausted = ctl.exhausted();
    let (best, clique) = inc.into_inner();
    let mut cells: Vec<(usize, usize)> =
        clique.unwrap_or_default().into_iter().map(|v| idx.cells[by_degree[v]]).collect();
    cells.sort_unstable();
    let upper = if exhausted { root_bound.max(best) } else { best };
    ExactResult::new(Measure::Fooling, best, upper, Some(Witness::Fooling { cells }), nodes)
}
