//! Combinatorial rectangles over a host matrix: maximal-rectangle
//! enumeration, compatibility, leftover sets, and cover-to-partition
//! conversions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matrix::{CellSet, Entry, PartialMatrix};

/// `rows x cols`, both nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RectRepr", into = "RectRepr")]
pub struct Rect {
    rows: BitSet,
    cols: BitSet,
}

#[derive(Serialize, Deserialize)]
struct RectRepr {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl TryFrom<RectRepr> for Rect {
    type Error = Error;

    fn try_from(r: RectRepr) -> Result<Self> {
        Rect::new(BitSet::from_indices(r.rows), BitSet::from_indices(r.cols))
    }
}

impl From<Rect> for RectRepr {
    fn from(r: Rect) -> Self {
        RectRepr { rows: r.rows.to_vec(), cols: r.cols.to_vec() }
    }
}

impl Rect {
    pub fn new(rows: BitSet, cols: BitSet) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Precondition("rectangle needs a row and a column".into()));
        }
        Ok(Self { rows, cols })
    }

    /// Panics on empty input.
    pub fn from_slices(rows: &[usize], cols: &[usize]) -> Self {
        Self::new(BitSet::from_indices(rows.iter().copied()), BitSet::from_indices(cols.iter().copied()))
            .expect("nonempty rectangle")
    }

    pub fn cell(r: usize, c: usize) -> Self {
        Self { rows: BitSet::singleton(r), cols: BitSet::singleton(c) }
    }

    pub fn rows(&self) -> &BitSet {
        &self.rows
    }

    pub fn cols(&self) -> &BitSet {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.rows.contains(r) && self.cols.contains(c)
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.rows.intersects(&other.rows) && self.cols.intersects(&other.cols)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.rows.is_superset(&other.rows) && self.cols.is_superset(&other.cols)
    }

    pub fn cells(&self) -> CellSet {
        self.rows.iter().flat_map(|r| self.cols.iter().map(move |c| (r, c))).collect()
    }

    pub fn within(&self, host: &PartialMatrix) -> bool {
        self.rows.iter().all(|r| r < host.n_rows()) && self.cols.iter().all(|c| c < host.n_cols())
    }

    pub fn avoids_zeros(&self, host: &PartialMatrix) -> bool {
        self.rows.iter().all(|r| self.cols.iter().all(|c| host.get(r, c) != Entry::Zero))
    }

    pub fn ones(&self, host: &PartialMatrix) -> CellSet {
        self.cells().iter().copied().filter(|&(r, c)| host.get(r, c) == Entry::One).collect()
    }

    /// Kronecker product of two rectangles over hosts with
    /// `n_rows_b x n_cols_b` second factor.
    pub fn tensor(&self, other: &Rect, n_rows_b: usize, n_cols_b: usize) -> Rect {
        let rows = self.rows.iter().flat_map(|a| other.rows.iter().map(move |b| a * n_rows_b + b)).collect();
        let cols = self.cols.iter().flat_map(|a| other.cols.iter().map(move |b| a * n_cols_b + b)).collect();
        Rect { rows, cols }
    }

    fn key(&self) -> (usize, usize) {
        (self.rows.first().unwrap_or(0), self.cols.first().unwrap_or(0))
    }
}

/// Canonical order: (min row, min col, rows, cols).
impl Ord for Rect {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

impl PartialOrd for Rect {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All maximal Zero-free rectangles that contain at least one One, in
/// canonical order.
pub fn enumerate_candidate_rects(m: &PartialMatrix) -> Vec<Rect> {
    enumerate_candidate_rects_capped(m, usize::MAX).expect("no cap")
}

/// As [`enumerate_candidate_rects`], giving up with `None` once more than
/// `cap` column sets have been generated. Stars can make the number of
/// maximal rectangles exponential.
pub fn enumerate_candidate_rects_capped(m: &PartialMatrix, cap: usize) -> Option<Vec<Rect>> {
    let nonzero: Vec<BitSet> = (0..m.n_rows()).map(|r| m.row_set(r, |e| e != Entry::Zero)).collect();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue: VecDeque<BitSet> = VecDeque::new();
    for n in &nonzero {
        if !n.is_empty() && seen.insert(n.clone()) {
            queue.push_back(n.clone());
        }
    }
    // Column sets closed under intersection with row neighbourhoods are
    // exactly the column sides of maximal rectangles.
    while let Some(b) = queue.pop_front() {
        for n in &nonzero {
            let c = b.intersection(n);
            if !c.is_empty() && !seen.contains(&c) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(c.clone());
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<Rect> = seen
        .into_iter()
        .filter_map(|cols| {
            let rows: BitSet = (0..m.n_rows()).filter(|&r| cols.is_subset(&nonzero[r])).collect();
            let rect = Rect::new(rows, cols).ok()?;
            let has_one = rect.rows.iter().any(|r| rect.cols.iter().any(|c| m.get(r, c) == Entry::One));
            has_one.then_some(rect)
        })
        .collect();
    out.sort();
    Some(out)
}

/// `(R, Q)` is compatible iff `Q \ R` is a rectangle.
pub fn is_compatible(r: &Rect, q: &Rect) -> bool {
    !r.intersects(q) || r.rows.is_superset(&q.rows) || r.cols.is_superset(&q.cols)
}

/// Cells of `rects[i]` outside every other rectangle, and whether they form
/// a (possibly empty) rectangle.
pub fn leftover(i: usize, rects: &[Rect]) -> (CellSet, bool) {
    let cells: CellSet = rects[i]
        .cells()
        .iter()
        .copied()
        .filter(|&(r, c)| rects.iter().enumerate().all(|(j, q)| j == i || !q.contains(r, c)))
        .collect();
    let is_rect = cells.is_rectangle();
    (cells, is_rect)
}

/// Sets `R_i \ U{R_j : pi[j] < pi[i]}` in index order, each flagged with
/// whether it is a rectangle. `pi[i]` is the position of rectangle `i`.
pub fn technique1(rects: &[Rect], pi: &[usize]) -> Result<Vec<(CellSet, bool)>> {
    check_permutation(pi, rects.len())?;
    Ok(rects
        .iter()
        .enumerate()
        .map(|(i, rect)| {
            let cells: CellSet = rect
                .cells()
                .iter()
                .copied()
                .filter(|&(r, c)| (0..rects.len()).all(|j| pi[j] >= pi[i] || !rects[j].contains(r, c)))
                .collect();
            let flag = cells.is_rectangle();
            (cells, flag)
        })
        .collect())
}

fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n || pi.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Precondition(format!("not a permutation of 0..{n}: {pi:?}")));
    }
    Ok(())
}

/// Every permutation of `0..n` (Heap's algorithm order).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

fn validate_zero_free(host: &PartialMatrix, rects: &[Rect]) -> Result<()> {
    for (i, r) in rects.iter().enumerate() {
        if !r.within(host) {
            return Err(Error::Precondition(format!("rectangle {i} is out of bounds")));
        }
        if !r.avoids_zeros(host) {
            return Err(Error::Precondition(format!("rectangle {i} covers a 0 entry")));
        }
    }
    Ok(())
}

fn coverage(host: &PartialMatrix, rects: &[Rect]) -> Vec<usize> {
    let mut count = vec![0usize; host.n_rows() * host.n_cols()];
    for rect in rects {
        for r in rect.rows.iter() {
            for c in rect.cols.iter() {
                count[r * host.n_cols() + c] += 1;
            }
        }
    }
    count
}

/// Zero-free rectangles covering every One at least once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    host: PartialMatrix,
    rects: Vec<Rect>,
}

impl Cover {
    pub fn new(host: PartialMatrix, rects: Vec<Rect>) -> Result<Self> {
        validate_zero_free(&host, &rects)?;
        let count = coverage(&host, &rects);
        if let Some((r, c)) = host.ones().find(|&(r, c)| count[r * host.n_cols() + c] == 0) {
            return Err(Error::Precondition(format!("one at ({r},{c}) is not covered")));
        }
        Ok(Self { host, rects })
    }

    pub fn host(&self) -> &PartialMatrix {
        &self.host
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn leftover(&self, i: usize) -> (CellSet, bool) {
        leftover(i, &self.rects)
    }

    pub fn technique1(&self, pi: &[usize]) -> Result<Vec<(CellSet, bool)>> {
        technique1(&self.rects, pi)
    }
}

/// Zero-free rectangles covering every One exactly once; overlaps are
/// allowed only on Star cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    host: PartialMatrix,
    rects: Vec<Rect>,
}

impl Partition {
    pub fn new(host: PartialMatrix, rects: Vec<Rect>) -> Result<Self> {
        validate_zero_free(&host, &rects)?;
        let count = coverage(&host, &rects);
        for (r, c) in host.ones() {
            match count[r * host.n_cols() + c] {
                1 => {}
                0 => return Err(Error::Precondition(format!("one at ({r},{c}) is not covered"))),
                k => return Err(Error::Precondition(format!("one at ({r},{c}) is covered {k} times"))),
            }
        }
        Ok(Self { host, rects })
    }

    pub fn host(&self) -> &PartialMatrix {
        &self.host
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn into_cover(self) -> Cover {
        Cover { host: self.host, rects: self.rects }
    }
}

/// Partitions the One cells by arbitrary cell sets (Technique 1 output).
/// True iff the sets are pairwise disjoint, their union contains every One,
/// and they contain no Zero.
pub fn partitions_ones(host: &PartialMatrix, sets: &[CellSet]) -> bool {
    let mut seen = CellSet::new();
    for s in sets {
        for &cell in s {
            if host.get(cell.0, cell.1) == Entry::Zero || !seen.insert(cell) {
                return false;
            }
        }
    }
    host.ones().all(|cell| seen.contains(&cell))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Rows,
    Cols,
}

/// Rows (or columns) sharing one membership signature with respect to a
/// cover; `signature[i]` is `+1` iff the members lie in rectangle `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowType {
    pub signature: Vec<i8>,
    pub members: BitSet,
}

impl RowType {
    pub fn is_nontrivial(&self) -> bool {
        self.signature.contains(&1)
    }
}

/// All nonempty types along `axis`, ordered by signature (`+1` first).
pub fn types(cover: &Cover, axis: Axis) -> Result<Vec<RowType>> {
    cover.host.ensure_total("row types")?;
    let n = match axis {
        Axis::Rows => cover.host.n_rows(),
        Axis::Cols => cover.host.n_cols(),
    };
    let mut groups: BTreeMap<Vec<i8>, BitSet> = BTreeMap::new();
    for a in 0..n {
        let sig: Vec<i8> = cover
            .rects
            .iter()
            .map(|r| {
                let side = match axis {
                    Axis::Rows => &r.rows,
                    Axis::Cols => &r.cols,
                };
                if side.contains(a) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        groups.entry(sig).or_default().insert(a);
    }
    Ok(groups.into_iter().rev().map(|(signature, members)| RowType { signature, members }).collect())
}

pub fn row_types(cover: &Cover) -> Result<Vec<RowType>> {
    types(cover, Axis::Rows)
}

/// One rectangle per nontrivial nonempty type: the type's members times
/// the Ones of their (shared) row or column.
pub fn technique2(cover: &Cover, axis: Axis) -> Result<Partition> {
    let host = &cover.host;
    let rects = types(cover, axis)?
        .into_iter()
        .filter(RowType::is_nontrivial)
        .map(|t| {
            let rep = t.members.first().expect("types are nonempty");
            match axis {
                Axis::Rows => Rect::new(t.members, host.row_set(rep, |e| e == Entry::One)),
                Axis::Cols => Rect::new(host.col_set(rep, |e| e == Entry::One), t.members),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(host.clone(), rects)
}

/// Two-colours the intersection graph of `rects`; `None` if it has an odd
/// cycle. Colour 0 goes to the lowest index of each component.
pub fn bipartition(rects: &[Rect]) -> Option<Vec<u8>> {
    let n = rects.len();
    let mut color: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for v in 0..n {
                if v == u || !rects[u].intersects(&rects[v]) {
                    continue;
                }
                match color[v] {
                    None => {
                        color[v] = Some(1 - cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Turns a cover with bipartite intersection graph into a partition of the
/// same size (minus empty leftovers): one colour class is kept whole, the
/// other is trimmed against it.
pub fn bipartite_partition(cover: &Cover) -> Result<Partition> {
    cover.host.ensure_total("bipartite_partition")?;
    let color = bipartition(&cover.rects)
        .ok_or_else(|| Error::Precondition("intersection graph is not bipartite".into()))?;
    let mut first_err = None;
    for side in [0u8, 1] {
        match partition_from_side(cover, &color, side) {
            Ok(p) => return Ok(p),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap())
}

fn partition_from_side(cover: &Cover, color: &[u8], side: u8) -> Result<Partition> {
    let rects = &cover.rects;
    let mut out = Vec::with_capacity(rects.len());
    for (i, rect) in rects.iter().enumerate() {
        if color[i] == side {
            out.push(rect.clone());
            continue;
        }
        let cells: CellSet = rect
            .cells()
            .iter()
            .copied()
            .filter(|&(r, c)| !rects.iter().enumerate().any(|(j, q)| color[j] == side && q.contains(r, c)))
            .collect();
        if cells.is_empty() {
            continue;
        }
        if !cells.is_rectangle() {
            return Err(Error::ConstructionFailed {
                index: i,
                message: "trimmed rectangle is not a rectangle".into(),
            });
        }
        out.push(Rect::new(cells.rows(), cells.cols())?);
    }
    Partition::new(cover.host.clone(), out).map_err(|e| Error::ConstructionFailed {
        index: usize::MAX,
        message: format!("result is not a partition: {e}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_matrix() -> PartialMatrix {
        PartialMatrix::parse("1101\n1011\n0111\n1111\n").unwrap()
    }

    fn first_cover() -> Vec<Rect> {
        vec![
            Rect::from_slices(&[0, 3], &[0, 1, 3]),
            Rect::from_slices(&[1, 3], &[0, 2, 3]),
            Rect::from_slices(&[2, 3], &[1, 2, 3]),
        ]
    }

    #[test]
    fn candidates_identity_and_all_ones() {
        let rects = enumerate_candidate_rects(&PartialMatrix::identity(4));
        assert_eq!(rects, (0..4).map(|i| Rect::cell(i, i)).collect::<Vec<_>>());
        let rects = enumerate_candidate_rects(&PartialMatrix::all_ones(3, 5));
        assert_eq!(rects, vec![Rect::from_slices(&[0, 1, 2], &[0, 1, 2, 3, 4])]);
    }

    #[test]
    fn candidates_first_example() {
        let rects = enumerate_candidate_rects(&first_matrix());
        for r in first_cover() {
            assert!(rects.contains(&r), "{r:?} missing");
        }
    }

    #[test]
    fn candidates_skip_star_only_rects() {
        let m = PartialMatrix::parse("1*\n*0\n").unwrap();
        let rects = enumerate_candidate_rects(&m);
        assert_eq!(rects, vec![Rect::from_slices(&[0], &[0, 1]), Rect::from_slices(&[0, 1], &[0])]);
    }

    #[test]
    fn compatibility() {
        let a = Rect::from_slices(&[0], &[0]);
        let b = Rect::from_slices(&[1], &[1]);
        assert!(is_compatible(&a, &b));
        let r = Rect::from_slices(&[1, 2], &[1, 2]);
        let q = Rect::from_slices(&[2, 3], &[2, 3]);
        assert!(!is_compatible(&r, &q));
        assert!(!is_compatible(&q, &r));
        // small sits in a corner of big: big minus small is an L shape.
        let big = Rect::from_slices(&[0, 1], &[0, 1, 2]);
        let small = Rect::from_slices(&[0], &[0, 1]);
        assert!(is_compatible(&big, &small));
        assert!(!is_compatible(&small, &big));
    }

    #[test]
    fn leftover_examples() {
        let single = vec![Rect::from_slices(&[0, 1], &[2])];
        let (cells, ok) = leftover(0, &single);
        assert_eq!(cells, single[0].cells());
        assert!(ok);

        let cover = Cover::new(first_matrix(), first_cover()).unwrap();
        for i in 0..3 {
            assert!(cover.leftover(i).1);
        }
    }

    #[test]
    fn technique1_disjoint_cover_is_identity() {
        let rects: Vec<Rect> = (0..3).map(|i| Rect::cell(i, i)).collect();
        for pi in permutations(3) {
            let sets = technique1(&rects, &pi).unwrap();
            assert!(sets.iter().zip(&rects).all(|((s, f), r)| *f && *s == r.cells()));
        }
        assert!(technique1(&rects, &[0, 0, 1]).is_err());
    }

    #[test]
    fn technique1_on_first_example_fails_somewhere() {
        let host = first_matrix();
        let cover = first_cover();
        for pi in permutations(3) {
            let sets = technique1(&cover, &pi).unwrap();
            let cells: Vec<CellSet> = sets.iter().map(|(s, _)| s.clone()).collect();
            assert!(partitions_ones(&host, &cells));
        }
    }

    #[test]
    fn technique2_all_ones() {
        let host = PartialMatrix::all_ones(3, 2);
        let cover = Cover::new(host, vec![Rect::from_slices(&[0, 1, 2], &[0, 1])]).unwrap();
        let types = row_types(&cover).unwrap();
        assert_eq!(types.iter().filter(|t| t.is_nontrivial()).count(), 1);
        assert_eq!(technique2(&cover, Axis::Rows).unwrap().len(), 1);
        assert_eq!(technique2(&cover, Axis::Cols).unwrap().len(), 1);
    }

    #[test]
    fn technique2_rejects_partial_hosts() {
        let host = PartialMatrix::parse("1*\n").unwrap();
        let cover = Cover::new(host, vec![Rect::from_slices(&[0], &[0])]).unwrap();
        assert!(matches!(technique2(&cover, Axis::Rows), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bipartite_disjoint_and_nested() {
        let host = PartialMatrix::identity(3);
        let cover = Cover::new(host, (0..3).map(|i| Rect::cell(i, i)).collect()).unwrap();
        assert_eq!(bipartite_partition(&cover).unwrap().rects(), cover.rects());

        let host = PartialMatrix::all_ones(2, 2);
        let r = Rect::from_slices(&[0, 1], &[0, 1]);
        let q = Rect::from_slices(&[0, 1], &[0]);
        let p = bipartite_partition(&Cover::new(host.clone(), vec![q.clone(), r.clone()]).unwrap()).unwrap();
        assert_eq!(p.rects(), &[q, Rect::from_slices(&[0, 1], &[1])]);
        let p = bipartite_partition(&Cover::new(host, vec![r.clone(), Rect::cell(0, 0)]).unwrap()).unwrap();
        assert_eq!(p.rects(), &[r]);
    }

    #[test]
    fn bipartite_rejects_triangle() {
        let host = PartialMatrix::all_ones(2, 2);
        let rects = vec![
            Rect::from_slices(&[0, 1], &[0]),
            Rect::from_slices(&[0], &[0, 1]),
            Rect::from_slices(&[0, 1], &[0, 1]),
        ];
        let cover = Cover::new(host, rects).unwrap();
        assert!(matches!(bipartite_partition(&cover), Err(Error::Precondition(_))));
    }

    #[test]
    fn bipartite_reports_non_rectangle() {
        // Two overlapping squares: trimming either against the other leaves
        // an L-shape.
        let host = PartialMatrix::parse("110\n111\n011\n").unwrap();
        let rects = vec![Rect::from_slices(&[0, 1], &[0, 1]), Rect::from_slices(&[1, 2], &[1, 2])];
        let cover = Cover::new(host, rects).unwrap();
        assert!(matches!(
            bipartite_partition(&cover),
            Err(Error::ConstructionFailed { index: 1, .. })
        ));
    }

    #[test]
    fn cover_and_partition_validation() {
        let host = PartialMatrix::identity(2);
        assert!(Cover::new(host.clone(), vec![Rect::cell(0, 0)]).is_err());
        assert!(Cover::new(host.clone(), vec![Rect::from_slices(&[0, 1], &[0])]).is_err());
        let all = PartialMatrix::all_ones(1, 2);
        let overlapping = vec![Rect::from_slices(&[0], &[0, 1]), Rect::cell(0, 1)];
        assert!(Cover::new(all.clone(), overlapping.clone()).is_ok());
        assert!(Partition::new(all, overlapping).is_err());
        let starry = PartialMatrix::parse("1*\n*1\n").unwrap();
        let p = Partition::new(
            starry,
            vec![Rect::from_slices(&[0], &[0, 1]), Rect::from_slices(&[0, 1], &[1])],
        );
        assert!(p.is_ok());
    }

    #[test]
    fn rect_json() {
        let r = Rect::from_slices(&[2, 0], &[1]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"rows":[0,2],"cols":[1]}"#);
        assert_eq!(serde_json::from_str::<Rect>(&s).unwrap(), r);
        assert!(serde_json::from_str::<Rect>(r#"{"rows":[],"cols":[1]}"#).is_err());
    }
}
