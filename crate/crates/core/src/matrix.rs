//! Partial 0-1 matrices, their text format, tensor products and cell sets.
//!
//! Text format: one line per row, one character per cell from `0`, `1`,
//! `*`. Lines starting with `#` are comments. Output always ends with a
//! newline; input may omit the final one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Zero,
    One,
    Star,
}

impl Entry {
    pub fn to_char(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Entry> {
        match c {
            '0' => Some(Entry::Zero),
            '1' => Some(Entry::One),
            '*' => Some(Entry::Star),
            _ => None,
        }
    }
}

/// Rectangular grid of [`Entry`] values, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Entry>,
}

impl PartialMatrix {
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(Error::Precondition("matrix needs at least one row".into()));
        }
        let n_cols = rows[0].len();
        if n_cols == 0 {
            return Err(Error::Precondition("matrix needs at least one column".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::Precondition(format!(
                "row {i} has {} entries, expected {n_cols}",
                rows[i].len()
            )));
        }
        Ok(Self { n_rows, n_cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Entry) -> Self {
        assert!(n_rows > 0 && n_cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                entries.push(f(r, c));
            }
        }
        Self { n_rows, n_cols, entries }
    }

    /// Total matrix from 0/1 integers; anything nonzero is a One.
    pub fn from_bits(rows: &[&[u8]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&b| if b == 0 { Entry::Zero } else { Entry::One }).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Entry::One } else { Entry::Zero })
    }

    pub fn all_ones(n_rows: usize, n_cols: usize) -> Self {
        Self::from_fn(n_rows, n_cols, |_, _| Entry::One)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Entry {
        self.entries[r * self.n_cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: Entry) {
        self.entries[r * self.n_cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[Entry] {
        &self.entries[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn is_total(&self) -> bool {
        !self.entries.contains(&Entry::Star)
    }

    pub fn count(&self, e: Entry) -> usize {
        self.entries.iter().filter(|&&x| x == e).count()
    }

    pub fn count_ones(&self) -> usize {
        self.count(Entry::One)
    }

    /// Cells holding `e`, in row-major order.
    pub fn cells(&self, e: Entry) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n_cols = self.n_cols;
        self.entries
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == e)
            .map(move |(i, _)| (i / n_cols, i % n_cols))
    }

    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells(Entry::One)
    }

    /// Columns `c` of row `r` with `pred(M[r][c])`.
    pub fn row_set(&self, r: usize, pred: impl Fn(Entry) -> bool) -> BitSet {
        (0..self.n_cols).filter(|&c| pred(self.get(r, c))).collect()
    }

    /// Rows `r` of column `c` with `pred(M[r][c])`.
    pub fn col_set(&self, c: usize, pred: impl Fn(Entry) -> bool) -> BitSet {
        (0..self.n_rows).filter(|&r| pred(self.get(r, c))).collect()
    }

    pub fn ensure_total(&self, what: &str) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} requires a total matrix (found '*')")))
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |r, c| self.get(c, r))
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Precondition("submatrix needs a row and a column".into()));
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c])))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_cols {
            return Err(Error::Precondition("vstack needs equal column counts".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { n_rows: self.n_rows + other.n_rows, n_cols: self.n_cols, entries })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<Entry>> = Vec::new();
        let mut width = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.starts_with('#') {
                continue;
            }
            let mut row = Vec::with_capacity(line.len());
            for (j, ch) in line.chars().enumerate() {
                match Entry::from_char(ch) {
                    Some(e) => row.push(e),
                    None => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("illegal character {ch:?} at column {}", j + 1),
                        })
                    }
                }
            }
            if row.is_empty() {
                return Err(Error::Parse { line: line_no, message: "empty row".into() });
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("ragged row: {} entries, expected {w}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse { line: 1, message: "no matrix rows".into() });
        }
        Self::from_rows(rows)
    }

    pub fn format(&self) -> String {
        let mut s = String::with_capacity(self.n_rows * (self.n_cols + 1));
        for r in 0..self.n_rows {
            s.extend(self.row(r).iter().map(|e| e.to_char()));
            s.push('\n');
        }
        s
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] * other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.ensure_total("tensor")?;
        other.ensure_total("tensor")?;
        let (n2, m2) = (other.n_rows, other.n_cols);
        Ok(Self::from_fn(self.n_rows * n2, self.n_cols * m2, |r, c| {
            if self.get(r / n2, c / m2) == Entry::One && other.get(r % n2, c % m2) == Entry::One {
                Entry::One
            } else {
                Entry::Zero
            }
        }))
    }

    /// `k`-fold tensor power, `k >= 1`.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("tensor power needs k >= 1".into()));
        }
        self.ensure_total("tensor")?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.tensor(self)?;
        }
        Ok(acc)
    }

    /// Removes duplicate rows, then duplicate columns.
    pub fn dedup(&self) -> Dedup {
        let (rows_kept, row_map) = first_occurrences((0..self.n_rows).map(|r| self.row(r).to_vec()));
        let reduced = Self::from_fn(rows_kept.len(), self.n_cols, |r, c| self.get(rows_kept[r], c));
        let (cols_kept, col_map) = first_occurrences(
            (0..reduced.n_cols).map(|c| (0..reduced.n_rows).map(|r| reduced.get(r, c)).collect::<Vec<_>>()),
        );
        let matrix = Self::from_fn(reduced.n_rows, cols_kept.len(), |r, c| reduced.get(r, cols_kept[c]));
        Dedup { matrix, row_map, col_map }
    }
}

fn first_occurrences<K: Eq + std::hash::Hash>(keys: impl Iterator<Item = K>) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<K, usize> = HashMap::new();
    let mut kept = Vec::new();
    let mut map = Vec::new();
    for (i, k) in keys.enumerate() {
        let next = kept.len();
        let rep = *seen.entry(k).or_insert_with(|| {
            kept.push(i);
            next
        });
        map.push(rep);
    }
    (kept, map)
}

/// Result of [`PartialMatrix::dedup`]. `row_map[i]` is the row of `matrix`
/// that original row `i` collapsed onto; likewise for columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dedup {
    pub matrix: PartialMatrix,
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

impl Dedup {
    pub fn expand(&self) -> PartialMatrix {
        PartialMatrix::from_fn(self.row_map.len(), self.col_map.len(), |r, c| {
            self.matrix.get(self.row_map[r], self.col_map[c])
        })
    }
}

impl fmt::Debug for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PartialMatrix {}x{}", self.n_rows, self.n_cols)?;
        f.write_str(&self.format())
    }
}

impl fmt::Display for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl Serialize for PartialMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format())
    }
}

impl<'de> Deserialize<'de> for PartialMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        PartialMatrix::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A set of `(row, col)` cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellSet(BTreeSet<(usize, usize)>);

impl CellSet {
    pub fn new() -> Self {
        Self(BTreeSet::new())
    }

    pub fn insert(&mut self, cell: (usize, usize)) -> bool {
        self.0.insert(cell)
    }

    pub fn remove(&mut self, cell: &(usize, usize)) -> bool {
        self.0.remove(cell)
    }

    pub fn contains(&self, cell: &(usize, usize)) -> bool {
        self.0.contains(cell)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }

    pub fn rows(&self) -> BitSet {
        self.0.iter().map(|&(r, _)| r).collect()
    }

    pub fn cols(&self) -> BitSet {
        self.0.iter().map(|&(_, c)| c).collect()
    }

    /// True iff the set equals `rows() x cols()`. The empty set counts.
    pub fn is_rectangle(&self) -> bool {
        self.0.len() == self.rows().len() * self.cols().len()
    }

    pub fn within(&self, n_rows: usize, n_cols: usize) -> bool {
        self.0.iter().all(|&(r, c)| r < n_rows && c < n_cols)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.difference(&other.0).copied().collect())
    }
}

impl FromIterator<(usize, usize)> for CellSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a CellSet {
    type Item = &'a (usize, usize);
    type IntoIter = std::collections::btree_set::Iter<'a, (usize, usize)>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
