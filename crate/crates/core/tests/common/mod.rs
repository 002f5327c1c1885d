//! Brute-force reference implementations, written without any of the
//! library's search code. Only usable on small inputs.

#![allow(dead_code)]

use rankforge::{Entry, PartialMatrix};

fn ones(m: &PartialMatrix) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for r in 0..m.n_rows() {
        for c in 0..m.n_cols() {
            if m.get(r, c) == Entry::One {
                v.push((r, c));
            }
        }
    }
    v
}

/// Rank over GF(2) by elimination on row bitmasks.
pub fn gf2_rank(m: &PartialMatrix) -> usize {
    let mut rows: Vec<u64> = (0..m.n_rows())
        .map(|r| (0..m.n_cols()).filter(|&c| m.get(r, c) == Entry::One).fold(0, |acc, c| acc | 1 << c))
        .collect();
    let mut rank = 0;
    for bit in 0..m.n_cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the reals by floating-point elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn real_rank(m: &PartialMatrix) -> usize {
    let mut a: Vec<Vec<f64>> = (0..m.n_rows())
        .map(|r| (0..m.n_cols()).map(|c| if m.get(r, c) == Entry::One { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.n_cols() {
        let p = (rank..a.len()).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()));
        let Some(p) = p.filter(|&p| a[p][col].abs() > 1e-9) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank {
                let f = a[i][col] / a[rank][col];
                for k in col..m.n_cols() {
                    a[i][k] -= f * a[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Largest fooling set, by trying every subset of Ones from large to small.
pub fn fooling(m: &PartialMatrix) -> usize {
    let cells = ones(m);
    assert!(cells.len() <= 20, "oracle too slow");
    let fools = |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| {
        m.get(a, d) == Entry::Zero || m.get(c, b) == Entry::Zero
    };
    let mut best = 0;
    for mask in 0u32..(1 << cells.len()) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let chosen: Vec<_> = (0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]).collect();
        if chosen.iter().enumerate().all(|(i, x)| chosen[i + 1..].iter().all(|y| fools(x, y))) {
            best = k;
        }
    }
    best
}

/// Ones inside each Zero-free rectangle that is maximal in its columns for
/// some row set; every Zero-free rectangle lies inside one of these.
fn row_closed_one_sets(m: &PartialMatrix) -> Vec<u64> {
    assert!(m.n_rows() <= 12 && m.n_rows() * m.n_cols() <= 64, "oracle too slow");
    let mut out = Vec::new();
    for rows in 1u32..(1 << m.n_rows()) {
        let mut set = 0u64;
        for c in 0..m.n_cols() {
            let rs = (0..m.n_rows()).filter(|r| rows >> r & 1 == 1);
            if rs.clone().all(|r| m.get(r, c) != Entry::Zero) {
                for r in rs {
                    if m.get(r, c) == Entry::One {
                        set |= 1 << (r * m.n_cols() + c);
                    }
                }
            }
        }
        if set != 0 {
            out.push(set);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Boolean rank: fewest Zero-free rectangles whose union holds every One.
pub fn boolean_rank(m: &PartialMatrix) -> usize {
    let target = ones(m).iter().fold(0u64, |acc, &(r, c)| acc | 1 << (r * m.n_cols() + c));
    if target == 0 {
        return 0;
    }
    let sets = row_closed_one_sets(m);
    fn reach(sets: &[u64], from: usize, left: usize, covered: u64, target: u64) -> bool {
        if covered == target {
            return true;
        }
        left > 0 && (from..sets.len()).any(|i| reach(sets, i + 1, left - 1, covered | sets[i], target))
    }
    (1..).find(|&k| reach(&sets, 0, k, 0, target)).unwrap()
}

/// True iff the Ones split into `r` classes whose row-by-column hulls avoid
/// every Zero and every One of another class.
pub fn has_partition(m: &PartialMatrix, r: usize) -> bool {
    let cells = ones(m);
    if cells.is_empty() {
        return true;
    }
    let mut label = vec![usize::MAX; cells.len()];
    let pos: std::collections::HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut hull: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); r];

    fn go(
        m: &PartialMatrix,
        cells: &[(usize, usize)],
        pos: &std::collections::HashMap<(usize, usize), usize>,
        label: &mut Vec<usize>,
        hull: &mut Vec<(Vec<usize>, Vec<usize>)>,
        i: usize,
        used: usize,
    ) -> bool {
        if i == cells.len() {
            return true;
        }
        let (x, y) = cells[i];
        let limit = (used + 1).min(hull.len());
        for k in 0..limit {
            // x,y may not sit inside another class's hull.
            let foreign = (0..hull.len()).any(|j| j != k && hull[j].0.contains(&x) && hull[j].1.contains(&y));
            if foreign {
                continue;
            }
            let (rows, cols) = &hull[k];
            let mut new_cells: Vec<(usize, usize)> = Vec::new();
            if !rows.contains(&x) {
                new_cells.extend(cols.iter().map(|&c| (x, c)));
            }
            if !cols.contains(&y) {
                new_cells.extend(rows.iter().map(|&r| (r, y)));
            }
            let ok = new_cells.iter().all(|&(a, b)| match m.get(a, b) {
                Entry::Zero => false,
                Entry::Star => true,
                Entry::One => {
                    let l = label[pos[&(a, b)]];
                    l == usize::MAX || l == k
                }
            });
            if !ok {
                continue;
            }
            let saved = hull[k].clone();
            if !hull[k].0.contains(&x) {
                hull[k].0.push(x);
            }
            if !hull[k].1.contains(&y) {
                hull[k].1.push(y);
            }
            label[i] = k;
            if go(m, cells, pos, label, hull, i + 1, used.max(k + 1)) {
                return true;
            }
            label[i] = usize::MAX;
            hull[k] = saved;
        }
        false
    }
    go(m, &cells, &pos, &mut label, &mut hull, 0, 0)
}

/// Binary rank by increasing `r` until a partition exists.
pub fn binary_rank(m: &PartialMatrix) -> usize {
    (0..).find(|&r| has_partition(m, r)).unwrap()
}

/// Kronecker product built cell by cell.
pub fn kron(a: &PartialMatrix, b: &PartialMatrix) -> PartialMatrix {
    PartialMatrix::from_fn(a.n_rows() * b.n_rows(), a.n_cols() * b.n_cols(), |r, c| {
        let (x, y) = (a.get(r / b.n_rows(), c / b.n_cols()), b.get(r % b.n_rows(), c % b.n_cols()));
        match (x, y) {
            (Entry::Zero, _) | (_, Entry::Zero) => Entry::Zero,
            (Entry::One, Entry::One) => Entry::One,
            _ => Entry::Star,
        }
    })
}
