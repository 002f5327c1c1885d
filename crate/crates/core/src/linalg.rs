//! Exact rationals, rational matrices, and rank over Q and GF(2).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{Entry, PartialMatrix};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Format(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `"p"` for integers, `"p/q"` otherwise, always in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter: a vector of rationals as `"p/q"` strings.
pub mod serde_rationals {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for a single rational.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, entries: vec![Rational::zero(); n_rows * n_cols] }
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                entries.push(f(r, c));
            }
        }
        Self { n_rows, n_cols, entries }
    }

    /// 0/1 values of a total matrix.
    pub fn from_partial(m: &PartialMatrix) -> Result<Self> {
        m.ensure_total("conversion to a rational matrix")?;
        Ok(Self::from_fn(m.n_rows(), m.n_cols(), |r, c| match m.get(r, c) {
            Entry::One => Rational::one(),
            _ => Rational::zero(),
        }))
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.n_cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Rational) {
        self.entries[r * self.n_cols + c] = q;
    }

    pub fn add_at(&mut self, r: usize, c: usize, q: &Rational) {
        self.entries[r * self.n_cols + c] += q;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        Ok(Self::from_fn(self.n_rows, other.n_cols, |r, c| {
            (0..self.n_cols).fold(Rational::zero(), |acc, k| acc + self.get(r, k) * other.get(k, c))
        }))
    }

    /// Rank over Q by fraction-free (Bareiss) elimination on an integer copy.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.n_rows)
            .map(|r| {
                let row = &self.entries[r * self.n_cols..(r + 1) * self.n_cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect();
        bareiss_rank(&mut rows, self.n_cols)
    }

    /// The unique solution of `self * x = b`, if the system is consistent
    /// and the columns are independent.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_unique(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.n_rows, "right-hand side length");
        let w = self.n_cols + 1;
        let mut a: Vec<Vec<Rational>> = (0..self.n_rows)
            .map(|r| {
                let mut row = self.entries[r * self.n_cols..(r + 1) * self.n_cols].to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.n_cols {
            let p = (rank..a.len()).find(|&i| !a[i][c].is_zero())?;
            a.swap(rank, p);
            let inv = a[rank][c].recip();
            for j in c..w {
                a[rank][j] = &a[rank][j] * &inv;
            }
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..w {
                        let d = &f * &a[rank][j];
                        a[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
        if a[rank..].iter().any(|row| !row[self.n_cols].is_zero()) {
            return None;
        }
        Some(a[..rank].iter().map(|row| row[self.n_cols].clone()).collect())
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>], n_cols: usize) -> usize {
    let n_rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(p) = (rank..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..n_cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|c| format_rational(self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over Q of a total 0-1 matrix.
pub fn real_rank(m: &PartialMatrix) -> Result<usize> {
    Ok(RationalMatrix::from_partial(m)?.rank())
}

/// Rank over GF(2) of a total 0-1 matrix.
pub fn gf2_rank(m: &PartialMatrix) -> Result<usize> {
    m.ensure_total("gf2_rank")?;
    let words = m.n_cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.n_rows())
        .map(|r| {
            let mut w = vec![0u64; words];
            for c in 0..m.n_cols() {
                if m.get(r, c) == Entry::One {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.n_cols() {
        let bit = 1u64 << (c % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c / 64] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c / 64] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}
