//! Composed partial matrices `f ∘ gⁿ` where `f(z)` is 1 on weight `n/2`,
//! 0 on weight 0 and undefined elsewhere.
//!
//! Index encoding: an input `x` of `n` blocks of `b` bits is the integer
//! whose bits `[i*b, (i+1)*b)` hold block `i`, least significant bit first.
//! Output strings `z ∈ {0,1}ⁿ` use bit `i` for position `i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matrix::{CellSet, Entry, PartialMatrix};

/// Largest side length `2^{bn}` the generators will materialize.
pub const MAX_SIDE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GadgetKind {
    And,
    Ip2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub b: usize,
}

impl Gadget {
    pub fn and() -> Self {
        Self { kind: GadgetKind::And, b: 1 }
    }

    /// Inner product mod 2 on `b`-bit blocks.
    pub fn ip2(b: usize) -> Result<Self> {
        if b == 0 || b > 8 {
            return Err(Error::Precondition(format!("IP2 block width must be in 1..=8, got {b}")));
        }
        Ok(Self { kind: GadgetKind::Ip2, b })
    }

    /// `g(x, y)` on single blocks.
    pub fn eval(&self, x: u32, y: u32) -> bool {
        match self.kind {
            GadgetKind::And => x & y & 1 == 1,
            GadgetKind::Ip2 => (x & y).count_ones() % 2 == 1,
        }
    }

    pub fn block_count(&self) -> u32 {
        1 << self.b
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GadgetKind::And => write!(f, "AND"),
            GadgetKind::Ip2 => write!(f, "IP2(b={})", self.b),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComposedInstance {
    pub gadget: Gadget,
    pub n: usize,
    pub matrix: PartialMatrix,
}

impl ComposedInstance {
    /// Block `i` of an encoded input.
    pub fn block(&self, x: usize, i: usize) -> u32 {
        block(self.gadget, x, i)
    }

    /// `gⁿ(x, y)` as a bitmask over positions.
    pub fn inner(&self, x: usize, y: usize) -> u32 {
        inner(self.gadget, self.n, x, y)
    }

    pub fn side(&self) -> usize {
        self.matrix.n_rows()
    }

    /// `#`-comment header describing the instance.
    pub fn header(&self) -> String {
        format!(
            "# composed gadget={} n={} b={}\n# rows/cols: n blocks of b bits, block i at bits [i*b, (i+1)*b), lsb first\n",
            match self.gadget.kind {
                GadgetKind::And => "AND",
                GadgetKind::Ip2 => "IP2",
            },
            self.n,
            self.gadget.b
        )
    }
}

fn block(g: Gadget, x: usize, i: usize) -> u32 {
    ((x >> (i * g.b)) & ((1 << g.b) - 1)) as u32
}

fn inner(g: Gadget, n: usize, x: usize, y: usize) -> u32 {
    (0..n).filter(|&i| g.eval(block(g, x, i), block(g, y, i))).fold(0, |z, i| z | 1 << i)
}

/// Side length `2^{bn}` if it is within [`MAX_SIDE`].
pub fn side_for(n: usize, g: Gadget) -> Result<usize> {
    let bits = n.checked_mul(g.b).filter(|&bits| bits < usize::BITS as usize);
    match bits.map(|bits| 1usize << bits) {
        Some(side) if side <= MAX_SIDE => Ok(side),
        _ => Err(Error::Precondition(format!("2^(b*n) exceeds {MAX_SIDE} for n={n}, b={}", g.b))),
    }
}

pub fn compose(n: usize, g: Gadget) -> Result<ComposedInstance> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Precondition(format!("n must be even and positive, got {n}")));
    }
    let side = side_for(n, g)?;
    let half = (n / 2) as u32;
    let matrix = PartialMatrix::from_fn(side, side, |x, y| match inner(g, n, x, y).count_ones() {
        0 => Entry::Zero,
        w if w == half => Entry::One,
        _ => Entry::Star,
    });
    Ok(ComposedInstance { gadget: g, n, matrix })
}

/// All cells `(x, y)` with `gⁿ(x, y) = z`.
pub fn wz_fiber(inst: &ComposedInstance, z: &[bool]) -> Result<CellSet> {
    if z.len() != inst.n {
        return Err(Error::Precondition(format!("z has length {}, expected {}", z.len(), inst.n)));
    }
    let mask = z.iter().enumerate().filter(|(_, &bit)| bit).fold(0u32, |m, (i, _)| m | 1 << i);
    let side = inst.side();
    let mut out = CellSet::new();
    for x in 0..side {
        for y in 0..side {
            if inst.inner(x, y) == mask {
                out.insert((x, y));
            }
        }
    }
    Ok(out)
}

/// Strings consistent with a partial assignment of the `n` positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcube {
    pub fixed: BTreeMap<usize, bool>,
}

impl Subcube {
    pub fn codim(&self) -> usize {
        self.fixed.len()
    }

    pub fn contains(&self, z: u32) -> bool {
        self.fixed.iter().all(|(&i, &bit)| (z >> i & 1 == 1) == bit)
    }

    /// Members as bitmasks over `n` positions.
    pub fn members(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        (0u32..1 << n).filter(move |&z| self.contains(z))
    }
}

/// Least `d <= d_max` such that a codimension-`d` subcube lies inside the
/// image `gⁿ(X × Y)`, with such a subcube.
pub fn subcube_min_codim(
    inst: &ComposedInstance,
    xs: &BitSet,
    ys: &BitSet,
    d_max: usize,
) -> Result<Option<(usize, Subcube)>> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Precondition("X and Y must be nonempty".into()));
    }
    let side = inst.side();
    if xs.iter().chain(ys.iter()).any(|i| i >= side) {
        return Err(Error::Precondition(format!("indices must be below {side}")));
    }
    let n = inst.n;
    let mut image = BitSet::with_capacity(1 << n);
    for x in xs.iter() {
        for y in ys.iter() {
            image.insert(inst.inner(x, y) as usize);
        }
    }
    for d in 0..=d_max.min(n) {
        for positions in combinations(n, d) {
            for values in 0u32..1 << d {
                let cube = Subcube {
                    fixed: positions.iter().enumerate().map(|(k, &i)| (i, values >> k & 1 == 1)).collect(),
                };
                if cube.members(n).all(|z| image.contains(z as usize)) {
                    return Ok(Some((d, cube)));
                }
            }
        }
    }
    Ok(None)
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn and_n2_by_hand() {
        let inst = compose(2, Gadget::and()).unwrap();
        assert_eq!(inst.matrix.format(), "0000\n0101\n0011\n011*\n");
        assert_eq!(inst.matrix.get(0, 0), Entry::Zero);
    }

    #[test]
    fn ip2_zero_row() {
        let inst = compose(2, Gadget::ip2(2).unwrap()).unwrap();
        assert_eq!(inst.side(), 16);
        assert!((0..16).all(|y| inst.matrix.get(0, y) == Entry::Zero));
    }

    #[test]
    fn size_and_parity_gates() {
        assert!(compose(3, Gadget::and()).is_err());
        assert!(compose(0, Gadget::and()).is_err());
        assert!(compose(10, Gadget::and()).is_err());
        assert!(compose(8, Gadget::and()).is_ok());
        assert!(compose(6, Gadget::ip2(2).unwrap()).is_err());
    }

    #[test]
    fn fibers_partition_grid() {
        let inst = compose(2, Gadget::ip2(2).unwrap()).unwrap();
        let mut total = 0;
        for z in [[false, false], [false, true], [true, false], [true, true]] {
            total += wz_fiber(&inst, &z).unwrap().len();
        }
        assert_eq!(total, 256);
        assert!(wz_fiber(&inst, &[true]).is_err());
    }

    #[test]
    fn and_zero_fiber_by_brute_force() {
        let inst = compose(2, Gadget::and()).unwrap();
        let mut count = 0;
        for x in 0..4usize {
            for y in 0..4usize {
                if (x & y) == 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 9);
        assert_eq!(wz_fiber(&inst, &[false, false]).unwrap().len(), count);
    }

    #[test]
    fn subcube_examples() {
        let inst = compose(4, Gadget::and()).unwrap();
        let all = BitSet::full(16);
        assert_eq!(subcube_min_codim(&inst, &all, &all, 4).unwrap().unwrap().0, 0);
        let zero = BitSet::singleton(0);
        let (d, cube) = subcube_min_codim(&inst, &zero, &all, 4).unwrap().unwrap();
        assert_eq!(d, 4);
        assert!(cube.fixed.values().all(|&b| !b));
        assert_eq!(subcube_min_codim(&inst, &zero, &all, 3).unwrap(), None);
    }
}
