//! One-way sampling protocols read off nonnegative certificates: pick a
//! component with probability proportional to its mass, then Alice and Bob
//! independently sample a row from `u` and a column from `v`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, serde_rational, serde_rationals, Rational, RationalMatrix};
use crate::matrix::{Entry, PartialMatrix};
use crate::nonneg::{verify_certificate, Certificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    #[serde(with = "serde_rational")]
    pub probability: Rational,
    #[serde(with = "serde_rationals")]
    pub row_dist: Vec<Rational>,
    #[serde(with = "serde_rationals")]
    pub col_dist: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingProtocol {
    pub n_rows: usize,
    pub n_cols: usize,
    pub transcripts: Vec<Transcript>,
}

impl SamplingProtocol {
    /// Checks that every distribution is nonnegative and sums to 1.
    pub fn validate(&self) -> Result<()> {
        let is_dist = |w: &[Rational]| !w.iter().any(Signed::is_negative) && w.iter().sum::<Rational>() == one();
        let probs: Vec<Rational> = self.transcripts.iter().map(|t| t.probability.clone()).collect();
        if !is_dist(&probs) {
            return Err(Error::Precondition("transcript probabilities are not a distribution".into()));
        }
        for (i, t) in self.transcripts.iter().enumerate() {
            if t.row_dist.len() != self.n_rows || t.col_dist.len() != self.n_cols {
                return Err(Error::Precondition(format!("transcript {i} has the wrong shape")));
            }
            if !is_dist(&t.row_dist) || !is_dist(&t.col_dist) {
                return Err(Error::Precondition(format!("transcript {i} has an invalid distribution")));
            }
        }
        Ok(())
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// One transcript per component, with probability `|u|₁|v|₁` over the total
/// mass of the product (the number of Ones, for a total target).
pub fn protocol_from_certificate(cert: &Certificate) -> Result<SamplingProtocol> {
    let report = verify_certificate(cert)?;
    if let Some(v) = report.violation {
        return Err(Error::Precondition(format!("certificate does not verify: {v}")));
    }
    if cert.target.count_ones() == 0 {
        return Err(Error::Precondition("target has no Ones".into()));
    }
    let d = &cert.decomposition;
    let masses: Vec<(Rational, Rational)> =
        d.components.iter().map(|c| (c.u.iter().sum::<Rational>(), c.v.iter().sum::<Rational>())).collect();
    if let Some(i) = masses.iter().position(|(a, b)| a.is_zero() || b.is_zero()) {
        return Err(Error::Precondition(format!("component {i} has zero mass")));
    }
    let total: Rational = masses.iter().map(|(a, b)| a * b).sum();
    let transcripts = d
        .components
        .iter()
        .zip(&masses)
        .map(|(c, (su, sv))| Transcript {
            probability: su * sv / &total,
            row_dist: c.u.iter().map(|q| q / su).collect(),
            col_dist: c.v.iter().map(|q| q / sv).collect(),
        })
        .collect();
    Ok(SamplingProtocol { n_rows: d.n_rows, n_cols: d.n_cols, transcripts })
}

/// `Pr[(a, b)] = Σᵢ pᵢ · rowᵢ(a) · colᵢ(b)`.
pub fn exact_distribution(p: &SamplingProtocol) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(p.n_rows, p.n_cols);
    for t in &p.transcripts {
        for (a, ra) in t.row_dist.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            let w = &t.probability * ra;
            for (b, cb) in t.col_dist.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                out.add_at(a, b, &(&w * cb));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub uniform: bool,
    /// The value every One should have: `(1 - Star mass) / #Ones`.
    #[serde(with = "serde_rational")]
    pub expected: Rational,
    #[serde(with = "serde_rational")]
    pub star_mass: Rational,
    /// `(row, col, probability)` for each offending cell.
    pub violations: Vec<(usize, usize, String)>,
}

/// Whether the joint law vanishes on Zeros and is constant on Ones
/// (conditioned on landing outside the Stars).
pub fn check_uniform(p: &SamplingProtocol, m: &PartialMatrix) -> Result<UniformityReport> {
    if p.n_rows != m.n_rows() || p.n_cols != m.n_cols() {
        return Err(Error::Precondition("protocol and matrix shapes differ".into()));
    }
    let dist = exact_distribution(p);
    let star_mass: Rational = m.cells(Entry::Star).map(|(r, c)| dist.get(r, c).clone()).sum();
    let n_ones = m.count_ones();
    let expected = if n_ones == 0 {
        Rational::zero()
    } else {
        (one() - &star_mass) / Rational::from_integer((n_ones as i64).into())
    };
    let mut violations = Vec::new();
    for r in 0..m.n_rows() {
        for c in 0..m.n_cols() {
            let q = dist.get(r, c);
            let bad = match m.get(r, c) {
                Entry::Zero => !q.is_zero(),
                Entry::One => *q != expected,
                Entry::Star => false,
            };
            if bad {
                violations.push((r, c, format_rational(q)));
            }
        }
    }
    Ok(UniformityReport { uniform: violations.is_empty() && n_ones > 0, expected, star_mass, violations })
}
