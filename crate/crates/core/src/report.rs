//! All rank measures of one matrix in a single report, with the chain
//! inequalities between them checked before anything is printed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gf2_rank, real_rank};
use crate::matrix::PartialMatrix;
use crate::nonneg::{rank_plus_from, Certificate, CertificateKind};
use crate::solve::{binary_rank, boolean_rank, fooling_number, ExactResult, SearchBudget};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub kind: CertificateKind,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub n_rows: usize,
    pub n_cols: usize,
    pub total: bool,
    /// Only defined for total matrices.
    pub real_rank: Option<usize>,
    pub gf2_rank: Option<usize>,
    pub fooling: ExactResult,
    pub boolean: ExactResult,
    pub binary: ExactResult,
    pub nonnegative: ExactResult,
    pub certificate: Option<CertificateSummary>,
}

impl RankReport {
    pub fn all_proved(&self) -> bool {
        [&self.fooling, &self.boolean, &self.binary, &self.nonnegative].iter().all(|r| r.is_proved())
    }

    /// Chain inequalities that the computed bounds contradict.
    pub fn chain_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut le = |a: &str, x: usize, b: &str, y: usize| {
            if x > y {
                out.push(format!("{a} ({x}) > {b} ({y})"));
            }
        };
        if let (Some(g), Some(r)) = (self.gf2_rank, self.real_rank) {
            le("gf2 rank", g, "real rank", r);
        }
        if let Some(r) = self.real_rank {
            le("real rank", r, "nonnegative rank upper", self.nonnegative.upper);
        }
        le("fooling lower", self.fooling.lower, "boolean upper", self.boolean.upper);
        le("boolean lower", self.boolean.lower, "nonnegative upper", self.nonnegative.upper);
        le("nonnegative lower", self.nonnegative.lower, "binary upper", self.binary.upper);
        le("fooling lower", self.fooling.lower, "binary upper", self.binary.upper);
        out
    }
}

/// Runs every measure on `m`; `certs` are checked and used for the
/// nonnegative upper bound.
pub fn rank_report(m: &PartialMatrix, budget: &SearchBudget, certs: &[Certificate]) -> Result<RankReport> {
    let total = m.is_total();
    let (real, gf2) = if total { (Some(real_rank(m)?), Some(gf2_rank(m)?)) } else { (None, None) };
    let fooling = fooling_number(m, budget);
    let boolean = boolean_rank(m, budget);
    let binary = binary_rank(m, budget);
    let plus = rank_plus_from(m, &fooling, &boolean, &binary, certs)?;
    for r in [&fooling, &boolean, &binary] {
        r.validate(m)?;
    }
    let report = RankReport {
        n_rows: m.n_rows(),
        n_cols: m.n_cols(),
        total,
        real_rank: real,
        gf2_rank: gf2,
        fooling,
        boolean,
        binary,
        nonnegative: plus.result,
        certificate: plus.certificate.map(|c| CertificateSummary { kind: c.kind, size: c.size() }),
    };
    let violations = report.chain_violations();
    if !violations.is_empty() {
        return Err(Error::Precondition(format!("rank chain violated: {}", violations.join("; "))));
    }
    Ok(report)
}
