//! Nonnegative rank: certificates `M = Σ uᵢvᵢ` checked in exact rational
//! arithmetic, the combinatorial bounds around them, and two constructions
//! (the composed-matrix decomposition and a search for decompositions with
//! pairwise incompatible supports).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::composed::{compose, ComposedInstance, Gadget};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, real_rank, serde_rationals, Rational, RationalMatrix};
use crate::matrix::{Entry, PartialMatrix};
use crate::rect::{is_compatible, Partition, Rect};
use crate::solve::{
    binary_rank, boolean_rank, enumerate_one_sets, fooling_number, Control, ExactResult, Measure, SearchBudget,
    Witness,
};

/// One rank-1 term `u vᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(with = "serde_rationals")]
    pub u: Vec<Rational>,
    #[serde(with = "serde_rationals")]
    pub v: Vec<Rational>,
}

impl Component {
    pub fn from_rect(rect: &Rect, n_rows: usize, n_cols: usize) -> Self {
        let ind = |set: &BitSet, n: usize| (0..n).map(|i| Rational::from_integer(i64::from(set.contains(i)).into())).collect();
        Self { u: ind(rect.rows(), n_rows), v: ind(rect.cols(), n_cols) }
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(Zero::is_zero) || self.v.iter().all(Zero::is_zero)
    }

    /// Nonzero rows times nonzero columns; `None` for a zero component.
    pub fn support(&self) -> Option<Rect> {
        let nz = |w: &[Rational]| w.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(i, _)| i).collect();
        Rect::new(nz(&self.u), nz(&self.v)).ok()
    }

    pub fn value(&self, r: usize, c: usize) -> Rational {
        &self.u[r] * &self.v[c]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n_rows: usize,
    pub n_cols: usize,
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn new(n_rows: usize, n_cols: usize, components: Vec<Component>) -> Result<Self> {
        for (i, comp) in components.iter().enumerate() {
            if comp.u.len() != n_rows || comp.v.len() != n_cols {
                return Err(Error::Precondition(format!(
                    "component {i} has shape {}x{}, expected {n_rows}x{n_cols}",
                    comp.u.len(),
                    comp.v.len()
                )));
            }
        }
        Ok(Self { n_rows, n_cols, components })
    }

    /// 0/1 components, one per rectangle.
    pub fn from_rects(n_rows: usize, n_cols: usize, rects: &[Rect]) -> Self {
        let components = rects.iter().map(|r| Component::from_rect(r, n_rows, n_cols)).collect();
        Self { n_rows, n_cols, components }
    }

    /// `U` has the `u` vectors as columns, `V` the `v` vectors as rows.
    pub fn from_factors(u: &RationalMatrix, v: &RationalMatrix) -> Result<Self> {
        if u.n_cols() != v.n_rows() {
            return Err(Error::Precondition(format!("inner dimensions {} and {} differ", u.n_cols(), v.n_rows())));
        }
        let components = (0..u.n_cols())
            .map(|i| Component {
                u: (0..u.n_rows()).map(|r| u.get(r, i).clone()).collect(),
                v: (0..v.n_cols()).map(|c| v.get(i, c).clone()).collect(),
            })
            .collect();
        Ok(Self { n_rows: u.n_rows(), n_cols: v.n_cols(), components })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `Σ uᵢvᵢ`.
    pub fn product(&self) -> RationalMatrix {
        let mut p = RationalMatrix::zeros(self.n_rows, self.n_cols);
        for comp in &self.components {
            for (r, ur) in comp.u.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                for (c, vc) in comp.v.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                    p.add_at(r, c, &(ur * vc));
                }
            }
        }
        p
    }

    /// Supports of the nonzero components, in component order.
    pub fn supports(&self) -> Vec<Rect> {
        self.components.iter().filter_map(Component::support).collect()
    }

    /// Drops identically zero components.
    pub fn pruned(&self) -> Self {
        let components = self.components.iter().filter(|c| !c.is_zero()).cloned().collect();
        Self { components, ..*self }
    }

    /// Kronecker product, with the same row/column order as
    /// [`PartialMatrix::tensor`].
    pub fn tensor(&self, other: &Self) -> Self {
        let kron = |a: &[Rational], b: &[Rational]| a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let components = self
            .components
            .iter()
            .flat_map(|p| other.components.iter().map(move |q| Component { u: kron(&p.u, &q.u), v: kron(&p.v, &q.v) }))
            .collect();
        Self { n_rows: self.n_rows * other.n_rows, n_cols: self.n_cols * other.n_cols, components }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Nonnegative,
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub target: PartialMatrix,
    pub decomposition: Decomposition,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    kind: CertificateKind,
    target: PartialMatrix,
    components: Vec<Component>,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateRepr {
            kind: self.kind,
            target: self.target.clone(),
            components: self.decomposition.components.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CertificateRepr::deserialize(d)?;
        let decomposition = Decomposition::new(repr.target.n_rows(), repr.target.n_cols(), repr.components)
            .map_err(serde::de::Error::custom)?;
        Ok(Self { kind: repr.kind, target: repr.target, decomposition })
    }
}

impl Certificate {
    pub fn new(kind: CertificateKind, target: PartialMatrix, decomposition: Decomposition) -> Self {
        Self { kind, target, decomposition }
    }

    /// The binary certificate of a partition.
    pub fn from_partition(p: &Partition) -> Self {
        let host = p.host().clone();
        let decomposition = Decomposition::from_rects(host.n_rows(), host.n_cols(), p.rects());
        Self { kind: CertificateKind::Binary, target: host, decomposition }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn size(&self) -> usize {
        self.decomposition.len()
    }

    /// Kronecker product of two certificates; the kind is binary only if
    /// both are.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let kind = if self.kind == CertificateKind::Binary && other.kind == CertificateKind::Binary {
            CertificateKind::Binary
        } else {
            CertificateKind::Nonnegative
        };
        Ok(Self {
            kind,
            target: self.target.tensor(&other.target)?,
            decomposition: self.decomposition.tensor(&other.decomposition),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "where", rename_all = "snake_case")]
pub enum Violation {
    Component { index: usize, message: String },
    Cell { row: usize, col: usize, expected: String, found: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Component { index, message } => write!(f, "component {index}: {message}"),
            Violation::Cell { row, col, expected, found } => {
                write!(f, "cell ({row},{col}): expected {expected}, found {found}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub rank: usize,
    /// Identically zero components; allowed, and counted in `rank`.
    pub zero_components: usize,
    pub violation: Option<Violation>,
}

fn is_bit(q: &Rational) -> bool {
    q.is_zero() || q.is_one()
}

/// Exact check that the certificate realizes its target.
pub fn verify_certificate(cert: &Certificate) -> Result<VerificationReport> {
    let d = &cert.decomposition;
    let t = &cert.target;
    if d.n_rows != t.n_rows() || d.n_cols != t.n_cols() {
        return Err(Error::Precondition(format!(
            "decomposition is {}x{} but target is {}x{}",
            d.n_rows,
            d.n_cols,
            t.n_rows(),
            t.n_cols()
        )));
    }
    let d = Decomposition::new(d.n_rows, d.n_cols, d.components.clone())?;
    let report = |violation: Option<Violation>| VerificationReport {
        accepted: violation.is_none(),
        rank: d.len(),
        zero_components: d.components.iter().filter(|c| c.is_zero()).count(),
        violation,
    };
    for (index, comp) in d.components.iter().enumerate() {
        let bad = |message: &str| Some(Violation::Component { index, message: message.into() });
        if comp.u.iter().chain(&comp.v).any(Signed::is_negative) {
            return Ok(report(bad("negative entry")));
        }
        if cert.kind == CertificateKind::Binary && !comp.u.iter().chain(&comp.v).all(is_bit) {
            return Ok(report(bad("entry outside {0,1} in a binary certificate")));
        }
    }
    let p = d.product();
    for r in 0..t.n_rows() {
        for c in 0..t.n_cols() {
            let q = p.get(r, c);
            let expected = match t.get(r, c) {
                Entry::One if !q.is_one() => Some("1"),
                Entry::Zero if !q.is_zero() => Some("0"),
                Entry::Star if cert.kind == CertificateKind::Binary && !q.is_integer() => Some("an integer"),
                _ => None,
            };
            if let Some(expected) = expected {
                return Ok(report(Some(Violation::Cell {
                    row: r,
                    col: c,
                    expected: expected.into(),
                    found: format_rational(q),
                })));
            }
        }
    }
    Ok(report(None))
}

/// Bounds on the nonnegative rank, with the smallest certificate known.
#[derive(Clone, Debug, PartialEq)]
pub struct NonnegBounds {
    pub result: ExactResult,
    pub certificate: Option<Certificate>,
}

/// `lower = max(fooling, boolean lower, real rank if total)`,
/// `upper = min(binary upper, verified certificate sizes)`. A supplied
/// certificate that fails verification is an error.
pub fn rank_plus_bounds(m: &PartialMatrix, budget: &SearchBudget, certs: &[Certificate]) -> Result<NonnegBounds> {
    let fool = fooling_number(m, budget);
    let boolean = boolean_rank(m, budget);
    let binary = binary_rank(m, budget);
    rank_plus_from(m, &fool, &boolean, &binary, certs)
}

/// [`rank_plus_bounds`] from already computed fooling, boolean and binary
/// results for `m`.
pub fn rank_plus_from(
    m: &PartialMatrix,
    fool: &ExactResult,
    boolean: &ExactResult,
    binary: &ExactResult,
    certs: &[Certificate],
) -> Result<NonnegBounds> {
    let mut best: Option<Certificate> = None;
    for (i, cert) in certs.iter().enumerate() {
        if cert.target != *m {
            return Err(Error::Precondition(format!("certificate {i} targets a different matrix")));
        }
        let report = verify_certificate(cert)?;
        if let Some(v) = report.violation {
            return Err(Error::InvalidCertificate(format!("certificate {i}: {v}")));
        }
        if best.as_ref().is_none_or(|b| cert.size() < b.size()) {
            best = Some(cert.clone());
        }
    }
    let mut lower = fool.lower.max(boolean.lower);
    if m.is_total() {
        lower = lower.max(real_rank(m)?);
    }
    if let Some(Witness::Partition { rects }) = &binary.witness {
        let c = Certificate::from_partition(&Partition::new(m.clone(), rects.clone())?);
        if best.as_ref().is_none_or(|b| c.size() < b.size()) {
            best = Some(c);
        }
    }
    let upper = best.as_ref().map_or(binary.upper, |c| c.size().min(binary.upper));
    let nodes = fool.nodes + boolean.nodes + binary.nodes;
    let result = ExactResult::new(Measure::Nonnegative, lower.min(upper), upper, None, nodes);
    Ok(NonnegBounds { result, certificate: best })
}

/// The decomposition of `f ∘ gⁿ` into `n·2^b` rank-1 terms: for each
/// position `i` and block value `s`, `2/n` on `{x : xᵢ = s} × {y : g(s, yᵢ) = 1}`.
/// Terms with `g(s, ·) ≡ 0` are kept (they are zero).
pub fn lemma21_decomposition(n: usize, g: Gadget) -> Result<Certificate> {
    let inst = compose(n, g)?;
    let decomposition = lemma21_components(&inst);
    Ok(Certificate::new(CertificateKind::Nonnegative, inst.matrix, decomposition))
}

fn lemma21_components(inst: &ComposedInstance) -> Decomposition {
    let side = inst.side();
    let weight = Rational::new(2.into(), (inst.n as i64).into());
    let mut components = Vec::new();
    for i in 0..inst.n {
        for s in 0..inst.gadget.block_count() {
            let u = (0..side).map(|x| if inst.block(x, i) == s { weight.clone() } else { Rational::zero() }).collect();
            let v = (0..side)
                .map(|y| if inst.gadget.eval(s, inst.block(y, i)) { Rational::one() } else { Rational::zero() })
                .collect();
            components.push(Component { u, v });
        }
    }
    Decomposition { n_rows: side, n_cols: side, components }
}

/// Searches for an `r`-term nonnegative decomposition of a total matrix
/// whose supports are pairwise incompatible in both orders.
///
/// Supports are `r`-sets of all-ones rectangles covering the Ones. Values
/// are then sought with one factor fixed to the 0/1 indicator of its
/// support: each row (or column) gives a small linear system, and the
/// centroid of its nonnegative basic solutions is strictly positive exactly
/// when some solution is. `Ok(None)` means nothing was found within budget.
pub fn find_incompatible_decomposition(
    m: &PartialMatrix,
    r: usize,
    budget: &SearchBudget,
) -> Result<Option<Certificate>> {
    m.ensure_total("find_incompatible_decomposition")?;
    if r == 0 {
        return Ok(None);
    }
    let Some(rects) = enumerate_one_sets(m, crate::solve::ONE_SET_WORK_LIMIT) else {
        return Ok(None);
    };
    let ones: Vec<(usize, usize)> = m.ones().collect();
    let ctl = Control::new(budget);
    let mut chosen = Vec::with_capacity(r);
    let mut found = None;
    search_supports(m, &rects, &ones, r, 0, &mut chosen, &ctl, &mut found);
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search_supports(
    m: &PartialMatrix,
    rects: &[Rect],
    ones: &[(usize, usize)],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    ctl: &Control,
    found: &mut Option<Certificate>,
) {
    if found.is_some() || !ctl.tick() {
        return;
    }
    if chosen.len() == r {
        let supports: Vec<Rect> = chosen.iter().map(|&q| rects[q].clone()).collect();
        if ones.iter().all(|&(a, b)| supports.iter().any(|s| s.contains(a, b))) {
            *found = realize(m, &supports);
        }
        return;
    }
    for q in start..rects.len() {
        let ok = chosen
            .iter()
            .all(|&p| !is_compatible(&rects[p], &rects[q]) && !is_compatible(&rects[q], &rects[p]));
        if ok {
            chosen.push(q);
            search_supports(m, rects, ones, r, q + 1, chosen, ctl, found);
            chosen.pop();
            if found.is_some() || ctl.exhausted() {
                return;
            }
        }
    }
}

/// Values for fixed supports, trying indicator `v` then indicator `u`.
fn realize(m: &PartialMatrix, supports: &[Rect]) -> Option<Certificate> {
    let try_side = |m: &PartialMatrix, supports: &[Rect]| -> Option<Decomposition> {
        let mut comps: Vec<Component> = supports.iter().map(|s| Component::from_rect(s, m.n_rows(), m.n_cols())).collect();
        for a in 0..m.n_rows() {
            let vars: Vec<usize> = (0..supports.len()).filter(|&i| supports[i].rows().contains(a)).collect();
            if vars.is_empty() {
                continue;
            }
            let eqs: Vec<usize> = (0..m.n_cols()).filter(|&b| m.get(a, b) == Entry::One).collect();
            let a_mat = RationalMatrix::from_fn(eqs.len(), vars.len(), |e, k| {
                Rational::from_integer(i64::from(supports[vars[k]].cols().contains(eqs[e])).into())
            });
            let x = positive_solution(&a_mat)?;
            for (k, &i) in vars.iter().enumerate() {
                comps[i].u[a] = x[k].clone();
            }
        }
        Some(Decomposition { n_rows: m.n_rows(), n_cols: m.n_cols(), components: comps })
    };
    let decomposition = try_side(m, supports).or_else(|| {
        let t = m.transpose();
        let flipped: Vec<Rect> =
            supports.iter().map(|s| Rect::new(s.cols().clone(), s.rows().clone()).expect("nonempty")).collect();
        try_side(&t, &flipped).map(|d| Decomposition {
            n_rows: d.n_cols,
            n_cols: d.n_rows,
            components: d.components.into_iter().map(|c| Component { u: c.v, v: c.u }).collect(),
        })
    })?;
    let cert = Certificate::new(CertificateKind::Nonnegative, m.clone(), decomposition);
    verify_certificate(&cert).ok()?.accepted.then_some(cert)
}

/// A strictly positive solution of `A x = 1` with `A` 0/1 and every column
/// nonzero (so the feasible set is a bounded polytope), if one exists.
fn positive_solution(a: &RationalMatrix) -> Option<Vec<Rational>> {
    let k = a.n_cols();
    if k > 16 {
        return None;
    }
    let ones = vec![Rational::one(); a.n_rows()];
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    for mask in 1u32..1 << k {
        let cols: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
        let sub = RationalMatrix::from_fn(a.n_rows(), cols.len(), |r, j| a.get(r, cols[j]).clone());
        if let Some(x) = sub.solve_unique(&ones) {
            if x.iter().all(|q| !q.is_negative()) {
                let mut full = vec![Rational::zero(); k];
                for (j, q) in cols.iter().zip(x) {
                    full[*j] = q;
                }
                vertices.push(full);
            }
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let count = Rational::from_integer((vertices.len() as i64).into());
    let centroid: Vec<Rational> =
        (0..k).map(|j| vertices.iter().map(|v| &v[j]).sum::<Rational>() / &count).collect();
    centroid.iter().all(Signed::is_positive).then_some(centroid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn m5x6() -> PartialMatrix {
        PartialMatrix::parse("111000\n100110\n010101\n001011\n111111\n").unwrap()
    }

    fn m5x6_cert() -> Certificate {
        let m = m5x6();
        let u = RationalMatrix::from_fn(5, 4, |r, c| if r == 4 { rat(1, 2) } else { int(i64::from(r == c)) });
        let v = RationalMatrix::from_partial(&m.submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5]).unwrap()).unwrap();
        Certificate::new(CertificateKind::Nonnegative, m, Decomposition::from_factors(&u, &v).unwrap())
    }

    #[test]
    fn bundled_certificate_verifies() {
        let report = verify_certificate(&m5x6_cert()).unwrap();
        assert!(report.accepted, "{report:?}");
        assert_eq!(report.rank, 4);
    }

    #[test]
    fn corrupted_certificate_names_cell() {
        let mut cert = m5x6_cert();
        cert.decomposition.components[0].u[4] = rat(1, 3);
        let report = verify_certificate(&cert).unwrap();
        assert!(!report.accepted);
        assert_eq!(
            report.violation,
            Some(Violation::Cell { row: 4, col: 0, expected: "1".into(), found: "5/6".into() })
        );
        cert.decomposition.components[1].v[0] = int(-1);
        let report = verify_certificate(&cert).unwrap();
        assert!(matches!(report.violation, Some(Violation::Component { index: 1, .. })));
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let mut cert = m5x6_cert();
        cert.target = PartialMatrix::identity(3);
        assert!(verify_certificate(&cert).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cert = m5x6_cert();
        let text = cert.to_json();
        assert!(text.contains("\"1/2\""));
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }

    #[test]
    fn partition_certificate_is_binary() {
        let m = m5x6();
        let rects: Vec<Rect> = (0..5).map(|r| Rect::new(BitSet::singleton(r), m.row_set(r, |e| e == Entry::One)).unwrap()).collect();
        let cert = Certificate::from_partition(&Partition::new(m, rects).unwrap());
        let report = verify_certificate(&cert).unwrap();
        assert!(report.accepted);
        assert_eq!(report.rank, 5);
    }

    #[test]
    fn binary_kind_rejects_fractions() {
        let mut cert = m5x6_cert();
        cert.kind = CertificateKind::Binary;
        assert!(!verify_certificate(&cert).unwrap().accepted);
    }

    #[test]
    fn bounds_close_with_certificate() {
        let b = rank_plus_bounds(&m5x6(), &SearchBudget::default().sequential(), &[m5x6_cert()]).unwrap();
        assert_eq!(b.result.value, Some(4));
        assert_eq!(b.certificate.unwrap().size(), 4);
        let id = rank_plus_bounds(&PartialMatrix::identity(4), &SearchBudget::default(), &[]).unwrap();
        assert_eq!(id.result.value, Some(4));
    }

    #[test]
    fn invalid_supplied_certificate_is_rejected() {
        let mut cert = m5x6_cert();
        cert.decomposition.components[2].v[5] = int(2);
        let err = rank_plus_bounds(&m5x6(), &SearchBudget::default(), &[cert]).unwrap_err();
        assert!(matches!(err, Error::InvalidCertificate(_)));
    }

    #[test]
    fn lemma21_small_cases_verify() {
        for (n, g, comps) in [(2, Gadget::and(), 4), (4, Gadget::and(), 8), (2, Gadget::ip2(2).unwrap(), 8)] {
            let cert = lemma21_decomposition(n, g).unwrap();
            assert_eq!(cert.size(), comps);
            assert!(verify_certificate(&cert).unwrap().accepted);
        }
        assert!(lemma21_decomposition(3, Gadget::and()).is_err());
    }

    #[test]
    fn tensor_of_certificates() {
        let c = m5x6_cert();
        let c2 = c.tensor(&c).unwrap();
        assert_eq!(c2.size(), 16);
        assert!(verify_certificate(&c2).unwrap().accepted);
    }

    #[test]
    fn incompatible_search() {
        let third = PartialMatrix::parse("110\n101\n011\n111\n").unwrap();
        let cert = find_incompatible_decomposition(&third, 3, &SearchBudget::default()).unwrap().unwrap();
        let s = cert.decomposition.supports();
        assert_eq!(s.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert!(i == j || !is_compatible(&s[i], &s[j]));
            }
        }
        let budget = SearchBudget::default();
        assert_eq!(find_incompatible_decomposition(&PartialMatrix::identity(3), 3, &budget).unwrap(), None);
        assert_eq!(find_incompatible_decomposition(&PartialMatrix::all_ones(2, 2), 2, &budget).unwrap(), None);
    }
}
