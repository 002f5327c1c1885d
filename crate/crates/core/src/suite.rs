//! The golden checks behind `rankforge verify-paper`. Each check is
//! independent, named, and reports pass/fail with a one-line detail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::composed::{compose, Gadget};
use crate::data::DataSet;
use crate::linalg::{rat, real_rank, Rational};
use crate::matrix::{CellSet, Entry, PartialMatrix};
use crate::nonneg::{find_incompatible_decomposition, lemma21_decomposition, verify_certificate, Certificate};
use crate::rect::{
    bipartite_partition, bipartition, enumerate_candidate_rects, is_compatible, leftover, permutations, technique1, types,
    Axis, Cover, Partition, Rect,
};
use crate::sampling::{check_uniform, exact_distribution, protocol_from_certificate};
use crate::solve::{binary_rank, boolean_rank, fooling_number, is_fooling_set, uniform_cover_number, SearchBudget, Witness};

/// Binary ranks of `compose(n, AND)`, fixed by exhaustive search.
pub const COMPOSED_AND_BINARY: [(usize, usize); 2] = [(2, 2), (4, 3)];

pub const CHECKS: [&str; 12] = [
    "m5x6",
    "m12x12",
    "composed-decomposition",
    "leftovers",
    "leftover-example",
    "types-example",
    "incompatible-example",
    "sampling",
    "tensor-identities",
    "tensor-probe",
    "composed-regression",
    "bipartite",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub seconds: f64,
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs every check not named in `skip`, in [`CHECKS`] order.
pub fn run_suite(data: &DataSet, budget: &SearchBudget, skip: &[String]) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&name| {
            if skip.iter().any(|s| s == name) {
                CheckResult { name: name.into(), status: CheckStatus::Skipped, detail: "skipped".into(), seconds: 0.0 }
            } else {
                run_check(name, data, budget)
            }
        })
        .collect()
}

pub fn run_check(name: &str, data: &DataSet, budget: &SearchBudget) -> CheckResult {
    let start = Instant::now();
    let outcome = match name {
        "m5x6" => m5x6(data, budget),
        "m12x12" => m12x12(data, budget),
        "composed-decomposition" => composed_decomposition(),
        "leftovers" => leftovers_check(data, budget),
        "leftover-example" => leftover_check(data, budget),
        "types-example" => types_check(data, budget),
        "incompatible-example" => incompatible_check(data, budget),
        "sampling" => sampling(data),
        "tensor-identities" => tensor_identities(data, budget),
        "tensor-probe" => tensor_probe(data, budget),
        "composed-regression" => composed_regression(budget),
        "bipartite" => bipartite(data),
        other => Err(format!("unknown check {other:?}")),
    };
    let (status, detail) = match outcome {
        Ok(d) => (CheckStatus::Pass, d),
        Err(d) => (CheckStatus::Fail, d),
    };
    CheckResult { name: name.into(), status, detail, seconds: start.elapsed().as_secs_f64() }
}

fn verified(cert: &Certificate, what: &str) -> std::result::Result<(), String> {
    let report = verify_certificate(cert).map_err(err)?;
    match report.violation {
        None => Ok(()),
        Some(v) => Err(format!("{what} certificate rejected: {v}")),
    }
}

fn separation(
    m: &PartialMatrix,
    cert: &Certificate,
    fool: usize,
    binary: usize,
    budget: &SearchBudget,
) -> std::result::Result<(), String> {
    let f = fooling_number(m, budget);
    ensure(f.value == Some(fool), || format!("fooling number {:?}..{:?}, expected {fool}", f.lower, f.upper))?;
    verified(cert, "bundled")?;
    ensure(cert.target == *m && cert.size() == fool, || format!("certificate has size {}", cert.size()))?;
    let b = binary_rank(m, budget);
    b.validate(m).map_err(err)?;
    ensure(b.value == Some(binary), || format!("binary rank {}..{}, expected {binary}", b.lower, b.upper))?;
    Ok(())
}

fn m5x6(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m = &data.m5x6;
    separation(m, &data.m5x6_cert, 4, 5, budget)?;
    // The three colour classes are fooling sets that split the top four rows.
    let mut union = CellSet::new();
    for (colour, cells) in &data.m5x6_fooling {
        ensure(cells.len() == 4 && is_fooling_set(m, cells), || format!("{colour} is not a fooling set of size 4"))?;
        for &c in cells {
            ensure(union.insert(c), || format!("{colour} overlaps another colour"))?;
        }
    }
    let top: CellSet = m.ones().filter(|&(r, _)| r < 4).collect();
    ensure(union == top, || "colours do not cover the top four rows".into())?;
    let bool_rank = boolean_rank(m, budget);
    ensure(bool_rank.value == Some(4), || format!("boolean rank {}..{}, expected 4", bool_rank.lower, bool_rank.upper))?;
    let u = uniform_cover_number(m, 2, budget);
    ensure(u.lower >= 4 && u.upper <= 5, || format!("uniform cover {}..{}", u.lower, u.upper))?;
    Ok(format!("fooling 4, boolean 4, rank_+ 4 (certificate), binary 5, uniform cover {}..{}", u.lower, u.upper))
}

fn m12x12(data: &DataSet, budget: &SearchBudget) -> Outcome {
    separation(&data.m12x12, &data.m12x12_cert, 9, 12, budget)?;
    Ok("fooling 9, rank_+ 9 (certificate), binary 12".into())
}

fn composed_decomposition() -> Outcome {
    let cases = [(2, Gadget::and()), (4, Gadget::and()), (2, Gadget::ip2(2).map_err(err)?)];
    let mut parts = Vec::new();
    for (n, g) in cases {
        let cert = lemma21_decomposition(n, g).map_err(err)?;
        let expected = n << g.b;
        ensure(cert.size() == expected, || format!("{g} n={n}: {} components, expected {expected}", cert.size()))?;
        verified(&cert, &format!("{g} n={n}"))?;
        let weight = rat(2, n as i64);
        for (x, y) in cert.target.ones() {
            let vals: Vec<Rational> = cert
                .decomposition
                .components
                .iter()
                .map(|c| c.value(x, y))
                .filter(|q| *q != Rational::default())
                .collect();
            ensure(vals.len() == n / 2 && vals.iter().all(|q| *q == weight), || {
                format!("{g} n={n}: cell ({x},{y}) gets {} contributions", vals.len())
            })?;
        }
        parts.push(format!("{g} n={n}: {expected}"));
    }
    Ok(parts.join(", "))
}

/// Seeded random partition of the Ones of a small total matrix.
pub fn random_partition(rng: &mut impl Rng) -> Partition {
    let n_rows = rng.gen_range(1..=8);
    let n_cols = rng.gen_range(1..=8);
    let mut rects: Vec<Rect> = Vec::new();
    let mut used = CellSet::new();
    for _ in 0..12 {
        let mut pick = |n: usize| -> BitSet {
            let s: BitSet = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
            if s.is_empty() {
                BitSet::singleton(rng.gen_range(0..n))
            } else {
                s
            }
        };
        let rect = Rect::new(pick(n_rows), pick(n_cols)).expect("nonempty");
        let cells = rect.cells();
        if cells.is_disjoint(&used) {
            used.union_with(&cells);
            rects.push(rect);
        }
    }
    let host = PartialMatrix::from_fn(n_rows, n_cols, |r, c| if used.contains(&(r, c)) { Entry::One } else { Entry::Zero });
    Partition::new(host, rects).expect("disjoint rectangles partition their union")
}

fn leftovers_rectangular(cert: &Certificate) -> bool {
    let supports = cert.decomposition.supports();
    (0..supports.len()).all(|i| leftover(i, &supports).1)
}

fn leftovers_check(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let mut certs = vec![
        ("m5x6".to_string(), data.m5x6_cert.clone()),
        ("m12x12".to_string(), data.m12x12_cert.clone()),
        ("m5x6^2".to_string(), data.m5x6_cert.tensor(&data.m5x6_cert).map_err(err)?),
    ];
    if let Some(c) = find_incompatible_decomposition(&data.incompatible_example, 3, budget).map_err(err)? {
        certs.push(("incompatible".into(), c));
    }
    for (name, m) in [("leftover-example", &data.leftover_example), ("types-example", &data.types_example)] {
        if let Some(Witness::Partition { rects }) = binary_rank(m, budget).witness {
            certs.push((name.into(), Certificate::from_partition(&Partition::new(m.clone(), rects).map_err(err)?)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..100 {
        certs.push((format!("random-{i}"), Certificate::from_partition(&random_partition(&mut rng))));
    }
    for (name, cert) in &certs {
        verified(cert, name)?;
        ensure(leftovers_rectangular(cert), || format!("{name}: a leftover is not a rectangle"))?;
    }
    Ok(format!("{} certificates, every leftover a rectangle", certs.len()))
}

fn leftover_check(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m = &data.leftover_example;
    let cover = Cover::new(m.clone(), data.leftover_cover.clone()).map_err(err)?;
    ensure(cover.len() == 3, || format!("cover has {} rectangles", cover.len()))?;
    ensure((0..3).all(|i| cover.leftover(i).1), || "a leftover is not a rectangle".into())?;
    let b = binary_rank(m, budget);
    ensure(b.value == Some(4), || format!("binary rank {}..{}, expected 4", b.lower, b.upper))?;
    Ok("3-rectangle cover with rectangular leftovers, binary rank 4".into())
}

fn nontrivial_types(cover: &Cover, axis: Axis) -> std::result::Result<usize, String> {
    Ok(types(cover, axis).map_err(err)?.iter().filter(|t| t.is_nontrivial()).count())
}

fn types_check(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m = &data.types_example;
    let b = binary_rank(m, budget);
    ensure(b.value == Some(3), || format!("binary rank {}..{}, expected 3", b.lower, b.upper))?;
    let mut covers: Vec<Vec<Rect>> = Vec::new();
    if let Some(Witness::Partition { rects }) = b.witness {
        covers.push(rects);
    }
    let cand = enumerate_candidate_rects(m);
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            for k in j + 1..cand.len() {
                let rects = vec![cand[i].clone(), cand[j].clone(), cand[k].clone()];
                if Cover::new(m.clone(), rects.clone()).is_ok() {
                    covers.push(rects);
                }
            }
        }
    }
    for rects in &covers {
        let cover = Cover::new(m.clone(), rects.clone()).map_err(err)?;
        let rows = nontrivial_types(&cover, Axis::Rows)?;
        let cols = nontrivial_types(&cover, Axis::Cols)?;
        ensure(rows >= 4 && cols >= 4, || format!("a minimal cover has {rows} row types and {cols} column types"))?;
    }
    Ok(format!("binary rank 3; {} minimal covers, each with >= 4 row and column types", covers.len()))
}

fn incompatible_check(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m = &data.incompatible_example;
    let cert = find_incompatible_decomposition(m, 3, budget)
        .map_err(err)?
        .ok_or_else(|| "no incompatible decomposition found".to_string())?;
    verified(&cert, "found")?;
    let s = cert.decomposition.supports();
    ensure(s.len() == 3, || format!("{} supports", s.len()))?;
    for i in 0..3 {
        for j in 0..3 {
            ensure(i == j || !is_compatible(&s[i], &s[j]), || format!("supports {i} and {j} are compatible"))?;
        }
    }
    for pi in permutations(3) {
        let sets = technique1(&s, &pi).map_err(err)?;
        ensure(sets.iter().any(|(_, ok)| !ok), || format!("technique 1 succeeds for {pi:?}"))?;
    }
    Ok("size-3 certificate with pairwise incompatible supports; technique 1 fails for all 6 orders".into())
}

fn sampling(data: &DataSet) -> Outcome {
    for (name, cert, per_one, transcripts) in
        [("m5x6", &data.m5x6_cert, rat(1, 18), 4), ("m12x12", &data.m12x12_cert, rat(1, 54), 9)]
    {
        let p = protocol_from_certificate(cert).map_err(err)?;
        p.validate().map_err(err)?;
        ensure(p.transcripts.len() == transcripts, || format!("{name}: {} transcripts", p.transcripts.len()))?;
        let dist = exact_distribution(&p);
        for r in 0..cert.target.n_rows() {
            for c in 0..cert.target.n_cols() {
                let want = if cert.target.get(r, c) == Entry::One { per_one.clone() } else { Rational::default() };
                ensure(*dist.get(r, c) == want, || format!("{name}: cell ({r},{c}) has mass {}", dist.get(r, c)))?;
            }
        }
    }
    // Alice keeps the chosen row with probability 2/3 and otherwise outputs
    // the bottom row; Bob is uniform over the chosen row's Ones.
    let p = protocol_from_certificate(&data.m5x6_cert).map_err(err)?;
    for (i, t) in p.transcripts.iter().enumerate() {
        ensure(t.probability == rat(1, 4), || format!("transcript {i} has probability {}", t.probability))?;
        ensure(t.row_dist[i] == rat(2, 3) && t.row_dist[4] == rat(1, 3), || format!("transcript {i}: row law"))?;
        ensure(t.col_dist.iter().all(|q| *q == Rational::default() || *q == rat(1, 3)), || {
            format!("transcript {i}: column law")
        })?;
    }
    let lemma = lemma21_decomposition(2, Gadget::and()).map_err(err)?;
    let pruned = Certificate::new(lemma.kind, lemma.target.clone(), lemma.decomposition.pruned());
    let p = protocol_from_certificate(&pruned).map_err(err)?;
    let report = check_uniform(&p, &lemma.target).map_err(err)?;
    ensure(report.uniform, || format!("composed protocol not uniform: {:?}", report.violations))?;
    Ok("1/18 and 1/54 on every One, 0 elsewhere; composed protocol uniform off the Stars".into())
}

fn tensor_identities(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m = &data.m5x6;
    let m2 = m.tensor(m).map_err(err)?;
    let f = fooling_number(&m2, budget);
    f.validate(&m2).map_err(err)?;
    ensure(f.value == Some(16), || format!("fooling(M^2) {}..{}, expected 16", f.lower, f.upper))?;
    let cert = data.m5x6_cert.tensor(&data.m5x6_cert).map_err(err)?;
    verified(&cert, "tensor")?;
    ensure(cert.size() == 16 && cert.target == m2, || "tensor certificate has the wrong shape".into())?;
    let r = real_rank(m).map_err(err)?;
    let r2 = real_rank(&m2).map_err(err)?;
    ensure(r2 == r * r, || format!("real rank {r2} is not {r}^2"))?;
    Ok("fooling(M^2) = 16 = size of verified tensor certificate".into())
}

fn tensor_probe(data: &DataSet, budget: &SearchBudget) -> Outcome {
    let m2 = data.m5x6.tensor(&data.m5x6).map_err(err)?;
    let b = binary_rank(&m2, budget);
    b.validate(&m2).map_err(err)?;
    ensure(b.lower >= 16 && b.upper <= 25, || format!("binary(M^2) interval {}..{} escapes 16..25", b.lower, b.upper))?;
    let status = if b.is_proved() { "proved" } else { "budget exhausted" };
    Ok(format!("binary(M^2) in {}..{} ({status}, {} nodes)", b.lower, b.upper, b.nodes))
}

fn composed_regression(budget: &SearchBudget) -> Outcome {
    let mut parts = Vec::new();
    for (n, expected) in COMPOSED_AND_BINARY {
        let inst = compose(n, Gadget::and()).map_err(err)?;
        let b = binary_rank(&inst.matrix, budget);
        b.validate(&inst.matrix).map_err(err)?;
        ensure(b.value == Some(expected), || format!("AND n={n}: binary {}..{}, expected {expected}", b.lower, b.upper))?;
        let f = fooling_number(&inst.matrix, budget);
        ensure(f.lower <= expected, || format!("AND n={n}: fooling {} exceeds binary", f.lower))?;
        parts.push(format!("AND n={n}: {expected}"));
    }
    Ok(parts.join(", "))
}

fn bipartite(data: &DataSet) -> Outcome {
    // A triangle of pairwise-meeting rectangles has no bipartition.
    let tri = Cover::new(data.leftover_example.clone(), data.leftover_cover.clone()).map_err(err)?;
    ensure(bipartite_partition(&tri).is_err(), || "odd cycle accepted".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut found = 0;
    for _ in 0..20_000 {
        if found == 25 {
            break;
        }
        let Some(cover) = random_bipartite_cover(&mut rng) else { continue };
        let p = bipartite_partition(&cover).map_err(err)?;
        ensure(p.len() <= cover.len(), || "partition larger than cover".into())?;
        found += 1;
    }
    ensure(found == 25, || format!("only {found} bipartite covers generated"))?;
    Ok(format!("{found} random bipartite covers converted to partitions"))
}

/// A random cover with a bipartite, nonempty intersection graph and
/// rectangular leftovers, if the draw produces one.
pub fn random_bipartite_cover(rng: &mut impl Rng) -> Option<Cover> {
    let n_rows = rng.gen_range(2..=6);
    let n_cols = rng.gen_range(2..=6);
    let k = rng.gen_range(2..=4);
    let mut rects = Vec::new();
    for _ in 0..k {
        let r0 = rng.gen_range(0..n_rows);
        let r1 = rng.gen_range(r0..n_rows);
        let c0 = rng.gen_range(0..n_cols);
        let c1 = rng.gen_range(c0..n_cols);
        rects.push(Rect::new((r0..=r1).collect(), (c0..=c1).collect()).ok()?);
    }
    let colours = bipartition(&rects)?;
    let has_edge = (0..k).any(|i| (i + 1..k).any(|j| rects[i].intersects(&rects[j])));
    if !has_edge || colours.is_empty() || !(0..k).all(|i| leftover(i, &rects).1) {
        return None;
    }
    let host = PartialMatrix::from_fn(n_rows, n_cols, |r, c| {
        if rects.iter().any(|q| q.contains(r, c)) {
            Entry::One
        } else {
            Entry::Zero
        }
    });
    Cover::new(host, rects).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_partitions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_partition(&mut rng);
            assert!(!p.is_empty());
            assert!(Certificate::from_partition(&p).size() == p.len());
        }
    }

    #[test]
    fn unknown_check_fails() {
        let r = run_check("nope", &DataSet::bundled(), &SearchBudget::default());
        assert_eq!(r.status, CheckStatus::Fail);
    }
}
