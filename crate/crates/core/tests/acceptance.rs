//! Acceptance run: one PASS/FAIL line per criterion. Every numeric check is
//! exact (integers or rationals); the only other tolerance is the runtime
//! limit printed with each line.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational as Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankforge::composed::{compose, Gadget};
use rankforge::data::DataSet;
use rankforge::linalg::{gf2_rank, rat, real_rank};
use rankforge::nonneg::{find_incompatible_decomposition, lemma21_decomposition, verify_certificate, Certificate};
use rankforge::rect::{is_compatible, types, Axis, Cover, Partition, Rect};
use rankforge::sampling::{exact_distribution, protocol_from_certificate};
use rankforge::solve::{
    binary_rank, boolean_rank, fooling_number, uniform_cover_number, ExactResult, SearchBudget, Witness,
};
use rankforge::suite::random_partition;
use rankforge::{Entry, PartialMatrix};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn exact(r: &ExactResult, m: &PartialMatrix, what: &str) -> Result<usize, String> {
    r.validate(m).map_err(|x| format!("{what}: invalid witness: {x}"))?;
    r.value.ok_or_else(|| format!("{what}: only bounds {}..{}", r.lower, r.upper))
}

fn accepted(cert: &Certificate, what: &str) -> Result<(), String> {
    let rep = verify_certificate(cert).map_err(e)?;
    ensure(rep.accepted, || format!("{what}: certificate rejected: {:?}", rep.violation))
}

fn partition_rects(r: &ExactResult) -> Vec<Rect> {
    match &r.witness {
        Some(Witness::Partition { rects }) => rects.clone(),
        _ => Vec::new(),
    }
}

/// Support cells of component `i` not in any other support.
fn leftover_is_rectangle(supports: &[Rect], i: usize) -> bool {
    let cells = |r: &Rect| -> BTreeSet<(usize, usize)> {
        r.rows().iter().flat_map(|a| r.cols().iter().map(move |b| (a, b))).collect()
    };
    let mut left = cells(&supports[i]);
    for (j, s) in supports.iter().enumerate() {
        if j != i {
            for c in cells(s) {
                left.remove(&c);
            }
        }
    }
    let rows: BTreeSet<usize> = left.iter().map(|c| c.0).collect();
    let cols: BTreeSet<usize> = left.iter().map(|c| c.1).collect();
    left.len() == rows.len() * cols.len()
}

fn separation(m: &PartialMatrix, cert: &Certificate, fool: usize, plus: usize, bin: usize) -> Outcome {
    let f = exact(&fooling_number(m, &budget()), m, "fooling")?;
    ensure(f == fool, || format!("fooling number {f}, expected {fool}"))?;
    accepted(cert, "bundled")?;
    ensure(cert.size() == plus, || format!("certificate has {} terms, expected {plus}", cert.size()))?;
    let b = binary_rank(m, &budget());
    let bv = exact(&b, m, "binary")?;
    ensure(bv == bin, || format!("binary rank {bv}, expected {bin}"))?;
    Partition::new(m.clone(), partition_rects(&b)).map_err(e)?;
    Ok(format!("fooling {f} = certificate size {plus} < binary {bv} (witness partition checked)"))
}

fn c1(d: &DataSet) -> Outcome {
    separation(&d.m5x6, &d.m5x6_cert, 4, 4, 5)
}

fn c2(d: &DataSet) -> Outcome {
    separation(&d.m12x12, &d.m12x12_cert, 9, 9, 12)
}

fn c3() -> Outcome {
    let mut parts = Vec::new();
    for (n, g) in [(2, Gadget::and()), (4, Gadget::and()), (2, Gadget::ip2(2).map_err(e)?)] {
        let cert = lemma21_decomposition(n, g).map_err(e)?;
        let want = n * (1 << g.b);
        ensure(cert.size() == want, || format!("{g} n={n}: {} components, expected {want}", cert.size()))?;
        accepted(&cert, &format!("{g} n={n}"))?;
        let share = rat(2, n as i64);
        let zero = Rational::default();
        for (x, y) in cert.target.ones() {
            let got: Vec<Rational> =
                cert.decomposition.components.iter().map(|c| c.value(x, y)).filter(|q| *q != zero).collect();
            ensure(got.len() == n / 2 && got.iter().all(|q| *q == share), || {
                format!("{g} n={n}: cell ({x},{y}) gets {got:?}")
            })?;
        }
        parts.push(format!("{g} n={n}: {want}"));
    }
    Ok(parts.join(", ") + "; each One gets n/2 shares of 2/n")
}

fn c4(d: &DataSet) -> Outcome {
    let mut certs = vec![d.m5x6_cert.clone(), d.m12x12_cert.clone(), d.m5x6_cert.tensor(&d.m5x6_cert).map_err(e)?];
    if let Some(c) = find_incompatible_decomposition(&d.incompatible_example, 3, &budget()).map_err(e)? {
        certs.push(c);
    }
    for m in [&d.leftover_example, &d.types_example] {
        let p = Partition::new(m.clone(), partition_rects(&binary_rank(m, &budget()))).map_err(e)?;
        certs.push(Certificate::from_partition(&p));
    }
    let found = certs.len();
    ensure(found >= 5, || format!("only {found} non-random certificates"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        certs.push(Certificate::from_partition(&random_partition(&mut rng)));
    }
    for (i, cert) in certs.iter().enumerate() {
        accepted(cert, &format!("certificate {i}"))?;
        let s: Vec<Rect> = cert.decomposition.pruned().supports();
        for k in 0..s.len() {
            ensure(leftover_is_rectangle(&s, k), || format!("certificate {i}: leftover {k} is not a rectangle"))?;
        }
    }
    Ok(format!("{found} bundled/found + 100 random certificates, every leftover a rectangle"))
}

fn c5(d: &DataSet) -> Outcome {
    let m = &d.leftover_example;
    let cover = Cover::new(m.clone(), d.leftover_cover.clone()).map_err(e)?;
    ensure(cover.len() == 3, || "listed cover is not 3 rectangles".into())?;
    let s = d.leftover_cover.clone();
    ensure((0..3).all(|k| leftover_is_rectangle(&s, k)), || "a listed leftover is not a rectangle".into())?;
    let b = exact(&binary_rank(m, &budget()), m, "first matrix")?;
    ensure(b == 4 && common::binary_rank(m) == 4, || format!("first matrix binary rank {b}"))?;

    let m = &d.types_example;
    let b = exact(&binary_rank(m, &budget()), m, "second matrix")?;
    ensure(b == 3 && common::binary_rank(m) == 3, || format!("second matrix binary rank {b}"))?;
    // Every 3-cover by Zero-free rectangles, found by brute force over all
    // rectangles of the 4x4 matrix.
    let all: Vec<Rect> = (1u32..16)
        .flat_map(|rs| (1u32..16).map(move |cs| (rs, cs)))
        .map(|(rs, cs)| {
            let bits = |x: u32| (0..4).filter(|i| x >> i & 1 == 1).collect::<Vec<usize>>();
            Rect::from_slices(&bits(rs), &bits(cs))
        })
        .filter(|r| r.avoids_zeros(m))
        .collect();
    let mut covers = 0;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            for k in j + 1..all.len() {
                let Ok(cover) = Cover::new(m.clone(), vec![all[i].clone(), all[j].clone(), all[k].clone()]) else {
                    continue;
                };
                covers += 1;
                for axis in [Axis::Rows, Axis::Cols] {
                    let n = types(&cover, axis).map_err(e)?.iter().filter(|t| t.is_nontrivial()).count();
                    ensure(n >= 4, || format!("a minimal cover has only {n} nontrivial {axis:?} types"))?;
                }
            }
        }
    }
    ensure(covers > 0, || "no minimal cover found".into())?;

    let m = &d.incompatible_example;
    let cert = find_incompatible_decomposition(m, 3, &budget())
        .map_err(e)?
        .ok_or_else(|| "third matrix: no incompatible decomposition".to_string())?;
    accepted(&cert, "third matrix")?;
    let s = cert.decomposition.supports();
    ensure(s.len() == 3, || format!("{} supports", s.len()))?;
    for i in 0..3 {
        for j in 0..3 {
            ensure(i == j || !is_compatible(&s[i], &s[j]), || format!("supports {i},{j} compatible"))?;
        }
    }
    Ok(format!("cover ok and binary 4; binary 3 with >= 4 types under {covers} covers; incompatible size-3 certificate"))
}

fn c6(d: &DataSet) -> Outcome {
    for (cert, per_one) in [(&d.m5x6_cert, rat(1, 18)), (&d.m12x12_cert, rat(1, 54))] {
        let dist = exact_distribution(&protocol_from_certificate(cert).map_err(e)?);
        let m = &cert.target;
        for r in 0..m.n_rows() {
            for c in 0..m.n_cols() {
                let want = if m.get(r, c) == Entry::One { per_one.clone() } else { Rational::default() };
                ensure(*dist.get(r, c) == want, || format!("cell ({r},{c}) has {}", dist.get(r, c)))?;
            }
        }
    }
    Ok("exactly 1/18 and 1/54 on every One, 0 on every Zero".into())
}

fn random_total(rng: &mut ChaCha8Rng) -> PartialMatrix {
    let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
    let p: f64 = rng.gen_range(0.2..0.8);
    PartialMatrix::from_fn(r, c, |_, _| if rng.gen_bool(p) { Entry::One } else { Entry::Zero })
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = budget();
    for i in 0..1000 {
        let m = random_total(&mut rng);
        let g = gf2_rank(&m).map_err(e)?;
        let r = real_rank(&m).map_err(e)?;
        let f = exact(&fooling_number(&m, &b), &m, "fooling")?;
        let bo = exact(&boolean_rank(&m, &b), &m, "boolean")?;
        let u = exact(&uniform_cover_number(&m, 2, &b), &m, "uniform")?;
        let bi = exact(&binary_rank(&m, &b), &m, "binary")?;
        ensure(g <= r && r <= bi && f <= bo && bo <= u && u <= bi, || {
            format!("matrix {i}: gf2 {g} real {r} fooling {f} boolean {bo} uniform {u} binary {bi}\n{m}")
        })?;
    }
    Ok("1000 random total matrices up to 8x8, all chains hold, all witnesses valid".into())
}

fn c8(d: &DataSet) -> Outcome {
    let m2 = d.m5x6.tensor(&d.m5x6).map_err(e)?;
    let f = exact(&fooling_number(&m2, &budget()), &m2, "fooling")?;
    ensure(f == 16, || format!("fool(M^2) = {f}"))?;
    let cert = d.m5x6_cert.tensor(&d.m5x6_cert).map_err(e)?;
    accepted(&cert, "tensor")?;
    ensure(cert.size() == 16, || format!("tensor certificate has {} terms", cert.size()))?;
    let probe = SearchBudget::new(2_000_000, 5.0, budget().threads);
    let b = binary_rank(&m2, &probe);
    b.validate(&m2).map_err(e)?;
    ensure(16 <= b.lower && b.upper <= 25, || format!("binary(M^2) interval {}..{}", b.lower, b.upper))?;
    let status = if b.is_proved() { "proved" } else { "budget exhausted" };
    Ok(format!("fool = certificate = 16; binary(M^2) in {}..{} ({status})", b.lower, b.upper))
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    for (n, want) in [(2, 2), (4, 3)] {
        let m = compose(n, Gadget::and()).map_err(e)?.matrix;
        let got = exact(&binary_rank(&m, &budget()), &m, "composed")?;
        let oracle = common::binary_rank(&m);
        ensure(got == want && oracle == want, || format!("AND n={n}: solver {got}, oracle {oracle}, recorded {want}"))?;
        parts.push(format!("AND n={n}: {want}"));
    }
    Ok(parts.join(", ") + " (solver = exhaustive oracle = recorded constant)")
}

#[test]
#[allow(clippy::type_complexity)]
fn acceptance() {
    let data = DataSet::bundled();
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        ("5x6 separation", 1, Box::new(|| c1(&data))),
        ("12x12 separation", 60, Box::new(|| c2(&data))),
        ("composed decomposition", 5, Box::new(c3)),
        ("rectangular leftovers", 10, Box::new(|| c4(&data))),
        ("leftover, types and incompatible examples", 30, Box::new(|| c5(&data))),
        ("sampling uniformity", 1, Box::new(|| c6(&data))),
        ("rank chain on random matrices", 300, Box::new(c7)),
        ("tensor identities and probe", 30, Box::new(|| c8(&data))),
        ("composed regression constants", 60, Box::new(c9)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = check();
        let took = t.elapsed();
        if outcome.is_ok() && took > Duration::from_secs(*limit) {
            outcome = Err(format!("took {:.2}s, limit {limit}s", took.as_secs_f64()));
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {} {tag}: {name}: {detail} [tolerance exact, {:.2}s of {limit}s]",
            i + 1,
            took.as_secs_f64()
        );
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
