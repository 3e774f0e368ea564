//! Acceptance suite. Each `criterion_*` test prints one PASS/FAIL line
//! (visible with `--nocapture`) and fails on any violation.

use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use artin_hol::catalog::{catalog_groups, validate_catalog_entry};
use artin_hol::conditions::search::{
    cond_ii_pair_search, cond_iii_quantifier_search, cond_iii_subset_search,
};
use artin_hol::conditions::{
    check_instance, cond_ii_pair, cond_iii_quantifier, cond_iii_subset, subsets, ConditionReport,
};
use artin_hol::hilbert::{
    count_factorizations, hilbert_basis_frontier, hilbert_basis_oracle, lattice_is_full,
    nonuniqueness_witness, HilbertBasis,
};
use artin_hol::model::{is_member_hol, DegreeVector, ExponentVector, Instance, OrderVector};
use artin_hol::report::parse_report;
use artin_hol::sweep::{enumerate_order_vectors, run_sweep_to, Execution, SweepPlan};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report_line(n: u32, name: &str, violations: &[String], elapsed: Duration) {
    let status = if violations.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "[{status}] criterion {n}: {name} ({} violation(s), {:.2}s)",
        violations.len(),
        elapsed.as_secs_f64()
    );
    for v in violations.iter().take(20) {
        println!("    {v}");
    }
}

fn finish(n: u32, name: &str, violations: Vec<String>, started: Instant) {
    report_line(n, name, &violations, started.elapsed());
    assert!(
        violations.is_empty(),
        "criterion {n} failed: {:?}",
        &violations[..violations.len().min(20)]
    );
}

fn ov(x: &[i64]) -> OrderVector {
    OrderVector::new(x.to_vec()).unwrap()
}

fn ev(x: &[u64]) -> ExponentVector {
    ExponentVector::new(x.to_vec())
}

fn box_vectors(r: usize, b: i64) -> Vec<OrderVector> {
    enumerate_order_vectors(r, b).unwrap().collect()
}

fn random_vectors(rng: &mut ChaCha8Rng, count: usize, ranks: &[usize], b: i64) -> Vec<OrderVector> {
    (0..count)
        .map(|_| {
            let r = *ranks.choose(rng).unwrap();
            ov(&(0..r).map(|_| rng.gen_range(-b..=b)).collect::<Vec<_>>())
        })
        .collect()
}

fn unit_points(r: usize, side: u64) -> Vec<ExponentVector> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=side).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(ExponentVector::new).collect()
}

/// Degree families and order bounds of the theorem sweep.
const FAMILIES: &[(&[u64], &[i64])] = &[
    (&[1, 1], &[2, 3]),
    (&[1, 1, 2], &[2, 3]),
    (&[1, 1, 1, 3], &[2]),
    (&[1, 1, 1, 1, 2], &[2]),
    (&[1, 1, 2, 3, 3], &[2]),
];

struct SweepRun {
    degrees: Vec<u64>,
    bound: i64,
    reports: Vec<ConditionReport>,
    counterexamples: Vec<Vec<i64>>,
}

/// Runs every family once, through the JSON-lines writer, and parses the records back.
fn sweeps() -> &'static (Vec<SweepRun>, Duration) {
    static CELL: OnceLock<(Vec<SweepRun>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let started = Instant::now();
        let mut runs = Vec::new();
        for (degrees, bounds) in FAMILIES {
            for &bound in *bounds {
                let plan = SweepPlan::new(DegreeVector::new(degrees.to_vec()).unwrap(), bound)
                    .with_workers(4);
                let mut buf = Vec::new();
                let outcome = run_sweep_to(&plan, &mut buf, Execution::for_workers(4)).unwrap();
                let reports: Vec<ConditionReport> = String::from_utf8(buf)
                    .unwrap()
                    .lines()
                    .map(|l| parse_report(l).unwrap())
                    .collect();
                assert_eq!(reports.len() as u64, outcome.summary.total);
                runs.push(SweepRun {
                    degrees: degrees.to_vec(),
                    bound,
                    reports,
                    counterexamples: outcome.summary.counterexamples,
                });
            }
        }
        (runs, started.elapsed())
    })
}

fn basis_of(report: &ConditionReport) -> HilbertBasis {
    hilbert_basis_frontier(report.instance.orders()).unwrap()
}

#[test]
fn criterion_1_engine_cross_validation() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut vs = box_vectors(2, 3);
    vs.extend(box_vectors(3, 2));
    vs.extend(random_vectors(&mut rng, 500, &[4, 5], 3));
    assert_eq!(vs.len(), 49 + 125 + 500);
    let mut violations = Vec::new();
    for v in &vs {
        let a = hilbert_basis_oracle(v).unwrap();
        let b = hilbert_basis_frontier(v).unwrap();
        if !a.same_elements(&b) {
            violations.push(format!(
                "{v}: oracle {:?} vs frontier {:?}",
                a.elements(),
                b.elements()
            ));
        }
    }
    if started.elapsed() > Duration::from_secs(120) {
        violations.push(format!("runtime {:?} exceeds 2 minutes", started.elapsed()));
    }
    finish(
        1,
        "hilbert engines agree on 674 order vectors",
        violations,
        started,
    );
}

#[test]
fn criterion_2_paper_facts() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut checked = 0;
    for run in &sweeps().0 {
        for rep in run.reports.iter().filter(|r| r.admissible.ok) {
            checked += 1;
            let v = rep.instance.orders();
            let r = v.rank();
            let basis = basis_of(rep);
            if basis.len() < r {
                violations.push(format!("{v}: |Hilb| = {} < {r}", basis.len()));
            }
            if !lattice_is_full(&basis, r).unwrap() {
                violations.push(format!("{v}: lattice not full"));
            }
            for j in 0..r {
                let in_basis = basis.contains(&ExponentVector::unit(r, j));
                if in_basis != (v.entries()[j] >= 0) {
                    violations.push(format!("{v}: unit vector law fails at {}", j + 1));
                }
            }
            let bound = v.box_bound();
            if basis
                .elements()
                .iter()
                .any(|e| e.entries().iter().any(|&x| x > bound))
            {
                violations.push(format!("{v}: coordinate above {bound}"));
            }
        }
    }
    assert!(checked > 0);
    finish(
        2,
        &format!("basis facts on {checked} admissible instances"),
        violations,
        started,
    );
}

#[test]
fn criterion_3_theorem_sweep() {
    let (runs, elapsed) = sweeps();
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut checked = 0;
    for run in runs {
        for rep in &run.reports {
            let r = rep.instance.rank();
            if rep.admissible.ok && r >= 2 {
                checked += 1;
                let c = &rep.conditions;
                if !(c.i == c.ii.ok && c.ii.ok == c.iii.ok && c.iii.ok == c.ii_prime.ok) {
                    violations.push(format!(
                        "{:?} B={} v={}",
                        run.degrees,
                        run.bound,
                        rep.instance.orders()
                    ));
                }
                if rep.equivalence_ok != Some(true) {
                    violations.push(format!(
                        "{}: equivalence_ok = {:?}",
                        rep.instance.orders(),
                        rep.equivalence_ok
                    ));
                }
            }
        }
        for ce in &run.counterexamples {
            violations.push(format!(
                "{:?} B={}: counterexample {ce:?}",
                run.degrees, run.bound
            ));
        }
    }
    if *elapsed > Duration::from_secs(600) {
        violations.push(format!("sweep runtime {elapsed:?} exceeds 10 minutes"));
    }
    println!(
        "    sweep families computed in {:.2}s",
        elapsed.as_secs_f64()
    );
    finish(
        3,
        &format!("i == ii == iii == ii' on {checked} admissible instances"),
        violations,
        started,
    );
}

#[test]
fn criterion_4_factoriality_coherence() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut checked = 0;
    for run in &sweeps().0 {
        for rep in &run.reports {
            let v = rep.instance.orders();
            if !seen.insert(v.clone()) {
                continue;
            }
            checked += 1;
            let r = v.rank();
            let basis = basis_of(rep);
            if basis.len() == r {
                for k in unit_points(r, 3) {
                    if is_member_hol(&k, v).unwrap() {
                        let c = count_factorizations(&k, &basis, 2).unwrap().count;
                        if c != 1 {
                            violations.push(format!("{v}: {k} has {c} factorizations"));
                        }
                    }
                }
            } else if basis.len() > r {
                match nonuniqueness_witness(&basis, r) {
                    Ok(Some(w)) => {
                        let c = count_factorizations(&w, &basis, 2).unwrap().count;
                        if c < 2 {
                            violations.push(format!("{v}: witness {w} has {c} factorization(s)"));
                        }
                    }
                    other => violations.push(format!("{v}: no witness ({other:?})")),
                }
            }
        }
    }
    finish(
        4,
        &format!("factoriality coherence on {checked} order vectors"),
        violations,
        started,
    );
}

#[test]
fn criterion_5_closed_forms() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut vs = box_vectors(2, 3);
    vs.extend(box_vectors(3, 2));
    let mut comparisons = 0;
    for v in &vs {
        let r = v.rank();
        for k in 0..r {
            for l in 0..r {
                if k == l {
                    continue;
                }
                comparisons += 1;
                let closed = cond_ii_pair(v, k, l).unwrap();
                let searched = cond_ii_pair_search(v, k, l).unwrap();
                if closed.is_some() != searched.is_some() {
                    violations.push(format!(
                        "{v} pair ({},{}): {closed:?} vs {searched:?}",
                        k + 1,
                        l + 1
                    ));
                }
                if let Some(a) = closed {
                    let ok =
                        a.entries()[k] >= 1 && a.entries()[l] == 0 && is_member_hol(&a, v).unwrap();
                    if !ok {
                        violations.push(format!(
                            "{v} pair ({},{}): invalid witness {a}",
                            k + 1,
                            l + 1
                        ));
                    }
                }
            }
        }
        for m in 1..=r {
            for s in subsets(r, m) {
                comparisons += 1;
                let closed = cond_iii_subset(v, &s).unwrap();
                let searched = cond_iii_subset_search(v, &s).unwrap();
                if closed.is_some() != searched.is_some() {
                    violations.push(format!(
                        "{v} subset {:?}: {closed:?} vs {searched:?}",
                        s.one_based()
                    ));
                }
                if let Some(w) = closed {
                    let sum: i64 = w
                        .iter()
                        .zip(s.indices())
                        .map(|(&kj, &j)| kj as i64 * v.entries()[j])
                        .sum();
                    if w.contains(&0) || sum < 0 {
                        violations.push(format!(
                            "{v} subset {:?}: invalid witness {w:?}",
                            s.one_based()
                        ));
                    }
                }
            }
        }
        comparisons += 1;
        let q = cond_iii_quantifier(v);
        let qs = cond_iii_quantifier_search(v).unwrap();
        if q != qs {
            violations.push(format!("{v}: quantifier m {q:?} vs search {qs:?}"));
        }
    }
    finish(
        5,
        &format!("closed forms agree with search in {comparisons} comparisons"),
        violations,
        started,
    );
}

#[test]
fn criterion_6_known_values() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let expect_basis = |v: &[i64], want: &[&[u64]], violations: &mut Vec<String>| {
        let want: Vec<ExponentVector> = want.iter().map(|x| ev(x)).collect();
        for b in [
            hilbert_basis_oracle(&ov(v)).unwrap(),
            hilbert_basis_frontier(&ov(v)).unwrap(),
        ] {
            if b.elements() != want.as_slice() {
                violations.push(format!("Hilb{v:?} via {}: {:?}", b.engine(), b.elements()));
            }
        }
    };
    expect_basis(&[1, -1], &[&[1, 0], &[1, 1]], &mut violations);
    expect_basis(&[2, -3], &[&[1, 0], &[2, 1], &[3, 2]], &mut violations);

    let inst = Instance::new(DegreeVector::new(vec![1, 1]).unwrap(), ov(&[1, -1])).unwrap();
    let rep = check_instance(&inst).unwrap();
    let c = &rep.conditions;
    if !rep.factorial {
        violations.push("d=(1,1), v=(1,-1): not factorial".into());
    }
    if c.i || c.ii.ok || c.iii.ok || c.ii_prime.ok {
        violations.push(format!("d=(1,1), v=(1,-1): some condition holds: {c:?}"));
    }
    finish(
        6,
        "known Hilbert bases and factorial-but-not-i instance",
        violations,
        started,
    );
}

fn verdicts(rep: &ConditionReport) -> (bool, bool, bool, bool, bool, bool, usize, Option<usize>) {
    let c = &rep.conditions;
    (
        rep.admissible.ok,
        rep.factorial,
        c.i,
        c.ii.ok,
        c.iii.ok,
        c.ii_prime.ok,
        rep.hilbert.size,
        c.iii.m,
    )
}

#[test]
fn criterion_7_invariance() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut violations = Vec::new();
    for _ in 0..200 {
        let r = rng.gen_range(2..=5usize);
        let v = ov(&(0..r).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
        let d = DegreeVector::new((0..r).map(|_| rng.gen_range(1..=3)).collect()).unwrap();
        let basis = hilbert_basis_frontier(&v).unwrap();

        for c in [2, 3] {
            let scaled = hilbert_basis_frontier(&v.scaled(c).unwrap()).unwrap();
            if !scaled.same_elements(&basis) {
                violations.push(format!("{v}: Hilb({c}v) differs"));
            }
        }

        let mut perm: Vec<usize> = (0..r).collect();
        perm.shuffle(&mut rng);
        let pv = v.permuted(&perm);
        let pbasis = hilbert_basis_frontier(&pv).unwrap();
        let mut moved: Vec<ExponentVector> =
            basis.elements().iter().map(|e| e.permuted(&perm)).collect();
        moved.sort();
        if pbasis.elements() != moved.as_slice() {
            violations.push(format!("{v}: basis not equivariant under {perm:?}"));
        }

        let inst = Instance::new(d, v.clone()).unwrap();
        let a = check_instance(&inst).unwrap();
        let b = check_instance(&inst.permuted(&perm)).unwrap();
        if verdicts(&a) != verdicts(&b) {
            violations.push(format!("{v}: verdicts change under {perm:?}"));
        }
    }
    finish(
        7,
        "scaling and permutation invariance on 200 random instances",
        violations,
        started,
    );
}

#[test]
fn criterion_8_catalog() {
    let started = Instant::now();
    let groups = catalog_groups();
    let mut violations = Vec::new();
    if groups.len() != 12 {
        violations.push(format!("{} entries, expected 12", groups.len()));
    }
    for g in &groups {
        let check = validate_catalog_entry(g);
        if !check.ok {
            violations.push(format!("{}: {:?}", g.name, check.reasons));
        }
    }
    finish(
        8,
        "catalog entries satisfy sum of squares and divisibility",
        violations,
        started,
    );
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_artin-hol"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

#[test]
fn criterion_9_determinism_and_interfaces() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let dir = tempfile::tempdir().unwrap();

    let mut outputs = Vec::new();
    for (workers, tag) in [(1, "a"), (4, "b"), (4, "c")] {
        let path = dir.path().join(format!("sweep-{tag}.jsonl"));
        let status = bin()
            .args([
                "sweep",
                "--degrees",
                "1,1,2",
                "--order-bound",
                "2",
                "--workers",
                &workers.to_string(),
                "--out",
            ])
            .arg(&path)
            .output()
            .unwrap();
        if status.status.code() != Some(0) {
            violations.push(format!(
                "sweep with {workers} workers exited {:?}",
                status.status.code()
            ));
        }
        outputs.push(std::fs::read(&path).unwrap());
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        violations.push("sweep outputs differ between runs".into());
    }
    if outputs[0].iter().filter(|&&b| b == b'\n').count() != 125 {
        violations.push("sweep output does not have 125 records".into());
    }

    let goldens: &[(&[&str], &str)] = &[
        (
            &["check", "--degrees", "1,1", "--orders", "1,-1", "--json"],
            "check_1_1__1_-1.json",
        ),
        (
            &["hilbert", "--orders", "2,-3", "--json"],
            "hilbert_2_-3.json",
        ),
        (
            &["check", "--degrees", "1,1,2", "--orders", "0,0,0", "--json"],
            "check_1_1_2__0_0_0.json",
        ),
    ];
    for (args, file) in goldens {
        let want = std::fs::read(golden(file)).unwrap();
        for _ in 0..2 {
            let out = bin().args(*args).output().unwrap();
            if out.stdout != want {
                violations.push(format!("{args:?}: output differs from {file}"));
            }
            if out.status.code() != Some(0) {
                violations.push(format!("{args:?}: exit {:?}", out.status.code()));
            }
        }
    }

    let exit_cases: &[(&[&str], i32)] = &[
        (&["check", "--degrees", "1,1", "--orders", "0,-1"], 0),
        (&["check", "--degrees", "1,1", "--orders", "1"], 2),
        (&["check", "--degrees", "1,1", "--orders", "1,zz"], 2),
        (
            &[
                "check",
                "--degrees",
                "1,1",
                "--orders",
                "1,1",
                "--frobnicate",
            ],
            2,
        ),
        (&["hilbert", "--orders", "9999999999"], 2),
        (&["factorize", "--orders", "1,-1", "--element", "0,1"], 2),
        (
            &["sweep", "--group", "NoSuchGroup", "--order-bound", "1"],
            2,
        ),
        (&["catalog", "list"], 0),
    ];
    for (args, code) in exit_cases {
        let out = bin().args(*args).output().unwrap();
        if out.status.code() != Some(*code) {
            violations.push(format!(
                "{args:?}: exit {:?}, expected {code}",
                out.status.code()
            ));
        }
    }

    let mut failing = check_instance(
        &Instance::new(DegreeVector::new(vec![1, 1]).unwrap(), ov(&[1, -1])).unwrap(),
    )
    .unwrap();
    failing.equivalence_ok = Some(false);
    if artin_hol::report::emit_report(&failing, true).unwrap().1 != 1 {
        violations.push("failed equivalence does not map to exit code 1".into());
    }
    finish(
        9,
        "deterministic sweeps, golden reports and exit codes",
        violations,
        started,
    );
}
