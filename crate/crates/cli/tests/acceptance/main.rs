//! Acceptance checks. Prints one `PASS n` or `FAIL n` line per criterion
//! and exits non-zero if any fails.

mod oracles;

use std::collections::VecDeque;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fomember::{parse_table, serialize_table, TableFormat};
use fomember_core::catalog::{
    apply_operator, builtin, check_membership, congruence, parse_variety, Congruence, MembershipWitness, Operator,
};
use fomember_core::ea::{
    brute_force_ea, cycle_check, is_in_ea, rees_representation, spanning_forest, EdgeOrder, IncidenceGraph,
    ReesMatrixSemigroup,
};
use fomember_core::gen::{graham_semigroup, random_transformation_semigroup, GenError, UndirectedGraph};
use fomember_core::logic::{evaluate, evaluate_sentence, Assignment};
use fomember_core::omega::{identity_to_formula, parse_identity, satisfies_identity};
use fomember_core::{PartialGroupoid, Partition, Semigroup};
use oracles::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

/// The 200 seeded graphs with 2 to 8 vertices.
fn graphs() -> Vec<UndirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|_| {
            let v = rng.random_range(2..=8);
            UndirectedGraph::random(v, 0.3, &mut rng).unwrap()
        })
        .collect()
}

fn bfs_reaches(g: &UndirectedGraph) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([g.s()]);
    seen[g.s()] = true;
    while let Some(u) = queue.pop_front() {
        for (x, y) in g.edges() {
            for (a, b) in [(x, y), (y, x)] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    seen[g.t()]
}

fn graham_equivalence() -> Outcome {
    let start = Instant::now();
    let mut reachable = 0;
    for (i, graph) in graphs().iter().enumerate() {
        let s = Semigroup::new(graham_semigroup(graph).groupoid).map_err(|e| format!("graph {i}: {e}"))?;
        let cycles = is_in_ea(&s).member;
        let reach = bfs_reaches(graph);
        let brute = brute_force_ea(&s).member;
        ensure(cycles == !reach && brute == cycles, || {
            format!("graph {i}: cycles={cycles} reachable={reach} brute_force={brute}")
        })?;
        reachable += reach as usize;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {}", secs(took)))?;
    Ok(format!("200 graphs ({reachable} with s-t path), 0 disagreements, {}", secs(took)))
}

fn order_three_sweep() -> Outcome {
    let start = Instant::now();
    let semigroups = all_semigroups(3);
    let names = ["S", "B", "G", "M", "A", "D", "K", "N", "O"];
    let specs: Vec<_> = names.iter().map(|n| builtin(n).unwrap()).collect();
    for (i, g) in semigroups.iter().enumerate() {
        for (name, spec) in names.iter().zip(&specs) {
            let got = check_membership(g, spec).map_err(|e| e.to_string())?.member;
            let want = definitional(name)(g);
            ensure(got == want, || format!("{name} on semigroup #{i} {:?}: {got} vs {want}", g.entries().collect::<Vec<_>>()))?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {}", secs(took)))?;
    Ok(format!("19683 operations, {} semigroups x 9 classes, 0 disagreements, {}", semigroups.len(), secs(took)))
}

fn omega_characterization() -> Outcome {
    let mut tested = 0;
    let mut largest = 0;
    let mut seed = 0u64;
    while tested < 500 {
        seed += 1;
        let k = 2 + (seed as usize % 4);
        let m = 1 + (seed as usize % 3);
        let t = match random_transformation_semigroup(k, m, seed, 40) {
            Ok(t) => t,
            Err(GenError::SizeCap { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let g = &t.groupoid;
        let s = Semigroup::new(g.clone()).map_err(|e| e.to_string())?;
        for x in g.elements() {
            let want = omega_by_green(g, x);
            ensure(want == Some(s.omega(x)), || {
                format!("seed {seed}, x={x}: omega {} vs characterized {want:?}", s.omega(x))
            })?;
        }
        tested += 1;
        largest = largest.max(g.order());
    }
    Ok(format!("500 transformation semigroups (largest {largest}), every element exact"))
}

const IDENTITIES: [&str; 20] = [
    "x^w x = x^w",
    "(x y)^w x = x (y x)^w",
    "x x = x",
    "x y = y x",
    "x^w y = x^w",
    "y x^w = x^w",
    "x^w y x^w = x^w",
    "x y x = x",
    "x y z = x z y",
    "x^w = y^w",
    "(x^w y x^w)^w = x^w",
    "x^w y^w = y^w x^w",
    "(x y)^w = (y x)^w",
    "x^w x^w = x^w",
    "x y = x",
    "x y = y",
    "(x^w y)^w x^w = x^w",
    "x^w y x^w = x^w y x^w y x^w",
    "x x x = x",
    "(x y z)^w = (z y x)^w",
];

fn identity_compilation() -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() == 100 && corpus.iter().all(|g| g.order() <= 15), || "bad corpus".into())?;
    let mut members = 0;
    for src in IDENTITIES {
        let id = parse_identity(src).map_err(|e| format!("{src}: {e}"))?;
        let sentence = identity_to_formula(&id, true);
        for (i, g) in corpus.iter().enumerate() {
            let s = Semigroup::new(g.clone()).unwrap();
            let by_formula = evaluate_sentence(g, &sentence).map_err(|e| e.to_string())?;
            let direct = satisfies_identity(&s, &id);
            ensure(by_formula == direct, || format!("{src} on corpus #{i}: formula {by_formula}, direct {direct}"))?;
            members += direct as usize;
        }
    }
    Ok(format!("20 identities x 100 semigroups, {members} satisfied, 0 disagreements"))
}

fn is_congruence(g: &PartialGroupoid, rel: &dyn Fn(usize, usize) -> bool) -> bool {
    let e = || g.elements();
    e().all(|x| rel(x, x))
        && e().all(|s| e().all(|t| rel(s, t) == rel(t, s)))
        && e().all(|s| e().all(|t| !rel(s, t) || e().all(|u| !rel(t, u) || rel(s, u))))
        && e().all(|s| {
            e().all(|t| !rel(s, t) || e().all(|x| rel(mul(g, x, s), mul(g, x, t)) && rel(mul(g, s, x), mul(g, t, x))))
        })
}

fn operators() -> Outcome {
    let corpus = corpus();
    let mut cases = vec![(Operator::D, "A"), (Operator::L, "I"), (Operator::Hbar, "G")];
    for op in [Operator::MalcevK, Operator::MalcevD, Operator::MalcevN, Operator::MalcevLI, Operator::MalcevLG] {
        cases.push((op, "I"));
        cases.push((op, "A"));
    }
    for &(op, inner) in &cases {
        let spec = apply_operator(op, builtin(inner).unwrap()).map_err(|e| e.to_string())?;
        for (i, g) in corpus.iter().enumerate() {
            let got = check_membership(g, &spec).map_err(|e| e.to_string())?.member;
            let want = operator_oracle(op, inner, g);
            ensure(got == want, || format!("{} on corpus #{i}: {got} vs construction {want}", spec.name))?;
        }
    }
    for (i, g) in corpus.iter().enumerate() {
        for c in Congruence::ALL {
            let formula = congruence(c);
            let n = g.order();
            let mut rel = vec![vec![false; n + 1]; n + 1];
            for s in g.elements() {
                for t in g.elements() {
                    let a = Assignment::from([("s".to_string(), s), ("t".to_string(), t)]);
                    rel[s][t] = evaluate(g, formula.formula(), &a).map_err(|e| e.to_string())?;
                    ensure(rel[s][t] == congruence_def(c, g, s, t), || format!("{c:?} on corpus #{i} at ({s}, {t})"))?;
                }
            }
            ensure(is_congruence(g, &|s, t| rel[s][t]), || format!("{c:?} is not a congruence on corpus #{i}"))?;
            let p = Partition::from_equivalence(n, |s, t| rel[s][t]).map_err(|e| e.to_string())?;
            g.quotient(&p, true).map_err(|e| format!("{c:?} on corpus #{i}: {e}"))?;
        }
    }
    Ok(format!("{} operator cases x 100 semigroups and 5 congruences, 0 disagreements", cases.len()))
}

fn rees_representations() -> Vec<ReesMatrixSemigroup> {
    let mut sources: Vec<Semigroup> =
        graphs().iter().map(|g| Semigroup::new(graham_semigroup(g).groupoid).unwrap()).collect();
    sources.extend(all_semigroups(3).into_iter().map(|g| Semigroup::new(g).unwrap()));
    let mut out = Vec::new();
    for s in &sources {
        for e in s.idempotents() {
            out.push(rees_representation(s, e).unwrap());
        }
    }
    out
}

fn forest_independence() -> Outcome {
    let reps = rees_representations();
    let mut failing = 0;
    for (i, r) in reps.iter().enumerate() {
        let ig = IncidenceGraph::new(r);
        let lex = spanning_forest(&ig, &EdgeOrder::Lexicographic);
        let rev = spanning_forest(&ig, &EdgeOrder::Reversed);
        let a = cycle_check(&ig, &lex).map_err(|e| e.to_string())?;
        let b = cycle_check(&ig, &rev).map_err(|e| e.to_string())?;
        ensure(a.passed() == b.passed(), || format!("representation {i}: orders disagree"))?;
        for (forest, report) in [(&lex, &a), (&rev, &b)] {
            let walked = first_bad_bridge(&ig, forest);
            let potential = report.failure.as_ref().map(|f| (f.bridge, f.label));
            ensure(walked == potential, || format!("representation {i}: walk {walked:?} vs potential {potential:?}"))?;
            if let Some(f) = &report.failure {
                ensure(f.cycle.first() == f.cycle.last() && walk_label(&ig, &f.cycle) == f.label, || {
                    format!("representation {i}: reported cycle does not carry its label")
                })?;
            }
        }
        failing += !a.passed() as usize;
    }
    Ok(format!("{} representations ({failing} failing), both orders and both methods agree", reps.len()))
}

fn omega_power(g: &PartialGroupoid, x: usize) -> usize {
    let mut p = x;
    while mul(g, p, p) != p {
        p = mul(g, p, x);
    }
    p
}

fn known_classifications() -> Outcome {
    let member = |g: &PartialGroupoid, v: &str| {
        check_membership(g, &parse_variety(v).unwrap()).map_err(|e| e.to_string())
    };
    let (c2, rz2, n2, b2) = (c2(), rz2(), n2(), b2());

    ensure(member(&c2, "G")?.member && def_group(&c2), || "C2 not in G".into())?;
    let not_a = member(&c2, "A")?;
    ensure(!not_a.member && !def_aperiodic(&c2), || "C2 in A".into())?;
    match &not_a.witness {
        Some(MembershipWitness::Identity { assignment, .. }) => {
            let x = assignment["x"];
            let w = omega_power(&c2, x);
            ensure(mul(&c2, w, x) != w, || format!("witness x={x} satisfies x^w x = x^w"))?;
        }
        other => return Err(format!("C2 not in A without identity witness: {other:?}")),
    }

    for v in ["B", "K"] {
        ensure(member(&rz2, v)?.member && definitional(v)(&rz2), || format!("RZ2 not in {v}"))?;
    }
    let not_d = member(&rz2, "D")?;
    ensure(!not_d.member && !def_d(&rz2), || "RZ2 in D".into())?;
    match &not_d.witness {
        Some(MembershipWitness::Sentence(w)) => {
            let (e, x) = (w.assignment["e"], w.assignment["x"]);
            ensure(mul(&rz2, e, e) == e && mul(&rz2, e, x) != e, || format!("witness e={e}, x={x} does not fail ex = e"))?;
        }
        other => return Err(format!("RZ2 not in D without sentence witness: {other:?}")),
    }

    ensure(member(&n2, "N")?.member && def_nilpotent(&n2), || "N2 not in N".into())?;
    ensure(member(&b2, "EA")?.member && ea_by_closure(&b2), || "B2 not in EA".into())?;
    Ok("C2 in G\\A, RZ2 in B and K but not D, N2 in N, B2 in EA; witnesses verified".into())
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fomember")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some_and(|c| c <= 1), || {
        format!("{args:?} exited with {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn round_trip_and_determinism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..1000 {
        let n = rng.random_range(1..=24);
        let entries: Vec<usize> = (0..n * n).map(|_| rng.random_range(0..=n)).collect();
        let g = PartialGroupoid::from_flat(n, entries).unwrap();
        for f in [TableFormat::Text, TableFormat::Packed] {
            let bytes = serialize_table(&g, f);
            let back = parse_table(&bytes, f).map_err(|e| format!("table {i} {f:?}: {e}"))?;
            ensure(back == g && serialize_table(&back, f) == bytes, || format!("table {i} {f:?} changed"))?;
        }
    }

    let dir = std::env::temp_dir().join(format!("fomember-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let table = dir.join("graham.mtb");
    let graph = UndirectedGraph::new(4, [(0, 1), (1, 2), (2, 3)], 0, 3).unwrap();
    std::fs::write(&table, serialize_table(&graham_semigroup(&graph).groupoid, TableFormat::Packed))
        .map_err(|e| e.to_string())?;
    let path = table.to_str().unwrap();
    let commands: [&[&str]; 6] = [
        &["--json", "classify", "--variety", "A", "--variety", "D(A)", "--variety", "EA", "--variety", "K@I", path],
        &["--json", "ea", path],
        &["--json", "info", path],
        &["--json", "check-identity", "(x y)^w x = x (y x)^w", path],
        &["--json", "eval", "exists e: forall x: e*x = e", path],
        &["--json", "gen-graham", "--vertices", "6", "--seed", "4"],
    ];
    for args in commands {
        let (a, b) = (run_bin(args)?, run_bin(args)?);
        ensure(a == b && !a.is_empty(), || format!("{args:?}: outputs differ"))?;
        for line in String::from_utf8_lossy(&a).lines() {
            serde_json::from_str::<serde_json::Value>(line).map_err(|e| format!("{args:?}: {e}"))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok("1000 tables round-trip in both formats; 6 --json commands identical across runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("graham equivalence", graham_equivalence),
        ("order-3 sweep", order_three_sweep),
        ("omega via Green's relations", omega_characterization),
        ("identity compilation", identity_compilation),
        ("operators and congruences", operators),
        ("forest independence and method equivalence", forest_independence),
        ("known classifications", known_classifications),
        ("round-trip and determinism", round_trip_and_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
