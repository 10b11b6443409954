//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use ckaf::algebra::oracle::cross_check;
use ckaf::embedding::blocks::block_dimension;
use ckaf::embedding::verify::verify_instance;
use ckaf::embedding::{BuildOptions, Construction, Dimension, VerifyOptions};
use ckaf::group::GroupSpec;
use ckaf::instance::Instance;
use ckaf::labelled::LabelledGraph;
use ckaf::properness::{brute_force_zero_sum, check_necessary_condition, cuntz_case_check, is_almost_proper};
use ckaf::report::{run, Command, Format, RunOptions};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every labelling of a chain with `t` tree edges and loops at the given
/// positions, labels in [-2, 2].
fn chain_corpus(mut visit: impl FnMut(&LabelledGraph) -> Result<(), String>) -> Result<usize, String> {
    let z = GroupSpec::integers();
    let mut count = 0;
    for t in 0..=3usize {
        let vertices: Vec<String> = (0..=t).map(|i| format!("v{i}")).collect();
        let mut placements: Vec<Vec<usize>> = vec![vec![]];
        for a in 0..=t {
            placements.push(vec![a]);
            for b in a..=t {
                placements.push(vec![a, b]);
            }
        }
        for loops in &placements {
            let n = t + loops.len();
            for code in 0..5usize.pow(n as u32) {
                let labels: Vec<i64> = (0..n).map(|i| (code / 5usize.pow(i as u32) % 5) as i64 - 2).collect();
                let mut edges: Vec<(String, String, String, [i64; 1])> = (0..t)
                    .map(|i| (format!("e{i}"), vertices[i].clone(), vertices[i + 1].clone(), [labels[i]]))
                    .collect();
                for (j, &at) in loops.iter().enumerate() {
                    edges.push((format!("g{j}"), vertices[at].clone(), vertices[at].clone(), [labels[t + j]]));
                }
                let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
                let es: Vec<(&str, &str, &str, &[i64])> =
                    edges.iter().map(|(a, b, c, l)| (a.as_str(), b.as_str(), c.as_str(), l.as_slice())).collect();
                let lg = LabelledGraph::build(z.clone(), &vs, &es).map_err(|e| e.to_string())?;
                visit(&lg)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn c1_theorem_equivalence() -> Outcome {
    let start = Instant::now();
    let mut yes = 0;
    let n = chain_corpus(|lg| {
        let verdict = is_almost_proper(lg);
        let loops: Vec<_> = lg.decomposition.loop_edges.iter().map(|&e| lg.label(e).clone()).collect();
        let brute = !loops.is_empty() && brute_force_zero_sum(&lg.group, &loops, 12).is_some();
        ensure(verdict.almost_proper != brute, || format!("verdict disagrees with brute force on {lg:?}"))?;
        for w in &verdict.witnesses {
            let labels = w.family.labels(lg);
            ensure(w.certificate.verify(&lg.group, &labels), || format!("certificate fails to verify on {lg:?}"))?;
            if verdict.almost_proper {
                // Dual certificates verify only when every product is strictly positive.
                ensure(!w.certificate.is_primal(), || format!("primal certificate on a yes verdict: {lg:?}"))?;
            }
        }
        if !verdict.almost_proper {
            ensure(verdict.obstruction().is_some(), || "no verdict lacks a primal certificate".into())?;
        }
        yes += usize::from(verdict.almost_proper);
        Ok(())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{n} chains, {yes} almost proper, {:.2}s", elapsed.as_secs_f64()))
}

fn c2_cuntz_case() -> Outcome {
    let z = GroupSpec::integers();
    let mut n = 0;
    for k in 1..=3u32 {
        for code in 0..7usize.pow(k) {
            let labels: Vec<[i64; 1]> = (0..k).map(|i| [(code / 7usize.pow(i) % 7) as i64 - 3]).collect();
            let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
            let es: Vec<(&str, &str, &str, &[i64])> =
                names.iter().zip(&labels).map(|(nm, l)| (nm.as_str(), "v", "v", l.as_slice())).collect();
            let lg = LabelledGraph::build(z.clone(), &["v"], &es).map_err(|e| e.to_string())?;
            let monoid = cuntz_case_check(&lg).map_err(|e| e.to_string())?;
            ensure(monoid == is_almost_proper(&lg).almost_proper, || format!("disagree on {labels:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} single-vertex instances agree"))
}

const CORRUPTION_FAILS: [&str; 4] =
    ["q_translates_orthogonal", "vertex_cover", "matrix_unit_relations", "generator_reconstruction"];

fn c3_lemma_suite() -> Outcome {
    let mut parts = Vec::new();
    for name in common::SUITE {
        let inst = common::fixture(name);
        let lg = inst.labelled();
        let start = Instant::now();
        let res = verify_instance(lg, inst.window().unwrap(), &BuildOptions::default(), &VerifyOptions::default())
            .map_err(|e| format!("{name}: {e}"))?;
        for r in &res {
            ensure(r.passed, || format!("{name}: {} failed: {:?}", r.name, r.detail))?;
        }
        let bad = verify_instance(
            lg,
            inst.window().unwrap(),
            &BuildOptions { corrupt_q: true, ..Default::default() },
            &VerifyOptions::default(),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        let failed: Vec<&str> = bad.iter().filter(|r| !r.passed).map(|r| r.name).collect();
        ensure(failed == CORRUPTION_FAILS, || format!("{name}: corrupted q fails {failed:?}"))?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(60), || format!("{name} took {elapsed:?}"))?;
        parts.push(format!("{name} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "{} checks each; control fails {}; {}",
        ckaf::embedding::verify::CHECK_NAMES.len(),
        CORRUPTION_FAILS.len(),
        parts.join(", ")
    ))
}

/// FIX-B recomputed with plain integer sets: q and K from the window alone.
fn fix_b_by_hand() -> (BTreeSet<i64>, Vec<(usize, usize)>) {
    let u: BTreeSet<i64> = [0, 1].into();
    let omega = 1;
    // At the only vertex p_v = 1, so s_g p s_g^* = chi_{U + 1}.
    let shifted: BTreeSet<i64> = u.iter().map(|x| x + omega).collect();
    let q: BTreeSet<i64> = u.difference(&shifted).copied().collect();
    // Atom 0 is the complement of U; q is finite so a window of integers suffices.
    let atom = |i: usize, x: i64| match i {
        0 => !u.contains(&x),
        1 => x == 0,
        _ => x == 1,
    };
    let mut k = Vec::new();
    for t_v in 0..=2 {
        for t_g in 0..=2 {
            if q.iter().any(|&x| atom(t_v, x) && atom(t_g, x + omega)) {
                k.push((t_v, t_g));
            }
        }
    }
    (q, k)
}

fn c4_concrete_stage() -> Outcome {
    let (hand_q, hand_k) = fix_b_by_hand();
    ensure(hand_q == BTreeSet::from([0]) && hand_k == [(1, 2)], || format!("hand values {hand_q:?} {hand_k:?}"))?;
    let inst = common::fixture("fix_b");
    let lg = inst.labelled();
    let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).map_err(|e| e.to_string())?;
    let g = lg.path("g");
    let v = lg.path("v");
    ensure(c.stage.f == [g.clone()], || "F".into())?;
    ensure(c.stage.m == 1, || "m".into())?;
    ensure(c.stage.estar_f == [g.clone()], || "E*_F".into())?;
    let chi0 = c.alg.chi(&ckaf::algebra::GammaSet::finite(hand_q.iter().map(|&x| lg.group.from_i64s(&[x]).unwrap())));
    ensure(c.alg.equal(&c.q, &chi0), || format!("q = {}", c.alg.display(&c.q)))?;
    let k: Vec<(usize, usize)> = c.blocks.iter().map(|b| (b.index.tau[0], b.index.tau[1])).collect();
    ensure(k == hand_k, || format!("K taus {k:?}"))?;
    let e1 = c.embed_verified(&v, 1, &v).map_err(|e| e.to_string())?;
    let e2 = c.embed_verified(&v, 2, &v).map_err(|e| e.to_string())?;
    ensure(e1.len() == 1 && e1[0].alpha == v && e1[0].beta == v, || "p_1 image".into())?;
    ensure(e2.len() == 1 && e2[0].alpha == g && e2[0].beta == g, || "p_2 image".into())?;
    let (dim, counts) = block_dimension(lg, lg.vertex("v"));
    ensure(dim == Dimension::Infinite && counts == [1, 2, 3, 4, 5], || format!("{dim} {counts:?}"))?;
    let golden = include_str!("golden/fix_b_construct.txt");
    let out = run(Command::Construct, &inst, &RunOptions::default());
    ensure(out.output == golden, || format!("construct output differs from golden file:\n{}", out.output))?;
    Ok("F={g}, m=1, q=chi{0}, K={(v,[1,2])}, p_1->e_vv, p_2->e_gg, dim inf 1 2 3 4 5; golden matches".into())
}

fn c5_oracle() -> Outcome {
    let mut parts = Vec::new();
    for name in common::FINITE {
        let inst = common::fixture(name);
        let lg = inst.labelled();
        let paths: usize =
            lg.graph.vertices().map(|v| lg.graph.enumerate_paths(v, lg.graph.vertex_count()).len()).sum();
        ensure(paths <= 6, || format!("{name} has {paths} paths"))?;
        let r = cross_check(lg, 500, 2024).map_err(|e| e.to_string())?;
        ensure(r.cases == 500 && r.passed(), || format!("{name}: {r:?}"))?;
        parts.push(format!("{name} {}/{} zero", r.symbolic_zero, r.cases));
    }
    Ok(format!("0 disagreements; {}", parts.join(", ")))
}

fn c6_necessity() -> Outcome {
    let mut rng = common::rng(6);
    let mut proper = 0;
    let mut violating = 0;
    for i in 0..100 {
        let lg = common::random_instance(&mut rng, 6);
        let verdict = is_almost_proper(&lg);
        let violations = check_necessary_condition(&lg);
        violating += usize::from(!violations.is_empty());
        if verdict.almost_proper {
            proper += 1;
            ensure(violations.is_empty(), || format!("instance {i}: almost proper with violations"))?;
        }
    }
    Ok(format!("100 instances, {proper} almost proper, {violating} with violations"))
}

fn c7_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ckaf");
    let mut runs = 0;
    for name in common::FIXTURES {
        let inst = common::fixture(name);
        ensure(Instance::parse(&inst.print()).as_ref() == Ok(&inst), || format!("{name}: round trip"))?;
        let path = common::fixture_path(name);
        for fmt in ["json", "text", "dot"] {
            let once = || {
                std::process::Command::new(bin)
                    .args(["report", "--input", path.to_str().unwrap(), "--max-len", "2", "--format", fmt])
                    .output()
                    .map(|o| (o.status.code(), o.stdout))
            };
            let a = once().map_err(|e| e.to_string())?;
            let b = once().map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name} {fmt}: runs differ"))?;
            runs += 2;
        }
        let opts = RunOptions { format: Format::Json, max_len: 2, ..Default::default() };
        ensure(run(Command::Report, &inst, &opts) == run(Command::Report, &inst, &opts), || {
            format!("{name}: library runs differ")
        })?;
    }
    Ok(format!("{} fixtures round-trip, {runs} binary runs byte-identical", common::FIXTURES.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("C1 almost properness matches brute-force zero sums on chains", c1_theorem_equivalence),
        ("C2 single-vertex criterion matches the general procedure", c2_cuntz_case),
        ("C3 identity suite passes and the corrupted q is caught", c3_lemma_suite),
        ("C4 concrete stage values for one loop labelled 1", c4_concrete_stage),
        ("C5 symbolic zero test matches exact matrices", c5_oracle),
        ("C6 almost proper instances satisfy the necessary condition", c6_necessity),
        ("C7 deterministic reports and parse/print round trip", c7_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
