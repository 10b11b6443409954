//! Command dispatch and report emission in JSON, plain text and Graphviz dot.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::algebra::oracle::{cross_check, OracleError};
use crate::embedding::blocks::{block_dimension, TRUNCATION};
use crate::embedding::verify::verify_construction;
use crate::embedding::{BuildOptions, CheckResult, Construction, EmbeddingError, MatrixUnit, VerifyOptions, Window};
use crate::graph::{EdgeId, Path};
use crate::instance::Instance;
use crate::labelled::LabelledGraph;
use crate::properness::{check_necessary_condition, cuntz_case_check, is_almost_proper, ZeroSumCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Construct,
    Embed,
    Verify,
    Oracle,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the instance's window.
    pub window: Option<Window>,
    /// Sweep length for verification; generators use legs up to `max_len - 1`.
    pub max_len: usize,
    pub format: Format,
    pub oracle_cases: usize,
    pub seed: u64,
    pub corrupt_q: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { window: None, max_len: 3, format: Format::Text, oracle_cases: 500, seed: 0, corrupt_q: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

fn num_i(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |n| json!(n))
}

fn num_u(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |n| json!(n))
}

fn loop_name(lg: &LabelledGraph, e: EdgeId) -> String {
    let g = &lg.graph;
    format!("{}@{}", g.edge(e).name, g.vertex_name(g.source(e)))
}

/// One report section in both structured and text form.
struct Section {
    key: &'static str,
    json: Value,
    text: String,
}

fn check_section(lg: &LabelledGraph) -> (Section, bool) {
    let g = &lg.graph;
    let verdict = is_almost_proper(lg);
    let mut text = format!("almost proper: {}\n", if verdict.almost_proper { "yes" } else { "no" });
    let mut families = Vec::new();
    for w in &verdict.witnesses {
        let loops: Vec<String> = w.family.loops.iter().map(|&e| loop_name(lg, e)).collect();
        let path = g.path_name(&w.family.path);
        let _ = writeln!(text, "tree path {path}: loops {}", loops.join(", "));
        let cert = match &w.certificate {
            ZeroSumCertificate::Primal { multiplicities } => {
                let pairs: Vec<String> = loops
                    .iter()
                    .zip(multiplicities)
                    .filter(|(_, m)| **m != BigUint::from(0u8))
                    .map(|(l, m)| format!("{l}:{m}"))
                    .collect();
                let _ = writeln!(text, "  zero sum: {}", pairs.join(", "));
                json!({
                    "kind": "primal",
                    "multiplicities": loops.iter().zip(multiplicities)
                        .map(|(l, m)| json!({"loop": l, "multiplicity": num_u(m)})).collect::<Vec<_>>(),
                })
            }
            ZeroSumCertificate::Dual { functional } => {
                let products: Vec<BigInt> = w.family.loops.iter().map(|&e| lg.label(e).pair_free(functional)).collect();
                let shown: Vec<String> = functional.iter().map(|x| x.to_string()).collect();
                let prods: Vec<String> = loops.iter().zip(&products).map(|(l, p)| format!("{l}:{p}")).collect();
                let _ =
                    writeln!(text, "  separating functional ({}) with products {}", shown.join(","), prods.join(", "));
                json!({
                    "kind": "dual",
                    "functional": functional.iter().map(num_i).collect::<Vec<_>>(),
                    "products": loops.iter().zip(&products)
                        .map(|(l, p)| json!({"loop": l, "product": num_i(p)})).collect::<Vec<_>>(),
                })
            }
        };
        families.push(json!({"tree_path": path, "loops": loops, "certificate": cert}));
    }
    let violations = check_necessary_condition(lg);
    let vjson: Vec<Value> = violations
        .iter()
        .map(|v| json!({"loop": loop_name(lg, v.loop_edge), "vertex": g.vertex_name(v.vertex), "label": v.label.to_string()}))
        .collect();
    if violations.is_empty() {
        text.push_str("necessary condition: no loop with an exit has a finite-order label\n");
    } else {
        for v in &violations {
            let _ = writeln!(
                text,
                "necessary condition violated: {} has an exit and label {}",
                loop_name(lg, v.loop_edge),
                v.label
            );
        }
    }
    let cuntz = cuntz_case_check(lg).ok();
    if let Some(c) = cuntz {
        let _ = writeln!(text, "single-vertex criterion: {}", if c { "yes" } else { "no" });
    }
    let json = json!({
        "almost_proper": verdict.almost_proper,
        "families": families,
        "necessary_condition_violations": vjson,
        "single_vertex_criterion": cuntz,
    });
    (Section { key: "check", json, text }, verdict.almost_proper)
}

fn names(c: &Construction, paths: &[Path]) -> Vec<String> {
    paths.iter().map(|p| c.lg().graph.path_name(p)).collect()
}

fn construct_section(c: &Construction) -> (Section, bool) {
    let g = &c.lg().graph;
    let st = &c.stage;
    let vn = |v| g.vertex_name(v).to_string();
    let window: Vec<String> = c.window.points.iter().map(|x| x.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "window U = {{{}}}", window.join(", "));
    let _ = writeln!(text, "F = {{{}}}", names(c, &st.f).join(", "));
    let _ = writeln!(text, "W = {{{}}}", st.w.iter().map(|&v| vn(v)).collect::<Vec<_>>().join(", "));
    let _ = writeln!(text, "V = {{{}}}", st.v.iter().map(|&v| vn(v)).collect::<Vec<_>>().join(", "));
    let _ = writeln!(text, "m = {}", st.m);
    let mut levels = Vec::new();
    for (root, j, vs) in &st.levels {
        let members: Vec<String> = vs.iter().map(|&v| vn(v)).collect();
        let _ = writeln!(text, "V({}, {j}) = {{{}}}", vn(*root), members.join(", "));
        levels.push(json!({"root": vn(*root), "j": j, "vertices": members}));
    }
    let _ = writeln!(text, "E*_F = {{{}}}", names(c, &st.estar_f).join(", "));
    let _ = writeln!(text, "tilde v = {}", vn(st.tilde_v));
    let p = c.alg.display(&c.p);
    let q = c.alg.display(&c.q);
    let _ = writeln!(text, "p = {p}");
    let _ = writeln!(text, "q = {q}");
    let _ = writeln!(text, "|K| = {}", c.blocks.len());
    let mut blocks = Vec::new();
    for (b, block) in c.blocks.iter().enumerate() {
        let (dim, counts) = block_dimension(c.lg(), block.index.v);
        let proj = c.alg.display(&block.projection);
        let tau: Vec<Value> = st
            .tilde_estar_f
            .iter()
            .zip(&block.index.tau)
            .map(|(mu, t)| {
                let name = if mu.is_vertex() { format!("~{}", g.path_name(mu)) } else { g.path_name(mu) };
                json!({"path": name, "atom": t})
            })
            .collect();
        let counts_s: Vec<String> = counts.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(text, "block {}: q = {proj}", c.block_name(b));
        let _ = writeln!(text, "  dimension {dim}, paths in by length <= 0..{TRUNCATION}: {}", counts_s.join(" "));
        blocks.push(json!({
            "name": c.block_name(b),
            "vertex": vn(block.index.v),
            "tau": tau,
            "projection": proj,
            "dimension": dim.to_string(),
            "truncated_counts": counts,
        }));
    }
    let mut covers = Vec::new();
    let mut ok = true;
    for cover in &c.covers {
        ok &= cover.verified;
        let paths = names(c, &cover.paths);
        let _ = writeln!(
            text,
            "E*({}) = {{{}}}{}",
            vn(cover.v),
            paths.join(", "),
            if cover.verified { "" } else { "  (identity FAILS)" }
        );
        covers.push(json!({
            "vertex": vn(cover.v),
            "paths": paths,
            "candidates": names(c, &cover.candidates),
            "verified": cover.verified,
        }));
    }
    let json = json!({
        "window": window,
        "F": names(c, &st.f),
        "W": st.w.iter().map(|&v| vn(v)).collect::<Vec<_>>(),
        "V": st.v.iter().map(|&v| vn(v)).collect::<Vec<_>>(),
        "m": st.m,
        "levels": levels,
        "estar_f": names(c, &st.estar_f),
        "tilde_v": vn(st.tilde_v),
        "p": p,
        "q": q,
        "blocks": blocks,
        "estar_v": covers,
    });
    (Section { key: "construct", json, text }, ok)
}

/// `(mu, i, nu, units or error)` for every generator with legs up to `max_leg`.
type Embedding = (Path, usize, Path, Result<Vec<MatrixUnit>, EmbeddingError>);

fn embeddings(c: &Construction, max_leg: usize) -> Vec<Embedding> {
    let g = &c.lg().graph;
    let mut out = Vec::new();
    for v in g.vertices() {
        let legs = g.paths_ending_at(v, max_leg);
        for mu in &legs {
            for nu in &legs {
                for i in 1..=c.window.size() {
                    out.push((mu.clone(), i, nu.clone(), c.embed_verified(mu, i, nu)));
                }
            }
        }
    }
    out
}

fn generator_name(c: &Construction, mu: &Path, i: usize, nu: &Path) -> String {
    let g = &c.lg().graph;
    format!("s[{}] p_{i} s[{}]^*", g.path_name(mu), g.path_name(nu))
}

fn unit_name(c: &Construction, u: &MatrixUnit) -> String {
    let g = &c.lg().graph;
    format!("e[{}; {}, {}]", c.block_name(u.block), g.path_name(&u.alpha), g.path_name(&u.beta))
}

fn embed_section(c: &Construction, table: &[Embedding], max_leg: usize) -> (Section, bool) {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for (mu, i, nu, res) in table {
        let name = generator_name(c, mu, *i, nu);
        match res {
            Ok(units) => {
                let us: Vec<String> = units.iter().map(|u| unit_name(c, u)).collect();
                let shown = if us.is_empty() { "0".to_string() } else { us.join(" + ") };
                let _ = writeln!(text, "{name} -> {shown}");
                rows.push(json!({"generator": name, "units": units.iter().map(|u| json!({
                    "block": c.block_name(u.block),
                    "alpha": c.lg().graph.path_name(&u.alpha),
                    "beta": c.lg().graph.path_name(&u.beta),
                })).collect::<Vec<_>>(), "verified": true}));
            }
            Err(e) => {
                ok = false;
                let _ = writeln!(text, "{name} -> FAILED: {e}");
                rows.push(json!({"generator": name, "units": [], "verified": false, "error": e.to_string()}));
            }
        }
    }
    let json = json!({"max_leg": max_leg, "generators": rows});
    (Section { key: "embed", json, text }, ok)
}

fn verify_section(results: &[CheckResult], opts: &VerifyOptions) -> (Section, bool) {
    let mut text = String::new();
    let passed = results.iter().all(|r| r.passed);
    for r in results {
        let _ = writeln!(
            text,
            "[{}] {} ({} cases): {}",
            if r.passed { "ok" } else { "FAIL" },
            r.name,
            r.cases,
            r.description
        );
        if let Some(d) = &r.detail {
            let _ = writeln!(text, "  first failure: {d}");
        }
    }
    let checks: Vec<Value> = results
        .iter()
        .map(|r| json!({"name": r.name, "description": r.description, "passed": r.passed, "cases": r.cases, "detail": r.detail}))
        .collect();
    let json = json!({
        "sweep_len": opts.sweep_len,
        "generator_len": opts.generator_len,
        "passed": passed,
        "checks": checks,
    });
    (Section { key: "verify", json, text }, passed)
}

fn oracle_section(lg: &LabelledGraph, opts: &RunOptions) -> Result<(Section, bool), OracleError> {
    let r = cross_check(lg, opts.oracle_cases, opts.seed)?;
    let text = format!(
        "{} expressions (seed {}), {} by rewriting, {} symbolically zero\n\
         zero-test disagreements: {}, representation mismatches: {}, rewrites not recognised: {}\n",
        r.cases,
        opts.seed,
        r.rewrite_cases,
        r.symbolic_zero,
        r.zero_test_disagreements,
        r.representation_mismatches,
        r.rewrite_failures
    );
    let json = json!({
        "cases": r.cases,
        "seed": opts.seed,
        "rewrite_cases": r.rewrite_cases,
        "symbolic_zero": r.symbolic_zero,
        "zero_test_disagreements": r.zero_test_disagreements,
        "representation_mismatches": r.representation_mismatches,
        "rewrite_failures": r.rewrite_failures,
        "passed": r.passed(),
    });
    Ok((Section { key: "oracle", json, text }, r.passed()))
}

/// The block diagram: one node per block, one node per generator, and an edge
/// from each generator to every block its image touches.
pub fn block_diagram(c: &Construction, table: &[Embedding]) -> String {
    let mut out = String::from("digraph blocks {\n  rankdir=LR;\n  node [shape=box];\n");
    for (b, block) in c.blocks.iter().enumerate() {
        let (dim, counts) = block_dimension(c.lg(), block.index.v);
        let counts: Vec<String> = counts.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(
            out,
            "  b{b} [label=\"{}\\ndim {dim}\\ncounts {}\"];",
            c.block_name(b).replace('"', "\\\""),
            counts.join(" ")
        );
    }
    for (k, (mu, i, nu, res)) in table.iter().enumerate() {
        let Ok(units) = res else { continue };
        let _ = writeln!(out, "  g{k} [shape=plaintext, label=\"{}\"];", generator_name(c, mu, *i, nu));
        let mut touched: Vec<(usize, usize)> = Vec::new();
        for u in units {
            match touched.iter_mut().find(|(b, _)| *b == u.block) {
                Some((_, n)) => *n += 1,
                None => touched.push((u.block, 1)),
            }
        }
        touched.sort();
        for (b, n) in touched {
            let _ = writeln!(out, "  g{k} -> b{b} [label=\"{n}\"];");
        }
    }
    out.push_str("}\n");
    out
}

fn render(sections: &[Section], format: Format) -> String {
    match format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            for s in sections {
                doc.insert(s.key.into(), s.json.clone());
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("serialisable");
            out.push('\n');
            out
        }
        _ => {
            if sections.len() == 1 {
                return sections[0].text.clone();
            }
            sections.iter().map(|s| format!("== {} ==\n{}", s.key, s.text)).collect::<Vec<_>>().join("\n")
        }
    }
}

fn usage(message: impl std::fmt::Display) -> Outcome {
    Outcome { output: format!("error: {message}\n"), status: EXIT_USAGE }
}

/// Runs one command on an instance.
pub fn run(command: Command, inst: &Instance, opts: &RunOptions) -> Outcome {
    let lg = inst.labelled();
    if opts.format == Format::Dot && !matches!(command, Command::Construct | Command::Embed | Command::Report) {
        return usage("dot output is only available for construct, embed and report");
    }
    let mut sections = Vec::new();
    let mut status = EXIT_OK;
    let (check, almost_proper) = check_section(lg);
    match command {
        Command::Check => return Outcome { output: render(&[check], opts.format), status },
        Command::Oracle => {
            return match oracle_section(lg, opts) {
                Ok((s, ok)) => {
                    Outcome { output: render(&[s], opts.format), status: if ok { EXIT_OK } else { EXIT_FAILED } }
                }
                Err(e) => usage(format!("oracle unavailable: {e}")),
            };
        }
        _ => {}
    }
    if command == Command::Report {
        sections.push(check);
    }
    if !almost_proper {
        if command == Command::Report {
            return Outcome { output: render(&sections, opts.format), status: EXIT_REFUSED };
        }
        return Outcome { output: "refused: labelling is not almost proper\n".into(), status: EXIT_REFUSED };
    }
    let Some(window) = opts.window.clone().or_else(|| inst.window()) else {
        return usage("no window: give --window or a window in the instance");
    };
    let build = BuildOptions { tilde_v: inst.tilde_v_id(), corrupt_q: opts.corrupt_q };
    let c = match Construction::build(lg, window, &build) {
        Ok(c) => c,
        Err(EmbeddingError::NotAlmostProper) => {
            return Outcome { output: "refused: labelling is not almost proper\n".into(), status: EXIT_REFUSED }
        }
        Err(e) => return usage(e),
    };
    let max_leg = opts.max_len.saturating_sub(1);
    let vopts = VerifyOptions::with_max_len(opts.max_len);
    let needs_table = matches!(command, Command::Embed | Command::Report) || opts.format == Format::Dot;
    let table = if needs_table { embeddings(&c, max_leg) } else { Vec::new() };
    if matches!(command, Command::Construct | Command::Report) {
        let (s, ok) = construct_section(&c);
        if !ok {
            status = EXIT_FAILED;
        }
        sections.push(s);
    }
    if matches!(command, Command::Embed | Command::Report) {
        let (s, ok) = embed_section(&c, &table, max_leg);
        if !ok {
            status = EXIT_FAILED;
        }
        sections.push(s);
    }
    if matches!(command, Command::Verify | Command::Report) {
        let (s, ok) = verify_section(&verify_construction(&c, &vopts), &vopts);
        if !ok {
            status = EXIT_FAILED;
        }
        sections.push(s);
    }
    if command == Command::Report && !lg.has_loops() && lg.group.is_finite() {
        let (s, ok) = oracle_section(lg, opts).expect("finite loop-free instance");
        if !ok {
            status = EXIT_FAILED;
        }
        sections.push(s);
    }
    let output = if opts.format == Format::Dot { block_diagram(&c, &table) } else { render(&sections, opts.format) };
    Outcome { output, status }
}
