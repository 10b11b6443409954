//! Batch verification of the identities the construction relies on, each by
//! the symbolic zero test over bounded sweeps of paths.

use super::blocks::{self, unit_operator, MatrixUnit};
use super::{BuildOptions, Construction, EmbeddingError, Window};
use crate::algebra::{Algebra, Operator};
use crate::graph::{Path, VertexId};
use crate::labelled::LabelledGraph;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Longest path in the sweeps.
    pub sweep_len: usize,
    /// Longest leg of the generators `s_mu p_i s_nu^*` that are re-expanded,
    /// and largest `k` for the endomorphism and product checks.
    pub generator_len: usize,
    /// Largest `|J|` for which the block set is recomputed exhaustively.
    pub exhaustive_limit: usize,
    /// Largest number of subsets tried per `E^k_v`.
    pub subset_cap: usize,
    /// Paths per block used for the matrix-unit spot checks.
    pub unit_paths: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions::with_max_len(3)
    }
}

impl VerifyOptions {
    pub fn with_max_len(max_len: usize) -> Self {
        VerifyOptions {
            sweep_len: max_len,
            generator_len: max_len.saturating_sub(1),
            exhaustive_limit: 4096,
            subset_cap: 1024,
            unit_paths: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First failing case.
    pub detail: Option<String>,
}

struct Check {
    name: &'static str,
    description: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, description: &'static str) -> Self {
        Check { name, description, cases: 0, failure: None }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            description: self.description,
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self.failure,
        }
    }
}

/// Check names, in report order.
pub const CHECK_NAMES: [&str; 13] = [
    "rho_endomorphism",
    "translated_p_commute",
    "rho_vertex_support",
    "rho_complement_without_path",
    "complement_products",
    "off_window_paths_vanish",
    "q_commutes",
    "q_translates_orthogonal",
    "vertex_cover",
    "block_projections_orthogonal",
    "block_projections_sum",
    "matrix_unit_relations",
    "generator_reconstruction",
];

struct Ctx<'c, 'a> {
    c: &'c Construction<'a>,
    alg: &'c Algebra<'a>,
    lg: &'a LabelledGraph,
    opts: &'c VerifyOptions,
}

impl Ctx<'_, '_> {
    fn name(&self, p: &Path) -> String {
        self.lg.graph.path_name(p)
    }

    fn vname(&self, v: VertexId) -> &str {
        self.lg.graph.vertex_name(v)
    }

    fn all_paths(&self, max_len: usize) -> Vec<Path> {
        let g = &self.lg.graph;
        let mut out: Vec<Path> = g.vertices().flat_map(|v| g.enumerate_paths(v, max_len)).collect();
        out.sort();
        out
    }

    fn atoms(&self) -> Vec<Operator> {
        (1..=self.c.window.size()).map(|i| self.alg.chi(&self.c.window.atom(i))).collect()
    }

    fn is_projection(&self, x: &Operator) -> bool {
        self.alg.equal(&self.alg.mul(x, x), x) && self.alg.equal(&self.alg.adjoint(x), x)
    }

    fn commute(&self, x: &Operator, y: &Operator) -> bool {
        self.alg.equal(&self.alg.mul(x, y), &self.alg.mul(y, x))
    }

    /// Generators of the algebra `rho_vk` acts on: `1`, the atoms, `p`, and
    /// `s_mu f s_mu^*` for `f` in `{1, p_1, ..., p_M}` and short `mu`.
    fn samples(&self) -> Vec<(String, Operator)> {
        let alg = self.alg;
        let w = &self.c.window;
        let mut out = vec![("1".to_string(), alg.one()), ("p".to_string(), self.c.p.clone())];
        for i in 1..=w.size() {
            out.push((format!("p_{i}"), alg.chi(&w.atom(i))));
        }
        let paths: Vec<Path> =
            self.all_paths(self.opts.generator_len).into_iter().filter(|p| !p.is_vertex()).take(6).collect();
        for mu in &paths {
            out.push((format!("s[{0}] s[{0}]^*", self.name(mu)), alg.sandwich(mu, &alg.vertex(mu.range))));
            for i in 1..=w.size().min(2) {
                let f = alg.chi(&w.atom(i));
                out.push((format!("s[{0}] p_{i} s[{0}]^*", self.name(mu)), alg.sandwich(mu, &f)));
            }
        }
        out
    }

    fn rho_endomorphism(&self) -> CheckResult {
        let mut ck =
            Check::new("rho_endomorphism", "rho_vk is multiplicative and *-preserving, and rho_vk(p) is a projection");
        let alg = self.alg;
        let samples = self.samples();
        for v in self.lg.graph.vertices() {
            for k in 1..=self.opts.generator_len {
                let rp = alg.rho(v, k, &self.c.p);
                ck.case(self.is_projection(&rp), || format!("rho({}, {k}, p) is not a projection", self.vname(v)));
                for (xn, x) in &samples {
                    let rx = alg.rho(v, k, x);
                    ck.case(alg.equal(&alg.rho(v, k, &alg.adjoint(x)), &alg.adjoint(&rx)), || {
                        format!("rho({}, {k}) does not commute with * on {xn}", self.vname(v))
                    });
                    for (yn, y) in &samples {
                        let lhs = alg.rho(v, k, &alg.mul(x, y));
                        let rhs = alg.mul(&rx, &alg.rho(v, k, y));
                        ck.case(alg.equal(&lhs, &rhs), || {
                            format!("rho({}, {k}) not multiplicative on ({xn}, {yn})", self.vname(v))
                        });
                    }
                }
            }
        }
        ck.finish()
    }

    fn translated_p_commute(&self) -> CheckResult {
        let mut ck = Check::new("translated_p_commute", "the projections s_mu p s_mu^* and rho_vk(p) commute pairwise");
        let alg = self.alg;
        let g = &self.lg.graph;
        let mut family: Vec<(String, Operator)> = self
            .all_paths(self.opts.sweep_len)
            .iter()
            .map(|mu| (format!("s[{}] p s[{}]^*", self.name(mu), self.name(mu)), alg.sandwich(mu, &self.c.p)))
            .collect();
        for v in g.vertices() {
            for k in 1..=self.opts.sweep_len {
                family.push((format!("rho({}, {k}, p)", self.vname(v)), alg.rho(v, k, &self.c.p)));
            }
        }
        for (i, (xn, x)) in family.iter().enumerate() {
            ck.case(self.is_projection(x), || format!("{xn} is not a projection"));
            for (yn, y) in &family[i + 1..] {
                ck.case(self.commute(x, y), || format!("{xn} and {yn} do not commute"));
            }
        }
        ck.finish()
    }

    fn rho_vertex_support(&self) -> CheckResult {
        let mut ck = Check::new(
            "rho_vertex_support",
            "rho_vk(p) p_u = p_u rho_vk(p) = [u = v] rho_vk(p), and these commute with the atoms",
        );
        let alg = self.alg;
        let g = &self.lg.graph;
        let atoms = self.atoms();
        for v in g.vertices() {
            for k in 1..=self.opts.sweep_len {
                let rp = alg.rho(v, k, &self.c.p);
                for u in g.vertices() {
                    let pu = alg.vertex(u);
                    let expected = if u == v { rp.clone() } else { Operator::zero() };
                    ck.case(
                        alg.equal(&alg.mul(&rp, &pu), &expected) && alg.equal(&alg.mul(&pu, &rp), &expected),
                        || format!("rho({}, {k}, p) against p_{}", self.vname(v), self.vname(u)),
                    );
                }
                for (i, a) in atoms.iter().enumerate() {
                    ck.case(self.commute(&rp, a), || format!("rho({}, {k}, p) and p_{}", self.vname(v), i + 1));
                }
            }
        }
        for mu in self.all_paths(self.opts.sweep_len) {
            let x = alg.sandwich(&mu, &self.c.p);
            for (i, a) in atoms.iter().enumerate() {
                ck.case(self.commute(&x, a), || {
                    format!("s[{}] p s[{}]^* and p_{}", self.name(&mu), self.name(&mu), i + 1)
                });
            }
        }
        ck.finish()
    }

    /// Whether `sum_{mu in E^k_v} s_mu s_mu^* = p_v`, i.e. no path from `v`
    /// shorter than `k` stops at a sink.
    fn expands_to_depth(&self, v: VertexId, k: usize) -> bool {
        let g = &self.lg.graph;
        g.enumerate_paths(v, k.saturating_sub(1)).iter().all(|p| !g.is_sink(p.range))
    }

    fn rho_complement_without_path(&self) -> CheckResult {
        let mut ck = Check::new(
            "rho_complement_without_path",
            "rho_vk(1 - rho_ul(p)) = p_v when no length-k path runs from v to u (and no shorter path from v stops at a sink)",
        );
        let alg = self.alg;
        let g = &self.lg.graph;
        let one = alg.one();
        for v in g.vertices() {
            for k in 1..=self.opts.sweep_len {
                if !self.expands_to_depth(v, k) {
                    continue;
                }
                let ends: Vec<VertexId> = g.paths_of_length(v, k).iter().map(|p| p.range).collect();
                for u in g.vertices() {
                    if ends.contains(&u) {
                        continue;
                    }
                    for l in 1..=self.opts.sweep_len {
                        let lhs = alg.rho(v, k, &(&one - &alg.rho(u, l, &self.c.p)));
                        ck.case(alg.equal(&lhs, &alg.vertex(v)), || {
                            format!("v={}, k={k}, u={}, l={l}", self.vname(v), self.vname(u))
                        });
                    }
                }
            }
        }
        ck.finish()
    }

    fn complement_products(&self) -> CheckResult {
        let mut ck = Check::new(
            "complement_products",
            "p_v - sum_Sigma s_mu p s_mu^* and 1 - sum_Sigma s_mu p s_mu^* factor as products over Sigma in E^k_v",
        );
        let alg = self.alg;
        let g = &self.lg.graph;
        let one = alg.one();
        for v in g.vertices() {
            let pv = alg.vertex(v);
            for k in 1..=self.opts.generator_len {
                let paths = g.paths_of_length(v, k);
                let pieces: Vec<Operator> = paths.iter().map(|mu| alg.sandwich(mu, &self.c.p)).collect();
                let n = paths.len().min(usize::BITS as usize - 1);
                let subsets = (1usize << n).min(self.opts.subset_cap + 1);
                for mask in 1..subsets {
                    let chosen: Vec<&Operator> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| &pieces[b]).collect();
                    let sum = chosen.iter().fold(Operator::zero(), |acc, x| &acc + *x);
                    let prod_v = chosen.iter().fold(pv.clone(), |acc, x| alg.mul(&acc, &(&pv - *x)));
                    let prod_1 = chosen.iter().fold(one.clone(), |acc, x| alg.mul(&acc, &(&one - *x)));
                    ck.case(alg.equal(&(&pv - &sum), &prod_v) && alg.equal(&(&one - &sum), &prod_1), || {
                        format!("v={}, k={k}, subset mask {mask:b}", self.vname(v))
                    });
                }
            }
        }
        ck.finish()
    }

    fn off_window_paths_vanish(&self) -> CheckResult {
        let mut ck = Check::new(
            "off_window_paths_vanish",
            "p s_mu p = 0 exactly for the paths of positive length outside F, and F lies in E*_F",
        );
        let alg = self.alg;
        let st = &self.c.stage;
        for mu in self.all_paths(self.opts.sweep_len) {
            if mu.is_vertex() {
                continue;
            }
            let x = alg.mul(&alg.mul(&self.c.p, &alg.path(&mu)), &self.c.p);
            let zero = alg.is_zero(&x);
            ck.case(zero != st.in_f(&mu), || {
                format!("p s[{}] p vanishing disagrees with F membership", self.name(&mu))
            });
        }
        for mu in &st.f {
            ck.case(st.in_estar_f(mu), || format!("{} is in F but not in E*_F", self.name(mu)));
        }
        ck.finish()
    }

    fn q_commutes(&self) -> CheckResult {
        let mut ck = Check::new(
            "q_commutes",
            "q is a subprojection of p, and q and rho_uk(q) commute with the atoms and every p_v",
        );
        let alg = self.alg;
        let g = &self.lg.graph;
        let q = &self.c.q;
        ck.case(self.is_projection(q), || "q is not a projection".into());
        ck.case(alg.equal(&alg.mul(q, &self.c.p), q), || "q p != q".into());
        let mut tests: Vec<(String, Operator)> =
            self.atoms().into_iter().enumerate().map(|(i, a)| (format!("p_{}", i + 1), a)).collect();
        tests.extend(g.vertices().map(|v| (format!("p_{}", self.vname(v)), alg.vertex(v))));
        let mut subjects = vec![("q".to_string(), q.clone())];
        for u in g.vertices() {
            for k in 1..=self.opts.generator_len {
                subjects.push((format!("rho({}, {k}, q)", self.vname(u)), alg.rho(u, k, q)));
            }
        }
        for (xn, x) in &subjects {
            for (yn, y) in &tests {
                ck.case(self.commute(x, y), || format!("{xn} and {yn} do not commute"));
            }
        }
        ck.finish()
    }

    fn q_translates_orthogonal(&self) -> CheckResult {
        let mut ck = Check::new(
            "q_translates_orthogonal",
            "(s_mu q s_mu^*)(s_nu q s_nu^*) = [mu = nu] s_mu q s_mu^*, and q s_mu q = 0 for |mu| >= 1",
        );
        let alg = self.alg;
        let q = &self.c.q;
        let paths = self.all_paths(self.opts.sweep_len);
        let pieces: Vec<Operator> = paths.iter().map(|mu| alg.sandwich(mu, q)).collect();
        for (i, mu) in paths.iter().enumerate() {
            for (j, nu) in paths.iter().enumerate() {
                let expected = if i == j { pieces[i].clone() } else { Operator::zero() };
                ck.case(alg.equal(&alg.mul(&pieces[i], &pieces[j]), &expected), || {
                    format!("mu={}, nu={}", self.name(mu), self.name(nu))
                });
            }
            if !mu.is_vertex() {
                let x = alg.mul(&alg.mul(q, &alg.path(mu)), q);
                ck.case(alg.is_zero(&x), || format!("q s[{}] q != 0", self.name(mu)));
            }
        }
        ck.finish()
    }

    fn vertex_cover(&self) -> CheckResult {
        let mut ck = Check::new(
            "vertex_cover",
            "p_v p = sum over E*(v) of s_mu q s_mu^* p, with E*(v) = {v} off the levels and inside E*_F and the level vertices on them",
        );
        let st = &self.c.stage;
        for cover in &self.c.covers {
            let v = cover.v;
            ck.case(cover.verified, || format!("identity fails at {}", self.vname(v)));
            match st.depth_of(v) {
                None => ck.case(cover.paths == vec![Path::vertex(v)], || {
                    format!("E*({}) should be the vertex alone", self.vname(v))
                }),
                Some(_) => {
                    let inside = cover.paths.iter().all(|p| {
                        if p.is_vertex() {
                            st.depth_of(p.source).is_some()
                        } else {
                            st.in_estar_f(p)
                        }
                    });
                    ck.case(inside, || format!("E*({}) leaves E*_F and the level vertices", self.vname(v)));
                }
            }
        }
        ck.finish()
    }

    fn block_projections_orthogonal(&self) -> CheckResult {
        let mut ck = Check::new(
            "block_projections_orthogonal",
            "the nonzero q_(v,tau) are mutually orthogonal projections, and no other tau gives a nonzero one",
        );
        let alg = self.alg;
        let bs = &self.c.blocks;
        for (i, b) in bs.iter().enumerate() {
            ck.case(self.is_projection(&b.projection), || format!("{} is not a projection", self.c.block_name(i)));
            for (j, b2) in bs.iter().enumerate().skip(i + 1) {
                ck.case(alg.is_zero(&alg.mul(&b.projection, &b2.projection)), || {
                    format!("{} and {} are not orthogonal", self.c.block_name(i), self.c.block_name(j))
                });
            }
        }
        if let Some(full) =
            blocks::compute_k_exhaustive(alg, &self.c.window, &self.c.stage, &self.c.q, self.opts.exhaustive_limit)
        {
            let mut fast: Vec<_> = bs.iter().map(|b| b.index.clone()).collect();
            fast.sort();
            let slow: Vec<_> = full.iter().map(|b| b.index.clone()).collect();
            ck.case(fast == slow, || {
                format!("exhaustive search finds {} blocks, candidate search {}", slow.len(), fast.len())
            });
        }
        ck.finish()
    }

    fn block_projections_sum(&self) -> CheckResult {
        let mut ck = Check::new("block_projections_sum", "p_v q is the sum of the q_(v,tau) over the blocks at v");
        let alg = self.alg;
        for v in self.lg.graph.vertices() {
            let sum =
                self.c.blocks.iter().filter(|b| b.index.v == v).fold(Operator::zero(), |acc, b| &acc + &b.projection);
            ck.case(alg.equal(&alg.mul(&alg.vertex(v), &self.c.q), &sum), || format!("at {}", self.vname(v)));
        }
        ck.finish()
    }

    fn matrix_unit_relations(&self) -> CheckResult {
        let mut ck = Check::new(
            "matrix_unit_relations",
            "sampled s_a q_b s_c^* are nonzero and multiply as matrix units within a block and to zero across blocks",
        );
        let alg = self.alg;
        let g = &self.lg.graph;
        let mut units: Vec<(MatrixUnit, Operator)> = Vec::new();
        for (b, block) in self.c.blocks.iter().enumerate() {
            let paths: Vec<Path> =
                g.paths_ending_at(block.index.v, self.opts.sweep_len).into_iter().take(self.opts.unit_paths).collect();
            for a in &paths {
                for c in &paths {
                    let u = MatrixUnit { block: b, alpha: a.clone(), beta: c.clone() };
                    let op = unit_operator(alg, &self.c.blocks, &u);
                    units.push((u, op));
                }
            }
        }
        let label = |u: &MatrixUnit| {
            format!("e[{}; {}, {}]", self.c.block_name(u.block), self.name(&u.alpha), self.name(&u.beta))
        };
        for (u, x) in &units {
            ck.case(!alg.is_zero(x), || format!("{} vanishes", label(u)));
        }
        for (u1, x1) in &units {
            for (u2, x2) in &units {
                let expected = if u1.block == u2.block && u1.beta == u2.alpha {
                    unit_operator(
                        alg,
                        &self.c.blocks,
                        &MatrixUnit { block: u1.block, alpha: u1.alpha.clone(), beta: u2.beta.clone() },
                    )
                } else {
                    Operator::zero()
                };
                ck.case(alg.equal(&alg.mul(x1, x2), &expected), || format!("{} * {}", label(u1), label(u2)));
            }
        }
        ck.finish()
    }

    fn generator_reconstruction(&self) -> CheckResult {
        let mut ck = Check::new(
            "generator_reconstruction",
            "every s_mu p_i s_nu^* with short legs is the sum of its matrix units",
        );
        let g = &self.lg.graph;
        for v in g.vertices() {
            let legs = g.paths_ending_at(v, self.opts.generator_len);
            for mu in &legs {
                for nu in &legs {
                    for i in 1..=self.c.window.size() {
                        let ok = self.c.embed_verified(mu, i, nu).is_ok();
                        ck.case(ok, || format!("s[{}] p_{i} s[{}]^*", self.name(mu), self.name(nu)));
                    }
                }
            }
        }
        ck.finish()
    }
}

/// Runs every check on a built construction.
pub fn verify_construction(c: &Construction, opts: &VerifyOptions) -> Vec<CheckResult> {
    let ctx = Ctx { c, alg: &c.alg, lg: c.lg(), opts };
    vec![
        ctx.rho_endomorphism(),
        ctx.translated_p_commute(),
        ctx.rho_vertex_support(),
        ctx.rho_complement_without_path(),
        ctx.complement_products(),
        ctx.off_window_paths_vanish(),
        ctx.q_commutes(),
        ctx.q_translates_orthogonal(),
        ctx.vertex_cover(),
        ctx.block_projections_orthogonal(),
        ctx.block_projections_sum(),
        ctx.matrix_unit_relations(),
        ctx.generator_reconstruction(),
    ]
}

pub fn verify_instance(
    lg: &LabelledGraph,
    window: Window,
    build: &BuildOptions,
    opts: &VerifyOptions,
) -> Result<Vec<CheckResult>, EmbeddingError> {
    let c = Construction::build(lg, window, build)?;
    Ok(verify_construction(&c, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn fix_b_passes_and_control_fails() {
        let lg = LabelledGraph::build(GroupSpec::integers(), &["v"], &[("g", "v", "v", &[1])]).unwrap();
        let w = || Window::from_i64s(&lg.group, &[&[0], &[1]]).unwrap();
        let res = verify_instance(&lg, w(), &BuildOptions::default(), &VerifyOptions::default()).unwrap();
        assert_eq!(res.iter().map(|r| r.name).collect::<Vec<_>>(), CHECK_NAMES);
        for r in &res {
            assert!(r.passed, "{} failed: {:?}", r.name, r.detail);
            assert!(r.cases > 0 || r.name == "rho_complement_without_path", "{} ran no cases", r.name);
        }
        let bad = verify_instance(
            &lg,
            w(),
            &BuildOptions { corrupt_q: true, ..Default::default() },
            &VerifyOptions::default(),
        )
        .unwrap();
        let failed: Vec<&str> = bad.iter().filter(|r| !r.passed).map(|r| r.name).collect();
        assert_eq!(
            failed,
            ["q_translates_orthogonal", "vertex_cover", "matrix_unit_relations", "generator_reconstruction"]
        );
    }
}
