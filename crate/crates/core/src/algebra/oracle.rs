//! Exact matrix representation for finite groups on loop-free graphs.
//!
//! The space has basis `Gamma x {paths ending at a sink}`. `s_e` sends
//! `(sigma, mu)` with `s(mu) = r(e)` to `(sigma + omega_e, e mu)` and `chi_A`
//! acts diagonally. Nothing here reuses the symbolic product rule, which is
//! what makes it usable as an oracle.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::gamma::{GammaFunction, GammaSet, Rational};
use super::operator::{Algebra, Operator};
use crate::graph::{EdgeId, Path, VertexId};
use crate::group::GroupElement;
use crate::labelled::LabelledGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the matrix oracle needs a finite group")]
    InfiniteGroup,
    #[error("the matrix oracle needs a graph without loops")]
    HasLoops,
}

/// Sparse exact matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: BTreeMap::new() }
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero);
        self.set(i, j, cur + v);
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for ((i, j), v) in &other.entries {
            out.add_at(*i, *j, v);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for ((i, j), v) in &self.entries {
            out.set(*i, *j, v * c);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let mut rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.n];
        for ((k, j), v) in &other.entries {
            rows[*k].push((*j, v));
        }
        let mut out = Matrix::zero(self.n);
        for ((i, k), a) in &self.entries {
            for (j, b) in &rows[*k] {
                out.add_at(*i, *j, &(a * *b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for ((i, j), v) in &self.entries {
            out.set(*j, *i, v.clone());
        }
        out
    }
}

/// The representation on `Gamma x {paths ending at a sink}`.
#[derive(Clone, Debug)]
pub struct MatrixRep<'a> {
    lg: &'a LabelledGraph,
    basis: Vec<(GroupElement, Path)>,
    index: HashMap<(GroupElement, Path), usize>,
    edges: Vec<Matrix>,
}

impl<'a> MatrixRep<'a> {
    pub fn new(lg: &'a LabelledGraph) -> Result<Self, OracleError> {
        let elements = lg.group.elements().ok_or(OracleError::InfiniteGroup)?;
        if lg.has_loops() {
            return Err(OracleError::HasLoops);
        }
        let g = &lg.graph;
        let mut paths: Vec<Path> =
            g.vertices().flat_map(|v| g.enumerate_paths(v, g.vertex_count())).filter(|p| g.is_sink(p.range)).collect();
        paths.sort();
        let mut basis = Vec::new();
        for s in &elements {
            for p in &paths {
                basis.push((s.clone(), p.clone()));
            }
        }
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let n = basis.len();
        let mut edges = Vec::new();
        for e in g.edge_ids() {
            let mut m = Matrix::zero(n);
            for (j, (s, p)) in basis.iter().enumerate() {
                if p.source != g.range(e) {
                    continue;
                }
                let mut es = vec![e];
                es.extend_from_slice(&p.edges);
                let ep = g.path(g.source(e), &es).expect("composable");
                let i = index[&(s + lg.label(e), ep)];
                m.set(i, j, Rational::one());
            }
            edges.push(m);
        }
        Ok(MatrixRep { lg, basis, index, edges })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn edge(&self, e: EdgeId) -> Matrix {
        self.edges[e.0].clone()
    }

    pub fn vertex(&self, v: VertexId) -> Matrix {
        self.diagonal(|_, p| if p.source == v { Rational::one() } else { Rational::zero() })
    }

    pub fn function(&self, f: &GammaFunction) -> Matrix {
        self.diagonal(|s, _| f.value(s))
    }

    pub fn chi(&self, set: &GammaSet) -> Matrix {
        self.diagonal(|s, _| if set.contains(s) { Rational::one() } else { Rational::zero() })
    }

    fn diagonal(&self, f: impl Fn(&GroupElement, &Path) -> Rational) -> Matrix {
        let mut m = Matrix::zero(self.dim());
        for (i, (s, p)) in self.basis.iter().enumerate() {
            m.set(i, i, f(s, p));
        }
        m
    }

    /// `s_mu` as the product of its edge matrices, `p_v` for a vertex.
    pub fn path(&self, mu: &Path) -> Matrix {
        mu.edges.iter().fold(self.vertex(mu.source), |acc, &e| acc.mul(&self.edges[e.0]))
    }

    pub fn operator(&self, x: &Operator) -> Matrix {
        let mut out = Matrix::zero(self.dim());
        for (m, n, f) in x.terms() {
            out = out.add(&self.path(m).mul(&self.function(f)).mul(&self.path(n).transpose()));
        }
        out
    }

    pub fn basis_label(&self, i: usize) -> String {
        let (s, p) = &self.basis[i];
        format!("({s},{})", self.lg.graph.path_name(p))
    }

    pub fn position(&self, s: &GroupElement, p: &Path) -> Option<usize> {
        self.index.get(&(s.clone(), p.clone())).copied()
    }
}

/// Expression trees over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Vertex(VertexId),
    Edge(EdgeId),
    EdgeStar(EdgeId),
    Chi(GammaSet),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(i64, Box<Expr>),
    Adj(Box<Expr>),
}

fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

fn add(a: Expr, b: Expr) -> Expr {
    Expr::Add(Box::new(a), Box::new(b))
}

impl Expr {
    pub fn symbolic(&self, alg: &Algebra) -> Operator {
        match self {
            Expr::Vertex(v) => alg.vertex(*v),
            Expr::Edge(e) => alg.edge(*e),
            Expr::EdgeStar(e) => alg.adjoint(&alg.edge(*e)),
            Expr::Chi(a) => alg.chi(a),
            Expr::Add(a, b) => &a.symbolic(alg) + &b.symbolic(alg),
            Expr::Sub(a, b) => &a.symbolic(alg) - &b.symbolic(alg),
            Expr::Mul(a, b) => alg.mul(&a.symbolic(alg), &b.symbolic(alg)),
            Expr::Scale(c, a) => a.symbolic(alg).scale(&Rational::from_integer((*c).into())),
            Expr::Adj(a) => alg.adjoint(&a.symbolic(alg)),
        }
    }

    pub fn matrix(&self, rep: &MatrixRep) -> Matrix {
        match self {
            Expr::Vertex(v) => rep.vertex(*v),
            Expr::Edge(e) => rep.edge(*e),
            Expr::EdgeStar(e) => rep.edge(*e).transpose(),
            Expr::Chi(a) => rep.chi(a),
            Expr::Add(a, b) => a.matrix(rep).add(&b.matrix(rep)),
            Expr::Sub(a, b) => a.matrix(rep).sub(&b.matrix(rep)),
            Expr::Mul(a, b) => a.matrix(rep).mul(&b.matrix(rep)),
            Expr::Scale(c, a) => a.matrix(rep).scale(&Rational::from_integer((*c).into())),
            Expr::Adj(a) => a.matrix(rep).transpose(),
        }
    }
}

/// Random expression and rewrite generator for one instance.
pub struct ExprGen<'a> {
    lg: &'a LabelledGraph,
    elements: Vec<GroupElement>,
    rng: ChaCha8Rng,
}

impl<'a> ExprGen<'a> {
    pub fn new(lg: &'a LabelledGraph, seed: u64) -> Self {
        let elements = lg.group.elements().unwrap_or_else(|| {
            // Infinite groups: draw from a small box around zero.
            (-2..=2)
                .map(|i| {
                    let mut c = vec![0i64; lg.group.arity()];
                    if let Some(x) = c.first_mut() {
                        *x = i;
                    }
                    lg.group.from_i64s(&c).expect("shape")
                })
                .collect()
        });
        ExprGen { lg, elements, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn random_set(&mut self) -> GammaSet {
        let picked: Vec<GroupElement> = self.elements.iter().filter(|_| self.rng.gen_bool(0.5)).cloned().collect();
        if self.rng.gen_bool(0.25) {
            GammaSet::Cofinite(picked.into_iter().collect())
        } else {
            GammaSet::finite(picked)
        }
    }

    fn leaf(&mut self) -> Expr {
        let g = &self.lg.graph;
        let nv = g.vertex_count();
        let ne = g.edge_count();
        let pick = self.rng.gen_range(0..if ne == 0 { 2 } else { 4 });
        match pick {
            0 => Expr::Vertex(VertexId(self.rng.gen_range(0..nv))),
            1 => Expr::Chi(self.random_set()),
            2 => Expr::Edge(EdgeId(self.rng.gen_range(0..ne))),
            _ => Expr::EdgeStar(EdgeId(self.rng.gen_range(0..ne))),
        }
    }

    pub fn expr(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.leaf();
        }
        match self.rng.gen_range(0..10) {
            0..=4 => mul(self.expr(depth - 1), self.expr(depth - 1)),
            5 | 6 => add(self.expr(depth - 1), self.expr(depth - 1)),
            7 => Expr::Sub(Box::new(self.expr(depth - 1)), Box::new(self.expr(depth - 1))),
            8 => Expr::Scale(self.rng.gen_range(-2..=3), Box::new(self.expr(depth - 1))),
            _ => Expr::Adj(Box::new(self.expr(depth - 1))),
        }
    }

    /// A value-preserving rewrite: relation expansion, covariance, vertex
    /// padding, set splitting, reassociation and adjoint distribution.
    pub fn rewrite(&mut self, x: &Expr) -> Expr {
        let lg = self.lg;
        let g = &lg.graph;
        let fire = self.rng.gen_bool(0.5);
        let here = match x {
            Expr::Vertex(v) if fire && !g.is_sink(*v) => {
                let mut terms = g.out_edges(*v).iter().map(|&e| mul(Expr::Edge(e), Expr::EdgeStar(e)));
                let first = terms.next().expect("non-sink");
                return terms.fold(first, add);
            }
            Expr::Edge(e) if fire => {
                // chi_A s_e + s_e chi_{A^c - omega_e} = s_e
                let a = self.random_set();
                let back = a.complement().translate(&-lg.label(*e).clone());
                return match self.rng.gen_range(0..3) {
                    0 => add(mul(Expr::Chi(a), Expr::Edge(*e)), mul(Expr::Edge(*e), Expr::Chi(back))),
                    1 => mul(Expr::Vertex(g.source(*e)), Expr::Edge(*e)),
                    _ => mul(Expr::Edge(*e), Expr::Vertex(g.range(*e))),
                };
            }
            Expr::EdgeStar(e) if fire => {
                return if self.rng.gen_bool(0.5) {
                    mul(Expr::EdgeStar(*e), Expr::Vertex(g.source(*e)))
                } else {
                    Expr::Adj(Box::new(Expr::Edge(*e)))
                };
            }
            Expr::Chi(a) if fire => {
                let b = self.random_set();
                return add(Expr::Chi(a.intersection(&b)), Expr::Chi(a.difference(&b)));
            }
            Expr::Mul(a, b) if fire => match b.as_ref() {
                Expr::Mul(b1, b2) => Some(mul(mul((**a).clone(), (**b1).clone()), (**b2).clone())),
                _ => None,
            },
            Expr::Adj(a) if fire => match a.as_ref() {
                Expr::Mul(a1, a2) => Some(mul(Expr::Adj(a2.clone()), Expr::Adj(a1.clone()))),
                Expr::Add(a1, a2) => Some(add(Expr::Adj(a1.clone()), Expr::Adj(a2.clone()))),
                _ => None,
            },
            _ => None,
        };
        let x = here.unwrap_or_else(|| x.clone());
        match &x {
            Expr::Add(a, b) => add(self.rewrite(a), self.rewrite(b)),
            Expr::Sub(a, b) => Expr::Sub(Box::new(self.rewrite(a)), Box::new(self.rewrite(b))),
            Expr::Mul(a, b) => mul(self.rewrite(a), self.rewrite(b)),
            Expr::Scale(c, a) => Expr::Scale(*c, Box::new(self.rewrite(a))),
            Expr::Adj(a) => Expr::Adj(Box::new(self.rewrite(a))),
            leaf => leaf.clone(),
        }
    }

    /// `count` difference expressions; even indices are `x - rewrite(x)`
    /// (zero by construction), odd ones `x - y` for independent `x, y`.
    pub fn cases(&mut self, count: usize, depth: usize) -> Vec<(Expr, bool)> {
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let x = self.expr(depth);
            if i % 2 == 0 {
                let y = self.rewrite(&x);
                out.push((Expr::Sub(Box::new(x), Box::new(y)), true));
            } else {
                let y = self.expr(depth);
                out.push((Expr::Sub(Box::new(x), Box::new(y)), false));
            }
        }
        out.shuffle(&mut self.rng);
        out
    }
}

/// Outcome of comparing the symbolic zero test with the matrix oracle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub cases: usize,
    pub symbolic_zero: usize,
    pub rewrite_cases: usize,
    /// `is_zero` disagreed with matrix vanishing.
    pub zero_test_disagreements: usize,
    /// The matrix of the symbolic result differed from direct evaluation.
    pub representation_mismatches: usize,
    /// A rewrite case was not recognised as zero.
    pub rewrite_failures: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.zero_test_disagreements == 0 && self.representation_mismatches == 0 && self.rewrite_failures == 0
    }
}

/// Runs `count` randomized expressions through both evaluators.
pub fn cross_check(lg: &LabelledGraph, count: usize, seed: u64) -> Result<OracleReport, OracleError> {
    let rep = MatrixRep::new(lg)?;
    let alg = Algebra::new(lg);
    let mut gen = ExprGen::new(lg, seed);
    let mut report = OracleReport::default();
    for (expr, by_rewrite) in gen.cases(count, 3) {
        let sym = expr.symbolic(&alg);
        let direct = expr.matrix(&rep);
        let zero = alg.is_zero(&sym);
        report.cases += 1;
        report.symbolic_zero += usize::from(zero);
        report.rewrite_cases += usize::from(by_rewrite);
        if zero != direct.is_zero() {
            report.zero_test_disagreements += 1;
        }
        if rep.operator(&sym) != direct {
            report.representation_mismatches += 1;
        }
        if by_rewrite && !zero {
            report.rewrite_failures += 1;
        }
    }
    Ok(report)
}
