//! Finite combinations of terms `s_mu f s_nu^*` and their exact calculus.
//!
//! A term is keyed by `(mu, nu)` with `r(mu) = r(nu)`; its coefficient is a
//! [`GammaFunction`]. Multiplication uses `s_e^* s_f = delta_{e,f} p_{r(e)}`
//! together with the covariance rule `f s_mu = s_mu sigma_{omega_mu}(f)`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};
use thiserror::Error;

use super::gamma::{GammaFunction, GammaSet, Rational};
use crate::graph::{EdgeId, Path, VertexId};
use crate::group::GroupElement;
use crate::labelled::LabelledGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("normal form level {level} is below the longest leg {needed}")]
    LevelTooSmall { level: usize, needed: usize },
    #[error("legs do not share a range")]
    RangeMismatch,
}

/// A finite sum of terms. Zero coefficients are never stored, but equal
/// operators may still have different representations until normalised.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Operator {
    terms: BTreeMap<(Path, Path), GammaFunction>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &GammaFunction)> {
        self.terms.iter().map(|((m, n), f)| (m, n, f))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest leg over all terms.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|(m, n)| m.len().max(n.len())).max().unwrap_or(0)
    }

    fn insert(&mut self, mu: Path, nu: Path, f: GammaFunction) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((mu, nu)) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&f);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Operator::zero();
        for ((m, n), f) in &self.terms {
            out.insert(m.clone(), n.clone(), f.scale(c));
        }
        out
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        for ((m, n), f) in &rhs.terms {
            out.insert(m.clone(), n.clone(), f.clone());
        }
        out
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&-Rational::one())
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        -&self
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self + &(-rhs)
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

/// Operations that need the labelled graph.
#[derive(Clone, Debug)]
pub struct Algebra<'a> {
    pub lg: &'a LabelledGraph,
    elements: Option<Vec<GroupElement>>,
}

impl<'a> Algebra<'a> {
    pub fn new(lg: &'a LabelledGraph) -> Self {
        Algebra { lg, elements: lg.group.elements() }
    }

    fn label(&self, p: &Path) -> GroupElement {
        self.lg.path_label(p)
    }

    fn canonical(&self, f: GammaFunction) -> GammaFunction {
        match &self.elements {
            Some(all) => f.normalize_over(all),
            None => f,
        }
    }

    /// `s_mu f s_nu^*`.
    pub fn term(&self, mu: &Path, f: GammaFunction, nu: &Path) -> Result<Operator, AlgebraError> {
        if mu.range != nu.range {
            return Err(AlgebraError::RangeMismatch);
        }
        let mut out = Operator::zero();
        out.insert(mu.clone(), nu.clone(), self.canonical(f));
        Ok(out)
    }

    /// `s_mu chi_A s_nu^*`.
    pub fn chi_term(&self, mu: &Path, set: &GammaSet, nu: &Path) -> Result<Operator, AlgebraError> {
        self.term(mu, GammaFunction::indicator(set, Rational::one()), nu)
    }

    /// `p_v`.
    pub fn vertex(&self, v: VertexId) -> Operator {
        let p = Path::vertex(v);
        self.term(&p, GammaFunction::one(), &p).expect("vertex term")
    }

    /// `s_mu = s_mu p_{r(mu)}`.
    pub fn path(&self, mu: &Path) -> Operator {
        self.term(mu, GammaFunction::one(), &Path::vertex(mu.range)).expect("path term")
    }

    pub fn path_star(&self, mu: &Path) -> Operator {
        self.adjoint(&self.path(mu))
    }

    pub fn edge(&self, e: EdgeId) -> Operator {
        let g = &self.lg.graph;
        self.path(&g.path(g.source(e), &[e]).expect("single edge"))
    }

    /// `1 = sum_v p_v`.
    pub fn one(&self) -> Operator {
        self.function(&GammaFunction::one())
    }

    /// A multiplication operator `f = sum_v f p_v`.
    pub fn function(&self, f: &GammaFunction) -> Operator {
        let mut out = Operator::zero();
        for v in self.lg.graph.vertices() {
            let p = Path::vertex(v);
            out.insert(p.clone(), p, self.canonical(f.clone()));
        }
        out
    }

    pub fn chi(&self, set: &GammaSet) -> Operator {
        self.function(&GammaFunction::indicator(set, Rational::one()))
    }

    pub fn scalar(&self, c: Rational) -> Operator {
        self.function(&GammaFunction::constant(c))
    }

    fn mul_terms(
        &self,
        (m1, f, n1): (&Path, &GammaFunction, &Path),
        (m2, g, n2): (&Path, &GammaFunction, &Path),
    ) -> Option<(Path, GammaFunction, Path)> {
        let graph = &self.lg.graph;
        if let Some(delta) = m2.strip_prefix(n1) {
            // s_{nu1}^* s_{nu1 delta} = s_delta, then move f right past s_delta.
            let h = f.shift(&self.label(&delta)).mul(g);
            return Some((graph.concat(m1, &delta), h, n2.clone()));
        }
        if let Some(delta) = n1.strip_prefix(m2) {
            // s_delta^* g = sigma_{omega_delta}(g) s_delta^*.
            let h = f.mul(&g.shift(&self.label(&delta)));
            return Some((m1.clone(), h, graph.concat(n2, &delta)));
        }
        None
    }

    pub fn mul(&self, x: &Operator, y: &Operator) -> Operator {
        let mut out = Operator::zero();
        for ((m1, n1), f) in &x.terms {
            for ((m2, n2), g) in &y.terms {
                if let Some((m, h, n)) = self.mul_terms((m1, f, n1), (m2, g, n2)) {
                    out.insert(m, n, self.canonical(h));
                }
            }
        }
        out
    }

    /// Left-to-right product; the empty product is `1`.
    pub fn product<'b, I: IntoIterator<Item = &'b Operator>>(&self, factors: I) -> Operator {
        let mut it = factors.into_iter();
        let Some(first) = it.next() else {
            return self.one();
        };
        it.fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    /// Swaps the legs; coefficients are real so no conjugation is needed.
    pub fn adjoint(&self, x: &Operator) -> Operator {
        let mut out = Operator::zero();
        for ((m, n), f) in &x.terms {
            out.insert(n.clone(), m.clone(), f.clone());
        }
        out
    }

    /// Pointwise function action `x -> f x` for a multiplier `f`, shortcut for
    /// `mul(function(f), x)`.
    pub fn left_function(&self, f: &GammaFunction, x: &Operator) -> Operator {
        let mut out = Operator::zero();
        for ((m, n), g) in &x.terms {
            out.insert(m.clone(), n.clone(), self.canonical(f.shift(&self.label(m)).mul(g)));
        }
        out
    }

    /// `s_mu x s_mu^*`.
    pub fn sandwich(&self, mu: &Path, x: &Operator) -> Operator {
        self.bracket(mu, x, mu)
    }

    /// `s_alpha x s_beta^*`.
    pub fn bracket(&self, alpha: &Path, x: &Operator, beta: &Path) -> Operator {
        let g = &self.lg.graph;
        let mut out = Operator::zero();
        for ((a, b), f) in &x.terms {
            if a.source == alpha.range && b.source == beta.range {
                out.insert(g.concat(alpha, a), g.concat(beta, b), f.clone());
            }
        }
        out
    }

    /// `rho_{vk}(x) = sum_{mu in E^k_v} s_mu x s_mu^*`.
    pub fn rho(&self, v: VertexId, k: usize, x: &Operator) -> Operator {
        self.lg.graph.paths_of_length(v, k).iter().fold(Operator::zero(), |acc, mu| &acc + &self.sandwich(mu, x))
    }

    /// `E^{kl}_v`: length-`k` paths from `v` whose first `l` edges are 1-loops
    /// and whose `(l+1)`-th edge (if any) is not.
    pub fn paths_kl(&self, v: VertexId, k: usize, l: usize) -> Vec<Path> {
        self.lg
            .graph
            .paths_of_length(v, k)
            .into_iter()
            .filter(|p| {
                p.edges.iter().take(l).all(|&e| self.lg.is_loop(e))
                    && p.edges.get(l).is_none_or(|&e| !self.lg.is_loop(e))
            })
            .collect()
    }

    pub fn rho_l(&self, v: VertexId, k: usize, l: usize, x: &Operator) -> Operator {
        self.paths_kl(v, k, l).iter().fold(Operator::zero(), |acc, mu| &acc + &self.sandwich(mu, x))
    }

    /// Expands every term along `p_v = sum_{s(e)=v} s_e s_e^*` until its longer
    /// leg has length `level` or its range is a sink, then merges.
    pub fn normal_form(&self, x: &Operator, level: usize) -> Result<Operator, AlgebraError> {
        let needed = x.max_len();
        if level < needed {
            return Err(AlgebraError::LevelTooSmall { level, needed });
        }
        let g = &self.lg.graph;
        let mut raw: BTreeMap<(Path, Path), GammaFunction> = BTreeMap::new();
        let mut stack: Vec<(Path, GammaFunction, Path)> =
            x.terms.iter().map(|((m, n), f)| (m.clone(), f.clone(), n.clone())).collect();
        while let Some((m, f, n)) = stack.pop() {
            let depth = m.len().max(n.len());
            if depth == level || g.is_sink(m.range) {
                match raw.entry((m, n)) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(f);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&f);
                        *o.get_mut() = s;
                    }
                }
                continue;
            }
            for &e in g.out_edges(m.range) {
                stack.push((g.extend(&m, e), f.shift(self.lg.label(e)), g.extend(&n, e)));
            }
        }
        let mut out = Operator::zero();
        for ((m, n), f) in raw {
            out.insert(m, n, self.canonical(f));
        }
        Ok(out)
    }

    /// Normal form at the smallest admissible level.
    pub fn canonical_form(&self, x: &Operator) -> Operator {
        self.normal_form(x, x.max_len()).expect("level is the maximum")
    }

    pub fn is_zero(&self, x: &Operator) -> bool {
        self.canonical_form(x).is_empty()
    }

    pub fn equal(&self, x: &Operator, y: &Operator) -> bool {
        self.is_zero(&(x - y))
    }

    /// Contracts complete child families `sum_{s(e)=r(mu)} s_{mu e}
    /// sigma_{omega_e}(f) s_{nu e}^*` back to `s_mu f s_nu^*` for display.
    pub fn compact(&self, x: &Operator) -> Operator {
        let g = &self.lg.graph;
        let mut cur = self.canonical_form(x);
        loop {
            let mut merged = false;
            let keys: Vec<(Path, Path)> = cur.terms.keys().cloned().collect();
            for (m, n) in keys {
                if !cur.terms.contains_key(&(m.clone(), n.clone())) {
                    continue;
                }
                let (Some(&e), Some(&e2)) = (m.edges.last(), n.edges.last()) else {
                    continue;
                };
                if e != e2 {
                    continue;
                }
                let pm = g.path(m.source, &m.edges[..m.len() - 1]).expect("prefix");
                let pn = g.path(n.source, &n.edges[..n.len() - 1]).expect("prefix");
                let f = &cur.terms[&(m.clone(), n.clone())];
                let base = f.shift(&-self.lg.label(e).clone());
                let children: Vec<(Path, Path)> =
                    g.out_edges(pm.range).iter().map(|&c| (g.extend(&pm, c), g.extend(&pn, c))).collect();
                let complete = children.iter().zip(g.out_edges(pm.range)).all(|(k, &c)| {
                    cur.terms.get(k).is_some_and(|h| self.canonical(base.shift(self.lg.label(c))) == *h)
                });
                if complete {
                    for k in &children {
                        cur.terms.remove(k);
                    }
                    cur.insert(pm, pn, self.canonical(base));
                    merged = true;
                }
            }
            if !merged {
                return cur;
            }
        }
    }

    /// Term-list text form `c * s[mu] * chi{...} * s[nu]^*`, one entry per
    /// level set of each coefficient.
    pub fn format(&self, x: &Operator) -> String {
        let g = &self.lg.graph;
        let mut parts: Vec<(bool, String)> = Vec::new();
        for ((m, n), f) in &x.terms {
            for (c, set) in f.level_sets() {
                let neg = c.is_negative();
                let a = c.abs();
                let coef = if a.is_one() { String::new() } else { format!("{a} * ") };
                parts.push((neg, format!("{coef}s[{}] * {set} * s[{}]^*", g.path_name(m), g.path_name(n))));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&s);
        }
        out
    }

    /// Compact display form.
    pub fn display(&self, x: &Operator) -> String {
        self.format(&self.compact(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn z(v: i64) -> GroupElement {
        GroupSpec::integers().from_i64s(&[v]).unwrap()
    }

    fn set(vs: &[i64]) -> GammaSet {
        GammaSet::finite(vs.iter().map(|&v| z(v)))
    }

    fn fix_b() -> LabelledGraph {
        LabelledGraph::build(GroupSpec::integers(), &["v"], &[("g", "v", "v", &[1])]).unwrap()
    }

    fn fix_a() -> LabelledGraph {
        LabelledGraph::build(
            GroupSpec::integers(),
            &["v1", "v2"],
            &[("e", "v1", "v2", &[2]), ("g1", "v2", "v2", &[1]), ("g2", "v2", "v2", &[1])],
        )
        .unwrap()
    }

    #[test]
    fn orthogonal_vertices() {
        let lg = fix_a();
        let a = Algebra::new(&lg);
        let (v1, v2) = (a.vertex(lg.vertex("v1")), a.vertex(lg.vertex("v2")));
        assert!(a.mul(&v1, &v2).is_empty());
        assert!(a.equal(&a.mul(&v1, &v1), &v1));
        assert!(!a.equal(&v1, &v2));
    }

    #[test]
    fn product_examples() {
        let lg = fix_b();
        let a = Algebra::new(&lg);
        let (g, v) = (lg.path("g"), lg.path("v"));
        let u = set(&[0, 1]);
        let x = a.chi_term(&g, &GammaSet::whole(), &v).unwrap();
        let y = a.chi_term(&v, &u, &v).unwrap();
        assert_eq!(a.mul(&x, &y), a.chi_term(&g, &u, &v).unwrap());
        // chi_U s_g = s_g chi_{U - 1}
        let lhs = a.mul(&a.chi(&u), &a.path(&g));
        assert_eq!(lhs, a.chi_term(&g, &set(&[-1, 0]), &v).unwrap());
    }

    #[test]
    fn adjoint_swaps_legs() {
        let lg = fix_b();
        let a = Algebra::new(&lg);
        let (g, v) = (lg.path("g"), lg.path("v"));
        let u = set(&[0, 1]);
        let x = a.chi_term(&g, &u, &v).unwrap();
        assert_eq!(a.adjoint(&x), a.chi_term(&v, &u, &g).unwrap());
        assert_eq!(a.adjoint(&a.adjoint(&x)), x);
        let pv = a.vertex(lg.vertex("v"));
        assert_eq!(a.adjoint(&pv), pv);
    }

    #[test]
    fn expansion_relation() {
        let lg = fix_a();
        let a = Algebra::new(&lg);
        let v2 = lg.vertex("v2");
        let pv = a.vertex(v2);
        let nf = a.normal_form(&pv, 1).unwrap();
        let expected = &a.chi_term(&lg.path("g1"), &GammaSet::whole(), &lg.path("g1")).unwrap()
            + &a.chi_term(&lg.path("g2"), &GammaSet::whole(), &lg.path("g2")).unwrap();
        assert_eq!(nf, expected);
        let sum = lg
            .graph
            .out_edges(v2)
            .iter()
            .fold(Operator::zero(), |acc, &e| &acc + &a.mul(&a.edge(e), &a.adjoint(&a.edge(e))));
        assert!(a.is_zero(&(&pv - &sum)));
        assert!(matches!(a.normal_form(&sum, 0), Err(AlgebraError::LevelTooSmall { .. })));
    }

    #[test]
    fn sinks_do_not_expand() {
        let lg = LabelledGraph::build(GroupSpec::integers(), &["a", "b"], &[("e", "a", "b", &[1])]).unwrap();
        let a = Algebra::new(&lg);
        let pb = a.vertex(lg.vertex("b"));
        assert_eq!(a.normal_form(&pb, 4).unwrap(), pb);
        let pa = a.vertex(lg.vertex("a"));
        assert_eq!(a.normal_form(&pa, 3).unwrap().len(), 1);
    }

    #[test]
    fn covariance_zero_test() {
        let lg = fix_b();
        let a = Algebra::new(&lg);
        let g = lg.path("g");
        let u = set(&[0, 1]);
        // s_g chi_U s_g^* = chi_{U + 1} s_g s_g^*
        let lhs = a.chi_term(&g, &u, &g).unwrap();
        let rhs = a.mul(&a.chi(&set(&[1, 2])), &a.mul(&a.path(&g), &a.path_star(&g)));
        assert!(a.equal(&lhs, &rhs));
        assert!(!a.equal(&lhs, &a.chi_term(&g, &set(&[1, 2]), &g).unwrap()));
    }

    #[test]
    fn rho_examples() {
        let lg = fix_b();
        let a = Algebra::new(&lg);
        let v = lg.vertex("v");
        let p = a.chi(&set(&[0, 1]));
        let r = a.rho(v, 1, &p);
        let expected = a.mul(&a.chi(&set(&[1, 2])), &a.vertex(v));
        assert!(a.equal(&r, &expected));
        assert!(a.equal(&a.rho_l(v, 1, 1, &p), &r));
        assert!(a.rho_l(v, 1, 0, &p).is_empty());

        let sink = LabelledGraph::build(GroupSpec::integers(), &["s"], &[]).unwrap();
        let b = Algebra::new(&sink);
        assert!(b.rho(sink.vertex("s"), 1, &b.chi(&set(&[0]))).is_empty());
    }

    #[test]
    fn display_forms() {
        let lg = fix_b();
        let a = Algebra::new(&lg);
        let (g, v) = (lg.path("g"), lg.path("v"));
        let p = a.chi(&set(&[0, 1]));
        let q = a.mul(&(&a.one() - &a.sandwich(&g, &p)), &p);
        assert_eq!(a.display(&q), "s[v] * chi{[0]} * s[v]^*");
        assert_eq!(a.format(&Operator::zero()), "0");
        let x = &a.chi_term(&g, &GammaSet::whole(), &v).unwrap()
            - &a.chi_term(&g, &set(&[3]), &v).unwrap().scale(&Rational::from_integer(2.into()));
        assert_eq!(a.format(&x), "s[g] * chi{G\\[3]} * s[v]^* - s[g] * chi{[3]} * s[v]^*");
    }
}
