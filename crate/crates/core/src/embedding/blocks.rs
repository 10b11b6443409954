//! The projection `q`, the block projections `q_(v,tau)`, the finite sets
//! `E*(v)` and the matrix-unit images of the window generators.

use super::stage::{StageData, Window};
use super::EmbeddingError;
use crate::algebra::{Algebra, GammaSet, Operator};
use crate::graph::{Path, VertexId};
use crate::labelled::LabelledGraph;

/// `q = prod_{mu in E*_F} (1 - s_mu p s_mu^*) p`, factors in path order.
pub fn compute_q(alg: &Algebra, window: &Window, stage: &StageData) -> Operator {
    q_from_factors(alg, window, stage.estar_f.iter())
}

/// `q` with the first factor whose path lies in `F` left out. Used as a
/// negative control for the verification suite.
pub fn corrupted_q(alg: &Algebra, window: &Window, stage: &StageData) -> Operator {
    let skip = stage.estar_f.iter().position(|p| stage.in_f(p));
    q_from_factors(alg, window, stage.estar_f.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, p)| p))
}

fn q_from_factors<'p>(alg: &Algebra, window: &Window, paths: impl Iterator<Item = &'p Path>) -> Operator {
    let p = window.p(alg);
    let one = alg.one();
    let mut q = p.clone();
    for mu in paths {
        q = alg.mul(&(&one - &alg.sandwich(mu, &p)), &q);
    }
    q
}

/// A block label `(v, tau)`; `tau` is aligned with `StageData::tilde_estar_f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockIndex {
    pub v: VertexId,
    pub tau: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub index: BlockIndex,
    pub projection: Operator,
}

/// `S_tau = {x : x + omega_mu in atom tau(mu) for every mu}`, so that
/// `prod_mu sigma_{omega_mu}(p_{tau(mu)}) = chi_{S_tau}`.
pub fn tau_set(lg: &LabelledGraph, window: &Window, stage: &StageData, tau: &[usize]) -> GammaSet {
    stage
        .tilde_estar_f
        .iter()
        .zip(tau)
        .fold(GammaSet::whole(), |acc, (mu, &i)| acc.intersection(&window.atom(i).translate(&-lg.path_label(mu))))
}

/// `q_(v,tau) = q chi_{S_tau} p_v`.
pub fn block_projection(
    alg: &Algebra,
    window: &Window,
    stage: &StageData,
    q: &Operator,
    index: &BlockIndex,
) -> Operator {
    let s = tau_set(alg.lg, window, stage, &index.tau);
    alg.mul(&alg.mul(q, &alg.chi(&s)), &alg.vertex(index.v))
}

/// The map `tau_x(mu) = atom containing x + omega_mu`.
pub fn tau_of_point(
    lg: &LabelledGraph,
    window: &Window,
    stage: &StageData,
    x: &crate::group::GroupElement,
) -> Vec<usize> {
    stage.tilde_estar_f.iter().map(|mu| window.atom_of(&(x + &lg.path_label(mu)))).collect()
}

/// Nonzero block projections. Since `q <= p = chi_U` and the sets `S_tau`
/// partition the group, `q_(v,tau)` can only be nonzero for `tau = tau_x`
/// with `x` in `U`; at most `M` candidates per vertex are tested.
pub fn compute_k(alg: &Algebra, window: &Window, stage: &StageData, q: &Operator) -> Vec<Block> {
    let lg = alg.lg;
    let mut taus: Vec<Vec<usize>> = window.points.iter().map(|x| tau_of_point(lg, window, stage, x)).collect();
    taus.sort();
    taus.dedup();
    let mut out = Vec::new();
    for v in lg.graph.vertices() {
        for tau in &taus {
            let index = BlockIndex { v, tau: tau.clone() };
            let projection = block_projection(alg, window, stage, q, &index);
            if !alg.is_zero(&projection) {
                out.push(Block { index, projection });
            }
        }
    }
    out
}

/// Tests every `(v, tau)` in `E^0 x J`; `None` when `|J|` exceeds `limit`.
pub fn compute_k_exhaustive(
    alg: &Algebra,
    window: &Window,
    stage: &StageData,
    q: &Operator,
    limit: usize,
) -> Option<Vec<Block>> {
    let base = window.size() + 1;
    let len = stage.tilde_estar_f.len();
    let total = (0..len).try_fold(1usize, |acc, _| acc.checked_mul(base).filter(|&t| t <= limit))?;
    let mut out = Vec::new();
    for v in alg.lg.graph.vertices() {
        for code in 0..total {
            let mut c = code;
            let tau: Vec<usize> = (0..len)
                .map(|_| {
                    let d = c % base;
                    c /= base;
                    d
                })
                .collect();
            let index = BlockIndex { v, tau };
            let projection = block_projection(alg, window, stage, q, &index);
            if !alg.is_zero(&projection) {
                out.push(Block { index, projection });
            }
        }
    }
    out.sort_by(|a, b| a.index.cmp(&b.index));
    Some(out)
}

/// `E*(v)` and whether `p_v p = sum_{mu in E*(v)} s_mu q s_mu^* p` held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub v: VertexId,
    pub paths: Vec<Path>,
    /// The candidate superset before pruning.
    pub candidates: Vec<Path>,
    pub verified: bool,
}

pub fn compute_estar_v(alg: &Algebra, window: &Window, stage: &StageData, q: &Operator, v: VertexId) -> VertexCover {
    let g = &alg.lg.graph;
    let p = window.p(alg);
    let pv = alg.vertex(v);
    let candidates = match stage.depth_of(v) {
        None => vec![Path::vertex(v)],
        Some((_, j)) => g.enumerate_paths(v, stage.m - j),
    };
    let mut paths = Vec::new();
    let mut sum = Operator::zero();
    for mu in &candidates {
        let piece = alg.mul(&alg.sandwich(mu, q), &p);
        if alg.is_zero(&alg.mul(&piece, &pv)) {
            continue;
        }
        sum = &sum + &piece;
        paths.push(mu.clone());
    }
    let verified = alg.equal(&alg.mul(&pv, &p), &sum);
    VertexCover { v, paths, candidates, verified }
}

/// `s_alpha q_(block) s_beta^*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatrixUnit {
    pub block: usize,
    pub alpha: Path,
    pub beta: Path,
}

pub fn unit_operator(alg: &Algebra, blocks: &[Block], u: &MatrixUnit) -> Operator {
    alg.bracket(&u.alpha, &blocks[u.block].projection, &u.beta)
}

/// Matrix units whose sum is `s_mu p_i s_nu^*`: for `gamma` in `E*(r(mu))`,
/// the blocks at `r(gamma)` with `tau(gamma) = i` (or `tau(tilde v) = i` when
/// `gamma` is a vertex), each contributing `s_{mu gamma} q s_{nu gamma}^*`.
pub fn embed_generator(
    stage: &StageData,
    blocks: &[Block],
    covers: &[VertexCover],
    mu: &Path,
    i: usize,
    nu: &Path,
    lg: &LabelledGraph,
) -> Result<Vec<MatrixUnit>, EmbeddingError> {
    if mu.range != nu.range {
        return Err(EmbeddingError::BadGenerator("legs end at different vertices".into()));
    }
    let g = &lg.graph;
    let v = mu.range;
    let mut out = Vec::new();
    for gamma in &covers[v.0].paths {
        let slot = if gamma.is_vertex() {
            0
        } else {
            stage
                .tilde_estar_f
                .iter()
                .position(|p| p == gamma)
                .ok_or_else(|| EmbeddingError::Unverified(format!("{} lies outside E*_F", g.path_name(gamma))))?
        };
        for (b, block) in blocks.iter().enumerate() {
            if block.index.v == gamma.range && block.index.tau[slot] == i {
                out.push(MatrixUnit { block: b, alpha: g.concat(mu, gamma), beta: g.concat(nu, gamma) });
            }
        }
    }
    Ok(out)
}

pub fn reexpand(alg: &Algebra, blocks: &[Block], units: &[MatrixUnit]) -> Operator {
    units.iter().fold(Operator::zero(), |acc, u| &acc + &unit_operator(alg, blocks, u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

/// Lengths `0..=TRUNCATION` are reported for every block.
pub const TRUNCATION: usize = 4;

/// `|E^{*,v}|` and cumulative counts of paths into `v` by length.
pub fn block_dimension(lg: &LabelledGraph, v: VertexId) -> (Dimension, Vec<usize>) {
    let g = &lg.graph;
    let all = g.paths_ending_at(v, TRUNCATION);
    let truncated: Vec<usize> = (0..=TRUNCATION).map(|l| all.iter().filter(|p| p.len() <= l).count()).collect();
    let infinite = lg.decomposition.loop_edges.iter().any(|&e| g.leq(v, g.source(e)));
    let dim = if infinite {
        Dimension::Infinite
    } else {
        // Loop-free ancestry: every path into v is a tree path, shorter than |E^0|.
        Dimension::Finite(g.paths_ending_at(v, g.vertex_count()).len())
    };
    (dim, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::stage::{compute_f, compute_stage};
    use crate::group::GroupSpec;

    fn fix_b() -> LabelledGraph {
        LabelledGraph::build(GroupSpec::integers(), &["v"], &[("g", "v", "v", &[1])]).unwrap()
    }

    #[test]
    fn fix_b_stage_values() {
        let lg = fix_b();
        let alg = Algebra::new(&lg);
        let win = Window::from_i64s(&lg.group, &[&[0], &[1]]).unwrap();
        let stage = compute_stage(&lg, compute_f(&lg, &win).unwrap(), None);
        let q = compute_q(&alg, &win, &stage);
        assert!(alg.equal(&q, &alg.chi(&GammaSet::singleton(lg.group.zero()))));
        let k = compute_k(&alg, &win, &stage, &q);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].index.tau, vec![1, 2]);
        assert_eq!(compute_k_exhaustive(&alg, &win, &stage, &q, 4096).unwrap(), k);

        let cover = compute_estar_v(&alg, &win, &stage, &q, lg.vertex("v"));
        assert!(cover.verified);
        assert_eq!(cover.paths, vec![lg.path("v"), lg.path("g")]);

        let covers = [cover];
        let v = lg.path("v");
        let e1 = embed_generator(&stage, &k, &covers, &v, 1, &v, &lg).unwrap();
        assert_eq!(e1, vec![MatrixUnit { block: 0, alpha: v.clone(), beta: v.clone() }]);
        let e2 = embed_generator(&stage, &k, &covers, &v, 2, &v, &lg).unwrap();
        assert_eq!(e2, vec![MatrixUnit { block: 0, alpha: lg.path("g"), beta: lg.path("g") }]);
        let p2 = alg.chi(&GammaSet::singleton(lg.group.from_i64s(&[1]).unwrap()));
        assert!(alg.equal(&reexpand(&alg, &k, &e2), &p2));

        let (dim, counts) = block_dimension(&lg, lg.vertex("v"));
        assert_eq!(dim, Dimension::Infinite);
        assert_eq!(counts, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn empty_f_single_sink() {
        let lg = LabelledGraph::build(GroupSpec::integers(), &["v"], &[]).unwrap();
        let alg = Algebra::new(&lg);
        let win = Window::from_i64s(&lg.group, &[&[0]]).unwrap();
        let stage = compute_stage(&lg, compute_f(&lg, &win).unwrap(), None);
        let q = compute_q(&alg, &win, &stage);
        assert!(alg.equal(&q, &win.p(&alg)));
        let k = compute_k(&alg, &win, &stage, &q);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].index.tau, vec![1]);
        assert_eq!(block_dimension(&lg, lg.vertex("v")), (Dimension::Finite(1), vec![1; 5]));
    }

    #[test]
    fn corruption_drops_a_factor_in_f() {
        let lg = fix_b();
        let alg = Algebra::new(&lg);
        let win = Window::from_i64s(&lg.group, &[&[0], &[1]]).unwrap();
        let stage = compute_stage(&lg, compute_f(&lg, &win).unwrap(), None);
        assert!(alg.equal(&corrupted_q(&alg, &win, &stage), &win.p(&alg)));
    }
}
