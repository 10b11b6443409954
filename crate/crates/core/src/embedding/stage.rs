//! The finite window, the set `F` of paths whose label lies in `U - U`, and
//! the combinatorial data `W`, `V`, `m`, `V(v, j)` and `E*_F` built from it.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::EmbeddingError;
use crate::algebra::{Algebra, GammaSet, Operator};
use crate::graph::{EdgeId, Path, VertexId};
use crate::group::{minkowski_diff, GroupElement, GroupSpec};
use crate::labelled::LabelledGraph;
use crate::properness::{zero_sum_certificate, ZeroSumCertificate};

/// One stage: finitely many distinct points, each an atom `p_i = chi_{{x_i}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub points: Vec<GroupElement>,
    pub u: GammaSet,
}

impl Window {
    pub fn new(group: &GroupSpec, points: Vec<GroupElement>) -> Result<Self, EmbeddingError> {
        if points.is_empty() {
            return Err(EmbeddingError::EmptyWindow);
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !group.contains(p) {
                return Err(EmbeddingError::WindowShape(p.to_string()));
            }
            if !seen.insert(p.clone()) {
                return Err(EmbeddingError::DuplicateWindowPoint(p.to_string()));
            }
        }
        Ok(Window { u: GammaSet::finite(points.iter().cloned()), points })
    }

    pub fn from_i64s(group: &GroupSpec, points: &[&[i64]]) -> Result<Self, EmbeddingError> {
        let pts = points
            .iter()
            .map(|c| group.from_i64s(c).map_err(|e| EmbeddingError::WindowShape(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Window::new(group, pts)
    }

    /// `M`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Atom `i` for `1 <= i <= M`; atom `0` is the complement of `U`.
    pub fn atom(&self, i: usize) -> GammaSet {
        if i == 0 {
            self.u.complement()
        } else {
            GammaSet::singleton(self.points[i - 1].clone())
        }
    }

    /// Index of the atom containing `x`.
    pub fn atom_of(&self, x: &GroupElement) -> usize {
        self.points.iter().position(|p| p == x).map_or(0, |i| i + 1)
    }

    /// `U - U`.
    pub fn differences(&self) -> BTreeSet<GroupElement> {
        minkowski_diff(&self.points)
    }

    /// `p = chi_U` as an operator.
    pub fn p(&self, alg: &Algebra) -> Operator {
        alg.chi(&self.u)
    }
}

/// Loops attached at each position of a tree path.
fn loops_by_position(lg: &LabelledGraph, tree_path: &Path) -> Vec<Vec<EdgeId>> {
    lg.decomposition
        .path_vertices(&lg.graph, tree_path)
        .into_iter()
        .map(|v| lg.decomposition.loops_at(v).to_vec())
        .collect()
}

/// All vectors of `k` non-negative integers with sum at most `bound`.
fn multiplicities(k: usize, bound: u64) -> Vec<Vec<u64>> {
    fn go(k: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for n in 0..=left {
            cur.push(n);
            go(k, left - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, bound, &mut Vec::new(), &mut out);
    out
}

/// Every word using loop `loops[i]` exactly `counts[i]` times.
fn words(loops: &[EdgeId], counts: &mut [u64]) -> Vec<Vec<EdgeId>> {
    if counts.iter().all(|&c| c == 0) {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..loops.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        for mut w in words(loops, counts) {
            w.insert(0, loops[i]);
            out.push(w);
        }
        counts[i] += 1;
    }
    out
}

/// The paths of length at least one whose label lies in `U - U`.
///
/// Every path is a tree path with loops interleaved at its vertices. For one
/// tree path `mu0` with loop labels `c_i`, a strictly separating functional
/// `y` bounds the total loop count by `max_{d in U-U} y.d - y.omega(mu0)`,
/// since each `y.c_i` is a positive integer.
pub fn compute_f(lg: &LabelledGraph, window: &Window) -> Result<Vec<Path>, EmbeddingError> {
    let g = &lg.graph;
    let diffs = window.differences();
    let mut out = BTreeSet::new();
    for v in g.vertices() {
        for mu0 in lg.decomposition.tree_paths_from(g, v) {
            let base = lg.path_label(&mu0);
            let slots = loops_by_position(lg, &mu0);
            let loops: Vec<EdgeId> = slots.iter().flatten().copied().collect();
            let bound = if loops.is_empty() {
                0
            } else {
                let labels: Vec<GroupElement> = loops.iter().map(|&e| lg.label(e).clone()).collect();
                let cert = zero_sum_certificate(&lg.group, &labels).expect("nonempty");
                let ZeroSumCertificate::Dual { functional } = cert else {
                    return Err(EmbeddingError::NotAlmostProper);
                };
                let top = diffs.iter().map(|d| d.pair_free(&functional)).max().expect("window nonempty");
                let b: BigInt = top - base.pair_free(&functional);
                if b < BigInt::from(0) {
                    continue;
                }
                u64::try_from(b).map_err(|_| EmbeddingError::SearchTooLarge)?
            };
            for n in multiplicities(loops.len(), bound) {
                let total = loops.iter().zip(&n).fold(base.clone(), |acc, (&e, &k)| &acc + &lg.label(e).times_u64(k));
                if !diffs.contains(&total) {
                    continue;
                }
                if mu0.is_vertex() && n.iter().all(|&k| k == 0) {
                    continue;
                }
                // Split the multiplicity vector back into positions.
                let mut offset = 0;
                let mut per_slot: Vec<Vec<Vec<EdgeId>>> = Vec::new();
                for slot in &slots {
                    let mut counts = n[offset..offset + slot.len()].to_vec();
                    offset += slot.len();
                    per_slot.push(words(slot, &mut counts));
                }
                let mut partial: Vec<Vec<EdgeId>> = vec![Vec::new()];
                for (pos, choices) in per_slot.iter().enumerate() {
                    let mut next = Vec::new();
                    for pre in &partial {
                        for w in choices {
                            let mut p = pre.clone();
                            p.extend_from_slice(w);
                            if pos < mu0.len() {
                                p.push(mu0.edges[pos]);
                            }
                            next.push(p);
                        }
                    }
                    partial = next;
                }
                for edges in partial {
                    out.insert(g.path(v, &edges).expect("interleaving composes"));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Stage data derived from `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageData {
    pub f: Vec<Path>,
    /// Sources of paths in `F`.
    pub w: Vec<VertexId>,
    /// Maximal elements of `W` under the tree order.
    pub v: Vec<VertexId>,
    pub m: usize,
    /// `(v, j, V(v, j))` for `v` in `V`, `0 <= j <= m - 1`.
    pub levels: Vec<(VertexId, usize, Vec<VertexId>)>,
    pub estar_f: Vec<Path>,
    pub tilde_v: VertexId,
    /// `E*_F` with the length-zero path at `tilde_v` first.
    pub tilde_estar_f: Vec<Path>,
}

impl StageData {
    /// `(w, j)` when `u` lies in `V(w, j)` for some `j <= m - 1`.
    pub fn depth_of(&self, u: VertexId) -> Option<(VertexId, usize)> {
        self.levels.iter().find(|(_, _, vs)| vs.contains(&u)).map(|(w, j, _)| (*w, *j))
    }

    pub fn in_estar_f(&self, p: &Path) -> bool {
        self.estar_f.binary_search(p).is_ok()
    }

    pub fn in_f(&self, p: &Path) -> bool {
        self.f.binary_search(p).is_ok()
    }
}

pub fn compute_stage(lg: &LabelledGraph, f: Vec<Path>, tilde_v: Option<VertexId>) -> StageData {
    let g = &lg.graph;
    let t = &lg.decomposition;
    let w: Vec<VertexId> = f.iter().map(|p| p.source).collect::<BTreeSet<_>>().into_iter().collect();
    let v: Vec<VertexId> = w.iter().copied().filter(|&x| !w.iter().any(|&y| y != x && t.leq_tree(g, x, y))).collect();
    let longest_f = f.iter().map(Path::len).max().unwrap_or(0);
    let reach =
        v.iter().flat_map(|&a| w.iter().filter_map(move |&b| t.tree_path(g, a, b))).map(|p| p.len()).max().unwrap_or(0);
    let m = longest_f + reach;
    let mut levels = Vec::new();
    let mut estar = BTreeSet::new();
    for &root in &v {
        for j in 0..m {
            let vs = t.tree_level(g, root, j);
            for &u in &vs {
                for p in g.enumerate_paths(u, m - j) {
                    if !p.is_vertex() {
                        estar.insert(p);
                    }
                }
            }
            levels.push((root, j, vs));
        }
    }
    let estar_f: Vec<Path> = estar.into_iter().collect();
    let tilde_v = tilde_v.unwrap_or(VertexId(0));
    let mut tilde_estar_f = vec![Path::vertex(tilde_v)];
    tilde_estar_f.extend(estar_f.iter().cloned());
    StageData { f, w, v, m, levels, estar_f, tilde_v, tilde_estar_f }
}
