//! Deciding almost-properness of a labelling on a tree-plus-loops graph.
//!
//! On this graph class a labelling is almost proper exactly when no nonempty
//! multiset of 1-loops attached along one tree path has labels summing to
//! zero. Each loop family gets a certificate: a zero-sum multiset (primal) or
//! an integer functional strictly positive on every loop label (dual). The
//! two are mutually exclusive by Gordan's alternative once torsion is
//! cleared by multiplying through by the torsion order.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Path, VertexId};
use crate::group::{is_positive, GroupElement, GroupSpec};
use crate::labelled::LabelledGraph;
use crate::lp::{feasible_point, primitive_integer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropernessError {
    #[error("zero-sum search needs at least one label")]
    EmptyFamily,
    #[error("graph is not a single vertex carrying only 1-loops")]
    NotCuntzShape,
}

/// Upper bound on how many multiplicity vectors the minimality search visits
/// before settling for the linear-programming witness.
const SEARCH_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSumCertificate {
    /// `sum n_i c_i = 0` with `n_i >= 0` not all zero.
    Primal { multiplicities: Vec<BigUint> },
    /// `y . free(c_i) > 0` for every label.
    Dual { functional: Vec<BigInt> },
}

impl ZeroSumCertificate {
    pub fn is_primal(&self) -> bool {
        matches!(self, ZeroSumCertificate::Primal { .. })
    }

    /// Exact check of the certificate against the labels it was issued for.
    pub fn verify(&self, group: &GroupSpec, labels: &[GroupElement]) -> bool {
        match self {
            ZeroSumCertificate::Primal { multiplicities } => {
                if multiplicities.len() != labels.len() || multiplicities.iter().all(Zero::is_zero) {
                    return false;
                }
                let total = labels.iter().zip(multiplicities).fold(group.zero(), |acc, (c, n)| &acc + &c.times(n));
                total.is_zero()
            }
            ZeroSumCertificate::Dual { functional } => {
                functional.len() == group.free_rank && labels.iter().all(|c| is_positive(&c.pair_free(functional)))
            }
        }
    }

    pub fn total_multiplicity(&self) -> Option<BigUint> {
        match self {
            ZeroSumCertificate::Primal { multiplicities } => Some(multiplicities.iter().sum()),
            ZeroSumCertificate::Dual { .. } => None,
        }
    }
}

fn free_matrix(group: &GroupSpec, labels: &[GroupElement]) -> Vec<Vec<BigRational>> {
    (0..group.free_rank)
        .map(|j| labels.iter().map(|c| BigRational::from_integer(c.free[j].clone())).collect())
        .collect()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Clears the torsion part of a candidate whose free part already vanishes.
fn clear_torsion(labels: &[GroupElement], mut n: Vec<BigUint>, group: &GroupSpec) -> Vec<BigUint> {
    let total = labels.iter().zip(&n).fold(group.zero(), |acc, (c, k)| &acc + &c.times(k));
    let order = total.order().expect("free part cancels");
    if order > 1 {
        for k in n.iter_mut() {
            *k *= order;
        }
    }
    n
}

/// Rational Gordan alternative on the free parts. Returns a primal seed
/// (already torsion-cleared) or a strictly separating functional.
fn gordan(group: &GroupSpec, labels: &[GroupElement]) -> ZeroSumCertificate {
    let k = labels.len();
    let d = group.free_rank;
    // Primal: F x = 0, sum x = 1, x >= 0.
    let mut a = free_matrix(group, labels);
    a.push(vec![q(1); k]);
    let mut b = vec![q(0); d];
    b.push(q(1));
    if let Some(x) = feasible_point(&a, &b) {
        let n: Vec<BigUint> =
            primitive_integer(&x).into_iter().map(|v| v.to_biguint().expect("non-negative")).collect();
        return ZeroSumCertificate::Primal { multiplicities: clear_torsion(labels, n, group) };
    }
    // Dual: F^T (y+ - y-) - s = 1, all variables non-negative.
    let a: Vec<Vec<BigRational>> = labels
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = Vec::with_capacity(2 * d + k);
            row.extend(c.free.iter().map(|x| BigRational::from_integer(x.clone())));
            row.extend(c.free.iter().map(|x| BigRational::from_integer(-x)));
            row.extend((0..k).map(|j| if i == j { q(-1) } else { q(0) }));
            row
        })
        .collect();
    let x = feasible_point(&a, &vec![q(1); k]).expect("Gordan alternative: one side is feasible");
    let y: Vec<BigRational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();
    ZeroSumCertificate::Dual { functional: primitive_integer(&y) }
}

/// Smallest-total zero-sum multiset below `limit`, searched by increasing
/// total and lexicographically within a total.
fn minimal_primal(group: &GroupSpec, labels: &[GroupElement], limit: u64) -> Option<Vec<BigUint>> {
    fn rec(
        labels: &[GroupElement],
        idx: usize,
        left: u64,
        acc: &GroupElement,
        cur: &mut Vec<u64>,
        budget: &mut usize,
    ) -> Option<bool> {
        if *budget == 0 {
            return None;
        }
        if idx + 1 == labels.len() {
            *budget -= 1;
            cur[idx] = left;
            let total = acc + &labels[idx].times_u64(left);
            return Some(total.is_zero());
        }
        let mut acc_here = acc.clone();
        for n in 0..=left {
            cur[idx] = n;
            if rec(labels, idx + 1, left - n, &acc_here, cur, budget)? {
                return Some(true);
            }
            acc_here = &acc_here + &labels[idx];
        }
        Some(false)
    }
    let mut budget = SEARCH_BUDGET;
    let mut cur = vec![0u64; labels.len()];
    for total in 1..=limit {
        match rec(labels, 0, total, &group.zero(), &mut cur, &mut budget) {
            Some(true) => return Some(cur.iter().map(|&n| BigUint::from(n)).collect()),
            Some(false) => {}
            None => return None,
        }
    }
    None
}

/// Decides whether some nonempty non-negative integer combination of the
/// labels vanishes, and returns the matching certificate.
pub fn zero_sum_certificate(group: &GroupSpec, labels: &[GroupElement]) -> Result<ZeroSumCertificate, PropernessError> {
    if labels.is_empty() {
        return Err(PropernessError::EmptyFamily);
    }
    let seed = match labels.iter().position(GroupElement::is_torsion) {
        Some(i) => {
            let mut n = vec![BigUint::zero(); labels.len()];
            n[i] = BigUint::from(labels[i].order().expect("torsion"));
            ZeroSumCertificate::Primal { multiplicities: n }
        }
        None => gordan(group, labels),
    };
    let ZeroSumCertificate::Primal { multiplicities } = &seed else {
        return Ok(seed);
    };
    let seed_total: BigUint = multiplicities.iter().sum();
    if let Some(limit) = seed_total.to_u64() {
        if let Some(better) = minimal_primal(group, labels, limit) {
            return Ok(ZeroSumCertificate::Primal { multiplicities: better });
        }
    }
    Ok(seed)
}

/// The 1-loops attached along one maximal tree path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopFamily {
    pub path: Path,
    pub loops: Vec<EdgeId>,
}

impl LoopFamily {
    pub fn labels(&self, lg: &LabelledGraph) -> Vec<GroupElement> {
        self.loops.iter().map(|&e| lg.label(e).clone()).collect()
    }
}

/// Loops attached to the vertices of a tree path, in path order.
pub fn loops_on_tree_path(lg: &LabelledGraph, path: &Path) -> Vec<EdgeId> {
    lg.decomposition
        .path_vertices(&lg.graph, path)
        .into_iter()
        .flat_map(|v| lg.decomposition.loops_at(v).iter().copied())
        .collect()
}

/// One family per maximal tree path that carries loops. Families with the
/// same loop set as an earlier one are dropped.
pub fn loop_families(lg: &LabelledGraph) -> Vec<LoopFamily> {
    let mut out: Vec<LoopFamily> = Vec::new();
    for path in lg.decomposition.maximal_tree_paths(&lg.graph) {
        let loops = loops_on_tree_path(lg, &path);
        if loops.is_empty() || out.iter().any(|f| f.loops == loops) {
            continue;
        }
        out.push(LoopFamily { path, loops });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWitness {
    pub family: LoopFamily,
    pub certificate: ZeroSumCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessVerdict {
    pub almost_proper: bool,
    pub witnesses: Vec<FamilyWitness>,
}

impl PropernessVerdict {
    /// First family with a zero-sum witness, if any.
    pub fn obstruction(&self) -> Option<&FamilyWitness> {
        self.witnesses.iter().find(|w| w.certificate.is_primal())
    }
}

pub fn is_almost_proper(lg: &LabelledGraph) -> PropernessVerdict {
    let witnesses: Vec<FamilyWitness> = loop_families(lg)
        .into_iter()
        .map(|family| {
            let certificate = zero_sum_certificate(&lg.group, &family.labels(lg)).expect("nonempty family");
            FamilyWitness { family, certificate }
        })
        .collect();
    let almost_proper = witnesses.iter().all(|w| !w.certificate.is_primal());
    PropernessVerdict { almost_proper, witnesses }
}

/// A 1-loop with an exit whose label has finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub loop_edge: EdgeId,
    pub vertex: VertexId,
    pub label: GroupElement,
}

/// Loops with an exit and a finite-order label. For discrete groups these are
/// the loops for which `omega + O = O` for some finite nonempty `O`.
pub fn check_necessary_condition(lg: &LabelledGraph) -> Vec<Violation> {
    lg.decomposition
        .loop_edges
        .iter()
        .filter(|&&e| lg.graph.loop_has_exit(e).unwrap_or(false) && lg.label(e).is_torsion())
        .map(|&e| Violation { loop_edge: e, vertex: lg.graph.source(e), label: lg.label(e).clone() })
        .collect()
}

/// Single-vertex criterion: `-omega_e` is never a non-negative integer
/// combination of edge labels.
pub fn cuntz_case_check(lg: &LabelledGraph) -> Result<bool, PropernessError> {
    let g = &lg.graph;
    if g.vertex_count() != 1 || lg.decomposition.loop_edges.len() != g.edge_count() {
        return Err(PropernessError::NotCuntzShape);
    }
    let labels: Vec<GroupElement> = g.edge_ids().map(|e| lg.label(e).clone()).collect();
    Ok((0..labels.len()).all(|forced| !negation_in_monoid(&lg.group, &labels, forced)))
}

/// `-labels[forced]` lies in the monoid generated by `labels`, i.e. a zero
/// sum exists in which `labels[forced]` appears at least once.
fn negation_in_monoid(group: &GroupSpec, labels: &[GroupElement], forced: usize) -> bool {
    let k = labels.len();
    let mut a = free_matrix(group, labels);
    a.push((0..k).map(|j| if j == forced { q(1) } else { q(0) }).collect());
    let mut b = vec![q(0); group.free_rank];
    b.push(q(1));
    // A rational solution with x_forced = 1 scales to an integer one, and
    // multiplying by the torsion order clears the torsion part.
    feasible_point(&a, &b).is_some()
}

/// Exhaustive zero-sum search over multisets of total multiplicity at most
/// `max_total`. Reference implementation for tests.
pub fn brute_force_zero_sum(group: &GroupSpec, labels: &[GroupElement], max_total: u64) -> Option<Vec<u64>> {
    fn rec(labels: &[GroupElement], idx: usize, left: u64, acc: GroupElement, cur: &mut Vec<u64>, used: u64) -> bool {
        if idx == labels.len() {
            return used > 0 && acc.is_zero();
        }
        let mut acc = acc;
        for n in 0..=left {
            cur[idx] = n;
            if rec(labels, idx + 1, left - n, acc.clone(), cur, used + n) {
                return true;
            }
            acc = &acc + &labels[idx];
        }
        false
    }
    let mut cur = vec![0; labels.len()];
    if rec(labels, 0, max_total, group.zero(), &mut cur, 0) {
        Some(cur)
    } else {
        None
    }
}

impl std::fmt::Display for ZeroSumCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        match self {
            ZeroSumCertificate::Primal { multiplicities } => {
                write!(f, "primal({})", join(multiplicities.iter().map(|n| n.to_string()).collect()))
            }
            ZeroSumCertificate::Dual { functional } => {
                write!(f, "dual({})", join(functional.iter().map(|n| n.to_string()).collect()))
            }
        }
    }
}
