//! Exact arithmetic in a finitely generated discrete abelian group
//! `Z^d + Z/m_1 + ... + Z/m_t`.
//!
//! Free coordinates are arbitrary precision integers; torsion coordinates are
//! residues kept reduced into `[0, m_i)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group must have at least one factor (free rank 0 and no torsion)")]
    Trivial,
    #[error("torsion order {0} must be at least 2")]
    BadTorsionOrder(u64),
    #[error("label has {found} coordinates but the group expects {expected}")]
    Arity { expected: usize, found: usize },
}

/// Shape of the group: free rank plus the list of torsion orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, GroupError> {
        let spec = GroupSpec { free_rank, torsion };
        spec.validate()?;
        Ok(spec)
    }

    /// The integers.
    pub fn integers() -> Self {
        GroupSpec { free_rank: 1, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Result<Self, GroupError> {
        GroupSpec::new(0, vec![order])
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        if self.free_rank + self.torsion.len() == 0 {
            return Err(GroupError::Trivial);
        }
        if let Some(&m) = self.torsion.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadTorsionOrder(m));
        }
        Ok(())
    }

    /// Number of coordinates in the flat (free then torsion) encoding.
    pub fn arity(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cardinality of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.iter().fold(BigUint::one(), |acc, &m| acc * m))
    }

    /// Exponent of the torsion subgroup (lcm of the torsion orders).
    pub fn torsion_exponent(&self) -> u64 {
        self.torsion.iter().fold(1u64, |acc, &m| acc.lcm(&m))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: self.torsion.iter().map(|&m| Residue { value: 0, modulus: m }).collect(),
        }
    }

    /// Builds an element from free coordinates and (unreduced) torsion coordinates.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(GroupError::Arity { expected: self.arity(), found: free.len() + torsion.len() });
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(t, &m)| Residue::reduce(t, m)).collect();
        Ok(GroupElement { free, torsion })
    }

    /// Builds an element from the flat encoding: free coordinates first, then
    /// torsion coordinates.
    pub fn from_flat(&self, coords: &[BigInt]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.arity() {
            return Err(GroupError::Arity { expected: self.arity(), found: coords.len() });
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        self.element(free.to_vec(), torsion.to_vec())
    }

    pub fn from_i64s(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.from_flat(&big)
    }

    /// Every element of a finite group, in lexicographic order of residues.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![self.zero()];
        for (i, &m) in self.torsion.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for r in 0..m {
                    let mut e = e.clone();
                    e.torsion[i].value = r;
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort();
        Some(out)
    }

    /// Checks that an element has this group's shape.
    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(r, &m)| r.modulus == m && r.value < m)
    }
}

/// A residue modulo a fixed torsion order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    fn reduce(t: &BigInt, m: u64) -> Residue {
        let r = t.mod_floor(&BigInt::from(m));
        Residue { value: r.to_u64().expect("residue fits below modulus"), modulus: m }
    }

    fn add(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        let v = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Residue { value: v as u64, modulus: self.modulus }
    }

    fn neg(self) -> Residue {
        Residue { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    /// Additive order of the residue.
    fn order(self) -> u64 {
        self.modulus / self.value.gcd(&self.modulus)
    }
}

/// An element of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<Residue>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|r| r.value == 0)
    }

    /// True when the free part vanishes (the element has finite order).
    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    /// Additive order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if !self.is_torsion() {
            return None;
        }
        Some(self.torsion.iter().fold(1u64, |acc, r| acc.lcm(&r.order())))
    }

    /// `n * self` for a non-negative multiplicity.
    pub fn times(&self, n: &BigUint) -> GroupElement {
        let n_int = BigInt::from(n.clone());
        GroupElement {
            free: self.free.iter().map(|x| x * &n_int).collect(),
            torsion: self
                .torsion
                .iter()
                .map(|r| {
                    let v = (BigUint::from(r.value) * n) % r.modulus;
                    Residue { value: v.to_u64().unwrap(), modulus: r.modulus }
                })
                .collect(),
        }
    }

    pub fn times_u64(&self, n: u64) -> GroupElement {
        self.times(&BigUint::from(n))
    }

    /// Exact inner product of the free part with an integer functional.
    pub fn pair_free(&self, y: &[BigInt]) -> BigInt {
        self.free.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Flat coordinates: free part then torsion residues.
    pub fn flat(&self) -> Vec<BigInt> {
        self.free.iter().cloned().chain(self.torsion.iter().map(|r| BigInt::from(r.value))).collect()
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.free.len(), rhs.free.len());
        GroupElement {
            free: self.free.iter().zip(&rhs.free).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.iter().zip(&rhs.torsion).map(|(a, b)| a.add(*b)).collect(),
        }
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement {
            free: self.free.iter().map(|a| -a).collect(),
            torsion: self.torsion.iter().map(|r| r.neg()).collect(),
        }
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self + &(-rhs)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for x in &self.free {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        for r in &self.torsion {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{}", r.value)?;
        }
        write!(f, "]")
    }
}

/// `{x - y : x, y in U}`. In a discrete group the closure is the set itself.
pub fn minkowski_diff(set: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::new();
    for x in set {
        for y in set {
            out.insert(x - y);
        }
    }
    out
}

/// Sign helper used by certificate checks.
pub(crate) fn is_positive(x: &BigInt) -> bool {
    x.is_positive()
}
