//! Finite-or-cofinite subsets of the group and rational functions on it
//! with finite exceptional support.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::group::{GroupElement, GroupSpec};

pub type Rational = BigRational;

/// A subset of the group that is either finite or has finite complement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaSet {
    Finite(BTreeSet<GroupElement>),
    /// Everything except the listed elements.
    Cofinite(BTreeSet<GroupElement>),
}

impl GammaSet {
    pub fn empty() -> Self {
        GammaSet::Finite(BTreeSet::new())
    }

    pub fn whole() -> Self {
        GammaSet::Cofinite(BTreeSet::new())
    }

    pub fn singleton(g: GroupElement) -> Self {
        GammaSet::Finite(BTreeSet::from([g]))
    }

    pub fn finite<I: IntoIterator<Item = GroupElement>>(items: I) -> Self {
        GammaSet::Finite(items.into_iter().collect())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self {
            GammaSet::Finite(s) => s.contains(g),
            GammaSet::Cofinite(s) => !s.contains(g),
        }
    }

    /// Emptiness without group context; a cofinite set is never empty in an
    /// infinite group. Use [`GammaSet::normalize`] first for finite groups.
    pub fn is_empty(&self) -> bool {
        matches!(self, GammaSet::Finite(s) if s.is_empty())
    }

    pub fn complement(&self) -> Self {
        match self {
            GammaSet::Finite(s) => GammaSet::Cofinite(s.clone()),
            GammaSet::Cofinite(s) => GammaSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use GammaSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b - a),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        use GammaSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a | b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Finite(a - b),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    /// `A + t`.
    pub fn translate(&self, t: &GroupElement) -> Self {
        let shift = |s: &BTreeSet<GroupElement>| s.iter().map(|g| g + t).collect();
        match self {
            GammaSet::Finite(s) => GammaSet::Finite(shift(s)),
            GammaSet::Cofinite(s) => GammaSet::Cofinite(shift(s)),
        }
    }

    /// In a finite group, rewrites cofinite sets as finite ones so that equal
    /// sets compare equal.
    pub fn normalize(&self, group: &GroupSpec) -> Self {
        match (self, group.elements()) {
            (GammaSet::Cofinite(s), Some(all)) => {
                GammaSet::Finite(all.into_iter().filter(|g| !s.contains(g)).collect())
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Display for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<GroupElement>| s.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
        match self {
            GammaSet::Finite(s) => write!(f, "chi{{{}}}", list(s)),
            GammaSet::Cofinite(s) if s.is_empty() => write!(f, "chi{{G}}"),
            GammaSet::Cofinite(s) => write!(f, "chi{{G\\{}}}", list(s)),
        }
    }
}

/// A rational-valued function equal to `default` outside a finite set.
/// Invariant: no exceptional value equals the default.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaFunction {
    exceptional: BTreeMap<GroupElement, Rational>,
    default: Rational,
}

impl GammaFunction {
    pub fn zero() -> Self {
        GammaFunction { exceptional: BTreeMap::new(), default: Rational::zero() }
    }

    pub fn constant(c: Rational) -> Self {
        GammaFunction { exceptional: BTreeMap::new(), default: c }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c * chi_A`.
    pub fn indicator(set: &GammaSet, c: Rational) -> Self {
        let mut f = match set {
            GammaSet::Finite(s) => GammaFunction {
                exceptional: s.iter().map(|g| (g.clone(), c.clone())).collect(),
                default: Rational::zero(),
            },
            GammaSet::Cofinite(s) => {
                GammaFunction { exceptional: s.iter().map(|g| (g.clone(), Rational::zero())).collect(), default: c }
            }
        };
        f.prune();
        f
    }

    fn prune(&mut self) {
        let d = self.default.clone();
        self.exceptional.retain(|_, v| *v != d);
    }

    pub fn default_value(&self) -> &Rational {
        &self.default
    }

    pub fn exceptional(&self) -> &BTreeMap<GroupElement, Rational> {
        &self.exceptional
    }

    pub fn value(&self, g: &GroupElement) -> Rational {
        self.exceptional.get(g).cloned().unwrap_or_else(|| self.default.clone())
    }

    /// Pure representation check. Exact for infinite groups; use
    /// [`GammaFunction::normalize`] first for finite ones.
    pub fn is_zero(&self) -> bool {
        self.default.is_zero() && self.exceptional.is_empty()
    }

    fn combine(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let keys: BTreeSet<&GroupElement> = self.exceptional.keys().chain(other.exceptional.keys()).collect();
        let mut exceptional = BTreeMap::new();
        for k in keys {
            exceptional.insert(k.clone(), op(&self.value(k), &other.value(k)));
        }
        let mut f = GammaFunction { exceptional, default: op(&self.default, &other.default) };
        f.prune();
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.combine(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GammaFunction {
            exceptional: self.exceptional.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            default: &self.default * c,
        }
    }

    /// `sigma_t(f)(x) = f(x + t)`; on indicators `chi_A -> chi_{A - t}`.
    pub fn shift(&self, t: &GroupElement) -> Self {
        if t.is_zero() {
            return self.clone();
        }
        GammaFunction {
            exceptional: self.exceptional.iter().map(|(k, v)| (k - t, v.clone())).collect(),
            default: self.default.clone(),
        }
    }

    /// Canonical representative: in a finite group the default is folded into
    /// explicit values so that the representation is unique.
    pub fn normalize(&self, group: &GroupSpec) -> Self {
        match group.elements() {
            Some(all) => self.normalize_over(&all),
            None => self.clone(),
        }
    }

    /// [`GammaFunction::normalize`] with the element list of a finite group
    /// supplied by the caller.
    pub fn normalize_over(&self, all: &[GroupElement]) -> Self {
        if self.default.is_zero() {
            return self.clone();
        }
        let mut f = GammaFunction {
            exceptional: all.iter().map(|g| (g.clone(), self.value(g))).collect(),
            default: Rational::zero(),
        };
        f.prune();
        f
    }

    /// Decomposes into `(value, level set)` pairs with nonzero values, in a
    /// deterministic order: the default level first, then by value.
    pub fn level_sets(&self) -> Vec<(Rational, GammaSet)> {
        let mut by_value: BTreeMap<Rational, BTreeSet<GroupElement>> = BTreeMap::new();
        for (k, v) in &self.exceptional {
            by_value.entry(v.clone()).or_default().insert(k.clone());
        }
        let mut out = Vec::new();
        if !self.default.is_zero() {
            let excluded: BTreeSet<GroupElement> = self.exceptional.keys().cloned().collect();
            out.push((self.default.clone(), GammaSet::Cofinite(excluded)));
        }
        for (v, set) in by_value {
            if !v.is_zero() {
                out.push((v, GammaSet::Finite(set)));
            }
        }
        out
    }

    /// Support as a set (where the value is nonzero).
    pub fn support(&self) -> GammaSet {
        if self.default.is_zero() {
            GammaSet::Finite(self.exceptional.keys().cloned().collect())
        } else {
            GammaSet::Cofinite(self.exceptional.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect())
        }
    }
}
