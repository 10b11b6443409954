//! One finite stage of the AF embedding: from a window to matrix-unit blocks.

pub mod blocks;
pub mod stage;
pub mod verify;

use thiserror::Error;

pub use blocks::{Block, BlockIndex, Dimension, MatrixUnit, VertexCover};
pub use stage::{StageData, Window};
pub use verify::{CheckResult, VerifyOptions};

use crate::algebra::{Algebra, Operator};
use crate::graph::{Path, VertexId};
use crate::labelled::LabelledGraph;
use crate::properness::is_almost_proper;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("labelling is not almost proper")]
    NotAlmostProper,
    #[error("window is empty")]
    EmptyWindow,
    #[error("window point {0} does not have the group's shape")]
    WindowShape(String),
    #[error("window point {0} is repeated")]
    DuplicateWindowPoint(String),
    #[error("loop multiplicity bound does not fit the search")]
    SearchTooLarge,
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("construction failed to verify: {0}")]
    Unverified(String),
}

/// Options for [`Construction::build`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub tilde_v: Option<VertexId>,
    /// Replace `q` by the negative-control projection with one factor missing.
    pub corrupt_q: bool,
}

/// All artifacts of one stage.
#[derive(Clone, Debug)]
pub struct Construction<'a> {
    pub alg: Algebra<'a>,
    pub window: Window,
    pub stage: StageData,
    pub p: Operator,
    pub q: Operator,
    pub blocks: Vec<Block>,
    /// `E*(v)` for every vertex, indexed by vertex.
    pub covers: Vec<VertexCover>,
}

impl<'a> Construction<'a> {
    pub fn build(lg: &'a LabelledGraph, window: Window, options: &BuildOptions) -> Result<Self, EmbeddingError> {
        if !is_almost_proper(lg).almost_proper {
            return Err(EmbeddingError::NotAlmostProper);
        }
        let alg = Algebra::new(lg);
        let f = stage::compute_f(lg, &window)?;
        let stage = stage::compute_stage(lg, f, options.tilde_v);
        let p = window.p(&alg);
        let q = if options.corrupt_q {
            blocks::corrupted_q(&alg, &window, &stage)
        } else {
            blocks::compute_q(&alg, &window, &stage)
        };
        let blocks = blocks::compute_k(&alg, &window, &stage, &q);
        let covers = lg.graph.vertices().map(|v| blocks::compute_estar_v(&alg, &window, &stage, &q, v)).collect();
        Ok(Construction { alg, window, stage, p, q, blocks, covers })
    }

    pub fn lg(&self) -> &'a LabelledGraph {
        self.alg.lg
    }

    /// `q_(v,tau)` for a given block label, nonzero or not.
    pub fn block_projection(&self, index: &BlockIndex) -> Operator {
        blocks::block_projection(&self.alg, &self.window, &self.stage, &self.q, index)
    }

    pub fn embed(&self, mu: &Path, i: usize, nu: &Path) -> Result<Vec<MatrixUnit>, EmbeddingError> {
        if i == 0 || i > self.window.size() {
            return Err(EmbeddingError::BadGenerator(format!("atom index {i} outside 1..={}", self.window.size())));
        }
        blocks::embed_generator(&self.stage, &self.blocks, &self.covers, mu, i, nu, self.lg())
    }

    /// `s_mu p_i s_nu^*`.
    pub fn generator(&self, mu: &Path, i: usize, nu: &Path) -> Operator {
        self.alg.chi_term(mu, &self.window.atom(i), nu).expect("legs share a range")
    }

    /// Embeds and checks that the matrix units sum back to the generator.
    pub fn embed_verified(&self, mu: &Path, i: usize, nu: &Path) -> Result<Vec<MatrixUnit>, EmbeddingError> {
        let units = self.embed(mu, i, nu)?;
        let back = blocks::reexpand(&self.alg, &self.blocks, &units);
        if !self.alg.equal(&back, &self.generator(mu, i, nu)) {
            let g = &self.lg().graph;
            return Err(EmbeddingError::Unverified(format!(
                "s[{}] p_{i} s[{}]^* is not the sum of its matrix units",
                g.path_name(mu),
                g.path_name(nu)
            )));
        }
        Ok(units)
    }

    /// Human-readable `tau` as `path->atom` pairs.
    pub fn tau_label(&self, tau: &[usize]) -> String {
        let g = &self.lg().graph;
        let mut parts: Vec<String> = Vec::new();
        for (p, t) in self.stage.tilde_estar_f.iter().zip(tau) {
            let name = if p.is_vertex() { format!("~{}", g.path_name(p)) } else { g.path_name(p) };
            parts.push(format!("{name}->{t}"));
        }
        parts.join(",")
    }

    pub fn block_name(&self, b: usize) -> String {
        let idx = &self.blocks[b].index;
        format!("({}, {{{}}})", self.lg().graph.vertex_name(idx.v), self.tau_label(&idx.tau))
    }
}
