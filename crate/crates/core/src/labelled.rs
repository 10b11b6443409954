//! Admissible graphs carrying an edge labelling into a discrete abelian group.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Path, RawEdge, TreeLoopDecomposition, VertexId};
use crate::group::{GroupElement, GroupError, GroupSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("edge `{0}` has no label")]
    Unlabelled(String),
    #[error("{0} labels given for {1} edges")]
    TooManyLabels(usize, usize),
    #[error("label of edge `{0}` does not have the group's shape")]
    WrongShape(String),
}

/// Edge labels: one group element per edge, indexed by [`EdgeId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    labels: Vec<GroupElement>,
}

impl Labelling {
    pub fn new(graph: &Graph, group: &GroupSpec, labels: Vec<GroupElement>) -> Result<Self, LabelError> {
        if labels.len() < graph.edge_count() {
            return Err(LabelError::Unlabelled(graph.edge(EdgeId(labels.len())).name.clone()));
        }
        if labels.len() > graph.edge_count() {
            return Err(LabelError::TooManyLabels(labels.len(), graph.edge_count()));
        }
        for (e, l) in labels.iter().enumerate() {
            if !group.contains(l) {
                return Err(LabelError::WrongShape(graph.edge(EdgeId(e)).name.clone()));
            }
        }
        Ok(Labelling { labels })
    }

    pub fn edge(&self, e: EdgeId) -> &GroupElement {
        &self.labels[e.0]
    }
}

/// A validated instance: admissible graph, group and labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    pub group: GroupSpec,
    pub graph: Graph,
    pub decomposition: TreeLoopDecomposition,
    pub labels: Labelling,
}

impl LabelledGraph {
    pub fn new(group: GroupSpec, graph: Graph, labels: Vec<GroupElement>) -> Result<Self, LabelError> {
        group.validate()?;
        let decomposition = TreeLoopDecomposition::decompose(&graph)?;
        let labels = Labelling::new(&graph, &group, labels)?;
        Ok(LabelledGraph { group, graph, decomposition, labels })
    }

    /// Convenience constructor from `(id, source, range, flat label)` tuples.
    pub fn build(
        group: GroupSpec,
        vertices: &[&str],
        edges: &[(&str, &str, &str, &[i64])],
    ) -> Result<Self, LabelError> {
        let graph = Graph::validate(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|(i, s, r, _)| RawEdge::new(i, s, r)).collect(),
        )?;
        let labels = edges.iter().map(|(_, _, _, l)| group.from_i64s(l)).collect::<Result<Vec<_>, _>>()?;
        LabelledGraph::new(group, graph, labels)
    }

    /// `omega(mu)`: sum of edge labels, zero on vertices.
    pub fn path_label(&self, p: &Path) -> GroupElement {
        p.edges.iter().fold(self.group.zero(), |acc, &e| &acc + self.labels.edge(e))
    }

    pub fn label(&self, e: EdgeId) -> &GroupElement {
        self.labels.edge(e)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.graph.edge(e).is_self_loop()
    }

    pub fn vertex(&self, name: &str) -> VertexId {
        self.graph.vertex_id(name).expect("known vertex")
    }

    pub fn edge(&self, name: &str) -> EdgeId {
        self.graph.edge_id(name).expect("known edge")
    }

    /// Parses a printed path (vertex name or `e1.e2...`), panicking on bad input.
    pub fn path(&self, text: &str) -> Path {
        self.graph.parse_path(text).expect("valid path")
    }

    pub fn has_loops(&self) -> bool {
        !self.decomposition.loop_edges.is_empty()
    }
}
