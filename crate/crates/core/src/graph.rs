//! Finite directed graphs made of a rooted forest with 1-loops attached, and
//! the path combinatorics used everywhere else.
//!
//! Paths follow the convention `r(e_i) = s(e_{i+1})`: a path is read from its
//! source to its range. Vertices are paths of length zero.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("invalid identifier `{0}` (must be non-empty, without whitespace or any of .,[]{{}}*)")]
    BadId(String),
    #[error("edge `{edge}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is not a 1-loop")]
    NotALoop(String),
    #[error("edges do not compose into a path at position {0}")]
    NotComposable(usize),
    #[error("graph outside the admissible class: vertex `{vertex}` has tree in-degree {count}")]
    TreeInDegree { vertex: String, count: usize },
    #[error("graph outside the admissible class: directed cycle through {0:?} in the tree part")]
    TreeCycle(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.source == self.range
    }
}

/// Unvalidated edge as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub source: String,
    pub range: String,
}

impl RawEdge {
    pub fn new(id: &str, source: &str, range: &str) -> Self {
        RawEdge { id: id.into(), source: source.into(), range: range.into() }
    }
}

/// A finite directed graph. Identifier order is declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || ".,[]{}*".contains(c))
}

impl Graph {
    /// Validates raw vertex and edge lists. Identifiers must be unique across
    /// vertices and edges, since both appear in printed paths.
    pub fn validate(vertices: Vec<String>, edges: Vec<RawEdge>) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::new();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_id(v) {
                return Err(GraphError::BadId(v.clone()));
            }
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateId(v.clone()));
            }
            vertex_index.insert(v.clone(), VertexId(i));
        }
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (i, raw) in edges.into_iter().enumerate() {
            if !valid_id(&raw.id) {
                return Err(GraphError::BadId(raw.id));
            }
            if !seen.insert(raw.id.clone()) {
                return Err(GraphError::DuplicateId(raw.id));
            }
            let lookup = |v: &str| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint { edge: raw.id.clone(), vertex: v.to_string() })
            };
            let source = lookup(&raw.source)?;
            let range = lookup(&raw.range)?;
            let id = EdgeId(i);
            out_edges[source.0].push(id);
            in_edges[range.0].push(id);
            edge_index.insert(raw.id.clone(), id);
            built.push(Edge { name: raw.id, source, range });
        }
        Ok(Graph { vertices, edges: built, vertex_index, edge_index, out_edges, in_edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.into()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index.get(name).copied().ok_or_else(|| GraphError::UnknownEdge(name.into()))
    }

    /// Edges with source `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    /// Builds a path from a start vertex and an edge sequence.
    pub fn path(&self, start: VertexId, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let mut range = start;
        for (i, &e) in edges.iter().enumerate() {
            if self.source(e) != range {
                return Err(GraphError::NotComposable(i));
            }
            range = self.range(e);
        }
        Ok(Path { source: start, range, edges: edges.to_vec() })
    }

    /// Builds a path from edge names; an empty list is rejected, use
    /// [`Path::vertex`] for length-zero paths.
    pub fn path_by_names(&self, names: &[&str]) -> Result<Path, GraphError> {
        let edges = names.iter().map(|n| self.edge_id(n)).collect::<Result<Vec<_>, _>>()?;
        let start = match edges.first() {
            Some(&e) => self.source(e),
            None => return Err(GraphError::NotComposable(0)),
        };
        self.path(start, &edges)
    }

    /// Parses the printed form of a path: a vertex name, or edge names joined by `.`.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        if let Ok(v) = self.vertex_id(text) {
            return Ok(Path::vertex(v));
        }
        let names: Vec<&str> = text.split('.').collect();
        self.path_by_names(&names)
    }

    pub fn extend(&self, path: &Path, e: EdgeId) -> Path {
        debug_assert_eq!(path.range, self.source(e));
        let mut edges = path.edges.clone();
        edges.push(e);
        Path { source: path.source, range: self.range(e), edges }
    }

    /// `path` followed by `tail`; requires `r(path) = s(tail)`.
    pub fn concat(&self, path: &Path, tail: &Path) -> Path {
        debug_assert_eq!(path.range, tail.source);
        let mut edges = path.edges.clone();
        edges.extend_from_slice(&tail.edges);
        Path { source: path.source, range: tail.range, edges }
    }

    /// All paths with source `start` and length at most `max_len`, shortest
    /// first, each edge sequence once.
    pub fn enumerate_paths(&self, start: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(start)];
        let mut frontier = vec![Path::vertex(start)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range) {
                    next.push(self.extend(p, e));
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Paths of exactly length `k` with source `start` (the set `E^k_v`).
    pub fn paths_of_length(&self, start: VertexId, k: usize) -> Vec<Path> {
        let mut frontier = vec![Path::vertex(start)];
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range) {
                    next.push(self.extend(p, e));
                }
            }
            frontier = next;
        }
        frontier
    }

    /// All paths with range `end` and length at most `max_len`, shortest first.
    pub fn paths_ending_at(&self, end: VertexId, max_len: usize) -> Vec<Path> {
        // Grow backwards; edges are stored in reverse and flipped at the end.
        let mut out = vec![Path::vertex(end)];
        let mut frontier: Vec<(VertexId, Vec<EdgeId>)> = vec![(end, Vec::new())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (head, rev) in &frontier {
                for &e in self.in_edges(*head) {
                    let mut r = rev.clone();
                    r.push(e);
                    next.push((self.source(e), r));
                }
            }
            if next.is_empty() {
                break;
            }
            for (head, rev) in &next {
                let edges: Vec<EdgeId> = rev.iter().rev().copied().collect();
                out.push(Path { source: *head, range: end, edges });
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// `v <=_E w`: there is a path from `w` to `v`.
    pub fn leq(&self, v: VertexId, w: VertexId) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([w]);
        seen[w.0] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            for &e in self.out_edges(x) {
                let y = self.range(e);
                if !seen[y.0] {
                    seen[y.0] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Name-based variant of [`Graph::leq`].
    pub fn leq_by_name(&self, v: &str, w: &str) -> Result<bool, GraphError> {
        Ok(self.leq(self.vertex_id(v)?, self.vertex_id(w)?))
    }

    /// Whether a 1-loop has an exit. For a 1-loop the only vertex on the loop
    /// is its base, so this is "the base emits another edge".
    pub fn loop_has_exit(&self, e: EdgeId) -> Result<bool, GraphError> {
        let edge = self.edge(e);
        if !edge.is_self_loop() {
            return Err(GraphError::NotALoop(edge.name.clone()));
        }
        Ok(self.out_edges(edge.source).len() >= 2)
    }

    /// Weak connected components, each listed in declaration order.
    pub fn weak_components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut out = Vec::new();
        for start in self.vertices() {
            if comp[start.0] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start.0] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let nbrs = self
                    .out_edges(x)
                    .iter()
                    .map(|&e| self.range(e))
                    .chain(self.in_edges(x).iter().map(|&e| self.source(e)));
                for y in nbrs.collect::<Vec<_>>() {
                    if comp[y.0] == usize::MAX {
                        comp[y.0] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Printed form of a path: the vertex name for length zero, else edge
    /// names joined by `.`.
    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            return self.vertex_name(p.source).to_string();
        }
        p.edges.iter().map(|&e| self.edge(e).name.as_str()).collect::<Vec<_>>().join(".")
    }
}

/// A finite path. Ordered by length, then source, then edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub range: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { source: v, range: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// True for vertex paths.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// If `self = prefix . rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path { source: prefix.range, range: self.range, edges: self.edges[prefix.edges.len()..].to_vec() })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then(self.source.cmp(&other.source))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Split of an admissible graph into its rooted forest `T` and its 1-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLoopDecomposition {
    pub tree_edges: Vec<EdgeId>,
    pub loop_edges: Vec<EdgeId>,
    /// `n_v`: number of 1-loops based at each vertex.
    pub loop_count: Vec<usize>,
    /// Tree edge entering each vertex, `None` at roots.
    pub parent: Vec<Option<EdgeId>>,
    pub roots: Vec<VertexId>,
    loops_at: Vec<Vec<EdgeId>>,
    tree_children: Vec<Vec<EdgeId>>,
}

impl TreeLoopDecomposition {
    /// Classifies self-loops as 1-loops and checks that the remaining edges
    /// form a forest of rooted directed trees.
    pub fn decompose(g: &Graph) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let mut tree_edges = Vec::new();
        let mut loop_edges = Vec::new();
        let mut loops_at = vec![Vec::new(); n];
        let mut parent: Vec<Option<EdgeId>> = vec![None; n];
        let mut indeg = vec![0usize; n];
        let mut tree_children = vec![Vec::new(); n];
        for e in g.edge_ids() {
            let edge = g.edge(e);
            if edge.is_self_loop() {
                loop_edges.push(e);
                loops_at[edge.source.0].push(e);
            } else {
                tree_edges.push(e);
                indeg[edge.range.0] += 1;
                parent[edge.range.0] = Some(e);
                tree_children[edge.source.0].push(e);
            }
        }
        if let Some(v) = (0..n).find(|&v| indeg[v] >= 2) {
            return Err(GraphError::TreeInDegree { vertex: g.vertex_name(VertexId(v)).into(), count: indeg[v] });
        }
        // With in-degree <= 1 every vertex has a unique parent chain; it either
        // reaches a root or closes a cycle.
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        for start in 0..n {
            let mut chain = Vec::new();
            let mut x = start;
            loop {
                match state[x] {
                    2 => break,
                    1 => {
                        let pos = chain.iter().position(|&c| c == x).unwrap();
                        let mut names: Vec<String> =
                            chain[pos..].iter().map(|&c| g.vertex_name(VertexId(c)).to_string()).collect();
                        names.reverse();
                        return Err(GraphError::TreeCycle(names));
                    }
                    _ => {}
                }
                state[x] = 1;
                chain.push(x);
                match parent[x] {
                    Some(e) => x = g.source(e).0,
                    None => break,
                }
            }
            for c in chain {
                state[c] = 2;
            }
        }
        let roots = (0..n).filter(|&v| parent[v].is_none()).map(VertexId).collect();
        let loop_count = loops_at.iter().map(Vec::len).collect();
        Ok(TreeLoopDecomposition { tree_edges, loop_edges, loop_count, parent, roots, loops_at, tree_children })
    }

    pub fn loops_at(&self, v: VertexId) -> &[EdgeId] {
        &self.loops_at[v.0]
    }

    pub fn is_loop(&self, g: &Graph, e: EdgeId) -> bool {
        g.edge(e).is_self_loop()
    }

    pub fn tree_children(&self, v: VertexId) -> &[EdgeId] {
        &self.tree_children[v.0]
    }

    pub fn tree_parent(&self, g: &Graph, v: VertexId) -> Option<VertexId> {
        self.parent[v.0].map(|e| g.source(e))
    }

    /// The unique tree path from `from` down to `to`, if `to` is a descendant.
    pub fn tree_path(&self, g: &Graph, from: VertexId, to: VertexId) -> Option<Path> {
        let mut rev = Vec::new();
        let mut x = to;
        while x != from {
            let e = self.parent[x.0]?;
            rev.push(e);
            x = g.source(e);
        }
        rev.reverse();
        Some(Path { source: from, range: to, edges: rev })
    }

    /// `v <=_T w`: there is a tree path from `w` to `v`.
    pub fn leq_tree(&self, g: &Graph, v: VertexId, w: VertexId) -> bool {
        self.tree_path(g, w, v).is_some()
    }

    /// Vertices reached from `v` by a tree path of length exactly `j`.
    pub fn tree_level(&self, g: &Graph, v: VertexId, j: usize) -> Vec<VertexId> {
        let mut level = vec![v];
        for _ in 0..j {
            level = level.iter().flat_map(|&x| self.tree_children(x).iter().map(|&e| g.range(e))).collect();
        }
        level.sort();
        level
    }

    /// Every tree path (including length zero) starting at `v`.
    pub fn tree_paths_from(&self, g: &Graph, v: VertexId) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut i = 0;
        while i < out.len() {
            let p = out[i].clone();
            for &e in self.tree_children(p.range) {
                out.push(g.extend(&p, e));
            }
            i += 1;
        }
        out
    }

    /// Maximal directed tree paths: root to leaf in each component.
    pub fn maximal_tree_paths(&self, g: &Graph) -> Vec<Path> {
        let mut out = Vec::new();
        for &r in &self.roots {
            for p in self.tree_paths_from(g, r) {
                if self.tree_children(p.range).is_empty() {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Vertices on a tree path, in order.
    pub fn path_vertices(&self, g: &Graph, p: &Path) -> Vec<VertexId> {
        let mut out = vec![p.source];
        out.extend(p.edges.iter().map(|&e| g.range(e)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        Graph::validate(
            vs.iter().map(|s| s.to_string()).collect(),
            es.iter().map(|(i, s, r)| RawEdge::new(i, s, r)).collect(),
        )
    }

    #[test]
    fn validate_examples() {
        let g = graph(&["v"], &[("g", "v", "v")]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        let g = graph(&["v1", "v2"], &[("e1", "v1", "v2")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            graph(&["v1"], &[("e1", "v1", "v9")]),
            Err(GraphError::DanglingEndpoint { edge: "e1".into(), vertex: "v9".into() })
        );
        assert_eq!(graph(&["v", "v"], &[]), Err(GraphError::DuplicateId("v".into())));
        assert_eq!(graph(&["v"], &[("v", "v", "v")]), Err(GraphError::DuplicateId("v".into())));
        assert_eq!(graph(&[], &[]), Err(GraphError::Empty));
        assert!(matches!(graph(&["a.b"], &[]), Err(GraphError::BadId(_))));
    }

    #[test]
    fn decompose_examples() {
        let g = graph(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("g", "v2", "v2")]).unwrap();
        let d = TreeLoopDecomposition::decompose(&g).unwrap();
        assert_eq!(d.tree_edges, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(d.loop_count, vec![0, 1, 0]);
        assert_eq!(d.roots, vec![VertexId(0)]);

        let g = graph(&["v"], &[("a", "v", "v"), ("b", "v", "v")]).unwrap();
        let d = TreeLoopDecomposition::decompose(&g).unwrap();
        assert!(d.tree_edges.is_empty());
        assert_eq!(d.loop_count, vec![2]);

        let g = graph(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v2", "v1")]).unwrap();
        assert!(matches!(TreeLoopDecomposition::decompose(&g), Err(GraphError::TreeCycle(_))));

        let g = graph(&["a", "b", "c"], &[("x", "a", "c"), ("y", "b", "c")]).unwrap();
        assert!(matches!(TreeLoopDecomposition::decompose(&g), Err(GraphError::TreeInDegree { count: 2, .. })));
    }

    #[test]
    fn enumerate_examples() {
        let g = graph(&["v"], &[("g", "v", "v")]).unwrap();
        let names: Vec<String> = g.enumerate_paths(VertexId(0), 2).iter().map(|p| g.path_name(p)).collect();
        assert_eq!(names, vec!["v", "g", "g.g"]);

        let g = graph(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v2", "v3")]).unwrap();
        let names: Vec<String> = g.enumerate_paths(VertexId(0), 2).iter().map(|p| g.path_name(p)).collect();
        assert_eq!(names, vec!["v1", "e1", "e1.e2"]);
        assert_eq!(g.enumerate_paths(VertexId(2), 5).len(), 1);
    }

    #[test]
    fn leq_examples() {
        let g = graph(&["v1", "v2"], &[("e1", "v1", "v2")]).unwrap();
        assert!(g.leq_by_name("v2", "v1").unwrap());
        assert!(!g.leq_by_name("v1", "v2").unwrap());
        assert!(g.leq_by_name("v1", "v1").unwrap());
        assert!(g.leq_by_name("v1", "zz").is_err());
    }

    #[test]
    fn exit_examples() {
        let g = graph(&["v"], &[("g", "v", "v")]).unwrap();
        assert!(!g.loop_has_exit(EdgeId(0)).unwrap());
        let g = graph(&["v", "w"], &[("g", "v", "v"), ("e", "v", "w")]).unwrap();
        assert!(g.loop_has_exit(EdgeId(0)).unwrap());
        assert!(g.loop_has_exit(EdgeId(1)).is_err());
        let g = graph(&["v1", "v2"], &[("e", "v1", "v2"), ("g", "v2", "v2")]).unwrap();
        assert!(!g.loop_has_exit(EdgeId(1)).unwrap());
    }

    #[test]
    fn paths_ending_and_prefix() {
        let g = graph(&["v1", "v2"], &[("e", "v1", "v2"), ("g", "v2", "v2")]).unwrap();
        let into = g.paths_ending_at(VertexId(1), 2);
        let names: Vec<String> = into.iter().map(|p| g.path_name(p)).collect();
        assert_eq!(names, vec!["v2", "e", "g", "e.g", "g.g"]);
        let eg = g.parse_path("e.g").unwrap();
        let e = g.parse_path("e").unwrap();
        assert_eq!(g.path_name(&eg.strip_prefix(&e).unwrap()), "g");
        assert!(e.strip_prefix(&eg).is_none());
        assert_eq!(g.path_name(&eg.strip_prefix(&Path::vertex(VertexId(0))).unwrap()), "e.g");
    }

    #[test]
    fn tree_queries() {
        let g = graph(&["r", "a", "b", "c"], &[("x", "r", "a"), ("y", "r", "b"), ("z", "a", "c")]).unwrap();
        let d = TreeLoopDecomposition::decompose(&g).unwrap();
        assert_eq!(d.tree_level(&g, VertexId(0), 1), vec![VertexId(1), VertexId(2)]);
        assert_eq!(d.tree_level(&g, VertexId(0), 2), vec![VertexId(3)]);
        assert!(d.leq_tree(&g, VertexId(3), VertexId(0)));
        assert!(!d.leq_tree(&g, VertexId(2), VertexId(1)));
        let maximal: Vec<String> = d.maximal_tree_paths(&g).iter().map(|p| g.path_name(p)).collect();
        assert_eq!(maximal, vec!["y", "x.z"]);
    }
}
