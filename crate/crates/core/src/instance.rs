//! The JSON instance document: group, graph, labels and an optional window.
//!
//! ```json
//! {
//!   "gamma": {"free_rank": 1, "torsion": []},
//!   "vertices": ["v"],
//!   "tree_edges": [],
//!   "loops": [{"id": "g", "at": "v", "label": [1]}],
//!   "window": [[0], [1]],
//!   "tilde_v": "v"
//! }
//! ```
//!
//! Labels and window points are flat coordinate lists, free part first.
//! Coordinates may be JSON integers or decimal strings for values beyond 64 bits.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::embedding::Window;
use crate::graph::{Graph, RawEdge, VertexId};
use crate::group::{GroupElement, GroupSpec};
use crate::labelled::LabelledGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{at}: {message}")]
    Invalid { at: String, message: String },
}

fn invalid(at: impl Into<String>, message: impl ToString) -> InstanceError {
    InstanceError::Invalid { at: at.into(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub label: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopEdge {
    pub id: String,
    pub at: String,
    pub label: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub gamma: GroupSpec,
    pub vertices: Vec<String>,
    pub tree_edges: Vec<TreeEdge>,
    pub loops: Vec<LoopEdge>,
    pub window: Option<Vec<GroupElement>>,
    pub tilde_v: Option<String>,
    graph: LabelledGraph,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTreeEdge {
    id: String,
    src: String,
    dst: String,
    label: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLoop {
    id: String,
    at: String,
    label: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    gamma: GroupSpec,
    vertices: Vec<String>,
    #[serde(default)]
    tree_edges: Vec<RawTreeEdge>,
    #[serde(default)]
    loops: Vec<RawLoop>,
    #[serde(default)]
    window: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    tilde_v: Option<String>,
}

fn coordinate(at: &str, v: &Value) -> Result<BigInt, InstanceError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| invalid(at, format!("`{n}` is not an exact integer"))),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| invalid(at, format!("`{s}` is not an integer"))),
        other => Err(invalid(at, format!("expected an integer, found {other}"))),
    }
}

fn element(group: &GroupSpec, at: &str, coords: &[Value]) -> Result<GroupElement, InstanceError> {
    let flat =
        coords.iter().enumerate().map(|(i, v)| coordinate(&format!("{at}[{i}]"), v)).collect::<Result<Vec<_>, _>>()?;
    group.from_flat(&flat).map_err(|e| invalid(at, e))
}

fn print_element(x: &GroupElement) -> Value {
    Value::Array(
        x.flat()
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(n) => json!(n),
                Err(_) => json!(c.to_string()),
            })
            .collect(),
    )
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        let raw: RawInstance = serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
        })?;
        let gamma = raw.gamma;
        gamma.validate().map_err(|e| invalid("gamma", e))?;
        if raw.vertices.is_empty() {
            return Err(invalid("vertices", "graph must have at least one vertex"));
        }
        let known = |at: String, v: &str| {
            if raw.vertices.iter().any(|x| x == v) {
                Ok(())
            } else {
                Err(invalid(at, format!("unknown vertex `{v}`")))
            }
        };
        let mut tree_edges = Vec::new();
        for (i, e) in raw.tree_edges.iter().enumerate() {
            let at = format!("tree_edges[{i}]");
            known(format!("{at}.src"), &e.src)?;
            known(format!("{at}.dst"), &e.dst)?;
            if e.src == e.dst {
                return Err(invalid(at, format!("tree edge `{}` is a self-loop; declare it under loops", e.id)));
            }
            let label = element(&gamma, &format!("{at}.label"), &e.label)?;
            tree_edges.push(TreeEdge { id: e.id.clone(), src: e.src.clone(), dst: e.dst.clone(), label });
        }
        let mut loops = Vec::new();
        for (i, l) in raw.loops.iter().enumerate() {
            let at = format!("loops[{i}]");
            known(format!("{at}.at"), &l.at)?;
            let label = element(&gamma, &format!("{at}.label"), &l.label)?;
            loops.push(LoopEdge { id: l.id.clone(), at: l.at.clone(), label });
        }
        let window = match &raw.window {
            None => None,
            Some(points) => Some(
                points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| element(&gamma, &format!("window[{i}]"), p))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        if let Some(t) = &raw.tilde_v {
            known("tilde_v".into(), t)?;
        }
        let edges: Vec<RawEdge> = tree_edges
            .iter()
            .map(|e| RawEdge::new(&e.id, &e.src, &e.dst))
            .chain(loops.iter().map(|l| RawEdge::new(&l.id, &l.at, &l.at)))
            .collect();
        let labels: Vec<GroupElement> =
            tree_edges.iter().map(|e| e.label.clone()).chain(loops.iter().map(|l| l.label.clone())).collect();
        let g = Graph::validate(raw.vertices.clone(), edges).map_err(|e| invalid("graph", e))?;
        let graph = LabelledGraph::new(gamma.clone(), g, labels).map_err(|e| invalid("graph", e))?;
        let inst = Instance { gamma, vertices: raw.vertices, tree_edges, loops, window, tilde_v: raw.tilde_v, graph };
        if let Some(w) = &inst.window {
            Window::new(&inst.gamma, w.clone()).map_err(|e| invalid("window", e))?;
        }
        Ok(inst)
    }

    /// Pretty-printed document; `parse` inverts it.
    pub fn print(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("gamma".into(), json!({"free_rank": self.gamma.free_rank, "torsion": self.gamma.torsion}));
        doc.insert("vertices".into(), json!(self.vertices));
        doc.insert(
            "tree_edges".into(),
            Value::Array(
                self.tree_edges
                    .iter()
                    .map(|e| json!({"id": e.id, "src": e.src, "dst": e.dst, "label": print_element(&e.label)}))
                    .collect(),
            ),
        );
        doc.insert(
            "loops".into(),
            Value::Array(
                self.loops.iter().map(|l| json!({"id": l.id, "at": l.at, "label": print_element(&l.label)})).collect(),
            ),
        );
        if let Some(w) = &self.window {
            doc.insert("window".into(), Value::Array(w.iter().map(print_element).collect()));
        }
        if let Some(t) = &self.tilde_v {
            doc.insert("tilde_v".into(), json!(t));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn labelled(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn tilde_v_id(&self) -> Option<VertexId> {
        self.tilde_v.as_deref().map(|t| self.graph.vertex(t))
    }

    /// The declared window, if any.
    pub fn window(&self) -> Option<Window> {
        self.window.as_ref().map(|w| Window::new(&self.gamma, w.clone()).expect("validated on parse"))
    }
}

/// Parses a command-line window. Points are separated by `;`; for rank-one
/// groups a plain comma list `0,1` also works.
pub fn parse_window_arg(group: &GroupSpec, text: &str) -> Result<Window, InstanceError> {
    let points: Vec<&str> =
        if text.contains(';') || group.arity() != 1 { text.split(';').collect() } else { text.split(',').collect() };
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let at = format!("--window point {}", i + 1);
        let coords = p
            .split(',')
            .map(|c| {
                BigInt::from_str(c.trim()).map_err(|_| invalid(at.clone(), format!("`{}` is not an integer", c.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(group.from_flat(&coords).map_err(|e| invalid(at, e))?);
    }
    Window::new(group, out).map_err(|e| invalid("--window", e))
}
