//! Labeled graphs encoding sets of Lyapunov inequalities.
//!
//! An inequality `V_j(A_w x) ≤ V_i(x)` becomes an edge `i → j` carrying the
//! mirror of `w`. Reading the labels along a path left to right then gives
//! the order in which the matrices act on the state.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Word,
}

/// Directed multigraph over named nodes with word-labeled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet_size: usize,
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(alphabet_size: usize, nodes: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidGraph("alphabet size must be at least 1".into()));
        }
        if nodes.is_empty() {
            return Err(Error::InvalidGraph("a graph needs at least one node".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = nodes.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidGraph(format!("duplicate node name {dup:?}")));
        }
        for e in &edges {
            if e.from >= nodes.len() || e.to >= nodes.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge {} -> {} references a missing node",
                    e.from, e.to
                )));
            }
            e.label.validate_label(alphabet_size)?;
        }
        Ok(LabeledGraph {
            alphabet_size,
            nodes,
            edges,
        })
    }

    /// Builds a graph from `(from, to, label)` triples over nodes named
    /// `P1, P2, …`; indices are 0-based.
    pub fn from_edges(
        alphabet_size: usize,
        node_count: usize,
        edges: &[(usize, usize, &[usize])],
    ) -> Result<Self> {
        LabeledGraph::new(
            alphabet_size,
            (1..=node_count).map(|i| format!("P{i}")).collect(),
            edges
                .iter()
                .map(|&(from, to, label)| Edge {
                    from,
                    to,
                    label: Word::new(label.to_vec()),
                })
                .collect(),
        )
    }

    /// One node carrying a self-loop for every letter.
    pub fn complete_one_node(alphabet_size: usize) -> Result<Self> {
        let loops: Vec<Vec<usize>> = (1..=alphabet_size).map(|k| vec![k]).collect();
        let edges: Vec<(usize, usize, &[usize])> =
            loops.iter().map(|l| (0, 0, l.as_slice())).collect();
        LabeledGraph::from_edges(alphabet_size, 1, &edges)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn is_single_letter(&self) -> bool {
        self.edges.iter().all(|e| e.label.len() == 1)
    }

    /// Same graph with an extra edge.
    pub fn with_edge(&self, edge: Edge) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        LabeledGraph::new(self.alphabet_size, self.nodes.clone(), edges)
    }

    /// Every edge reversed with its label mirrored, so that a word is
    /// readable here iff its mirror is readable in `self`.
    pub fn reversed(&self) -> LabeledGraph {
        LabeledGraph {
            alphabet_size: self.alphabet_size,
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: e.to,
                    to: e.from,
                    label: e.label.mirror(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: GraphWire = serde_json::from_str(text)?;
        wire.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphWire::from(self)).expect("graph serialises")
    }
}

/// Inequality `V_target(A_product x) ≤ V_source(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub source: usize,
    pub target: usize,
    pub product: Word,
}

/// One edge `source → target` labeled with the mirrored product word per
/// inequality.
pub fn inequalities_to_graph(
    nodes: Vec<String>,
    inequalities: &[Inequality],
    alphabet_size: usize,
) -> Result<LabeledGraph> {
    for ineq in inequalities {
        ineq.product.validate_label(alphabet_size)?;
    }
    LabeledGraph::new(
        alphabet_size,
        nodes,
        inequalities
            .iter()
            .map(|ineq| Edge {
                from: ineq.source,
                to: ineq.target,
                label: ineq.product.mirror(),
            })
            .collect(),
    )
}

/// Where an intermediate node of an expanded graph sits: after `offset`
/// letters of the original edge `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPosition {
    pub edge: usize,
    pub offset: usize,
}

/// A letter-level graph together with its provenance. Original nodes keep
/// their indices and names; intermediate nodes are appended after them.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: LabeledGraph,
    pub original_nodes: usize,
    /// `origin[v]` is `None` for original nodes.
    pub origin: Vec<Option<ChainPosition>>,
}

impl Expansion {
    pub fn is_original(&self, node: usize) -> bool {
        node < self.original_nodes
    }
}

/// Replaces each edge labeled with `t > 1` letters by a chain of `t`
/// single-letter edges through `t − 1` fresh nodes.
pub fn expand_labels(g: &LabeledGraph) -> Expansion {
    let mut nodes = g.nodes.clone();
    let mut taken: HashSet<String> = nodes.iter().cloned().collect();
    let mut origin = vec![None; nodes.len()];
    let mut edges = Vec::with_capacity(g.edges.len());
    for (idx, e) in g.edges.iter().enumerate() {
        let letters = e.label.symbols();
        let mut current = e.from;
        for (offset, &letter) in letters.iter().enumerate() {
            let next = if offset + 1 == letters.len() {
                e.to
            } else {
                let mut name = format!("{}~{}:{}.{}", g.nodes[e.from], g.nodes[e.to], idx, offset + 1);
                while taken.contains(&name) {
                    name.push('\'');
                }
                taken.insert(name.clone());
                nodes.push(name);
                origin.push(Some(ChainPosition {
                    edge: idx,
                    offset: offset + 1,
                }));
                nodes.len() - 1
            };
            edges.push(Edge {
                from: current,
                to: next,
                label: Word::new(vec![letter]),
            });
            current = next;
        }
    }
    Expansion {
        graph: LabeledGraph {
            alphabet_size: g.alphabet_size,
            nodes,
            edges,
        },
        original_nodes: g.nodes.len(),
        origin,
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeWire {
    from: String,
    to: String,
    label: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    alphabet_size: usize,
    nodes: Vec<String>,
    edges: Vec<EdgeWire>,
}

impl From<&LabeledGraph> for GraphWire {
    fn from(g: &LabeledGraph) -> Self {
        GraphWire {
            alphabet_size: g.alphabet_size,
            nodes: g.nodes.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeWire {
                    from: g.nodes[e.from].clone(),
                    to: g.nodes[e.to].clone(),
                    label: e.label.symbols().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<GraphWire> for LabeledGraph {
    type Error = Error;

    fn try_from(wire: GraphWire) -> Result<Self> {
        let lookup = |name: &str| {
            wire.nodes
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidGraph(format!("edge references unknown node {name:?}")))
        };
        let edges = wire
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    from: lookup(&e.from)?,
                    to: lookup(&e.to)?,
                    label: Word::new(e.label.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::new(wire.alphabet_size, wire.nodes, edges)
    }
}
