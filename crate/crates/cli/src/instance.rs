//! Instance files: one TOML document per instance.
//!
//! Schema (scalar keys first, then tables):
//!
//! ```toml
//! vertices = ["v1", "v2", "v3"]          # required, distinct labels
//! edge_order = ["e1", "e2"]              # optional permutation of edge labels
//! vertex_order = ["v1", "v3", "v2"]      # optional permutation of vertex labels
//!
//! [[edges]]                              # labelled form...
//! label = "e1"                           # optional; defaults to labels joined by "-"
//! vertices = ["v1", "v2"]
//!
//! # ...or the bare form: edges = [["v1", "v2"], ["v2", "v3"]]
//!
//! [[pairs]]                              # optional broken pairs for replay
//! b = ["e1", "e2"]
//! b_star = ["e3"]                        # edge labels, or vertex labels for domination
//! ```

use incex::Hypergraph;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_order: Option<Vec<String>>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Bare(Vec<String>),
    Labeled {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        vertices: Vec<String>,
    },
}

impl EdgeSpec {
    fn label_and_vertices(&self) -> (Option<&str>, &[String]) {
        match self {
            EdgeSpec::Bare(vertices) => (None, vertices),
            EdgeSpec::Labeled { label, vertices } => (label.as_deref(), vertices),
        }
    }
}

/// A broken pair by labels; resolved against the edge or vertex universe
/// depending on the polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub b: Vec<String>,
    pub b_star: Vec<String>,
}

/// A file whose only required content is a `pairs` key; instance files
/// qualify, so `--pairs-from-file` may point at the instance itself.
#[derive(Debug, Clone, Deserialize)]
pub struct PairsFile {
    pub pairs: Option<Vec<PairSpec>>,
}

/// An instance with labels resolved into a hypergraph and index orders.
#[derive(Debug, Clone)]
pub struct ResolvedInstance {
    pub hypergraph: Hypergraph,
    pub edge_order: Option<Vec<usize>>,
    pub vertex_order: Option<Vec<usize>>,
    pub pairs: Option<Vec<PairSpec>>,
}

impl InstanceFile {
    /// Parses the TOML text; syntax errors carry line/column diagnostics.
    pub fn parse(text: &str) -> Result<InstanceFile, CliError> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("instance parse error: {e}")))
    }

    /// Canonical TOML rendering; `parse(render(x)) == x` for valid instances.
    pub fn render(&self) -> String {
        toml::to_string_pretty(self).expect("instance files serialize to TOML")
    }

    /// Resolves labels, builds the hypergraph, and validates declared orders.
    pub fn resolve(&self) -> Result<ResolvedInstance, CliError> {
        let vertex_index = |label: &str| {
            self.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| CliError::usage(format!("edge references unknown vertex `{label}`")))
        };

        let mut edges = Vec::with_capacity(self.edges.len());
        for spec in &self.edges {
            let (label, vertex_labels) = spec.label_and_vertices();
            let label = label.map(str::to_string).unwrap_or_else(|| vertex_labels.join("-"));
            let vertices = vertex_labels
                .iter()
                .map(|l| vertex_index(l))
                .collect::<Result<Vec<_>, _>>()?;
            edges.push((label, vertices));
        }

        let hypergraph = Hypergraph::new(self.vertices.clone(), edges)
            .map_err(|e| CliError::usage(format!("invalid instance: {e}")))?;

        let edge_order = self
            .edge_order
            .as_ref()
            .map(|order| resolve_order(order, hypergraph.edge_universe(), "edge_order"))
            .transpose()?;
        let vertex_order = self
            .vertex_order
            .as_ref()
            .map(|order| resolve_order(order, hypergraph.vertex_universe(), "vertex_order"))
            .transpose()?;

        Ok(ResolvedInstance {
            hypergraph,
            edge_order,
            vertex_order,
            pairs: self.pairs.clone(),
        })
    }
}

fn resolve_order(
    order: &[String],
    universe: &incex::IndexUniverse,
    field: &str,
) -> Result<Vec<usize>, CliError> {
    if order.len() != universe.size() {
        return Err(CliError::usage(format!(
            "{field} lists {} labels but the instance declares {}",
            order.len(),
            universe.size()
        )));
    }
    let mut indices = Vec::with_capacity(order.len());
    for label in order {
        let index = universe
            .index_of(label)
            .ok_or_else(|| CliError::usage(format!("{field} references unknown label `{label}`")))?;
        if indices.contains(&index) {
            return Err(CliError::usage(format!("{field} repeats label `{label}`")));
        }
        indices.push(index);
    }
    Ok(indices)
}

/// Built-in instances: `hyper6`, `path<N>`, `cycle<N>`, `star<N>`.
pub fn builtin(name: &str) -> Option<InstanceFile> {
    if name == "hyper6" {
        return Some(hyper6());
    }
    if let Some(n) = name.strip_prefix("path").and_then(|s| s.parse::<usize>().ok()) {
        if (1..=64).contains(&n) {
            return Some(path(n));
        }
    }
    if let Some(n) = name.strip_prefix("cycle").and_then(|s| s.parse::<usize>().ok()) {
        if (3..=64).contains(&n) {
            return Some(cycle(n));
        }
    }
    if let Some(n) = name.strip_prefix("star").and_then(|s| s.parse::<usize>().ok()) {
        if (1..=63).contains(&n) {
            return Some(star(n));
        }
    }
    None
}

pub const BUILTIN_HELP: &str = "hyper6, path<N>, cycle<N>, star<N>";

fn labelled_edge(label: &str, vertices: &[String]) -> EdgeSpec {
    EdgeSpec::Labeled {
        label: Some(label.to_string()),
        vertices: vertices.to_vec(),
    }
}

/// Six vertices, four 3-vertex edges; the bundled worked example. Ships with
/// its edge order and the two chromatic broken pairs for replay.
fn hyper6() -> InstanceFile {
    let v = |is: &[usize]| is.iter().map(|i| i.to_string()).collect::<Vec<_>>();
    InstanceFile {
        vertices: v(&[1, 2, 3, 4, 5, 6]),
        edge_order: Some(vec!["123".into(), "345".into(), "234".into(), "126".into()]),
        vertex_order: None,
        edges: vec![
            labelled_edge("123", &v(&[1, 2, 3])),
            labelled_edge("345", &v(&[3, 4, 5])),
            labelled_edge("234", &v(&[2, 3, 4])),
            labelled_edge("126", &v(&[1, 2, 6])),
        ],
        pairs: Some(vec![
            PairSpec { b: vec!["123".into(), "345".into()], b_star: vec!["234".into()] },
            PairSpec { b: vec!["234".into(), "126".into()], b_star: vec!["123".into()] },
        ]),
    }
}

fn vertex_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn path(n: usize) -> InstanceFile {
    let vertices = vertex_labels(n);
    InstanceFile {
        edges: (1..n)
            .map(|i| labelled_edge(&format!("e{i}"), &[vertices[i - 1].clone(), vertices[i].clone()]))
            .collect(),
        vertices,
        edge_order: None,
        vertex_order: None,
        pairs: None,
    }
}

fn cycle(n: usize) -> InstanceFile {
    let vertices = vertex_labels(n);
    InstanceFile {
        edges: (0..n)
            .map(|i| {
                labelled_edge(
                    &format!("e{}", i + 1),
                    &[vertices[i].clone(), vertices[(i + 1) % n].clone()],
                )
            })
            .collect(),
        vertices,
        edge_order: None,
        vertex_order: None,
        pairs: None,
    }
}

fn star(leaves: usize) -> InstanceFile {
    let vertices = vertex_labels(leaves + 1);
    InstanceFile {
        edges: (1..=leaves)
            .map(|i| labelled_edge(&format!("e{i}"), &[vertices[0].clone(), vertices[i].clone()]))
            .collect(),
        vertices,
        edge_order: None,
        vertex_order: None,
        pairs: None,
    }
}
