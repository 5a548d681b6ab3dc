//! Finite weighted hypergraphs.
//!
//! A [`Hypergraph`] is immutable once validated. Vertices are kept in the
//! lexicographic order of their labels and hyperedges in the lexicographic
//! order of their ids; every matrix, report and file produced downstream uses
//! these canonical indices.
//!
//! Weights follow the usual two-inner-product setup: `δ_V` on vertices and
//! `δ_E` on hyperedges, both strictly positive. Derived quantities
//! `σ(e) = δ_E(e)/|e|²` and `ρ(e) = δ_E(e)/|e|` are exposed as accessors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex label. Unique within a hypergraph; ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

/// Hyperedge identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

/// A hyperedge with its members stored as sorted vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    pub id: EdgeId,
    members: Vec<usize>,
}

impl Hyperedge {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// How `δ_V` is chosen when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexWeighting {
    /// `δ_V ≡ 1`
    Unit,
    /// `δ_V(v) = |E_v(H)|`
    Degree,
}

/// How `δ_E` is chosen when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeighting {
    /// `δ_E(e) = |e|²`, so `σ ≡ 1`.
    SquaredCardinality,
    /// `δ_E(e) = |e|²/(|e|−1)`
    CardinalityNormalized,
}

/// Named weight configuration.
///
/// Accepted names: `uniform`, `cardinality-normalized`, `degree-vertex`, and
/// `+`-joined combinations such as `degree-vertex+cardinality-normalized`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightPreset {
    pub vertex: VertexWeighting,
    pub edge: EdgeWeighting,
}

impl Default for WeightPreset {
    fn default() -> Self {
        WeightPreset::UNIFORM
    }
}

impl WeightPreset {
    pub const UNIFORM: WeightPreset = WeightPreset {
        vertex: VertexWeighting::Unit,
        edge: EdgeWeighting::SquaredCardinality,
    };
    pub const CARDINALITY_NORMALIZED: WeightPreset = WeightPreset {
        vertex: VertexWeighting::Unit,
        edge: EdgeWeighting::CardinalityNormalized,
    };
    pub const DEGREE_VERTEX: WeightPreset = WeightPreset {
        vertex: VertexWeighting::Degree,
        edge: EdgeWeighting::SquaredCardinality,
    };
    /// Degree vertex weights with cardinality-normalized edges: every diagonal
    /// entry of the operator equals −1.
    pub const NORMALIZED: WeightPreset = WeightPreset {
        vertex: VertexWeighting::Degree,
        edge: EdgeWeighting::CardinalityNormalized,
    };

    pub fn vertex_weight(&self, degree: usize) -> f64 {
        match self.vertex {
            VertexWeighting::Unit => 1.0,
            VertexWeighting::Degree => degree as f64,
        }
    }

    pub fn edge_weight(&self, cardinality: usize) -> f64 {
        let k = cardinality as f64;
        match self.edge {
            EdgeWeighting::SquaredCardinality => k * k,
            EdgeWeighting::CardinalityNormalized => k * k / (k - 1.0),
        }
    }
}

impl FromStr for WeightPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut preset = WeightPreset::UNIFORM;
        for part in s.split('+').map(str::trim) {
            match part {
                "uniform" => {}
                "cardinality-normalized" => preset.edge = EdgeWeighting::CardinalityNormalized,
                "degree-vertex" => preset.vertex = VertexWeighting::Degree,
                _ => return Err(Error::UnknownWeightPreset(s.to_string())),
            }
        }
        Ok(preset)
    }
}

impl fmt::Display for WeightPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.vertex, self.edge) {
            (VertexWeighting::Unit, EdgeWeighting::SquaredCardinality) => "uniform",
            (VertexWeighting::Unit, EdgeWeighting::CardinalityNormalized) => {
                "cardinality-normalized"
            }
            (VertexWeighting::Degree, EdgeWeighting::SquaredCardinality) => "degree-vertex",
            (VertexWeighting::Degree, EdgeWeighting::CardinalityNormalized) => {
                "degree-vertex+cardinality-normalized"
            }
        };
        f.write_str(name)
    }
}

/// `δ_V` and `δ_E`, indexed canonically.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfig {
    pub vertex_weight: Vec<f64>,
    pub edge_weight: Vec<f64>,
}

/// Hyperedge as it appears in the JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub id: String,
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

/// Unvalidated hypergraph, the serde image of the JSON file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHypergraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_weights: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_preset: Option<String>,
    /// Free-form provenance block; ignored by validation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl RawHypergraph {
    pub fn validate(&self) -> Result<Hypergraph> {
        validate(self)
    }
}

/// Validated, connected, loop-free hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    vertices: Vec<VertexId>,
    edges: Vec<Hyperedge>,
    weights: WeightConfig,
    stars: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

fn check_weight(target: impl FnOnce() -> String, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveWeight {
            target: target(),
            value,
        })
    }
}

/// Validate a raw hypergraph.
///
/// Checks, in order: nonempty vertex set, label uniqueness, edge membership,
/// loops, duplicate member sets, weight positivity, isolated vertices and
/// connectivity (traversal of the vertex–hyperedge incidence structure).
pub fn validate(raw: &RawHypergraph) -> Result<Hypergraph> {
    let preset: WeightPreset = match &raw.weight_preset {
        Some(name) => name.parse()?,
        None => WeightPreset::default(),
    };
    let edges: Vec<(String, Vec<String>, Option<f64>)> = raw
        .edges
        .iter()
        .map(|e| (e.id.clone(), e.members.clone(), e.delta))
        .collect();
    let vertex_weights = raw.vertex_weights.clone().unwrap_or_default();
    Hypergraph::assemble(&raw.vertices, &edges, &vertex_weights, preset, false)
}

impl Hypergraph {
    /// Build from `(edge id, members)` pairs; the vertex set is the union of
    /// all members. Weights come from `preset`.
    pub fn from_edges<S: AsRef<str>>(
        edges: &[(&str, &[S])],
        preset: WeightPreset,
    ) -> Result<Hypergraph> {
        let mut vertices = BTreeSet::new();
        for (_, members) in edges {
            for m in members.iter() {
                vertices.insert(m.as_ref().to_string());
            }
        }
        let vertices: Vec<String> = vertices.into_iter().collect();
        let edges: Vec<(String, Vec<String>, Option<f64>)> = edges
            .iter()
            .map(|(id, members)| {
                (
                    id.to_string(),
                    members.iter().map(|m| m.as_ref().to_string()).collect(),
                    None,
                )
            })
            .collect();
        Hypergraph::assemble(&vertices, &edges, &BTreeMap::new(), preset, false)
    }

    /// Shared constructor. `allow_trivial` admits the one-vertex hypergraph
    /// with no hyperedges, which arises only as the contraction of a
    /// single-unit hypergraph.
    pub(crate) fn assemble(
        vertices: &[String],
        edges: &[(String, Vec<String>, Option<f64>)],
        vertex_weights: &BTreeMap<String, f64>,
        preset: WeightPreset,
        allow_trivial: bool,
    ) -> Result<Hypergraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut labels: Vec<String> = vertices.to_vec();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        if labels.iter().any(|l| l.is_empty()) {
            return Err(Error::EmptyLabel);
        }
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();

        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].0.cmp(&edges[b].0));
        let mut built: Vec<Hyperedge> = Vec::with_capacity(edges.len());
        let mut deltas: Vec<Option<f64>> = Vec::with_capacity(edges.len());
        for &k in &order {
            let (id, members, delta) = &edges[k];
            if id.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if let Some(prev) = built.last() {
                if prev.id.0 == *id {
                    return Err(Error::DuplicateEdgeId(id.clone()));
                }
            }
            if members.is_empty() {
                return Err(Error::EmptyEdge(id.clone()));
            }
            let mut idx = Vec::with_capacity(members.len());
            for m in members {
                let v = *index.get(m).ok_or_else(|| Error::UnknownVertexInEdge {
                    edge: id.clone(),
                    vertex: m.clone(),
                })?;
                idx.push(v);
            }
            idx.sort_unstable();
            for w in idx.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::RepeatedMember {
                        edge: id.clone(),
                        vertex: labels[w[0]].clone(),
                    });
                }
            }
            if idx.len() == 1 {
                return Err(Error::LoopEdge(id.clone()));
            }
            built.push(Hyperedge {
                id: EdgeId(id.clone()),
                members: idx,
            });
            deltas.push(*delta);
        }

        let mut by_members: HashMap<&[usize], &str> = HashMap::new();
        for e in &built {
            if let Some(other) = by_members.insert(&e.members, &e.id.0) {
                return Err(Error::DuplicateEdge(other.to_string(), e.id.0.clone()));
            }
        }

        let n = labels.len();
        let mut stars = vec![Vec::new(); n];
        for (k, e) in built.iter().enumerate() {
            for &v in &e.members {
                stars[v].push(k);
            }
        }

        for label in vertex_weights.keys() {
            if !index.contains_key(label) {
                return Err(Error::UnknownVertex(label.clone()));
            }
        }
        let mut vertex_weight = Vec::with_capacity(n);
        for (v, label) in labels.iter().enumerate() {
            let w = match vertex_weights.get(label) {
                Some(&w) => w,
                None => preset.vertex_weight(stars[v].len()),
            };
            vertex_weight.push(check_weight(|| format!("vertex `{label}`"), w)?);
        }
        let mut edge_weight = Vec::with_capacity(built.len());
        for (e, delta) in built.iter().zip(&deltas) {
            let w = delta.unwrap_or_else(|| preset.edge_weight(e.len()));
            edge_weight.push(check_weight(|| format!("hyperedge `{}`", e.id), w)?);
        }

        let trivial = allow_trivial && n == 1 && built.is_empty();
        if !trivial {
            if let Some(v) = stars.iter().position(Vec::is_empty) {
                return Err(Error::IsolatedVertex(labels[v].clone()));
            }
            let components = count_components(n, &built);
            if components > 1 {
                return Err(Error::Disconnected { components });
            }
        }

        let edge_index = built
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.0.clone(), i))
            .collect();
        Ok(Hypergraph {
            vertices: labels.into_iter().map(VertexId).collect(),
            edges: built,
            weights: WeightConfig {
                vertex_weight,
                edge_weight,
            },
            stars,
            index,
            edge_index,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn weights(&self) -> &WeightConfig {
        &self.weights
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].0
    }

    pub fn labels(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.label(v).to_string()).collect()
    }

    pub fn edge_ids(&self, es: &[usize]) -> Vec<String> {
        es.iter().map(|&e| self.edges[e].id.0.clone()).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Resolve a list of labels to sorted, deduplicated indices.
    pub fn vertex_set(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut out = labels
            .iter()
            .map(|l| self.vertex_index(l))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn vertex_weight(&self, v: usize) -> f64 {
        self.weights.vertex_weight[v]
    }

    pub fn edge_weight(&self, e: usize) -> f64 {
        self.weights.edge_weight[e]
    }

    /// `σ(e) = δ_E(e)/|e|²`
    pub fn sigma(&self, e: usize) -> f64 {
        let k = self.edges[e].len() as f64;
        self.weights.edge_weight[e] / (k * k)
    }

    /// `ρ(e) = δ_E(e)/|e|`
    pub fn rho(&self, e: usize) -> f64 {
        self.weights.edge_weight[e] / self.edges[e].len() as f64
    }

    /// Star of a vertex by index: sorted edge indices containing it.
    pub fn star_of(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    /// `E_v(H)` by label.
    pub fn star(&self, label: &str) -> Result<Vec<EdgeId>> {
        let v = self.vertex_index(label)?;
        Ok(self.stars[v]
            .iter()
            .map(|&e| self.edges[e].id.clone())
            .collect())
    }

    /// `(rk(H), cr(H))`: largest and smallest hyperedge cardinality.
    pub fn rank_corank(&self) -> (usize, usize) {
        let sizes = self.edges.iter().map(Hyperedge::len);
        let rank = sizes.clone().max().unwrap_or(0);
        let corank = sizes.min().unwrap_or(0);
        (rank, corank)
    }

    /// Copy with one hyperedge weight replaced.
    pub fn with_edge_weight(&self, id: &str, delta: f64) -> Result<Hypergraph> {
        let e = self.edge_index(id)?;
        let mut out = self.clone();
        out.weights.edge_weight[e] = check_weight(|| format!("hyperedge `{id}`"), delta)?;
        Ok(out)
    }

    /// Copy with one vertex weight replaced.
    pub fn with_vertex_weight(&self, label: &str, weight: f64) -> Result<Hypergraph> {
        let v = self.vertex_index(label)?;
        let mut out = self.clone();
        out.weights.vertex_weight[v] = check_weight(|| format!("vertex `{label}`"), weight)?;
        Ok(out)
    }

    /// Copy with every weight recomputed from `preset`.
    pub fn with_preset(&self, preset: WeightPreset) -> Hypergraph {
        let mut out = self.clone();
        for v in 0..self.n_vertices() {
            out.weights.vertex_weight[v] = preset.vertex_weight(self.stars[v].len());
        }
        for (k, e) in self.edges.iter().enumerate() {
            out.weights.edge_weight[k] = preset.edge_weight(e.len());
        }
        out
    }

    /// Copy with all weights replaced.
    pub fn with_weights(&self, weights: WeightConfig) -> Result<Hypergraph> {
        if weights.vertex_weight.len() != self.n_vertices() {
            return Err(Error::DomainMismatch {
                expected: self.n_vertices(),
                found: weights.vertex_weight.len(),
            });
        }
        if weights.edge_weight.len() != self.n_edges() {
            return Err(Error::DomainMismatch {
                expected: self.n_edges(),
                found: weights.edge_weight.len(),
            });
        }
        for (v, &w) in weights.vertex_weight.iter().enumerate() {
            check_weight(|| format!("vertex `{}`", self.label(v)), w)?;
        }
        for (e, &w) in weights.edge_weight.iter().enumerate() {
            check_weight(|| format!("hyperedge `{}`", self.edges[e].id), w)?;
        }
        let mut out = self.clone();
        out.weights = weights;
        Ok(out)
    }

    /// Whether `δ_V` is constant on `vs` (relative tolerance 1e-12).
    pub fn vertex_weight_constant_on(&self, vs: &[usize]) -> bool {
        match vs.first() {
            None => true,
            Some(&first) => {
                let c = self.vertex_weight(first);
                vs.iter()
                    .all(|&v| close_rel(self.vertex_weight(v), c, 1e-12))
            }
        }
    }

    /// Serialize into the raw JSON form, with every weight explicit.
    pub fn to_raw(&self) -> RawHypergraph {
        RawHypergraph {
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| RawEdge {
                    id: e.id.0.clone(),
                    members: self.labels(&e.members),
                    delta: Some(self.weights.edge_weight[k]),
                })
                .collect(),
            vertex_weights: Some(
                self.vertices
                    .iter()
                    .zip(&self.weights.vertex_weight)
                    .map(|(v, &w)| (v.0.clone(), w))
                    .collect(),
            ),
            weight_preset: None,
            meta: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Hypergraph> {
        let raw: RawHypergraph = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        raw.validate()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Hypergraph> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Hypergraph::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

pub(crate) fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn count_components(n: usize, edges: &[Hyperedge]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges {
        let root = find(&mut parent, e.members[0]);
        for &v in &e.members[1..] {
            let r = find(&mut parent, v);
            if r != root {
                parent[r] = root;
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}
