//! Units, twin units and the contraction hypergraph.
//!
//! A unit `W_{E₀}` is the set of all vertices whose star is exactly `E₀`;
//! units therefore partition `V(H)` and are found by grouping vertices by
//! star. Two units are twins when their generating sets correspond one-to-one
//! with identical residues `e \ W`. The contraction `Ĥ` collapses every unit
//! to a single vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{close_rel, Hypergraph, WeightPreset};
use crate::operator::VertexFunction;

/// Relative tolerance for comparing `σ` values.
pub const SIGMA_RTOL: f64 = 1e-12;

/// A unit: members (sorted vertex indices) and generating set (sorted edge
/// indices). Every member has star equal to the generating set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub members: Vec<usize>,
    pub generating_set: Vec<usize>,
}

impl Unit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// `e \ W` for an edge of the generating set, as sorted vertex indices.
    pub fn residue(&self, h: &Hypergraph, e: usize) -> Vec<usize> {
        h.edges()[e]
            .members()
            .iter()
            .copied()
            .filter(|&v| !self.contains(v))
            .collect()
    }

    pub fn report(&self, h: &Hypergraph) -> UnitReport {
        UnitReport {
            members: h.labels(&self.members),
            generating_set: h.edge_ids(&self.generating_set),
        }
    }
}

/// A pair of twin units with its canonical bijection.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinPair {
    pub first: Unit,
    pub second: Unit,
    /// `(e, 𝔣(e))` for every `e` in `first.generating_set`, sorted by `e`.
    pub bijection: Vec<(usize, usize)>,
    pub sigma_preserving: bool,
}

impl TwinPair {
    /// The same pair seen from the other side, with the inverse bijection.
    pub fn reversed(&self) -> TwinPair {
        let mut bijection: Vec<(usize, usize)> =
            self.bijection.iter().map(|&(a, b)| (b, a)).collect();
        bijection.sort_unstable();
        TwinPair {
            first: self.second.clone(),
            second: self.first.clone(),
            bijection,
            sigma_preserving: self.sigma_preserving,
        }
    }

    /// Sorted union of the two units.
    pub fn members(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .first
            .members
            .iter()
            .chain(&self.second.members)
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    pub fn report(&self, h: &Hypergraph) -> TwinReport {
        TwinReport {
            first: h.labels(&self.first.members),
            second: h.labels(&self.second.members),
            bijection: self
                .bijection
                .iter()
                .map(|&(a, b)| (h.edges()[a].id.0.clone(), h.edges()[b].id.0.clone()))
                .collect(),
            sigma_preserving: self.sigma_preserving,
        }
    }
}

/// A maximal set of units that are pairwise σ-preserving twins.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinClass {
    pub units: Vec<Unit>,
}

impl TwinClass {
    pub fn members(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .units
            .iter()
            .flat_map(|u| u.members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitReport {
    pub members: Vec<String>,
    pub generating_set: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwinReport {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub bijection: BTreeMap<String, String>,
    pub sigma_preserving: bool,
}

/// All units of `h`, ordered by smallest member.
pub fn find_units(h: &Hypergraph) -> Vec<Unit> {
    let mut groups: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for v in 0..h.n_vertices() {
        groups.entry(h.star_of(v)).or_default().push(v);
    }
    let mut units: Vec<Unit> = groups
        .into_iter()
        .map(|(star, members)| Unit {
            members,
            generating_set: star.to_vec(),
        })
        .collect();
    units.sort_by_key(|u| u.members[0]);
    units
}

/// The unit containing vertex `v`.
pub fn unit_of(units: &[Unit], v: usize) -> Option<usize> {
    units.iter().position(|u| u.contains(v))
}

fn residue_map(h: &Hypergraph, unit: &Unit) -> Result<BTreeMap<Vec<usize>, usize>> {
    let mut map = BTreeMap::new();
    for &e in &unit.generating_set {
        if let Some(prev) = map.insert(unit.residue(h, e), e) {
            return Err(Error::NoCanonicalBijection(
                h.edges()[prev].id.0.clone(),
                h.edges()[e].id.0.clone(),
            ));
        }
    }
    Ok(map)
}

/// Test whether two units are twins; returns the pair with its canonical
/// bijection when they are.
pub fn twin_pair(h: &Hypergraph, a: &Unit, b: &Unit) -> Result<Option<TwinPair>> {
    if a.generating_set.len() != b.generating_set.len() || a == b {
        return Ok(None);
    }
    let ra = residue_map(h, a)?;
    let rb = residue_map(h, b)?;
    if !ra.keys().eq(rb.keys()) {
        return Ok(None);
    }
    let mut bijection: Vec<(usize, usize)> = ra.iter().map(|(res, &e)| (e, rb[res])).collect();
    bijection.sort_unstable();
    let sigma_preserving = bijection
        .iter()
        .all(|&(e, f)| close_rel(h.sigma(e), h.sigma(f), SIGMA_RTOL));
    Ok(Some(TwinPair {
        first: a.clone(),
        second: b.clone(),
        bijection,
        sigma_preserving,
    }))
}

/// All unordered twin pairs among `units`, in canonical order.
pub fn find_twins(h: &Hypergraph, units: &[Unit]) -> Result<Vec<TwinPair>> {
    let mut out = Vec::new();
    for (i, a) in units.iter().enumerate() {
        for b in &units[i + 1..] {
            if let Some(pair) = twin_pair(h, a, b)? {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

/// Partition the units into maximal classes of pairwise σ-preserving twins.
///
/// Classes are grown as connected components of the σ-preserving twin graph
/// and then verified pairwise; a component containing a non-twin pair is
/// reported as [`Error::NonTransitiveTwinRelation`].
pub fn twin_classes(h: &Hypergraph) -> Result<Vec<TwinClass>> {
    let units = find_units(h);
    let twins = find_twins(h, &units)?;
    let n = units.len();
    let pos = |u: &Unit| units.iter().position(|x| x == u).expect("unit from list");
    let mut adjacent = vec![vec![false; n]; n];
    for t in twins.iter().filter(|t| t.sigma_preserving) {
        let (i, j) = (pos(&t.first), pos(&t.second));
        adjacent[i][j] = true;
        adjacent[j][i] = true;
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < component.len() {
            let i = component[k];
            for j in 0..n {
                if adjacent[i][j] && !seen[j] {
                    seen[j] = true;
                    component.push(j);
                }
            }
            k += 1;
        }
        component.sort_unstable();
        for (x, &i) in component.iter().enumerate() {
            for &j in &component[x + 1..] {
                if !adjacent[i][j] {
                    return Err(Error::NonTransitiveTwinRelation(
                        h.labels(&units[i].members),
                        h.labels(&units[j].members),
                    ));
                }
            }
        }
        classes.push(TwinClass {
            units: component.into_iter().map(|i| units[i].clone()).collect(),
        });
    }
    Ok(classes)
}

/// The contraction `Ĥ` of a hypergraph together with the maps relating it to
/// the original.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub quotient: Hypergraph,
    /// Units of the original, in the order of [`find_units`].
    pub units: Vec<Unit>,
    /// `π`: original vertex index → quotient vertex index.
    pub vertex_map: Vec<usize>,
    /// `π̂`: original edge index → quotient edge index; `None` when the edge
    /// lies inside a single unit and collapses to one vertex.
    pub edge_map: Vec<Option<usize>>,
    /// `σ̂_H(ê) = Σ_{e ∈ π̂⁻¹(ê)} σ_H(e)` per quotient edge.
    pub lifted_sigma: Vec<f64>,
    /// Original edges dropped because their image is a single vertex.
    pub collapsed_edges: Vec<usize>,
    pub c_v: f64,
    pub c_e: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, Option<String>>,
    pub collapsed_edges: Vec<String>,
    pub c_v: f64,
    pub c_e: f64,
}

fn quotient_label(h: &Hypergraph, unit: &Unit) -> String {
    format!("u{}", h.labels(&unit.members).join("_"))
}

/// Build `Ĥ`.
///
/// One quotient vertex per unit with `δ_V(Ĥ)(π(v)) = δ_V(v)/c_V`; one quotient
/// edge per distinct image `π̂(e)` with
/// `σ_Ĥ(ê) = (1/c_E) Σ_{e ∈ π̂⁻¹(ê)} σ_H(e)` and `δ_Ê(ê) = σ_Ĥ(ê)|ê|²`.
pub fn contract(h: &Hypergraph, c_v: f64, c_e: f64) -> Result<Contraction> {
    for (name, c) in [("c_V", c_v), ("c_E", c_e)] {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {c}"
            )));
        }
    }
    let units = find_units(h);
    let mut unit_index = vec![0usize; h.n_vertices()];
    for (k, u) in units.iter().enumerate() {
        for &v in &u.members {
            unit_index[v] = k;
        }
    }
    let labels: Vec<String> = units.iter().map(|u| quotient_label(h, u)).collect();
    let mut vertex_weights = BTreeMap::new();
    for (u, label) in units.iter().zip(&labels) {
        if !h.vertex_weight_constant_on(&u.members) {
            return Err(Error::InconsistentVertexWeight(h.labels(&u.members)));
        }
        vertex_weights.insert(label.clone(), h.vertex_weight(u.members[0]) / c_v);
    }

    let mut images: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut collapsed_edges = Vec::new();
    for (k, e) in h.edges().iter().enumerate() {
        let image: BTreeSet<usize> = e.members().iter().map(|&v| unit_index[v]).collect();
        if image.len() < 2 {
            collapsed_edges.push(k);
        } else {
            images
                .entry(image.into_iter().collect())
                .or_default()
                .push(k);
        }
    }

    let mut edges = Vec::with_capacity(images.len());
    let mut lifted = BTreeMap::new();
    for (image, preimage) in &images {
        let id = h.edge_ids(preimage).join("+");
        let sigma_hat: f64 = preimage.iter().map(|&e| h.sigma(e)).sum();
        let size = image.len() as f64;
        let delta = sigma_hat / c_e * size * size;
        let members = image.iter().map(|&u| labels[u].clone()).collect();
        lifted.insert(id.clone(), sigma_hat);
        edges.push((id, members, Some(delta)));
    }

    let quotient = Hypergraph::assemble(
        &labels,
        &edges,
        &vertex_weights,
        WeightPreset::UNIFORM,
        true,
    )?;
    let vertex_map = (0..h.n_vertices())
        .map(|v| quotient.vertex_index(&labels[unit_index[v]]))
        .collect::<Result<Vec<_>>>()?;
    let mut edge_map = vec![None; h.n_edges()];
    for preimage in images.values() {
        let id = h.edge_ids(preimage).join("+");
        let qe = quotient.edge_index(&id)?;
        for &e in preimage {
            edge_map[e] = Some(qe);
        }
    }
    let lifted_sigma = quotient.edges().iter().map(|e| lifted[&e.id.0]).collect();
    Ok(Contraction {
        quotient,
        units,
        vertex_map,
        edge_map,
        lifted_sigma,
        collapsed_edges,
        c_v,
        c_e,
    })
}

impl Contraction {
    /// Size of the unit containing original vertex `v`.
    pub fn unit_size_of(&self, v: usize) -> usize {
        let q = self.vertex_map[v];
        self.vertex_map.iter().filter(|&&w| w == q).count()
    }

    /// `ỳ(v) = y(π(v)) / |W_{E_v}|`
    pub fn lift_to_h(&self, y: &VertexFunction) -> Result<VertexFunction> {
        self.check_quotient_domain(y)?;
        let sizes = self.unit_sizes();
        Ok(VertexFunction(
            self.vertex_map
                .iter()
                .map(|&q| y.0[q] / sizes[q] as f64)
                .collect(),
        ))
    }

    /// `x̄(v) = x(π(v))`
    pub fn pull_back(&self, x: &VertexFunction) -> Result<VertexFunction> {
        self.check_quotient_domain(x)?;
        Ok(VertexFunction(
            self.vertex_map.iter().map(|&q| x.0[q]).collect(),
        ))
    }

    /// `α̂(ê) = Σ_{e ∈ π̂⁻¹(ê)} α(e)` for a function on the original edges.
    /// Collapsed edges contribute nothing.
    pub fn lift_edge_function(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        if alpha.len() != self.edge_map.len() {
            return Err(Error::DomainMismatch {
                expected: self.edge_map.len(),
                found: alpha.len(),
            });
        }
        Ok(sum_over_preimages(
            &self.edge_map,
            alpha,
            self.quotient.n_edges(),
        ))
    }

    fn unit_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.quotient.n_vertices()];
        for &q in &self.vertex_map {
            sizes[q] += 1;
        }
        sizes
    }

    fn check_quotient_domain(&self, y: &VertexFunction) -> Result<()> {
        if y.0.len() != self.quotient.n_vertices() {
            return Err(Error::DomainMismatch {
                expected: self.quotient.n_vertices(),
                found: y.0.len(),
            });
        }
        Ok(())
    }

    pub fn report(&self, h: &Hypergraph) -> ContractionReport {
        ContractionReport {
            vertex_map: (0..h.n_vertices())
                .map(|v| {
                    (
                        h.label(v).to_string(),
                        self.quotient.label(self.vertex_map[v]).to_string(),
                    )
                })
                .collect(),
            edge_map: h
                .edges()
                .iter()
                .zip(&self.edge_map)
                .map(|(e, q)| {
                    (
                        e.id.0.clone(),
                        q.map(|q| self.quotient.edges()[q].id.0.clone()),
                    )
                })
                .collect(),
            collapsed_edges: h.edge_ids(&self.collapsed_edges),
            c_v: self.c_v,
            c_e: self.c_e,
        }
    }
}

fn sum_over_preimages(edge_map: &[Option<usize>], alpha: &[f64], n_out: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_out];
    for (a, q) in alpha.iter().zip(edge_map) {
        if let Some(q) = q {
            out[*q] += a;
        }
    }
    out
}
