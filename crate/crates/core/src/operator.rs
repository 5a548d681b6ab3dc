//! The general diffusion operator `𝔏_H` and its spectrum.
//!
//! `𝔏_H` is self-adjoint and negative semidefinite in the `δ_V`-weighted inner
//! product `(x, y)_V = Σ δ_V(v) x(v) y(v)`. The spectrum is computed by the
//! similarity transform `S = D^{1/2} 𝔏 D^{-1/2}` with `D = diag(δ_V)`, which is
//! symmetric, followed by a standard symmetric eigensolver; eigenvectors are
//! mapped back by `D^{-1/2}` and are then orthonormal in `(·,·)_V`.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::units::{find_twins, find_units, TwinPair, Unit};

/// Tolerance used when comparing eigenvalues.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// A real function on `V(H)` in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexFunction(pub Vec<f64>);

impl VertexFunction {
    pub fn zeros(n: usize) -> Self {
        VertexFunction(vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        VertexFunction(vec![c; n])
    }

    /// `χ_U`
    pub fn indicator(n: usize, set: &[usize]) -> Self {
        let mut x = vec![0.0; n];
        for &v in set {
            x[v] = 1.0;
        }
        VertexFunction(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `supp(x)`
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] != 0.0).collect()
    }

    pub fn scaled(&self, a: f64) -> Self {
        VertexFunction(self.0.iter().map(|x| a * x).collect())
    }

    pub fn axpy(&self, a: f64, other: &VertexFunction) -> Self {
        VertexFunction(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| x + a * y)
                .collect(),
        )
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DomainMismatch { expected, found })
    }
}

/// `(x, y)_V = Σ_v δ_V(v) x(v) y(v)`
pub fn inner_product_v(h: &Hypergraph, x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(h.n_vertices(), x.len())?;
    check_len(h.n_vertices(), y.len())?;
    Ok(weighted_dot(&h.weights().vertex_weight, x, y))
}

/// `(β, γ)_E = Σ_e δ_E(e) β(e) γ(e)`
pub fn inner_product_e(h: &Hypergraph, beta: &[f64], gamma: &[f64]) -> Result<f64> {
    check_len(h.n_edges(), beta.len())?;
    check_len(h.n_edges(), gamma.len())?;
    Ok(weighted_dot(&h.weights().edge_weight, beta, gamma))
}

pub(crate) fn weighted_dot(w: &[f64], x: &[f64], y: &[f64]) -> f64 {
    w.iter().zip(x).zip(y).map(|((w, x), y)| w * x * y).sum()
}

/// The assembled operator.
///
/// `matrix[(v, u)] = Σ_{e ∋ u, v} σ(e)/δ_V(v)` for `u ≠ v` and
/// `matrix[(v, v)] = −Σ_{e ∋ v} σ(e)(|e| − 1)/δ_V(v)`.
#[derive(Debug, Clone)]
pub struct DiffusionOperator {
    pub matrix: DMatrix<f64>,
    pub vertex_weights: Vec<f64>,
    labels: Vec<String>,
    edges: Vec<(Vec<usize>, f64)>,
    stars: Vec<Vec<usize>>,
}

pub fn build_operator(h: &Hypergraph) -> DiffusionOperator {
    let n = h.n_vertices();
    let mut matrix = DMatrix::zeros(n, n);
    let dv = &h.weights().vertex_weight;
    let mut edges = Vec::with_capacity(h.n_edges());
    for (k, e) in h.edges().iter().enumerate() {
        let sigma = h.sigma(k);
        let m = e.members();
        for &v in m {
            for &u in m {
                if u != v {
                    matrix[(v, u)] += sigma / dv[v];
                }
            }
            matrix[(v, v)] -= sigma * (m.len() - 1) as f64 / dv[v];
        }
        edges.push((m.to_vec(), sigma));
    }
    DiffusionOperator {
        matrix,
        vertex_weights: dv.clone(),
        labels: h.vertices().iter().map(|v| v.0.clone()).collect(),
        edges,
        stars: (0..n).map(|v| h.star_of(v).to_vec()).collect(),
    }
}

impl DiffusionOperator {
    pub fn dim(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `𝔏x` through the defining formula.
    ///
    /// Each vertex sums its per-edge terms `σ(e) Σ_{u∈e}(x(u) − x(v))` in
    /// sorted order, so two vertices that see the same multiset of terms get
    /// bitwise identical results. This keeps exact synchronization on units
    /// and σ-preserving twin unions free of rounding drift.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        let mut terms = Vec::new();
        for (v, star) in self.stars.iter().enumerate() {
            terms.clear();
            let xv = x[v];
            for &e in star {
                let (members, sigma) = &self.edges[e];
                let s: f64 = members.iter().map(|&u| x[u] - xv).sum();
                terms.push(sigma * s);
            }
            terms.sort_by(f64::total_cmp);
            out[v] = terms.iter().sum::<f64>() / self.vertex_weights[v];
        }
        out
    }

    /// `𝔏x` through the dense matrix.
    pub fn apply_matrix(&self, x: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(x))
            .iter()
            .copied()
            .collect()
    }

    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        weighted_dot(&self.vertex_weights, x, y)
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        self.inner(x, x).sqrt()
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn row_norm(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues in descending order (`λ₁ = 0` first for connected `H`) with
/// `(·,·)_V`-orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<VertexFunction>,
    pub vertex_weights: Vec<f64>,
}

fn sign_normalize(z: &mut [f64]) {
    let scale = z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = z.iter().find(|x| x.abs() > 1e-9 * scale) {
        if *first < 0.0 {
            z.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Full eigendecomposition of `𝔏_H`.
pub fn spectrum(op: &DiffusionOperator) -> Result<Spectrum> {
    let n = op.dim();
    let root: Vec<f64> = op.vertex_weights.iter().map(|w| w.sqrt()).collect();
    let mut sym = DMatrix::zeros(n, n);
    for v in 0..n {
        for u in 0..n {
            sym[(v, u)] = root[v] * op.matrix[(v, u)] / root[u];
        }
    }
    let sym = (&sym + sym.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000).ok_or_else(|| {
        Error::EigensolverFailure("symmetric QR iteration did not converge".into())
    })?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigensolverFailure("non-finite eigenvalue".into()));
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|i| {
            let mut z: Vec<f64> = eig
                .eigenvectors
                .column(i)
                .iter()
                .zip(&root)
                .map(|(q, r)| q / r)
                .collect();
            sign_normalize(&mut z);
            (eig.eigenvalues[i], z)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    // within groups of numerically equal eigenvalues, order by eigenvector
    let scale = pairs.iter().fold(1.0f64, |m, p| m.max(p.0.abs()));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (pairs[end - 1].0 - pairs[end].0).abs() <= SPECTRAL_TOL * scale {
            end += 1;
        }
        pairs[start..end].sort_by(|a, b| lex_cmp(&b.1, &a.1));
        start = end;
    }

    Ok(Spectrum {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors: pairs.into_iter().map(|p| VertexFunction(p.1)).collect(),
        vertex_weights: op.vertex_weights.clone(),
    })
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `(x, z_i)_V`
    pub fn component(&self, x: &[f64], i: usize) -> f64 {
        weighted_dot(&self.vertex_weights, x, &self.eigenvectors[i].0)
    }

    /// All components `(x, z_i)_V`.
    pub fn components(&self, x: &[f64]) -> Vec<f64> {
        (0..self.len()).map(|i| self.component(x, i)).collect()
    }

    /// `Σ_i c_i z_i`
    pub fn reconstruct(&self, coefficients: &[f64]) -> VertexFunction {
        let mut out = vec![0.0; self.vertex_weights.len()];
        for (c, z) in coefficients.iter().zip(&self.eigenvectors) {
            for (o, zi) in out.iter_mut().zip(&z.0) {
                *o += c * zi;
            }
        }
        VertexFunction(out)
    }

    fn tolerance(&self) -> f64 {
        SPECTRAL_TOL * self.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()))
    }

    /// Index of an eigenvalue equal to `lambda` within tolerance.
    pub fn find(&self, lambda: f64) -> Option<usize> {
        let tol = self.tolerance();
        self.eigenvalues
            .iter()
            .position(|x| (x - lambda).abs() <= tol)
    }

    pub fn multiplicity(&self, lambda: f64) -> usize {
        let tol = self.tolerance();
        self.eigenvalues
            .iter()
            .filter(|x| (*x - lambda).abs() <= tol)
            .count()
    }

    /// `index,eigenvalue` CSV, 1-based index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue\n");
        for (i, l) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, fmt_num(*l)));
        }
        out
    }

    /// Eigenvector matrix: one row per vertex, one column per eigenvector.
    pub fn eigenvectors_csv(&self, labels: &[String]) -> String {
        let mut out = String::from("vertex");
        for i in 0..self.len() {
            out.push_str(&format!(",z{}", i + 1));
        }
        out.push('\n');
        for (v, label) in labels.iter().enumerate() {
            out.push_str(label);
            for z in &self.eigenvectors {
                out.push(',');
                out.push_str(&fmt_num(z.0[v]));
            }
            out.push('\n');
        }
        out
    }
}

/// Fixed-precision rendering used in every text export: 12 decimals,
/// trailing zeros trimmed, values below 1e-12 in magnitude printed as `0`.
pub fn fmt_num(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Where an analytically known eigenpair comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Unit,
    Twin,
    Contraction,
}

/// An eigenvalue with a basis of (part of) its eigenspace.
#[derive(Debug, Clone)]
pub struct AnalyticEigenpair {
    pub eigenvalue: f64,
    pub vectors: Vec<VertexFunction>,
    pub provenance: Provenance,
}

fn constant_weight(h: &Hypergraph, vs: &[usize]) -> Result<f64> {
    if h.vertex_weight_constant_on(vs) {
        Ok(h.vertex_weight(vs[0]))
    } else {
        Err(Error::NonConstantVertexWeight(h.labels(vs)))
    }
}

/// `−Σ_{e∈E₀} δ_E(e)/(c|e|)` where `c` is the common vertex weight on the unit.
pub fn unit_eigenvalue(h: &Hypergraph, unit: &Unit) -> Result<f64> {
    let c = constant_weight(h, &unit.members)?;
    Ok(-unit
        .generating_set
        .iter()
        .map(|&e| h.edge_weight(e) / (c * h.edges()[e].len() as f64))
        .sum::<f64>())
}

/// Eigenvalue and the difference basis `χ_{v_j} − χ_{v_0}` of `T_W`.
pub fn unit_eigenpair(h: &Hypergraph, unit: &Unit) -> Result<AnalyticEigenpair> {
    if unit.len() < 2 {
        return Err(Error::SingletonUnit(h.labels(&unit.members)));
    }
    let eigenvalue = unit_eigenvalue(h, unit)?;
    let n = h.n_vertices();
    let v0 = unit.members[0];
    let vectors = unit.members[1..]
        .iter()
        .map(|&v| {
            let mut y = vec![0.0; n];
            y[v] = 1.0;
            y[v0] = -1.0;
            VertexFunction(y)
        })
        .collect();
    Ok(AnalyticEigenpair {
        eigenvalue,
        vectors,
        provenance: Provenance::Unit,
    })
}

/// `−(1/c) Σ_{e∈E_i} σ(e)|e \ W_i|` for a twin pair; requires constant
/// vertex weight on the union.
pub fn twin_eigenvalue(h: &Hypergraph, pair: &TwinPair) -> Result<f64> {
    let c = constant_weight(h, &pair.members())?;
    Ok(-pair
        .first
        .generating_set
        .iter()
        .map(|&e| h.sigma(e) * pair.first.residue(h, e).len() as f64)
        .sum::<f64>()
        / c)
}

/// The cross-cluster eigenpair `y = |W_j|χ_{W_i} − |W_i|χ_{W_j}`.
pub fn twin_eigenpair(h: &Hypergraph, pair: &TwinPair) -> Result<AnalyticEigenpair> {
    if !pair.sigma_preserving {
        return Err(Error::NotSigmaPreserving(
            h.labels(&pair.first.members),
            h.labels(&pair.second.members),
        ));
    }
    let eigenvalue = twin_eigenvalue(h, pair)?;
    let mut y = vec![0.0; h.n_vertices()];
    let (wi, wj) = (pair.first.len() as f64, pair.second.len() as f64);
    for &v in &pair.first.members {
        y[v] = wj;
    }
    for &v in &pair.second.members {
        y[v] = -wi;
    }
    Ok(AnalyticEigenpair {
        eigenvalue,
        vectors: vec![VertexFunction(y)],
        provenance: Provenance::Twin,
    })
}

/// Result of [`check_invariant_subspace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvarianceCheck {
    pub invariant: bool,
    /// Largest `‖𝔏b − P𝔏b‖_V` over normalized basis vectors `b`, where `P`
    /// projects onto the span.
    pub max_residual: f64,
}

/// Whether `span(basis)` is mapped into itself by `𝔏`.
pub fn check_invariant_subspace(
    op: &DiffusionOperator,
    basis: &[VertexFunction],
) -> Result<InvarianceCheck> {
    for b in basis {
        check_len(op.dim(), b.len())?;
    }
    // weighted Gram–Schmidt, two passes
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let mut q = b.0.clone();
        for _ in 0..2 {
            for o in &ortho {
                let c = op.inner(&q, o);
                q.iter_mut().zip(o).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = op.norm(&q);
        if norm > 1e-12 * op.norm(&b.0).max(f64::MIN_POSITIVE) {
            q.iter_mut().for_each(|x| *x /= norm);
            ortho.push(q);
        }
    }
    let mut max_residual = 0.0f64;
    for q in &ortho {
        let mut r = op.apply_matrix(q);
        for _ in 0..2 {
            for o in &ortho {
                let c = op.inner(&r, o);
                r.iter_mut().zip(o).for_each(|(x, y)| *x -= c * y);
            }
        }
        max_residual = max_residual.max(op.norm(&r));
    }
    Ok(InvarianceCheck {
        invariant: max_residual <= SPECTRAL_TOL * op.row_norm().max(1.0),
        max_residual,
    })
}

/// One analytically derived eigenpair checked against the numeric spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyticEntry {
    pub provenance: Provenance,
    pub cluster: Vec<String>,
    pub eigenvalue: f64,
    pub dimension: usize,
    pub in_spectrum: bool,
    /// Largest `‖𝔏y − λy‖_V / ‖y‖_V` over the basis vectors.
    pub max_residual: f64,
}

/// Analytic eigenpairs that could not be formed, with the reason.
#[derive(Debug, Clone, Serialize)]
pub struct SkippedEntry {
    pub provenance: Provenance,
    pub cluster: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticReport {
    pub entries: Vec<AnalyticEntry>,
    pub skipped: Vec<SkippedEntry>,
}

fn entry(
    op: &DiffusionOperator,
    spectrum: &Spectrum,
    pair: &AnalyticEigenpair,
    cluster: Vec<String>,
) -> AnalyticEntry {
    let max_residual = pair
        .vectors
        .iter()
        .map(|y| {
            let ly = op.apply_matrix(&y.0);
            let r: Vec<f64> = ly
                .iter()
                .zip(&y.0)
                .map(|(a, b)| a - pair.eigenvalue * b)
                .collect();
            op.norm(&r) / op.norm(&y.0)
        })
        .fold(0.0, f64::max);
    AnalyticEntry {
        provenance: pair.provenance,
        cluster,
        eigenvalue: pair.eigenvalue,
        dimension: pair.vectors.len(),
        in_spectrum: spectrum.find(pair.eigenvalue).is_some(),
        max_residual,
    }
}

/// Every unit and twin eigenpair of `h`, checked against `spectrum`.
pub fn analytic_eigenpairs(
    h: &Hypergraph,
    op: &DiffusionOperator,
    spectrum: &Spectrum,
) -> Result<AnalyticReport> {
    let units = find_units(h);
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for u in &units {
        let cluster = h.labels(&u.members);
        match unit_eigenpair(h, u) {
            Ok(p) => entries.push(entry(op, spectrum, &p, cluster)),
            Err(Error::SingletonUnit(_)) => {}
            Err(e) => skipped.push(SkippedEntry {
                provenance: Provenance::Unit,
                cluster,
                reason: e.to_string(),
            }),
        }
    }
    for t in find_twins(h, &units)? {
        let cluster = h.labels(&t.members());
        match twin_eigenpair(h, &t) {
            Ok(p) => entries.push(entry(op, spectrum, &p, cluster)),
            Err(e) => skipped.push(SkippedEntry {
                provenance: Provenance::Twin,
                cluster,
                reason: e.to_string(),
            }),
        }
    }
    Ok(AnalyticReport { entries, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{h1, h5, single_edge};
    use crate::units::find_twins;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn constants_are_in_the_kernel() {
        let op = build_operator(&h1());
        assert_eq!(op.apply(&[1.0; 5]), vec![0.0; 5]);
    }

    #[test]
    fn unit_difference_vector() {
        let op = build_operator(&h1());
        let y = [1.0, -1.0, 0.0, 0.0, 0.0];
        assert_eq!(op.apply(&y), vec![-3.0, 3.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn single_cross_term() {
        let op = build_operator(&h1());
        let ly = op.apply(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(ly[2], 1.0);
        assert_eq!(ly, op.apply_matrix(&[1.0, 0.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn inner_products() {
        let h = h1();
        assert_eq!(inner_product_v(&h, &[1.0; 5], &[1.0; 5]).unwrap(), 5.0);
        let e1 = VertexFunction::indicator(5, &[0]);
        let e2 = VertexFunction::indicator(5, &[1]);
        assert_eq!(inner_product_v(&h, &e1.0, &e2.0).unwrap(), 0.0);
        let h = h.with_vertex_weight("1", 2.0).unwrap();
        assert_eq!(inner_product_v(&h, &e1.0, &e1.0).unwrap(), 2.0);
        assert_eq!(inner_product_e(&h, &[1.0, 1.0], &[1.0, 2.0]).unwrap(), 27.0);
        assert_eq!(
            inner_product_v(&h, &[1.0], &[1.0]).unwrap_err(),
            Error::DomainMismatch {
                expected: 5,
                found: 1
            }
        );
    }

    #[test]
    fn spectrum_of_h5() {
        let s = spectrum(&build_operator(&h5())).unwrap();
        let expected = [0.0, -2.0, -4.0, -4.0, -6.0, -8.0];
        for (a, b) in s.eigenvalues.iter().zip(expected) {
            assert!(close(*a, b), "{a} vs {b}");
        }
        let trace: f64 = s.eigenvalues.iter().sum();
        assert!(close(trace, -24.0));
    }

    #[test]
    fn spectrum_of_single_edge() {
        let s = spectrum(&build_operator(&single_edge())).unwrap();
        for (a, b) in s.eigenvalues.iter().zip([0.0, -3.0, -3.0]) {
            assert!(close(*a, b));
        }
        assert_eq!(s.multiplicity(0.0), 1);
    }

    #[test]
    fn weighted_orthonormality() {
        let h = h1()
            .with_vertex_weight("1", 2.0)
            .unwrap()
            .with_vertex_weight("3", 0.25)
            .unwrap();
        let op = build_operator(&h);
        let s = spectrum(&op).unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let ip = op.inner(&s.eigenvectors[i].0, &s.eigenvectors[j].0);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-9);
            }
            let lz = op.apply_matrix(&s.eigenvectors[i].0);
            for (a, b) in lz.iter().zip(&s.eigenvectors[i].0) {
                assert!((a - s.eigenvalues[i] * b).abs() < 1e-9);
            }
        }
        // kernel vector is constant and positive after sign normalization
        let z = &s.eigenvectors[0].0;
        assert!(z.iter().all(|x| (x - z[0]).abs() < 1e-9 && *x > 0.0));
    }

    #[test]
    fn unit_eigenpairs() {
        let h = h1();
        let units = find_units(&h);
        let p = unit_eigenpair(&h, &units[0]).unwrap();
        assert_eq!(p.eigenvalue, -3.0);
        assert_eq!(p.vectors.len(), 1);
        assert_eq!(p.vectors[0].0, vec![-1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            unit_eigenpair(&h, &units[1]),
            Err(Error::SingletonUnit(_))
        ));

        let h = h5();
        let units = find_units(&h);
        assert_eq!(unit_eigenpair(&h, &units[2]).unwrap().eigenvalue, -8.0);

        let h = h1().with_vertex_weight("2", 3.0).unwrap();
        assert!(matches!(
            unit_eigenpair(&h, &find_units(&h)[0]),
            Err(Error::NonConstantVertexWeight(_))
        ));
    }

    #[test]
    fn twin_eigenpairs() {
        let h = h1();
        let op = build_operator(&h);
        let t = &find_twins(&h, &find_units(&h)).unwrap()[0];
        let p = twin_eigenpair(&h, t).unwrap();
        assert_eq!(p.eigenvalue, -1.0);
        assert_eq!(p.vectors[0].0, vec![2.0, 2.0, 0.0, -2.0, -2.0]);
        assert_eq!(op.apply(&p.vectors[0].0), vec![-2.0, -2.0, 0.0, 2.0, 2.0]);

        let h = h5();
        let t = &find_twins(&h, &find_units(&h)).unwrap()[0];
        let p = twin_eigenpair(&h, t).unwrap();
        assert_eq!(p.eigenvalue, -2.0);
        assert_eq!(p.vectors[0].0, vec![2.0, 2.0, -2.0, -2.0, 0.0, 0.0]);

        let h = h1().with_edge_weight("e2", 18.0).unwrap();
        let t = &find_twins(&h, &find_units(&h)).unwrap()[0];
        assert!(matches!(
            twin_eigenpair(&h, t),
            Err(Error::NotSigmaPreserving(..))
        ));
    }

    #[test]
    fn invariant_subspaces() {
        let h = h1();
        let op = build_operator(&h);
        let p = unit_eigenpair(&h, &find_units(&h)[0]).unwrap();
        let check = check_invariant_subspace(&op, &p.vectors).unwrap();
        assert!(check.invariant);
        assert!(check.max_residual < 1e-12);

        let check = check_invariant_subspace(&op, &[VertexFunction::indicator(5, &[0])]).unwrap();
        assert!(!check.invariant);

        let check = check_invariant_subspace(&op, &[VertexFunction::constant(5, 1.0)]).unwrap();
        assert!(check.invariant);
    }

    #[test]
    fn analytic_report_matches_spectrum() {
        let h = h5();
        let op = build_operator(&h);
        let s = spectrum(&op).unwrap();
        let r = analytic_eigenpairs(&h, &op, &s).unwrap();
        assert_eq!(r.entries.len(), 4);
        assert!(r
            .entries
            .iter()
            .all(|e| e.in_spectrum && e.max_residual < 1e-9));
        assert!(r.skipped.is_empty());
    }

    #[test]
    fn csv_exports() {
        let s = spectrum(&build_operator(&h5())).unwrap();
        let csv = s.to_csv();
        assert_eq!(csv, "index,eigenvalue\n1,0\n2,-2\n3,-4\n4,-4\n5,-6\n6,-8\n");
        let m = s.eigenvectors_csv(&vec!["a".to_string(); 6]);
        assert_eq!(m.lines().count(), 7);
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-1e-15), "0");
    }
}
