//! Small reference hypergraphs used throughout the docs, examples and tests.
//!
//! All use the `uniform` preset: `δ_V ≡ 1`, `δ_E(e) = |e|²`, hence `σ ≡ 1`.

use crate::hypergraph::{Hypergraph, WeightPreset};

/// `e1 = {1,2,3}`, `e2 = {3,4,5}`. Units `{1,2}`, `{3}`, `{4,5}`; the outer
/// two are twins.
pub fn h1() -> Hypergraph {
    Hypergraph::from_edges(
        &[("e1", &["1", "2", "3"][..]), ("e2", &["3", "4", "5"][..])],
        WeightPreset::UNIFORM,
    )
    .expect("h1 is valid")
}

/// `e1 = {1,2,3}`, `e2 = {3,4}`, `e3 = {4,5}`. Four units, no twins.
pub fn h4() -> Hypergraph {
    Hypergraph::from_edges(
        &[
            ("e1", &["1", "2", "3"][..]),
            ("e2", &["3", "4"][..]),
            ("e3", &["4", "5"][..]),
        ],
        WeightPreset::UNIFORM,
    )
    .expect("h4 is valid")
}

/// `e1 = {1,2,5,6}`, `e2 = {3,4,5,6}`. Three units of size two; `{1,2}` and
/// `{3,4}` are twins. Spectrum `{0, −2, −4, −4, −6, −8}`.
pub fn h5() -> Hypergraph {
    Hypergraph::from_edges(
        &[
            ("e1", &["1", "2", "5", "6"][..]),
            ("e2", &["3", "4", "5", "6"][..]),
        ],
        WeightPreset::UNIFORM,
    )
    .expect("h5 is valid")
}

/// A single hyperedge `{a,b,c}`.
pub fn single_edge() -> Hypergraph {
    Hypergraph::from_edges(&[("e", &["a", "b", "c"][..])], WeightPreset::UNIFORM)
        .expect("single edge is valid")
}
