//! Synchronization-preserving clusters in dynamical networks on hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! | module | contents |
//! |--------|----------|
//! | [`hypergraph`] | weighted hypergraphs, validation, JSON I/O |
//! | [`units`] | units, twin units, twin classes, the contraction `Ĥ` |
//! | [`operator`] | the general diffusion operator, weighted inner products, spectra, analytic eigenpairs |
//! | [`dynamics`] | discrete and continuous network models, synchronization reports |
//! | [`stability`] | eigendirection perturbation analysis and stability certificates |
//! | [`cli`] | the `hypersync` command-line front end |
//!
//! The diffusion operator acts on `x ∈ ℝ^{V(H)}` by
//!
//! ```text
//! (𝔏x)(v) = Σ_{e ∋ v} δ_E(e) / (δ_V(v) |e|²) · Σ_{u ∈ e} (x(u) − x(v))
//! ```
//!
//! and the discrete network evolves as `x_{t+1} = g(x_t) + ε 𝔏 f(x_t)`.
//!
//! ```
//! use hypersync::{samples, units, operator};
//!
//! let h = samples::h5();
//! let found = units::find_units(&h);
//! assert_eq!(found.len(), 3);
//! let op = operator::build_operator(&h);
//! let spectrum = operator::spectrum(&op).unwrap();
//! assert!((spectrum.eigenvalues[5] + 8.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hypergraph;
pub mod operator;
pub mod samples;
pub mod stability;
pub mod units;

pub use error::{Error, Result};
pub use hypergraph::{EdgeId, Hypergraph, VertexId, WeightPreset};
