#![allow(dead_code)]

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use hypersync::hypergraph::{Hypergraph, WeightConfig, WeightPreset};
use hypersync::units::{find_twins, find_units};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn label(i: usize) -> String {
    format!("v{i:02}")
}

fn build(n: usize, edges: &[BTreeSet<usize>], preset: WeightPreset) -> Hypergraph {
    let owned: Vec<(String, Vec<String>)> = edges
        .iter()
        .enumerate()
        .map(|(k, e)| (format!("e{k:02}"), e.iter().map(|&v| label(v)).collect()))
        .collect();
    let borrowed: Vec<(&str, &[String])> = owned
        .iter()
        .map(|(id, m)| (id.as_str(), m.as_slice()))
        .collect();
    let h = Hypergraph::from_edges(&borrowed, preset).expect("generated hypergraph is valid");
    assert_eq!(h.n_vertices(), n);
    h
}

/// Connected hypergraph with `n` vertices and at most `m` hyperedges of size
/// `2..=max_edge`: a covering chain of edges first, then random extras.
pub fn random_connected(
    rng: &mut ChaCha8Rng,
    n: RangeInclusive<usize>,
    m: RangeInclusive<usize>,
    max_edge: usize,
) -> Hypergraph {
    let n = rng.gen_range(n);
    let m = rng.gen_range(m);
    assert!(n >= 2 && max_edge >= 2);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<BTreeSet<usize>> = Vec::new();
    let mut covered = 1;
    while covered < n {
        let fresh = rng.gen_range(1..max_edge).min(n - covered);
        let mut e = BTreeSet::new();
        e.insert(order[rng.gen_range(0..covered)]);
        for &v in &order[covered..covered + fresh] {
            e.insert(v);
        }
        covered += fresh;
        edges.push(e);
    }
    let mut attempts = 0;
    while edges.len() < m && attempts < 10 * m {
        attempts += 1;
        let size = rng.gen_range(2..=max_edge.min(n));
        let e: BTreeSet<usize> = order.choose_multiple(rng, size).copied().collect();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    build(n, &edges, WeightPreset::UNIFORM)
}

/// Random weights in `[lo, hi]` on every vertex and hyperedge.
pub fn random_weights(rng: &mut ChaCha8Rng, h: &Hypergraph, lo: f64, hi: f64) -> Hypergraph {
    h.with_weights(WeightConfig {
        vertex_weight: (0..h.n_vertices())
            .map(|_| rng.gen_range(lo..=hi))
            .collect(),
        edge_weight: (0..h.n_edges()).map(|_| rng.gen_range(lo..=hi)).collect(),
    })
    .unwrap()
}

/// Hypergraph whose hyperedges are unions of vertex blocks, with optional
/// mirrored blocks that become twin units. Block sizes are drawn from
/// `sizes`.
pub fn unit_rich(
    rng: &mut ChaCha8Rng,
    blocks: RangeInclusive<usize>,
    sizes: &[usize],
    mirrors: RangeInclusive<usize>,
) -> Hypergraph {
    let blocks = rng.gen_range(blocks);
    let mirrors = rng.gen_range(mirrors);
    loop {
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        for _ in 0..blocks {
            let s = *sizes.choose(rng).unwrap();
            members.push((next..next + s).collect());
            next += s;
        }
        // chain of block pairs for connectivity, then random unions
        let mut block_edges: Vec<BTreeSet<usize>> = Vec::new();
        for b in 1..blocks {
            let a = rng.gen_range(0..b);
            block_edges.push([a, b].into_iter().collect());
        }
        for _ in 0..rng.gen_range(0..=blocks) {
            let k = rng.gen_range(2..=blocks.min(3));
            let picked: BTreeSet<usize> = (0..blocks)
                .collect::<Vec<_>>()
                .choose_multiple(rng, k)
                .copied()
                .collect();
            if !block_edges.contains(&picked) {
                block_edges.push(picked);
            }
        }
        let mut edges: Vec<BTreeSet<usize>> = block_edges
            .iter()
            .map(|bs| {
                bs.iter()
                    .flat_map(|&b| members[b].iter().copied())
                    .collect()
            })
            .collect();
        for _ in 0..mirrors {
            let a = rng.gen_range(0..members.len());
            let mirror: Vec<usize> = (next..next + members[a].len()).collect();
            next += mirror.len();
            let src: BTreeSet<usize> = members[a].iter().copied().collect();
            let copies: Vec<BTreeSet<usize>> = edges
                .iter()
                .filter(|e| src.is_subset(e))
                .map(|e| {
                    e.difference(&src)
                        .copied()
                        .chain(mirror.iter().copied())
                        .collect()
                })
                .collect();
            edges.extend(copies);
            members.push(mirror);
        }
        let mut dedup: Vec<BTreeSet<usize>> = Vec::new();
        for e in edges {
            if e.len() >= 2 && !dedup.contains(&e) {
                dedup.push(e);
            }
        }
        let covered: BTreeSet<usize> = dedup.iter().flatten().copied().collect();
        if covered.len() == next {
            return build(next, &dedup, WeightPreset::UNIFORM);
        }
    }
}

/// Random weights satisfying the sync-preservation hypotheses: `δ_V`
/// constant on each union of σ-preserving twins (and so on each unit),
/// random `δ_E` with σ copied along every canonical bijection.
pub fn compatible_weights(rng: &mut ChaCha8Rng, h: &Hypergraph) -> Hypergraph {
    let units = find_units(h);
    let mut vertex_weight = vec![0.0; h.n_vertices()];
    let mut edge_weight: Vec<f64> = (0..h.n_edges()).map(|_| rng.gen_range(0.5..=4.0)).collect();
    let twins = find_twins(h, &units).unwrap();
    // union-find over units linked by twin pairs
    let mut parent: Vec<usize> = (0..units.len()).collect();
    fn root(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            i = p[i];
        }
        i
    }
    let pos = |u: &hypersync::units::Unit| units.iter().position(|x| x == u).unwrap();
    for t in &twins {
        let (a, b) = (
            root(&mut parent, pos(&t.first)),
            root(&mut parent, pos(&t.second)),
        );
        parent[b] = a;
        for &(e, f) in &t.bijection {
            let sigma = edge_weight[e] / (h.edges()[e].len() as f64).powi(2);
            edge_weight[f] = sigma * (h.edges()[f].len() as f64).powi(2);
        }
    }
    let class_weight: Vec<f64> = (0..units.len()).map(|_| rng.gen_range(0.5..=3.0)).collect();
    for (k, u) in units.iter().enumerate() {
        let r = root(&mut parent, k);
        for &v in &u.members {
            vertex_weight[v] = class_weight[r];
        }
    }
    h.with_weights(WeightConfig {
        vertex_weight,
        edge_weight,
    })
    .unwrap()
}

/// Units by set algebra: for every `E₀ ⊆ E`,
/// `W_{E₀} = (⋂_{e∈E₀} e) \ (⋃_{e∉E₀} e)`, kept when nonempty.
pub fn brute_force_units(h: &Hypergraph) -> BTreeSet<BTreeSet<usize>> {
    let m = h.n_edges();
    assert!(m <= 16);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let mut w: BTreeSet<usize> = (0..h.n_vertices()).collect();
        for (k, e) in h.edges().iter().enumerate() {
            let members: BTreeSet<usize> = e.members().iter().copied().collect();
            if mask & (1 << k) != 0 {
                w = w.intersection(&members).copied().collect();
            } else {
                w = w.difference(&members).copied().collect();
            }
        }
        if !w.is_empty() {
            out.insert(w);
        }
    }
    out
}

/// `exp(tM) x` by scaling and squaring with a Taylor series.
pub fn expm_apply(m: &DMatrix<f64>, t: f64, x: &[f64]) -> Vec<f64> {
    let a = m * t;
    let norm = a.iter().map(|v| v.abs()).fold(0.0, f64::max) * a.nrows() as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = a / 2f64.powi(squarings as i32);
    let n = a.nrows();
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &a / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    (sum * DVector::from_column_slice(x))
        .iter()
        .copied()
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Dense `𝔏_H` from its entries: off-diagonal `Σ_{e ∋ u,v} σ(e)/δ_V(v)`,
/// diagonal `−Σ_{e ∋ v} σ(e)(|e|−1)/δ_V(v)`.
pub fn dense_operator(h: &Hypergraph) -> DMatrix<f64> {
    let n = h.n_vertices();
    let mut m = DMatrix::zeros(n, n);
    for (k, e) in h.edges().iter().enumerate() {
        let sigma = h.edge_weight(k) / (e.len() * e.len()) as f64;
        for &v in e.members() {
            for &u in e.members() {
                if u == v {
                    m[(v, v)] -= sigma * (e.len() - 1) as f64 / h.vertex_weight(v);
                } else {
                    m[(v, u)] += sigma / h.vertex_weight(v);
                }
            }
        }
    }
    m
}

/// Eigenvalues of a real matrix with real spectrum via the Schur form,
/// sorted descending.
pub fn schur_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = m
        .clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

pub fn apply_dense(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(x))
        .iter()
        .copied()
        .collect()
}

pub fn weighted_dot(h: &Hypergraph, x: &[f64], y: &[f64]) -> f64 {
    (0..h.n_vertices())
        .map(|v| h.vertex_weight(v) * x[v] * y[v])
        .sum()
}

pub fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}
