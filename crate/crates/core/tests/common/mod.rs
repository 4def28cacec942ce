//! Brute-force oracles and generators shared by the integration tests. The
//! oracles work on plain adjacency matrices and `Vec<bool>` subsets so they
//! share no code with the library.

#![allow(dead_code)]

use ortho_core::{OrthoGraph, PointSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

pub mod rotations;
pub mod scalars;

pub type Adj = Vec<Vec<bool>>;

/// Graph on `n` points from one bit per unordered pair, in the order
/// `(0,1), (0,2), .., (1,2), ..`.
pub fn graph_from_bits(n: usize, bits: u64) -> (OrthoGraph, Adj) {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits >> k & 1 == 1 {
                adj[a][b] = true;
                adj[b][a] = true;
                edges.push((a, b));
            }
            k += 1;
        }
    }
    (OrthoGraph::new(n, &edges).unwrap(), adj)
}

pub fn pairs(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> (OrthoGraph, Adj) {
    let bits = if pairs(n) == 0 { 0 } else { rng.gen::<u64>() & ((1u64 << pairs(n)) - 1) };
    graph_from_bits(n, bits)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = (OrthoGraph, Adj)> {
    (1..=max_n).prop_flat_map(|n| {
        let top = if pairs(n) == 0 { 1 } else { 1u64 << pairs(n) };
        (Just(n), 0..top).prop_map(|(n, bits)| graph_from_bits(n, bits))
    })
}

pub fn to_set(xs: &[bool]) -> PointSet {
    xs.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

pub fn from_set(n: usize, s: PointSet) -> Vec<bool> {
    (0..n).map(|i| s.contains(i)).collect()
}

pub fn perp(adj: &Adj, a: &[bool]) -> Vec<bool> {
    let n = adj.len();
    (0..n).map(|e| (0..n).all(|x| !a[x] || adj[e][x])).collect()
}

pub fn closure(adj: &Adj, a: &[bool]) -> Vec<bool> {
    perp(adj, &perp(adj, a))
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

pub fn is_orthogonal_set(adj: &Adj, a: &[bool]) -> bool {
    let n = adj.len();
    (0..n).all(|x| (0..n).all(|y| x == y || !a[x] || !a[y] || adj[x][y]))
}

pub fn rank(adj: &Adj) -> usize {
    subsets(adj.len())
        .filter(|s| is_orthogonal_set(adj, s))
        .map(|s| s.iter().filter(|&&b| b).count())
        .max()
        .unwrap_or(0)
}

/// `{ perp(S) : S subset of X }`, deduplicated.
pub fn closed_family(adj: &Adj) -> Vec<Vec<bool>> {
    let mut out: Vec<Vec<bool>> = subsets(adj.len()).map(|s| perp(adj, &s)).collect();
    out.sort();
    out.dedup();
    out
}

fn subset_of(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

fn union(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x || *y).collect()
}

fn inter(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

/// The orthomodular law `a <= b => b = a v (b ^ a')`, checked directly.
pub fn orthomodular_oracle(adj: &Adj) -> bool {
    let fam = closed_family(adj);
    fam.iter().all(|a| {
        fam.iter()
            .filter(|b| subset_of(a, b))
            .all(|b| closure(adj, &union(a, &inter(b, &perp(adj, a)))) == *b)
    })
}

/// Every graph on `n` points.
pub fn all_graphs(n: usize) -> impl Iterator<Item = (OrthoGraph, Adj)> {
    (0u64..1 << pairs(n)).map(move |bits| graph_from_bits(n, bits))
}

/// Every graph on at most six points satisfying L1.
pub fn l1_graphs() -> &'static [(usize, u64)] {
    static CACHE: OnceLock<Vec<(usize, u64)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=6)
            .flat_map(|n| (0u64..1 << pairs(n)).map(move |b| (n, b)))
            .filter(|&(n, b)| graph_from_bits(n, b).0.linearity().l1.is_none())
            .collect()
    })
}

pub fn arb_l1_graph() -> impl Strategy<Value = (OrthoGraph, Adj)> {
    let list = l1_graphs();
    (0..list.len()).prop_map(move |i| graph_from_bits(list[i].0, list[i].1))
}
