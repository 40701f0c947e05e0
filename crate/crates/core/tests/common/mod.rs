//! Shared helpers for the integration suites.
#![allow(dead_code)]

use mobius::graph::{FiniteSet, Graph, WeightedGraph};
use mobius::setfun::Frame;

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("e{i}"))).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn graph_on(size: usize, arrows: Vec<(usize, usize)>) -> Graph {
    let set = FiniteSet::of_size(size);
    Graph::new(set.clone(), set, arrows).unwrap()
}

/// Dense integer matrix of a weighted graph whose entries must already be
/// integers; panics if any weight has a fractional part.
pub fn integer_matrix(w: &WeightedGraph) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; w.target().size()]; w.source().size()];
    for (s, t, weight) in w.entries() {
        assert_eq!(
            weight.fract(),
            0.0,
            "weight {weight} at ({s}, {t}) is not integral"
        );
        m[s][t] = weight as i64;
    }
    m
}

pub fn integer_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner > 0 { b[0].len() } else { 0 };
    let mut out = vec![vec![0i64; cols]; rows];
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), inner);
        for (k, &v) in row.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for (j, &w) in b[k].iter().enumerate() {
                out[i][j] += v * w;
            }
        }
    }
    out
}

pub fn identity_matrix(size: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; size]; size];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Build a poset from a strict edge set on `0..size` (edges only from lower
/// to higher index): reflexive-transitive closure of the given covers.
pub fn poset_from_edges(size: usize, edges: &[(usize, usize)]) -> Graph {
    let mut le = vec![false; size * size];
    for i in 0..size {
        le[i * size + i] = true;
    }
    for &(a, b) in edges {
        assert!(a < b && b < size);
        le[a * size + b] = true;
    }
    for k in 0..size {
        for i in 0..size {
            if le[i * size + k] {
                for j in 0..size {
                    if le[k * size + j] {
                        le[i * size + j] = true;
                    }
                }
            }
        }
    }
    let arrows = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| le[i * size + j]);
    graph_on(size, arrows.collect())
}
