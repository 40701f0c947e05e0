//! The addition-count cost model for graphs and pipelines, plus the
//! closed-form costs of the subset-lattice algorithms.
//!
//! The cost of a graph charges each target one addition per incoming arrow
//! beyond the first: `sum over t of max(0, |preimage(t)| - 1)`, which equals
//! `#arrows - #image`. A pipeline costs the sum of its stages. For weighted
//! stages the same rule is applied to the support; multiplying by a stored
//! weight is not an addition.

use crate::graph::{Graph, Pipeline, Stage, WeightedGraph};
use crate::setfun::MAX_ELEMENTS;

/// Additions performed by the one-stage transform of a graph.
pub fn cost_of_graph(g: &Graph) -> u64 {
    g.preimage_counts()
        .iter()
        .map(|&c| c.saturating_sub(1) as u64)
        .sum()
}

/// The same rule on the support of a weighted graph.
pub fn cost_of_weighted(w: &WeightedGraph) -> u64 {
    w.preimage_counts()
        .iter()
        .map(|&c| c.saturating_sub(1) as u64)
        .sum()
}

pub fn cost_of_stage(stage: &Stage) -> u64 {
    match stage {
        Stage::Plain(g) => cost_of_graph(g),
        Stage::Weighted(w) => cost_of_weighted(w),
    }
}

/// Total cost of a pipeline: the sum of its stage costs.
pub fn cost_of_pipeline(p: &Pipeline) -> u64 {
    p.stages().iter().map(cost_of_stage).sum()
}

/// Closed-form operation counts for the subset-lattice algorithms on a
/// frame of `n` elements.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticRow {
    pub n: u32,
    /// 2^n subsets.
    pub powerset_size: u64,
    /// One-stage transform of the nonempty-subset relation: 3^n - 2^(n+1) + 1.
    pub cost_obvious: u64,
    /// Staged Hasse transform of the same relation: n 2^(n-1) - n.
    pub cost_hasse: u64,
    /// cost_obvious / cost_hasse. NaN when both are zero (n = 1).
    pub cost_ratio: f64,
    /// Slow mass-pair-to-plausibility road: 2^n(2^n - 1) + 3^n - 2^n additions.
    pub slow_additions: u64,
    /// ... and 2^(2n) multiplications.
    pub slow_multiplications: u64,
    /// Fast road: n 2^n + n(2^(n-1) - 1) additions.
    pub fast_additions: u64,
    /// ... and 2^n multiplications.
    pub fast_multiplications: u64,
    pub addition_ratio: f64,
    pub multiplication_ratio: f64,
}

/// Evaluate the closed forms. `n` must be between 1 and [`MAX_ELEMENTS`],
/// which keeps every count inside u64.
pub fn analytic_costs(n: u32) -> AnalyticRow {
    assert!(
        (1..=MAX_ELEMENTS as u32).contains(&n),
        "n = {n} outside 1..={MAX_ELEMENTS}"
    );
    let n64 = u64::from(n);
    let pow2 = 1u64 << n;
    let pow3 = 3u64.pow(n);
    let half = pow2 / 2;
    let cost_obvious = pow3 + 1 - 2 * pow2;
    let cost_hasse = n64 * half - n64;
    let slow_additions = pow2 * (pow2 - 1) + pow3 - pow2;
    let slow_multiplications = pow2 * pow2;
    let fast_additions = n64 * pow2 + n64 * (half - 1);
    let fast_multiplications = pow2;
    AnalyticRow {
        n,
        powerset_size: pow2,
        cost_obvious,
        cost_hasse,
        cost_ratio: cost_obvious as f64 / cost_hasse as f64,
        slow_additions,
        slow_multiplications,
        fast_additions,
        fast_multiplications,
        addition_ratio: slow_additions as f64 / fast_additions as f64,
        multiplication_ratio: slow_multiplications as f64 / fast_multiplications as f64,
    }
}
