//! Finite graphs, weighted graphs, and the transforms they induce.
//!
//! A graph `G` from a finite set `S` to a finite set `T` turns any vector
//! `f` over `S` into a vector over `T`: each target collects the sum of `f`
//! over its preimage. A weighted graph generalizes this to a sparse linear
//! map. A [`Pipeline`] chains such stages and applies them in order, which
//! is in general different from applying the composed relation in one step.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A finite indexed set. Elements are `0..size`; the name and labels are
/// cosmetic (used for display and JSON round-trips).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSet {
    size: usize,
    name: Option<String>,
    labels: Option<Vec<String>>,
}

impl FiniteSet {
    pub fn of_size(size: usize) -> FiniteSet {
        FiniteSet {
            size,
            name: None,
            labels: None,
        }
    }

    pub fn named(name: impl Into<String>, size: usize) -> FiniteSet {
        FiniteSet {
            size,
            name: Some(name.into()),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteSet> {
        if labels.len() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display form of one element: its label if present, else its index.
    pub fn describe(&self, index: usize) -> String {
        match &self.labels {
            Some(labels) if index < labels.len() => labels[index].clone(),
            _ => index.to_string(),
        }
    }
}

fn check_arrow(s: usize, t: usize, source: &FiniteSet, target: &FiniteSet) -> Result<(u32, u32)> {
    if s >= source.size() {
        return Err(Error::IndexOutOfRange {
            index: s,
            size: source.size(),
        });
    }
    if t >= target.size() {
        return Err(Error::IndexOutOfRange {
            index: t,
            size: target.size(),
        });
    }
    Ok((s as u32, t as u32))
}

/// A directed graph from `source` to `target`: a set of (s, t) arrows.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    source: FiniteSet,
    target: FiniteSet,
    /// Sorted and deduplicated.
    arrows: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new<I>(source: FiniteSet, target: FiniteSet, arrows: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut checked = Vec::new();
        for (s, t) in arrows {
            checked.push(check_arrow(s, t, &source, &target)?);
        }
        checked.sort_unstable();
        checked.dedup();
        Ok(Graph {
            source,
            target,
            arrows: checked,
        })
    }

    pub fn empty(source: FiniteSet, target: FiniteSet) -> Graph {
        Graph {
            source,
            target,
            arrows: Vec::new(),
        }
    }

    pub fn identity(set: FiniteSet) -> Graph {
        let arrows = (0..set.size() as u32).map(|i| (i, i)).collect();
        Graph {
            source: set.clone(),
            target: set,
            arrows,
        }
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().map(|&(s, t)| (s as usize, t as usize))
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.arrows.binary_search(&(s as u32, t as u32)).is_ok()
    }

    /// Preimage size of every target.
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.target.size()];
        for &(_, t) in &self.arrows {
            counts[t as usize] += 1;
        }
        counts
    }

    /// Number of targets with at least one incoming arrow.
    pub fn image_size(&self) -> usize {
        self.preimage_counts().iter().filter(|&&c| c > 0).count()
    }

    /// Push a vector across the graph: `out[t] = sum of f[s] over arrows
    /// (s, t)`. Targets with empty preimage get 0.
    pub fn transform(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.source.size() {
            return Err(Error::LengthMismatch {
                expected: self.source.size(),
                found: f.len(),
            });
        }
        let mut out = vec![0.0; self.target.size()];
        for &(s, t) in &self.arrows {
            out[t as usize] += f[s as usize];
        }
        Ok(out)
    }

    /// Same accumulation over u64, used for path counting.
    pub(crate) fn transform_counts(&self, f: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.target.size()];
        for &(s, t) in &self.arrows {
            out[t as usize] += f[s as usize];
        }
        out
    }

    /// Relational composition: arrows of `self` continued by arrows of
    /// `next`. `(s, u)` is present iff some `t` links them.
    pub fn compose(&self, next: &Graph) -> Result<Graph> {
        if self.target.size() != next.source.size() {
            return Err(Error::SetMismatch {
                left: self.target.size(),
                right: next.source.size(),
            });
        }
        // bucket the continuation arrows by source
        let mut by_source: Vec<Vec<u32>> = vec![Vec::new(); next.source.size()];
        for &(t, u) in &next.arrows {
            by_source[t as usize].push(u);
        }
        let mut arrows = Vec::new();
        for &(s, t) in &self.arrows {
            for &u in &by_source[t as usize] {
                arrows.push((s, u));
            }
        }
        arrows.sort_unstable();
        arrows.dedup();
        Ok(Graph {
            source: self.source.clone(),
            target: next.target.clone(),
            arrows,
        })
    }

    /// The 0/1 incidence function of this graph.
    pub fn zeta(&self) -> WeightedGraph {
        let entries = self.arrows.iter().map(|&(s, t)| ((s, t), 1.0)).collect();
        WeightedGraph {
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }
}

/// A sparse real-valued incidence function on `source x target`.
/// Entries with weight exactly 0 are pruned.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    source: FiniteSet,
    target: FiniteSet,
    entries: BTreeMap<(u32, u32), f64>,
}

impl WeightedGraph {
    pub fn new<I>(source: FiniteSet, target: FiniteSet, weights: I) -> Result<WeightedGraph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (s, t, w) in weights {
            let key = check_arrow(s, t, &source, &target)?;
            if w != 0.0 {
                entries.insert(key, w);
            } else {
                entries.remove(&key);
            }
        }
        Ok(WeightedGraph {
            source,
            target,
            entries,
        })
    }

    /// The Kronecker delta of a set: weight 1 on every loop.
    pub fn kronecker(set: FiniteSet) -> WeightedGraph {
        Graph::identity(set).zeta()
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn weight(&self, s: usize, t: usize) -> f64 {
        self.entries
            .get(&(s as u32, t as u32))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries
            .iter()
            .map(|(&(s, t), &w)| (s as usize, t as usize, w))
    }

    /// Number of stored entries per target (the support preimage sizes).
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.target.size()];
        for &(_, t) in self.entries.keys() {
            counts[t as usize] += 1;
        }
        counts
    }

    /// Dense matrix view, row = source element, column = target element.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.target.size()]; self.source.size()];
        for (&(s, t), &w) in &self.entries {
            m[s as usize][t as usize] = w;
        }
        m
    }

    /// Weighted push-forward: `out[t] = sum of f[s] * w(s, t)`.
    pub fn transform(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.source.size() {
            return Err(Error::LengthMismatch {
                expected: self.source.size(),
                found: f.len(),
            });
        }
        let mut out = vec![0.0; self.target.size()];
        for (&(s, t), &w) in &self.entries {
            out[t as usize] += f[s as usize] * w;
        }
        Ok(out)
    }

    /// Incidence-algebra product: `(self * next)(s, u) = sum over t of
    /// self(s, t) * next(t, u)`. Exact zeros are pruned from the result.
    pub fn product(&self, next: &WeightedGraph) -> Result<WeightedGraph> {
        if self.target.size() != next.source.size() {
            return Err(Error::SetMismatch {
                left: self.target.size(),
                right: next.source.size(),
            });
        }
        let mut by_source: Vec<Vec<(u32, f64)>> = vec![Vec::new(); next.source.size()];
        for (&(t, u), &w) in &next.entries {
            by_source[t as usize].push((u, w));
        }
        let mut acc: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (&(s, t), &w1) in &self.entries {
            for &(u, w2) in &by_source[t as usize] {
                *acc.entry((s, u)).or_insert(0.0) += w1 * w2;
            }
        }
        acc.retain(|_, w| *w != 0.0);
        Ok(WeightedGraph {
            source: self.source.clone(),
            target: next.target.clone(),
            entries: acc,
        })
    }
}

/// One stage of a [`Pipeline`].
#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    Plain(Graph),
    Weighted(WeightedGraph),
}

impl Stage {
    pub fn source_set(&self) -> &FiniteSet {
        match self {
            Stage::Plain(g) => g.source(),
            Stage::Weighted(w) => w.source(),
        }
    }

    pub fn target_set(&self) -> &FiniteSet {
        match self {
            Stage::Plain(g) => g.target(),
            Stage::Weighted(w) => w.target(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_set().size()
    }

    pub fn target_size(&self) -> usize {
        self.target_set().size()
    }

    pub fn transform(&self, f: &[f64]) -> Result<Vec<f64>> {
        match self {
            Stage::Plain(g) => g.transform(f),
            Stage::Weighted(w) => w.transform(f),
        }
    }

    pub fn as_plain(&self) -> Option<&Graph> {
        match self {
            Stage::Plain(g) => Some(g),
            Stage::Weighted(_) => None,
        }
    }
}

/// Outcome of [`Pipeline::verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub valid: bool,
    /// A pair whose path count disagrees with membership in the composite,
    /// present iff `valid` is false.
    pub witness: Option<(usize, usize)>,
}

/// A sequence of queueing stages, applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    stages: Vec<Stage>,
}

impl Pipeline {
    pub fn new(stages: Vec<Stage>) -> Result<Pipeline> {
        if stages.is_empty() {
            return Err(Error::EmptyPipeline);
        }
        for (i, pair) in stages.windows(2).enumerate() {
            if pair[0].target_size() != pair[1].source_size() {
                return Err(Error::StageMismatch {
                    position: i,
                    expected: pair[0].target_size(),
                    found: pair[1].source_size(),
                });
            }
        }
        Ok(Pipeline { stages })
    }

    pub fn from_graphs(graphs: Vec<Graph>) -> Result<Pipeline> {
        Pipeline::new(graphs.into_iter().map(Stage::Plain).collect())
    }

    pub fn from_weighted(graphs: Vec<WeightedGraph>) -> Result<Pipeline> {
        Pipeline::new(graphs.into_iter().map(Stage::Weighted).collect())
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn source_size(&self) -> usize {
        self.stages[0].source_size()
    }

    pub fn target_size(&self) -> usize {
        self.stages[self.stages.len() - 1].target_size()
    }

    /// Apply the stage transforms in order. This is the composite of the
    /// stage functionals, not the transform of the composite graph.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        let mut current = self.stages[0].transform(f)?;
        for stage in &self.stages[1..] {
            current = stage.transform(&current)?;
        }
        Ok(current)
    }

    fn plain_stages(&self) -> Result<Vec<&Graph>> {
        self.stages
            .iter()
            .map(|s| s.as_plain().ok_or(Error::PlainStagesRequired))
            .collect()
    }

    /// The composed relation of all stages (plain stages only).
    pub fn composite(&self) -> Result<Graph> {
        let stages = self.plain_stages()?;
        let mut acc = stages[0].clone();
        for g in &stages[1..] {
            acc = acc.compose(g)?;
        }
        Ok(acc)
    }

    /// Number of stage-by-stage paths from `s` to `t` (plain stages only).
    /// Computed by forward accumulation, one stage at a time.
    pub fn count_paths(&self, s: usize, t: usize) -> Result<u64> {
        let stages = self.plain_stages()?;
        if s >= self.source_size() {
            return Err(Error::IndexOutOfRange {
                index: s,
                size: self.source_size(),
            });
        }
        if t >= self.target_size() {
            return Err(Error::IndexOutOfRange {
                index: t,
                size: self.target_size(),
            });
        }
        let mut counts = vec![0u64; self.source_size()];
        counts[s] = 1;
        for g in stages {
            counts = g.transform_counts(&counts);
        }
        Ok(counts[t])
    }

    /// Check that this pipeline computes the transform of its composite:
    /// every composite arrow must have exactly one path and every other
    /// pair none. Returns the first offending pair as a witness.
    pub fn verify_decomposition(&self) -> Result<DecompositionCheck> {
        let stages = self.plain_stages()?;
        let composite = self.composite()?;
        for s in 0..self.source_size() {
            let mut counts = vec![0u64; self.source_size()];
            counts[s] = 1;
            for g in &stages {
                counts = g.transform_counts(&counts);
            }
            for (t, &count) in counts.iter().enumerate() {
                let expected = u64::from(composite.contains(s, t));
                if count != expected {
                    return Ok(DecompositionCheck {
                        valid: false,
                        witness: Some((s, t)),
                    });
                }
            }
        }
        Ok(DecompositionCheck {
            valid: true,
            witness: None,
        })
    }
}
