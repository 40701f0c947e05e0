//! The power-set lattice of a frame, as explicit graphs and pipelines.
//!
//! These builders realize the subset and superset relations on the power
//! set of a [`Frame`], both as single "obvious" graphs and as the staged
//! Hasse pipelines whose in-place form lives in [`crate::transform`]. The
//! explicit graphs are for verification and costing; the kernels are the
//! production path.

use crate::error::{Error, Result};
use crate::graph::{FiniteSet, Graph, Pipeline, WeightedGraph};
use crate::setfun::Frame;

/// Which order relation on the power set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Arrows (X, Y) with X a subset of Y; its transform sends masses to
    /// beliefs.
    Subset,
    /// Arrows (X, Y) with X a superset of Y; its transform sends masses to
    /// commonalities.
    Superset,
}

/// The power set of a frame as an indexed set, one element per bitmask,
/// labeled for readable witnesses.
pub fn powerset_set(frame: &Frame) -> FiniteSet {
    let labels = (0..frame.subset_count())
        .map(|mask| frame.subset_display(mask))
        .collect();
    FiniteSet::named(
        format!("P({})", frame.elements().join(",")),
        frame.subset_count(),
    )
    .with_labels(labels)
    .expect("one label per subset")
}

/// The full relation graph in one stage: every comparable pair is an arrow.
/// With `exclude_empty`, arrows out of the empty set are dropped. Arrows are
/// generated lazily; at 15 elements the subset relation already has some 14
/// million of them.
pub fn relation_graph(frame: &Frame, relation: Relation, exclude_empty: bool) -> Graph {
    let set = powerset_set(frame);
    let full = frame.full_mask();
    let start = usize::from(exclude_empty);
    let arrows = (start..=full).flat_map(move |x| {
        // supersets of x in increasing mask order, or submasks in
        // decreasing order
        let step = move |&y: &usize| match relation {
            Relation::Subset => (y != full).then(|| (y + 1) | x),
            Relation::Superset => (y != 0).then(|| (y - 1) & x),
        };
        std::iter::successors(Some(x), step).map(move |y| (x, y))
    });
    Graph::new(set.clone(), set, arrows).expect("masks lie in range")
}

fn hasse_stage(frame: &Frame, bit: usize, relation: Relation, exclude_empty: bool) -> Graph {
    let set = powerset_set(frame);
    let start = usize::from(exclude_empty);
    let b = 1usize << bit;
    let mut arrows = Vec::new();
    for x in start..=frame.full_mask() {
        arrows.push((x, x));
        match relation {
            Relation::Subset => {
                if x & b == 0 {
                    arrows.push((x, x | b));
                }
            }
            Relation::Superset => {
                if x & b != 0 {
                    arrows.push((x, x & !b));
                }
            }
        }
    }
    Graph::new(set.clone(), set, arrows).expect("masks lie in range")
}

/// The staged Hasse pipeline for the relation, one stage per frame element,
/// in the given pass order. Each stage moves at most one element.
pub fn hasse_pipeline_with_order(
    frame: &Frame,
    order: &[usize],
    relation: Relation,
    exclude_empty: bool,
) -> Result<Pipeline> {
    check_order(frame, order)?;
    let stages = order
        .iter()
        .map(|&bit| hasse_stage(frame, bit, relation, exclude_empty))
        .collect();
    Pipeline::from_graphs(stages)
}

/// [`hasse_pipeline_with_order`] in frame order.
pub fn hasse_pipeline(frame: &Frame, relation: Relation, exclude_empty: bool) -> Pipeline {
    let order: Vec<usize> = (0..frame.len()).collect();
    hasse_pipeline_with_order(frame, &order, relation, exclude_empty)
        .expect("frame order is a permutation")
}

fn inverse_stage(
    frame: &Frame,
    bit: usize,
    relation: Relation,
    exclude_empty: bool,
) -> WeightedGraph {
    let stage = hasse_stage(frame, bit, relation, exclude_empty);
    let weights = stage
        .arrows()
        .map(|(s, t)| (s, t, if s == t { 1.0 } else { -1.0 }));
    WeightedGraph::new(stage.source().clone(), stage.target().clone(), weights)
        .expect("stage arrows are in range")
}

/// The weighted pipeline with the same stages as [`hasse_pipeline`] but
/// weight -1 on every non-loop arrow. Without `exclude_empty` it inverts
/// the forward pipeline; the `exclude_empty` variant is the staged form of
/// the commonality-to-plausibility transform and is not invertible.
pub fn inverse_hasse_pipeline(frame: &Frame, relation: Relation, exclude_empty: bool) -> Pipeline {
    let stages = (0..frame.len())
        .map(|bit| inverse_stage(frame, bit, relation, exclude_empty))
        .collect();
    Pipeline::from_weighted(stages).expect("stages queue on the power set")
}

fn check_order(frame: &Frame, order: &[usize]) -> Result<()> {
    if order.len() != frame.len() {
        return Err(Error::LengthMismatch {
            expected: frame.len(),
            found: order.len(),
        });
    }
    let mut seen = vec![false; frame.len()];
    for &bit in order {
        if bit >= frame.len() {
            return Err(Error::IndexOutOfRange {
                index: bit,
                size: frame.len(),
            });
        }
        if seen[bit] {
            return Err(Error::DuplicateMember(frame.element(bit).to_string()));
        }
        seen[bit] = true;
    }
    Ok(())
}
