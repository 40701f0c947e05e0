//! Fast in-place transforms on the power-set lattice, and their naive
//! defining-sum counterparts.
//!
//! The fast transforms run one pass per frame element over a single `2^n`
//! buffer. Pass `i` combines each cell with its partner across bit `i`, so a
//! full transform costs `n * 2^(n-1)` additions instead of the roughly `3^n`
//! of the defining sums. The naive versions evaluate the defining sums with
//! a double loop; they serve as oracles for the fast path and as the slow
//! arm of benchmarks. Both flavors tally the semantic additions and
//! multiplications they perform.

use crate::counter::OpCount;
use crate::error::{Error, Result};
use crate::setfun::{Frame, Kind, SetFunction};

/// A supported conversion between set-function kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// mass -> belief over nonempty subsets: `bel(A) = sum of m(X) for
    /// nonempty X inside A`. The standard Dempster-Shafer convention.
    MassToBelief,
    /// mass -> belief over all subsets, including the empty one.
    MassToBeliefFull,
    /// belief -> mass, the exact inverse of [`TransformKind::MassToBeliefFull`].
    BeliefToMass,
    /// mass -> commonality: `q(A) = sum of m(X) for X containing A`.
    MassToCommonality,
    /// commonality -> mass, the exact inverse of [`TransformKind::MassToCommonality`].
    CommonalityToMass,
    /// commonality -> plausibility: alternating sum over nonempty subsets,
    /// then absolute value; `pl(empty set) = 0`.
    CommonalityToPlausibility,
}

impl TransformKind {
    pub fn source_kind(self) -> Kind {
        match self {
            TransformKind::MassToBelief | TransformKind::MassToBeliefFull => Kind::Mass,
            TransformKind::BeliefToMass => Kind::Belief,
            TransformKind::MassToCommonality => Kind::Mass,
            TransformKind::CommonalityToMass | TransformKind::CommonalityToPlausibility => {
                Kind::Commonality
            }
        }
    }

    pub fn target_kind(self) -> Kind {
        match self {
            TransformKind::MassToBelief | TransformKind::MassToBeliefFull => Kind::Belief,
            TransformKind::BeliefToMass => Kind::Mass,
            TransformKind::MassToCommonality => Kind::Commonality,
            TransformKind::CommonalityToMass => Kind::Mass,
            TransformKind::CommonalityToPlausibility => Kind::Plausibility,
        }
    }

    pub const ALL: [TransformKind; 6] = [
        TransformKind::MassToBelief,
        TransformKind::MassToBeliefFull,
        TransformKind::BeliefToMass,
        TransformKind::MassToCommonality,
        TransformKind::CommonalityToMass,
        TransformKind::CommonalityToPlausibility,
    ];
}

fn check_input(kind: TransformKind, f: &SetFunction) -> Result<()> {
    let found = f.kind();
    if found != kind.source_kind() && found != Kind::Raw {
        return Err(Error::KindMismatch {
            expected: kind.source_kind(),
            found,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// in-place passes
//
// One pass pairs each cell with its partner across one bit. The subset
// passes write into the cell holding the bit, the superset passes into the
// cell missing it. `skip_empty_source` drops the single pair whose low cell
// is the empty set; the transforms that exclude the empty set need it both
// for the arithmetic convention and for the exact addition count.
// ---------------------------------------------------------------------------

fn subset_pass(v: &mut [f64], bit: usize, subtract: bool, skip_empty_source: bool) -> u64 {
    let b = 1usize << bit;
    let mut additions = 0;
    let mut first_block = true;
    for block in v.chunks_exact_mut(2 * b) {
        let (lo, hi) = block.split_at_mut(b);
        let mut pairs = lo.iter_mut().zip(hi.iter_mut());
        if first_block && skip_empty_source {
            pairs.next();
            additions += b as u64 - 1;
        } else {
            additions += b as u64;
        }
        first_block = false;
        if subtract {
            for (z, o) in pairs {
                *o -= *z;
            }
        } else {
            for (z, o) in pairs {
                *o += *z;
            }
        }
    }
    additions
}

fn superset_pass(v: &mut [f64], bit: usize, subtract: bool) -> u64 {
    let b = 1usize << bit;
    let mut additions = 0;
    for block in v.chunks_exact_mut(2 * b) {
        let (lo, hi) = block.split_at_mut(b);
        additions += b as u64;
        if subtract {
            for (z, o) in lo.iter_mut().zip(hi.iter_mut()) {
                *z -= *o;
            }
        } else {
            for (z, o) in lo.iter_mut().zip(hi.iter_mut()) {
                *z += *o;
            }
        }
    }
    additions
}

fn run_kernel(kind: TransformKind, values: &mut [f64], order: &[usize]) -> OpCount {
    let mut count = OpCount::new();
    match kind {
        TransformKind::MassToBeliefFull => {
            for &bit in order {
                let adds = subset_pass(values, bit, false, false);
                count.record_stage(adds);
            }
        }
        TransformKind::MassToBelief => {
            values[0] = 0.0;
            for &bit in order {
                let adds = subset_pass(values, bit, false, true);
                count.record_stage(adds);
            }
        }
        TransformKind::BeliefToMass => {
            for &bit in order {
                let adds = subset_pass(values, bit, true, false);
                count.record_stage(adds);
            }
        }
        TransformKind::MassToCommonality => {
            for &bit in order {
                let adds = superset_pass(values, bit, false);
                count.record_stage(adds);
            }
        }
        TransformKind::CommonalityToMass => {
            for &bit in order {
                let adds = superset_pass(values, bit, true);
                count.record_stage(adds);
            }
        }
        TransformKind::CommonalityToPlausibility => {
            values[0] = 0.0;
            for &bit in order {
                let adds = subset_pass(values, bit, true, true);
                count.record_stage(adds);
            }
            for v in values.iter_mut() {
                *v = v.abs();
            }
        }
    }
    count
}

fn validate_order(frame: &Frame, order: &[usize]) -> Result<()> {
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

/// Run a fast transform with passes in the given element order. The result
/// does not depend on the order; this entry point exists to test exactly
/// that and to mirror the staged-pipeline view.
pub fn fast_transform_with_order(
    kind: TransformKind,
    f: &SetFunction,
    order: &[usize],
) -> Result<SetFunction> {
    check_input(kind, f)?;
    validate_order(f.frame(), order)?;
    let mut values = f.values().to_vec();
    run_kernel(kind, &mut values, order);
    SetFunction::new(f.frame().clone(), kind.target_kind(), values)
}

/// Fast transform with the instrumented operation count.
pub fn fast_transform_counted(
    kind: TransformKind,
    f: &SetFunction,
) -> Result<(SetFunction, OpCount)> {
    check_input(kind, f)?;
    let order: Vec<usize> = (0..f.frame().len()).collect();
    let mut values = f.values().to_vec();
    let count = run_kernel(kind, &mut values, &order);
    let out = SetFunction::new(f.frame().clone(), kind.target_kind(), values)?;
    Ok((out, count))
}

/// In-place fast transform: `n * 2^(n-1)` additions, or `n` fewer for the
/// two kinds that exclude the empty set.
pub fn fast_transform(kind: TransformKind, f: &SetFunction) -> Result<SetFunction> {
    fast_transform_counted(kind, f).map(|(out, _)| out)
}

// ---------------------------------------------------------------------------
// naive defining sums
// ---------------------------------------------------------------------------

/// Accumulate `terms` into a single cell, counting one addition per term
/// after the first.
struct Accumulator {
    value: f64,
    terms: u64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            value: 0.0,
            terms: 0,
        }
    }

    fn push(&mut self, term: f64, additions: &mut u64) {
        if self.terms == 0 {
            self.value = term;
        } else {
            self.value += term;
            *additions += 1;
        }
        self.terms += 1;
    }

    fn finish(self) -> f64 {
        if self.terms == 0 {
            0.0
        } else {
            self.value
        }
    }
}

fn sign(parity_bits: usize) -> f64 {
    if parity_bits & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn naive_values(kind: TransformKind, v: &[f64], full: usize) -> (Vec<f64>, u64) {
    let mut out = vec![0.0; v.len()];
    let mut additions = 0u64;
    for (a, slot) in out.iter_mut().enumerate() {
        let mut acc = Accumulator::new();
        match kind {
            TransformKind::MassToBelief | TransformKind::MassToBeliefFull => {
                let include_empty = kind == TransformKind::MassToBeliefFull;
                let mut x = a;
                loop {
                    if x != 0 || include_empty {
                        acc.push(v[x], &mut additions);
                    }
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & a;
                }
            }
            TransformKind::BeliefToMass => {
                let mut x = a;
                loop {
                    acc.push(sign((a ^ x).count_ones() as usize) * v[x], &mut additions);
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & a;
                }
            }
            TransformKind::MassToCommonality => {
                let mut x = a;
                loop {
                    acc.push(v[x], &mut additions);
                    if x == full {
                        break;
                    }
                    x = (x + 1) | a;
                }
            }
            TransformKind::CommonalityToMass => {
                let mut x = a;
                loop {
                    acc.push(sign((x ^ a).count_ones() as usize) * v[x], &mut additions);
                    if x == full {
                        break;
                    }
                    x = (x + 1) | a;
                }
            }
            TransformKind::CommonalityToPlausibility => {
                let mut x = a;
                loop {
                    if x != 0 {
                        acc.push(sign(x.count_ones() as usize + 1) * v[x], &mut additions);
                    }
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & a;
                }
            }
        }
        *slot = acc.finish();
    }
    (out, additions)
}

/// Direct evaluation of the defining sum for each kind, with the
/// instrumented addition count of the one-stage graph algorithm.
pub fn naive_transform_counted(
    kind: TransformKind,
    f: &SetFunction,
) -> Result<(SetFunction, OpCount)> {
    check_input(kind, f)?;
    let (values, additions) = naive_values(kind, f.values(), f.frame().full_mask());
    let mut count = OpCount::new();
    count.record_stage(additions);
    let out = SetFunction::new(f.frame().clone(), kind.target_kind(), values)?;
    Ok((out, count))
}

/// Direct evaluation of the defining sum for each kind. The oracle the fast
/// path is tested against, and the slow arm of benchmarks.
pub fn naive_transform(kind: TransformKind, f: &SetFunction) -> Result<SetFunction> {
    naive_transform_counted(kind, f).map(|(out, _)| out)
}

// ---------------------------------------------------------------------------
// named conveniences
// ---------------------------------------------------------------------------

pub fn mass_to_belief(f: &SetFunction, include_empty: bool) -> Result<SetFunction> {
    let kind = if include_empty {
        TransformKind::MassToBeliefFull
    } else {
        TransformKind::MassToBelief
    };
    fast_transform(kind, f)
}

pub fn belief_to_mass(f: &SetFunction) -> Result<SetFunction> {
    fast_transform(TransformKind::BeliefToMass, f)
}

pub fn mass_to_commonality(f: &SetFunction) -> Result<SetFunction> {
    fast_transform(TransformKind::MassToCommonality, f)
}

pub fn commonality_to_mass(f: &SetFunction) -> Result<SetFunction> {
    fast_transform(TransformKind::CommonalityToMass, f)
}

pub fn commonality_to_plausibility(f: &SetFunction) -> Result<SetFunction> {
    fast_transform(TransformKind::CommonalityToPlausibility, f)
}

// ---------------------------------------------------------------------------
// plausibility from a mass function
// ---------------------------------------------------------------------------

/// The defining sum `pl(A) = sum of m(X) over X meeting A`, evaluated
/// directly. Oracle only; quadratic in the number of subsets.
pub fn naive_plausibility(f: &SetFunction) -> Result<SetFunction> {
    if f.kind() != Kind::Mass && f.kind() != Kind::Raw {
        return Err(Error::KindMismatch {
            expected: Kind::Mass,
            found: f.kind(),
        });
    }
    let v = f.values();
    let mut out = vec![0.0; v.len()];
    for (a, slot) in out.iter_mut().enumerate() {
        *slot = v
            .iter()
            .enumerate()
            .filter(|&(x, _)| x & a != 0)
            .map(|(_, &m)| m)
            .sum();
    }
    SetFunction::new(f.frame().clone(), Kind::Plausibility, out)
}

/// Plausibility via the complement: `pl(A) = 1 - sum of m(X) over X inside
/// the complement of A`. The subset sums are the counted additions
/// (`3^n - 2^n` of them); the final per-cell complement against the unit
/// total is a rescaling, not a graph accumulation, and is not counted.
/// Assumes the masses total 1, which holds for any combination of valid
/// inputs even before normalization.
pub fn complement_plausibility_counted(f: &SetFunction) -> Result<(SetFunction, OpCount)> {
    if f.kind() != Kind::Mass && f.kind() != Kind::Raw {
        return Err(Error::KindMismatch {
            expected: Kind::Mass,
            found: f.kind(),
        });
    }
    let v = f.values();
    let full = f.frame().full_mask();
    let mut out = vec![0.0; v.len()];
    let mut additions = 0u64;
    for (a, slot) in out.iter_mut().enumerate() {
        let complement = full & !a;
        let mut acc = Accumulator::new();
        let mut x = complement;
        loop {
            acc.push(v[x], &mut additions);
            if x == 0 {
                break;
            }
            x = (x - 1) & complement;
        }
        *slot = 1.0 - acc.finish();
    }
    let mut count = OpCount::new();
    count.record_stage(additions);
    let out = SetFunction::new(f.frame().clone(), Kind::Plausibility, out)?;
    Ok((out, count))
}
