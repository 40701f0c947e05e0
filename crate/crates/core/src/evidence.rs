//! Combination of evidence: Dempster's rule and the mass-to-plausibility
//! pipeline, each with a slow reference path and a fast path through
//! commonalities.
//!
//! Combination here is unnormalized: mass landing on the empty set stays
//! there and is reported as the conflict. [`normalize`] redistributes it on
//! request.

use crate::counter::OpCount;
use crate::error::{Error, Result};
use crate::setfun::{validate_mass, Kind, SetFunction};
use crate::transform::{complement_plausibility_counted, fast_transform_counted, TransformKind};

/// Threshold below which the mass left after conflict is treated as zero.
pub const TOTAL_CONFLICT_EPSILON: f64 = 1e-12;

/// The outcome of combining two mass functions.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationResult {
    /// The combined mass, unnormalized unless `normalized` says otherwise.
    pub combined: SetFunction,
    /// Mass assigned to the empty set by the combination, before any
    /// normalization. Purely informational.
    pub conflict: f64,
    pub normalized: bool,
}

fn check_frames(m1: &SetFunction, m2: &SetFunction) -> Result<()> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    Ok(())
}

fn check_mass_kind(f: &SetFunction) -> Result<()> {
    if f.kind() != Kind::Mass && f.kind() != Kind::Raw {
        return Err(Error::KindMismatch {
            expected: Kind::Mass,
            found: f.kind(),
        });
    }
    Ok(())
}

/// Dempster's rule by the defining double loop: every pair of focal cells
/// is multiplied and accumulated on the intersection. Exactly `2^(2n)`
/// multiplications and `2^n (2^n - 1)` additions.
///
/// With `strict`, both inputs must be nonnegative and sum to 1 (mass on the
/// empty set is allowed, so already-combined functions can be fed back in).
pub fn dempster_naive_counted(
    m1: &SetFunction,
    m2: &SetFunction,
    strict: bool,
) -> Result<(CombinationResult, OpCount)> {
    check_frames(m1, m2)?;
    check_mass_kind(m1)?;
    check_mass_kind(m2)?;
    if strict {
        for (name, m) in [("first", m1), ("second", m2)] {
            let report = validate_mass(m, false);
            if !report.is_valid() {
                return Err(Error::InvalidMass(format!(
                    "{name} operand: {}",
                    report.summary()
                )));
            }
        }
    }
    let len = m1.frame().subset_count();
    let (v1, v2) = (m1.values(), m2.values());
    let mut out = vec![0.0; len];
    let mut seen = vec![false; len];
    let mut count = OpCount::new();
    let mut additions = 0u64;
    for (x, &m1x) in v1.iter().enumerate() {
        for (y, &m2y) in v2.iter().enumerate() {
            let cell = x & y;
            let product = m1x * m2y;
            count.multiplications += 1;
            if seen[cell] {
                out[cell] += product;
                additions += 1;
            } else {
                out[cell] = product;
                seen[cell] = true;
            }
        }
    }
    count.record_stage(additions);
    let conflict = out[0];
    let combined = SetFunction::new(m1.frame().clone(), Kind::Mass, out)?;
    Ok((
        CombinationResult {
            combined,
            conflict,
            normalized: false,
        },
        count,
    ))
}

pub fn dempster_naive(
    m1: &SetFunction,
    m2: &SetFunction,
    strict: bool,
) -> Result<CombinationResult> {
    dempster_naive_counted(m1, m2, strict).map(|(r, _)| r)
}

/// Pointwise product of two commonality functions, which is the commonality
/// of the combination. `2^n` multiplications.
pub fn commonality_product_counted(
    q1: &SetFunction,
    q2: &SetFunction,
) -> Result<(SetFunction, OpCount)> {
    check_frames(q1, q2)?;
    for q in [q1, q2] {
        if q.kind() != Kind::Commonality && q.kind() != Kind::Raw {
            return Err(Error::KindMismatch {
                expected: Kind::Commonality,
                found: q.kind(),
            });
        }
    }
    let values: Vec<f64> = q1
        .values()
        .iter()
        .zip(q2.values())
        .map(|(a, b)| a * b)
        .collect();
    let mut count = OpCount::new();
    count.record_multiplications(values.len() as u64);
    let out = SetFunction::new(q1.frame().clone(), Kind::Commonality, values)?;
    Ok((out, count))
}

pub fn commonality_product(q1: &SetFunction, q2: &SetFunction) -> Result<SetFunction> {
    commonality_product_counted(q1, q2).map(|(q, _)| q)
}

/// Dempster's rule through commonalities: transform both masses, multiply
/// pointwise, transform back. Far fewer operations than the double loop,
/// same result up to rounding.
pub fn dempster_fast_counted(
    m1: &SetFunction,
    m2: &SetFunction,
) -> Result<(CombinationResult, OpCount)> {
    check_frames(m1, m2)?;
    let mut count = OpCount::new();
    let (q1, c1) = fast_transform_counted(TransformKind::MassToCommonality, m1)?;
    let (q2, c2) = fast_transform_counted(TransformKind::MassToCommonality, m2)?;
    let (q, cp) = commonality_product_counted(&q1, &q2)?;
    let (combined, cb) = fast_transform_counted(TransformKind::CommonalityToMass, &q)?;
    for c in [&c1, &c2, &cp, &cb] {
        count.absorb(c);
    }
    let conflict = combined.value(0);
    Ok((
        CombinationResult {
            combined,
            conflict,
            normalized: false,
        },
        count,
    ))
}

pub fn dempster_fast(m1: &SetFunction, m2: &SetFunction) -> Result<CombinationResult> {
    dempster_fast_counted(m1, m2).map(|(r, _)| r)
}

/// The full fast road from two masses to the plausibility of their
/// combination: masses to commonalities, pointwise product, commonality to
/// plausibility.
pub fn combine_to_plausibility_counted(
    m1: &SetFunction,
    m2: &SetFunction,
) -> Result<(SetFunction, OpCount)> {
    check_frames(m1, m2)?;
    let mut count = OpCount::new();
    let (q1, c1) = fast_transform_counted(TransformKind::MassToCommonality, m1)?;
    let (q2, c2) = fast_transform_counted(TransformKind::MassToCommonality, m2)?;
    let (q, cp) = commonality_product_counted(&q1, &q2)?;
    let (pl, cz) = fast_transform_counted(TransformKind::CommonalityToPlausibility, &q)?;
    for c in [&c1, &c2, &cp, &cz] {
        count.absorb(c);
    }
    Ok((pl, count))
}

pub fn combine_to_plausibility(m1: &SetFunction, m2: &SetFunction) -> Result<SetFunction> {
    combine_to_plausibility_counted(m1, m2).map(|(pl, _)| pl)
}

/// The slow road: the defining double loop, then plausibility through the
/// complement subset sums.
pub fn combine_to_plausibility_naive_counted(
    m1: &SetFunction,
    m2: &SetFunction,
) -> Result<(SetFunction, OpCount)> {
    let (result, mut count) = dempster_naive_counted(m1, m2, false)?;
    let (pl, c2) = complement_plausibility_counted(&result.combined)?;
    count.absorb(&c2);
    Ok((pl, count))
}

pub fn combine_to_plausibility_naive(m1: &SetFunction, m2: &SetFunction) -> Result<SetFunction> {
    combine_to_plausibility_naive_counted(m1, m2).map(|(pl, _)| pl)
}

/// Move the conflict mass back onto the nonempty subsets: zero the empty
/// cell and rescale the rest by `1 / (1 - conflict)`. Fails when the
/// conflict is total.
pub fn normalize(result: &CombinationResult) -> Result<CombinationResult> {
    let conflict = result.combined.value(0);
    let remaining = 1.0 - conflict;
    if remaining <= TOTAL_CONFLICT_EPSILON {
        return Err(Error::TotalConflict);
    }
    let mut values = result.combined.values().to_vec();
    values[0] = 0.0;
    for v in &mut values[1..] {
        *v /= remaining;
    }
    let combined = SetFunction::new(result.combined.frame().clone(), Kind::Mass, values)?;
    Ok(CombinationResult {
        combined,
        conflict: result.conflict,
        normalized: true,
    })
}
