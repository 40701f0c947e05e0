//! Frames of discernment and dense set functions on their power sets.
//!
//! A [`Frame`] is an ordered finite set of element labels. Subsets are coded
//! as bitmasks: element `i` of the frame corresponds to bit `i` (least
//! significant bit first), so a frame of `n` elements indexes a dense vector
//! of `2^n` values, one per subset. [`SetFunction`] couples such a vector
//! with its frame and a semantic tag.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Hard cap on frame size: a dense `2^n` vector of f64 must stay allocatable.
pub const MAX_ELEMENTS: usize = 30;

/// Frames larger than this get a warning from the CLI; dense vectors grow
/// fast beyond it.
pub const WARN_ELEMENTS: usize = 22;

/// Tolerance on the mass total when validating a basic belief assignment.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// What a set function's values mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Mass,
    Belief,
    Commonality,
    Plausibility,
    /// No constraints; transforms accept raw vectors anywhere a mass or
    /// commonality is expected.
    Raw,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Mass => "mass",
            Kind::Belief => "bel",
            Kind::Commonality => "q",
            Kind::Plausibility => "pl",
            Kind::Raw => "raw",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "mass" | "m" => Some(Kind::Mass),
            "bel" | "belief" => Some(Kind::Belief),
            "q" | "commonality" => Some(Kind::Commonality),
            "pl" | "plausibility" => Some(Kind::Plausibility),
            "raw" => Some(Kind::Raw),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered finite set of distinct element labels.
///
/// The order is significant: it fixes the subset-to-bitmask coding and the
/// pass order of the in-place transforms. Frames are cheap to clone (the
/// label list is shared).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    elements: Arc<Vec<String>>,
}

impl Frame {
    pub fn new<I, S>(elements: I) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::FrameTooLarge {
                n: elements.len(),
                max: MAX_ELEMENTS,
            });
        }
        for (i, label) in elements.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if elements[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            elements: Arc::new(elements),
        })
    }

    /// Number of elements n.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    /// Number of subsets, 2^n.
    pub fn subset_count(&self) -> usize {
        1usize << self.elements.len()
    }

    /// Bitmask of the full set.
    pub fn full_mask(&self) -> usize {
        self.subset_count() - 1
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    /// Bitmask of the subset holding exactly the given members.
    pub fn encode<S: AsRef<str>>(&self, members: &[S]) -> Result<usize> {
        let mut mask = 0usize;
        for member in members {
            let label = member.as_ref();
            let i = self
                .position(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            let bit = 1usize << i;
            if mask & bit != 0 {
                return Err(Error::DuplicateMember(label.to_string()));
            }
            mask |= bit;
        }
        Ok(mask)
    }

    /// Member labels of a subset, in frame order.
    pub fn decode(&self, mask: usize) -> Vec<&str> {
        (0..self.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.element(i))
            .collect()
    }

    /// Canonical text key for a subset: members joined by commas, in frame
    /// order. The empty set is the empty string.
    pub fn subset_key(&self, mask: usize) -> String {
        self.decode(mask).join(",")
    }

    /// Human-readable subset, e.g. `{a,c}`.
    pub fn subset_display(&self, mask: usize) -> String {
        format!("{{{}}}", self.subset_key(mask))
    }

    /// Inverse of [`Frame::subset_key`].
    pub fn parse_subset_key(&self, key: &str) -> Result<usize> {
        if key.is_empty() {
            return Ok(0);
        }
        let members: Vec<&str> = key.split(',').collect();
        self.encode(&members).map_err(|e| Error::BadKey {
            key: key.to_string(),
            source: Box::new(e),
        })
    }
}

/// A dense real-valued function on the power set of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    frame: Frame,
    kind: Kind,
    values: Vec<f64>,
}

impl SetFunction {
    pub fn new(frame: Frame, kind: Kind, values: Vec<f64>) -> Result<SetFunction> {
        if values.len() != frame.subset_count() {
            return Err(Error::LengthMismatch {
                expected: frame.subset_count(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(SetFunction {
            frame,
            kind,
            values,
        })
    }

    pub fn zeros(frame: Frame, kind: Kind) -> SetFunction {
        let len = frame.subset_count();
        SetFunction {
            frame,
            kind,
            values: vec![0.0; len],
        }
    }

    /// Mass 1 on a single subset.
    pub fn point_mass(frame: Frame, mask: usize) -> Result<SetFunction> {
        let mut f = SetFunction::zeros(frame, Kind::Mass);
        f.check_mask(mask)?;
        f.values[mask] = 1.0;
        Ok(f)
    }

    /// The vacuous belief state: all mass on the full set.
    pub fn vacuous(frame: Frame) -> SetFunction {
        let full = frame.full_mask();
        SetFunction::point_mass(frame, full).expect("full mask is in range")
    }

    /// A random valid mass function: uniform draws normalized to sum 1,
    /// with the empty set held at 0 when `exclude_empty` is set.
    pub fn random_mass<R: Rng + ?Sized>(
        frame: Frame,
        rng: &mut R,
        exclude_empty: bool,
    ) -> SetFunction {
        let len = frame.subset_count();
        let start = usize::from(exclude_empty);
        let mut values = vec![0.0; len];
        loop {
            let mut total = 0.0;
            for v in &mut values[start..] {
                *v = rng.gen::<f64>();
                total += *v;
            }
            if total > 0.0 {
                for v in &mut values[start..] {
                    *v /= total;
                }
                break;
            }
        }
        SetFunction {
            frame,
            kind: Kind::Mass,
            values,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Same values under a different tag.
    pub fn with_kind(mut self, kind: Kind) -> SetFunction {
        self.kind = kind;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, mask: usize) -> f64 {
        self.values[mask]
    }

    pub fn set_value(&mut self, mask: usize, value: f64) -> Result<()> {
        self.check_mask(mask)?;
        self.values[mask] = value;
        Ok(())
    }

    /// Value at the subset holding the given members.
    pub fn value_of<S: AsRef<str>>(&self, members: &[S]) -> Result<f64> {
        Ok(self.values[self.frame.encode(members)?])
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, v)| v != 0.0)
    }

    fn check_mask(&self, mask: usize) -> Result<()> {
        if mask >= self.values.len() {
            return Err(Error::IndexOutOfRange {
                index: mask,
                size: self.values.len(),
            });
        }
        Ok(())
    }
}

/// One way a would-be mass function breaks the rules.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Negative { subset: String, value: f64 },
    SumNotOne { sum: f64 },
    NonzeroEmpty { value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { subset, value } => {
                write!(f, "m({{{subset}}}) = {value} is negative")
            }
            Violation::SumNotOne { sum } => write!(f, "masses sum to {sum}, not 1"),
            Violation::NonzeroEmpty { value } => write!(f, "m(\u{2205}) = {value} is not 0"),
        }
    }
}

/// Outcome of [`validate_mass`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Check the basic-belief-assignment axioms: values nonnegative, total 1
/// within [`MASS_SUM_TOLERANCE`], and (when `exclude_empty`) no mass on the
/// empty set. Returns a report rather than failing.
pub fn validate_mass(f: &SetFunction, exclude_empty: bool) -> ValidationReport {
    let mut violations = Vec::new();
    for (mask, value) in f.values().iter().copied().enumerate() {
        if value < 0.0 {
            violations.push(Violation::Negative {
                subset: f.frame().subset_key(mask),
                value,
            });
        }
    }
    let sum: f64 = f.values().iter().sum();
    if (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
        violations.push(Violation::SumNotOne { sum });
    }
    if exclude_empty && f.value(0) != 0.0 {
        violations.push(Violation::NonzeroEmpty { value: f.value(0) });
    }
    ValidationReport { violations }
}
