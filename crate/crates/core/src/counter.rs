//! Instrumented operation counts.
//!
//! A semantic addition is one `a + b` (or `a - b`) regardless of operand
//! values, and a multiplication is one `a * b`. Counts reflect operations the
//! algorithm actually executed, so tests can pin them against closed-form
//! costs.

/// Tally of semantic additions and multiplications, with a per-stage
/// breakdown of the additions where the algorithm has stages.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCount {
    pub additions: u64,
    pub multiplications: u64,
    pub per_stage: Vec<u64>,
}

impl OpCount {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one stage's additions (also added to the total).
    pub fn record_stage(&mut self, additions: u64) {
        self.additions += additions;
        self.per_stage.push(additions);
    }

    pub fn record_multiplications(&mut self, multiplications: u64) {
        self.multiplications += multiplications;
    }

    /// Fold another count into this one, keeping the stage breakdown.
    pub fn absorb(&mut self, other: &OpCount) {
        self.additions += other.additions;
        self.multiplications += other.multiplications;
        self.per_stage.extend_from_slice(&other.per_stage);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_totals_accumulate() {
        let mut count = OpCount::new();
        count.record_stage(4);
        count.record_stage(3);
        count.record_multiplications(7);
        assert_eq!(count.additions, 7);
        assert_eq!(count.multiplications, 7);
        assert_eq!(count.per_stage, vec![4, 3]);

        let mut other = OpCount::new();
        other.record_stage(1);
        count.absorb(&other);
        assert_eq!(count.additions, 8);
        assert_eq!(count.per_stage, vec![4, 3, 1]);
    }
}
