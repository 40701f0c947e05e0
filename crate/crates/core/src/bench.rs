//! Benchmark harness: runs the slow and fast mass-pair-to-plausibility
//! roads on random inputs, checks the instrumented counters against the
//! closed forms, and renders the comparison tables.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::{analytic_costs, AnalyticRow};
use crate::counter::OpCount;
use crate::error::{Error, Result};
use crate::evidence::{combine_to_plausibility_counted, combine_to_plausibility_naive_counted};
use crate::setfun::{Frame, SetFunction, MAX_ELEMENTS};

/// Which arms of the comparison to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchArms {
    pub naive: bool,
    pub fast: bool,
}

impl Default for BenchArms {
    fn default() -> Self {
        BenchArms {
            naive: true,
            fast: true,
        }
    }
}

/// Measured cost of one arm at one frame size.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub n: u32,
    /// "naive" or "fast".
    pub arm: &'static str,
    pub ops: OpCount,
    pub analytic_additions: u64,
    pub analytic_multiplications: u64,
    /// Counters must equal the closed forms; a false here is a bug.
    pub matches_analytic: bool,
    /// Mean wall time over the trials. Reported, never asserted against.
    pub wall_seconds: f64,
}

/// Run the requested arms for every frame size in `n_min..=n_max`, with the
/// given number of timing trials per size. Inputs are seeded random mass
/// pairs, so counters and results are reproducible.
pub fn run_benchmark(
    n_min: u32,
    n_max: u32,
    trials: u32,
    arms: BenchArms,
) -> Result<Vec<CostReport>> {
    if n_min < 1 || n_max as usize > MAX_ELEMENTS || n_min > n_max {
        return Err(Error::CapacityExceeded {
            n: n_max as usize,
            max: MAX_ELEMENTS,
        });
    }
    let trials = trials.max(1);
    let mut reports = Vec::new();
    for n in n_min..=n_max {
        let frame = Frame::new((0..n).map(|i| format!("e{i}")))?;
        let analytic = analytic_costs(n);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_6269 ^ u64::from(n));
        let m1 = SetFunction::random_mass(frame.clone(), &mut rng, true);
        let m2 = SetFunction::random_mass(frame, &mut rng, true);
        if arms.naive {
            reports.push(run_arm(
                "naive",
                &analytic,
                trials,
                analytic.slow_additions,
                analytic.slow_multiplications,
                || combine_to_plausibility_naive_counted(&m1, &m2),
            )?);
        }
        if arms.fast {
            reports.push(run_arm(
                "fast",
                &analytic,
                trials,
                analytic.fast_additions,
                analytic.fast_multiplications,
                || combine_to_plausibility_counted(&m1, &m2),
            )?);
        }
    }
    Ok(reports)
}

fn run_arm(
    arm: &'static str,
    analytic: &AnalyticRow,
    trials: u32,
    analytic_additions: u64,
    analytic_multiplications: u64,
    run: impl Fn() -> Result<(SetFunction, OpCount)>,
) -> Result<CostReport> {
    let mut ops = OpCount::new();
    let start = Instant::now();
    for trial in 0..trials {
        let (_, count) = run()?;
        if trial == 0 {
            ops = count;
        }
    }
    let wall_seconds = start.elapsed().as_secs_f64() / f64::from(trials);
    let matches_analytic =
        ops.additions == analytic_additions && ops.multiplications == analytic_multiplications;
    Ok(CostReport {
        n: analytic.n,
        arm,
        ops,
        analytic_additions,
        analytic_multiplications,
        matches_analytic,
        wall_seconds,
    })
}

/// A small column-aligned table that also renders as CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: Vec<S>) -> Table {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let render = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = render(&self.headers);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&render(row));
            out.push('\n');
        }
        out
    }
}

/// Truncate to one decimal place, the display convention of the cost table.
fn trunc1(x: f64) -> String {
    if !x.is_finite() {
        return "-".to_string();
    }
    format!("{:.1}", (x * 10.0 + 1e-9).floor() / 10.0)
}

/// Truncate to an integer, the display convention of the ratio table.
fn trunc0(x: f64) -> String {
    if !x.is_finite() {
        return "-".to_string();
    }
    format!("{}", (x + 1e-9).floor() as i64)
}

/// The obvious-versus-staged cost comparison, one row per frame size.
pub fn cost_table(ns: &[u32]) -> Table {
    let mut table = Table::new(vec!["n", "subsets", "cost_obvious", "cost_hasse", "ratio"]);
    for &n in ns {
        let row = analytic_costs(n);
        table.push_row(vec![
            row.n.to_string(),
            row.powerset_size.to_string(),
            row.cost_obvious.to_string(),
            row.cost_hasse.to_string(),
            trunc1(row.cost_ratio),
        ]);
    }
    table
}

/// Slow-over-fast operation ratios for the plausibility pipeline.
pub fn ratio_table(ns: &[u32]) -> Table {
    let mut table = Table::new(vec!["n", "addition_ratio", "multiplication_ratio"]);
    for &n in ns {
        let row = analytic_costs(n);
        table.push_row(vec![
            row.n.to_string(),
            trunc0(row.addition_ratio),
            trunc0(row.multiplication_ratio),
        ]);
    }
    table
}

/// Full benchmark output: analytic columns plus the measured counters and
/// wall times of whichever arms ran.
pub fn benchmark_table(reports: &[CostReport]) -> Table {
    let mut table = Table::new(vec![
        "n",
        "subsets",
        "cost_obvious",
        "cost_hasse",
        "ratio",
        "addition_ratio",
        "multiplication_ratio",
        "arm",
        "additions",
        "multiplications",
        "analytic_additions",
        "analytic_multiplications",
        "matches_analytic",
        "wall_seconds",
    ]);
    for report in reports {
        let row = analytic_costs(report.n);
        table.push_row(vec![
            row.n.to_string(),
            row.powerset_size.to_string(),
            row.cost_obvious.to_string(),
            row.cost_hasse.to_string(),
            trunc1(row.cost_ratio),
            trunc0(row.addition_ratio),
            trunc0(row.multiplication_ratio),
            report.arm.to_string(),
            report.ops.additions.to_string(),
            report.ops.multiplications.to_string(),
            report.analytic_additions.to_string(),
            report.analytic_multiplications.to_string(),
            report.matches_analytic.to_string(),
            format!("{:.6}", report.wall_seconds),
        ]);
    }
    table
}
