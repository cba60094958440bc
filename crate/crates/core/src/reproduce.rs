//! Recomputes the bundled worked example end to end and diffs every
//! reproducible cell against its recorded value.
//!
//! Hermetic by construction: all inputs are embedded constants from
//! [`crate::worked_example`]; nothing is read from disk or the network.

use crate::operators::build_wheel;
use crate::oracle::{adjudicate_worked_example_claim, ClaimReport};
use crate::problems::tsp_fitness;
use crate::worked_example as we;

/// One recomputed cell compared against its recorded value.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    /// Which table the cell belongs to.
    pub table: &'static str,
    /// Cell coordinate within the table, e.g. `row 3` or `total`.
    pub cell: String,
    pub expected: f64,
    pub computed: f64,
    /// Absolute tolerance; 0 for exact integer sums.
    pub tolerance: f64,
    pub pass: bool,
}

/// A recorded table that is knowingly not checked, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCheck {
    pub table: &'static str,
    pub reason: String,
}

/// Full comparison report for the worked example.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffReport {
    pub checks: Vec<CellCheck>,
    pub skipped: Vec<SkippedCheck>,
    /// Adjudication of the claimed optimal route (informational; the pass
    /// verdict covers reproducible cells only).
    pub claim: ClaimReport,
}

impl DiffReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&CellCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn check(
    table: &'static str,
    cell: String,
    expected: f64,
    computed: f64,
    tolerance: f64,
) -> CellCheck {
    CellCheck {
        table,
        cell,
        expected,
        computed,
        tolerance,
        pass: (expected - computed).abs() <= tolerance,
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// The recorded tables' own probability arithmetic: six-decimal-rounded
/// values over the six-decimal-rounded total, cumulative sums, final entry
/// pinned to 1 (as both the recorded column and the engine wheel pin it).
pub fn recorded_probability_pipeline(fitnesses: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let values: Vec<f64> = fitnesses.iter().map(|f| round6(1.0 / f)).collect();
    let total = round6(fitnesses.iter().map(|f| 1.0 / f).sum());
    let probabilities: Vec<f64> = values.iter().map(|v| v / total).collect();
    let mut cumulative = Vec::with_capacity(probabilities.len());
    let mut acc = 0.0;
    for p in &probabilities {
        acc += p;
        cumulative.push(acc);
    }
    *cumulative.last_mut().expect("nonempty") = 1.0;
    (probabilities, cumulative)
}

/// Recomputes fitnesses, selection values, probabilities, and the
/// post-variation fitnesses of the worked example, and compares each cell.
pub fn build_diff_report() -> DiffReport {
    let instance = we::instance();
    let mut checks = Vec::new();

    // Seed-chromosome tour fitnesses: integer leg sums, compared exactly.
    let fitnesses: Vec<f64> = we::seed_chromosomes()
        .iter()
        .map(|c| tsp_fitness(&instance, c).expect("fixture chromosomes are valid"))
        .collect();
    for (i, (&expected, &computed)) in we::INITIAL_FITNESS.iter().zip(&fitnesses).enumerate() {
        checks.push(check(
            "initial-fitness",
            format!("row {}", i + 1),
            expected,
            computed,
            0.0,
        ));
    }

    // Selection wheel: 1/f values and their total, straight from the engine.
    let wheel = build_wheel(&fitnesses).expect("fixture fitnesses are positive");
    for (i, (&expected, &computed)) in we::SELECTION_VALUES.iter().zip(wheel.values()).enumerate() {
        checks.push(check(
            "selection-values",
            format!("row {}", i + 1),
            expected,
            computed,
            we::VALUE_TOLERANCE,
        ));
    }
    checks.push(check(
        "selection-values",
        "total".into(),
        we::SELECTION_VALUE_TOTAL,
        wheel.values().iter().sum(),
        we::VALUE_TOLERANCE,
    ));

    // The recorded probability column was itself computed from the
    // six-decimal value column (round6(1/f) / round6(total)), with the final
    // cumulative entry pinned to 1; reproducing the table means reproducing
    // that arithmetic. The engine's own wheel divides unrounded values and
    // agrees with the column to ~2e-6 (asserted in its tests).
    let (pipeline_probabilities, pipeline_cumulative) = recorded_probability_pipeline(&fitnesses);
    for (i, (&expected, &computed)) in we::SELECTION_PROBABILITIES
        .iter()
        .zip(&pipeline_probabilities)
        .enumerate()
    {
        checks.push(check(
            "selection-probabilities",
            format!("row {}", i + 1),
            expected,
            computed,
            we::VALUE_TOLERANCE,
        ));
    }
    for (i, (&expected, &computed)) in we::CUMULATIVE_PROBABILITIES
        .iter()
        .zip(&pipeline_cumulative)
        .enumerate()
    {
        checks.push(check(
            "cumulative-probabilities",
            format!("row {}", i + 1),
            expected,
            computed,
            we::VALUE_TOLERANCE,
        ));
    }
    checks.push(check(
        "cumulative-probabilities",
        "final".into(),
        1.0,
        *wheel.cumulative().last().expect("wheel is nonempty"),
        we::CUMULATIVE_END_TOLERANCE,
    ));

    // Post-variation routes re-scored from their printed sequences.
    for (i, (chromosome, &expected)) in we::post_variation_chromosomes()
        .iter()
        .zip(&we::POST_VARIATION_FITNESS)
        .enumerate()
    {
        let computed = tsp_fitness(&instance, chromosome).expect("fixture chromosomes are valid");
        checks.push(check(
            "post-variation-fitness",
            format!("row {}", i + 1),
            expected,
            computed,
            0.0,
        ));
    }

    // The recorded reselection mapping cannot be reproduced from the
    // recorded draws, and the recorded post-mutation set equals the
    // pre-mutation set; both are reported, never silently dropped.
    let computed_mapping: Vec<usize> = we::RECORDED_SELECTION_DRAWS
        .iter()
        .map(|&r| crate::operators::spin(&wheel, r).expect("recorded draws lie in [0,1)") + 1)
        .collect();
    let recorded_mapping: Vec<usize> = we::RECORDED_RESELECTION
        .iter()
        .map(|&(_, new)| new)
        .collect();
    let skipped = vec![
        SkippedCheck {
            table: "reselection-mapping",
            reason: format!(
                "known-inconsistent, not checked: cumulative-interval lookup of the recorded \
                 draws selects {computed_mapping:?}, but the recorded mapping is \
                 {recorded_mapping:?}; no roulette rule reproduces it"
            ),
        },
        SkippedCheck {
            table: "post-mutation-chromosomes",
            reason: "known-inconsistent, not checked: the recorded post-mutation set is \
                     identical to the pre-mutation set, so no observable mutation exists to \
                     verify"
                .into(),
        },
    ];

    DiffReport {
        checks,
        skipped,
        claim: adjudicate_worked_example_claim(),
    }
}

/// Renders the report as aligned text, one line per cell plus the skipped
/// tables and the route-claim adjudication.
pub fn render_report(report: &DiffReport) -> String {
    use std::fmt::Write as _;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<26} {:<8} {:>14} {:>22} {:>9} status",
        "table", "cell", "expected", "computed", "tol"
    );
    for c in &report.checks {
        let _ = writeln!(
            out,
            "{:<26} {:<8} {:>14} {:>22} {:>9} {}",
            c.table,
            c.cell,
            c.expected,
            c.computed,
            c.tolerance,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    out.push('\n');
    for s in &report.skipped {
        let _ = writeln!(out, "skipped {}: {}", s.table, s.reason);
    }
    out.push('\n');
    let claim = &report.claim;
    let _ = writeln!(
        out,
        "claimed route {} -> length {}",
        crate::oracle::render_tour(&claim.claimed_tour),
        claim.claimed_length
    );
    let _ = writeln!(
        out,
        "exhaustive optimum {} -> length {} ({} tours enumerated)",
        crate::oracle::render_tour(&claim.oracle.optimal_tour),
        claim.oracle.optimal_length,
        claim.oracle.enumerated_count
    );
    let _ = writeln!(
        out,
        "best recorded seed length {}, best recorded post-variation length {}",
        claim.best_initial_length, claim.best_post_variation_length
    );
    for finding in &claim.findings {
        let _ = writeln!(out, "finding: {finding}");
    }
    out
}
