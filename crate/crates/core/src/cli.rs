//! Command-line surface: configured runs, the worked-example reproduction
//! harness, the exhaustive oracle, and the string demo.
//!
//! Exit codes are script-friendly: 0 success, 1 run finished without
//! reaching a configured fitness threshold, 2 configuration or input error,
//! 3 instance too large for exhaustive search.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::encoding::Alphabet;
use crate::engine::{run, GaConfig, Problem, RunLog, TerminationReason, TerminationSpec};
use crate::error::{GaError, Result};
use crate::operators::{CrossoverOperator, CrossoverSpec, MutationOperator, MutationSpec};
use crate::oracle::brute_force_tsp;
use crate::problems::{load_distance_edges, TargetStringInstance, TspInstance};
use crate::reproduce::{build_diff_report, render_report};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_THRESHOLD_NOT_REACHED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

/// Maps an error to the process exit code the CLI reports for it.
pub fn exit_code_for(error: &GaError) -> i32 {
    match error {
        GaError::InstanceTooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_CONFIG,
    }
}

/// Which problem a run config drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Tsp,
    String,
}

/// JSON run configuration. Unknown keys are rejected at every level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigDocument {
    pub problem: ProblemKind,
    /// Path to an edge-list CSV for `tsp`; the literal target string for
    /// `string`.
    pub instance: String,
    pub population_size: usize,
    pub crossover: CrossoverDoc,
    pub mutation: MutationDoc,
    pub elitism_count: usize,
    pub seed: u64,
    pub termination: TerminationDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossoverDoc {
    pub operator: CrossoverOperator,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutationDoc {
    pub operator: MutationOperator,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminationDoc {
    pub max_generations: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitness_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stagnation_window: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

/// Flag-level overrides applied on top of a config file before validation.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub generations: Option<u32>,
    pub population: Option<usize>,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
    pub elitism: Option<usize>,
}

impl RunConfigDocument {
    pub fn apply_overrides(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.seed = seed;
        }
        if let Some(generations) = overrides.generations {
            self.termination.max_generations = generations;
        }
        if let Some(population) = overrides.population {
            self.population_size = population;
        }
        if let Some(rate) = overrides.crossover_rate {
            self.crossover.rate = rate;
        }
        if let Some(rate) = overrides.mutation_rate {
            self.mutation.rate = rate;
        }
        if let Some(elitism) = overrides.elitism {
            self.elitism_count = elitism;
        }
    }

    /// Field-by-field validation, collecting every violation.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.population_size < 2 {
            violations.push(format!(
                "population_size: must be at least 2 (got {})",
                self.population_size
            ));
        }
        if self.elitism_count >= self.population_size {
            violations.push(format!(
                "elitism_count: must be smaller than population_size (got {} of {})",
                self.elitism_count, self.population_size
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover.rate) {
            violations.push(format!(
                "crossover.rate: must be within [0, 1] (got {})",
                self.crossover.rate
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation.rate) {
            violations.push(format!(
                "mutation.rate: must be within [0, 1] (got {})",
                self.mutation.rate
            ));
        }
        if self.termination.max_generations < 1 {
            violations.push("termination.max_generations: must be at least 1".into());
        }
        match self.problem {
            ProblemKind::Tsp => {
                if self.crossover.operator == CrossoverOperator::SinglePoint {
                    violations.push(
                        "crossover.operator: single-point applies to string chromosomes only"
                            .into(),
                    );
                }
                if self.mutation.operator != MutationOperator::Swap {
                    violations.push("mutation.operator: tsp runs use the swap operator".into());
                }
            }
            ProblemKind::String => {
                if self.crossover.operator != CrossoverOperator::SinglePoint {
                    violations.push(
                        "crossover.operator: string runs use the single-point operator".into(),
                    );
                }
                if self.mutation.operator != MutationOperator::RandomReset {
                    violations.push(
                        "mutation.operator: string runs use the random-reset operator".into(),
                    );
                }
                if self.instance.is_empty() {
                    violations.push("instance: target string must not be empty".into());
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(GaError::Config(violations))
        }
    }

    pub fn to_engine_config(&self) -> GaConfig {
        GaConfig {
            population_size: self.population_size,
            crossover: CrossoverSpec {
                operator: self.crossover.operator,
                rate: self.crossover.rate,
            },
            mutation: MutationSpec {
                operator: self.mutation.operator,
                rate: self.mutation.rate,
            },
            elitism_count: self.elitism_count,
            seed: self.seed,
            termination: TerminationSpec {
                max_generations: self.termination.max_generations,
                fitness_threshold: self.termination.fitness_threshold,
                stagnation_window: self.termination.stagnation_window,
                wall_clock_budget: self.termination.wall_clock_ms.map(Duration::from_millis),
            },
        }
    }
}

/// Parses and schema-validates a config file. Structural violations (bad
/// types, unknown keys) surface as config errors.
pub fn load_config(path: &Path) -> Result<RunConfigDocument> {
    let text = fs::read_to_string(path).map_err(|e| {
        GaError::Config(vec![format!("cannot read config {}: {e}", path.display())])
    })?;
    serde_json::from_str(&text)
        .map_err(|e| GaError::Config(vec![format!("config schema violation: {e}")]))
}

/// An instance loaded according to the config's problem kind.
pub enum LoadedProblem {
    Tsp(TspInstance),
    String(TargetStringInstance),
}

/// Resolves the config's `instance` field: reads the edge-list CSV for tour
/// runs, builds the target-string instance (default alphabet) for string
/// runs.
pub fn load_problem(doc: &RunConfigDocument) -> Result<LoadedProblem> {
    match doc.problem {
        ProblemKind::Tsp => {
            let text = fs::read_to_string(&doc.instance).map_err(|e| {
                GaError::Config(vec![format!("cannot read instance {}: {e}", doc.instance)])
            })?;
            Ok(LoadedProblem::Tsp(TspInstance::new(load_distance_edges(
                &text,
            )?)))
        }
        ProblemKind::String => Ok(LoadedProblem::String(TargetStringInstance::new(
            &doc.instance,
            Alphabet::printable_ascii(),
        )?)),
    }
}

/// One row of the per-generation CSV log. The `best_tour` column holds the
/// rendered tour for tour runs and the best candidate string for string
/// runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: u32,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_tour: String,
}

/// Best individual of a run, rendered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestSummary {
    pub fitness: f64,
    pub chromosome: String,
}

/// JSON summary of one run: config echo, termination reason, the full
/// per-generation series, the best individual, and the evaluation count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: RunConfigDocument,
    pub termination: TerminationReason,
    pub generations: u32,
    pub total_evaluations: u64,
    pub best: BestSummary,
    pub stats: Vec<GenerationRecord>,
}

fn records_of<P: Problem>(log: &RunLog<P::Chromosome>, problem: &P) -> Vec<GenerationRecord> {
    log.stats
        .iter()
        .map(|s| GenerationRecord {
            generation: s.generation,
            best_fitness: s.best_fitness,
            mean_fitness: s.mean_fitness,
            best_tour: problem.render(&s.best_chromosome),
        })
        .collect()
}

fn summarize<P: Problem>(
    doc: &RunConfigDocument,
    log: &RunLog<P::Chromosome>,
    problem: &P,
) -> RunSummary {
    RunSummary {
        config: doc.clone(),
        termination: log.termination,
        generations: log.last_generation(),
        total_evaluations: log.total_evaluations,
        best: BestSummary {
            fitness: log.best.fitness().expect("run logs are evaluated"),
            chromosome: problem.render(&log.best.chromosome),
        },
        stats: records_of(log, problem),
    }
}

/// Serializes records to CSV bytes (header `generation,best_fitness,
/// mean_fitness,best_tour`, LF line endings — byte-stable for identical
/// inputs).
pub fn records_to_csv(records: &[GenerationRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer
            .serialize(record)
            .expect("in-memory CSV write cannot fail");
    }
    String::from_utf8(
        writer
            .into_inner()
            .expect("in-memory CSV flush cannot fail"),
    )
    .expect("CSV output is UTF-8")
}

/// Parses a per-generation CSV log back into records.
pub fn read_generation_csv(text: &str) -> Result<Vec<GenerationRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|r| r.map_err(|e| GaError::Parse(format!("bad log record: {e}"))))
        .collect()
}

struct SeedOutcome {
    seed: u64,
    summary: RunSummary,
    reached_threshold: bool,
}

fn run_one_seed(
    doc: &RunConfigDocument,
    problem: &LoadedProblem,
    seed: u64,
) -> Result<SeedOutcome> {
    let mut doc = doc.clone();
    doc.seed = seed;
    let config = doc.to_engine_config();
    let summary = match problem {
        LoadedProblem::Tsp(instance) => {
            let log = run(&config, instance)?;
            summarize(&doc, &log, instance)
        }
        LoadedProblem::String(instance) => {
            let log = run(&config, instance)?;
            summarize(&doc, &log, instance)
        }
    };
    let reached_threshold = match doc.termination.fitness_threshold {
        Some(threshold) => summary.best.fitness <= threshold,
        None => true,
    };
    Ok(SeedOutcome {
        seed,
        summary,
        reached_threshold,
    })
}

/// Runs a configured experiment for `runs` consecutive seeds (concurrently,
/// one thread per seed, with per-seed isolated state) and writes
/// `run-<seed>.csv` / `run-<seed>.json` under `out_dir`.
///
/// Exits 0 when every run terminated normally and reached the configured
/// fitness threshold (or none was configured); 1 when some run finished
/// without reaching a configured threshold; 2 on config or input errors.
pub fn cmd_run(
    config_path: &Path,
    overrides: &Overrides,
    out_dir: &Path,
    runs: u32,
    stdout: &mut impl std::io::Write,
) -> Result<i32> {
    let mut doc = load_config(config_path)?;
    doc.apply_overrides(overrides);
    doc.validate()?;
    if runs == 0 {
        return Err(GaError::Config(vec!["--runs: must be at least 1".into()]));
    }
    let problem = load_problem(&doc)?;
    fs::create_dir_all(out_dir)?;

    let seeds: Vec<u64> = (0..u64::from(runs))
        .map(|k| doc.seed.wrapping_add(k))
        .collect();
    let doc_ref = &doc;
    let problem_ref = &problem;
    let outcomes: Vec<Result<SeedOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| scope.spawn(move || run_one_seed(doc_ref, problem_ref, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("run thread panicked"))
            .collect()
    });

    let mut all_reached = true;
    for outcome in outcomes {
        let outcome = outcome?;
        all_reached &= outcome.reached_threshold;

        let csv_path = out_dir.join(format!("run-{}.csv", outcome.seed));
        let json_path = out_dir.join(format!("run-{}.json", outcome.seed));
        fs::write(&csv_path, records_to_csv(&outcome.summary.stats))?;
        let mut json = serde_json::to_string_pretty(&outcome.summary)
            .expect("run summaries serialize cleanly");
        json.push('\n');
        fs::write(&json_path, json)?;

        writeln!(
            stdout,
            "seed {}: terminated by {} at generation {}, best fitness {}, wrote {} and {}",
            outcome.seed,
            outcome.summary.termination,
            outcome.summary.generations,
            outcome.summary.best.fitness,
            csv_path.display(),
            json_path.display(),
        )?;
    }

    Ok(if all_reached {
        EXIT_SUCCESS
    } else {
        EXIT_THRESHOLD_NOT_REACHED
    })
}

/// JSON shape printed by `oracle`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleSummary {
    pub optimal_tour: Vec<String>,
    pub optimal_length: f64,
    pub enumerated_count: u64,
}

/// Solves a small instance exactly and prints the result as JSON.
pub fn cmd_oracle(matrix_path: &Path, stdout: &mut impl std::io::Write) -> Result<i32> {
    let text = fs::read_to_string(matrix_path).map_err(|e| {
        GaError::Config(vec![format!(
            "cannot read instance {}: {e}",
            matrix_path.display()
        )])
    })?;
    let instance = TspInstance::new(load_distance_edges(&text)?);
    let result = brute_force_tsp(&instance)?;
    let summary = OracleSummary {
        optimal_tour: result.optimal_tour.iter().map(|p| p.to_string()).collect(),
        optimal_length: result.optimal_length,
        enumerated_count: result.enumerated_count,
    };
    writeln!(
        stdout,
        "{}",
        serde_json::to_string_pretty(&summary).expect("oracle summaries serialize cleanly")
    )?;
    Ok(EXIT_SUCCESS)
}

/// Recomputes the bundled worked example, prints the cell-by-cell diff, and
/// exits 0 iff every reproducible cell matches.
pub fn cmd_reproduce(stdout: &mut impl std::io::Write) -> Result<i32> {
    let report = build_diff_report();
    write!(stdout, "{}", render_report(&report))?;
    Ok(if report.all_pass() {
        EXIT_SUCCESS
    } else {
        EXIT_THRESHOLD_NOT_REACHED
    })
}

/// Tunables for the string demo; defaults match the documented demo setup.
#[derive(Debug, Clone)]
pub struct StringDemoOptions {
    pub population: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism: usize,
    pub generations: u32,
    pub seed: u64,
}

impl Default for StringDemoOptions {
    fn default() -> Self {
        StringDemoOptions {
            population: 200,
            crossover_rate: 0.9,
            mutation_rate: 0.8,
            elitism: 2,
            generations: 2000,
            seed: 1,
        }
    }
}

/// Evolves `target` from random strings, printing the best candidate per
/// generation. Exits 0 if an exact match was reached, 1 otherwise.
pub fn cmd_string_demo(
    target: &str,
    alphabet: Option<&str>,
    options: &StringDemoOptions,
    stdout: &mut impl std::io::Write,
) -> Result<i32> {
    let alphabet = match alphabet {
        Some(chars) => Alphabet::new(chars.chars())?,
        None => Alphabet::printable_ascii(),
    };
    let instance = TargetStringInstance::new(target, alphabet)?;
    let config = GaConfig {
        population_size: options.population,
        crossover: CrossoverSpec {
            operator: CrossoverOperator::SinglePoint,
            rate: options.crossover_rate,
        },
        mutation: MutationSpec {
            operator: MutationOperator::RandomReset,
            rate: options.mutation_rate,
        },
        elitism_count: options.elitism,
        seed: options.seed,
        termination: TerminationSpec {
            max_generations: options.generations,
            fitness_threshold: Some(0.0),
            stagnation_window: None,
            wall_clock_budget: None,
        },
    };

    let log = run(&config, &instance)?;
    for stats in &log.stats {
        writeln!(
            stdout,
            "generation {:>4}  best {:>3}  mean {:>8.3}  {}",
            stats.generation,
            stats.best_fitness,
            stats.mean_fitness,
            instance.render(&stats.best_chromosome),
        )?;
    }
    let best_fitness = log.best.fitness().expect("run logs are evaluated");
    let mut line = format!(
        "terminated by {} after generation {} with best fitness {best_fitness}",
        log.termination,
        log.last_generation(),
    );
    if best_fitness == 0.0 {
        let _ = write!(line, " — target matched");
    }
    writeln!(stdout, "{line}")?;
    Ok(if best_fitness == 0.0 {
        EXIT_SUCCESS
    } else {
        EXIT_THRESHOLD_NOT_REACHED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_doc() -> RunConfigDocument {
        RunConfigDocument {
            problem: ProblemKind::Tsp,
            instance: "distances.csv".into(),
            population_size: 8,
            crossover: CrossoverDoc {
                operator: CrossoverOperator::Ox1,
                rate: 0.9,
            },
            mutation: MutationDoc {
                operator: MutationOperator::Swap,
                rate: 0.2,
            },
            elitism_count: 1,
            seed: 1,
            termination: TerminationDoc {
                max_generations: 50,
                fitness_threshold: None,
                stagnation_window: None,
                wall_clock_ms: None,
            },
        }
    }

    #[test]
    fn config_json_round_trips() {
        let doc = sample_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: RunConfigDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, parsed);
    }

    #[test]
    fn engine_config_mirrors_the_document() {
        let mut doc = sample_doc();
        doc.termination.fitness_threshold = Some(22.0);
        doc.termination.stagnation_window = Some(9);
        doc.termination.wall_clock_ms = Some(1500);
        let config = doc.to_engine_config();
        assert_eq!(config.population_size, 8);
        assert_eq!(config.crossover.operator, CrossoverOperator::Ox1);
        assert_eq!(config.crossover.rate, 0.9);
        assert_eq!(config.mutation.rate, 0.2);
        assert_eq!(config.elitism_count, 1);
        assert_eq!(config.seed, 1);
        assert_eq!(config.termination.max_generations, 50);
        assert_eq!(config.termination.fitness_threshold, Some(22.0));
        assert_eq!(config.termination.stagnation_window, Some(9));
        assert_eq!(
            config.termination.wall_clock_budget,
            Some(Duration::from_millis(1500))
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut value = serde_json::to_value(sample_doc()).unwrap();
        value["surprise"] = serde_json::json!(true);
        let err = serde_json::from_value::<RunConfigDocument>(value).unwrap_err();
        assert!(err.to_string().contains("surprise"));
    }

    #[test]
    fn out_of_range_rate_names_the_field() {
        let mut doc = sample_doc();
        doc.crossover.rate = 1.5;
        match doc.validate() {
            Err(GaError::Config(violations)) => {
                assert!(violations.iter().any(|v| v.contains("crossover.rate")));
            }
            other => panic!("expected config violation, got {other:?}"),
        }
    }

    #[test]
    fn operator_kind_mismatch_is_rejected() {
        let mut doc = sample_doc();
        doc.crossover.operator = CrossoverOperator::SinglePoint;
        assert!(doc.validate().is_err());

        let mut doc = sample_doc();
        doc.problem = ProblemKind::String;
        doc.instance = "HELLO".into();
        doc.crossover.operator = CrossoverOperator::SinglePoint;
        doc.mutation.operator = MutationOperator::RandomReset;
        doc.validate().unwrap();
    }

    #[test]
    fn overrides_replace_config_fields() {
        let mut doc = sample_doc();
        doc.apply_overrides(&Overrides {
            seed: Some(9),
            generations: Some(77),
            population: Some(30),
            crossover_rate: Some(0.5),
            mutation_rate: Some(0.1),
            elitism: Some(2),
        });
        assert_eq!(doc.seed, 9);
        assert_eq!(doc.termination.max_generations, 77);
        assert_eq!(doc.population_size, 30);
        assert_eq!(doc.crossover.rate, 0.5);
        assert_eq!(doc.mutation.rate, 0.1);
        assert_eq!(doc.elitism_count, 2);
    }

    #[test]
    fn generation_csv_round_trips_losslessly() {
        let records = vec![
            GenerationRecord {
                generation: 0,
                best_fitness: 29.0,
                mean_fitness: 30.25,
                best_tour: "P1-P2-P3-P5-P4-P6-P1".into(),
            },
            GenerationRecord {
                generation: 1,
                best_fitness: 22.0,
                mean_fitness: 28.625,
                best_tour: "P1-P3-P2-P5-P4-P6-P1".into(),
            },
        ];
        let csv = records_to_csv(&records);
        assert!(csv.starts_with("generation,best_fitness,mean_fitness,best_tour\n"));
        assert_eq!(read_generation_csv(&csv).unwrap(), records);
    }

    #[test]
    fn string_demo_with_forced_alphabet_succeeds_immediately() {
        let mut out = Vec::new();
        let code = cmd_string_demo(
            "A",
            Some("A"),
            &StringDemoOptions {
                population: 4,
                ..StringDemoOptions::default()
            },
            &mut out,
        )
        .unwrap();
        assert_eq!(code, EXIT_SUCCESS);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("generation    0"));
        assert!(text.contains("target matched"));
    }

    #[test]
    fn string_demo_rejects_targets_outside_the_alphabet() {
        let mut out = Vec::new();
        let err = cmd_string_demo("ABC", Some("AB"), &StringDemoOptions::default(), &mut out)
            .unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_CONFIG);
    }
}
