//! The generational GA loop: initialize, evaluate, select, reproduce,
//! mutate, replace, terminate.
//!
//! # Determinism
//!
//! A run is a pure function of `(config, problem)`: every stochastic decision
//! flows from one [`SeededRng`] seeded with `config.seed`, consumed in a fixed
//! order. Per generation the order is:
//!
//! 1. elites are copied (no draws);
//! 2. the wheel is rebuilt from the current fitnesses (no draws);
//! 3. while more than one slot is open: one unit draw per parent (two per
//!    pair), one unit draw for the crossover decision, then the operator's
//!    own draws if it fires (two cut indexes for `ox1`/`pmx`, one for
//!    `single-point`); then per child one unit draw for the mutation
//!    decision, plus the operator's draws if it fires (two positions for
//!    `swap`; one position and one character for `random-reset`);
//! 4. if exactly one slot is open the pair loop cannot fill it: one unit
//!    draw selects a parent, the child is its clone, and the per-child
//!    mutation draw (and mutation, if it fires) still applies.
//!
//! Initialization consumes the draws of one random chromosome per member, in
//! member order.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::encoding::{random_permutation, random_string, Individual, Population};
use crate::error::{GaError, Result};
use crate::operators::{
    build_wheel, order_crossover, pmx_crossover, random_reset_mutation, single_point_crossover,
    spin, swap_mutation, CrossoverOperator, CrossoverSpec, MutationOperator, MutationSpec,
};
use crate::problems::{string_fitness, tsp_fitness, TargetStringInstance, TspInstance};
use crate::rng::SeededRng;

/// A problem the engine can evolve: chromosome sampling, fitness, and the
/// operator dispatch for its representation.
///
/// Chromosomes handed to `fitness`, `crossover`, and `mutate` must be valid
/// for the instance; the engine only constructs valid ones.
pub trait Problem {
    type Chromosome: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn random_chromosome(&self, rng: &mut SeededRng) -> Self::Chromosome;
    fn fitness(&self, chromosome: &Self::Chromosome) -> f64;
    fn crossover(
        &self,
        operator: CrossoverOperator,
        a: &Self::Chromosome,
        b: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> (Self::Chromosome, Self::Chromosome);
    fn mutate(
        &self,
        operator: MutationOperator,
        chromosome: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> Self::Chromosome;
    fn supports_crossover(&self, operator: CrossoverOperator) -> bool;
    fn supports_mutation(&self, operator: MutationOperator) -> bool;
    fn validate(&self, chromosome: &Self::Chromosome) -> Result<()>;
    /// Human-readable rendering for logs (full tour for TSP, the candidate
    /// text for strings).
    fn render(&self, chromosome: &Self::Chromosome) -> String;
}

impl Problem for TspInstance {
    type Chromosome = crate::encoding::PermutationChromosome;

    fn random_chromosome(&self, rng: &mut SeededRng) -> Self::Chromosome {
        random_permutation(self.place_count(), rng).expect("instance has at least 2 places")
    }

    fn fitness(&self, chromosome: &Self::Chromosome) -> f64 {
        tsp_fitness(self, chromosome).expect("engine chromosomes are valid")
    }

    fn crossover(
        &self,
        operator: CrossoverOperator,
        a: &Self::Chromosome,
        b: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> (Self::Chromosome, Self::Chromosome) {
        let len = a.len();
        let (i, j) = (rng.index(len + 1), rng.index(len + 1));
        let (cut1, cut2) = (i.min(j), i.max(j));
        match operator {
            CrossoverOperator::Ox1 => order_crossover(a, b, cut1, cut2),
            CrossoverOperator::Pmx => pmx_crossover(a, b, cut1, cut2),
            CrossoverOperator::SinglePoint => {
                unreachable!("single-point crossover is not defined on permutations")
            }
        }
        .expect("cuts drawn within range")
    }

    fn mutate(
        &self,
        operator: MutationOperator,
        chromosome: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> Self::Chromosome {
        match operator {
            MutationOperator::Swap => {
                let i = rng.index(chromosome.len());
                let j = rng.index(chromosome.len());
                swap_mutation(chromosome, i, j).expect("positions drawn within range")
            }
            MutationOperator::RandomReset => {
                unreachable!("random-reset mutation is not defined on permutations")
            }
        }
    }

    fn supports_crossover(&self, operator: CrossoverOperator) -> bool {
        matches!(operator, CrossoverOperator::Ox1 | CrossoverOperator::Pmx)
    }

    fn supports_mutation(&self, operator: MutationOperator) -> bool {
        matches!(operator, MutationOperator::Swap)
    }

    fn validate(&self, chromosome: &Self::Chromosome) -> Result<()> {
        crate::encoding::validate_permutation(chromosome, self.place_count())?;
        Ok(())
    }

    fn render(&self, chromosome: &Self::Chromosome) -> String {
        let tour = crate::encoding::tour_of(chromosome);
        tour.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

impl Problem for TargetStringInstance {
    type Chromosome = crate::encoding::StringChromosome;

    fn random_chromosome(&self, rng: &mut SeededRng) -> Self::Chromosome {
        random_string(self.length(), self.alphabet(), rng)
    }

    fn fitness(&self, chromosome: &Self::Chromosome) -> f64 {
        string_fitness(self, chromosome).expect("engine chromosomes are valid") as f64
    }

    fn crossover(
        &self,
        operator: CrossoverOperator,
        a: &Self::Chromosome,
        b: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> (Self::Chromosome, Self::Chromosome) {
        match operator {
            CrossoverOperator::SinglePoint => {
                let cut = rng.index(a.len() + 1);
                single_point_crossover(a, b, cut).expect("cut drawn within range")
            }
            CrossoverOperator::Ox1 | CrossoverOperator::Pmx => {
                unreachable!("permutation crossover is not defined on strings")
            }
        }
    }

    fn mutate(
        &self,
        operator: MutationOperator,
        chromosome: &Self::Chromosome,
        rng: &mut SeededRng,
    ) -> Self::Chromosome {
        match operator {
            MutationOperator::RandomReset => {
                let position = rng.index(chromosome.len());
                random_reset_mutation(chromosome, position, rng, self.alphabet())
                    .expect("position drawn within range")
            }
            MutationOperator::Swap => {
                unreachable!("swap mutation is not defined on strings")
            }
        }
    }

    fn supports_crossover(&self, operator: CrossoverOperator) -> bool {
        matches!(operator, CrossoverOperator::SinglePoint)
    }

    fn supports_mutation(&self, operator: MutationOperator) -> bool {
        matches!(operator, MutationOperator::RandomReset)
    }

    fn validate(&self, chromosome: &Self::Chromosome) -> Result<()> {
        self.validate_chromosome(chromosome)
    }

    fn render(&self, chromosome: &Self::Chromosome) -> String {
        chromosome.to_string()
    }
}

/// When the run stops. All four map onto the classic termination conditions:
/// the solution meets the minimum criteria, the best solution has stopped
/// moving, the generation budget is spent, or the time budget is spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminationSpec {
    /// Hard backstop; always set.
    pub max_generations: u32,
    /// Stop once best fitness drops to or below this value.
    pub fitness_threshold: Option<f64>,
    /// Stop once best fitness has been unchanged over this many trailing
    /// generations.
    pub stagnation_window: Option<u32>,
    /// Stop once this much wall-clock time has elapsed. Runs that stop this
    /// way are not reproducible generation-for-generation; leave it unset
    /// when byte-identical logs matter.
    pub wall_clock_budget: Option<Duration>,
}

impl TerminationSpec {
    pub fn max_generations(max_generations: u32) -> Self {
        TerminationSpec {
            max_generations,
            fitness_threshold: None,
            stagnation_window: None,
            wall_clock_budget: None,
        }
    }
}

/// Engine configuration. `population_size` may be odd: the reproduction loop
/// pairs children and pads the final slot with one selected clone.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover: CrossoverSpec,
    pub mutation: MutationSpec,
    pub elitism_count: usize,
    pub seed: u64,
    pub termination: TerminationSpec,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            crossover: CrossoverSpec {
                operator: CrossoverOperator::Ox1,
                rate: 0.9,
            },
            mutation: MutationSpec {
                operator: MutationOperator::Swap,
                rate: 0.2,
            },
            elitism_count: 1,
            seed: 1,
            termination: TerminationSpec::max_generations(200),
        }
    }
}

/// The criterion that actually ended a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Best fitness reached the configured threshold — or an exact optimum
    /// (fitness 0), which ends the run even without an explicit threshold
    /// because the selection wheel needs positive fitness.
    FitnessThreshold,
    /// Best fitness unchanged across the stagnation window.
    Stagnation,
    /// Generation backstop reached.
    MaxGenerations,
    /// Wall-clock budget spent.
    WallClock,
}

impl std::fmt::Display for TerminationReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TerminationReason::FitnessThreshold => "fitness_threshold",
            TerminationReason::Stagnation => "stagnation",
            TerminationReason::MaxGenerations => "max_generations",
            TerminationReason::WallClock => "wall_clock",
        };
        f.write_str(s)
    }
}

/// Per-generation snapshot: the best member and the population mean.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationStats<C> {
    pub generation: u32,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_chromosome: C,
}

/// Full record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLog<C> {
    pub config: GaConfig,
    pub stats: Vec<GenerationStats<C>>,
    /// Best individual of the run. With elitism this is the last
    /// generation's best; without, it is the best ever observed (which may
    /// have been lost from the final population).
    pub best: Individual<C>,
    pub termination: TerminationReason,
    pub total_evaluations: u64,
}

impl<C> RunLog<C> {
    /// Index of the last generation (= number of steps taken).
    pub fn last_generation(&self) -> u32 {
        self.stats.last().map(|s| s.generation).unwrap_or(0)
    }
}

/// Validates a configuration against a problem. Collects every violation so
/// a bad config is reported in one pass, before generation 0 exists.
pub fn validate_config<P: Problem>(config: &GaConfig, problem: &P) -> Result<()> {
    let mut violations = Vec::new();
    if config.population_size < 2 {
        violations.push(format!(
            "population_size: must be at least 2 (got {})",
            config.population_size
        ));
    }
    if config.elitism_count >= config.population_size {
        violations.push(format!(
            "elitism_count: must be smaller than population_size (got {} of {})",
            config.elitism_count, config.population_size
        ));
    }
    if !(0.0..=1.0).contains(&config.crossover.rate) {
        violations.push(format!(
            "crossover.rate: must be within [0, 1] (got {})",
            config.crossover.rate
        ));
    }
    if !(0.0..=1.0).contains(&config.mutation.rate) {
        violations.push(format!(
            "mutation.rate: must be within [0, 1] (got {})",
            config.mutation.rate
        ));
    }
    if config.termination.max_generations < 1 {
        violations.push("termination.max_generations: must be at least 1".into());
    }
    if !problem.supports_crossover(config.crossover.operator) {
        violations.push("crossover.operator: not applicable to this problem's encoding".into());
    }
    if !problem.supports_mutation(config.mutation.operator) {
        violations.push("mutation.operator: not applicable to this problem's encoding".into());
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(GaError::Config(violations))
    }
}

/// Creates generation 0: `population_size` random chromosomes, evaluated.
pub fn initialize<P: Problem>(
    config: &GaConfig,
    problem: &P,
    rng: &mut SeededRng,
) -> Result<Population<P::Chromosome>> {
    validate_config(config, problem)?;
    let members = (0..config.population_size)
        .map(|_| Individual::new(problem.random_chromosome(rng)))
        .collect();
    let mut population = Population::new(members, 0);
    evaluate(&mut population, problem);
    Ok(population)
}

/// Sets every member's fitness from the problem. Idempotent.
pub fn evaluate<P: Problem>(population: &mut Population<P::Chromosome>, problem: &P) {
    for member in population.members_mut() {
        let fitness = problem.fitness(&member.chromosome);
        member.set_fitness(fitness);
    }
}

/// Produces the next generation: elites first, then wheel-selected pairs
/// recombined and mutated until the population is refilled, then one
/// evaluation pass. See the module docs for the exact draw order.
pub fn step<P: Problem>(
    population: &Population<P::Chromosome>,
    config: &GaConfig,
    problem: &P,
    rng: &mut SeededRng,
) -> Result<Population<P::Chromosome>> {
    let fitnesses: Vec<f64> = population
        .members()
        .iter()
        .map(|m| {
            m.fitness()
                .ok_or_else(|| GaError::domain("population must be evaluated before stepping"))
        })
        .collect::<Result<_>>()?;

    let wheel = build_wheel(&fitnesses)?;
    let mut next: Vec<Individual<P::Chromosome>> = Vec::with_capacity(population.len());

    // (a) elites: best `elitism_count` members, ties broken by position.
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| fitnesses[a].total_cmp(&fitnesses[b]));
    for &idx in order.iter().take(config.elitism_count) {
        next.push(population.members()[idx].clone());
    }

    // (b) refill with offspring.
    let select = |rng: &mut SeededRng| -> usize {
        spin(&wheel, rng.next_unit()).expect("unit draw is within [0, 1)")
    };
    while next.len() < population.len() {
        let open = population.len() - next.len();
        if open == 1 {
            // Odd slot: pad with one selected clone, still a mutation candidate.
            let parent = &population.members()[select(rng)].chromosome;
            let child = maybe_mutate(parent.clone(), config, problem, rng);
            next.push(Individual::new(child));
            break;
        }
        let parent_a = &population.members()[select(rng)].chromosome;
        let parent_b = &population.members()[select(rng)].chromosome;
        let (child_a, child_b) = if rng.next_unit() < config.crossover.rate {
            problem.crossover(config.crossover.operator, parent_a, parent_b, rng)
        } else {
            (parent_a.clone(), parent_b.clone())
        };
        for child in [child_a, child_b] {
            next.push(Individual::new(maybe_mutate(child, config, problem, rng)));
        }
    }

    // (c) evaluate the full new generation.
    let mut next = Population::new(next, population.generation() + 1);
    evaluate(&mut next, problem);
    Ok(next)
}

fn maybe_mutate<P: Problem>(
    child: P::Chromosome,
    config: &GaConfig,
    problem: &P,
    rng: &mut SeededRng,
) -> P::Chromosome {
    if rng.next_unit() < config.mutation.rate {
        problem.mutate(config.mutation.operator, &child, rng)
    } else {
        child
    }
}

/// True once the best fitness of the trailing `window` generations varies by
/// no more than `tolerance`. A history shorter than the window is not
/// evidence of convergence.
pub fn converged<C>(history: &[GenerationStats<C>], window: usize, tolerance: f64) -> bool {
    if window == 0 || history.len() < window {
        return false;
    }
    let tail = &history[history.len() - window..];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for stats in tail {
        lo = lo.min(stats.best_fitness);
        hi = hi.max(stats.best_fitness);
    }
    hi - lo <= tolerance
}

fn collect_stats<C: Clone>(population: &Population<C>) -> GenerationStats<C> {
    let members = population.members();
    let mut best_idx = 0;
    let mut sum = 0.0;
    for (idx, member) in members.iter().enumerate() {
        let f = member.fitness().expect("population evaluated");
        sum += f;
        if f < members[best_idx].fitness().expect("population evaluated") {
            best_idx = idx;
        }
    }
    GenerationStats {
        generation: population.generation(),
        best_fitness: members[best_idx].fitness().expect("population evaluated"),
        mean_fitness: sum / members.len() as f64,
        best_chromosome: members[best_idx].chromosome.clone(),
    }
}

/// Runs the full loop until exactly one termination criterion fires.
///
/// Criteria are checked after each generation is evaluated, in a fixed
/// precedence: fitness threshold (or exact optimum), stagnation, generation
/// backstop, wall clock. The first that holds names the run's
/// [`TerminationReason`].
pub fn run<P: Problem>(config: &GaConfig, problem: &P) -> Result<RunLog<P::Chromosome>> {
    validate_config(config, problem)?;
    let started = Instant::now();
    let mut rng = SeededRng::new(config.seed);

    let mut population = initialize(config, problem, &mut rng)?;
    let mut total_evaluations = population.len() as u64;
    let mut history = vec![collect_stats(&population)];
    let mut best = best_of(&population);

    let termination = loop {
        let current_best = history.last().expect("at least generation 0").best_fitness;
        let spec = &config.termination;

        let threshold_met = spec.fitness_threshold.is_some_and(|t| current_best <= t);
        if threshold_met || current_best == 0.0 {
            break TerminationReason::FitnessThreshold;
        }
        if let Some(window) = spec.stagnation_window {
            if converged(&history, window as usize, 0.0) {
                break TerminationReason::Stagnation;
            }
        }
        if population.generation() >= spec.max_generations {
            break TerminationReason::MaxGenerations;
        }
        if let Some(budget) = spec.wall_clock_budget {
            if started.elapsed() >= budget {
                break TerminationReason::WallClock;
            }
        }

        population = step(&population, config, problem, &mut rng)?;
        total_evaluations += population.len() as u64;
        history.push(collect_stats(&population));

        let generation_best = best_of(&population);
        if generation_best.fitness() < best.fitness() {
            best = generation_best;
        }
    };

    Ok(RunLog {
        config: config.clone(),
        stats: history,
        best,
        termination,
        total_evaluations,
    })
}

fn best_of<C: Clone + PartialEq + std::fmt::Debug>(population: &Population<C>) -> Individual<C> {
    population
        .members()
        .iter()
        .min_by(|a, b| {
            a.fitness()
                .expect("population evaluated")
                .total_cmp(&b.fitness().expect("population evaluated"))
        })
        .expect("population is never empty")
        .clone()
}
