//! # ga-engine
//!
//! A deterministic, seedable genetic-algorithm engine with pluggable
//! selection, crossover, and mutation operators.
//!
//! Two problems ship with the engine: round-trip tours over a symmetric
//! distance matrix (permutation encoding, OX1/PMX crossover, swap mutation)
//! and target-string matching (character encoding, single-point crossover,
//! random-reset mutation). Selection is roulette-wheel over 1/fitness with a
//! cumulative-probability lookup; lower fitness is always better.
//!
//! Reproducibility is a contract, not an accident: a run is a pure function
//! of its configuration and seed, every stochastic decision flows from one
//! counter-based generator in a documented order (see [`engine`]), and the
//! CLI writes byte-identical logs for identical inputs.
//!
//! For ground truth on small tour instances, [`oracle`] enumerates all
//! `(n-1)!` tours exhaustively and cross-checks itself against an
//! independent Held-Karp dynamic program. A bundled six-place worked example
//! ([`worked_example`]) carries recorded intermediate values that
//! [`reproduce`] recomputes and diffs cell by cell.
//!
//! ## Quick start
//!
//! ```rust
//! use ga_engine::engine::{run, GaConfig};
//! use ga_engine::worked_example;
//!
//! let instance = worked_example::instance();
//! let config = GaConfig { population_size: 20, seed: 7, ..GaConfig::default() };
//! let log = run(&config, &instance).unwrap();
//! assert!(log.best.fitness().unwrap() >= 22.0); // exhaustive optimum
//! ```

pub mod cli;
pub mod encoding;
pub mod engine;
pub mod error;
pub mod operators;
pub mod oracle;
pub mod problems;
pub mod reproduce;
pub mod rng;
pub mod worked_example;

pub use encoding::{
    random_permutation, random_string, tour_of, validate_permutation, Alphabet, Individual,
    PermutationChromosome, PlaceId, Population, StringChromosome,
};
pub use engine::{
    converged, evaluate, initialize, run, step, GaConfig, GenerationStats, Problem, RunLog,
    TerminationReason, TerminationSpec,
};
pub use error::{GaError, PermutationError, PermutationViolation, Result};
pub use operators::{
    build_wheel, order_crossover, pmx_crossover, random_reset_mutation, single_point_crossover,
    spin, swap_mutation, CrossoverOperator, CrossoverSpec, MutationOperator, MutationSpec,
    SelectionWheel,
};
pub use oracle::{brute_force_tsp, held_karp_tsp, OracleResult, MAX_ORACLE_PLACES};
pub use problems::{
    load_distance_edges, string_fitness, tsp_fitness, DistanceMatrix, TargetStringInstance,
    TspInstance,
};
pub use rng::SeededRng;
