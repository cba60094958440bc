//! C ABI for the ga-engine library.
//!
//! Conventions: handles are opaque and freed with their matching `_free`
//! function; every fallible call returns a [`GaStatus`] and writes its
//! result through out-pointers; the detailed message of the most recent
//! failure on the current thread is available via [`ga_last_error_message`].
//! Strings cross the boundary as NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use ga_engine::engine::{run, GaConfig, Problem, RunLog, TerminationReason, TerminationSpec};
use ga_engine::operators::{CrossoverOperator, CrossoverSpec, MutationOperator, MutationSpec};
use ga_engine::{
    brute_force_tsp, load_distance_edges, Alphabet, GaError, TargetStringInstance, TspInstance,
};

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes stripped");
    });
}

/// Outcome of a C API call. Anything other than `Ok` leaves a human-readable
/// explanation for [`ga_last_error_message`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Structured input (CSV) could not be parsed.
    ParseError = 3,
    /// The instance data is malformed (asymmetric, negative, incomplete...).
    InvalidInstance = 4,
    /// The instance exceeds the exhaustive-search cap.
    InstanceTooLarge = 5,
    /// The run options are invalid for the problem.
    InvalidConfig = 6,
    /// An argument fell outside its mathematical domain.
    DomainError = 7,
    /// The underlying file could not be read.
    IoError = 8,
    /// The caller's buffer is too small; retry with the reported size.
    BufferTooSmall = 9,
    /// The accessor does not apply to this result (e.g. tour of a string run).
    Unsupported = 10,
}

fn status_of(error: &GaError) -> GaStatus {
    match error {
        GaError::InvalidInstance(_) => GaStatus::InvalidInstance,
        GaError::InstanceTooLarge { .. } => GaStatus::InstanceTooLarge,
        GaError::InvalidPermutation(_) => GaStatus::InvalidInstance,
        GaError::Domain(_) => GaStatus::DomainError,
        GaError::Config(_) => GaStatus::InvalidConfig,
        GaError::Parse(_) => GaStatus::ParseError,
        GaError::Io(_) => GaStatus::IoError,
    }
}

fn fail(error: &GaError) -> GaStatus {
    set_last_error(&error.to_string());
    status_of(error)
}

/// Opaque handle to a loaded tour instance.
pub struct GaTspInstance {
    inner: TspInstance,
}

/// Opaque handle to a finished run.
pub struct GaRunResult {
    best_fitness: f64,
    generations: u32,
    total_evaluations: u64,
    termination: GaTerminationReason,
    rendered_best: CString,
    /// 0-based place indices of the best tour, home-anchored; empty for
    /// string runs.
    best_tour: Vec<u32>,
}

/// Crossover operator selector for [`GaRunOptions`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaCrossoverKind {
    Ox1 = 0,
    Pmx = 1,
    SinglePoint = 2,
}

/// Mutation operator selector for [`GaRunOptions`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaMutationKind {
    Swap = 0,
    RandomReset = 1,
}

/// Why a run stopped.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaTerminationReason {
    FitnessThreshold = 0,
    Stagnation = 1,
    MaxGenerations = 2,
    WallClock = 3,
}

impl From<TerminationReason> for GaTerminationReason {
    fn from(reason: TerminationReason) -> Self {
        match reason {
            TerminationReason::FitnessThreshold => GaTerminationReason::FitnessThreshold,
            TerminationReason::Stagnation => GaTerminationReason::Stagnation,
            TerminationReason::MaxGenerations => GaTerminationReason::MaxGenerations,
            TerminationReason::WallClock => GaTerminationReason::WallClock,
        }
    }
}

/// Run configuration. `stagnation_window` and `wall_clock_ms` are disabled
/// at 0; the fitness threshold applies only when `has_fitness_threshold` is
/// true. Start from [`ga_run_options_default`] and adjust.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GaRunOptions {
    pub population_size: usize,
    pub crossover_operator: GaCrossoverKind,
    pub crossover_rate: f64,
    pub mutation_operator: GaMutationKind,
    pub mutation_rate: f64,
    pub elitism_count: usize,
    pub seed: u64,
    pub max_generations: u32,
    pub has_fitness_threshold: bool,
    pub fitness_threshold: f64,
    pub stagnation_window: u32,
    pub wall_clock_ms: u64,
}

fn config_of(
    options: &GaRunOptions,
    crossover: CrossoverOperator,
    mutation: MutationOperator,
) -> GaConfig {
    GaConfig {
        population_size: options.population_size,
        crossover: CrossoverSpec {
            operator: crossover,
            rate: options.crossover_rate,
        },
        mutation: MutationSpec {
            operator: mutation,
            rate: options.mutation_rate,
        },
        elitism_count: options.elitism_count,
        seed: options.seed,
        termination: TerminationSpec {
            max_generations: options.max_generations,
            fitness_threshold: options
                .has_fitness_threshold
                .then_some(options.fitness_threshold),
            stagnation_window: (options.stagnation_window > 0).then_some(options.stagnation_window),
            wall_clock_budget: (options.wall_clock_ms > 0)
                .then(|| std::time::Duration::from_millis(options.wall_clock_ms)),
        },
    }
}

unsafe fn utf8_arg<'a>(pointer: *const c_char, name: &str) -> Result<&'a str, GaStatus> {
    if pointer.is_null() {
        set_last_error(&format!("{name} must not be NULL"));
        return Err(GaStatus::NullPointer);
    }
    CStr::from_ptr(pointer).to_str().map_err(|_| {
        set_last_error(&format!("{name} is not valid UTF-8"));
        GaStatus::InvalidUtf8
    })
}

macro_rules! require_nonnull {
    ($pointer:expr, $name:literal) => {
        if $pointer.is_null() {
            set_last_error(concat!($name, " must not be NULL"));
            return GaStatus::NullPointer;
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ga_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the most recent error message on this thread into `buffer`
/// (NUL-terminated, truncated to `capacity`). Returns the full message
/// length in bytes excluding the NUL, regardless of truncation.
///
/// # Safety
/// `buffer` must be NULL or point to at least `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ga_last_error_message(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buffer.is_null() && capacity > 0 {
            let copy_len = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer as *mut u8, copy_len);
            *buffer.add(copy_len) = 0;
        }
        bytes.len()
    })
}

/// Parses an edge-list CSV (`From,To,Distance`, labels `P1..Pn`) into an
/// instance handle. On success the caller owns the handle and must release
/// it with [`ga_tsp_instance_free`].
///
/// # Safety
/// `csv` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ga_tsp_instance_from_csv_text(
    csv: *const c_char,
    out: *mut *mut GaTspInstance,
) -> GaStatus {
    require_nonnull!(out, "out");
    let text = match utf8_arg(csv, "csv") {
        Ok(text) => text,
        Err(status) => return status,
    };
    match load_distance_edges(text) {
        Ok(matrix) => {
            *out = Box::into_raw(Box::new(GaTspInstance {
                inner: TspInstance::new(matrix),
            }));
            GaStatus::Ok
        }
        Err(error) => fail(&error),
    }
}

/// Reads and parses an edge-list CSV file. See
/// [`ga_tsp_instance_from_csv_text`].
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ga_tsp_instance_from_csv_file(
    path: *const c_char,
    out: *mut *mut GaTspInstance,
) -> GaStatus {
    require_nonnull!(out, "out");
    let path = match utf8_arg(path, "path") {
        Ok(path) => path,
        Err(status) => return status,
    };
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(error) => {
            set_last_error(&format!("cannot read {path}: {error}"));
            return GaStatus::IoError;
        }
    };
    match load_distance_edges(&text) {
        Ok(matrix) => {
            *out = Box::into_raw(Box::new(GaTspInstance {
                inner: TspInstance::new(matrix),
            }));
            GaStatus::Ok
        }
        Err(error) => fail(&error),
    }
}

/// Number of places in the instance, home included.
///
/// # Safety
/// `instance` must be a live handle from one of the constructors.
#[no_mangle]
pub unsafe extern "C" fn ga_tsp_instance_place_count(instance: *const GaTspInstance) -> usize {
    if instance.is_null() {
        return 0;
    }
    (*instance).inner.place_count()
}

/// Releases an instance handle. NULL is a no-op.
///
/// # Safety
/// `instance` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ga_tsp_instance_free(instance: *mut GaTspInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Defaults: population 50, OX1 at 0.9, swap at 0.2, one elite, seed 1,
/// 200-generation backstop, no optional criteria.
#[no_mangle]
pub extern "C" fn ga_run_options_default() -> GaRunOptions {
    GaRunOptions {
        population_size: 50,
        crossover_operator: GaCrossoverKind::Ox1,
        crossover_rate: 0.9,
        mutation_operator: GaMutationKind::Swap,
        mutation_rate: 0.2,
        elitism_count: 1,
        seed: 1,
        max_generations: 200,
        has_fitness_threshold: false,
        fitness_threshold: 0.0,
        stagnation_window: 0,
        wall_clock_ms: 0,
    }
}

fn finish_run<P: Problem>(
    log: &RunLog<P::Chromosome>,
    problem: &P,
    best_tour: Vec<u32>,
    out: *mut *mut GaRunResult,
) -> GaStatus {
    let rendered = problem.render(&log.best.chromosome).replace('\0', " ");
    let result = GaRunResult {
        best_fitness: log.best.fitness().expect("run logs are evaluated"),
        generations: log.last_generation(),
        total_evaluations: log.total_evaluations,
        termination: log.termination.into(),
        rendered_best: CString::new(rendered).expect("NUL bytes stripped"),
        best_tour,
    };
    // SAFETY: `out` was checked non-NULL by the callers.
    unsafe {
        *out = Box::into_raw(Box::new(result));
    }
    GaStatus::Ok
}

/// Evolves tours on the instance. On success the caller owns the result
/// handle and must release it with [`ga_run_result_free`].
///
/// # Safety
/// All pointers must be valid; `instance` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ga_tsp_run(
    instance: *const GaTspInstance,
    options: *const GaRunOptions,
    out: *mut *mut GaRunResult,
) -> GaStatus {
    require_nonnull!(instance, "instance");
    require_nonnull!(options, "options");
    require_nonnull!(out, "out");
    let options = &*options;

    let crossover = match options.crossover_operator {
        GaCrossoverKind::Ox1 => CrossoverOperator::Ox1,
        GaCrossoverKind::Pmx => CrossoverOperator::Pmx,
        GaCrossoverKind::SinglePoint => CrossoverOperator::SinglePoint,
    };
    let mutation = match options.mutation_operator {
        GaMutationKind::Swap => MutationOperator::Swap,
        GaMutationKind::RandomReset => MutationOperator::RandomReset,
    };
    let config = config_of(options, crossover, mutation);
    let problem = &(*instance).inner;

    match run(&config, problem) {
        Ok(log) => {
            let tour = ga_engine::tour_of(&log.best.chromosome);
            let best_tour = tour.iter().map(|p| p.index() as u32).collect();
            finish_run(&log, problem, best_tour, out)
        }
        Err(error) => fail(&error),
    }
}

/// Evolves candidates towards `target` (single-point crossover,
/// random-reset mutation). `alphabet` may be NULL for the default 95
/// printable ASCII characters. The options' operator fields are ignored.
///
/// # Safety
/// All pointers must be valid NUL-terminated strings / structs.
#[no_mangle]
pub unsafe extern "C" fn ga_string_run(
    target: *const c_char,
    alphabet: *const c_char,
    options: *const GaRunOptions,
    out: *mut *mut GaRunResult,
) -> GaStatus {
    require_nonnull!(options, "options");
    require_nonnull!(out, "out");
    let target = match utf8_arg(target, "target") {
        Ok(target) => target,
        Err(status) => return status,
    };
    let alphabet = if alphabet.is_null() {
        Alphabet::printable_ascii()
    } else {
        let chars = match utf8_arg(alphabet, "alphabet") {
            Ok(chars) => chars,
            Err(status) => return status,
        };
        match Alphabet::new(chars.chars()) {
            Ok(alphabet) => alphabet,
            Err(error) => return fail(&error),
        }
    };
    let instance = match TargetStringInstance::new(target, alphabet) {
        Ok(instance) => instance,
        Err(error) => return fail(&error),
    };

    let config = config_of(
        &*options,
        CrossoverOperator::SinglePoint,
        MutationOperator::RandomReset,
    );
    match run(&config, &instance) {
        Ok(log) => finish_run(&log, &instance, Vec::new(), out),
        Err(error) => fail(&error),
    }
}

/// Best (lowest) fitness reached by the run.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_best_fitness(result: *const GaRunResult) -> f64 {
    if result.is_null() {
        return f64::NAN;
    }
    (*result).best_fitness
}

/// Index of the last generation (= steps taken).
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_generations(result: *const GaRunResult) -> u32 {
    if result.is_null() {
        return 0;
    }
    (*result).generations
}

/// Total fitness evaluations performed.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_total_evaluations(result: *const GaRunResult) -> u64 {
    if result.is_null() {
        return 0;
    }
    (*result).total_evaluations
}

/// Which termination criterion ended the run.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_termination(
    result: *const GaRunResult,
) -> GaTerminationReason {
    if result.is_null() {
        return GaTerminationReason::MaxGenerations;
    }
    (*result).termination
}

/// Copies the rendered best individual (tour labels or candidate string)
/// into `buffer`, NUL-terminated. Returns `BufferTooSmall` and writes the
/// required capacity (including the NUL) to `required` when the buffer
/// cannot hold it.
///
/// # Safety
/// `result` must be a live handle; `buffer` must point to `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_best_rendered(
    result: *const GaRunResult,
    buffer: *mut c_char,
    capacity: usize,
    required: *mut usize,
) -> GaStatus {
    require_nonnull!(result, "result");
    let bytes = (*result).rendered_best.as_bytes_with_nul();
    if !required.is_null() {
        *required = bytes.len();
    }
    if buffer.is_null() || capacity < bytes.len() {
        set_last_error(&format!(
            "buffer of {capacity} bytes cannot hold {} bytes",
            bytes.len()
        ));
        return GaStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer as *mut u8, bytes.len());
    GaStatus::Ok
}

/// Copies the best tour as 0-based place indices (home-anchored, `n + 1`
/// entries) into `buffer`. Returns `Unsupported` for string runs. When the
/// buffer is too small, writes the required element count to `required` and
/// returns `BufferTooSmall`.
///
/// # Safety
/// `result` must be a live handle; `buffer` must point to `capacity`
/// elements.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_best_tour(
    result: *const GaRunResult,
    buffer: *mut u32,
    capacity: usize,
    required: *mut usize,
) -> GaStatus {
    require_nonnull!(result, "result");
    let tour = &(*result).best_tour;
    if tour.is_empty() {
        set_last_error("this result has no tour (string run)");
        return GaStatus::Unsupported;
    }
    if !required.is_null() {
        *required = tour.len();
    }
    if buffer.is_null() || capacity < tour.len() {
        set_last_error(&format!(
            "buffer of {capacity} elements cannot hold {} elements",
            tour.len()
        ));
        return GaStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(tour.as_ptr(), buffer, tour.len());
    GaStatus::Ok
}

/// Releases a run result. NULL is a no-op.
///
/// # Safety
/// `result` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ga_run_result_free(result: *mut GaRunResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Solves the instance exactly by exhaustive enumeration (capped at 11
/// places). Writes the optimal length, the number of tours enumerated, and
/// the home-anchored optimal tour (`n + 1` indices) into `tour_buffer`.
///
/// # Safety
/// `instance` must be a live handle; out-pointers must be valid;
/// `tour_buffer` must point to `tour_capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn ga_oracle_solve(
    instance: *const GaTspInstance,
    optimal_length: *mut f64,
    enumerated_count: *mut u64,
    tour_buffer: *mut u32,
    tour_capacity: usize,
    tour_written: *mut usize,
) -> GaStatus {
    require_nonnull!(instance, "instance");
    require_nonnull!(optimal_length, "optimal_length");
    require_nonnull!(enumerated_count, "enumerated_count");

    let result = match brute_force_tsp(&(*instance).inner) {
        Ok(result) => result,
        Err(error) => return fail(&error),
    };
    *optimal_length = result.optimal_length;
    *enumerated_count = result.enumerated_count;

    let tour: Vec<u32> = result
        .optimal_tour
        .iter()
        .map(|p| p.index() as u32)
        .collect();
    if !tour_written.is_null() {
        *tour_written = tour.len();
    }
    if tour_buffer.is_null() || tour_capacity < tour.len() {
        set_last_error(&format!(
            "tour buffer of {tour_capacity} elements cannot hold {} elements",
            tour.len()
        ));
        return GaStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(tour.as_ptr(), tour_buffer, tour.len());
    GaStatus::Ok
}
