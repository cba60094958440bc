#ifndef GA_ENGINE_H
#define GA_ENGINE_H

/* Generated by cbindgen from ga-engine-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a C API call. Anything other than `Ok` leaves a human-readable
// explanation for [`ga_last_error_message`].
typedef enum GaStatus {
  GA_STATUS_OK = 0,
  // A required pointer argument was NULL.
  GA_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  GA_STATUS_INVALID_UTF8 = 2,
  // Structured input (CSV) could not be parsed.
  GA_STATUS_PARSE_ERROR = 3,
  // The instance data is malformed (asymmetric, negative, incomplete...).
  GA_STATUS_INVALID_INSTANCE = 4,
  // The instance exceeds the exhaustive-search cap.
  GA_STATUS_INSTANCE_TOO_LARGE = 5,
  // The run options are invalid for the problem.
  GA_STATUS_INVALID_CONFIG = 6,
  // An argument fell outside its mathematical domain.
  GA_STATUS_DOMAIN_ERROR = 7,
  // The underlying file could not be read.
  GA_STATUS_IO_ERROR = 8,
  // The caller's buffer is too small; retry with the reported size.
  GA_STATUS_BUFFER_TOO_SMALL = 9,
  // The accessor does not apply to this result (e.g. tour of a string run).
  GA_STATUS_UNSUPPORTED = 10,
} GaStatus;

// Crossover operator selector for [`GaRunOptions`].
typedef enum GaCrossoverKind {
  GA_CROSSOVER_KIND_OX1 = 0,
  GA_CROSSOVER_KIND_PMX = 1,
  GA_CROSSOVER_KIND_SINGLE_POINT = 2,
} GaCrossoverKind;

// Mutation operator selector for [`GaRunOptions`].
typedef enum GaMutationKind {
  GA_MUTATION_KIND_SWAP = 0,
  GA_MUTATION_KIND_RANDOM_RESET = 1,
} GaMutationKind;

// Why a run stopped.
typedef enum GaTerminationReason {
  GA_TERMINATION_REASON_FITNESS_THRESHOLD = 0,
  GA_TERMINATION_REASON_STAGNATION = 1,
  GA_TERMINATION_REASON_MAX_GENERATIONS = 2,
  GA_TERMINATION_REASON_WALL_CLOCK = 3,
} GaTerminationReason;

// Opaque handle to a finished run.
typedef struct GaRunResult GaRunResult;

// Opaque handle to a loaded tour instance.
typedef struct GaTspInstance GaTspInstance;

// Run configuration. `stagnation_window` and `wall_clock_ms` are disabled
// at 0; the fitness threshold applies only when `has_fitness_threshold` is
// true. Start from [`ga_run_options_default`] and adjust.
typedef struct GaRunOptions {
  size_t population_size;
  enum GaCrossoverKind crossover_operator;
  double crossover_rate;
  enum GaMutationKind mutation_operator;
  double mutation_rate;
  size_t elitism_count;
  uint64_t seed;
  uint32_t max_generations;
  bool has_fitness_threshold;
  double fitness_threshold;
  uint32_t stagnation_window;
  uint64_t wall_clock_ms;
} GaRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *ga_version(void);

// Copies the most recent error message on this thread into `buffer`
// (NUL-terminated, truncated to `capacity`). Returns the full message
// length in bytes excluding the NUL, regardless of truncation.
//
// # Safety
// `buffer` must be NULL or point to at least `capacity` writable bytes.
size_t ga_last_error_message(char *buffer, size_t capacity);

// Parses an edge-list CSV (`From,To,Distance`, labels `P1..Pn`) into an
// instance handle. On success the caller owns the handle and must release
// it with [`ga_tsp_instance_free`].
//
// # Safety
// `csv` must be a valid NUL-terminated string and `out` a valid pointer.
enum GaStatus ga_tsp_instance_from_csv_text(const char *csv, struct GaTspInstance **out);

// Reads and parses an edge-list CSV file. See
// [`ga_tsp_instance_from_csv_text`].
//
// # Safety
// `path` must be a valid NUL-terminated string and `out` a valid pointer.
enum GaStatus ga_tsp_instance_from_csv_file(const char *path, struct GaTspInstance **out);

// Number of places in the instance, home included.
//
// # Safety
// `instance` must be a live handle from one of the constructors.
size_t ga_tsp_instance_place_count(const struct GaTspInstance *instance);

// Releases an instance handle. NULL is a no-op.
//
// # Safety
// `instance` must be NULL or a handle not yet freed.
void ga_tsp_instance_free(struct GaTspInstance *instance);

// Defaults: population 50, OX1 at 0.9, swap at 0.2, one elite, seed 1,
// 200-generation backstop, no optional criteria.
struct GaRunOptions ga_run_options_default(void);

// Evolves tours on the instance. On success the caller owns the result
// handle and must release it with [`ga_run_result_free`].
//
// # Safety
// All pointers must be valid; `instance` must be a live handle.
enum GaStatus ga_tsp_run(const struct GaTspInstance *instance,
                         const struct GaRunOptions *options,
                         struct GaRunResult **out);

// Evolves candidates towards `target` (single-point crossover,
// random-reset mutation). `alphabet` may be NULL for the default 95
// printable ASCII characters. The options' operator fields are ignored.
//
// # Safety
// All pointers must be valid NUL-terminated strings / structs.
enum GaStatus ga_string_run(const char *target,
                            const char *alphabet,
                            const struct GaRunOptions *options,
                            struct GaRunResult **out);

// Best (lowest) fitness reached by the run.
//
// # Safety
// `result` must be a live handle.
double ga_run_result_best_fitness(const struct GaRunResult *result);

// Index of the last generation (= steps taken).
//
// # Safety
// `result` must be a live handle.
uint32_t ga_run_result_generations(const struct GaRunResult *result);

// Total fitness evaluations performed.
//
// # Safety
// `result` must be a live handle.
uint64_t ga_run_result_total_evaluations(const struct GaRunResult *result);

// Which termination criterion ended the run.
//
// # Safety
// `result` must be a live handle.
enum GaTerminationReason ga_run_result_termination(const struct GaRunResult *result);

// Copies the rendered best individual (tour labels or candidate string)
// into `buffer`, NUL-terminated. Returns `BufferTooSmall` and writes the
// required capacity (including the NUL) to `required` when the buffer
// cannot hold it.
//
// # Safety
// `result` must be a live handle; `buffer` must point to `capacity` bytes.
enum GaStatus ga_run_result_best_rendered(const struct GaRunResult *result,
                                          char *buffer,
                                          size_t capacity,
                                          size_t *required);

// Copies the best tour as 0-based place indices (home-anchored, `n + 1`
// entries) into `buffer`. Returns `Unsupported` for string runs. When the
// buffer is too small, writes the required element count to `required` and
// returns `BufferTooSmall`.
//
// # Safety
// `result` must be a live handle; `buffer` must point to `capacity`
// elements.
enum GaStatus ga_run_result_best_tour(const struct GaRunResult *result,
                                      uint32_t *buffer,
                                      size_t capacity,
                                      size_t *required);

// Releases a run result. NULL is a no-op.
//
// # Safety
// `result` must be NULL or a handle not yet freed.
void ga_run_result_free(struct GaRunResult *result);

// Solves the instance exactly by exhaustive enumeration (capped at 11
// places). Writes the optimal length, the number of tours enumerated, and
// the home-anchored optimal tour (`n + 1` indices) into `tour_buffer`.
//
// # Safety
// `instance` must be a live handle; out-pointers must be valid;
// `tour_buffer` must point to `tour_capacity` elements.
enum GaStatus ga_oracle_solve(const struct GaTspInstance *instance,
                              double *optimal_length,
                              uint64_t *enumerated_count,
                              uint32_t *tour_buffer,
                              size_t tour_capacity,
                              size_t *tour_written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GA_ENGINE_H */
