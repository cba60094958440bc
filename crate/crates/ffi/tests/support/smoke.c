/* End-to-end exercise of the C API: load an instance, solve it exactly,
 * evolve it, and check determinism. Exits nonzero on the first failure. */

#include <stdio.h>
#include <string.h>

#include "ga_engine.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            char message[256] = {0};                                    \
            ga_last_error_message(message, sizeof message);             \
            fprintf(stderr, "FAILED %s:%d: %s (%s)\n", __FILE__,        \
                    __LINE__, #cond, message);                          \
            return 1;                                                   \
        }                                                               \
    } while (0)

static const char *EDGES =
    "From,To,Distance\n"
    "P1,P2,5\nP1,P3,3\nP1,P4,4\nP1,P5,6\nP1,P6,2\n"
    "P2,P3,7\nP2,P4,4\nP2,P5,3\nP2,P6,5\n"
    "P3,P4,9\nP3,P5,8\nP3,P6,8\n"
    "P4,P5,4\nP4,P6,3\n"
    "P5,P6,6\n";

int main(void) {
    GaTspInstance *instance = NULL;
    CHECK(ga_tsp_instance_from_csv_text(EDGES, &instance) == GA_STATUS_OK);
    CHECK(ga_tsp_instance_place_count(instance) == 6);

    double optimal_length = 0.0;
    uint64_t enumerated = 0;
    uint32_t tour[7] = {0};
    size_t written = 0;
    CHECK(ga_oracle_solve(instance, &optimal_length, &enumerated, tour, 7,
                          &written) == GA_STATUS_OK);
    CHECK(optimal_length == 22.0);
    CHECK(enumerated == 120);
    CHECK(written == 7);
    CHECK(tour[0] == 0 && tour[6] == 0);

    GaRunOptions options = ga_run_options_default();
    options.seed = 42;

    GaRunResult *first = NULL;
    GaRunResult *second = NULL;
    CHECK(ga_tsp_run(instance, &options, &first) == GA_STATUS_OK);
    CHECK(ga_tsp_run(instance, &options, &second) == GA_STATUS_OK);

    double best = ga_run_result_best_fitness(first);
    CHECK(best >= optimal_length);
    CHECK(best == ga_run_result_best_fitness(second));
    CHECK(ga_run_result_generations(first) == ga_run_result_generations(second));

    char rendered[128] = {0};
    size_t required = 0;
    CHECK(ga_run_result_best_rendered(first, rendered, sizeof rendered,
                                      &required) == GA_STATUS_OK);
    CHECK(strncmp(rendered, "P1-", 3) == 0);

    ga_run_result_free(first);
    ga_run_result_free(second);
    ga_tsp_instance_free(instance);

    printf("c smoke test ok: optimum %.0f, ga best %.0f, tour %s\n",
           optimal_length, best, rendered);
    return 0;
}
