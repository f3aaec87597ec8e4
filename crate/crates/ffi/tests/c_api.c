#include <math.h>
#include <stdio.h>
#include "gtn.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    GtnScenario *s = NULL;
    double v = 0.0;
    CHECK(gtn_scenario_new(0.70710678118654752, 1.0, 1.0, &s) == GTN_STATUS_OK);
    CHECK(gtn_gte(s, GTN_REDUCED_STATE_A_BI_CI, &v) == GTN_STATUS_OK);
    CHECK(fabs(v - 0.7310585786300049) < 1e-12);
    CHECK(gtn_svetlichny(s, GTN_REDUCED_STATE_BI_BII, &v) == GTN_STATUS_NOT_APPLICABLE);
    CHECK(gtn_last_error() != NULL);

    GtnDensity *d = NULL;
    CHECK(gtn_reduced_state(s, GTN_REDUCED_STATE_A_BI_CI, &d) == GTN_STATUS_OK);
    size_t dim = 0;
    CHECK(gtn_density_dim(d, &dim) == GTN_STATUS_OK && dim == 8);
    double re[64], im[64];
    CHECK(gtn_density_matrix(d, re, im, 64) == GTN_STATUS_OK);
    double tr = 0.0;
    for (size_t i = 0; i < dim; i++) tr += re[i * dim + i];
    CHECK(fabs(tr - 1.0) < 1e-12);
    CHECK(gtn_density_svetlichny_bruteforce(d, 16, 0, &v) == GTN_STATUS_OK);
    CHECK(v > 4.0);
    gtn_density_free(d);
    gtn_scenario_free(s);

    int exists = 0;
    CHECK(gtn_critical_temperature(0.70710678118654752, 1.0, &v, &exists) == GTN_STATUS_OK);
    CHECK(exists == 1 && fabs(v - 1.1345926571) < 1e-8);
    CHECK(gtn_scenario_new(2.0, 1.0, 1.0, &s) == GTN_STATUS_INVALID_PARAMETER);
    printf("ok\n");
    return 0;
}
