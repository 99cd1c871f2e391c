#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "leafstab.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    LeafstabVehicleParams v = {1.0, 9.81, 0.1, 2.0, 3.0, 1.0, 1.0, 0.0, 1.0, 1.0};
    LeafstabReport *report = NULL;
    CHECK(leafstab_underwater_analyze(&v, 1.0, &report) == LEAFSTAB_STATUS_OK);

    LeafstabVerdict verdict;
    CHECK(leafstab_report_verdict(report, &verdict) == LEAFSTAB_STATUS_OK);
    CHECK(verdict == LEAFSTAB_VERDICT_STABLE_SUFFICIENT);

    double h[36];
    CHECK(leafstab_report_hessian(report, h, 36) == LEAFSTAB_STATUS_OK);
    CHECK(h[2 * 6 + 2] == 1.0);
    CHECK(leafstab_report_hessian(report, h, 35) == LEAFSTAB_STATUS_BUFFER_TOO_SMALL);

    char *json = NULL;
    CHECK(leafstab_report_to_json(report, &json) == LEAFSTAB_STATUS_OK);
    CHECK(strstr(json, "stable_sufficient") != NULL);
    leafstab_string_free(json);
    leafstab_report_free(report);

    v.i12 = 5.0;
    report = NULL;
    CHECK(leafstab_underwater_analyze(&v, 1.0, &report) == LEAFSTAB_STATUS_DOMAIN);
    CHECK(report == NULL);
    char msg[256];
    CHECK(leafstab_last_error_message(msg, sizeof msg) > 1);

    double radii[4];
    bool feasible[4];
    size_t n = 0;
    CHECK(leafstab_castalia_radii(radii, feasible, 4, &n) == LEAFSTAB_STATUS_OK);
    CHECK(n == 2 && !feasible[0] && feasible[1]);

    printf("ok %s\n", leafstab_version());
    return 0;
}
