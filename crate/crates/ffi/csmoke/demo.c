/* Smoke test of the C API: parse a geometry, print its invariant table,
 * run the GKZ check, and release everything. Build instructions in the
 * top-level README. */
#include <stdio.h>
#include <stdlib.h>
#include "../include/toric_ogw.h"

static const char *MANIFEST =
    "name = local_P2\n"
    "n = 3\n"
    "w = [[0,0],[1,0],[0,1],[-1,-1]]\n"
    "Q = [[-3,1,1,1]]\n";

static void fail(const char *where) {
    char *msg = ogw_last_error_message();
    fprintf(stderr, "%s failed: %s\n", where, msg ? msg : "(no detail)");
    ogw_string_free(msg);
    exit(1);
}

int main(void) {
    OgwGeometry *geometry = NULL;
    if (ogw_geometry_parse(MANIFEST, &geometry) != OGW_STATUS_OK) fail("parse");

    uint64_t volume = 0;
    if (ogw_volume(geometry, &volume) != OGW_STATUS_OK) fail("volume");
    printf("expected solutions: %llu\n", (unsigned long long)volume);

    char *table = NULL;
    if (ogw_generating_function(geometry, 6, &table) != OGW_STATUS_OK) fail("open-gw");
    printf("%s", table);
    ogw_string_free(table);

    char *report = NULL;
    OgwStatus status = ogw_gkz_check(geometry, 8, 3, &report);
    if (status == OGW_STATUS_RESIDUAL_FAILURE) {
        fprintf(stderr, "nonzero residuals:\n%s", report);
        ogw_string_free(report);
        ogw_geometry_free(geometry);
        return 2;
    }
    if (status != OGW_STATUS_OK) fail("gkz-check");
    ogw_string_free(report);

    ogw_geometry_free(geometry);
    printf("gkz check passed\n");
    return 0;
}
