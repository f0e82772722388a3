#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "dgpa.h"

int main(void) {
    const char *doc =
        "{\"generators\": [{\"name\": \"x1\", \"degree\": 1}, {\"name\": \"x2\", \"degree\": 2}],"
        " \"graded_commutative\": true,"
        " \"relations\": [\"x1.x1\", \"x1.x2 - x2.x1\"],"
        " \"differential\": {\"x2\": \"x1.x2\"},"
        " \"bracket\": {\"x1,x2\": \"x1.x2\"}}";
    DgpaAlgebra *alg = NULL;
    DgpaStatus st = dgpa_algebra_parse(doc, &alg);
    assert(st == DGPA_STATUS_OK);
    DgpaReport *report = NULL;
    st = dgpa_check(alg, 6, 8, &report);
    assert(st == DGPA_STATUS_OK);
    assert(dgpa_report_ok(report) == 1);
    char *json = dgpa_report_json(report);
    assert(json != NULL && strstr(json, "\"ok\": true") != NULL);
    dgpa_string_free(json);
    dgpa_report_free(report);

    st = dgpa_envelope(alg, 0, 5, 8, &report);
    assert(st == DGPA_STATUS_OK);
    json = dgpa_report_json(report);
    assert(strstr(json, "y_x1") != NULL);
    dgpa_string_free(json);
    dgpa_report_free(report);
    dgpa_algebra_free(alg);

    assert(dgpa_algebra_parse(NULL, &alg) == DGPA_STATUS_NULL_ARGUMENT);
    printf("c smoke ok, version %s\n", dgpa_version());
    return 0;
}
