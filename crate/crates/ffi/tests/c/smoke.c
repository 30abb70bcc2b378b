#include <math.h>
#include <stdio.h>
#include <string.h>

#include "tensorcalc.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,         \
                    __LINE__, #cond);                                      \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    TcTensor *a = NULL, *x = NULL, *s = NULL;
    CHECK(tc_tensor_from_json("{\"dim\": 3, \"slots\": [\"down\"], \"components\": [1, 2, 3]}", &a) == TC_STATUS_OK);
    CHECK(tc_tensor_from_json("{\"dim\": 3, \"slots\": [\"up\"], \"components\": [1, 1, 1]}", &x) == TC_STATUS_OK);

    TcBindings *b = tc_bindings_new();
    CHECK(tc_bindings_insert(b, "a", a) == TC_STATUS_OK);
    CHECK(tc_bindings_insert(b, "x", x) == TC_STATUS_OK);
    CHECK(tc_einsum("s = a_r x^r", b, TC_MODE_STRICT, &s) == TC_STATUS_OK);
    double v = 0.0;
    CHECK(tc_tensor_len(s) == 1);
    CHECK(tc_tensor_copy_components(s, &v, 1) == TC_STATUS_OK);
    CHECK(v == 6.0);

    char *json = NULL;
    CHECK(tc_tensor_to_json(s, &json) == TC_STATUS_OK);
    CHECK(strstr(json, "6.0") != NULL);
    tc_string_free(json);

    TcTensor *bad = NULL;
    CHECK(tc_einsum("x^R", b, TC_MODE_STRICT, &bad) == TC_STATUS_EINSUM);
    CHECK(tc_last_error() != NULL && strstr(tc_last_error(), "position") != NULL);

    double m[16];
    CHECK(tc_boost(0.6, m) == TC_STATUS_OK);
    CHECK(fabs(m[0] - 1.25) < 1e-12);
    CHECK(tc_boost(1.0, m) == TC_STATUS_NUMERIC);

    tc_tensor_free(a);
    tc_tensor_free(x);
    tc_tensor_free(s);
    tc_bindings_free(b);
    puts("ok");
    return 0;
}
