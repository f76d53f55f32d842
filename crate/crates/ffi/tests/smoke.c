#include <math.h>
#include <stdio.h>
#include "topksum.h"

int main(void) {
    const double x0[4] = {1.0, 2.0, 4.0, 3.0};
    TksResult *res = NULL;
    if (tks_project(x0, 4, 2, 5.0, TKS_METHOD_ESGS, &res) != TKS_STATUS_OK) return 1;
    double x[4];
    if (tks_result_copy_x(res, x, 4) != TKS_STATUS_OK) return 2;
    if (x[0] != 1.0 || x[1] != 2.0 || x[2] != 3.0 || x[3] != 2.0) return 3;
    if (tks_result_k0(res) != 1 || tks_result_k1(res) != 3) return 4;
    tks_result_free(res);
    if (tks_project(x0, 4, 0, 5.0, TKS_METHOD_ESGS, &res) != TKS_STATUS_INVALID_ARGUMENT) return 5;
    if (res != NULL) return 6;
    printf("%s\n", tks_version());
    return 0;
}
