#include <stdio.h>
#include <string.h>
#include "multimono.h"

int main(void) {
    MmPoly *poly = NULL;
    if (mm_poly_parse("(y11+y21*y22+y31)(y11*y12+y21+y41)(y12+y22+y31)(y42+y51)", &poly) != MM_STATUS_OK) {
        return 10;
    }
    MmSolution *sol = NULL;
    if (mm_solve(poly, 2, MM_ALGORITHM_AUTO, 0, &sol) != MM_STATUS_OK) {
        return 11;
    }
    if (!mm_solution_found(sol) || mm_solution_len(sol) != 4) {
        return 12;
    }
    size_t choices[4];
    if (mm_solution_choices(sol, choices, 4) != MM_STATUS_OK) {
        return 13;
    }
    int ok = 0;
    if (mm_check_witness(poly, choices, 4, 2, &ok) != MM_STATUS_OK || !ok) {
        return 14;
    }
    char *mono = NULL;
    if (mm_solution_monomial(poly, sol, &mono) != MM_STATUS_OK) {
        return 15;
    }
    printf("%s\n", mono);
    mm_string_free(mono);
    mm_solution_free(sol);
    mm_poly_free(poly);

    MmPoly *bad = NULL;
    if (mm_poly_parse("(x1 +", &bad) != MM_STATUS_PARSE_ERROR || bad != NULL) {
        return 16;
    }
    if (mm_last_error() == NULL || strlen(mm_last_error()) == 0) {
        return 17;
    }
    return 0;
}
