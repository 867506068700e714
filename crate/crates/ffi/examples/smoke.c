/* Certify the ideal (x) and print the basis. Returns the run status. */
#include <stdio.h>

#include "realrad.h"

int main(void) {
    RealradOptions opts = realrad_options_default();
    RealradReport *report = NULL;
    if (realrad_run_text("vars: x\ngen: x^2\n", NULL, &opts, &report) != REALRAD_STATUS_OK) {
        fprintf(stderr, "error: %s\n", realrad_last_error());
        return 1;
    }
    printf("realrad %s, t = %d\n", realrad_version(), realrad_report_certified_t(report));
    for (size_t i = 0; i < realrad_report_basis_len(report); i++) {
        char *p = realrad_report_basis_element(report, i);
        printf("%s\n", p);
        realrad_string_free(p);
    }
    int status = (int)realrad_report_status(report);
    realrad_report_free(report);
    return status;
}
