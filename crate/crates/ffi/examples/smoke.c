#include <stdio.h>
#include <string.h>

#include "crclass.h"

int main(void) {
    const char *doc = "{\"n\": 1, \"c\": 3, \"phi\": [\"z*zb\", \"z*zb*(z + zb)\", \"z*zb*(z^2 + 3/2*z*zb + zb^2)\"]}";
    CrcManifold *m = NULL;
    if (crc_manifold_from_json(doc, &m) != CRC_STATUS_OK) {
        fprintf(stderr, "load: %s\n", crc_last_error());
        return 1;
    }
    CrcReport *r = NULL;
    if (crc_classify(m, &r) != CRC_STATUS_OK) {
        fprintf(stderr, "classify: %s\n", crc_last_error());
        return 1;
    }
    CrcVerdict v;
    crc_report_verdict(r, &v);
    char *json = NULL;
    crc_report_json(r, &json);
    int ok = v == CRC_VERDICT_CLASS_III2 && strstr(json, "\"ClassIII2\"") != NULL;
    printf("%s\n", ok ? "ClassIII2" : "unexpected");
    crc_string_free(json);
    crc_report_free(r);
    crc_manifold_free(m);

    if (crc_manifold_from_json("{\"n\": 1}", &m) != CRC_STATUS_PARSE) {
        return 1;
    }
    return ok ? 0 : 1;
}
