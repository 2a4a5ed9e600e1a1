#include "parcav/report.hpp"

#include <cstdio>

namespace parcav {

std::string ConcavityReport::to_json() const {
    char buf[640];
    std::snprintf(buf, sizeof(buf),
                  "{\"check\":\"%s\",\"pass\":%s,\"worst_defect\":%.17g,"
                  "\"worst\":{\"x1\":[%.17g,%.17g],\"t1\":%.17g,"
                  "\"x2\":[%.17g,%.17g],\"t2\":%.17g,\"lambda\":%.17g},"
                  "\"samples\":%zu,\"tolerance\":%.17g,\"seed\":%llu}",
                  check.c_str(), pass ? "true" : "false", worst_defect,
                  worst.x1.x, worst.x1.y, worst.t1,
                  worst.x2.x, worst.x2.y, worst.t2, worst.lambda,
                  samples_tested, tolerance,
                  static_cast<unsigned long long>(seed));
    return buf;
}

} // namespace parcav
