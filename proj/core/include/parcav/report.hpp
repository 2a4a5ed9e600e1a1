#pragma once

#include <cstdint>
#include <string>

#include "parcav/domain.hpp"
#include "parcav/exponent.hpp"

namespace parcav {

// Parameters of a concavity certification run.
struct ConcavityQuery {
    double alpha = 0.5;           // time-mean exponent, (0, 1]
    Exponent p = Exponent(0.5);   // concavity exponent under test
    std::size_t samples = 4096;   // quasi-random triples (>= 1000 for certification)
    double tolerance = 0.0;       // absolute defect threshold, > 0
    std::uint64_t seed = 0;
};

struct WorstTriple {
    Pt x1, x2;
    double t1 = 0.0, t2 = 0.0;
    double lambda = 0.5;
};

// Outcome of a midpoint-inequality scan.  The defect is
// M_p(u(x1,t1), u(x2,t2); lambda) - u(midpoint); fail iff the worst defect
// exceeds the tolerance.
struct ConcavityReport {
    std::string check;            // which scan produced this
    bool pass = false;
    double worst_defect = 0.0;
    WorstTriple worst;
    std::size_t samples_tested = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

} // namespace parcav
