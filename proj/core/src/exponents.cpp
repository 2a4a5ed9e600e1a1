#include "parcav/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace parcav {

namespace {

void check_q_gamma(const Exponent& q, double gamma) {
    if (q.is_neg_inf() || (q.finite() && q.value() < 1.0))
        throw std::invalid_argument("source concavity exponent must satisfy q >= 1 or q = +inf");
    if (!(gamma >= 0.0) || !(gamma <= 0.5))
        throw std::invalid_argument("time weight must satisfy gamma in [0, 1/2]");
}

} // namespace

double solution_exponent(Exponent q, double gamma) {
    check_q_gamma(q, gamma);
    if (q.is_pos_inf()) return 1.0 / (2.0 * (1.0 + gamma));
    const double qq = q.value();
    return qq / (1.0 + 2.0 * qq + 2.0 * gamma * qq);
}

double energy_exponent(Exponent q, double gamma, int n) {
    check_q_gamma(q, gamma);
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (q.is_pos_inf()) return 1.0 / (n + 2.0 + gamma);
    const double qq = q.value();
    return qq / ((n + 2.0 + gamma) * qq + 1.0);
}

std::pair<double, double> semilinear_exponents(double gamma, int n) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("semilinear exponent needs gamma in (0, 1)");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return {(1.0 - gamma) / 2.0, (1.0 - gamma) / (n * (1.0 - gamma) + 2.0)};
}

double sharpness_threshold(Exponent q, double gamma) { return solution_exponent(q, gamma); }

StructureBeta structure_beta(double p, Exponent q, double gamma) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("structure exponent needs p in (0, 1)");
    check_q_gamma(q, gamma);
    const double inv_q = q.is_pos_inf() ? 0.0 : 1.0 / q.value();
    StructureBeta out;
    out.inv_beta = 3.0 - 1.0 / p + 2.0 * gamma + inv_q;
    out.beta = out.inv_beta == 0.0 ? Exponent::pos_inf() : Exponent(1.0 / out.inv_beta);
    out.concavity_valid = out.inv_beta < 1.0;
    return out;
}

} // namespace parcav
