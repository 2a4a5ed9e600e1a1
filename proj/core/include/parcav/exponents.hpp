#pragma once

#include <utility>

#include "parcav/exponent.hpp"

namespace parcav {

// Exponent relations between the source concavity q, the time weight gamma,
// the dimension n and the certified concavity exponent p of the solution.
// q is the spatial concavity of the source (q >= 1, +inf for constants).

// p = q/(1+2q+2 gamma q); 1/(2(1+gamma)) at q = +inf.
double solution_exponent(Exponent q, double gamma);

// r = q/((n+2+gamma)q+1); 1/(n+2+gamma) at q = +inf.
double energy_exponent(Exponent q, double gamma, int n);

// Maximal-solution exponents for the sublinear source u^gamma:
// (p, q_energy) = ((1-gamma)/2, (1-gamma)/(n(1-gamma)+2)).
std::pair<double, double> semilinear_exponents(double gamma, int n);

// Threshold above which parabolic p-concavity provably fails; numerically
// identical to solution_exponent on the shared domain.
double sharpness_threshold(Exponent q, double gamma);

struct StructureBeta {
    double inv_beta = 0.0;       // 3 - 1/p + 2 gamma + 1/q
    Exponent beta = Exponent(0); // +inf when inv_beta == 0
    bool concavity_valid = false; // iff inv_beta < 1
};

// Aggregate concavity exponent of g(x,t,v) = v^{3-1/p} t^{2 gamma} f(x);
// the flag predicts the structure-condition verdict and equals
// p < solution_exponent(q, gamma) algebraically.
StructureBeta structure_beta(double p, Exponent q, double gamma);

} // namespace parcav
