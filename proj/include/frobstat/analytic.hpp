#pragma once

#include <functional>

namespace frobstat {

struct AnalyticConstants {
    double eta0 = 0.0;                 // unique real root of e*ln(eta) + eta = 0
    double support_min(int d) const;   // ((d-1)!)^{1/(d-1)}
    double tail_c(int d) const;        // d / (2*zeta(d-1))
};

// Riemann zeta for real s > 1, direct sum plus Euler-Maclaurin correction,
// absolute error <= 1e-12.  s <= 1 -> usage_error.
double zeta_real(double s);

// Exact limit density of the d = 3 normalized Frobenius number: zero up to
// sqrt(3), an elementary branch on [sqrt(3), 2], an arccos/log branch beyond.
double psi3_density(double R);

// The two closed-form pieces, each valid on the closure of its interval;
// exposed so the knot continuity can be checked one-sided.
double psi3_branch_middle(double R); // [sqrt(3), 2]
double psi3_branch_upper(double R);  // [2, infinity)

// Tail Psi_3(R) = P(limit value > R): exactly 1 for R <= sqrt(3); otherwise
// the density integrated from R with an asymptotic closure far out.
double psi3_tail(double R);

// Leading tail term d/(2*zeta(d-1)) * R^{-(d-1)}, d >= 3.
double main_term(int d, double R);

// k-th moment of the d = 3 limit distribution by quadrature: only k = 1 is
// finite and admitted (k = 0 returns the computed total mass, for testing).
double moment_exact_d3(int k);

AnalyticConstants constants();

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b] to the given
// absolute tolerance.  Exposed because tests use it as an independent oracle.
double adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth = 60);

} // namespace frobstat
