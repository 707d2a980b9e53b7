#pragma once

#include "frobstat/core.hpp"

#include <cstdint>
#include <vector>

namespace frobstat {

// Basis of a rank-k lattice in R^m, k <= m.  Rows are kept exactly as
// integers when the lattice is integral, as doubles otherwise.  The
// covolume inside the row span is cached on construction.
class LatticeBasis {
public:
    static LatticeBasis from_integer_rows(std::vector<std::vector<std::int64_t>> rows);
    static LatticeBasis from_real_rows(std::vector<std::vector<double>> rows);

    bool integral() const { return !irows_.empty(); }
    int rank() const;
    int dim() const;
    const std::vector<std::vector<std::int64_t>>& int_rows() const { return irows_; }
    std::vector<std::vector<double>> real_rows() const;
    double det() const { return det_; }

private:
    LatticeBasis() = default;
    void finish(); // validates independence, caches det
    std::vector<std::vector<std::int64_t>> irows_;
    std::vector<std::vector<double>> drows_;
    double det_ = 0.0;
};

// Euclidean successive minima with their consecutive ratios.  Construction
// checks monotonicity and the Minkowski second-theorem sandwich.
struct MinimaProfile {
    std::vector<double> lambdas; // nondecreasing, > 0
    std::vector<double> ratios;  // lambdas[j+1]/lambdas[j] >= 1
};

// LLL-reduced integer basis of the kernel lattice {x in Z^d : a.x = 0},
// rank d-1, determinant |a| (validated to 1e-9 relative).
LatticeBasis kernel_lattice(const CoprimeVector& a);

// LLL reduction at the given delta (1/4 < delta < 1).  Same lattice, same
// determinant; dependent rows raise usage_error.
LatticeBasis lll_reduce(const LatticeBasis& basis, double delta = 0.99);

struct EnumerationOptions {
    std::int64_t node_budget = 80'000'000;
    std::int64_t store_budget = 4'000'000;
};

// Exact successive minima by Schnorr-Euchner enumeration with a shrinking
// radius, seeded from the LLL basis.  Rank <= 6.  Exceeding the node budget
// raises budget_error.
MinimaProfile successive_minima(const LatticeBasis& basis, const EnumerationOptions& opts = {});

struct AlievHenkResult {
    double lhs = 0.0; // f(a)/s(a)
    double rhs = 0.0; // (n/2) |a|^{-1/n} lambda_n(Lambda_a), n = d-1
    bool holds = false;
};

// Checks f(a)/s(a) <= (n/2)|a|^{-1/n} lambda_n(Lambda_a) with the two sides
// computed by the independent Frobenius and enumeration engines.
AlievHenkResult check_aliev_henk(const CoprimeVector& a);

// A point of the standard fundamental domain of SL(2,Z) on the upper half
// plane, plus the rotation angle completing the Iwasawa coordinates.
struct Mu2Point {
    double x = 0.0;
    double y = 1.0;
    double theta = 0.0;
    int rejections = 0;
};

// True iff x + iy lies in the fundamental domain {|x| <= 1/2, |z| >= 1}
// with the usual boundary convention (x <= 1/2, and x < 0 forces |z| > 1).
bool in_fundamental_domain(double x, double y);

// Draws z = x+iy from the hyperbolic area measure restricted to the
// fundamental domain (proposal on the strip y >= sqrt(3)/2, rejection into
// the domain) and a uniform rotation angle.  Fully determined by the seed.
Mu2Point mu2_point(std::uint64_t seed);

// Haar-random covolume-1 lattice in R^2: basis assembled from the Iwasawa
// coordinates of mu2_point (a1 = sqrt(y), u = x).
LatticeBasis sample_mu2(std::uint64_t seed);

struct RatioStatRow {
    int j = 0;           // ratio index, 1-based
    double r = 0.0;      // threshold
    double fraction = 0; // empirical P(rho_j >= r)
};

// Samples coprime a in {1..T}^d, computes the minima ratios of the kernel
// lattice, and tabulates tail fractions at r in {1, 2, 4, 8}.  d in {3,4,5}.
std::vector<RatioStatRow> ratio_statistics(int d, std::int64_t T, std::int64_t count,
                                           std::uint64_t seed, int workers = 0);

} // namespace frobstat
