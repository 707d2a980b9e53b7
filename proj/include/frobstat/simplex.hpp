#pragma once

#include "frobstat/lattice.hpp"

#include <cstdint>
#include <vector>

namespace frobstat {

// A unit vector in R^n, n >= 2; the norm is validated to 1e-12.
class Direction {
public:
    explicit Direction(std::vector<double> v);
    static Direction normalized(std::vector<double> v);
    const std::vector<double>& v() const { return v_; }
    int n() const { return static_cast<int>(v_.size()); }

private:
    std::vector<double> v_;
};

// Width of the standard simplex in direction v:
// max(0, v_1..v_n) - min(0, v_1..v_n); always in [1/sqrt(n), sqrt(2)].
double width(const Direction& v);

// Gauge of the standard simplex: sum of coordinates on the nonnegative
// orthant, +infinity outside.
double simplex_gauge(const std::vector<double>& x);

// Certified bracket for a covering radius.
struct CoverInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct CoverOptions {
    std::int64_t cell_budget = 4'000'000;
};

// Certified bracket [lo, hi], hi - lo <= tol, for the covering radius of
// the standard 2-simplex with respect to a rank-2 covolume-1 lattice.
// Branch-and-bound over a fundamental cell; see the implementation notes.
// tol < 1e-4 or a non-unimodular basis are usage errors; running out of
// cells raises budget_error carrying the best bracket.
CoverInterval covering_radius_2d(const LatticeBasis& L, double tol,
                                 const CoverOptions& opts = {});

// Monte Carlo estimate of the half-sphere integral of width^{-n}
// (limit n(n+1)/2), by uniform sphere sampling with Gaussian normalization.
double mc_width_integral(int n, std::int64_t samples, std::uint64_t seed, int workers = 0);

// Membership in K = {x in [-1,1]^n : spread of (0, x_1..x_n) <= 1}.
bool in_width_body(const std::vector<double>& x);

// Monte Carlo estimate of vol(K) (limit n+1): 2^n times the hit fraction
// of uniform samples from [-1,1]^n.
double mc_volume_K(int n, std::int64_t samples, std::uint64_t seed, int workers = 0);

// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_surface_area(int n);

} // namespace frobstat
