#pragma once

#include "frobstat/core.hpp"
#include "frobstat/frobenius.hpp"
#include "frobstat/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace frobstat {

// Sub-box of the unit cube, one [lo, hi] pair per axis; empty means the
// default (0,1] on every axis, a single pair broadcasts to all axes.
using DomainBox = std::vector<std::pair<double, double>>;

struct ExperimentConfig {
    int d = 3;
    std::int64_t T = 100'000;
    std::int64_t count = 1;
    std::uint64_t seed = 0;
    DomainBox domain;
    NormalizationKind normalization = NormalizationKind::ProdPower;

    void validate() const; // usage_error on violations
    // Inclusive integer coordinate range for one axis of T * domain.
    std::pair<std::int64_t, std::int64_t> axis_range(int axis) const;
};

struct SampleRecord {
    std::vector<std::int64_t> a;
    std::int64_t g = 0;
    std::int64_t f = 0;
    double norm_prod = 0.0;
    double norm_s = 0.0;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SampleRecord> records; // in sample-index order
    std::int64_t redraws = 0;          // capacity-error redraws
};

struct EmpiricalDistribution {
    std::vector<double> values; // sorted ascending, length = config.count
    ExperimentConfig config;
    std::int64_t redraws = 0;
};

// Draws one coprime vector from the given per-axis inclusive ranges,
// re-drawing on gcd != 1, all from the supplied stream.
std::vector<std::int64_t> draw_coprime_coeffs(
    StreamRng& rng, const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges);

// Full sweep with per-sample records.  Deterministic given the config;
// worker count affects throughput only.
SweepResult sample_sweep(const ExperimentConfig& config, int workers = 0);

// The selected normalization of f for each sample, sorted.
EmpiricalDistribution sample_coprime(const ExperimentConfig& config, int workers = 0);
EmpiricalDistribution distribution_from_sweep(const SweepResult& sweep);

// Fraction of values strictly greater than R.
double empirical_psi(const EmpiricalDistribution& dist, double R);

struct Histogram {
    double bin_width = 0.01;
    std::map<std::int64_t, std::int64_t> counts; // bin index -> count
    std::int64_t total = 0;
    double density(std::int64_t bin) const;
};

Histogram histogram(const EmpiricalDistribution& dist, double bin_width = 0.01);

// Two-sided Kolmogorov-Smirnov distance against a reference CDF, evaluated
// at both sides of every empirical step.
double ks_distance(const EmpiricalDistribution& dist,
                   const std::function<double(double)>& cdf);

// empirical_psi(dist, R) * R^{d-1}; compare with d/(2 zeta(d-1)).
double tail_constant(const EmpiricalDistribution& dist, double R);

// Mean of value^k; the limit law has finite moments only for 1 <= k <= d-2.
double moment_estimate(const EmpiricalDistribution& dist, int k);

// Fraction of values strictly inside
// (((d-1)!)^{1/(d-1)}, alpha*((d-1)!)^{1/(d-1)}); product normalization only.
double concentration_fraction(const EmpiricalDistribution& dist, double alpha);

// Exact count of x in {1..T}^n with |x|_inf / (x_1...x_n)^{1/n} > alpha.
// Exhaustive; T^n <= 1e8 enforced.
std::int64_t count_unbalanced(int n, std::int64_t T, double alpha);

} // namespace frobstat
