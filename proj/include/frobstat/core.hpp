#pragma once

#include <cstdint>
#include <vector>

namespace frobstat {

// Which normalization divides f(a): the geometric factor (a_1...a_d)^{1/(d-1)}
// or the norm-weighted factor s(a).
enum class NormalizationKind { ProdPower, SOfA };

inline constexpr std::int64_t kDefaultMagnitudeCap = 100'000'000;

// Positive integer vector with gcd 1, length >= 2.  Construction validates;
// instances are immutable afterwards.
class CoprimeVector {
public:
    // Throws usage_error unless every entry is in [1, magnitude_cap], the
    // length is >= 2 and the overall gcd is 1.
    explicit CoprimeVector(std::vector<std::int64_t> coeffs,
                           std::int64_t magnitude_cap = kDefaultMagnitudeCap);

    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    int d() const { return static_cast<int>(coeffs_.size()); }
    std::int64_t min() const { return min_; }
    std::int64_t max() const { return max_; }
    std::int64_t sum() const { return sum_; }
    std::int64_t norm_sq() const { return norm_sq_; } // exact
    double norm() const;                              // Euclidean

    std::vector<std::int64_t> sorted() const;

private:
    std::vector<std::int64_t> coeffs_;
    std::int64_t min_ = 0, max_ = 0, sum_ = 0, norm_sq_ = 0;
};

struct FrobeniusResult {
    std::int64_t g = 0;     // Frobenius number, -1 when every nonneg integer is representable
    std::int64_t f = 0;     // g + sum of coefficients
    double norm_prod = 0.0; // f / (a_1...a_d)^{1/(d-1)}
    double norm_s = 0.0;    // f / s(a)
};

// gcd of a non-empty sequence of positive integers.  Empty input -> usage_error.
std::int64_t gcd_vector(const std::vector<std::int64_t>& coeffs);

// s(a) = sum_j a_j*sqrt(|a|^2 - a_j^2) / |a|^{1-1/(d-1)}.  Accumulated over
// sorted coefficients so permutations give bit-identical results.
double s_norm(const CoprimeVector& a);

// (a_1...a_d)^{1/(d-1)}, evaluated in log space; permutation-invariant.
double prod_norm_factor(const CoprimeVector& a);

// Schur's bound g(a) <= a_min*a_max - a_min - a_max.
std::int64_t schur_bound(const CoprimeVector& a);

// Radius beyond which the tail probability is exactly zero:
// (T*sup|D|)^{1-1/(d-1)} for the s(a) normalization, d times that for the
// product normalization.  Requires d >= 3.
double cutoff_radius(NormalizationKind kind, double T, double sup_norm_D, int d);

} // namespace frobstat
