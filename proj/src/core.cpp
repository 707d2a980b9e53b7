#include "frobstat/core.hpp"

#include "frobstat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace frobstat {

CoprimeVector::CoprimeVector(std::vector<std::int64_t> coeffs, std::int64_t magnitude_cap)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2)
        throw usage_error("coprime vector needs at least 2 coefficients, got " +
                          std::to_string(coeffs_.size()));
    for (std::int64_t c : coeffs_) {
        if (c < 1) throw usage_error("coefficient " + std::to_string(c) + " is not positive");
        if (c > magnitude_cap)
            throw usage_error("coefficient " + std::to_string(c) + " exceeds magnitude cap " +
                              std::to_string(magnitude_cap));
    }
    if (gcd_vector(coeffs_) != 1) throw usage_error("coefficients are not coprime (gcd != 1)");
    min_ = *std::min_element(coeffs_.begin(), coeffs_.end());
    max_ = *std::max_element(coeffs_.begin(), coeffs_.end());
    for (std::int64_t c : coeffs_) {
        sum_ += c;
        norm_sq_ += c * c; // cap 1e8 per entry keeps this well inside int64
    }
}

double CoprimeVector::norm() const { return std::sqrt(static_cast<double>(norm_sq_)); }

std::vector<std::int64_t> CoprimeVector::sorted() const {
    std::vector<std::int64_t> s = coeffs_;
    std::sort(s.begin(), s.end());
    return s;
}

std::int64_t gcd_vector(const std::vector<std::int64_t>& coeffs) {
    if (coeffs.empty()) throw usage_error("gcd_vector: empty sequence");
    std::int64_t g = 0;
    for (std::int64_t c : coeffs) {
        if (c < 1) throw usage_error("gcd_vector: entries must be positive");
        g = std::gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

double s_norm(const CoprimeVector& a) {
    const double nsq = static_cast<double>(a.norm_sq());
    double num = 0.0;
    for (std::int64_t c : a.sorted()) {
        double cd = static_cast<double>(c);
        num += cd * std::sqrt(nsq - cd * cd);
    }
    const double expo = 1.0 - 1.0 / (a.d() - 1);
    return num / std::pow(a.norm(), expo);
}

double prod_norm_factor(const CoprimeVector& a) {
    double log_sum = 0.0;
    for (std::int64_t c : a.sorted()) log_sum += std::log(static_cast<double>(c));
    return std::exp(log_sum / (a.d() - 1));
}

std::int64_t schur_bound(const CoprimeVector& a) {
    return a.min() * a.max() - a.min() - a.max();
}

double cutoff_radius(NormalizationKind kind, double T, double sup_norm_D, int d) {
    if (!(T > 0.0)) throw usage_error("cutoff_radius: T must be positive");
    if (!(sup_norm_D > 0.0)) throw usage_error("cutoff_radius: sup_norm_D must be positive");
    if (d < 3) throw usage_error("cutoff_radius: requires d >= 3");
    double base = std::pow(T * sup_norm_D, 1.0 - 1.0 / (d - 1));
    return kind == NormalizationKind::SOfA ? base : d * base;
}

} // namespace frobstat
