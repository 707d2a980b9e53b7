#include "frobstat/statistics.hpp"

#include "frobstat/analytic.hpp"
#include "frobstat/errors.hpp"
#include "frobstat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

namespace frobstat {

void ExperimentConfig::validate() const {
    if (d < 2) throw usage_error("config: d must be >= 2");
    if (T < 2) throw usage_error("config: T must be >= 2");
    if (T > kDefaultMagnitudeCap) throw usage_error("config: T exceeds the magnitude cap");
    if (count < 1) throw usage_error("config: count must be >= 1");
    if (!domain.empty() && domain.size() != 1 && static_cast<int>(domain.size()) != d)
        throw usage_error("config: domain must give one range or one per axis");
    for (auto [lo, hi] : domain)
        if (!(0.0 <= lo && lo < hi && hi <= 1.0))
            throw usage_error("config: domain bounds must satisfy 0 <= lo < hi <= 1");
    for (int axis = 0; axis < d; ++axis) {
        auto [lo, hi] = axis_range(axis);
        if (lo > hi)
            throw usage_error("config: domain axis " + std::to_string(axis) +
                              " contains no integer coordinates at this T");
    }
}

std::pair<std::int64_t, std::int64_t> ExperimentConfig::axis_range(int axis) const {
    double lo = 0.0, hi = 1.0;
    if (domain.size() == 1) {
        lo = domain[0].first;
        hi = domain[0].second;
    } else if (!domain.empty()) {
        lo = domain[axis].first;
        hi = domain[axis].second;
    }
    const long double Tl = static_cast<long double>(T);
    auto lo_int = static_cast<std::int64_t>(ceill(static_cast<long double>(lo) * Tl - 1e-9L));
    auto hi_int = static_cast<std::int64_t>(floorl(static_cast<long double>(hi) * Tl + 1e-9L));
    return {std::max<std::int64_t>(1, lo_int), std::min(hi_int, T)};
}

std::vector<std::int64_t> draw_coprime_coeffs(
    StreamRng& rng, const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
    std::vector<std::int64_t> coeffs(ranges.size());
    do {
        for (std::size_t j = 0; j < ranges.size(); ++j)
            coeffs[j] = rng.next_int(ranges[j].first, ranges[j].second);
    } while (gcd_vector(coeffs) != 1);
    return coeffs;
}

SweepResult sample_sweep(const ExperimentConfig& config, int workers) {
    config.validate();
    if (workers <= 0) workers = default_workers();
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges(config.d);
    for (int axis = 0; axis < config.d; ++axis) ranges[axis] = config.axis_range(axis);

    SweepResult out;
    out.config = config;
    out.records.resize(config.count);
    std::atomic<std::int64_t> redraws{0};
    parallel_for_chunks(config.count, workers, 256, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t local_redraws = 0;
        for (std::int64_t i = begin; i < end; ++i) {
            StreamRng rng(config.seed, static_cast<std::uint64_t>(i));
            for (int attempt = 0;; ++attempt) {
                if (attempt > 1'000'000)
                    throw capacity_error("sample_sweep: persistent capacity errors at index " +
                                         std::to_string(i));
                CoprimeVector a(draw_coprime_coeffs(rng, ranges));
                try {
                    FrobeniusResult r = frobenius(a);
                    out.records[i] = {a.coeffs(), r.g, r.f, r.norm_prod, r.norm_s};
                    break;
                } catch (const capacity_error&) {
                    ++local_redraws; // redraw this sample from its own stream
                }
            }
        }
        redraws += local_redraws;
    });
    out.redraws = redraws.load();
    return out;
}

EmpiricalDistribution distribution_from_sweep(const SweepResult& sweep) {
    EmpiricalDistribution dist;
    dist.config = sweep.config;
    dist.redraws = sweep.redraws;
    dist.values.reserve(sweep.records.size());
    const bool prod = sweep.config.normalization == NormalizationKind::ProdPower;
    for (const auto& r : sweep.records) dist.values.push_back(prod ? r.norm_prod : r.norm_s);
    std::sort(dist.values.begin(), dist.values.end());
    return dist;
}

EmpiricalDistribution sample_coprime(const ExperimentConfig& config, int workers) {
    return distribution_from_sweep(sample_sweep(config, workers));
}

double empirical_psi(const EmpiricalDistribution& dist, double R) {
    if (dist.values.empty()) throw usage_error("empirical_psi: empty distribution");
    auto it = std::upper_bound(dist.values.begin(), dist.values.end(), R);
    return static_cast<double>(dist.values.end() - it) / static_cast<double>(dist.values.size());
}

Histogram histogram(const EmpiricalDistribution& dist, double bin_width) {
    if (!(bin_width > 0.0)) throw usage_error("histogram: bin_width must be positive");
    Histogram h;
    h.bin_width = bin_width;
    for (double v : dist.values)
        ++h.counts[static_cast<std::int64_t>(std::floor(v / bin_width))];
    h.total = static_cast<std::int64_t>(dist.values.size());
    return h;
}

double Histogram::density(std::int64_t bin) const {
    auto it = counts.find(bin);
    if (it == counts.end() || total == 0) return 0.0;
    return static_cast<double>(it->second) / (static_cast<double>(total) * bin_width);
}

double ks_distance(const EmpiricalDistribution& dist,
                   const std::function<double(double)>& cdf) {
    const std::size_t n = dist.values.size();
    if (n == 0) throw usage_error("ks_distance: empty distribution");
    // Both sides of every empirical step, with the reference's left limit
    // taken just below the step so step-function references compare exactly.
    double worst = 0.0;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && dist.values[j] == dist.values[i]) ++j;
        const double v = dist.values[i];
        double left = cdf(std::nextafter(v, -std::numeric_limits<double>::infinity()));
        double right = cdf(v);
        worst = std::max(worst, std::fabs(left - static_cast<double>(i) / nd));
        worst = std::max(worst, std::fabs(right - static_cast<double>(j) / nd));
        i = j;
    }
    return worst;
}

double tail_constant(const EmpiricalDistribution& dist, double R) {
    if (dist.values.empty()) throw usage_error("tail_constant: empty distribution");
    if (R < dist.values.front())
        throw usage_error("tail_constant: R is below the empirical support minimum");
    return empirical_psi(dist, R) * std::pow(R, dist.config.d - 1);
}

double moment_estimate(const EmpiricalDistribution& dist, int k) {
    if (k < 1 || k > dist.config.d - 2)
        throw usage_error("moment_estimate: the limit law has finite moments only for "
                          "1 <= k <= d-2");
    long double acc = 0.0L;
    for (double v : dist.values) acc += std::pow(static_cast<long double>(v), k);
    return static_cast<double>(acc / static_cast<long double>(dist.values.size()));
}

double concentration_fraction(const EmpiricalDistribution& dist, double alpha) {
    if (!(alpha > 1.0)) throw usage_error("concentration_fraction: alpha must exceed 1");
    if (dist.config.normalization != NormalizationKind::ProdPower)
        throw usage_error("concentration_fraction: defined for the product normalization");
    const double lo = constants().support_min(dist.config.d);
    const double hi = alpha * lo;
    auto first = std::upper_bound(dist.values.begin(), dist.values.end(), lo);
    auto last = std::lower_bound(dist.values.begin(), dist.values.end(), hi);
    if (last < first) return 0.0;
    return static_cast<double>(last - first) / static_cast<double>(dist.values.size());
}

std::int64_t count_unbalanced(int n, std::int64_t T, double alpha) {
    if (n < 1 || T < 1) throw usage_error("count_unbalanced: n and T must be positive");
    double total = std::pow(static_cast<double>(T), n);
    if (total > 1e8) throw usage_error("count_unbalanced: T^n exceeds the exhaustive budget 1e8");
    const double alpha_n = std::pow(alpha, n);
    std::vector<std::int64_t> x(n, 1);
    std::int64_t count = 0;
    while (true) {
        std::int64_t mx = 1;
        double prod = 1.0; // stays below 2^53: T^n <= 1e8
        for (std::int64_t c : x) {
            mx = std::max(mx, c);
            prod *= static_cast<double>(c);
        }
        if (std::pow(static_cast<double>(mx), n) > alpha_n * prod) ++count;
        int axis = 0;
        while (axis < n && ++x[axis] > T) x[axis++] = 1;
        if (axis == n) break;
    }
    return count;
}

} // namespace frobstat
