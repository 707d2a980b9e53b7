#include "frobstat/verify.hpp"

#include "frobstat/analytic.hpp"
#include "frobstat/errors.hpp"
#include "frobstat/io.hpp"
#include "frobstat/lattice.hpp"
#include "frobstat/parallel.hpp"
#include "frobstat/rng.hpp"
#include "frobstat/simplex.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

namespace frobstat::verify {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrt3 = 1.73205080756887729352744634150587237;

// Frozen regression constants.  Values recorded from the first full runs of
// the quadrature / exhaustive counts they pin down; tests recompute the live
// route and compare against these.
constexpr double kFrozenM31 = 2.5464790894703254;     // moment_exact_d3(1)
constexpr double kFrozenAgmBound = 2.30;              // suite_agm normalized counts (max seen 2.122)
// Empirical maxima of prod_norm_factor/s_norm and s_norm/|a|^{d/(d-1)} per d
// (stable across T; margin ~15% over the recorded maxima).
constexpr double kFrozenC1[7] = {0, 0, 0.60, 0.40, 0.33, 0.28, 0.25};
constexpr double kFrozenC2[7] = {0, 0, 1.20, 1.65, 2.10, 2.55, 3.00};

Check make_check(const std::string& name, bool pass, const std::string& detail,
                 bool warn_only = false) {
    return Check{name, pass, warn_only, detail};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

int workers_of(const Options& opts) { return opts.workers > 0 ? opts.workers : default_workers(); }

std::int64_t scaled(const Options& opts, std::int64_t n) {
    auto v = static_cast<std::int64_t>(std::llround(opts.scale * static_cast<double>(n)));
    return std::max<std::int64_t>(1, v);
}

} // namespace

double frozen_m31() { return kFrozenM31; }

// --- sylvester ---------------------------------------------------------------

std::vector<Check> suite_sylvester() {
    std::int64_t pairs = 0, bad = 0;
    std::string first_fail;
    for (std::int64_t a1 = 2; a1 <= 200; ++a1) {
        for (std::int64_t a2 = 2; a2 <= 200; ++a2) {
            if (std::gcd(a1, a2) != 1) continue;
            ++pairs;
            FrobeniusResult r = frobenius(CoprimeVector({a1, a2}));
            if (r.f != a1 * a2 || r.g != sylvester(a1, a2)) {
                ++bad;
                if (first_fail.empty())
                    first_fail = "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
            }
        }
    }
    return {make_check("sylvester.f-equals-a1a2", bad == 0,
                       std::to_string(pairs) + " coprime pairs <= 200" +
                           (bad ? ", first failure " + first_fail : ""))};
}

// --- oracle ------------------------------------------------------------------

std::vector<Check> suite_oracle(const Options& opts) {
    std::vector<Check> out;
    for (int d : {2, 3, 4}) {
        std::atomic<std::int64_t> total{0}, bad{0};
        parallel_for_chunks(30, workers_of(opts), 1, [&](std::int64_t begin, std::int64_t end) {
            std::vector<std::int64_t> a(d, 1);
            for (std::int64_t a1 = begin + 1; a1 <= end; ++a1) {
                a.assign(d, 1);
                a[0] = a1;
                std::int64_t local_total = 0, local_bad = 0;
                while (true) {
                    if (gcd_vector(a) == 1) {
                        ++local_total;
                        CoprimeVector v(a);
                        std::int64_t bound = std::max<std::int64_t>(0, schur_bound(v) + 1);
                        if (frobenius(v).g != frobenius_dp_oracle(v, bound)) ++local_bad;
                    }
                    int axis = 1;
                    while (axis < d && ++a[axis] > 30) a[axis++] = 1;
                    if (axis == d) break;
                }
                total += local_total;
                bad += local_bad;
            }
        });
        out.push_back(make_check("oracle.exhaustive.d" + std::to_string(d), bad.load() == 0,
                                 std::to_string(total.load()) + " coprime vectors, max coeff 30" +
                                     (bad.load() ? ", " + std::to_string(bad.load()) + " mismatches"
                                                 : "")));
    }
    // Round-robin vs Dijkstra engines on random medium-scale vectors.
    std::int64_t cross = scaled(opts, 500), bad = 0;
    for (std::int64_t i = 0; i < cross; ++i) {
        StreamRng rng(opts.seed, 0xd15c0000u + static_cast<std::uint64_t>(i));
        int d = 3 + static_cast<int>(rng.next_int(0, 2));
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges(d, {1, 100000});
        CoprimeVector a(draw_coprime_coeffs(rng, ranges));
        FrobeniusOptions rr, dij;
        dij.engine = FrobeniusEngine::Dijkstra;
        if (frobenius(a, rr).g != frobenius(a, dij).g) ++bad;
    }
    out.push_back(make_check("oracle.engines-agree", bad == 0,
                             std::to_string(cross) + " random vectors, d in {3,4,5}, T = 1e5"));
    return out;
}

// --- psi3 ---------------------------------------------------------------------

std::vector<Check> suite_psi3() {
    std::vector<Check> out;
    const double c2 = 9.0 / (kPi * kPi);
    const double c4 = 33.0 / (2.0 * kPi * kPi);

    double total = moment_exact_d3(0);
    out.push_back(make_check("psi3.total-mass", std::fabs(total - 1.0) <= 1e-6,
                             "integral = " + format_real(total)));

    double knot1 = std::fabs(psi3_branch_middle(kSqrt3) - 0.0);
    double knot2 = std::fabs(psi3_branch_middle(2.0) - psi3_branch_upper(2.0));
    out.push_back(make_check("psi3.continuity-knots", knot1 <= 1e-9 && knot2 <= 1e-9,
                             "sqrt3 gap " + fmt(knot1) + ", 2 gap " + fmt(knot2)));

    out.push_back(make_check("psi3.tail-at-support", psi3_tail(kSqrt3) == 1.0 &&
                                                         psi3_tail(0.0) == 1.0,
                             "Psi3(sqrt3) = Psi3(0) = 1"));

    double t100 = psi3_tail(100.0) * 1e4;
    out.push_back(make_check("psi3.expansion-100",
                             std::fabs(t100 - c2) <= 3e-4 * c2,
                             "Psi3(100)*100^2 = " + format_real(t100) + ", 9/pi^2 = " +
                                 format_real(c2)));

    bool nonneg = true, monotone = true;
    double prev = 2.0;
    for (int i = 0; i < 10000; ++i) {
        double R = 50.0 * i / 9999.0;
        if (psi3_density(R) < 0.0) nonneg = false;
        double t = psi3_tail(R);
        if (t > prev + 1e-12) monotone = false;
        prev = t;
    }
    out.push_back(make_check("psi3.density-nonnegative", nonneg, "1e4-point grid over [0,50]"));
    out.push_back(make_check("psi3.tail-nonincreasing", monotone, "1e4-point grid over [0,50]"));

    // The remainder after the printed two terms is 38/pi^2 * R^-4 + O(R^-6)
    // (~3.85 R^-4), so 1e-3*R^-2 only brackets it for R >= ~62; at R = 50 the
    // order-of-remainder bound 4*R^-4 is the attainable form of the check.
    bool resid_ok = true;
    std::string resid_detail;
    for (double R : {50.0, 100.0, 200.0}) {
        double resid = std::fabs(psi3_tail(R) * R * R - c2 - c4 / (R * R));
        double bound = std::max(1e-3 / (R * R), 4.0 / (R * R * R * R));
        resid_detail += "R=" + fmt(R) + ":" + fmt(resid * R * R * R * R) + "*R^-4 ";
        if (resid > bound) resid_ok = false;
    }
    out.push_back(make_check("psi3.expansion-residual", resid_ok, resid_detail));

    bool mt_ok = true;
    const double tc3 = constants().tail_c(3);
    for (double R : {0.5, 1.0, 3.0, 17.0, 123.0})
        if (main_term(3, R) != tc3 * std::pow(R, -2.0)) mt_ok = false;
    out.push_back(make_check("psi3.main-term-form", mt_ok,
                             "main_term(3,R) == tail_c(3)*R^-2 bitwise"));
    return out;
}

// --- constants (section 2.4 Monte Carlo) --------------------------------------

std::vector<Check> suite_constants(const Options& opts) {
    std::vector<Check> out;
    const std::int64_t samples = scaled(opts, 1'000'000);
    for (int n = 2; n <= 5; ++n) {
        double w = mc_width_integral(n, samples, opts.seed, workers_of(opts));
        double w_target = 0.5 * n * (n + 1);
        bool ok = std::fabs(w - w_target) <= 0.01 * w_target;
        out.push_back(make_check("constants.width-integral.n" + std::to_string(n), ok,
                                 "estimate " + fmt(w) + " vs " + fmt(w_target) + " (1%)"));
        double v = mc_volume_K(n, samples, opts.seed + 1, workers_of(opts));
        double v_target = n + 1.0;
        ok = std::fabs(v - v_target) <= 0.015 * v_target;
        out.push_back(make_check("constants.volume-K.n" + std::to_string(n), ok,
                                 "estimate " + fmt(v) + " vs " + fmt(v_target) + " (1.5%)"));
    }
    return out;
}

// --- hard inequalities ----------------------------------------------------------

std::vector<Check> suite_inequalities(const Options& opts) {
    std::vector<Check> out;
    for (int d : {3, 4, 5}) {
        ExperimentConfig cfg;
        cfg.d = d;
        cfg.T = 10'000;
        cfg.count = scaled(opts, 10'000);
        cfg.seed = opts.seed + d;
        SweepResult sweep = sample_sweep(cfg, workers_of(opts));

        const double support = constants().support_min(d);
        const double sup_norm_D = std::sqrt(static_cast<double>(d));
        const double cut_s = cutoff_radius(NormalizationKind::SOfA, cfg.T, sup_norm_D, d);
        const double cut_p = cutoff_radius(NormalizationKind::ProdPower, cfg.T, sup_norm_D, d);

        std::int64_t bad_schur = 0, bad_fs = 0, bad_support = 0, bad_cut = 0, bad_sqrt3 = 0;
        for (const auto& r : sweep.records) {
            CoprimeVector a(r.a);
            if (r.g > schur_bound(a)) ++bad_schur;
            double fs_rhs = std::pow(a.norm(), 1.0 - 1.0 / (d - 1));
            if (!(r.norm_s < fs_rhs)) ++bad_fs;
            if (!(r.norm_prod > support)) ++bad_support;
            if (!(r.norm_s < cut_s) || !(r.norm_prod < cut_p)) ++bad_cut;
            if (d == 3 && !(r.norm_prod > kSqrt3 - 1e-12)) ++bad_sqrt3;
        }
        std::string tag = ".d" + std::to_string(d);
        out.push_back(make_check("inequalities.schur" + tag, bad_schur == 0,
                                 std::to_string(cfg.count) + " samples"));
        out.push_back(make_check("inequalities.f-over-s" + tag, bad_fs == 0,
                                 "norm_s < |a|^{1-1/(d-1)}"));
        out.push_back(make_check("inequalities.support" + tag, bad_support == 0,
                                 "norm_prod > ((d-1)!)^{1/(d-1)} = " + fmt(support)));
        if (d == 3)
            out.push_back(make_check("inequalities.support-sqrt3" + tag, bad_sqrt3 == 0,
                                     "norm_prod > sqrt(3) - 1e-12"));

        EmpiricalDistribution dist_p = distribution_from_sweep(sweep);
        SweepResult s_sweep = sweep;
        s_sweep.config.normalization = NormalizationKind::SOfA;
        EmpiricalDistribution dist_s = distribution_from_sweep(s_sweep);
        bool cut_ok = bad_cut == 0 && empirical_psi(dist_p, cut_p) == 0.0 &&
                      empirical_psi(dist_s, cut_s) == 0.0;
        out.push_back(make_check("inequalities.cutoffs" + tag, cut_ok,
                                 "zero mass at R >= " + fmt(cut_s) + " (s), " + fmt(cut_p) +
                                     " (prod)"));

        std::atomic<std::int64_t> bad_ah{0};
        parallel_for_chunks(
            static_cast<std::int64_t>(sweep.records.size()), workers_of(opts), 64,
            [&](std::int64_t begin, std::int64_t end) {
                std::int64_t local = 0;
                for (std::int64_t i = begin; i < end; ++i) {
                    if (!check_aliev_henk(CoprimeVector(sweep.records[i].a)).holds) ++local;
                }
                bad_ah += local;
            });
        out.push_back(make_check("inequalities.aliev-henk" + tag, bad_ah.load() == 0,
                                 std::to_string(cfg.count) + " samples"));
    }
    return out;
}

// --- lattice suite ---------------------------------------------------------------

namespace {

// Independent successive-minima oracle: all coefficient vectors in a box.
std::vector<double> brute_force_minima_rank3(const std::vector<std::vector<std::int64_t>>& rows,
                                             int box) {
    struct Cand {
        std::int64_t nsq;
        std::array<std::int64_t, 3> coeff;
    };
    std::vector<Cand> cands;
    const int m = static_cast<int>(rows[0].size());
    for (std::int64_t x = -box; x <= box; ++x)
        for (std::int64_t y = -box; y <= box; ++y)
            for (std::int64_t z = -box; z <= box; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                std::int64_t nsq = 0;
                for (int t = 0; t < m; ++t) {
                    std::int64_t c = x * rows[0][t] + y * rows[1][t] + z * rows[2][t];
                    nsq += c * c;
                }
                cands.push_back({nsq, {x, y, z}});
            }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.nsq < b.nsq; });
    std::vector<std::array<double, 3>> sel;
    std::vector<double> lambdas;
    for (const auto& c : cands) {
        std::array<double, 3> v{static_cast<double>(c.coeff[0]), static_cast<double>(c.coeff[1]),
                                static_cast<double>(c.coeff[2])};
        // rank test via 3x3 determinants against the selected set
        bool indep = true;
        if (sel.size() == 1) {
            const auto& a = sel[0];
            indep = std::fabs(a[0] * v[1] - a[1] * v[0]) + std::fabs(a[0] * v[2] - a[2] * v[0]) +
                        std::fabs(a[1] * v[2] - a[2] * v[1]) >
                    0.0;
        } else if (sel.size() == 2) {
            const auto& a = sel[0];
            const auto& b = sel[1];
            double det = a[0] * (b[1] * v[2] - b[2] * v[1]) - a[1] * (b[0] * v[2] - b[2] * v[0]) +
                         a[2] * (b[0] * v[1] - b[1] * v[0]);
            indep = std::fabs(det) > 0.0;
        }
        if (!indep) continue;
        sel.push_back(v);
        lambdas.push_back(std::sqrt(static_cast<double>(c.nsq)));
        if (sel.size() == 3) break;
    }
    return lambdas;
}

} // namespace

std::vector<Check> suite_lattice(const Options& opts) {
    std::vector<Check> out;
    for (int d = 3; d <= 6; ++d) {
        const std::int64_t count = scaled(opts, 1000);
        std::atomic<std::int64_t> bad{0};
        parallel_for_chunks(count, workers_of(opts), 32, [&](std::int64_t begin, std::int64_t end) {
            std::int64_t local = 0;
            for (std::int64_t i = begin; i < end; ++i) {
                StreamRng rng(opts.seed + 100 + d, static_cast<std::uint64_t>(i));
                std::vector<std::pair<std::int64_t, std::int64_t>> ranges(d, {1, 10'000});
                CoprimeVector a(draw_coprime_coeffs(rng, ranges));
                LatticeBasis k = kernel_lattice(a);
                if (k.rank() != d - 1 || std::fabs(k.det() - a.norm()) > 1e-9 * a.norm()) ++local;
            }
            bad += local;
        });
        out.push_back(make_check("lattice.kernel-det.d" + std::to_string(d), bad.load() == 0,
                                 std::to_string(count) + " random vectors, T = 1e4"));
    }

    const std::int64_t instances = scaled(opts, 100);
    std::int64_t bad = 0;
    std::string first_fail;
    for (std::int64_t i = 0; i < instances; ++i) {
        StreamRng rng(opts.seed + 7, static_cast<std::uint64_t>(i));
        std::vector<std::vector<std::int64_t>> rows;
        while (true) {
            rows.assign(3, std::vector<std::int64_t>(3));
            for (auto& row : rows)
                for (auto& v : row) v = rng.next_int(-5, 5);
            try {
                LatticeBasis b = LatticeBasis::from_integer_rows(rows);
                rows = lll_reduce(b).int_rows();
                break;
            } catch (const usage_error&) {
                // dependent draw; try again from the same stream
            }
        }
        MinimaProfile mp = successive_minima(LatticeBasis::from_integer_rows(rows));
        std::vector<double> oracle = brute_force_minima_rank3(rows, 15);
        bool ok = oracle.size() == 3;
        for (int j = 0; ok && j < 3; ++j)
            if (std::fabs(mp.lambdas[j] - oracle[j]) > 1e-9) ok = false;
        // sandwich re-check (also enforced inside successive_minima)
        double prod = mp.lambdas[0] * mp.lambdas[1] * mp.lambdas[2];
        double det = LatticeBasis::from_integer_rows(rows).det();
        double ball = 4.0 * kPi / 3.0;
        if (!(prod * ball >= 8.0 / 6.0 * det * (1 - 1e-9) &&
              prod * ball <= 8.0 * det * (1 + 1e-9)))
            ok = false;
        if (!ok) {
            ++bad;
            if (first_fail.empty()) first_fail = "instance " + std::to_string(i);
        }
    }
    out.push_back(make_check("lattice.minima-vs-bruteforce", bad == 0,
                             std::to_string(instances) + " seeded rank-3 instances" +
                                 (bad ? ", " + first_fail : "")));
    return out;
}

// --- covering radius -------------------------------------------------------------

std::vector<Check> suite_cover(const Options& opts) {
    std::vector<Check> out;
    const double tol = 1e-3;

    LatticeBasis z2 = LatticeBasis::from_integer_rows({{1, 0}, {0, 1}});
    CoverInterval c1 = covering_radius_2d(z2, tol);
    out.push_back(make_check("cover.z2-bracket",
                             c1.lo <= 2.0 + 1e-12 && 2.0 <= c1.hi + 1e-12 &&
                                 c1.hi - c1.lo <= tol + 1e-12,
                             "[" + format_real(c1.lo) + ", " + format_real(c1.hi) + "]"));

    LatticeBasis rect = LatticeBasis::from_real_rows({{2.0, 0.0}, {0.0, 0.5}});
    CoverInterval c2 = covering_radius_2d(rect, tol);
    out.push_back(make_check("cover.rect-bracket",
                             c2.lo <= 2.5 + 1e-12 && 2.5 <= c2.hi + 1e-12 &&
                                 c2.hi - c2.lo <= tol + 1e-12,
                             "[" + format_real(c2.lo) + ", " + format_real(c2.hi) + "]"));

    const std::int64_t samples = scaled(opts, 10'000);
    std::vector<double> lo(samples), hi(samples);
    parallel_for_chunks(samples, workers_of(opts), 16, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            std::uint64_t sub = StreamRng::mix(opts.seed) ^ StreamRng::mix(0xc0feULL + i);
            CoverInterval ci = covering_radius_2d(sample_mu2(sub), tol);
            lo[i] = ci.lo;
            hi[i] = ci.hi;
        }
    });
    double min_lo = *std::min_element(lo.begin(), lo.end());
    out.push_back(make_check("cover.support-lower-bound", min_lo >= kSqrt3 - tol,
                             "min lower bracket " + format_real(min_lo) + " over " +
                                 std::to_string(samples) + " mu2 samples"));

    bool psi_ok = true;
    std::string detail;
    for (double R : {1.8, 2.0, 2.5}) {
        std::int64_t over = 0;
        for (double l : lo)
            if (R < l) ++over; // membership rho(L) > R tested as R < lo
        double psi_hat = static_cast<double>(over) / static_cast<double>(samples);
        double exact = psi3_tail(R);
        detail += "R=" + fmt(R) + ": " + fmt(psi_hat) + " vs " + fmt(exact) + "; ";
        if (std::fabs(psi_hat - exact) > 0.03) psi_ok = false;
    }
    out.push_back(make_check("cover.psi3-match", psi_ok, detail));
    return out;
}

// --- concentration -----------------------------------------------------------------

std::vector<Check> suite_concentration(const Options& opts) {
    std::vector<Check> out;
    const double alpha = 1.757;
    std::vector<double> fractions;
    for (int d : {4, 5, 6}) {
        ExperimentConfig cfg;
        cfg.d = d;
        cfg.T = 10'000;
        cfg.count = scaled(opts, 20'000);
        cfg.seed = opts.seed + 1000 + d;
        EmpiricalDistribution dist = sample_coprime(cfg, workers_of(opts));
        fractions.push_back(concentration_fraction(dist, alpha));
    }
    bool monotone = fractions[0] <= fractions[1] && fractions[1] <= fractions[2];
    std::string detail = "fractions d=4,5,6: " + fmt(fractions[0]) + ", " + fmt(fractions[1]) +
                         ", " + fmt(fractions[2]);
    out.push_back(make_check("concentration.nondecreasing", monotone, detail));
    out.push_back(make_check("concentration.floor-d6", fractions[2] >= 0.8, detail,
                             /*warn_only=*/true));
    return out;
}

// --- AGM lemma ----------------------------------------------------------------------

std::vector<Check> suite_agm() {
    std::vector<Check> out;
    out.push_back(make_check("agm.example-n2", count_unbalanced(2, 4, 1.5) == 4,
                             "count_unbalanced(2, 4, 1.5) = " +
                                 std::to_string(count_unbalanced(2, 4, 1.5))));
    out.push_back(make_check("agm.alpha-below-1", count_unbalanced(2, 10, 0.99) == 100,
                             "every vector counts when alpha < 1"));
    bool ok = true;
    std::string detail;
    for (double alpha : {1.5, 2.0, 4.0, 8.0}) {
        std::int64_t c = count_unbalanced(3, 50, alpha);
        double norm = static_cast<double>(c) * std::pow(alpha, 3) /
                      (std::pow(50.0, 3) * std::log(2.0 + alpha));
        detail += "a=" + fmt(alpha) + ":" + fmt(norm) + " ";
        if (norm > kFrozenAgmBound) ok = false;
    }
    out.push_back(make_check("agm.normalized-bounded", ok,
                             detail + "<= " + fmt(kFrozenAgmBound)));
    return out;
}

// --- the criterion-4 sweep and its dependents ----------------------------------------

SweepResult reference_sweep_d3(const Options& opts) {
    ExperimentConfig cfg;
    cfg.d = 3;
    cfg.T = 100'000;
    cfg.count = scaled(opts, 100'000);
    cfg.seed = opts.seed;
    return sample_sweep(cfg, workers_of(opts));
}

namespace {

// CDF of the d=3 limit law evaluated at every sorted sample point, walking
// the density between consecutive order statistics (one Kronrod panel each,
// anchored at one full tail evaluation).
std::vector<double> psi3_cdf_at(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    std::vector<double> cdf(n);
    if (n == 0) return cdf;
    double tail = psi3_tail(sorted.back());
    auto seg = [](double a, double b) {
        if (a >= b) return 0.0;
        auto f = [](double r) { return psi3_density(r); };
        if (a < 2.0 && 2.0 < b)
            return adaptive_gk15(f, a, 2.0, 1e-14) + adaptive_gk15(f, 2.0, b, 1e-14);
        return adaptive_gk15(f, a, b, 1e-14);
    };
    cdf[n - 1] = 1.0 - tail;
    for (std::size_t i = n - 1; i-- > 0;) {
        tail += seg(sorted[i], sorted[i + 1]);
        cdf[i] = 1.0 - tail;
    }
    return cdf;
}

double ks_against_psi3(const EmpiricalDistribution& dist) {
    const std::vector<double>& v = dist.values;
    std::vector<double> cdf = psi3_cdf_at(v);
    double worst = 0.0;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::fabs(cdf[i] - static_cast<double>(i) / n));
        worst = std::max(worst, std::fabs(static_cast<double>(i + 1) / n - cdf[i]));
    }
    return worst;
}

} // namespace

std::vector<Check> suite_ks(const SweepResult& sweep, const Options& opts) {
    std::vector<Check> out;
    EmpiricalDistribution dist = distribution_from_sweep(sweep);
    double ks = ks_against_psi3(dist);
    if (ks <= 0.03) {
        out.push_back(make_check("ks.distributional-match", true,
                                 "KS = " + fmt(ks) + " <= 0.03 at T = " +
                                     std::to_string(sweep.config.T)));
    } else {
        // Spec fallback: rerun at T = 1e6 with the tolerance tightened to 0.02.
        ExperimentConfig cfg = sweep.config;
        cfg.T = 1'000'000;
        EmpiricalDistribution retry = sample_coprime(cfg, workers_of(opts));
        double ks2 = ks_against_psi3(retry);
        out.push_back(make_check("ks.distributional-match", ks2 <= 0.02,
                                 "KS = " + fmt(ks) + " > 0.03; fallback T = 1e6 gave KS = " +
                                     fmt(ks2) + " vs 0.02"));
    }
    Histogram h = histogram(dist, 0.01);
    std::int64_t mode_bin = 0, mode_count = -1;
    for (const auto& [bin, count] : h.counts)
        if (count > mode_count) {
            mode_count = count;
            mode_bin = bin;
        }
    double mode = (static_cast<double>(mode_bin) + 0.5) * h.bin_width;
    out.push_back(make_check("ks.histogram-mode", mode >= 1.7 && mode <= 2.1,
                             "mode at " + fmt(mode)));
    return out;
}

std::vector<Check> suite_moment(const SweepResult& sweep) {
    std::vector<Check> out;
    double live = moment_exact_d3(1);
    out.push_back(make_check("moment.quadrature-regression",
                             std::fabs(live - kFrozenM31) <= 1e-6,
                             "M_{3,1} = " + format_real(live) + " vs frozen " +
                                 format_real(kFrozenM31)));
    EmpiricalDistribution dist = distribution_from_sweep(sweep);
    double mean = moment_estimate(dist, 1);
    out.push_back(make_check("moment.sweep-mean", std::fabs(mean - live) <= 0.02 * live,
                             "empirical " + fmt(mean) + " vs exact " + fmt(live) + " (2%)"));
    return out;
}

std::vector<Check> suite_tail(const SweepResult& sweep) {
    EmpiricalDistribution dist = distribution_from_sweep(sweep);
    double ratio = tail_constant(dist, 4.0) / (9.0 / (kPi * kPi));
    return {make_check("tail.constant-at-R4", ratio >= 0.6 && ratio <= 1.3,
                       "psi_hat(4)*16/(9/pi^2) = " + fmt(ratio))};
}

// --- dispatch -------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "sylvester", "oracle", "inequalities", "constants",     "psi3", "ks",
        "cover",     "lattice", "moment",      "concentration", "tail", "agm"};
    return names;
}

std::vector<Check> run_suite(const std::string& name, const Options& opts) {
    if (name == "sylvester") return suite_sylvester();
    if (name == "oracle") return suite_oracle(opts);
    if (name == "inequalities") return suite_inequalities(opts);
    if (name == "constants") return suite_constants(opts);
    if (name == "psi3") return suite_psi3();
    if (name == "ks") return suite_ks(reference_sweep_d3(opts), opts);
    if (name == "cover") return suite_cover(opts);
    if (name == "lattice") return suite_lattice(opts);
    if (name == "moment") return suite_moment(reference_sweep_d3(opts));
    if (name == "concentration") return suite_concentration(opts);
    if (name == "tail") return suite_tail(reference_sweep_d3(opts));
    if (name == "agm") return suite_agm();
    throw usage_error("unknown verify suite '" + name + "'");
}

bool all_passed(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass && !c.warn_only) return false;
    return true;
}

} // namespace frobstat::verify
