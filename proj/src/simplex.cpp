#include "frobstat/simplex.hpp"

#include "frobstat/errors.hpp"
#include "frobstat/parallel.hpp"
#include "frobstat/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace frobstat {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

Direction::Direction(std::vector<double> v) : v_(std::move(v)) {
    if (v_.size() < 2) throw usage_error("Direction: needs n >= 2");
    double nsq = 0.0;
    for (double c : v_) nsq += c * c;
    if (std::fabs(std::sqrt(nsq) - 1.0) > 1e-12)
        throw usage_error("Direction: vector is not unit length");
}

Direction Direction::normalized(std::vector<double> v) {
    double nsq = 0.0;
    for (double c : v) nsq += c * c;
    if (!(nsq > 0.0)) throw usage_error("Direction: cannot normalize the zero vector");
    double inv = 1.0 / std::sqrt(nsq);
    for (double& c : v) c *= inv;
    return Direction(std::move(v));
}

double width(const Direction& v) {
    double hi = 0.0, lo = 0.0;
    for (double c : v.v()) {
        hi = std::max(hi, c);
        lo = std::min(lo, c);
    }
    return hi - lo;
}

double simplex_gauge(const std::vector<double>& x) {
    double sum = 0.0;
    for (double c : x) {
        if (c < 0.0) return std::numeric_limits<double>::infinity();
        sum += c;
    }
    return sum;
}

double sphere_surface_area(int n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double mc_width_integral(int n, std::int64_t samples, std::uint64_t seed, int workers) {
    if (n < 2) throw usage_error("mc_width_integral: requires n >= 2");
    if (samples < 1) throw usage_error("mc_width_integral: requires samples >= 1");
    if (workers <= 0) workers = default_workers();
    const std::int64_t chunk = 4096;
    const std::int64_t n_chunks = (samples + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
    parallel_for_chunks(samples, workers, chunk, [&](std::int64_t begin, std::int64_t end) {
        double acc = 0.0;
        std::vector<double> g(n);
        for (std::int64_t i = begin; i < end; ++i) {
            StreamRng rng(seed, static_cast<std::uint64_t>(i));
            double nsq;
            do {
                nsq = 0.0;
                for (int t = 0; t < n; ++t) {
                    g[t] = rng.next_normal();
                    nsq += g[t] * g[t];
                }
            } while (!(nsq > 1e-300));
            const double inv = 1.0 / std::sqrt(nsq);
            double hi = 0.0, lo = 0.0;
            for (int t = 0; t < n; ++t) {
                double c = g[t] * inv;
                hi = std::max(hi, c);
                lo = std::min(lo, c);
            }
            acc += std::pow(hi - lo, -n);
        }
        partial[begin / chunk] = acc;
    });
    double sum = 0.0;
    for (double p : partial) sum += p; // fixed chunk order: worker-count independent
    return 0.5 * sphere_surface_area(n) * sum / static_cast<double>(samples);
}

bool in_width_body(const std::vector<double>& x) {
    double hi = 0.0, lo = 0.0;
    for (double c : x) {
        if (c < -1.0 || c > 1.0) return false;
        hi = std::max(hi, c);
        lo = std::min(lo, c);
    }
    return hi - lo <= 1.0;
}

double mc_volume_K(int n, std::int64_t samples, std::uint64_t seed, int workers) {
    if (n < 2) throw usage_error("mc_volume_K: requires n >= 2");
    if (samples < 1) throw usage_error("mc_volume_K: requires samples >= 1");
    if (workers <= 0) workers = default_workers();
    const std::int64_t chunk = 4096;
    const std::int64_t n_chunks = (samples + chunk - 1) / chunk;
    std::vector<std::int64_t> partial(n_chunks, 0);
    parallel_for_chunks(samples, workers, chunk, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t hits = 0;
        std::vector<double> x(n);
        for (std::int64_t i = begin; i < end; ++i) {
            StreamRng rng(seed, static_cast<std::uint64_t>(i));
            for (int t = 0; t < n; ++t) x[t] = 2.0 * rng.next_double() - 1.0;
            if (in_width_body(x)) ++hits;
        }
        partial[begin / chunk] = hits;
    });
    std::int64_t hits = 0;
    for (std::int64_t p : partial) hits += p;
    return std::ldexp(static_cast<double>(hits) / static_cast<double>(samples), n);
}

// --- covering radius, n = 2 --------------------------------------------------
//
// rho(L) = sup_zeta h(zeta) with h(zeta) = min_{p in L} gauge(p + zeta); h is
// periodic mod L, so the sup over the bounding box of a fundamental
// parallelogram is the global sup.  For an axis-aligned cell C = [lo, hi]:
//
//   sup_{zeta in C} h(zeta) <= U(C) := min{ sum(p) : p in L, p + lo >= 0 } + sum(hi),
//
// because any such p keeps p + zeta inside the orthant on the whole cell and
// the gauge is coordinate-monotone there.  U(C) - h(center) decays with the
// cell's l1 diameter away from the (axis-aligned) jump lines of the inner
// minimum, and bisection separates those, so the bracket converges.

namespace {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct CandidatePoint {
    double x, y, sum;
};

struct Cell {
    Vec2 lo, hi;
    double upper;
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const { return a.upper < b.upper; }
};

// First point (in nondecreasing sum order) dominating (cx, cy); +inf if none.
double scan_min_sum(const std::vector<CandidatePoint>& pts, double cx, double cy) {
    for (const auto& p : pts)
        if (p.x >= cx && p.y >= cy) return p.sum;
    return std::numeric_limits<double>::infinity();
}

} // namespace

CoverInterval covering_radius_2d(const LatticeBasis& L, double tol, const CoverOptions& opts) {
    if (L.rank() != 2 || L.dim() != 2)
        throw usage_error("covering_radius_2d: needs a rank-2 basis in R^2");
    if (!(tol >= 1e-4)) throw usage_error("covering_radius_2d: tol must be >= 1e-4");
    if (std::fabs(L.det() - 1.0) > 1e-9)
        throw usage_error("covering_radius_2d: basis is not unimodular (covolume 1)");

    // Lagrange-reduced basis keeps the fundamental cell compact.
    auto rows = lll_reduce(L).real_rows();
    const Vec2 b1{rows[0][0], rows[0][1]};
    const Vec2 b2{rows[1][0], rows[1][1]};

    // Bounding box of the fundamental parallelogram {t1 b1 + t2 b2}.
    Vec2 box_lo{std::min(0.0, b1.x) + std::min(0.0, b2.x),
                std::min(0.0, b1.y) + std::min(0.0, b2.y)};
    Vec2 box_hi{std::max(0.0, b1.x) + std::max(0.0, b2.x),
                std::max(0.0, b1.y) + std::max(0.0, b2.y)};

    // A lattice point dominating every per-cell constraint bounds the
    // candidate sums; aim for (t, t) with t past the rounding margin.
    const double margin = 0.5 * (std::fabs(b1.x) + std::fabs(b1.y) + std::fabs(b2.x) +
                                 std::fabs(b2.y));
    const double det = b1.x * b2.y - b1.y * b2.x;
    double need = std::max(0.0, std::max(-box_lo.x, -box_lo.y));
    double budget_sum = 0.0;
    for (double t = need + margin + 1.0;; t *= 2.0) {
        double alpha = (t * b2.y - t * b2.x) / det;
        double beta = (b1.x * t - b1.y * t) / det;
        double ra = std::round(alpha), rb = std::round(beta);
        Vec2 p{ra * b1.x + rb * b2.x, ra * b1.y + rb * b2.y};
        if (p.x >= need && p.y >= need) {
            budget_sum = p.x + p.y;
            break;
        }
        if (t > 1e12) throw budget_error("covering_radius_2d: no dominating lattice point found");
    }

    // Candidate points: everything any scan can return.
    std::vector<CandidatePoint> pts;
    {
        const double reach = std::max({budget_sum + std::fabs(box_hi.x) + std::fabs(box_hi.y),
                                       std::fabs(box_lo.x), std::fabs(box_lo.y)}) +
                             1.0;
        const double ib = reach * (std::fabs(b2.x) + std::fabs(b2.y)) / std::fabs(det) + 2.0;
        const double jb = reach * (std::fabs(b1.x) + std::fabs(b1.y)) / std::fabs(det) + 2.0;
        const long imax = std::lround(ib), jmax = std::lround(jb);
        for (long i = -imax; i <= imax; ++i) {
            for (long j = -jmax; j <= jmax; ++j) {
                double px = i * b1.x + j * b2.x;
                double py = i * b1.y + j * b2.y;
                if (px < -box_hi.x || py < -box_hi.y) continue;
                if (px + py > budget_sum) continue;
                pts.push_back({px, py, px + py});
            }
        }
        std::sort(pts.begin(), pts.end(),
                  [](const CandidatePoint& a, const CandidatePoint& b) { return a.sum < b.sum; });
    }

    auto eval_h = [&](double zx, double zy) {
        return scan_min_sum(pts, -zx, -zy) + zx + zy;
    };
    auto upper_bound_cell = [&](const Vec2& lo, const Vec2& hi) {
        return scan_min_sum(pts, -lo.x, -lo.y) + hi.x + hi.y;
    };

    double best_lo = 0.0;
    // Coarse seed grid lifts the lower bound before branching starts.
    const int grid = 8;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double zx = box_lo.x + (box_hi.x - box_lo.x) * (i + 0.5) / grid;
            double zy = box_lo.y + (box_hi.y - box_lo.y) * (j + 0.5) / grid;
            best_lo = std::max(best_lo, eval_h(zx, zy));
        }

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    heap.push({box_lo, box_hi, upper_bound_cell(box_lo, box_hi)});
    double pruned_hi = 0.0;
    std::int64_t cells = 0;
    while (!heap.empty()) {
        Cell top = heap.top();
        heap.pop();
        if (top.upper - best_lo <= tol)
            return {best_lo, std::max(best_lo, std::max(top.upper, pruned_hi))};
        if (++cells > opts.cell_budget)
            throw budget_error("covering_radius_2d: cell budget exceeded", best_lo,
                               std::max(best_lo, top.upper));
        const bool split_x = (top.hi.x - top.lo.x) >= (top.hi.y - top.lo.y);
        for (int half = 0; half < 2; ++half) {
            Cell child = top;
            if (split_x) {
                double mid = 0.5 * (top.lo.x + top.hi.x);
                (half == 0 ? child.hi.x : child.lo.x) = mid;
            } else {
                double mid = 0.5 * (top.lo.y + top.hi.y);
                (half == 0 ? child.hi.y : child.lo.y) = mid;
            }
            best_lo = std::max(best_lo, eval_h(0.5 * (child.lo.x + child.hi.x),
                                               0.5 * (child.lo.y + child.hi.y)));
            child.upper = upper_bound_cell(child.lo, child.hi);
            if (child.upper - best_lo > tol)
                heap.push(child);
            else
                pruned_hi = std::max(pruned_hi, child.upper);
        }
    }
    return {best_lo, std::max(best_lo, pruned_hi)};
}

} // namespace frobstat
