#include "frobstat/lattice.hpp"

#include "frobstat/errors.hpp"
#include "frobstat/frobenius.hpp"
#include "frobstat/parallel.hpp"
#include "frobstat/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace frobstat {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr double kPi = 3.14159265358979323846264338327950288;

i64 checked_addmul(i64 acc, i64 a, i64 b) {
    i128 r = static_cast<i128>(acc) + static_cast<i128>(a) * b;
    if (r > (i128(1) << 62) || r < -(i128(1) << 62))
        throw capacity_error("integer overflow in exact lattice arithmetic");
    return static_cast<i64>(r);
}

// --- Gram-Schmidt in long double over real row views ---------------------

struct Gso {
    std::vector<std::vector<long double>> mu; // mu[i][j], j < i
    std::vector<long double> B;               // squared GS norms
};

Gso gram_schmidt(const std::vector<std::vector<long double>>& rows) {
    const int k = static_cast<int>(rows.size());
    const int m = k ? static_cast<int>(rows[0].size()) : 0;
    Gso g;
    g.mu.assign(k, std::vector<long double>(k, 0.0L));
    g.B.assign(k, 0.0L);
    std::vector<std::vector<long double>> star(rows);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j) {
            long double dot = 0.0L;
            for (int t = 0; t < m; ++t) dot += rows[i][t] * star[j][t];
            long double mu = g.B[j] > 0.0L ? dot / g.B[j] : 0.0L;
            g.mu[i][j] = mu;
            for (int t = 0; t < m; ++t) star[i][t] -= mu * star[j][t];
        }
        long double nsq = 0.0L;
        for (int t = 0; t < m; ++t) nsq += star[i][t] * star[i][t];
        g.B[i] = nsq;
    }
    return g;
}

template <typename Row>
std::vector<std::vector<long double>> to_long_double(const std::vector<Row>& rows) {
    std::vector<std::vector<long double>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out[i].assign(rows[i].begin(), rows[i].end());
    return out;
}

// Exact rank over the integers, fraction-free elimination in __int128.
// Falls back to long double pivoting if intermediates would overflow.
int integer_rank(std::vector<std::vector<i64>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    std::vector<std::vector<i128>> a(rows, std::vector<i128>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
    const i128 limit = i128(1) << 62;
    i128 prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        const i128 x = a[rank][col];
        for (int i = rank + 1; i < rows; ++i) {
            const i128 u = a[i][col];
            for (int j = col; j < cols; ++j) {
                i128 y = a[i][j], v = a[rank][j];
                if (x > limit || x < -limit || y > limit || y < -limit || u > limit ||
                    u < -limit || v > limit || v < -limit)
                    throw capacity_error("rank: overflow");
                a[i][j] = (x * y - u * v) / prev;
            }
            a[i][col] = 0;
        }
        prev = x;
        ++rank;
    }
    return rank;
}

int real_rank(std::vector<std::vector<long double>> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    long double scale = 0.0L;
    for (auto& r : a)
        for (long double v : r) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0L) return 0;
    const long double tol = scale * 1e-12L;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = rank;
        for (int i = rank + 1; i < rows; ++i)
            if (std::fabs(a[i][col]) > std::fabs(a[pivot][col])) pivot = i;
        if (std::fabs(a[pivot][col]) <= tol) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = rank + 1; i < rows; ++i) {
            long double f = a[i][col] / a[rank][col];
            for (int j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

double det_from_gso(const Gso& g) {
    long double prod = 1.0L;
    for (long double b : g.B) prod *= b;
    return static_cast<double>(sqrtl(fabsl(prod)));
}

} // namespace

// --- LatticeBasis ---------------------------------------------------------

LatticeBasis LatticeBasis::from_integer_rows(std::vector<std::vector<i64>> rows) {
    LatticeBasis b;
    b.irows_ = std::move(rows);
    b.finish();
    return b;
}

LatticeBasis LatticeBasis::from_real_rows(std::vector<std::vector<double>> rows) {
    LatticeBasis b;
    b.drows_ = std::move(rows);
    b.finish();
    return b;
}

void LatticeBasis::finish() {
    const auto& shape = integral() ? irows_.size() : drows_.size();
    if (shape == 0) throw usage_error("lattice basis needs at least one row");
    std::size_t m = integral() ? irows_[0].size() : drows_[0].size();
    for (std::size_t i = 0; i < shape; ++i) {
        std::size_t len = integral() ? irows_[i].size() : drows_[i].size();
        if (len != m || m == 0) throw usage_error("lattice basis rows have inconsistent length");
    }
    if (shape > m) throw usage_error("lattice basis has more rows than ambient dimension");
    auto rows = integral() ? to_long_double(irows_) : to_long_double(drows_);
    Gso g = gram_schmidt(rows);
    if (integral()) {
        // exact independence test; the floating pivots may be meaningless
        // for ill-conditioned (pre-reduction) integer bases
        if (integer_rank(irows_) != static_cast<int>(shape))
            throw usage_error("lattice basis rows are linearly dependent");
    } else {
        for (long double b : g.B)
            if (!(b > 0.0L)) throw usage_error("lattice basis rows are linearly dependent");
    }
    det_ = det_from_gso(g);
}

int LatticeBasis::rank() const {
    return static_cast<int>(integral() ? irows_.size() : drows_.size());
}

int LatticeBasis::dim() const {
    return static_cast<int>(integral() ? irows_[0].size() : drows_[0].size());
}

std::vector<std::vector<double>> LatticeBasis::real_rows() const {
    if (!integral()) return drows_;
    std::vector<std::vector<double>> out(irows_.size());
    for (std::size_t i = 0; i < irows_.size(); ++i)
        out[i].assign(irows_[i].begin(), irows_[i].end());
    return out;
}

// --- kernel lattice --------------------------------------------------------

namespace {

struct ExtGcd {
    i64 g, x, y; // x*a + y*b = g
};

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r; std::swap(old_r, r);
        old_s -= q * s; std::swap(old_s, s);
        old_t -= q * t; std::swap(old_t, t);
    }
    return {old_r, old_s, old_t};
}

} // namespace

LatticeBasis kernel_lattice(const CoprimeVector& a) {
    const int d = a.d();
    // Unimodular row operations on the identity, mirroring the extended-gcd
    // reduction of the column vector a to (1, 0, ..., 0)^T.
    std::vector<std::vector<i64>> u(d, std::vector<i64>(d, 0));
    for (int i = 0; i < d; ++i) u[i][i] = 1;
    std::vector<i64> v = a.coeffs();
    for (int i = 1; i < d; ++i) {
        if (v[i] == 0) continue;
        ExtGcd e = ext_gcd(v[0], v[i]);
        std::vector<i64> rp(d), ri(d);
        const i64 p = v[i] / e.g, q = v[0] / e.g;
        for (int t = 0; t < d; ++t) {
            rp[t] = checked_addmul(0, e.x, u[0][t]);
            rp[t] = checked_addmul(rp[t], e.y, u[i][t]);
            ri[t] = checked_addmul(0, -p, u[0][t]);
            ri[t] = checked_addmul(ri[t], q, u[i][t]);
        }
        u[0] = std::move(rp);
        u[i] = std::move(ri);
        v[0] = e.g;
        v[i] = 0;
    }
    std::vector<std::vector<i64>> kernel(u.begin() + 1, u.end());
    LatticeBasis reduced = lll_reduce(LatticeBasis::from_integer_rows(std::move(kernel)));
    const double expected = a.norm();
    if (std::fabs(reduced.det() - expected) > 1e-9 * expected)
        throw std::logic_error("kernel_lattice: determinant does not match |a|");
    return reduced;
}

// --- LLL -------------------------------------------------------------------

namespace {

template <typename Scalar>
LatticeBasis lll_rows(std::vector<std::vector<Scalar>> rows, double delta, bool integral) {
    const int k = static_cast<int>(rows.size());
    int iter = 0;
    int kk = 1;
    Gso g = gram_schmidt(to_long_double(rows));
    for (int i = 0; i < k; ++i)
        if (!(g.B[i] > 0.0L)) throw usage_error("lll_reduce: rows are linearly dependent");
    while (kk < k) {
        if (++iter > 2'000'000) throw budget_error("lll_reduce: iteration budget exceeded");
        bool changed = false;
        for (int j = kk - 1; j >= 0; --j) {
            long double mu = g.mu[kk][j];
            if (std::fabs(mu) > 0.5L) {
                i64 q = static_cast<i64>(std::llroundl(mu));
                for (std::size_t t = 0; t < rows[kk].size(); ++t) {
                    if (integral)
                        rows[kk][t] = static_cast<Scalar>(
                            checked_addmul(static_cast<i64>(rows[kk][t]), -q,
                                           static_cast<i64>(rows[j][t])));
                    else
                        rows[kk][t] -= static_cast<Scalar>(static_cast<long double>(q) * rows[j][t]);
                }
                changed = true;
                g = gram_schmidt(to_long_double(rows));
            }
        }
        if (changed) g = gram_schmidt(to_long_double(rows));
        long double mu = g.mu[kk][kk - 1];
        if (g.B[kk] >= (static_cast<long double>(delta) - mu * mu) * g.B[kk - 1]) {
            ++kk;
        } else {
            std::swap(rows[kk], rows[kk - 1]);
            g = gram_schmidt(to_long_double(rows));
            kk = std::max(kk - 1, 1);
        }
    }
    if (integral) {
        std::vector<std::vector<i64>> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            out[i].assign(rows[i].begin(), rows[i].end());
        return LatticeBasis::from_integer_rows(std::move(out));
    }
    std::vector<std::vector<double>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i].assign(rows[i].begin(), rows[i].end());
    return LatticeBasis::from_real_rows(std::move(out));
}

} // namespace

LatticeBasis lll_reduce(const LatticeBasis& basis, double delta) {
    if (!(delta > 0.25 && delta < 1.0))
        throw usage_error("lll_reduce: delta must lie in (1/4, 1)");
    if (basis.rank() == 1) return basis;
    if (basis.integral()) {
        // Integer row operations are exact, so the determinant is preserved
        // structurally; the input basis may be too ill-conditioned for its
        // floating Gram determinant to be meaningful.
        return lll_rows(basis.int_rows(), delta, true);
    }
    LatticeBasis out = lll_rows(basis.real_rows(), delta, false);
    if (std::fabs(out.det() - basis.det()) > 1e-9 * basis.det())
        throw std::logic_error("lll_reduce: determinant drifted beyond tolerance");
    return out;
}

// --- successive minima -----------------------------------------------------

namespace {

struct FoundVector {
    long double norm_sq;            // exact when integral
    std::vector<i64> ivec;          // integral coordinates
    std::vector<long double> rvec;  // real coordinates
};

// Greedy selection of independent vectors in nondecreasing norm order.
// Returns the k selected norms, or an empty vector if fewer than k
// independent vectors are present.
std::vector<long double> greedy_minima(std::vector<const FoundVector*>& sorted, int k,
                                       bool integral) {
    std::vector<long double> lambdas_sq;
    std::vector<std::vector<i64>> isel;
    std::vector<std::vector<long double>> rsel;
    for (const FoundVector* v : sorted) {
        bool independent;
        if (integral) {
            auto m = isel;
            m.push_back(v->ivec);
            int r;
            try {
                r = integer_rank(m);
            } catch (const capacity_error&) {
                auto rm = rsel;
                rm.emplace_back(v->ivec.begin(), v->ivec.end());
                r = real_rank(rm);
            }
            independent = r == static_cast<int>(isel.size()) + 1;
        } else {
            auto m = rsel;
            m.push_back(v->rvec);
            independent = real_rank(m) == static_cast<int>(rsel.size()) + 1;
        }
        if (!independent) continue;
        lambdas_sq.push_back(v->norm_sq);
        if (integral) isel.push_back(v->ivec);
        rsel.emplace_back(v->rvec);
        if (static_cast<int>(lambdas_sq.size()) == k) return lambdas_sq;
    }
    return {};
}

double unit_ball_volume(int k) {
    return std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

} // namespace

MinimaProfile successive_minima(const LatticeBasis& basis, const EnumerationOptions& opts) {
    const int k = basis.rank();
    if (k > 6) throw usage_error("successive_minima: rank > 6 exceeds the enumeration budget");
    LatticeBasis red = k > 1 ? lll_reduce(basis) : basis;
    const bool integral = red.integral();
    auto rows = integral ? to_long_double(red.int_rows()) : to_long_double(red.real_rows());
    const int m = static_cast<int>(rows[0].size());
    Gso g = gram_schmidt(rows);

    // Initial radius: the largest reduced-basis row is >= lambda_k.
    long double radius_sq = 0.0L;
    std::vector<long double> row_norm_sq(k, 0.0L);
    for (int i = 0; i < k; ++i) {
        for (int t = 0; t < m; ++t) row_norm_sq[i] += rows[i][t] * rows[i][t];
        radius_sq = std::max(radius_sq, row_norm_sq[i]);
    }

    std::vector<FoundVector> found;
    std::vector<i64> nodes{0};
    std::vector<i64> coeff(k, 0);
    std::vector<long double> partial(k + 1, 0.0L); // partial[i]: contribution of levels > i-1

    // Pool used to shrink the radius as better independent sets appear.
    auto shrink = [&]() {
        std::vector<const FoundVector*> ptrs;
        ptrs.reserve(found.size());
        for (const auto& v : found)
            if (v.norm_sq <= radius_sq * (1.0L + 1e-12L)) ptrs.push_back(&v);
        std::sort(ptrs.begin(), ptrs.end(), [](const FoundVector* a, const FoundVector* b) {
            return a->norm_sq < b->norm_sq;
        });
        auto lambdas = greedy_minima(ptrs, k, integral);
        if (!lambdas.empty()) radius_sq = std::min(radius_sq, lambdas.back());
    };

    // Schnorr-Euchner depth-first enumeration from the top GS level down.
    // leading_zero tracks whether all chosen coefficients above are zero;
    // in that case only x >= 0 is enumerated (one of each +-v pair).
    const long double slack = 1.0L + 1e-12L;
    std::int64_t since_shrink = 0;
    auto record = [&](const std::vector<i64>& x) {
        FoundVector v;
        v.rvec.assign(m, 0.0L);
        if (integral) v.ivec.assign(m, 0);
        long double nsq = 0.0L;
        for (int t = 0; t < m; ++t) {
            long double acc = 0.0L;
            for (int i = 0; i < k; ++i) acc += static_cast<long double>(x[i]) * rows[i][t];
            v.rvec[t] = acc;
            nsq += acc * acc;
        }
        if (integral) {
            i64 insq = 0;
            for (int t = 0; t < m; ++t) {
                i64 acc = 0;
                for (int i = 0; i < k; ++i)
                    acc = checked_addmul(acc, x[i], red.int_rows()[i][t]);
                v.ivec[t] = acc;
                insq = checked_addmul(insq, acc, acc);
            }
            nsq = static_cast<long double>(insq);
        }
        if (nsq <= 0.0L || nsq > radius_sq * slack) return;
        v.norm_sq = nsq;
        found.push_back(std::move(v));
        if (static_cast<std::int64_t>(found.size()) > opts.store_budget)
            throw budget_error("successive_minima: vector store budget exceeded");
        if (++since_shrink >= 64) {
            since_shrink = 0;
            shrink();
        }
    };

    std::int64_t node_count = 0;
    auto enumerate = [&](auto&& self, int level, bool leading_zero) -> void {
        if (++node_count > opts.node_budget)
            throw budget_error("successive_minima: enumeration node budget exceeded");
        if (level < 0) {
            record(coeff);
            return;
        }
        long double center = 0.0L;
        for (int i = level + 1; i < k; ++i) center -= g.mu[i][level] * coeff[i];
        i64 base = static_cast<i64>(std::llroundl(center));
        // Zig-zag around the center; distances are nondecreasing per side.
        for (int side = 0; side < 2; ++side) {
            for (i64 step = side == 0 ? 0 : 1;; ++step) {
                i64 x = side == 0 ? base + step : base - step;
                if (leading_zero && x < 0) break;
                long double diff = static_cast<long double>(x) - center;
                long double add = g.B[level] * diff * diff;
                if (partial[level + 1] + add > radius_sq * slack) {
                    if (side == 0 && step == 0) continue; // other side may still fit
                    break;
                }
                coeff[level] = x;
                partial[level] = partial[level + 1] + add;
                self(self, level - 1, leading_zero && x == 0);
            }
        }
        coeff[level] = 0;
    };
    enumerate(enumerate, k - 1, true);
    shrink();

    std::vector<const FoundVector*> ptrs;
    for (const auto& v : found)
        if (v.norm_sq <= radius_sq * slack) ptrs.push_back(&v);
    std::sort(ptrs.begin(), ptrs.end(), [](const FoundVector* a, const FoundVector* b) {
        if (a->norm_sq != b->norm_sq) return a->norm_sq < b->norm_sq;
        return a->rvec < b->rvec;
    });
    auto lambdas_sq = greedy_minima(ptrs, k, integral);
    if (lambdas_sq.empty())
        throw std::logic_error("successive_minima: enumeration failed to realize all minima");

    MinimaProfile p;
    for (long double lsq : lambdas_sq) p.lambdas.push_back(std::sqrt(static_cast<double>(lsq)));
    for (int j = 0; j + 1 < k; ++j) p.ratios.push_back(p.lambdas[j + 1] / p.lambdas[j]);
    for (int j = 0; j + 1 < k; ++j)
        if (p.lambdas[j + 1] + 1e-12 < p.lambdas[j])
            throw std::logic_error("successive_minima: non-monotone minima");
    // Minkowski's second theorem, checked numerically on every profile.
    double prod = 1.0;
    for (double l : p.lambdas) prod *= l;
    const double vk = unit_ball_volume(k);
    const double det = red.det();
    double lo = det, hi = det;
    for (int i = 0; i < k; ++i) {
        lo *= 2.0 / (i + 1.0);
        hi *= 2.0;
    }
    if (prod * vk < lo * (1 - 1e-9) || prod * vk > hi * (1 + 1e-9))
        throw std::logic_error("successive_minima: Minkowski sandwich violated");
    return p;
}

// --- Aliev-Henk inequality ---------------------------------------------------

AlievHenkResult check_aliev_henk(const CoprimeVector& a) {
    if (a.d() < 3) throw usage_error("check_aliev_henk: requires d >= 3");
    const int n = a.d() - 1;
    FrobeniusResult fr = frobenius(a);
    MinimaProfile mp = successive_minima(kernel_lattice(a));
    AlievHenkResult r;
    r.lhs = fr.norm_s;
    r.rhs = 0.5 * n * std::pow(a.norm(), -1.0 / n) * mp.lambdas.back();
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

// --- mu_2 sampling -----------------------------------------------------------

bool in_fundamental_domain(double x, double y) {
    if (y <= 0.0) return false;
    if (x <= -0.5 || x > 0.5) return false;
    double zsq = x * x + y * y;
    if (zsq < 1.0) return false;
    if (x < 0.0 && zsq == 1.0) return false;
    return true;
}

Mu2Point mu2_point(std::uint64_t seed) {
    StreamRng rng(seed, 0x6d75325f706f696eULL);
    const double y0 = std::sqrt(3.0) / 2.0;
    Mu2Point p;
    for (int tries = 0; tries < 100000; ++tries) {
        double x = 0.5 - rng.next_double();          // (-1/2, 1/2]
        double y = y0 / (1.0 - rng.next_double());   // density ~ y^-2 on [y0, inf)
        if (x * x + y * y >= 1.0) {
            p.x = x;
            p.y = y;
            p.theta = 2.0 * kPi * rng.next_double();
            p.rejections = tries;
            return p;
        }
    }
    throw budget_error("mu2_point: rejection sampling failed to terminate");
}

LatticeBasis sample_mu2(std::uint64_t seed) {
    Mu2Point p = mu2_point(seed);
    const double a1 = std::sqrt(p.y);
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    std::vector<std::vector<double>> rows(2, std::vector<double>(2));
    rows[0][0] = a1 * c - (p.x / a1) * s;
    rows[0][1] = a1 * s + (p.x / a1) * c;
    rows[1][0] = -s / a1;
    rows[1][1] = c / a1;
    return LatticeBasis::from_real_rows(std::move(rows));
}

// --- ratio statistics ---------------------------------------------------------

std::vector<RatioStatRow> ratio_statistics(int d, std::int64_t T, std::int64_t count,
                                           std::uint64_t seed, int workers) {
    if (d < 3 || d > 5) throw usage_error("ratio_statistics: d must be in {3, 4, 5}");
    if (count < 1) throw usage_error("ratio_statistics: count must be positive");
    if (workers <= 0) workers = default_workers();
    const int n = d - 1;
    const std::array<double, 4> thresholds{1.0, 2.0, 4.0, 8.0};
    std::vector<std::vector<double>> ratios(count);
    parallel_for_chunks(count, workers, 64, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            StreamRng rng(seed, static_cast<std::uint64_t>(i));
            std::vector<i64> coeffs(d);
            do {
                for (auto& c : coeffs) c = rng.next_int(1, T);
            } while (gcd_vector(coeffs) != 1);
            MinimaProfile mp = successive_minima(kernel_lattice(CoprimeVector(coeffs)));
            ratios[i] = mp.ratios;
        }
    });
    std::vector<RatioStatRow> table;
    for (int j = 1; j < n; ++j) {
        for (double r : thresholds) {
            std::int64_t hits = 0;
            for (const auto& row : ratios)
                if (row[j - 1] >= r) ++hits;
            table.push_back({j, r, static_cast<double>(hits) / static_cast<double>(count)});
        }
    }
    return table;
}

} // namespace frobstat
