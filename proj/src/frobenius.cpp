#include "frobstat/frobenius.hpp"

#include "frobstat/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace frobstat {

namespace {

constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::max();

// Deduplicated coefficients other than the modulus occurrence, reduced set
// for table construction.  Duplicates contribute nothing to representability.
std::vector<std::int64_t> engine_coeffs(const CoprimeVector& a) {
    std::vector<std::int64_t> cs = a.sorted();
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

// Round-robin schedule: for each coefficient c, split Z/a1 into gcd(c, a1)
// orbits of the step r -> r + c, locate the orbit minimum, then relax once
// around the cycle.  Starting at the minimum makes a single pass exact.
void relax_round_robin(std::vector<std::int64_t>& n, std::int64_t a1, std::int64_t c) {
    const std::int64_t step = c % a1;
    if (step == 0) return;
    const std::int64_t d = std::gcd(step, a1);
    const std::int64_t orbit_len = a1 / d;
    for (std::int64_t q = 0; q < d; ++q) {
        std::int64_t best = q, cur = q;
        for (std::int64_t i = 1; i < orbit_len; ++i) {
            cur += step;
            if (cur >= a1) cur -= a1;
            if (n[cur] < n[best]) best = cur;
        }
        if (n[best] == kUnset) continue;
        cur = best;
        for (std::int64_t i = 1; i < orbit_len; ++i) {
            std::int64_t next = cur + step;
            if (next >= a1) next -= a1;
            if (n[cur] != kUnset && n[cur] + c < n[next]) n[next] = n[cur] + c;
            cur = next;
        }
    }
}

// Cross-check engine: shortest paths on the residue graph with edges
// r -> r+c of weight c.
std::vector<std::int64_t> dijkstra_table(std::int64_t a1, const std::vector<std::int64_t>& coeffs) {
    std::vector<std::int64_t> dist(a1, kUnset);
    using Node = std::pair<std::int64_t, std::int64_t>; // (dist, residue)
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
    dist[0] = 0;
    heap.push({0, 0});
    while (!heap.empty()) {
        auto [dv, v] = heap.top();
        heap.pop();
        if (dv != dist[v]) continue;
        for (std::int64_t c : coeffs) {
            std::int64_t step = c % a1;
            if (step == 0) continue;
            std::int64_t u = v + step;
            if (u >= a1) u -= a1;
            if (dv + c < dist[u]) {
                dist[u] = dv + c;
                heap.push({dist[u], u});
            }
        }
    }
    return dist;
}

} // namespace

ResidueTable residue_table(const CoprimeVector& a, const FrobeniusOptions& opts) {
    const std::int64_t a1 = a.min();
    if (a1 <= 1)
        throw usage_error("residue_table: modulus must exceed 1 (a_min = 1 is handled upstream)");
    if (a1 > opts.table_budget)
        throw capacity_error("residue table for coefficient " + std::to_string(a1) +
                             " exceeds the table budget of " + std::to_string(opts.table_budget) +
                             " entries");
    ResidueTable t;
    t.modulus = a1;
    std::vector<std::int64_t> coeffs = engine_coeffs(a);
    if (opts.engine == FrobeniusEngine::Dijkstra) {
        t.entries = dijkstra_table(a1, coeffs);
    } else {
        t.entries.assign(a1, kUnset);
        t.entries[0] = 0;
        for (std::int64_t c : coeffs) relax_round_robin(t.entries, a1, c);
    }
    return t;
}

FrobeniusResult frobenius(const CoprimeVector& a, const FrobeniusOptions& opts) {
    FrobeniusResult r;
    if (a.min() == 1) {
        r.g = -1;
    } else {
        ResidueTable t = residue_table(a, opts);
        std::int64_t worst = 0;
        for (std::int64_t e : t.entries) {
            if (e == kUnset)
                throw usage_error("residue class unreachable; coefficients not coprime");
            worst = std::max(worst, e);
        }
        r.g = worst - t.modulus;
    }
    r.f = r.g + a.sum();
    r.norm_prod = static_cast<double>(r.f) / prod_norm_factor(a);
    r.norm_s = static_cast<double>(r.f) / s_norm(a);
    return r;
}

std::int64_t frobenius_dp_oracle(const CoprimeVector& a, std::int64_t bound) {
    if (bound < schur_bound(a))
        throw usage_error("dp oracle bound " + std::to_string(bound) +
                          " is below the Schur bound " + std::to_string(schur_bound(a)) +
                          "; the oracle would be unsound");
    if (bound > 10'000'000)
        throw capacity_error("dp oracle bound " + std::to_string(bound) + " exceeds 10^7");
    if (bound < 0) return -1;
    std::vector<char> reachable(static_cast<std::size_t>(bound) + 1, 0);
    reachable[0] = 1;
    for (std::int64_t c : a.coeffs()) {
        if (c > bound) continue;
        for (std::int64_t v = c; v <= bound; ++v)
            if (reachable[v - c]) reachable[v] = 1;
    }
    for (std::int64_t v = bound; v >= 0; --v)
        if (!reachable[v]) return v;
    return -1;
}

std::int64_t sylvester(std::int64_t a1, std::int64_t a2) {
    if (a1 < 1 || a2 < 1) throw usage_error("sylvester: arguments must be positive");
    if (std::gcd(a1, a2) != 1)
        throw usage_error("sylvester: " + std::to_string(a1) + " and " + std::to_string(a2) +
                          " are not coprime");
    return a1 * a2 - a1 - a2;
}

} // namespace frobstat
