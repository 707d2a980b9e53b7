#pragma once

#include "frobstat/core.hpp"

#include <cstdint>
#include <vector>

namespace frobstat {

// Per residue class r mod a_min, the smallest representable integer
// congruent to r (the Apery-set table).  g(a) = max entry - a_min.
struct ResidueTable {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> entries;
};

enum class FrobeniusEngine { RoundRobin, Dijkstra };

struct FrobeniusOptions {
    FrobeniusEngine engine = FrobeniusEngine::RoundRobin;
    // Residue tables larger than this raise capacity_error.
    std::int64_t table_budget = 20'000'000;
};

// Builds the residue table for a (a.min() > 1 required; callers handle the
// a_min = 1 shortcut).  Duplicate coefficients are no-ops and skipped.
ResidueTable residue_table(const CoprimeVector& a, const FrobeniusOptions& opts = {});

// Exact g(a) and f(a) plus both normalizations.  Independent of coefficient
// order; a_min = 1 short-circuits to g = -1.
FrobeniusResult frobenius(const CoprimeVector& a, const FrobeniusOptions& opts = {});

// Independent brute-force oracle: marks every representable value in
// [0, bound] with a boolean DP and returns the largest unmarked one, or -1
// if none.  Sound only for bound >= schur_bound(a); smaller bounds are a
// usage_error, bounds above 10^7 a capacity_error.
std::int64_t frobenius_dp_oracle(const CoprimeVector& a, std::int64_t bound);

// Sylvester's closed form a1*a2 - a1 - a2 for a coprime pair.
std::int64_t sylvester(std::int64_t a1, std::int64_t a2);

} // namespace frobstat
