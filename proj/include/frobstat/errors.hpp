#pragma once

#include <stdexcept>
#include <string>

namespace frobstat {

// Caller violated a documented precondition (bad flags, non-coprime input,
// out-of-range argument).  Maps to CLI exit code 1.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input is valid but exceeds a memory/size budget (residue table too large,
// DP bound too large).  Maps to CLI exit code 2.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative computation ran out of its iteration/node budget before
// reaching the requested tolerance.  Carries the best bracket obtained so
// far when one exists.  Maps to CLI exit code 2.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
    budget_error(const std::string& what, double lo, double hi)
        : std::runtime_error(what), best_lo(lo), best_hi(hi), has_bracket(true) {}

    double best_lo = 0.0;
    double best_hi = 0.0;
    bool has_bracket = false;
};

} // namespace frobstat
