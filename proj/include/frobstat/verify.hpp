#pragma once

#include "frobstat/statistics.hpp"

#include <string>
#include <vector>

namespace frobstat::verify {

struct Check {
    std::string name;
    bool pass = false;
    bool warn_only = false; // a failure here downgrades to a warning
    std::string detail;
};

struct Options {
    std::uint64_t seed = 42;
    int workers = 0; // 0 = default_workers()
    // Scale multiplier used by unit tests to shrink sample counts; the
    // acceptance suite always runs at 1.
    double scale = 1.0;
};

// Frozen regression value of the M_{3,1} quadrature (recorded on first
// build; the quadrature itself is the live route).
double frozen_m31();

std::vector<Check> suite_sylvester();
std::vector<Check> suite_oracle(const Options& opts = {});
std::vector<Check> suite_psi3();
std::vector<Check> suite_constants(const Options& opts = {});
std::vector<Check> suite_inequalities(const Options& opts = {});
std::vector<Check> suite_lattice(const Options& opts = {});
std::vector<Check> suite_cover(const Options& opts = {});
std::vector<Check> suite_concentration(const Options& opts = {});
std::vector<Check> suite_agm();

// The criterion-4 sweep (d=3, T=1e5, 1e5 samples), shared by the ks,
// moment and tail suites.
SweepResult reference_sweep_d3(const Options& opts = {});
std::vector<Check> suite_ks(const SweepResult& sweep, const Options& opts = {});
std::vector<Check> suite_moment(const SweepResult& sweep);
std::vector<Check> suite_tail(const SweepResult& sweep);

// Dispatch by suite name; unknown names raise usage_error.  Suites that
// need the reference sweep build it themselves here.
std::vector<Check> run_suite(const std::string& name, const Options& opts = {});
const std::vector<std::string>& suite_names();

bool all_passed(const std::vector<Check>& checks);

} // namespace frobstat::verify
