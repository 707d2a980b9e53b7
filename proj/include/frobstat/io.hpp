#pragma once

#include "frobstat/statistics.hpp"

#include <map>
#include <string>

namespace frobstat {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest-exact serialization used for every real we emit: 17 significant
// digits, byte-stable across runs on one platform.
std::string format_real(double v);

// Full reproducibility record for one experiment.
struct RunManifest {
    std::string tool_version = kToolVersion;
    ExperimentConfig config;
    double wall_time_s = 0.0;
    std::int64_t redraw_count = 0;
    std::map<std::string, std::string> output_digests; // filename -> sha256
    std::map<std::string, double> statistics;          // summary values

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

// CSV with header index,a_1,...,a_d,g,f,norm_prod,norm_s; LF endings,
// integers exact, reals via format_real.
void write_sweep_csv(const std::string& path, const SweepResult& sweep);
SweepResult read_sweep_csv(const std::string& path);

std::string sha256_file(const std::string& path);

// Atomic-ish text write: temp file in place, renamed on success, removed on
// failure so no partial primary output survives an abort.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace frobstat
