#include "frobstat/io.hpp"

#include "frobstat/errors.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

// The vendored single header provides nlohmann/json.hpp under vendor/.
#if !__has_include(<nlohmann/json.hpp>)
#error "nlohmann/json.hpp not found"
#endif

namespace frobstat {

using nlohmann::json;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json config_to_json(const ExperimentConfig& c) {
    json dom = json::array();
    for (auto [lo, hi] : c.domain) dom.push_back({lo, hi});
    return json{{"d", c.d},
                {"T", c.T},
                {"count", c.count},
                {"seed", c.seed},
                {"domain", dom},
                {"normalization",
                 c.normalization == NormalizationKind::ProdPower ? "prod" : "s"}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.d = j.at("d").get<int>();
    c.T = j.at("T").get<std::int64_t>();
    c.count = j.at("count").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& pair : j.at("domain"))
        c.domain.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    c.normalization = j.at("normalization").get<std::string>() == "prod"
                          ? NormalizationKind::ProdPower
                          : NormalizationKind::SOfA;
    return c;
}

} // namespace

std::string RunManifest::to_json() const {
    json j{{"tool_version", tool_version},
           {"config", config_to_json(config)},
           {"wall_time_s", wall_time_s},
           {"redraw_count", redraw_count},
           {"output_digests", output_digests},
           {"statistics", statistics}};
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    json j = json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = config_from_json(j.at("config"));
    m.wall_time_s = j.at("wall_time_s").get<double>();
    m.redraw_count = j.at("redraw_count").get<std::int64_t>();
    m.output_digests = j.at("output_digests").get<std::map<std::string, std::string>>();
    m.statistics = j.at("statistics").get<std::map<std::string, double>>();
    return m;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    std::ostringstream out;
    out << "index";
    for (int j = 1; j <= sweep.config.d; ++j) out << ",a_" << j;
    out << ",g,f,norm_prod,norm_s\n";
    for (std::size_t i = 0; i < sweep.records.size(); ++i) {
        const SampleRecord& r = sweep.records[i];
        out << i;
        for (std::int64_t c : r.a) out << ',' << c;
        out << ',' << r.g << ',' << r.f << ',' << format_real(r.norm_prod) << ','
            << format_real(r.norm_s) << '\n';
    }
    write_file_atomic(path, out.str());
}

SweepResult read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw usage_error(path + ": empty file");
    // Count a_j columns from the header.
    int d = 0;
    {
        std::istringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ','))
            if (col.rfind("a_", 0) == 0) ++d;
    }
    if (d < 2) throw usage_error(path + ": header does not look like a sweep CSV");
    SweepResult sweep;
    sweep.config.d = d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) != d + 5)
            throw usage_error(path + ": malformed row '" + line + "'");
        SampleRecord r;
        for (int j = 0; j < d; ++j) r.a.push_back(std::stoll(cells[1 + j]));
        r.g = std::stoll(cells[d + 1]);
        r.f = std::stoll(cells[d + 2]);
        r.norm_prod = std::stod(cells[d + 3]);
        r.norm_s = std::stod(cells[d + 4]);
        sweep.records.push_back(std::move(r));
    }
    sweep.config.count = static_cast<std::int64_t>(sweep.records.size());
    return sweep;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.good()) {
        in.read(buf, sizeof(buf));
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw usage_error("cannot write " + tmp);
        out << contents;
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw capacity_error("failed writing " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace frobstat
