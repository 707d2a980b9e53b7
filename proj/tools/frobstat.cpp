// frobstat: batch CLI for Frobenius-number statistics, the d=3 limit law,
// kernel-lattice inspection, simplex covering experiments and the
// verification suites.  All primary outputs are reproducible from the seed
// and are byte-identical for any worker count.

#include "frobstat/analytic.hpp"
#include "frobstat/errors.hpp"
#include "frobstat/io.hpp"
#include "frobstat/lattice.hpp"
#include "frobstat/parallel.hpp"
#include "frobstat/rng.hpp"
#include "frobstat/simplex.hpp"
#include "frobstat/statistics.hpp"
#include "frobstat/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

namespace {

using namespace frobstat;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitVerify = 3;

std::vector<std::int64_t> parse_coeffs(const std::string& spec) {
    std::vector<std::int64_t> coeffs;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        std::int64_t v = std::stoll(tok, &used);
        if (used != tok.size()) throw usage_error("cannot parse coefficient '" + tok + "'");
        coeffs.push_back(v);
    }
    if (coeffs.empty()) throw usage_error("--a expects a comma-separated coefficient list");
    return coeffs;
}

DomainBox parse_domain(const std::string& spec) {
    DomainBox box;
    std::istringstream in(spec);
    std::string axis;
    while (std::getline(in, axis, ',')) {
        auto colon = axis.find(':');
        if (colon == std::string::npos)
            throw usage_error("domain axis '" + axis + "' must look like lo:hi");
        box.emplace_back(std::stod(axis.substr(0, colon)), std::stod(axis.substr(colon + 1)));
    }
    return box;
}

json basis_to_json(const LatticeBasis& b) {
    json rows = json::array();
    if (b.integral()) {
        for (const auto& r : b.int_rows()) rows.push_back(r);
    } else {
        for (const auto& r : b.real_rows()) rows.push_back(r);
    }
    return rows;
}

struct SweepArgs {
    int d = 3;
    std::int64_t T = 100'000;
    std::int64_t count = 1000;
    std::uint64_t seed = 42;
    std::string domain;
    std::string norm = "prod";
    int workers = 0;
    std::string out;
};

ExperimentConfig config_of(const SweepArgs& a) {
    ExperimentConfig cfg;
    cfg.d = a.d;
    cfg.T = a.T;
    cfg.count = a.count;
    cfg.seed = a.seed;
    if (!a.domain.empty()) cfg.domain = parse_domain(a.domain);
    if (a.norm == "prod")
        cfg.normalization = NormalizationKind::ProdPower;
    else if (a.norm == "s")
        cfg.normalization = NormalizationKind::SOfA;
    else
        throw usage_error("--norm must be 'prod' or 's'");
    cfg.validate();
    return cfg;
}

int cmd_frob(const std::string& coeff_spec, const std::string& engine,
             std::int64_t table_budget) {
    CoprimeVector a(parse_coeffs(coeff_spec));
    FrobeniusOptions opts;
    opts.engine = engine == "dijkstra" ? FrobeniusEngine::Dijkstra : FrobeniusEngine::RoundRobin;
    if (table_budget > 0) opts.table_budget = table_budget;
    FrobeniusResult r = frobenius(a, opts);
    json out{{"g", r.g},
             {"f", r.f},
             {"norm_prod", r.norm_prod},
             {"norm_s", r.norm_s},
             {"schur_bound", schur_bound(a)},
             {"fsineq_rhs", std::pow(a.norm(), 1.0 - 1.0 / (a.d() - 1))}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const SweepArgs& args) {
    ExperimentConfig cfg = config_of(args);
    auto t0 = std::chrono::steady_clock::now();
    SweepResult sweep = sample_sweep(cfg, args.workers);
    write_sweep_csv(args.out, sweep);
    EmpiricalDistribution dist = distribution_from_sweep(sweep);

    RunManifest m;
    m.config = cfg;
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.redraw_count = sweep.redraws;
    m.output_digests[args.out] = sha256_file(args.out);
    m.statistics["count"] = static_cast<double>(dist.values.size());
    m.statistics["min"] = dist.values.front();
    m.statistics["max"] = dist.values.back();
    m.statistics["mean"] = [&] {
        long double s = 0.0L;
        for (double v : dist.values) s += v;
        return static_cast<double>(s / static_cast<long double>(dist.values.size()));
    }();
    write_file_atomic(args.out + ".manifest.json", m.to_json());
    std::cout << "wrote " << args.out << " (" << dist.values.size() << " rows, " << sweep.redraws
              << " redraws)\n";
    return 0;
}

EmpiricalDistribution load_distribution(const std::string& path, const std::string& norm) {
    SweepResult sweep = read_sweep_csv(path);
    sweep.config.normalization =
        norm == "s" ? NormalizationKind::SOfA : NormalizationKind::ProdPower;
    return distribution_from_sweep(sweep);
}

int cmd_density(const std::string& in, const std::string& out, double bin_width,
                const std::string& norm) {
    EmpiricalDistribution dist = load_distribution(in, norm);
    Histogram h = histogram(dist, bin_width);
    std::ostringstream os;
    os << "bin_lo,count,density\n";
    for (const auto& [bin, count] : h.counts)
        os << format_real(static_cast<double>(bin) * h.bin_width) << ',' << count << ','
           << format_real(h.density(bin)) << '\n';
    write_file_atomic(out, os.str());
    std::cout << "wrote " << out << " (" << h.counts.size() << " bins)\n";
    return 0;
}

int cmd_tail(const std::string& in, const std::vector<double>& rs, const std::string& norm) {
    EmpiricalDistribution dist = load_distribution(in, norm);
    std::cout << "R,psi_hat,main_term,ratio\n";
    for (double R : rs) {
        double psi_hat = empirical_psi(dist, R);
        double mt = main_term(dist.config.d, R);
        std::cout << format_real(R) << ',' << format_real(psi_hat) << ',' << format_real(mt)
                  << ',' << format_real(psi_hat / mt) << "\n";
    }
    return 0;
}

int cmd_psi3(double R, bool has_r, const std::string& table, const std::string& out) {
    std::ostringstream os;
    os << "R,psi3,Psi3\n";
    if (has_r) {
        os << format_real(R) << ',' << format_real(psi3_density(R)) << ','
           << format_real(psi3_tail(R)) << '\n';
    } else if (!table.empty()) {
        double lo, hi, step;
        if (std::sscanf(table.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
            throw usage_error("--table expects lo:hi:step with step > 0");
        for (double r = lo; r <= hi + 1e-12; r += step)
            os << format_real(r) << ',' << format_real(psi3_density(r)) << ','
               << format_real(psi3_tail(r)) << '\n';
    } else {
        throw usage_error("psi3 needs --R or --table");
    }
    if (out.empty())
        std::cout << os.str();
    else {
        write_file_atomic(out, os.str());
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_lattice(const std::string& coeff_spec) {
    CoprimeVector a(parse_coeffs(coeff_spec));
    LatticeBasis basis = kernel_lattice(a);
    MinimaProfile mp = successive_minima(basis);
    json out{{"a", a.coeffs()},
             {"basis", basis_to_json(basis)},
             {"det", basis.det()},
             {"norm_a", a.norm()},
             {"lambdas", mp.lambdas},
             {"ratios", mp.ratios}};
    if (a.d() >= 3) {
        AlievHenkResult ah = check_aliev_henk(a);
        out["aliev_henk"] = {{"lhs", ah.lhs}, {"rhs", ah.rhs}, {"holds", ah.holds}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_cover(const std::string& basis_spec, std::int64_t samples, std::uint64_t seed,
              double tol, const std::vector<double>& rs, const std::string& out, int workers) {
    if (!basis_spec.empty()) {
        // single lattice: rows as "b11,b12;b21,b22"
        auto semi = basis_spec.find(';');
        if (semi == std::string::npos) throw usage_error("--basis expects 'x1,y1;x2,y2'");
        auto parse_row = [](const std::string& s) {
            auto comma = s.find(',');
            if (comma == std::string::npos) throw usage_error("basis row needs two coordinates");
            return std::vector<double>{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
        };
        LatticeBasis b = LatticeBasis::from_real_rows(
            {parse_row(basis_spec.substr(0, semi)), parse_row(basis_spec.substr(semi + 1))});
        CoverInterval ci = covering_radius_2d(b, tol);
        json j{{"lo", ci.lo}, {"hi", ci.hi}, {"tol", tol}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (samples < 1) throw usage_error("cover needs --basis or --samples >= 1");
    std::vector<double> lo(samples), hi(samples);
    parallel_for_chunks(samples, workers > 0 ? workers : default_workers(), 16,
                        [&](std::int64_t begin, std::int64_t end) {
                            for (std::int64_t i = begin; i < end; ++i) {
                                std::uint64_t sub = StreamRng::mix(seed) ^
                                                    StreamRng::mix(0xc0feULL + static_cast<std::uint64_t>(i));
                                CoverInterval ci = covering_radius_2d(sample_mu2(sub), tol);
                                lo[i] = ci.lo;
                                hi[i] = ci.hi;
                            }
                        });
    std::ostringstream os;
    os << "index,lo,hi\n";
    for (std::int64_t i = 0; i < samples; ++i)
        os << i << ',' << format_real(lo[i]) << ',' << format_real(hi[i]) << '\n';
    write_file_atomic(out, os.str());
    json summary{{"samples", samples}, {"tol", tol}, {"seed", seed}};
    for (double R : rs) {
        std::int64_t over = 0;
        for (double l : lo)
            if (R < l) ++over;
        summary["psi_hat"][format_real(R)] =
            static_cast<double>(over) / static_cast<double>(samples);
        summary["psi3_exact"][format_real(R)] = psi3_tail(R);
    }
    write_file_atomic(out + ".summary.json", summary.dump(2) + "\n");
    std::cout << "wrote " << out << " and " << out << ".summary.json\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int workers) {
    verify::Options opts;
    opts.seed = seed;
    opts.workers = workers;
    std::vector<verify::Check> checks = verify::run_suite(suite, opts);
    bool ok = verify::all_passed(checks);
    for (const auto& c : checks) {
        json line{{"suite", suite},
                  {"check", c.name},
                  {"status", c.pass ? "pass" : (c.warn_only ? "warn" : "fail")},
                  {"detail", c.detail}};
        std::cout << line.dump() << "\n";
    }
    return ok ? 0 : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius-number statistics toolkit"};
    app.require_subcommand(1);

    // frob
    auto* frob = app.add_subcommand("frob", "g(a), f(a) and normalizations for one vector");
    std::string frob_a, frob_engine = "rr";
    std::int64_t frob_budget = 0;
    frob->add_option("--a", frob_a, "comma-separated coefficients")->required();
    frob->add_option("--engine", frob_engine, "rr|dijkstra")->default_val("rr");
    frob->add_option("--table-budget", frob_budget, "residue table entry budget");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep to CSV + manifest");
    SweepArgs sa;
    sweep->add_option("--d", sa.d)->required();
    sweep->add_option("--T", sa.T)->required();
    sweep->add_option("--count", sa.count)->required();
    sweep->add_option("--seed", sa.seed)->default_val(42);
    sweep->add_option("--domain", sa.domain, "lo:hi or per-axis lo:hi,lo:hi,...");
    sweep->add_option("--norm", sa.norm, "prod|s")->default_val("prod");
    sweep->add_option("--workers", sa.workers);
    sweep->add_option("--out", sa.out)->required();

    // density
    auto* density = app.add_subcommand("density", "histogram CSV from a sweep CSV");
    std::string den_in, den_out, den_norm = "prod";
    double den_width = 0.01;
    density->add_option("--in", den_in)->required();
    density->add_option("--out", den_out)->required();
    density->add_option("--bin-width", den_width)->default_val(0.01);
    density->add_option("--norm", den_norm)->default_val("prod");

    // tail
    auto* tail = app.add_subcommand("tail", "empirical tail vs the main term");
    std::string tail_in, tail_norm = "prod";
    std::vector<double> tail_rs;
    tail->add_option("--in", tail_in)->required();
    tail->add_option("--R", tail_rs, "one or more radii")->required();
    tail->add_option("--norm", tail_norm)->default_val("prod");

    // psi3
    auto* psi3 = app.add_subcommand("psi3", "exact d=3 density and tail");
    double psi3_r = 0.0;
    std::string psi3_table, psi3_out;
    auto* psi3_ropt = psi3->add_option("--R", psi3_r);
    psi3->add_option("--table", psi3_table, "lo:hi:step");
    psi3->add_option("--out", psi3_out);

    // lattice
    auto* lattice = app.add_subcommand("lattice", "kernel lattice basis and minima");
    std::string lat_a;
    lattice->add_option("--a", lat_a)->required();

    // cover
    auto* cover = app.add_subcommand("cover", "covering-radius brackets");
    std::string cover_basis, cover_out = "cover.csv";
    std::int64_t cover_samples = 0;
    std::uint64_t cover_seed = 42;
    double cover_tol = 1e-3;
    std::vector<double> cover_rs{1.8, 2.0, 2.5};
    int cover_workers = 0;
    cover->add_option("--basis", cover_basis, "single lattice 'x1,y1;x2,y2'");
    cover->add_option("--samples", cover_samples, "number of mu2-sampled lattices");
    cover->add_option("--seed", cover_seed)->default_val(42);
    cover->add_option("--tol", cover_tol)->default_val(1e-3);
    cover->add_option("--R", cover_rs, "radii for the Psi-hat estimates");
    cover->add_option("--out", cover_out);
    cover->add_option("--workers", cover_workers);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named invariant suite");
    std::string verify_suite;
    std::uint64_t verify_seed = 42;
    int verify_workers = 0;
    verify_cmd->add_option("--suite", verify_suite, "suite name")->required();
    verify_cmd->add_option("--seed", verify_seed)->default_val(42);
    verify_cmd->add_option("--workers", verify_workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (frob->parsed()) return cmd_frob(frob_a, frob_engine, frob_budget);
        if (sweep->parsed()) return cmd_sweep(sa);
        if (density->parsed()) return cmd_density(den_in, den_out, den_width, den_norm);
        if (tail->parsed()) return cmd_tail(tail_in, tail_rs, tail_norm);
        if (psi3->parsed()) return cmd_psi3(psi3_r, psi3_ropt->count() > 0, psi3_table, psi3_out);
        if (lattice->parsed()) return cmd_lattice(lat_a);
        if (cover->parsed())
            return cmd_cover(cover_basis, cover_samples, cover_seed, cover_tol, cover_rs,
                             cover_out, cover_workers);
        if (verify_cmd->parsed()) return cmd_verify(verify_suite, verify_seed, verify_workers);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCapacity;
    }
    return kExitUsage;
}
