#include "twostar/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "twostar/duplication.hpp"
#include "twostar/exact.hpp"
#include "twostar/inequalities.hpp"
#include "twostar/mcmc.hpp"
#include "twostar/meanfield.hpp"
#include "twostar/numeric.hpp"

namespace twostar {
namespace cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<double> grid_from_range(double start, double stop, double step) {
    if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
    if (stop < start) throw std::invalid_argument("grid stop must be >= start");
    std::vector<double> out;
    for (double v = start; v <= stop + 0.5 * step; v += step) out.push_back(v);
    return out;
}

ExactSystem make_system(const RunConfig& cfg, double coupling, double field) {
    EdgeIndexing idx(cfg.n);
    EnumerationOptions opts;
    opts.max_active_edges = cfg.enum_cap;
    if (cfg.model == "two-star") return ExactSystem(idx, ScalarParams{coupling, field}, opts);
    SubgraphPattern second =
        (cfg.model == "edge-wedge") ? SubgraphPattern::wedge() : SubgraphPattern::triangle();
    ErgmParams params{{SubgraphPattern::edge(), second}, {field, coupling}};
    return ExactSystem(idx, params, opts);
}

bool is_ergm_model(const RunConfig& cfg) { return cfg.model != "two-star"; }

const std::vector<double>& couplings_of(const RunConfig& cfg) {
    return is_ergm_model(cfg) ? cfg.beta2s : cfg.alphas;
}

const std::vector<double>& fields_of(const RunConfig& cfg) {
    return is_ergm_model(cfg) ? cfg.beta1s : cfg.hs;
}

nlohmann::json meta_common(const RunConfig& cfg) {
    nlohmann::json meta;
    meta["n"] = cfg.n;
    meta["model"] = cfg.model;
    meta["seed"] = cfg.seed;
    meta["caps"] = {{"enum_cap", cfg.enum_cap}, {"subset_cap", cfg.subset_cap}};
    if (cfg.model == "two-star") {
        meta["alpha_grid"] = cfg.alphas;
        meta["h_grid"] = cfg.hs;
    } else {
        meta["beta1_grid"] = cfg.beta1s;
        meta["beta2_grid"] = cfg.beta2s;
    }
    return meta;
}

Report report_skeleton(const RunConfig& cfg, std::vector<std::string> columns) {
    Report report;
    report.command = cfg.command + (cfg.verify_what.empty() ? "" : " " + cfg.verify_what);
    report.version = kVersion;
    report.meta = meta_common(cfg);
    report.columns = std::move(columns);
    return report;
}

Report run_exact(const RunConfig& cfg) {
    auto report = report_skeleton(
        cfg, {"alpha", "h", "log_z", "free_energy", "mean_edges", "mean_wedge_pairs", "mean_edge_occupancy"});
    for (double alpha : cfg.alphas)
        for (double h : cfg.hs) {
            auto sys = make_system(cfg, alpha, h);
            const int first_edge[] = {0};
            report.add_record({alpha, h, sys.log_partition(), sys.free_energy(), sys.mean_edge_count(),
                               sys.mean_wedge_pairs(),
                               sys.ambient_edge_count() > 0 ? sys.expectation_monomial(first_edge) : 1.0});
        }
    return report;
}

Report run_ursell(const RunConfig& cfg) {
    auto report = report_skeleton(cfg, {"alpha", "h", "order", "i", "j", "k", "value"});
    for (double alpha : cfg.alphas)
        for (double h : cfg.hs) {
            auto sys = make_system(cfg, alpha, h);
            const int m = sys.ambient_edge_count();
            auto emit_value = [&](std::vector<int> ids) {
                const auto u = ursell(sys, ids);
                nlohmann::json i = u.indices[0] >= 0 ? nlohmann::json(u.indices[0]) : nlohmann::json();
                nlohmann::json j = u.indices[1] >= 0 ? nlohmann::json(u.indices[1]) : nlohmann::json();
                nlohmann::json k = u.indices[2] >= 0 ? nlohmann::json(u.indices[2]) : nlohmann::json();
                report.add_record({alpha, h, u.order, i, j, k, u.value});
            };
            if (!cfg.indices.empty()) {
                emit_value(cfg.indices);
                continue;
            }
            const bool order1 = cfg.order == 0 || cfg.order == 1;
            const bool order2 = cfg.order == 0 || cfg.order == 2;
            const bool order3 = cfg.order == 0 || cfg.order == 3;
            if (order1)
                for (int i = 0; i < m; ++i) emit_value({i});
            if (order2)
                for (int i = 0; i < m; ++i)
                    for (int j = i; j < m; ++j) emit_value({i, j});
            if (order3)
                for (int i = 0; i < m; ++i)
                    for (int j = i; j < m; ++j)
                        for (int k = j; k < m; ++k) emit_value({i, j, k});
        }
    return report;
}

std::vector<int> default_star(int n) {
    EdgeIndexing idx(n);
    std::vector<int> star;
    for (int v = 1; v < n; ++v) star.push_back(idx.id_of(0, v));
    return star;
}

std::vector<int> all_edges(int n) {
    EdgeIndexing idx(n);
    std::vector<int> out;
    for (int e = 0; e < idx.m(); ++e) out.push_back(e);
    return out;
}

void add_inequality_record(Report& report, double coupling, double field, const InequalityReport& r) {
    report.add_record({coupling, field, tag_name(r.tag), r.checked, r.worst_violation, r.witness,
                       r.pass ? "pass" : "fail"});
    report.all_passed = report.all_passed && r.pass;
}

Report run_verify(const RunConfig& cfg) {
    auto report = report_skeleton(
        cfg, {"coupling", "field", "check", "checked", "worst_violation", "witness", "verdict"});
    report.meta["check"] = cfg.verify_what;

    const auto& couplings = couplings_of(cfg);
    const auto& fields = fields_of(cfg);
    const auto& what = cfg.verify_what;

    const bool wedge_only = what == "vol-mono" || what == "part-submod" || what == "duplication" ||
                            what == "u3-repr" || what == "p-lattice" || what == "fkg";
    if (is_ergm_model(cfg) && wedge_only)
        throw std::invalid_argument("verify " + what + ": available for the two-star model only");

    for (double coupling : couplings)
        for (double field : fields) {
            auto sys = make_system(cfg, coupling, field);
            if (what == "fkg-lattice") {
                FkgLatticeOptions opts;
                opts.seed = cfg.seed;
                add_inequality_record(report, coupling, field, verify_fkg_lattice(sys, opts));
            } else if (what == "gks") {
                add_inequality_record(report, coupling, field, verify_gks_sweep(sys, cfg.subset_cap));
            } else if (what == "ghs") {
                add_inequality_record(report, coupling, field, verify_ghs_sweep(sys));
            } else if (what == "fkg") {
                auto count = [](const Config& c) { return static_cast<double>(edge_count(c)); };
                add_inequality_record(report, coupling, field, verify_fkg_monotone(sys, count, count));
            } else if (what == "vol-mono") {
                const auto lambda = cfg.lambda_set.empty() ? std::vector<int>{default_star(cfg.n)[0]}
                                                           : cfg.lambda_set;
                const auto sub_a = cfg.set_a.empty() ? default_star(cfg.n) : cfg.set_a;
                const auto sub_b = cfg.set_b.empty() ? all_edges(cfg.n) : cfg.set_b;
                add_inequality_record(report, coupling, field,
                                      verify_volume_monotonicity(sys, lambda, sub_a, sub_b));
            } else if (what == "part-submod") {
                if (!cfg.set_e.empty() || !cfg.set_f.empty()) {
                    auto out = verify_partition_submodularity(sys, cfg.set_e, cfg.set_f);
                    add_inequality_record(report, coupling, field, out.report);
                } else {
                    add_inequality_record(report, coupling, field,
                                          verify_partition_submodularity_sweep(sys));
                }
            } else if (what == "duplication") {
                DoubledSystem doubled(sys);
                double worst = 0.0;
                std::string witness = "mixture identity";
                long long checked = 0;
                const auto weights = doubled.mixture_weights();
                worst = std::fabs(weights.total - 1.0);
                witness = "sum P(A) - 1";
                if (sys.active_count() <= 10) {
                    const auto decomp = check_decomposition(sys);
                    checked += decomp.states_checked;
                    if (decomp.max_abs_error > worst) {
                        worst = decomp.max_abs_error;
                        witness = "H(x)+H(y) decomposition";
                    }
                    const std::vector<std::vector<int>> battery = {{}, {0}, {1}, {0, 1}, {0, 2}};
                    for (const auto& c : battery)
                        for (const auto& d : battery) {
                            const double direct =
                                doubled.doubled_expectation(z_monomial(c), v_monomial(d));
                            const double mixed =
                                doubled.mixture_expectation(z_monomial(c), v_monomial(d));
                            ++checked;
                            if (std::fabs(direct - mixed) > worst) {
                                worst = std::fabs(direct - mixed);
                                witness = "mixture vs doubled monomial";
                            }
                        }
                }
                const bool pass = worst <= 1e-10;
                report.add_record({coupling, field, "duplication", checked, worst, witness,
                                   pass ? "pass" : "fail"});
                report.all_passed = report.all_passed && pass;
            } else if (what == "u3-repr") {
                double worst = 0.0;
                long long checked = 0;
                std::string witness;
                const int m = sys.ambient_edge_count();
                for (int i = 0; i < m; ++i)
                    for (int j = i; j < m; ++j)
                        for (int k = j; k < m; ++k) {
                            const auto r = verify_u3_representation(sys, i, j, k);
                            ++checked;
                            if (r.abs_error > worst) {
                                worst = r.abs_error;
                                witness = "(i,j,k)=(" + std::to_string(i) + "," + std::to_string(j) +
                                          "," + std::to_string(k) + ")";
                            }
                        }
                const bool pass = worst <= 1e-12;
                report.add_record(
                    {coupling, field, "u3-repr", checked, worst, witness, pass ? "pass" : "fail"});
                report.all_passed = report.all_passed && pass;
            } else if (what == "p-lattice") {
                DoubledSystem doubled(sys);
                add_inequality_record(report, coupling, field,
                                      verify_p_lattice(doubled.mixture_weights()));
            } else {
                throw std::invalid_argument("unknown verify target: " + what);
            }
        }
    return report;
}

Report run_fixpoint(const RunConfig& cfg) {
    auto report = report_skeleton(
        cfg, {"alpha", "h", "root", "residual", "objective", "is_maximizer", "classification"});
    for (double alpha : cfg.alphas)
        for (double h : cfg.hs) {
            const auto point = meanfield::classify(alpha, h);
            for (double r : point.roots) {
                const bool is_max =
                    std::find_if(point.maximizers.begin(), point.maximizers.end(), [r](double m) {
                        return std::fabs(m - r) < 1e-11;
                    }) != point.maximizers.end();
                report.add_record({alpha, h, r, std::fabs(sigmoid(2.0 * alpha * r + h) - r),
                                   meanfield::objective(r, alpha, h), is_max,
                                   meanfield::phase_name(point.classification)});
            }
        }
    return report;
}

Report run_phase(const RunConfig& cfg) {
    auto report = report_skeleton(
        cfg, {"alpha", "h", "n_roots", "u_star_1", "u_star_2", "classification", "variance"});
    for (double alpha : cfg.alphas)
        for (double h : cfg.hs) {
            const auto point = meanfield::classify(alpha, h);
            nlohmann::json u1, u2, variance;
            if (!point.maximizers.empty()) u1 = point.maximizers[0];
            if (point.maximizers.size() > 1) u2 = point.maximizers[1];
            if (point.classification != meanfield::PhaseClass::critical &&
                !point.variance_at_max.empty())
                variance = point.variance_at_max[0];
            report.add_record({alpha, h, static_cast<long long>(point.roots.size()), u1, u2,
                               meanfield::phase_name(point.classification), variance});
        }
    return report;
}

Report run_curve(const RunConfig& cfg) {
    auto report = report_skeleton(cfg, {"alpha", "h"});
    for (double alpha : cfg.alphas) {
        const auto sample = meanfield::critical_curve(alpha);
        report.add_record({sample.alpha, sample.h});
    }
    return report;
}

mcmc::ChainSpec chain_spec_of(const RunConfig& cfg, double alpha, double h) {
    mcmc::ChainSpec spec;
    spec.n = cfg.n;
    spec.alpha = alpha;
    spec.h = h;
    spec.sweeps = cfg.sweeps;
    spec.burnin = cfg.burnin;
    spec.thinning = cfg.thinning;
    spec.chains = cfg.chains;
    spec.seed = cfg.seed;
    return spec;
}

Report run_mcmc(const RunConfig& cfg) {
    const double alpha = cfg.alphas.front();
    const double h = cfg.hs.front();
    const auto summary = mcmc::run_chains(chain_spec_of(cfg, alpha, h));

    if (cfg.histogram_bins > 0) {
        auto report = report_skeleton(cfg, {"bin_lo", "bin_hi", "count"});
        report.meta["alpha"] = alpha;
        report.meta["h"] = h;
        std::vector<long long> counts(static_cast<std::size_t>(cfg.histogram_bins), 0);
        for (const auto& chain : summary.per_chain)
            for (double d : chain.density_series) {
                int bin = static_cast<int>(d * cfg.histogram_bins);
                bin = std::min(std::max(bin, 0), cfg.histogram_bins - 1);
                ++counts[static_cast<std::size_t>(bin)];
            }
        for (int b = 0; b < cfg.histogram_bins; ++b)
            report.add_record({static_cast<double>(b) / cfg.histogram_bins,
                               static_cast<double>(b + 1) / cfg.histogram_bins,
                               counts[static_cast<std::size_t>(b)]});
        return report;
    }

    auto report = report_skeleton(
        cfg, {"chain", "seed", "samples", "mean_density", "mean_wedge_pairs", "density_se",
              "sample_sd", "standardized_variance", "skewness", "excess_kurtosis"});
    report.meta["alpha"] = alpha;
    report.meta["h"] = h;
    report.meta["sweeps"] = cfg.sweeps;
    report.meta["burnin"] = cfg.burnin;
    report.meta["thinning"] = cfg.thinning;
    report.meta["chains"] = cfg.chains;
    for (std::size_t c = 0; c < summary.per_chain.size(); ++c) {
        const auto& chain = summary.per_chain[c];
        report.add_record({std::to_string(c), chain.seed,
                           static_cast<long long>(chain.density_series.size()), chain.mean_density,
                           chain.mean_wedges, nlohmann::json(), nlohmann::json(), nlohmann::json(),
                           nlohmann::json(), nlohmann::json()});
    }
    report.add_record({"pooled", cfg.seed, summary.samples_per_chain * cfg.chains,
                       summary.pooled_density_mean, summary.pooled_wedges_mean,
                       summary.pooled_density_se, summary.sample_sd_density,
                       summary.standardized_variance, summary.skewness, summary.excess_kurtosis});
    return report;
}

Report run_concavity(const RunConfig& cfg) {
    auto report = report_skeleton(
        cfg, {"alpha", "h", "mean_density", "std_error", "second_difference", "verdict"});
    const double alpha = cfg.alphas.front();
    const auto mode = cfg.mode == "mcmc" ? mcmc::ScanMode::mcmc : mcmc::ScanMode::exact;
    const auto rows = mcmc::concavity_scan(alpha, cfg.hs, cfg.n, mode,
                                           chain_spec_of(cfg, alpha, cfg.hs.front()));
    for (const auto& row : rows) {
        nlohmann::json second =
            row.has_second_difference ? nlohmann::json(row.second_difference) : nlohmann::json();
        nlohmann::json verdict;
        if (mode == mcmc::ScanMode::exact && row.has_second_difference) {
            const bool ok = row.second_difference <= 1e-10;
            verdict = ok ? "pass" : "fail";
            report.all_passed = report.all_passed && ok;
        }
        nlohmann::json se = mode == mcmc::ScanMode::mcmc ? nlohmann::json(row.std_error)
                                                         : nlohmann::json();
        report.add_record({alpha, row.h, row.mean_density, se, second, verdict});
    }
    return report;
}

Report run_conjecture(const RunConfig& cfg) {
    auto report = report_skeleton(cfg, {"model", "coupling", "field", "min_mean_edge", "worst_u3",
                                        "ghs_violated", "mean_below_half", "matches_conjecture"});
    std::vector<ConjecturePoint> atlas;
    if (is_ergm_model(cfg)) {
        const auto extra =
            cfg.model == "edge-wedge" ? SubgraphPattern::wedge() : SubgraphPattern::triangle();
        atlas = conjecture_scan_ergm(cfg.n, extra, cfg.beta2s, cfg.beta1s);
    } else {
        atlas = conjecture_scan_two_star(cfg.n, cfg.alphas, cfg.hs);
    }
    for (const auto& p : atlas)
        report.add_record({p.model, p.coupling, p.field, p.min_mean_edge, p.worst_u3, p.ghs_violated,
                           p.mean_below_half, p.matches_conjecture});
    return report;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty grid specification");
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
            throw std::invalid_argument("bad grid range: " + text);
        return grid_from_range(start, stop, step);
    }
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad grid entry: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty grid specification");
    return out;
}

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad edge id: " + item);
        out.push_back(v);
    }
    return out;
}

Report dispatch(const RunConfig& cfg) {
    if (cfg.command == "exact") return run_exact(cfg);
    if (cfg.command == "ursell") return run_ursell(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "fixpoint") return run_fixpoint(cfg);
    if (cfg.command == "phase") return run_phase(cfg);
    if (cfg.command == "curve") return run_curve(cfg);
    if (cfg.command == "mcmc") return run_mcmc(cfg);
    if (cfg.command == "concavity") return run_concavity(cfg);
    if (cfg.command == "conjecture") return run_conjecture(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

namespace {

void add_grid_option(CLI::App* cmd, const char* name, std::string& target, const char* help) {
    cmd->add_option(name, target, help);
}

void write_output(const RunConfig& cfg, const Report& report) {
    std::string payload;
    if (cfg.format == "json")
        payload = report.to_json().dump(2) + "\n";
    else
        payload = report.to_csv();

    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::string path = cfg.out_path;
    if (const char* dir = std::getenv("TWOSTAR_OUT_DIR"); dir && !path.empty() && path.front() != '/')
        path = std::string(dir) + "/" + path;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << payload;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Exact Gibbs computations, correlation-inequality verification, phase diagrams and "
                 "Glauber sampling for the two-star exponential random graph"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string alpha_text = "0", h_text = "0", beta1_text = "0", beta2_text = "0";
    std::string indices_text, lambda_text, a_text, b_text, e_text, f_text;

    app.set_help_flag("--help", "print help");
    auto add_common = [&](CLI::App* cmd, bool with_grids = true) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--n", cfg.n, "vertex count of the complete graph");
        if (with_grids) {
            add_grid_option(cmd, "--alpha", alpha_text, "alpha grid: start:stop:step, list, or value");
            add_grid_option(cmd, "--h", h_text, "h grid: start:stop:step, list, or value");
        }
        cmd->add_option("--format", cfg.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", cfg.out_path,
                        "output path (default stdout; TWOSTAR_OUT_DIR prefixes relative paths)");
        cmd->add_option("--seed", cfg.seed, "master seed");
        cmd->add_option("--enum-cap", cfg.enum_cap, "enumeration cap on active edges");
    };
    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", cfg.model, "two-star, edge-wedge, or edge-triangle")
            ->check(CLI::IsMember({"two-star", "edge-wedge", "edge-triangle"}));
        add_grid_option(cmd, "--beta1", beta1_text, "ERGM edge-coefficient grid");
        add_grid_option(cmd, "--beta2", beta2_text, "ERGM second-pattern coefficient grid");
    };

    auto* cmd_exact = app.add_subcommand("exact", "log-partition, free energy and moments");
    add_common(cmd_exact);

    auto* cmd_ursell = app.add_subcommand("ursell", "Ursell functions u_1..u_3");
    add_common(cmd_ursell);
    cmd_ursell->add_option("--order", cfg.order, "restrict to one order (1, 2 or 3)")
        ->check(CLI::Range(1, 3));
    cmd_ursell->add_option("--indices", indices_text, "explicit comma-separated edge indices");

    auto* cmd_verify = app.add_subcommand("verify", "run an inequality verifier over a grid");
    cmd_verify
        ->add_option("what", cfg.verify_what, "fkg-lattice | fkg | gks | ghs | vol-mono | part-submod "
                                              "| duplication | u3-repr | p-lattice")
        ->required()
        ->check(CLI::IsMember({"fkg-lattice", "fkg", "gks", "ghs", "vol-mono", "part-submod",
                               "duplication", "u3-repr", "p-lattice"}));
    add_common(cmd_verify);
    add_model(cmd_verify);
    cmd_verify->add_option("--subset-cap", cfg.subset_cap, "GKS subset size cap");
    cmd_verify->add_option("--lambda", lambda_text, "edge ids of Lambda (vol-mono)");
    cmd_verify->add_option("--subset-a", a_text, "edge ids of A (vol-mono)");
    cmd_verify->add_option("--subset-b", b_text, "edge ids of B (vol-mono)");
    cmd_verify->add_option("--subset-e", e_text, "edge ids of E (part-submod)");
    cmd_verify->add_option("--subset-f", f_text, "edge ids of F (part-submod)");

    auto* cmd_fix = app.add_subcommand("fixpoint", "mean-field fixed points");
    add_common(cmd_fix);

    auto* cmd_phase = app.add_subcommand("phase", "phase-diagram classification grid");
    add_common(cmd_phase);

    auto* cmd_curve = app.add_subcommand("curve", "coexistence curve h = q(alpha), alpha > 2");
    add_common(cmd_curve);

    auto* cmd_mcmc = app.add_subcommand("mcmc", "Glauber chains and summary statistics");
    add_common(cmd_mcmc);
    cmd_mcmc->add_option("--chains", cfg.chains, "independent chains");
    cmd_mcmc->add_option("--sweeps", cfg.sweeps, "sweeps per chain");
    cmd_mcmc->add_option("--burnin", cfg.burnin, "burn-in sweeps");
    cmd_mcmc->add_option("--thin", cfg.thinning, "thinning in sweeps");
    cmd_mcmc->add_option("--histogram-bins", cfg.histogram_bins,
                         "emit a density histogram with this many bins");

    auto* cmd_conc = app.add_subcommand("concavity", "edge density over an h grid, second differences");
    add_common(cmd_conc);
    cmd_conc->add_option("--mode", cfg.mode, "exact or mcmc")->check(CLI::IsMember({"exact", "mcmc"}));
    cmd_conc->add_option("--chains", cfg.chains, "chains (mcmc mode)");
    cmd_conc->add_option("--sweeps", cfg.sweeps, "sweeps per chain (mcmc mode)");
    cmd_conc->add_option("--burnin", cfg.burnin, "burn-in sweeps (mcmc mode)");
    cmd_conc->add_option("--thin", cfg.thinning, "thinning (mcmc mode)");

    auto* cmd_conj = app.add_subcommand("conjecture", "GHS-necessity evidence atlas");
    add_common(cmd_conj);
    add_model(cmd_conj);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.alphas = parse_grid(alpha_text);
        cfg.hs = parse_grid(h_text);
        cfg.beta1s = parse_grid(beta1_text);
        cfg.beta2s = parse_grid(beta2_text);
        cfg.indices = parse_id_list(indices_text);
        cfg.lambda_set = parse_id_list(lambda_text);
        cfg.set_a = parse_id_list(a_text);
        cfg.set_b = parse_id_list(b_text);
        cfg.set_e = parse_id_list(e_text);
        cfg.set_f = parse_id_list(f_text);

        Report report = dispatch(cfg);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        report.meta["timing_ms"] = elapsed;
        write_output(cfg, report);
        std::cerr << report.command << ": " << report.records.size() << " records, "
                  << (report.all_passed ? "all checks passed" : "CHECKS FAILED") << " (" << elapsed
                  << " ms, seed " << cfg.seed << ")\n";
        return report.all_passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cli
}  // namespace twostar
