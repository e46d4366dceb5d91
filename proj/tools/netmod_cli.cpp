// Command-line front end for single-edge impact analysis of networked
// control systems.

#include "netmod/generators.hpp"
#include "netmod/io.hpp"
#include "netmod/laplacian.hpp"
#include "netmod/linalg.hpp"
#include "netmod/oracle.hpp"
#include "netmod/report.hpp"
#include "netmod/stable.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitVerify = 4;

struct Options {
    std::string net_path;
    std::string out_path;
    std::string format = "csv";
    std::string sort = "margin";
    double w = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool verify = false;
    int jobs = 1;
    double tol = 1e-6;
    int budget = 0;
    std::string mode = "auto";
    int verify_samples = 30;
    int s = -1, t = -1;
    // generator spec
    std::string gen_kind;
    int gen_n = 0;
    double gen_p = 0.0;
    double gen_rho = 0.9;
    double gen_w = 0.2;
    std::string preset;
};

std::ostream& open_out(const Options& opt, std::ofstream& file) {
    if (opt.out_path.empty()) return std::cout;
    file.open(opt.out_path);
    if (!file) throw netmod::ParseError("cannot open " + opt.out_path);
    return file;
}

netmod::Network load(const Options& opt) {
    if (opt.net_path.empty())
        throw netmod::ParseError("--net is required for this command");
    return netmod::load_network_json_file(opt.net_path);
}

int cmd_validate(const Options& opt) {
    netmod::Network net = load(opt);
    std::cout << "n: " << net.n() << "\n"
              << "edges: " << net.edges().size() << "\n"
              << "kind: "
              << (net.kind() == netmod::NetworkKind::DirectStable
                      ? "direct"
                      : "laplacian")
              << "\n";
    if (net.kind() == netmod::NetworkKind::DirectStable) {
        std::cout << "rho(A): " << netmod::format_sig(net.spectral_radius_bound())
                  << "\n";
    } else {
        std::cout << "rho(L): " << netmod::format_sig(net.spectral_radius_bound())
                  << "\nstep_size_condition: ok\nconnected: yes\n";
    }
    return kExitOk;
}

int verify_stable_scan(const netmod::Network& net,
                       const netmod::SteadyStateKernel& kernel,
                       const Options& opt) {
    // sample edges with finite margin and compare the closed forms against
    // the oracle paths
    std::mt19937_64 rng(opt.seed);
    const int n = net.n();
    int checked = 0, mismatches = 0;
    for (int draws = 0; draws < 50 * opt.verify_samples &&
                        checked < opt.verify_samples;
         ++draws) {
        int s = static_cast<int>(rng() % n);
        int t = static_cast<int>(rng() % n);
        if (s == t) continue;
        double margin = netmod::stability_margin(kernel, s, t);
        if (opt.w >= margin) continue;
        netmod::EdgeMod mod{s, t, opt.w};
        ++checked;
        auto rep = netmod::oracle::rebuild_and_measure(net, mod);
        double hinf = netmod::delta_hinf(kernel, mod);
        double h2b = netmod::delta_h2_lower_bound(kernel, mod);
        bool ok_hinf =
            std::abs(hinf - rep.exact_hinf) <=
            opt.tol * std::max(1.0, rep.exact_hinf);
        bool ok_h2 = h2b <= rep.exact_h2 + rep.h2_tail + 1e-12;
        std::cerr << "verify (" << s << "," << t << "): hinf=" << hinf
                  << " oracle=" << rep.exact_hinf << " h2_bound=" << h2b
                  << " oracle_h2=" << rep.exact_h2
                  << " ratio=" << (rep.exact_h2 > 0 ? h2b / rep.exact_h2 : 1.0)
                  << (ok_hinf && ok_h2 ? "" : "  MISMATCH") << "\n";
        if (!ok_hinf || !ok_h2) ++mismatches;
    }
    return mismatches == 0 ? kExitOk : kExitVerify;
}

int cmd_scan(const Options& opt) {
    netmod::Network net = load(opt);
    std::ofstream file;
    std::ostream& out = open_out(opt, file);

    if (net.kind() == netmod::NetworkKind::DirectStable) {
        netmod::SteadyStateKernel kernel = netmod::build_kernel(net);
        netmod::ScanSortKey key = netmod::ScanSortKey::Margin;
        if (opt.sort == "hinf") key = netmod::ScanSortKey::Hinf;
        else if (opt.sort == "h2") key = netmod::ScanSortKey::H2Bound;
        else if (opt.sort == "pair") key = netmod::ScanSortKey::Pair;
        auto entries = netmod::batch_scan(kernel, opt.w, key, 0, opt.jobs);
        if (opt.format == "json") {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& e : entries)
                j.push_back({{"s", e.s},
                             {"t", e.t},
                             {"margin", netmod::format_sig(e.margin)},
                             {"destabilizing", e.destabilizing},
                             {"hinf", netmod::format_sig(e.hinf)},
                             {"h2_lower_bound",
                              netmod::format_sig(e.h2_lower_bound)}});
            out << j.dump(2) << "\n";
        } else {
            netmod::write_scan_csv(entries, out);
        }
        if (opt.verify) return verify_stable_scan(net, kernel, opt);
        return kExitOk;
    }

    netmod::LaplacianKernel kernel = netmod::build_laplacian_kernel(net);
    netmod::CoherenceReport rep =
        netmod::batch_coherence_delta(kernel, opt.w, opt.jobs);
    netmod::write_coherence_csv(rep, out);
    if (opt.verify) {
        std::mt19937_64 rng(opt.seed);
        const int n = net.n();
        int mismatches = 0;
        for (int i = 0; i < opt.verify_samples; ++i) {
            int s = static_cast<int>(rng() % n);
            int t = static_cast<int>(rng() % n);
            if (s == t || !rep.admissible(t, s)) continue;
            auto orep = netmod::oracle::rebuild_and_measure(
                net, netmod::EdgeMod{s, t, opt.w});
            double err = std::abs(rep.q(t, s) - orep.exact_coherence_delta);
            bool ok = err <= opt.tol * std::max(1.0, std::abs(rep.q(t, s))) +
                              orep.h2_tail;
            std::cerr << "verify (" << s << "," << t
                      << "): delta=" << rep.q(t, s)
                      << " oracle=" << orep.exact_coherence_delta
                      << (ok ? "" : "  MISMATCH") << "\n";
            if (!ok) ++mismatches;
        }
        if (mismatches > 0) return kExitVerify;
    }
    return kExitOk;
}

int cmd_grow(const Options& opt) {
    netmod::Network net = load(opt);
    std::ofstream file;
    std::ostream& out = open_out(opt, file);
    bool gramian_mode =
        opt.mode == "gramian" ||
        (opt.mode == "auto" &&
         net.kind() == netmod::NetworkKind::DirectStable);

    if (gramian_mode) {
        auto res = netmod::greedy_gramian_improve(net, opt.budget, opt.w);
        nlohmann::json j;
        j["trace_before"] = res.trace_before;
        j["trace_after"] = res.trace_after;
        nlohmann::json steps = nlohmann::json::array();
        for (size_t i = 0; i < res.mods.size(); ++i)
            steps.push_back({{"s", res.mods[i].s},
                             {"t", res.mods[i].t},
                             {"w", res.mods[i].w},
                             {"bound", res.bounds[i]}});
        j["steps"] = std::move(steps);
        out << j.dump(2) << "\n";
        return kExitOk;
    }

    auto res = netmod::greedy_grow(net, opt.w, opt.budget);
    netmod::write_grow_json(res, opt.w, out);
    std::cerr << "coherence: " << netmod::format_sig(res.trajectory.front())
              << " -> " << netmod::format_sig(res.trajectory.back())
              << "\ndiameter: " << res.diameter_before << " -> "
              << res.diameter_after << "\n";
    return kExitOk;
}

int cmd_generate(const Options& opt) {
    if (!opt.seed_set && (opt.gen_kind == "er" || !opt.preset.empty()))
        throw netmod::ParseError("--seed is required for stochastic generators");
    netmod::Network net = [&]() {
        if (opt.preset == "fig2") {
            netmod::ErdosRenyiConfig cfg;
            cfg.n = 500;
            cfg.p = 0.02;
            cfg.target_rho = 0.9;
            cfg.seed = opt.seed;
            cfg.inputs = netmod::sample_nodes(500, 50, opt.seed + 1);
            cfg.outputs = netmod::sample_nodes(500, 100, opt.seed + 2);
            return netmod::erdos_renyi(cfg);
        }
        if (opt.gen_kind == "er") {
            netmod::ErdosRenyiConfig cfg;
            cfg.n = opt.gen_n;
            cfg.p = opt.gen_p;
            cfg.target_rho = opt.gen_rho;
            cfg.seed = opt.seed;
            return netmod::erdos_renyi(cfg);
        }
        if (opt.gen_kind == "path")
            return netmod::path_graph(opt.gen_n, opt.gen_w);
        if (opt.gen_kind == "grid")
            return netmod::grid_graph(opt.gen_n, opt.gen_w);
        if (opt.gen_kind == "complete")
            return netmod::complete_graph(opt.gen_n, opt.gen_w);
        throw netmod::ParseError("unknown generator: " + opt.gen_kind);
    }();
    if (opt.out_path.empty())
        netmod::save_network_json(net, std::cout);
    else
        netmod::save_network_json_file(net, opt.out_path);
    return kExitOk;
}

int cmd_coherence(const Options& opt) {
    netmod::Network net = load(opt);
    netmod::LaplacianKernel kernel = netmod::build_laplacian_kernel(net);
    double c = netmod::coherence(kernel);
    std::cout << "coherence: " << netmod::format_sig(c) << "\n"
              << "coherence_plus_one: " << netmod::format_sig(c + 1.0) << "\n";
    if (opt.verify) {
        auto mc = netmod::oracle::coherence_truncated(net);
        bool ok = std::abs(mc.value - c) <=
                  opt.tol * std::max(1.0, c) + mc.tail_bound;
        std::cerr << "oracle: " << netmod::format_sig(mc.value)
                  << " (tail " << mc.tail_bound << ")"
                  << (ok ? "" : "  MISMATCH") << "\n";
        if (!ok) return kExitVerify;
    }
    return kExitOk;
}

int cmd_margin(const Options& opt) {
    netmod::Network net = load(opt);
    if (opt.s < 0 || opt.t < 0)
        throw netmod::ParseError("--s and --t are required");
    netmod::SteadyStateKernel kernel = netmod::build_kernel(net);
    double m = netmod::stability_margin(kernel, opt.s, opt.t);
    std::cout << "margin: " << netmod::format_sig(m) << "\n";
    return kExitOk;
}

int cmd_verify_all(const Options& opt) {
    netmod::Network net = load(opt);
    Options o = opt;
    o.verify = true;
    if (net.kind() == netmod::NetworkKind::DirectStable) {
        netmod::SteadyStateKernel kernel = netmod::build_kernel(net);
        return verify_stable_scan(net, kernel, o);
    }
    o.out_path = "/dev/null";
    return cmd_scan(o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-edge modification analysis for networked systems"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--net", opt.net_path, "network JSON file");
        cmd->add_option("--w", opt.w, "probe weight");
        cmd->add_option("--seed", opt.seed, "RNG seed")
            ->each([&](const std::string&) { opt.seed_set = true; });
        cmd->add_option("--out", opt.out_path, "output path (default stdout)");
        cmd->add_option("--format", opt.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--verify", opt.verify, "cross-check against oracles");
        cmd->add_option("--jobs", opt.jobs, "parallelism degree");
        cmd->add_option("--tol", opt.tol, "verification tolerance");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a network file");
    add_common(validate);
    CLI::App* scan = app.add_subcommand("scan", "per-edge batch analysis");
    add_common(scan);
    scan->add_option("--sort", opt.sort, "margin|hinf|h2|pair");
    scan->add_option("--samples", opt.verify_samples,
                     "edges sampled in --verify mode");
    CLI::App* grow = app.add_subcommand("grow", "greedy edge addition");
    add_common(grow);
    grow->add_option("--budget", opt.budget, "number of edges to add");
    grow->add_option("--mode", opt.mode, "auto|coherence|gramian");
    CLI::App* generate = app.add_subcommand("generate", "write a network file");
    add_common(generate);
    generate->add_option("--gen", opt.gen_kind, "er|path|grid|complete");
    generate->add_option("--n", opt.gen_n, "node count (grid: side length)");
    generate->add_option("--p", opt.gen_p, "ER edge probability");
    generate->add_option("--rho", opt.gen_rho, "ER target spectral radius");
    generate->add_option("--weight", opt.gen_w, "uniform edge weight");
    generate->add_option("--preset", opt.preset, "fig2");
    CLI::App* coher = app.add_subcommand("coherence", "network coherence");
    add_common(coher);
    CLI::App* margin = app.add_subcommand("margin", "stability margin of (s,t)");
    add_common(margin);
    margin->add_option("--s", opt.s, "source node");
    margin->add_option("--t", opt.t, "target node");
    CLI::App* verify_all =
        app.add_subcommand("verify-all", "oracle cross-check of all formulas");
    add_common(verify_all);
    verify_all->add_option("--samples", opt.verify_samples, "sampled edges");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (scan->parsed()) return cmd_scan(opt);
        if (grow->parsed()) return cmd_grow(opt);
        if (generate->parsed()) return cmd_generate(opt);
        if (coher->parsed()) return cmd_coherence(opt);
        if (margin->parsed()) return cmd_margin(opt);
        if (verify_all->parsed()) return cmd_verify_all(opt);
    } catch (const netmod::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const netmod::NonPositiveWeight& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const netmod::Error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
