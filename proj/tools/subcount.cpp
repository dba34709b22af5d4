// Command-line surface: exact and approximate induced-subgraph counting,
// graph-motif counting, the identity verification suites, and a seeded
// instance generator. Machine-readable JSON goes to stdout (and --output);
// one human summary line goes to stderr. Exit codes: 0 success, 1 identity
// or invariant failure, 2 usage/parse error, 3 resource cap exceeded.

#include "subcount/exact_lab.hpp"
#include "subcount/fptras.hpp"
#include "subcount/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

using namespace subcount;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct CommonOpts {
    std::string graph_path;
    std::string coloring_path;
    std::string property_name = "connected";
    std::string patterns_path;
    int k = 0;
    double eps = 0.1;
    double delta = 0.05;
    std::string seed_text = std::to_string(kDefaultSeed);
    std::string family = "greedy";
    int workers = 1;
    std::string output_path;
};

u64 resolve_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<u64>(rd()) << 32) ^ rd();
    }
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--seed", "expected an unsigned integer or \"random\"");
    }
}

FamilyMode resolve_family(const std::string& name) {
    if (name == "greedy") return FamilyMode::ExactGreedy;
    if (name == "randomized") return FamilyMode::Randomized;
    throw CLI::ValidationError("--family", "expected \"greedy\" or \"randomized\"");
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open graph file: " + path);
    return load_graph(in);
}

Coloring read_coloring(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open coloring file: " + path);
    return load_coloring(in, n);
}

Property resolve_property(const CommonOpts& o) {
    if (!o.patterns_path.empty()) {
        std::ifstream in(o.patterns_path);
        if (!in) throw parse_error("cannot open pattern file: " + o.patterns_path);
        return property_from_pattern_file(in, o.patterns_path);
    }
    return property_by_name(o.property_name);
}

// "color:mult,color:mult,..."
ColorMultiset parse_motif(const std::string& text) {
    std::map<int, int> counts;
    std::istringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        try {
            int color = std::stoi(part.substr(0, colon));
            int mult = colon == std::string::npos ? 1 : std::stoi(part.substr(colon + 1));
            if (mult < 1) throw std::invalid_argument("multiplicity");
            counts[color] += mult;
        } catch (const std::exception&) {
            throw parse_error("malformed motif component \"" + part +
                              "\", expected color:multiplicity");
        }
    }
    if (counts.empty()) throw parse_error("empty motif");
    return ColorMultiset(std::move(counts));
}

void emit_report(const json& report, const std::string& output_path) {
    std::string text = report.dump(2);
    text.push_back('\n');
    std::cout << text;
    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw parse_error("cannot open output file: " + output_path);
        out << text;
    }
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

json config_json(const CommonOpts& o, u64 seed, bool with_accuracy) {
    json cfg;
    cfg["graph"] = o.graph_path;
    if (!o.coloring_path.empty()) cfg["coloring"] = o.coloring_path;
    if (!o.patterns_path.empty()) cfg["patterns"] = o.patterns_path;
    else cfg["property"] = o.property_name;
    if (o.k > 0) cfg["k"] = o.k;
    if (with_accuracy) {
        cfg["seed"] = seed;
        cfg["epsilon"] = o.eps;
        cfg["delta"] = o.delta;
        cfg["family"] = o.family;
        cfg["workers"] = o.workers;
    }
    return cfg;
}

int cmd_exact(const CommonOpts& o) {
    Stopwatch watch;
    Graph g = read_graph(o.graph_path);
    Property phi = resolve_property(o);
    BigInt labelled = brute_count_labelled(g, o.k, phi);
    json result;
    result["labelled"] = labelled.str();
    if (phi.symmetric) result["unlabelled"] = (labelled / factorial(o.k)).str();
    json report{{"command", "exact"},
                {"config", config_json(o, 0, false)},
                {"result", result}};
    emit_report(report, o.output_path);
    std::cerr << "exact: property=" << phi.name << " k=" << o.k << " labelled=" << labelled.str()
              << (phi.symmetric ? " unlabelled=" + (labelled / factorial(o.k)).str() : "")
              << " (" << watch.ms() << " ms)\n";
    return kExitOk;
}

int cmd_approx(const CommonOpts& o) {
    Stopwatch watch;
    Graph g = read_graph(o.graph_path);
    Property phi = resolve_property(o);
    FptrasOptions opt;
    opt.epsilon = o.eps;
    opt.delta = o.delta;
    opt.seed = resolve_seed(o.seed_text);
    opt.family_mode = resolve_family(o.family);
    opt.workers = o.workers;
    Estimate labelled = approx_count_labelled(g, o.k, phi, opt);
    json result;
    result["labelled"] = to_json(labelled);
    if (phi.symmetric) {
        Estimate unlabelled = labelled;
        unlabelled.value /= factorial(o.k);
        result["unlabelled"] = to_json(unlabelled);
    }
    json report{{"command", "approx"},
                {"config", config_json(o, opt.seed, true)},
                {"result", result}};
    emit_report(report, o.output_path);
    std::cerr << "approx: property=" << phi.name << " k=" << o.k
              << " labelled=" << labelled.value_as_double() << " trials=" << labelled.trials
              << " m=" << labelled.set_count << " (" << watch.ms() << " ms)\n";
    return kExitOk;
}

int cmd_motif(const CommonOpts& o, const std::string& motif_text, const std::string& method) {
    Stopwatch watch;
    Graph g = read_graph(o.graph_path);
    Coloring c = read_coloring(o.coloring_path, g.vertex_count());
    ColorMultiset motif = parse_motif(motif_text);
    json result;
    result["method"] = method;
    double shown = 0;
    u64 seed = 0;
    if (method == "exact") {
        BigInt count = brute_count_motif(g, c, motif);
        result["count"] = count.str();
        shown = count.convert_to<double>();
    } else {
        FptrasOptions opt;
        opt.epsilon = o.eps;
        opt.delta = o.delta;
        opt.seed = seed = resolve_seed(o.seed_text);
        opt.family_mode = resolve_family(o.family);
        opt.workers = o.workers;
        Estimate est = approx_count_motif(g, c, motif, opt);
        result["estimate"] = to_json(est);
        shown = est.value_as_double();
    }
    json report{{"command", "motif"},
                {"config", config_json(o, seed, method != "exact")},
                {"result", result}};
    report["config"]["motif"] = motif_text;
    report["config"]["method"] = method;
    emit_report(report, o.output_path);
    std::cerr << "motif: |M|=" << motif.size() << " method=" << method << " value=" << shown
              << " (" << watch.ms() << " ms)\n";
    return kExitOk;
}

int cmd_verify(int k_max, int instances, const std::string& seed_text, bool inject_fault,
               const std::string& output_path) {
    Stopwatch watch;
    u64 seed = resolve_seed(seed_text);
    std::vector<IdentityCheck> checks;
    auto append = [&](std::vector<IdentityCheck> more) {
        for (auto& c : more) checks.push_back(std::move(c));
    };
    append(verify_lattice_identities(k_max, inject_fault));
    append(verify_linear_system(instances, Rng::stream(seed, 1).next()));
    append(verify_gadget_claim(instances, Rng::stream(seed, 2).next()));
    append(verify_ie_identity(instances, Rng::stream(seed, 3).next()));
    append(verify_reduction_chain(instances, Rng::stream(seed, 4).next()));

    bool all_pass = true;
    json rows = json::array();
    for (const auto& c : checks) {
        rows.push_back(to_json(c));
        all_pass = all_pass && c.pass;
    }
    json report{{"command", "verify"},
                {"config",
                 {{"k_max", k_max},
                  {"instances", instances},
                  {"seed", seed},
                  {"inject_fault", inject_fault}}},
                {"result", {{"checks", rows}, {"all_pass", all_pass}}}};
    emit_report(report, output_path);
    std::cerr << "verify: " << checks.size() << " checks, "
              << (all_pass ? "all passed" : "FAILURES PRESENT") << " (" << watch.ms() << " ms)\n";
    return all_pass ? kExitOk : kExitIdentityFailure;
}

int cmd_gen(int n, double p, const std::string& seed_text, const std::string& output_path,
            int palette, const std::string& coloring_out) {
    u64 seed = resolve_seed(seed_text);
    Graph g = random_graph(n, p, seed);
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw parse_error("cannot open output file: " + output_path);
    save_graph(g, out);
    json result{{"graph", output_path}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
    if (palette > 0) {
        if (coloring_out.empty())
            throw CLI::ValidationError("--palette", "needs --coloring-out to write colors to");
        Coloring c = random_coloring(n, palette, Rng::stream(seed, 1).next());
        std::ofstream color_file(coloring_out, std::ios::binary);
        if (!color_file) throw parse_error("cannot open coloring output: " + coloring_out);
        save_coloring(c, color_file);
        result["coloring"] = coloring_out;
        result["palette"] = palette;
    }
    json report{{"command", "gen"},
                {"config", {{"n", n}, {"p", p}, {"seed", seed}}},
                {"result", result}};
    emit_report(report, "");
    std::cerr << "gen: wrote n=" << n << " m=" << g.edge_count() << " to " << output_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subcount: exact and approximate induced-subgraph counting"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string motif_text, motif_method = "approx";
    int verify_kmax = 5, verify_instances = 6;
    bool inject_fault = false;
    int gen_n = 10, gen_palette = 0;
    double gen_p = 0.5;
    std::string gen_out, gen_coloring_out;

    auto add_graph_opts = [&](CLI::App* cmd, bool needs_k) {
        cmd->add_option("--graph", o.graph_path, "graph file (\"n m\" header + edge lines)")
            ->required();
        if (needs_k) cmd->add_option("-k,--k", o.k, "subgraph size")->required();
        auto* prop = cmd->add_option("--property", o.property_name,
                                     "connected | hamiltonian | non-bipartite");
        cmd->add_option("--patterns", o.patterns_path,
                        "custom property: minimal-pattern list file")
            ->excludes(prop);
        cmd->add_option("--output", o.output_path, "also write the JSON report here");
    };
    auto add_accuracy_opts = [&](CLI::App* cmd) {
        cmd->add_option("--eps", o.eps, "relative error bound");
        cmd->add_option("--delta", o.delta, "failure probability");
        cmd->add_option("--seed", o.seed_text, "integer seed or \"random\"");
        cmd->add_option("--family", o.family, "hash family: greedy | randomized");
        cmd->add_option("--workers", o.workers, "parallel estimator workers");
    };

    CLI::App* exact = app.add_subcommand("exact", "exact counts by brute-force enumeration");
    add_graph_opts(exact, true);

    CLI::App* approx = app.add_subcommand("approx", "FPTRAS estimate for a monotone property");
    add_graph_opts(approx, true);
    add_accuracy_opts(approx);

    CLI::App* motif = app.add_subcommand("motif", "count connected motif occurrences");
    motif->add_option("--graph", o.graph_path, "graph file")->required();
    motif->add_option("--coloring", o.coloring_path, "coloring file")->required();
    motif->add_option("--motif", motif_text, "color:mult,color:mult,...")->required();
    motif->add_option("--method", motif_method, "exact | approx");
    motif->add_option("--output", o.output_path, "also write the JSON report here");
    add_accuracy_opts(motif);

    CLI::App* verify = app.add_subcommand("verify", "run the lattice/reduction identity suites");
    verify->add_option("--k-max", verify_kmax, "largest k for the lattice identities");
    verify->add_option("--instances", verify_instances, "random instances per identity");
    verify->add_option("--seed", o.seed_text, "integer seed or \"random\"");
    verify->add_flag("--inject-fault", inject_fault,
                     "negative control: corrupt one matrix entry");
    verify->add_option("--output", o.output_path, "also write the JSON report here");

    CLI::App* gen = app.add_subcommand("gen", "write a seeded random instance");
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--p", gen_p, "edge probability")->required();
    gen->add_option("--seed", o.seed_text, "integer seed or \"random\"");
    gen->add_option("--output", gen_out, "graph file to write")->required();
    gen->add_option("--palette", gen_palette, "also draw a coloring with this many colors");
    gen->add_option("--coloring-out", gen_coloring_out, "coloring file to write");

    try {
        app.parse(argc, argv);
        if (exact->parsed()) return cmd_exact(o);
        if (approx->parsed()) return cmd_approx(o);
        if (motif->parsed()) {
            if (motif_method != "exact" && motif_method != "approx")
                throw CLI::ValidationError("--method", "expected \"exact\" or \"approx\"");
            return cmd_motif(o, motif_text, motif_method);
        }
        if (verify->parsed())
            return cmd_verify(verify_kmax, verify_instances, o.seed_text, inject_fault,
                              o.output_path);
        if (gen->parsed())
            return cmd_gen(gen_n, gen_p, o.seed_text, gen_out, gen_palette, gen_coloring_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const cap_exceeded& e) {
        std::cerr << "error (resource cap): " << e.what() << "\n";
        return kExitCap;
    } catch (const parse_error& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return kExitUsage;
    } catch (const oracle_inconsistency& e) {
        std::cerr << "error (invariant): " << e.what() << "\n";
        return kExitIdentityFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (usage): " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error (invariant): " << e.what() << "\n";
        return kExitIdentityFailure;
    }
}
