// Command line front end: generate instances, derive graphs, run clique
// algorithms, evaluate predictions, and launch harness experiments.
// Machine-readable output goes to stdout, diagnostics to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rig/ballsbins.hpp"
#include "rig/cliques.hpp"
#include "rig/errors.hpp"
#include "rig/graph.hpp"
#include "rig/harness.hpp"
#include "rig/instance.hpp"
#include "rig/oracles.hpp"
#include "rig/theory.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << data;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

// Accepts inline JSON or @path to a JSON file.
rig::SetSizeLaw law_from_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') text = read_input(arg.substr(1));
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw rig::invalid_law_error(std::string("law: ") + e.what());
    }
    return rig::SetSizeLaw::from_json(j);
}

struct GenOpts {
    std::uint64_t n = 0, m = 0, seed = 1;
    std::string law, out = "-";
};

struct GraphOpts {
    std::string in, out = "-";
    bool stats = false;
};

struct CliqueOpts {
    std::string in, algo = "greedy";
    std::uint64_t budget = 100'000'000;
};

struct PredictOpts {
    std::string formula;
    std::uint64_t n = 0, m = 0, k = 0, x1 = 0, x2 = 0;
    double alpha = 1.5, beta = 1.0, eps0 = 0.1, eps1 = 0.02, sv_gamma = 0.0;
    double a = 0.0, b = 0.0, p = 0.0, c = 1.0;
    std::vector<std::uint64_t> sizes;
    std::string law;
};

struct MaxloadOpts {
    std::uint64_t balls = 0, bins = 0, trials = 0, seed = 1;
    bool exact = false;
};

struct ExperimentOpts {
    std::string config, out = "-", format = "json";
    unsigned workers = 0;
};

void run_gen(const GenOpts& o) {
    rig::SetSizeLaw law = law_from_arg(o.law);
    rig::Instance inst = rig::generate(o.n, o.m, law, o.seed);
    if (o.out == "-") {
        rig::write_instance(inst, std::cout);
    } else {
        rig::write_instance_file(inst, o.out);
    }
}

void run_graph(const GraphOpts& o) {
    rig::Instance inst = rig::read_instance_file(o.in);
    rig::SparseGraph g = rig::build_graph(inst);
    if (o.stats) {
        rig::DegreeStats st = rig::degree_stats(g);
        json j{{"n", g.order()},
               {"edges", g.edge_count},
               {"degree_mean", st.mean},
               {"degree_variance", st.variance},
               {"degree_max", st.max}};
        write_output(o.out, j.dump(2) + "\n");
        return;
    }
    if (o.out == "-") {
        rig::write_edge_list(g, std::cout);
    } else {
        std::ofstream out(o.out);
        if (!out) throw std::runtime_error("cannot open output file " + o.out);
        rig::write_edge_list(g, out);
    }
}

void run_clique(const CliqueOpts& o) {
    rig::Instance inst = rig::read_instance_file(o.in);
    rig::SparseGraph g = rig::build_graph(inst);
    rig::CliqueResult res;
    if (o.algo == "greedy")
        res = rig::greedy_clique(g);
    else if (o.algo == "mono")
        res = rig::mono_clique(g);
    else if (o.algo == "exact")
        res = rig::exact_max_clique(g, o.budget);
    else if (o.algo == "brute")
        res = rig::oracle::brute_max_clique(g);
    else
        throw rig::config_error("clique: unknown algo '" + o.algo + "'");
    std::cout << res.to_json().dump(2) << "\n";
}

void run_predict(const PredictOpts& o) {
    json j;
    if (o.formula == "powerlaw-clique") {
        rig::theory::PowerLawRegime regime{o.alpha, o.beta, o.eps0, o.eps1, o.sv_gamma};
        j["value"] = rig::theory::predicted_clique_powerlaw(o.n, regime);
        if (o.m > 0) {
            rig::theory::Thresholds th = rig::theory::thresholds(o.n, o.m, regime);
            j["theta1"] = th.theta1;
            j["theta2"] = th.theta2;
        }
    } else if (o.formula == "finite-variance") {
        j["value"] = rig::theory::predicted_clique_finite_variance(o.n);
    } else if (o.formula == "lambert-root") {
        rig::theory::LambertRoot r = rig::theory::lambert_root(o.a, o.b);
        j["root"] = r.root;
        j["asymptote"] = r.asymptote;
    } else if (o.formula == "h-of-k") {
        j["value"] = rig::theory::h_of_k(o.k);
    } else if (o.formula == "t-of-kp") {
        j["value"] = rig::theory::t_of_kp(o.k, o.p, o.c);
    } else if (o.formula == "rainbow-bound") {
        j["value"] = rig::theory::rainbow_kk_prob_bound(o.sizes, o.m);
    } else if (o.formula == "degree-moments") {
        rig::theory::DegreeMoments dm =
            rig::theory::degree_moment_predictions(law_from_arg(o.law), o.n, o.m);
        j["mean"] = dm.mean;
        j["variance"] = dm.variance;
    } else if (o.formula == "edge-prob") {
        rig::theory::EdgeProbBounds eb = rig::theory::edge_prob_bounds(o.x1, o.x2, o.m);
        j["lower"] = eb.lower;
        j["upper"] = eb.upper;
    } else {
        throw rig::config_error("predict: unknown formula '" + o.formula + "'");
    }
    std::cout << j.dump(2) << "\n";
}

void run_maxload(const MaxloadOpts& o) {
    rig::LoadDistribution dist;
    if (o.exact) {
        dist = rig::max_load_exact(o.balls, o.bins);
    } else {
        if (o.trials == 0)
            throw rig::config_error("maxload: need --exact or --trials");
        rig::Rng rng(o.seed);
        dist = rig::empirical_load_distribution(o.balls, o.bins, o.trials, rng);
    }
    std::cout << dist.to_json().dump(2) << "\n";
}

int run_experiment(const ExperimentOpts& o) {
    json j;
    try {
        j = json::parse(read_input(o.config));
    } catch (const json::exception& e) {
        throw rig::config_error(std::string("config: ") + e.what());
    }
    rig::harness::ExperimentConfig cfg = rig::harness::ExperimentConfig::from_json(j);
    if (o.workers > 0) cfg.worker_count = o.workers;
    rig::harness::ExperimentReport report = rig::harness::run(cfg);
    rig::harness::OutputFormat fmt = rig::harness::OutputFormat::Json;
    if (o.format == "csv")
        fmt = rig::harness::OutputFormat::Csv;
    else if (o.format != "json")
        throw rig::config_error("experiment: unknown format '" + o.format + "'");
    write_output(o.out, rig::harness::emit(report, fmt));
    if (!report.all_pass()) {
        std::cerr << "experiment: " << report.rules.size() << " rules evaluated, at least one failed\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse random intersection graphs: generators, clique algorithms, experiments"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "sample an instance and write it as text");
    gen_cmd->add_option("--n", gen.n, "number of vertices")->required();
    gen_cmd->add_option("--m", gen.m, "number of attributes")->required();
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--law", gen.law, "set-size law as JSON, or @file")->required();
    gen_cmd->add_option("--out", gen.out, "output path, - for stdout");

    GraphOpts graph;
    auto* graph_cmd = app.add_subcommand("graph", "derive the intersection graph of an instance");
    graph_cmd->add_option("--in", graph.in, "instance file")->required();
    graph_cmd->add_option("--out", graph.out, "output path, - for stdout");
    graph_cmd->add_flag("--stats", graph.stats, "print degree statistics instead of edges");

    CliqueOpts clique;
    auto* clique_cmd = app.add_subcommand("clique", "run a clique algorithm on an instance");
    clique_cmd->add_option("--in", clique.in, "instance file")->required();
    clique_cmd->add_option("--algo", clique.algo, "greedy, mono, exact, or brute");
    clique_cmd->add_option("--budget", clique.budget, "node budget for exact");

    PredictOpts predict;
    auto* predict_cmd = app.add_subcommand("predict", "evaluate a closed-form prediction");
    predict_cmd->add_option("formula", predict.formula,
                            "powerlaw-clique, finite-variance, lambert-root, h-of-k, t-of-kp, "
                            "rainbow-bound, degree-moments, or edge-prob")
        ->required();
    predict_cmd->add_option("--n", predict.n, "number of vertices");
    predict_cmd->add_option("--m", predict.m, "number of attributes");
    predict_cmd->add_option("--alpha", predict.alpha, "tail exponent");
    predict_cmd->add_option("--beta", predict.beta, "attribute growth exponent");
    predict_cmd->add_option("--eps0", predict.eps0, "outer tail-window exponent");
    predict_cmd->add_option("--eps1", predict.eps1, "inner tail-window exponent");
    predict_cmd->add_option("--sv-gamma", predict.sv_gamma, "slowly varying exponent");
    predict_cmd->add_option("--a", predict.a, "lambert-root coefficient a");
    predict_cmd->add_option("--b", predict.b, "lambert-root coefficient b");
    predict_cmd->add_option("--k", predict.k, "clique size");
    predict_cmd->add_option("--p", predict.p, "colour budget p");
    predict_cmd->add_option("--c", predict.c, "constant factor c");
    predict_cmd->add_option("--sizes", predict.sizes, "subset sizes");
    predict_cmd->add_option("--x1", predict.x1, "first subset size");
    predict_cmd->add_option("--x2", predict.x2, "second subset size");
    predict_cmd->add_option("--law", predict.law, "set-size law as JSON, or @file");

    MaxloadOpts maxload;
    auto* maxload_cmd = app.add_subcommand("maxload", "distribution of the maximum bin load");
    maxload_cmd->add_option("--balls", maxload.balls, "number of balls")->required();
    maxload_cmd->add_option("--bins", maxload.bins, "number of bins")->required();
    maxload_cmd->add_flag("--exact", maxload.exact, "exact law by convolution");
    maxload_cmd->add_option("--trials", maxload.trials, "empirical samples");
    maxload_cmd->add_option("--seed", maxload.seed, "rng seed");

    ExperimentOpts experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "run a harness experiment from a config");
    exp_cmd->add_option("--config", experiment.config, "config JSON path, - for stdin")->required();
    exp_cmd->add_option("--out", experiment.out, "report path, - for stdout");
    exp_cmd->add_option("--format", experiment.format, "json or csv");
    exp_cmd->add_option("--workers", experiment.workers, "worker thread override");

    int rc = 0;
    gen_cmd->callback([&] { run_gen(gen); });
    graph_cmd->callback([&] { run_graph(graph); });
    clique_cmd->callback([&] { run_clique(clique); });
    predict_cmd->callback([&] { run_predict(predict); });
    maxload_cmd->callback([&] { run_maxload(maxload); });
    exp_cmd->callback([&] { rc = run_experiment(experiment); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const rig::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const rig::invalid_law_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const rig::invalid_regime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
