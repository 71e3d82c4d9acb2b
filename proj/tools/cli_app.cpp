#include "cli_app.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "netex/concentration.hpp"
#include "netex/decomposition.hpp"
#include "netex/erm.hpp"
#include "netex/hypergraph.hpp"
#include "netex/lp.hpp"
#include "netex/simulate.hpp"
#include "netex/weighting.hpp"

namespace netex::cli {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

using Cell = std::variant<std::string, double, long>;

// Tabular output with a fixed header; CSV uses '.' decimals at 12 significant
// digits, JSON emits an array of row objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

    void write(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : rows_) {
                nlohmann::json obj;
                for (std::size_t c = 0; c < columns_.size(); ++c) {
                    std::visit([&](const auto& v) { obj[columns_[c]] = v; }, row[c]);
                }
                arr.push_back(std::move(obj));
            }
            out << arr.dump() << "\n";
            return;
        }
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out << (c ? "," : "") << columns_[c];
        }
        out << "\n";
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ",";
                std::visit(
                    [&](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>) {
                            out << format_double(v);
                        } else {
                            out << v;
                        }
                    },
                    row[c]);
            }
            out << "\n";
        }
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(errc::io_error, "cannot open " + path);
    out << text;
}

void write_table(const Table& table, const std::string& path, const std::string& format) {
    std::ostringstream ss;
    table.write(ss, format);
    write_output(path, ss.str());
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(std::stod(part));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) out.push_back(std::stoi(part));
    return out;
}

// "star:8", "disjoint:10", "triangle", "starheavy:20,20", "ba:50,2[,seed]",
// "er:100,0.02[,seed]", "ustat:4,2", "file:path.json"
Hypergraph parse_fixture(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto args = rest.empty() ? std::vector<std::string>{} : split(rest, ',');
    auto arg_int = [&](std::size_t i) { return std::stoi(args.at(i)); };
    if (kind == "star") return gen_star(arg_int(0));
    if (kind == "disjoint") return gen_disjoint(arg_int(0));
    if (kind == "triangle") return gen_triangle();
    if (kind == "starheavy") return disjoint_union(gen_star(arg_int(0)), gen_disjoint(arg_int(1)));
    if (kind == "ba") {
        std::uint64_t seed = args.size() > 2 ? std::stoull(args[2]) : 1;
        return gen_bipartite_ba(arg_int(0), arg_int(1), seed);
    }
    if (kind == "er") {
        std::uint64_t seed = args.size() > 2 ? std::stoull(args[2]) : 1;
        return gen_bipartite_er(arg_int(0), std::stod(args.at(1)), seed);
    }
    if (kind == "ustat") return gen_u_statistic(arg_int(0), arg_int(1));
    if (kind == "file") return load_hypergraph(rest);
    throw Error(errc::bad_params, "unknown fixture '" + text + "'");
}

ResponseSpec parse_response(const std::string& name, const Hypergraph& h, double noise) {
    int arity = h.is_partite() ? h.num_parts()
                               : (h.num_edges() > 0 ? static_cast<int>(h.edge(0).size()) : 2);
    if (name == "product") return rademacher_product_spec(arity, noise);
    if (name == "first") return first_feature_spec(arity, noise);
    throw Error(errc::bad_params, "unknown response '" + name + "'");
}

// Flattens a nested JSON array of numbers in row-major order and returns the
// shape it implies.
void flatten_table(const nlohmann::json& node, std::vector<int>& shape, int depth,
                   std::vector<double>& out) {
    if (node.is_array()) {
        int size = static_cast<int>(node.size());
        if (depth == static_cast<int>(shape.size())) {
            shape.push_back(size);
        } else if (shape[static_cast<std::size_t>(depth)] != size) {
            throw Error(errc::parse_error, "ragged table");
        }
        for (const auto& child : node) flatten_table(child, shape, depth + 1, out);
    } else if (node.is_number()) {
        out.push_back(node.get<double>());
    } else {
        throw Error(errc::parse_error, "table entries must be numbers");
    }
}

struct VarianceSpecFile {
    DiscreteKDist dist;
    TabulatedFunction table;
};

VarianceSpecFile load_variance_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse_error, e.what());
    }
    VarianceSpecFile out;
    try {
        out.dist.marginals = j.at("marginals").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse_error, e.what());
    }
    std::vector<int> shape;
    std::vector<double> values;
    if (!j.contains("table")) throw Error(errc::parse_error, "missing 'table'");
    flatten_table(j["table"], shape, 0, values);
    out.table = TabulatedFunction(shape, std::move(values));
    return out;
}

std::string subset_name(std::uint32_t mask, int k) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < k; ++i) {
        if (mask & (1u << i)) {
            if (!first) out += " ";
            out += std::to_string(i);
            first = false;
        }
    }
    return out + "}";
}

// ---- Subcommand configs ------------------------------------------------------

struct GenConfig {
    std::string kind;
    int n = 0;
    int r = 1;
    int big_n = 0;
    int m = 1;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

struct WeightConfig {
    std::string in;
    std::string scheme = "svalue";
    std::string out;
    std::string format = "json";
};

struct ScalingConfig {
    std::string model;
    int m = 2;
    double pn = 2.0;
    std::string n_list = "100,200,300,400,500";
    int seeds = 10;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

struct BoundsConfig {
    std::string epsilons;
    double M = 1.0;
    double sigma2 = 0.0;
    double total_weight = 0.0;
    long n = 0;
    long omega = 0;
    double chi_star = 0.0;
    int r = 0;
    double range = 0.0;
    double covering = 0.0;
    double markov_mean = -1.0;
    std::string out;
    std::string format = "csv";
};

struct SimulateConfig {
    std::string fixture;
    std::string scheme = "svalue";
    std::string response = "product";
    double noise = 0.0;
    std::string epsilons = "0.1,0.3,0.5";
    long trials = 100000;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

struct VarianceConfig {
    std::string spec_path;
    std::string out;
    std::string format = "csv";
};

struct ErmConfig {
    int star = 20;
    int disjoint = 20;
    double noise = 0.25;
    int grid = 21;
    std::string methods = "eqw,ind,svalue";
    int reps = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

int cmd_gen(const GenConfig& c) {
    Hypergraph h = [&] {
        if (c.kind == "star") return gen_star(c.n);
        if (c.kind == "disjoint") return gen_disjoint(c.n);
        if (c.kind == "triangle") return gen_triangle();
        if (c.kind == "ba") return gen_bipartite_ba(c.big_n, c.m, c.seed);
        if (c.kind == "er") return gen_bipartite_er(c.big_n, c.p, c.seed);
        if (c.kind == "ustat") return gen_u_statistic(c.n, c.r);
        throw Error(errc::bad_params, "unknown generator '" + c.kind + "'");
    }();
    write_output(c.out, to_json(h) + "\n");
    return 0;
}

int cmd_weight(const WeightConfig& c) {
    Hypergraph h = load_hypergraph(c.in);
    SValueResult sv = s_value(h);
    int omega = max_degree(h);
    auto matching = greedy_matching(h);

    nlohmann::json payload;
    if (c.scheme == "svalue") {
        payload = {{"s", sv.s}, {"weights", sv.weights.weights}};
    } else if (c.scheme == "eqw") {
        payload = eqw_weights(h).weights;
    } else if (c.scheme == "ind") {
        payload = ind_weights(h).weights;
    } else if (c.scheme == "minimax") {
        payload = minimax_variance_weights(h).normalized;
    } else {
        throw Error(errc::bad_params, "unknown scheme '" + c.scheme + "'");
    }
    write_output(c.out, payload.dump() + "\n");

    std::ostringstream summary;
    summary << "scheme=" << c.scheme << " n=" << h.num_edges() << " s=" << format_double(sv.s)
            << " omega=" << omega << " n_over_omega="
            << format_double(omega > 0 ? static_cast<double>(h.num_edges()) / omega : 0.0)
            << " matching=" << matching.size() << "\n";
    std::cerr << summary.str();
    return 0;
}

int cmd_svalue_scaling(const ScalingConfig& c) {
    auto sizes = parse_int_list(c.n_list);
    if (sizes.size() < 2) throw Error(errc::bad_params, "need at least two N values");
    if (c.seeds < 3) throw Error(errc::bad_params, "need at least three seeds");
    Table table({"model", "param", "N", "seeds", "mean_s_over_N", "sd_s_over_N"});
    for (int N : sizes) {
        std::vector<double> ratios;
        for (int i = 0; i < c.seeds; ++i) {
            std::uint64_t seed = Rng::derive(c.seed, static_cast<std::uint64_t>(i));
            Hypergraph h = c.model == "ba" ? gen_bipartite_ba(N, c.m, seed)
                                           : gen_bipartite_er(N, c.pn / N, seed);
            ratios.push_back(s_value(h).s / static_cast<double>(N));
        }
        double mean = 0.0;
        for (double v : ratios) mean += v;
        mean /= static_cast<double>(ratios.size());
        double var = 0.0;
        for (double v : ratios) var += (v - mean) * (v - mean);
        var /= static_cast<double>(ratios.size() - 1);
        table.add_row({c.model, c.model == "ba" ? static_cast<double>(c.m) : c.pn,
                       static_cast<long>(N), static_cast<long>(c.seeds), mean, std::sqrt(var)});
    }
    write_table(table, c.out, c.format);
    return 0;
}

int cmd_bounds(const BoundsConfig& c) {
    Table table({"kind", "epsilon", "value_raw", "value_clipped"});
    auto add = [&](const BoundResult& b, double eps) {
        table.add_row({std::string(bound_kind_name(b.kind)), eps, b.raw, b.value});
    };
    for (double eps : parse_double_list(c.epsilons)) {
        BoundQuery q;
        q.epsilon = eps;
        q.M = c.M;
        q.sigma2 = c.sigma2;
        q.total_weight = c.total_weight;
        q.n = c.n;
        q.omega = c.omega;
        q.chi_star = c.chi_star;
        q.r = c.r;
        q.range = c.range;
        q.covering = c.covering;
        if (c.total_weight > 0.0) {
            if (c.sigma2 > 0.0) add(networked_bennett(q), eps);
            add(networked_bernstein(q), eps);
            add(networked_hoeffding(q), eps);
        }
        if (c.chi_star >= 1.0 && c.n >= 1) {
            auto [jh, jb] = janson_bounds(q);
            add(jh, eps);
            add(jb, eps);
        }
        if (c.omega >= 1 && c.n >= 1 && c.sigma2 > 0.0) {
            for (const auto& b : eqw_bounds(q)) add(b, eps);
        }
        if (c.r >= 1 && c.n >= 1 && c.range > 0.0) {
            for (const auto& b : u_statistic_bounds(q)) add(b, eps);
        }
        if (c.covering >= 1.0) {
            if (c.n >= 1) add(sample_error_bound(SampleErrorKind::iid, q), eps);
            if (c.n >= 1 && c.chi_star >= 1.0) {
                add(sample_error_bound(SampleErrorKind::eqw_chromatic, q), eps);
            }
            if (c.n >= 1 && c.omega >= 1) add(sample_error_bound(SampleErrorKind::eqw_omega, q), eps);
            if (c.total_weight > 0.0) add(sample_error_bound(SampleErrorKind::s_value, q), eps);
        }
        if (c.markov_mean >= 0.0) add(markov_bound(c.markov_mean, eps), eps);
    }
    write_table(table, c.out, c.format);
    return 0;
}

int cmd_simulate(const SimulateConfig& c) {
    for (double eps : parse_double_list(c.epsilons)) {
        if (eps <= 0.0) throw Error(errc::bad_params, "epsilon grid must be strictly positive");
    }
    Hypergraph h = parse_fixture(c.fixture);
    ResponseSpec spec = parse_response(c.response, h, c.noise);
    WeightVector w = [&] {
        if (c.scheme == "eqw") return eqw_weights(h);
        if (c.scheme == "ind") return ind_weights(h);
        if (c.scheme == "svalue") return s_value(h).weights;
        throw Error(errc::bad_params, "unknown scheme '" + c.scheme + "'");
    }();

    BoundQuery q;
    q.total_weight = w.total();
    q.M = response_deviation_bound(spec);
    q.sigma2 = response_variance(spec);

    auto epsilons = parse_double_list(c.epsilons);
    auto tails = estimate_tail_grid(h, spec, w, epsilons, c.trials, c.seed);
    Table table({"fixture", "scheme", "epsilon", "empirical", "se", "bound_hoeffding",
                 "bound_bernstein", "bound_bennett"});
    for (const auto& t : tails) {
        q.epsilon = t.epsilon;
        table.add_row({c.fixture, c.scheme, t.epsilon, t.estimate, t.std_error,
                       networked_hoeffding(q).value, networked_bernstein(q).value,
                       networked_bennett(q).value});
    }
    write_table(table, c.out, c.format);
    return 0;
}

int cmd_variance(const VarianceConfig& c) {
    VarianceSpecFile spec = load_variance_spec(c.spec_path);
    auto dec = anova_decompose(spec.table, spec.dist);
    Table table({"subset", "sigma2"});
    for (std::uint32_t mask = 0; mask < dec.components.size(); ++mask) {
        table.add_row({subset_name(mask, dec.k), dec.component_variance[mask]});
    }
    table.add_row({std::string("total"), dec.total_variance});
    write_table(table, c.out, c.format);
    return 0;
}

int cmd_erm(const ErmConfig& c) {
    Hypergraph h = disjoint_union(gen_star(c.star), gen_disjoint(c.disjoint));
    ResponseSpec spec = first_feature_spec(2, c.noise);

    HypothesisClass cls;
    cls.bound_M = 1.0 + 1.0 + c.noise;
    for (int i = 0; i < c.grid; ++i) {
        double theta = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(c.grid - 1);
        cls.candidates.push_back(TabulatedFunction::constant({2, 2}, theta));
    }

    std::vector<WeightScheme> methods;
    for (const auto& name : split(c.methods, ',')) {
        if (name == "eqw") {
            methods.push_back(WeightScheme::eqw);
        } else if (name == "ind") {
            methods.push_back(WeightScheme::ind);
        } else if (name == "svalue") {
            methods.push_back(WeightScheme::svalue);
        } else {
            throw Error(errc::bad_params, "unknown method '" + name + "'");
        }
    }

    auto summaries = excess_risk_experiment(h, spec, cls, methods, c.reps, c.seed);
    Table table({"method", "repetition", "selected_index", "empirical_risk", "excess_risk"});
    for (const auto& s : summaries) {
        for (std::size_t rep = 0; rep < s.excess_risk.size(); ++rep) {
            table.add_row({std::string(weight_scheme_name(s.method)), static_cast<long>(rep),
                           static_cast<long>(s.selected[rep]), s.empirical_risk[rep],
                           s.excess_risk[rep]});
        }
    }
    write_table(table, c.out, c.format);
    for (const auto& s : summaries) {
        std::cerr << "method=" << weight_scheme_name(s.method)
                  << " mean_excess=" << format_double(s.mean_excess)
                  << " se=" << format_double(s.std_error)
                  << " median=" << format_double(s.median) << "\n";
    }
    return 0;
}

}  // namespace

int run(std::vector<std::string> args) {
    CLI::App app{"networked-example weighting toolkit"};
    app.require_subcommand(1);

    GenConfig gen_cfg;
    auto* gen = app.add_subcommand("gen", "generate a hypergraph as JSON");
    gen->add_option("--kind", gen_cfg.kind, "star|disjoint|triangle|ba|er|ustat")->required();
    gen->add_option("--n", gen_cfg.n, "size for star/disjoint/ustat");
    gen->add_option("--r", gen_cfg.r, "tuple order for ustat");
    gen->add_option("--N", gen_cfg.big_n, "per-side vertex count for ba/er");
    gen->add_option("--m", gen_cfg.m, "attachment count for ba");
    gen->add_option("--p", gen_cfg.p, "edge probability for er");
    gen->add_option("--seed", gen_cfg.seed, "generator seed");
    gen->add_option("--out", gen_cfg.out, "output path (default stdout)");

    WeightConfig weight_cfg;
    auto* weight = app.add_subcommand("weight", "compute a weighting scheme");
    weight->add_option("--in", weight_cfg.in, "hypergraph JSON path")->required();
    weight->add_option("--scheme", weight_cfg.scheme, "eqw|ind|svalue|minimax");
    weight->add_option("--out", weight_cfg.out, "output path (default stdout)");

    ScalingConfig scaling_cfg;
    auto* scaling = app.add_subcommand("svalue-scaling", "mean s/N across sizes and seeds");
    scaling->add_option("--model", scaling_cfg.model, "ba|er")->required();
    scaling->add_option("--m", scaling_cfg.m, "attachment count (ba)");
    scaling->add_option("--pn", scaling_cfg.pn, "p*N (er)");
    scaling->add_option("--N", scaling_cfg.n_list, "comma-separated N values");
    scaling->add_option("--seeds", scaling_cfg.seeds, "seeds per N");
    scaling->add_option("--seed", scaling_cfg.seed, "master seed")->required();
    scaling->add_option("--out", scaling_cfg.out, "output path");
    scaling->add_option("--format", scaling_cfg.format, "csv|json");

    BoundsConfig bounds_cfg;
    auto* bounds = app.add_subcommand("bounds", "evaluate tail bounds");
    bounds->add_option("--epsilon", bounds_cfg.epsilons, "comma-separated deviations")->required();
    bounds->add_option("--M", bounds_cfg.M, "range bound");
    bounds->add_option("--sigma2", bounds_cfg.sigma2, "variance");
    bounds->add_option("--total-weight", bounds_cfg.total_weight, "|w| or s");
    bounds->add_option("--n", bounds_cfg.n, "sample size");
    bounds->add_option("--omega", bounds_cfg.omega, "max vertex degree");
    bounds->add_option("--chi-star", bounds_cfg.chi_star, "fractional chromatic number");
    bounds->add_option("--r", bounds_cfg.r, "U-statistic order");
    bounds->add_option("--range", bounds_cfg.range, "kernel range b-a");
    bounds->add_option("--covering", bounds_cfg.covering, "capacity prefactor");
    bounds->add_option("--markov-mean", bounds_cfg.markov_mean, "mean for the Markov bound");
    bounds->add_option("--out", bounds_cfg.out, "output path");
    bounds->add_option("--format", bounds_cfg.format, "csv|json");

    SimulateConfig sim_cfg;
    auto* sim = app.add_subcommand("simulate", "estimate tails against the bounds");
    sim->add_option("--fixture", sim_cfg.fixture, "star:N|disjoint:N|triangle|starheavy:A,B|ba:N,m[,seed]|er:N,p[,seed]|ustat:n,r|file:PATH")
        ->required();
    sim->add_option("--scheme", sim_cfg.scheme, "eqw|ind|svalue");
    sim->add_option("--response", sim_cfg.response, "product|first");
    sim->add_option("--noise", sim_cfg.noise, "label noise half-width");
    sim->add_option("--epsilon", sim_cfg.epsilons, "comma-separated deviations");
    sim->add_option("--trials", sim_cfg.trials, "Monte Carlo trials");
    sim->add_option("--seed", sim_cfg.seed, "master seed")->required();
    sim->add_option("--out", sim_cfg.out, "output path");
    sim->add_option("--format", sim_cfg.format, "csv|json");

    VarianceConfig var_cfg;
    auto* var = app.add_subcommand("variance", "variance components of a tabulated response");
    var->add_option("--spec", var_cfg.spec_path, "JSON with 'marginals' and nested 'table'")
        ->required();
    var->add_option("--out", var_cfg.out, "output path");
    var->add_option("--format", var_cfg.format, "csv|json");

    ErmConfig erm_cfg;
    auto* erm = app.add_subcommand("erm", "weighted risk-minimization experiment");
    erm->add_option("--star", erm_cfg.star, "hub edges in the fixture");
    erm->add_option("--disjoint", erm_cfg.disjoint, "independent edges in the fixture");
    erm->add_option("--noise", erm_cfg.noise, "label noise half-width");
    erm->add_option("--grid", erm_cfg.grid, "constant-predictor grid size");
    erm->add_option("--methods", erm_cfg.methods, "comma-separated: eqw,ind,svalue");
    erm->add_option("--reps", erm_cfg.reps, "repetitions");
    erm->add_option("--seed", erm_cfg.seed, "master seed")->required();
    erm->add_option("--out", erm_cfg.out, "output path");
    erm->add_option("--format", erm_cfg.format, "csv|json");

    std::vector<const char*> argv;
    argv.push_back("netex");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed() && (gen_cfg.kind == "ba" || gen_cfg.kind == "er") &&
            gen->count("--seed") == 0) {
            throw Error(errc::bad_params, "--seed is required for stochastic generators");
        }
        if (gen->parsed()) return cmd_gen(gen_cfg);
        if (weight->parsed()) return cmd_weight(weight_cfg);
        if (scaling->parsed()) return cmd_svalue_scaling(scaling_cfg);
        if (bounds->parsed()) return cmd_bounds(bounds_cfg);
        if (sim->parsed()) return cmd_simulate(sim_cfg);
        if (var->parsed()) return cmd_variance(var_cfg);
        if (erm->parsed()) return cmd_erm(erm_cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace netex::cli
