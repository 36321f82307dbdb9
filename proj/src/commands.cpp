#include "uecmc/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "uecmc/combinatorics.hpp"
#include "uecmc/dag_reduction.hpp"
#include "uecmc/synth.hpp"

namespace uecmc {

namespace fs = std::filesystem;

InitMode init_mode_from_string(const std::string& name) {
    if (name == "empty") return InitMode::empty;
    if (name == "it") return InitMode::it;
    if (name == "random") return InitMode::random;
    if (name == "file") return InitMode::file;
    throw std::invalid_argument("unknown init mode '" + name + "' (expected empty, it, random or file)");
}

std::string to_string(InitMode mode) {
    switch (mode) {
        case InitMode::empty: return "empty";
        case InitMode::it: return "it";
        case InitMode::random: return "random";
        case InitMode::file: return "file";
    }
    return "";
}

std::int64_t RunConfig::effective_burn_in() const {
    if (burn_in) return *burn_in;
    return init == InitMode::it ? 0 : length / 2;
}

Json RunConfig::to_json() const {
    Json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["length"] = length;
    j["prior"] = prior.str();
    j["score"] = uecmc::to_string(score);
    j["lambda"] = lambda ? Json(*lambda) : Json(nullptr);
    j["alpha"] = alpha;
    j["init"] = uecmc::to_string(init);
    if (init == InitMode::file) j["init_file"] = init_file;
    j["burn_in"] = effective_burn_in();
    j["transitions"] = transitions.str();
    j["inputs"] = inputs;
    j["output_dir"] = output_dir;
    j["prefix"] = prefix;
    return j;
}

GruesOptions RunConfig::grues_options() const {
    GruesOptions o;
    o.length = length;
    o.transitions = transitions;
    o.prior = prior;
    o.score = score;
    o.lambda = lambda;
    return o;
}

std::string header_text(const Json& config) { return std::string("uecmc ") + kVersion + " " + config.dump(); }

std::string header_line(const Json& config) { return comment_line(header_text(config)); }

std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t index) {
    if (index == 0) return base;
    // splitmix64 finalizer over a distinct counter per replicate
    std::uint64_t z = base + index * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    return is;
}

Json read_json_file(const std::string& path) {
    auto is = open_in(path);
    // '#' header lines are allowed before the document.
    std::string text, line;
    while (std::getline(is, line))
        if (line.empty() || line[0] != '#') text += line + "\n";
    return Json::parse(text);
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

/// Runs body(i) for i in [0, count) on up to jobs threads; rethrows the first failure.
template <class F>
void run_parallel(int count, int jobs, F body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Json graph_entry(const UndirectedGraph& g) {
    Json j = graph_to_json(g);
    j["uec_id"] = uec_id(g);
    return j;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

}  // namespace

UndirectedGraph read_graph_file(const std::string& path) { return undirected_from_json(read_json_file(path)); }

DataMatrix read_data_file(const std::string& path) {
    auto is = open_in(path);
    return read_data_csv(is);
}

UndirectedGraph read_truth_file(const std::string& path) {
    Json j = read_json_file(path);
    if (j.contains("directed") && !j.at("directed").empty()) return udg(dag_from_json(j));
    if (j.contains("directed") && !j.contains("undirected")) return udg(dag_from_json(j));
    return undirected_from_json(j);
}

FitSummary fit_dataset(const DataMatrix& x, const RunConfig& cfg) {
    x.require_regression_size();
    if (cfg.length < 1) throw std::invalid_argument("chain length must be at least 1");
    if (cfg.burn_in && (*cfg.burn_in < 0 || *cfg.burn_in >= cfg.length))
        throw std::invalid_argument("burn-in must lie in [0, length)");
    const int n = x.n();
    std::mt19937_64 rng(cfg.seed);

    FitSummary out;
    out.independence_tests = marginal_independence_graph(x, TestConfig{cfg.alpha}, &out.warnings);
    switch (cfg.init) {
        case InitMode::empty: out.init = UndirectedGraph(n); break;
        case InitMode::it: out.init = largest_uec_subgraph(out.independence_tests); break;
        case InitMode::random: out.init = udg(random_dag(n, 0.5, rng)); break;
        case InitMode::file:
            out.init = read_graph_file(cfg.init_file);
            if (out.init.n() != n) throw std::invalid_argument("init graph size does not match the data");
            break;
    }
    if (!is_uec_representative(out.init)) throw NotUecRepresentative(independence_number(out.init),
                                                                     intersection_number(out.init));

    GaussianScorer scorer(x);
    auto result = grues(&scorer, out.init, cfg.grues_options(), rng);
    out.burn_in = cfg.effective_burn_in();
    if (out.burn_in >= cfg.length) out.burn_in = 0;
    out.posterior = Posterior::from_chain(result.chain, out.burn_in);
    out.map_id = map_estimate(out.posterior);
    out.map = graph_from_uec_id(n, out.map_id);
    out.map_probability = out.posterior.probability(out.map_id);
    out.hpd10 = hpd_set(out.posterior, 0.1);
    out.hpd20 = hpd_set(out.posterior, 0.2);
    out.l0 = result.optimal_l0;
    out.nuclear = result.optimal_nuclear;
    out.accepted = result.accepted;
    out.reverse_violations = result.reverse_violations;
    out.chain = std::move(result.chain);
    return out;
}

Json compare_with_truth(const FitSummary& fit, const UndirectedGraph& truth) {
    const std::string id = uec_id(truth);
    auto contains = [&](const std::vector<std::string>& set) {
        return std::find(set.begin(), set.end(), id) != set.end();
    };
    Json j;
    j["truth"] = graph_entry(truth);
    j["shs"] = {{"MAP", shs(fit.map, truth)},
                {"IT", shs(fit.independence_tests, truth)},
                {"l0", shs(fit.l0, truth)},
                {"nuclear", shs(fit.nuclear, truth)}};
    j["correct"] = {{"MAP", fit.map == truth},
                    {"HPD_0.1", contains(fit.hpd10)},
                    {"HPD_0.2", contains(fit.hpd20)},
                    {"IT", fit.independence_tests == truth},
                    {"l0", fit.l0 == truth},
                    {"nuclear", fit.nuclear == truth}};
    return j;
}

Json summary_to_json(const FitSummary& fit, const RunConfig& cfg, const UndirectedGraph* truth) {
    Json j;
    j["header"] = header_text(cfg.to_json());
    j["n"] = fit.init.n();
    j["burn_in"] = fit.burn_in;
    j["chain_length"] = fit.chain.size();
    j["acceptance_rate"] =
        fit.chain.size() > 1 ? static_cast<double>(fit.accepted) / static_cast<double>(fit.chain.size() - 1) : 0.0;
    j["reverse_violations"] = fit.reverse_violations;
    j["warnings"] = fit.warnings;
    j["init"] = graph_entry(fit.init);
    Json est;
    est["MAP"] = graph_entry(fit.map);
    est["MAP"]["probability"] = fit.map_probability;
    est["HPD_0.1"] = fit.hpd10;
    est["HPD_0.2"] = fit.hpd20;
    est["IT"] = graph_entry(fit.independence_tests);
    est["l0"] = graph_entry(fit.l0);
    est["nuclear"] = graph_entry(fit.nuclear);
    j["estimates"] = est;
    if (truth) j["comparison"] = compare_with_truth(fit, *truth);
    return j;
}

void cmd_enumerate(int n, std::ostream& os) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > kDefaultEnumerationLimit)
        throw std::invalid_argument("enumeration supports n <= " + std::to_string(kDefaultEnumerationLimit));
    os << header_line(Json{{"version", kVersion}, {"command", "enumerate"}, {"n", n}});
    auto reps = enumerate_uec_representatives(n);
    for (const auto& g : reps) {
        Json j = graph_entry(g);
        j["sources"] = source_count(g);
        os << j.dump() << '\n';
    }
    os << Json{{"count", reps.size()}}.dump() << '\n';
}

Json cmd_check(const UndirectedGraph& g) {
    Json j;
    j["n"] = g.n();
    j["uec_id"] = uec_id(g);
    const Mask mis = maximum_independent_set(g);
    const auto min_cover = minimum_clique_cover(g);
    const int alpha = popcount(mis);
    const int delta = static_cast<int>(min_cover.size());
    const bool rep = is_uec_representative(g);
    j["is_uec_representative"] = rep;
    j["alpha"] = alpha;
    j["delta"] = delta;
    j["independent_set"] = members(mis);
    Json cover = Json::array();
    if (!rep) {
        for (Mask c : min_cover) cover.push_back(members(c));
        j["clique_cover"] = cover;
        j["witness"] = "alpha = " + std::to_string(alpha) + " < delta = " + std::to_string(delta);
        return j;
    }
    auto cc = min_edge_clique_cover(g);
    for (Mask c : cc.cliques) cover.push_back(members(c));
    j["clique_cover"] = cover;
    j["centers"] = cc.centers;
    j["monomial"] = to_string(monomial_rep(g));
    j["cpdag"] = graph_to_json(init_cpdag(g));
    j["reduction"] = reduction_to_json(to_dag_reduction(g));
    return j;
}

Json SimulateParams::to_json() const {
    Json j;
    j["version"] = kVersion;
    j["command"] = "simulate";
    j["n"] = model ? model->dag.n() : n;
    j["p"] = p;
    j["N"] = N;
    j["seed"] = seed;
    j["replicates"] = replicates;
    j["min_abs_weight"] = min_abs_weight;
    j["fixed_model"] = model.has_value();
    j["output_dir"] = output_dir;
    j["prefix"] = prefix;
    return j;
}

std::vector<std::string> cmd_simulate(const SimulateParams& params) {
    if (params.N < 1) throw std::invalid_argument("N must be positive");
    if (params.replicates < 1) throw std::invalid_argument("replicates must be positive");
    if (!params.model && (params.n < 1 || params.n > 64)) throw std::invalid_argument("n must lie in [1, 64]");
    ensure_dir(params.output_dir);
    const std::string header = header_line(params.to_json());
    std::vector<std::string> paths(2 * static_cast<std::size_t>(params.replicates));
    run_parallel(params.replicates, params.jobs, [&](int r) {
        const std::uint64_t seed = replicate_seed(params.seed, static_cast<std::uint64_t>(r));
        std::mt19937_64 rng(seed);
        LinearGaussianModel model =
            params.model ? *params.model : random_weights(random_dag(params.n, params.p, rng), rng, params.min_abs_weight);
        DataMatrix x = sample(model, params.N, rng);
        const std::string base =
            params.replicates == 1 ? params.prefix : params.prefix + "_" + std::to_string(r);
        const std::string data_path = join(params.output_dir, base + ".csv");
        const std::string model_path = join(params.output_dir, base + "_model.json");
        {
            auto os = open_out(data_path);
            os << header;
            write_data_csv(os, x);
        }
        {
            Json j;
            j["header"] = header_text(params.to_json());
            j["seed"] = seed;
            const Json body = model_to_json(model);
            for (auto& [k, v] : body.items()) j[k] = v;
            j["udg"] = graph_to_json(udg(model.dag));
            auto os = open_out(model_path);
            os << j.dump(2) << '\n';
        }
        paths[2 * r] = data_path;
        paths[2 * r + 1] = model_path;
    });
    return paths;
}

std::vector<Json> cmd_fit(const RunConfig& cfg, const std::optional<UndirectedGraph>& truth) {
    if (cfg.inputs.empty()) throw std::invalid_argument("no data files given");
    ensure_dir(cfg.output_dir);
    std::vector<Json> summaries(cfg.inputs.size());
    run_parallel(static_cast<int>(cfg.inputs.size()), cfg.jobs, [&](int i) {
        RunConfig local = cfg;
        local.seed = replicate_seed(cfg.seed, static_cast<std::uint64_t>(i));
        local.inputs = {cfg.inputs[i]};
        DataMatrix x = read_data_file(cfg.inputs[i]);
        if (truth && truth->n() != x.n()) throw std::invalid_argument("truth graph size does not match the data");
        FitSummary fit = fit_dataset(x, local);
        const std::string base = (cfg.prefix.empty() ? stem_of(cfg.inputs[i]) : cfg.prefix +
                                  (cfg.inputs.size() > 1 ? "_" + std::to_string(i) : std::string()));
        const std::string header = header_line(local.to_json());
        {
            auto os = open_out(join(cfg.output_dir, base + "_chain.csv"));
            os << header;
            write_chain_csv(os, fit.chain);
        }
        {
            Json post = posterior_to_json(fit.posterior);
            Json j;
            j["header"] = header_text(local.to_json());
            for (auto& [k, v] : post.items()) j[k] = v;
            auto os = open_out(join(cfg.output_dir, base + "_posterior.json"));
            os << j.dump(2) << '\n';
        }
        Json summary = summary_to_json(fit, local, truth ? &*truth : nullptr);
        {
            auto os = open_out(join(cfg.output_dir, base + "_summary.json"));
            os << summary.dump(2) << '\n';
        }
        summaries[i] = std::move(summary);
    });
    return summaries;
}

void cmd_report(std::istream& chain_csv, std::int64_t burn_in, std::ostream& os, const Json& config) {
    auto chain = read_chain_csv(chain_csv);
    if (chain.empty()) throw std::invalid_argument("chain is empty");
    if (burn_in < 0 || burn_in >= static_cast<std::int64_t>(chain.size()))
        throw std::invalid_argument("burn-in must lie in [0, chain length)");
    Posterior post = Posterior::from_chain(chain, burn_in);
    std::vector<std::pair<std::string, std::int64_t>> rows(post.counts.begin(), post.counts.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    os << header_line(config);
    os << "uec_id,probability\n";
    for (const auto& [id, c] : rows)
        os << id << ',' << format_double(static_cast<double>(c) / static_cast<double>(post.total)) << '\n';
}

}  // namespace uecmc
