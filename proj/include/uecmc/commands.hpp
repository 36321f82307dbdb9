#ifndef UECMC_COMMANDS_HPP
#define UECMC_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uecmc/baseline.hpp"
#include "uecmc/io.hpp"

namespace uecmc {

inline constexpr const char* kVersion = "0.1.0";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InitMode { empty, it, random, file };

InitMode init_mode_from_string(const std::string& name);
std::string to_string(InitMode mode);

struct RunConfig {
    std::uint64_t seed = 0;
    std::int64_t length = 10000;
    Prior prior;
    ScoreKind score = ScoreKind::l0;
    /// Unset: default_nuclear_lambda(N).
    std::optional<double> lambda;
    double alpha = 0.05;
    InitMode init = InitMode::it;
    std::string init_file;
    /// Unset: zero for independence-test init, half the chain otherwise.
    std::optional<std::int64_t> burn_in;
    TransitionWeights transitions;
    int jobs = 1;
    std::vector<std::string> inputs;
    std::string output_dir = ".";
    std::string prefix;

    std::int64_t effective_burn_in() const;
    Json to_json() const;
    GruesOptions grues_options() const;
};

/// "uecmc <version> <config>"; JSON outputs store it under "header".
std::string header_text(const Json& config);
/// header_text as a '#' comment line.
std::string header_line(const Json& config);

/// Seed for replicate i; replicate 0 keeps the base seed.
std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t index);

struct FitSummary {
    UndirectedGraph independence_tests;
    UndirectedGraph init;
    UndirectedGraph map;
    std::string map_id;
    double map_probability = 0.0;
    std::vector<std::string> hpd10;
    std::vector<std::string> hpd20;
    UndirectedGraph l0;
    UndirectedGraph nuclear;
    std::int64_t burn_in = 0;
    std::int64_t accepted = 0;
    std::uint64_t reverse_violations = 0;
    std::vector<std::string> warnings;
    Posterior posterior;
    std::vector<ChainRecord> chain;
};

/// Runs the full estimation pipeline on one dataset with cfg.seed.
FitSummary fit_dataset(const DataMatrix& x, const RunConfig& cfg);

/// SHS of each point estimate against truth and HPD membership.
Json compare_with_truth(const FitSummary& fit, const UndirectedGraph& truth);
Json summary_to_json(const FitSummary& fit, const RunConfig& cfg, const UndirectedGraph* truth);

/// Writes one JSON line per representative, then a count line.
void cmd_enumerate(int n, std::ostream& os);
Json cmd_check(const UndirectedGraph& g);

struct SimulateParams {
    int n = 5;
    double p = 0.5;
    int N = 1000;
    std::uint64_t seed = 0;
    int replicates = 1;
    int jobs = 1;
    double min_abs_weight = kMinAbsWeight;
    /// Fixed model instead of a random DAG.
    std::optional<LinearGaussianModel> model;
    std::string output_dir = ".";
    std::string prefix = "sim";

    Json to_json() const;
};

/// Returns the written paths.
std::vector<std::string> cmd_simulate(const SimulateParams& params);
/// Returns the summary of each input in order.
std::vector<Json> cmd_fit(const RunConfig& cfg, const std::optional<UndirectedGraph>& truth);
/// Histogram rows sorted by probability, ties by id.
void cmd_report(std::istream& chain_csv, std::int64_t burn_in, std::ostream& os, const Json& config);

UndirectedGraph read_graph_file(const std::string& path);
DataMatrix read_data_file(const std::string& path);
/// Undirected JSON, DAG JSON (mapped through udg) or model JSON.
UndirectedGraph read_truth_file(const std::string& path);

}  // namespace uecmc

#endif  // UECMC_COMMANDS_HPP
