#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "uecmc/combinatorics.hpp"
#include "uecmc/commands.hpp"
#include "uecmc/dag_reduction.hpp"

using namespace uecmc;

namespace {

int fail(const std::string& kind, const std::string& message) {
    std::cerr << "error: " << kind << ": " << message << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MCMC search over unconditional equivalence classes of Gaussian DAG models"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int enum_n = 4;
    std::string enum_out;
    auto* enumerate = app.add_subcommand("enumerate", "List all UEC-representatives on n vertices");
    enumerate->add_option("n", enum_n, "Number of vertices (at most 6)")->required();
    enumerate->add_option("-o,--out", enum_out, "Output file (default stdout)");

    std::string check_file;
    auto* check = app.add_subcommand("check", "Analyze an undirected graph given as JSON");
    check->add_option("graph", check_file, "Graph JSON file")->required();

    SimulateParams sim;
    std::string sim_model;
    auto* simulate = app.add_subcommand("simulate", "Sample data from a random linear Gaussian DAG model");
    simulate->add_option("--n", sim.n, "Number of variables");
    simulate->add_option("--p", sim.p, "Edge probability");
    simulate->add_option("-N,--samples", sim.N, "Number of samples");
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--replicates", sim.replicates, "Number of independent datasets");
    simulate->add_option("--jobs", sim.jobs, "Worker threads");
    simulate->add_option("--min-weight", sim.min_abs_weight, "Redraw weights with smaller magnitude");
    simulate->add_option("--model", sim_model, "Model JSON to sample from instead of a random DAG");
    simulate->add_option("--out-dir", sim.output_dir, "Output directory");
    simulate->add_option("--prefix", sim.prefix, "Output file prefix");

    RunConfig cfg;
    std::string prior = "uniform", score = "bic", init = "it", transitions = "1:1:1:1:2", truth_file;
    std::int64_t burn_in = -1;
    auto* fit = app.add_subcommand("fit", "Run the sampler on data CSV files");
    fit->add_option("data", cfg.inputs, "Data CSV files")->required();
    fit->add_option("--seed", cfg.seed, "Random seed");
    fit->add_option("--length", cfg.length, "Chain length");
    fit->add_option("--prior", prior, "uniform or delta:S:P");
    fit->add_option("--score", score, "bic or nuclear");
    fit->add_option("--lambda", cfg.lambda, "Nuclear penalty weight (default log(N)/2)");
    fit->add_option("--alpha", cfg.alpha, "Independence test level");
    fit->add_option("--init", init, "empty, it, random or file");
    fit->add_option("--init-file", cfg.init_file, "Initial graph JSON for --init file");
    fit->add_option("--burn-in", burn_in, "Discarded prefix (default depends on --init)");
    fit->add_option("--transitions", transitions, "Move kind weights m:s:a:d:w");
    fit->add_option("--jobs", cfg.jobs, "Worker threads");
    fit->add_option("--truth", truth_file, "True graph or model JSON for comparison");
    fit->add_option("--out-dir", cfg.output_dir, "Output directory");
    fit->add_option("--prefix", cfg.prefix, "Output file prefix");

    std::string chain_file, report_out;
    std::int64_t report_burn = 0;
    auto* report = app.add_subcommand("report", "Histogram of a chain CSV");
    report->add_option("chain", chain_file, "Chain CSV file")->required();
    report->add_option("--burn-in", report_burn, "Discarded prefix");
    report->add_option("-o,--out", report_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        if (*enumerate) {
            if (enum_out.empty()) {
                cmd_enumerate(enum_n, std::cout);
            } else {
                std::ofstream os(enum_out, std::ios::binary);
                if (!os) throw IoError("cannot open '" + enum_out + "' for writing");
                cmd_enumerate(enum_n, os);
            }
        } else if (*check) {
            std::cout << cmd_check(read_graph_file(check_file)).dump(2) << '\n';
        } else if (*simulate) {
            if (!sim_model.empty()) {
                std::ifstream is(sim_model);
                if (!is) throw IoError("cannot open '" + sim_model + "' for reading");
                sim.model = model_from_json(Json::parse(is));
            }
            for (const auto& path : cmd_simulate(sim)) std::cout << path << '\n';
        } else if (*fit) {
            cfg.prior = Prior::parse(prior);
            cfg.score = score_kind_from_string(score);
            cfg.init = init_mode_from_string(init);
            if (cfg.init == InitMode::file && cfg.init_file.empty())
                throw std::invalid_argument("--init file needs --init-file");
            if (burn_in >= 0) cfg.burn_in = burn_in;
            cfg.transitions = TransitionWeights::parse(transitions);
            std::optional<UndirectedGraph> truth;
            if (!truth_file.empty()) truth = read_truth_file(truth_file);
            for (const auto& s : cmd_fit(cfg, truth)) std::cout << s.dump() << '\n';
        } else if (*report) {
            std::ifstream is(chain_file, std::ios::binary);
            if (!is) throw IoError("cannot open '" + chain_file + "' for reading");
            Json config{{"version", kVersion}, {"command", "report"}, {"chain", chain_file}, {"burn_in", report_burn}};
            if (report_out.empty()) {
                cmd_report(is, report_burn, std::cout, config);
            } else {
                std::ofstream os(report_out, std::ios::binary);
                if (!os) throw IoError("cannot open '" + report_out + "' for writing");
                cmd_report(is, report_burn, os, config);
            }
        }
    } catch (const NotUecRepresentative& e) {
        return fail("not_uec_representative", e.what());
    } catch (const MoveUnavailable& e) {
        return fail("move_unavailable", e.what());
    } catch (const IoError& e) {
        return fail("io", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail("parse", e.what());
    } catch (const std::out_of_range& e) {
        return fail("invalid_input", e.what());
    } catch (const std::invalid_argument& e) {
        return fail("invalid_input", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
