#ifndef UECMC_IO_HPP
#define UECMC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "uecmc/dag_reduction.hpp"
#include "uecmc/graph.hpp"
#include "uecmc/inference.hpp"
#include "uecmc/synth.hpp"

namespace uecmc {

using Json = nlohmann::ordered_json;

Json graph_to_json(const UndirectedGraph& g);
Json graph_to_json(const Dag& d);
Json graph_to_json(const Cpdag& c);
/// Accepts {"n", "undirected"}; a "directed" list is rejected.
UndirectedGraph undirected_from_json(const Json& j);
Dag dag_from_json(const Json& j);

Json reduction_to_json(const DagReduction& d);
DagReduction reduction_from_json(const Json& j);

Json model_to_json(const LinearGaussianModel& m);
LinearGaussianModel model_from_json(const Json& j);

Json posterior_to_json(const Posterior& p);

/// Lines starting with '#' are comments in every text format.
std::string comment_line(const std::string& text);

void write_data_csv(std::ostream& os, const DataMatrix& x);
DataMatrix read_data_csv(std::istream& is);

void write_chain_csv(std::ostream& os, const std::vector<ChainRecord>& chain);
std::vector<ChainRecord> read_chain_csv(std::istream& is);

/// Round-trippable text form of a double.
std::string format_double(double x);

}  // namespace uecmc

#endif  // UECMC_IO_HPP
