#include "uecmc/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace uecmc {

namespace {

Json edge_list(const std::vector<Edge>& edges) {
    Json out = Json::array();
    for (auto [a, b] : edges) out.push_back({a, b});
    return out;
}

std::vector<Edge> read_edges(const Json& j, const char* key) {
    std::vector<Edge> out;
    if (!j.contains(key)) return out;
    for (const auto& e : j.at(key)) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument(std::string("bad edge in '") + key + "'");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

int read_n(const Json& j) {
    if (!j.is_object() || !j.contains("n")) throw std::invalid_argument("graph JSON needs an 'n' field");
    return j.at("n").get<int>();
}

}  // namespace

Json graph_to_json(const UndirectedGraph& g) { return {{"n", g.n()}, {"undirected", edge_list(g.edges())}}; }

Json graph_to_json(const Dag& d) { return {{"n", d.n()}, {"directed", edge_list(d.edges())}}; }

Json graph_to_json(const Cpdag& c) {
    return {{"n", c.n()}, {"directed", edge_list(c.directed_edges())}, {"undirected", edge_list(c.undirected_edges())}};
}

UndirectedGraph undirected_from_json(const Json& j) {
    const int n = read_n(j);
    if (j.contains("directed") && !j.at("directed").empty())
        throw std::invalid_argument("expected an undirected graph but found directed edges");
    return UndirectedGraph(n, read_edges(j, "undirected"));
}

Dag dag_from_json(const Json& j) {
    const int n = read_n(j);
    if (j.contains("undirected") && !j.at("undirected").empty())
        throw std::invalid_argument("expected a DAG but found undirected edges");
    Dag d(n, read_edges(j, "directed"));
    d.topological_order();
    return d;
}

Json reduction_to_json(const DagReduction& d) {
    Json nodes = Json::array();
    for (const auto& node : d.nodes) nodes.push_back(node);
    return {{"nodes", nodes}, {"edges", edge_list(d.edges)}};
}

DagReduction reduction_from_json(const Json& j) {
    DagReduction d;
    for (const auto& node : j.at("nodes")) d.nodes.push_back(node.get<std::vector<int>>());
    d.edges = read_edges(j, "edges");
    validate(d);
    return d;
}

Json model_to_json(const LinearGaussianModel& m) {
    Json weights = Json::array();
    for (const auto& [e, w] : m.weights) weights.push_back({e.first, e.second, w});
    Json out = graph_to_json(m.dag);
    out["weights"] = weights;
    return out;
}

LinearGaussianModel model_from_json(const Json& j) {
    LinearGaussianModel m{dag_from_json(j), {}};
    if (j.contains("weights"))
        for (const auto& w : j.at("weights")) {
            if (!w.is_array() || w.size() != 3) throw std::invalid_argument("weights entries are [parent, child, w]");
            Edge e{w[0].get<int>(), w[1].get<int>()};
            if (!m.dag.has_edge(e.first, e.second)) throw std::invalid_argument("weight on a missing edge");
            m.weights[e] = w[2].get<double>();
        }
    for (const auto& e : m.dag.edges())
        if (!m.weights.count(e)) throw std::invalid_argument("model JSON lacks a weight for some edge");
    return m;
}

Json posterior_to_json(const Posterior& p) {
    Json counts = Json::object();
    for (const auto& [id, c] : p.counts) counts[id] = c;
    return {{"total", p.total}, {"counts", counts}};
}

std::string comment_line(const std::string& text) { return "# " + text + "\n"; }

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool next_data_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        return true;
    }
    return false;
}

double parse_double(const std::string& s, int row) {
    double value = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + s + "' on data row " + std::to_string(row));
    return value;
}

}  // namespace

void write_data_csv(std::ostream& os, const DataMatrix& x) {
    for (int j = 0; j < x.n(); ++j) os << (j ? "," : "") << 'x' << j;
    os << '\n';
    for (int r = 0; r < x.N(); ++r) {
        for (int j = 0; j < x.n(); ++j) os << (j ? "," : "") << format_double(x.values(r, j));
        os << '\n';
    }
}

DataMatrix read_data_csv(std::istream& is) {
    std::string line;
    if (!next_data_line(is, line)) throw std::invalid_argument("data CSV is empty");
    const auto header = split_csv(line);
    const int n = static_cast<int>(header.size());
    std::vector<std::vector<double>> rows;
    int row = 0;
    while (next_data_line(is, line)) {
        ++row;
        auto cells = split_csv(line);
        if (static_cast<int>(cells.size()) != n)
            throw std::invalid_argument("data row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                        " columns, header has " + std::to_string(n));
        std::vector<double> values;
        for (const auto& c : cells) values.push_back(parse_double(c, row));
        rows.push_back(std::move(values));
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j < n; ++j) m(static_cast<Eigen::Index>(r), j) = rows[r][j];
    return DataMatrix(std::move(m));
}

void write_chain_csv(std::ostream& os, const std::vector<ChainRecord>& chain) {
    os << "step,uec_id,log_likelihood,log_prior,score,accepted\n";
    for (const auto& r : chain)
        os << r.step << ',' << r.uec_id << ',' << format_double(r.log_likelihood) << ',' << format_double(r.log_prior)
           << ',' << format_double(r.score) << ',' << (r.accepted ? 1 : 0) << '\n';
}

std::vector<ChainRecord> read_chain_csv(std::istream& is) {
    std::string line;
    if (!next_data_line(is, line)) throw std::invalid_argument("chain CSV is empty");
    if (split_csv(line) != std::vector<std::string>{"step", "uec_id", "log_likelihood", "log_prior", "score", "accepted"})
        throw std::invalid_argument("chain CSV header mismatch");
    std::vector<ChainRecord> out;
    int row = 0;
    while (next_data_line(is, line)) {
        ++row;
        auto c = split_csv(line);
        if (c.size() != 6) throw std::invalid_argument("chain row " + std::to_string(row) + " needs 6 columns");
        ChainRecord r;
        r.step = static_cast<std::int64_t>(parse_double(c[0], row));
        r.uec_id = c[1];
        r.log_likelihood = parse_double(c[2], row);
        r.log_prior = parse_double(c[3], row);
        r.score = parse_double(c[4], row);
        r.accepted = c[5] == "1";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace uecmc
