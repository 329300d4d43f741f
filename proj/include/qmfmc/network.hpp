#ifndef QMFMC_NETWORK_HPP
#define QMFMC_NETWORK_HPP

#include <map>
#include <string>
#include <vector>

#include "qmfmc/errors.hpp"
#include "qmfmc/numeric.hpp"

namespace qmfmc {

// One instance of an undirected edge. Parallel edges are distinct instances
// with distinct ids; `u` and `v` keep the orientation written in the input
// file, which fixes the meaning of "forward" everywhere downstream.
struct EdgeInstance {
    int id = 0;
    int u = 0;
    int v = 0;
    Int capacity = 1;

    int other(int vertex) const { return vertex == u ? v : u; }
    bool touches(int vertex) const { return vertex == u || vertex == v; }
};

// Undirected capacity-weighted multigraph with a single source and sink.
// Vertex ids are opaque strings in files and dense ints internally; all
// values are immutable after construction.
struct Network {
    std::vector<std::string> vertex_ids;
    int source = 0;
    int sink = 0;
    std::vector<EdgeInstance> edges;

    int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    const std::string& name_of(int vertex) const { return vertex_ids.at(vertex); }

    std::vector<std::vector<int>> incidence() const;  // vertex -> incident edge ids
    bool operator==(const Network&) const = default;
};

struct PrimeFactorization {
    std::map<Int, unsigned long> factors;  // prime -> exponent; empty map is 1

    Int product() const;
    bool operator==(const PrimeFactorization&) const = default;
};

// Builds a validated Network from in-memory parts (labels resolved, edge
// ids assigned in order). Throws ParseError on any invariant violation.
Network make_network(const std::vector<std::string>& vertices,
                     const std::string& source, const std::string& sink,
                     const std::vector<std::tuple<std::string, std::string, Int>>& edges);

Network parse_network(const std::string& text);
std::string serialize_network(const Network& net);
std::string network_dot(const Network& net);

Network scale_network(const Network& net, const Int& n);

PrimeFactorization factorize(const Int& m);

bool is_prime(const Int& p);

// True when some path joins source and sink.
bool source_sink_connected(const Network& net);

}  // namespace qmfmc

#endif
