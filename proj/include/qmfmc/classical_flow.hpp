#ifndef QMFMC_CLASSICAL_FLOW_HPP
#define QMFMC_CLASSICAL_FLOW_HPP

#include <compare>
#include <vector>

#include "qmfmc/network.hpp"
#include "qmfmc/numeric.hpp"

namespace qmfmc {

// Element of the ordered abelian group used for arc capacities. A value
// (count, logweight) stands for count units of an infinitely heavy unit
// capacity plus the logarithm of `logweight`; the log is never evaluated —
// log-domain addition is exact rational multiplication. Ordering is
// lexicographic, so a single unit dominates any finite logweight.
struct GroupValue {
    long long count = 0;
    Rat logweight = Rat(1);

    static GroupValue zero() { return {}; }
    static GroupValue units(long long c) { return {c, Rat(1)}; }
    static GroupValue log_of(const Int& w) { return {0, Rat(w)}; }

    bool is_zero() const { return count == 0 && logweight == 1; }

    GroupValue operator+(const GroupValue& o) const { return {count + o.count, logweight * o.logweight}; }
    GroupValue operator-(const GroupValue& o) const { return {count - o.count, logweight / o.logweight}; }
    GroupValue& operator+=(const GroupValue& o) {
        count += o.count;
        logweight *= o.logweight;
        return *this;
    }
    GroupValue& operator-=(const GroupValue& o) {
        count -= o.count;
        logweight /= o.logweight;
        return *this;
    }

    bool operator==(const GroupValue& o) const { return count == o.count && logweight == o.logweight; }
    bool operator<(const GroupValue& o) const {
        if (count != o.count) return count < o.count;
        return logweight < o.logweight;
    }
    bool operator>(const GroupValue& o) const { return o < *this; }
    bool operator<=(const GroupValue& o) const { return !(o < *this); }
    bool operator>=(const GroupValue& o) const { return !(*this < o); }
};

inline const GroupValue& min(const GroupValue& a, const GroupValue& b) { return b < a ? b : a; }

struct Arc {
    int tail = 0;
    int head = 0;
    GroupValue capacity;
    int edge_id = -1;     // provenance: originating EdgeInstance, if any
    bool forward = true;  // true when (tail,head) == (u,v) of that edge
};

struct DirectedCapacityGraph {
    int vertex_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;
};

struct ClassicalFlow {
    std::vector<GroupValue> arc_flow;  // indexed like DirectedCapacityGraph::arcs
    GroupValue value;
};

// Residual-reachability cut of a maximum flow on a digraph.
struct DigraphCut {
    std::vector<char> source_side;  // per vertex
    std::vector<int> cut_arcs;      // arcs from source side to sink side
    GroupValue capacity;
};

// Shortest-augmenting-path maximum flow over the ordered group. BFS scans
// arcs in index order, which makes every result deterministic.
ClassicalFlow max_flow(const DirectedCapacityGraph& g);
DigraphCut min_cut(const DirectedCapacityGraph& g);

// Requires every capacity to have logweight 1; all returned per-arc flows
// and the value are then pure counts.
ClassicalFlow integral_max_flow(const DirectedCapacityGraph& g);

// Vertex bipartition of a Network together with the crossing edges.
struct Cut {
    std::vector<char> source_side;  // per vertex, true on the source side
    std::vector<int> cut_edges;     // ascending edge ids
    Int capacity_product = 1;
    int cardinality = 0;
};

// Builds the Cut induced by a bipartition; validates side membership.
Cut make_cut(const Network& net, const std::vector<char>& source_side);

// How the reduction digraph weighs each arc of an undirected edge.
enum class ArcWeight {
    Log,             // (0, d_e): quantum min-cut / rational max-flow reduction
    LexCardinality,  // (1, d_e): minimize (cardinality, capacity product)
    Unit,            // (1, 1):   edge-disjoint path computation
};

// The directed graph with the source having only outgoing arcs, the sink
// only incoming arcs, and every other edge duplicated in both directions.
DirectedCapacityGraph reduction_digraph(const Network& net, ArcWeight weight);

// Cut minimizing (cardinality, capacity product) lexicographically; the
// residual-reachability witness is the canonical choice among ties.
Cut lex_min_cut(const Network& net);

struct Traversal {
    int edge_id = 0;
    bool forward = true;
    int from = 0;
    int to = 0;
};
using Path = std::vector<Traversal>;

// Exactly lex_min_cut(net).cardinality edge-disjoint source-to-sink paths,
// from an integral unit-capacity max flow with anti-parallel and cyclic
// flow removed. Empty when source and sink are disconnected.
std::vector<Path> edge_disjoint_paths(const Network& net);

}  // namespace qmfmc

#endif
