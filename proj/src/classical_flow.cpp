#include "qmfmc/classical_flow.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qmfmc {

namespace {

struct ResidualRef {
    int arc = -1;
    bool reverse = false;
};

struct Solver {
    const DirectedCapacityGraph& g;
    std::vector<GroupValue> flow;
    std::vector<std::vector<ResidualRef>> adj;  // per vertex, in arc-index order

    explicit Solver(const DirectedCapacityGraph& graph)
        : g(graph), flow(graph.arcs.size()), adj(graph.vertex_count) {
        for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) {
            adj[g.arcs[i].tail].push_back({i, false});
            adj[g.arcs[i].head].push_back({i, true});
        }
    }

    GroupValue residual(const ResidualRef& r) const {
        return r.reverse ? flow[r.arc] : g.arcs[r.arc].capacity - flow[r.arc];
    }

    // BFS over positive-residual arcs; fills parent refs. Scanning adjacency
    // in arc-index order fixes the augmenting path among shortest ones.
    bool find_path(std::vector<ResidualRef>& parent) {
        std::vector<char> seen(g.vertex_count, 0);
        parent.assign(g.vertex_count, {});
        std::deque<int> queue{g.source};
        seen[g.source] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const ResidualRef& r : adj[v]) {
                int to = r.reverse ? g.arcs[r.arc].tail : g.arcs[r.arc].head;
                if (seen[to] || !(GroupValue::zero() < residual(r))) continue;
                seen[to] = 1;
                parent[to] = r;
                if (to == g.sink) return true;
                queue.push_back(to);
            }
        }
        return false;
    }

    ClassicalFlow run() {
        if (g.source == g.sink) throw PreconditionError("flow graph needs distinct source and sink");
        std::vector<ResidualRef> parent;
        while (find_path(parent)) {
            // bottleneck along the path
            GroupValue bottleneck;
            bool first = true;
            for (int v = g.sink; v != g.source;) {
                const ResidualRef& r = parent[v];
                GroupValue res = residual(r);
                if (first || res < bottleneck) bottleneck = res;
                first = false;
                v = r.reverse ? g.arcs[r.arc].head : g.arcs[r.arc].tail;
            }
            for (int v = g.sink; v != g.source;) {
                const ResidualRef& r = parent[v];
                if (r.reverse)
                    flow[r.arc] -= bottleneck;
                else
                    flow[r.arc] += bottleneck;
                v = r.reverse ? g.arcs[r.arc].head : g.arcs[r.arc].tail;
            }
        }
        ClassicalFlow out;
        out.arc_flow = flow;
        out.value = GroupValue::zero();
        for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) {
            if (g.arcs[i].tail == g.source) out.value += flow[i];
            if (g.arcs[i].head == g.source) out.value -= flow[i];
        }
        return out;
    }
};

}  // namespace

ClassicalFlow max_flow(const DirectedCapacityGraph& g) { return Solver(g).run(); }

DigraphCut min_cut(const DirectedCapacityGraph& g) {
    Solver solver(g);
    ClassicalFlow f = solver.run();
    solver.flow = f.arc_flow;

    DigraphCut cut;
    cut.source_side.assign(g.vertex_count, 0);
    std::vector<int> stack{g.source};
    cut.source_side[g.source] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const ResidualRef& r : solver.adj[v]) {
            int to = r.reverse ? g.arcs[r.arc].tail : g.arcs[r.arc].head;
            if (cut.source_side[to] || !(GroupValue::zero() < solver.residual(r))) continue;
            cut.source_side[to] = 1;
            stack.push_back(to);
        }
    }
    cut.capacity = GroupValue::zero();
    for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) {
        if (cut.source_side[g.arcs[i].tail] && !cut.source_side[g.arcs[i].head]) {
            cut.cut_arcs.push_back(i);
            cut.capacity += g.arcs[i].capacity;
        }
    }
    return cut;
}

ClassicalFlow integral_max_flow(const DirectedCapacityGraph& g) {
    for (const Arc& a : g.arcs) {
        if (a.capacity.logweight != 1)
            throw PreconditionError("integral_max_flow requires pure integer (count-only) capacities");
    }
    return max_flow(g);
}

Cut make_cut(const Network& net, const std::vector<char>& source_side) {
    if (static_cast<int>(source_side.size()) != net.vertex_count())
        throw PreconditionError("cut side vector does not match vertex count");
    if (!source_side[net.source] || source_side[net.sink])
        throw PreconditionError("cut must keep source and sink on their own sides");
    Cut cut;
    cut.source_side = source_side;
    for (const EdgeInstance& e : net.edges) {
        if (source_side[e.u] != source_side[e.v]) {
            cut.cut_edges.push_back(e.id);
            cut.capacity_product *= e.capacity;
        }
    }
    cut.cardinality = static_cast<int>(cut.cut_edges.size());
    return cut;
}

DirectedCapacityGraph reduction_digraph(const Network& net, ArcWeight weight) {
    DirectedCapacityGraph g;
    g.vertex_count = net.vertex_count();
    g.source = net.source;
    g.sink = net.sink;
    auto capacity_for = [&](const Int& d) {
        switch (weight) {
            case ArcWeight::Log: return GroupValue::log_of(d);
            case ArcWeight::LexCardinality: return GroupValue{1, Rat(d)};
            case ArcWeight::Unit: return GroupValue::units(1);
        }
        throw std::logic_error("unreachable");
    };
    for (const EdgeInstance& e : net.edges) {
        auto add = [&](int a, int b, bool forward) {
            // no arcs into the source, none out of the sink
            if (b == net.source || a == net.sink) return;
            g.arcs.push_back({a, b, capacity_for(e.capacity), e.id, forward});
        };
        add(e.u, e.v, true);
        add(e.v, e.u, false);
    }
    return g;
}

Cut lex_min_cut(const Network& net) {
    DirectedCapacityGraph g = reduction_digraph(net, ArcWeight::LexCardinality);
    DigraphCut dc = min_cut(g);
    Cut cut = make_cut(net, dc.source_side);
    if (cut.cardinality != dc.capacity.count || Rat(cut.capacity_product) != dc.capacity.logweight)
        throw std::logic_error("reduction cut does not match network cut");
    return cut;
}

std::vector<Path> edge_disjoint_paths(const Network& net) {
    DirectedCapacityGraph g = reduction_digraph(net, ArcWeight::Unit);
    ClassicalFlow f = integral_max_flow(g);

    std::vector<long long> units(g.arcs.size());
    for (size_t i = 0; i < g.arcs.size(); ++i) units[i] = f.arc_flow[i].count;

    // cancel anti-parallel pairs (both orientations of one undirected edge)
    std::vector<int> fwd_arc(net.edge_count(), -1), bwd_arc(net.edge_count(), -1);
    for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i)
        (g.arcs[i].forward ? fwd_arc : bwd_arc)[g.arcs[i].edge_id] = i;
    for (int e = 0; e < net.edge_count(); ++e) {
        if (fwd_arc[e] < 0 || bwd_arc[e] < 0) continue;
        long long c = std::min(units[fwd_arc[e]], units[bwd_arc[e]]);
        units[fwd_arc[e]] -= c;
        units[bwd_arc[e]] -= c;
    }

    std::vector<std::vector<int>> out_arcs(g.vertex_count);
    for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) out_arcs[g.arcs[i].tail].push_back(i);

    auto next_arc = [&](int v) {
        for (int i : out_arcs[v])
            if (units[i] > 0) return i;
        return -1;
    };

    std::vector<Path> paths;
    // walk from the source consuming one unit per arc; loops are erased as
    // they close, which removes any cyclic flow from the decomposition
    while (next_arc(g.source) >= 0) {
        std::vector<int> walk_arcs;
        std::vector<int> walk_vertices{g.source};
        int v = g.source;
        while (v != g.sink) {
            int i = next_arc(v);
            if (i < 0) throw std::logic_error("flow decomposition stuck; conservation violated");
            --units[i];
            int to = g.arcs[i].head;
            auto seen = std::find(walk_vertices.begin(), walk_vertices.end(), to);
            if (seen != walk_vertices.end()) {
                size_t keep = static_cast<size_t>(seen - walk_vertices.begin());
                walk_arcs.resize(keep);
                walk_vertices.resize(keep + 1);
            } else {
                walk_arcs.push_back(i);
                walk_vertices.push_back(to);
            }
            v = walk_vertices.back();
        }
        Path path;
        for (int i : walk_arcs) {
            const Arc& a = g.arcs[i];
            path.push_back({a.edge_id, a.forward, a.tail, a.head});
        }
        paths.push_back(std::move(path));
    }
    if (static_cast<long long>(paths.size()) != f.value.count)
        throw std::logic_error("path count does not match unit max-flow value");
    return paths;
}

}  // namespace qmfmc
