#include "qmfmc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmfmc {

namespace {

// Integer direction values of a strict flow, mutated as steps are peeled.
struct Peeler {
    const Network& net;
    std::vector<std::pair<Int, Int>> vals;  // (forward, backward)
    std::vector<std::vector<int>> inc;

    Peeler(const Network& n, const MultiplicativeFlow& f) : net(n), inc(n.incidence()) {
        for (const EdgeFlow& ef : f.edges) vals.emplace_back(num(ef.forward), num(ef.backward));
    }

    Int& out_of(int edge, int vertex) {
        const EdgeInstance& e = net.edges[edge];
        return e.u == vertex ? vals[edge].first : vals[edge].second;
    }

    bool carries(int edge, int vertex, const Int& p) {
        return mpz_divisible_p(out_of(edge, vertex).get_mpz_t(), p.get_mpz_t()) != 0;
    }

    // Removes every directed cycle from the p-exponent flow. Iterative DFS
    // from the lowest vertex id; a back arc closes a cycle which is divided
    // out, then the scan restarts.
    void cancel_cycles(const Int& p) {
        for (bool changed = true; changed;) {
            changed = false;
            std::vector<int> color(net.vertex_count(), 0);  // 0 new, 1 on stack, 2 done
            std::vector<int> via_edge(net.vertex_count(), -1);
            std::vector<int> parent(net.vertex_count(), -1);
            for (int root = 0; root < net.vertex_count() && !changed; ++root) {
                if (color[root] != 0) continue;
                std::vector<int> stack{root};
                color[root] = 1;
                while (!stack.empty() && !changed) {
                    int cur = stack.back();
                    int chosen = -1;
                    for (int eid : inc[cur]) {
                        if (!carries(eid, cur, p)) continue;
                        int to = net.edges[eid].other(cur);
                        if (color[to] == 2) continue;
                        if (color[to] == 1) {
                            // closes a directed cycle through the stack
                            // (the reverse orientation of the arrival edge is
                            // a distinct arc, so this is never a false hit)
                            std::vector<std::pair<int, int>> cycle{{cur, eid}};
                            for (int walk = cur; walk != to; walk = parent[walk])
                                cycle.push_back({parent[walk], via_edge[walk]});
                            for (auto [vertex, edge] : cycle) out_of(edge, vertex) /= p;
                            changed = true;
                            break;
                        }
                        if (color[to] == 0) {
                            chosen = eid;
                            break;
                        }
                    }
                    if (changed) break;
                    if (chosen >= 0) {
                        int to = net.edges[chosen].other(cur);
                        color[to] = 1;
                        parent[to] = cur;
                        via_edge[to] = chosen;
                        stack.push_back(to);
                    } else {
                        color[cur] = 2;
                        stack.pop_back();
                    }
                }
            }
        }
    }

    // Peels one source-to-sink path with every arc divisible by p.
    std::vector<Traversal> peel_path(const Int& p) {
        std::vector<Traversal> path;
        int cur = net.source;
        while (cur != net.sink) {
            int chosen = -1;
            for (int eid : inc[cur]) {
                if (carries(eid, cur, p)) {
                    chosen = eid;
                    break;
                }
            }
            if (chosen < 0) throw std::logic_error("exponent path ends before the sink");
            const EdgeInstance& e = net.edges[chosen];
            out_of(chosen, cur) /= p;
            path.push_back({chosen, e.u == cur, cur, e.other(cur)});
            cur = e.other(cur);
            if (path.size() > vals.size() + inc.size() + 1)
                throw std::logic_error("exponent path loops; residual cycle left");
        }
        return path;
    }
};

}  // namespace

Protocol extract_protocol(const Network& net, const MultiplicativeFlow& f) {
    if (f.kind != FlowKind::StrictInteger)
        throw PreconditionError("extract_protocol requires a strict integer flow");
    VerificationReport check = verify_flow(net, f);
    if (!check.ok()) throw PreconditionError("extract_protocol requires a valid flow");
    QmcResult qmc = quantum_min_cut(net);
    if (flow_value(net, f) != Rat(qmc.qmc))
        throw PreconditionError("extract_protocol requires an optimal flow (value = QMC)");

    // primes of the total transmitted dimension, ascending
    PrimeFactorization dim = factorize(qmc.qmc);

    Peeler peeler(net, f);
    Protocol prot;
    for (const auto& [p, exp] : dim.factors) {
        peeler.cancel_cycles(p);
        for (unsigned long i = 0; i < exp; ++i) {
            prot.steps.push_back({p, peeler.peel_path(p)});
            prot.claimed_dimension *= p;
        }
        // the residual p-exponent flow must now be identically zero
        for (int e = 0; e < net.edge_count(); ++e) {
            if (peeler.carries(e, net.edges[e].u, p) || peeler.carries(e, net.edges[e].v, p))
                throw std::logic_error("residual exponent flow is not empty");
        }
    }
    if (prot.claimed_dimension != qmc.qmc)
        throw std::logic_error("extracted dimension does not match QMC");
    return prot;
}

SimulationReport simulate_protocol(const Network& net, const Protocol& prot) {
    SimulationReport report;
    report.edge_usage.assign(net.edge_count(), Int(1));
    for (size_t s = 0; s < prot.steps.size(); ++s) {
        const TeleportStep& step = prot.steps[s];
        const std::string tag = "step " + std::to_string(s);
        if (!is_prime(step.dimension))
            report.violations.push_back({"structure", -1, -1, tag + ": dimension is not prime"});
        int expected = net.source;
        bool shape_ok = !step.path.empty();
        for (const Traversal& t : step.path) {
            if (t.edge_id < 0 || t.edge_id >= net.edge_count()) {
                shape_ok = false;
                break;
            }
            const EdgeInstance& e = net.edges[t.edge_id];
            int from = t.forward ? e.u : e.v;
            int to = t.forward ? e.v : e.u;
            if (from != expected) {
                shape_ok = false;
                break;
            }
            expected = to;
            report.edge_usage[t.edge_id] *= step.dimension;
        }
        if (!shape_ok || expected != net.sink)
            report.violations.push_back({"structure", -1, -1,
                                         tag + ": path is not a source-to-sink chain"});
        report.final_dimension *= step.dimension;
    }
    for (const EdgeInstance& e : net.edges) {
        if (report.edge_usage[e.id] > e.capacity)
            report.violations.push_back({"capacity", e.id, -1,
                                         "usage " + report.edge_usage[e.id].get_str() + " > " +
                                             e.capacity.get_str()});
    }
    if (report.final_dimension != prot.claimed_dimension)
        report.violations.push_back({"dimension", -1, -1,
                                     "simulated " + report.final_dimension.get_str() +
                                         " != claimed " + prot.claimed_dimension.get_str()});
    return report;
}

}  // namespace qmfmc
