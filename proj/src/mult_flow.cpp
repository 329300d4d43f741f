#include "qmfmc/mult_flow.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qmfmc {

namespace {

std::string brief(const Rat& r) { return r.get_str(); }

Int cdiv(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// flow value directed into `vertex` along edge e
const Rat& into_value(const EdgeInstance& e, const EdgeFlow& f, int vertex) {
    return e.v == vertex ? f.forward : f.backward;
}

const Rat& out_value(const EdgeInstance& e, const EdgeFlow& f, int vertex) {
    return e.u == vertex ? f.forward : f.backward;
}

void require_shape(const Network& net, const MultiplicativeFlow& f, const char* who) {
    if (static_cast<int>(f.edges.size()) != net.edge_count())
        throw PreconditionError(std::string(who) + ": flow edge count does not match network");
}

std::vector<char> mask_to_sides(const Network& net, unsigned long long mask,
                                const std::vector<int>& free_vertices) {
    std::vector<char> side(net.vertex_count(), 0);
    side[net.source] = 1;
    for (size_t i = 0; i < free_vertices.size(); ++i)
        if (mask & (1ull << i)) side[free_vertices[i]] = 1;
    return side;
}

std::vector<int> free_vertices_of(const Network& net) {
    std::vector<int> free;
    for (int v = 0; v < net.vertex_count(); ++v)
        if (v != net.source && v != net.sink) free.push_back(v);
    return free;
}

}  // namespace

std::string to_string(FlowKind kind) {
    switch (kind) {
        case FlowKind::Integer: return "integer";
        case FlowKind::StrictInteger: return "strict-integer";
        case FlowKind::RationalSingleDirection: return "rational";
    }
    throw std::logic_error("unreachable");
}

FlowKind flow_kind_from_string(const std::string& name) {
    if (name == "integer") return FlowKind::Integer;
    if (name == "strict-integer") return FlowKind::StrictInteger;
    if (name == "rational") return FlowKind::RationalSingleDirection;
    throw ParseError("unknown flow kind \"" + name + "\"");
}

Rat flow_value(const Network& net, const MultiplicativeFlow& f) {
    require_shape(net, f, "flow_value");
    Rat value(1);
    for (const EdgeInstance& e : net.edges) {
        if (!e.touches(net.source)) continue;
        value *= out_value(e, f.edges[e.id], net.source);
        value /= into_value(e, f.edges[e.id], net.source);
    }
    return value;
}

VerificationReport verify_flow(const Network& net, const MultiplicativeFlow& f) {
    VerificationReport report;
    if (static_cast<int>(f.edges.size()) != net.edge_count()) {
        report.violations.push_back({"structure", -1, -1, "flow edge count does not match network"});
        return report;
    }
    const bool integral = f.kind != FlowKind::RationalSingleDirection;
    for (const EdgeInstance& e : net.edges) {
        const EdgeFlow& ef = f.edges[e.id];
        if (ef.forward <= 0 || ef.backward <= 0) {
            report.violations.push_back({"positivity", e.id, -1,
                                         "(" + brief(ef.forward) + "," + brief(ef.backward) + ")"});
            continue;
        }
        if (integral) {
            if (!is_integral(ef.forward) || !is_integral(ef.backward))
                report.violations.push_back({"integrality", e.id, -1,
                                             "(" + brief(ef.forward) + "," + brief(ef.backward) + ")"});
            Rat product = ef.forward * ef.backward;
            if (product > Rat(e.capacity))
                report.violations.push_back({"capacity", e.id, -1,
                                             brief(product) + " > " + e.capacity.get_str()});
        } else {
            if (ef.forward != 1 && ef.backward != 1)
                report.violations.push_back({"single-direction", e.id, -1,
                                             "(" + brief(ef.forward) + "," + brief(ef.backward) + ")"});
            Rat lo = make_rat(1, e.capacity), hi(e.capacity);
            if (ef.forward < lo || ef.forward > hi || ef.backward < lo || ef.backward > hi)
                report.violations.push_back({"capacity", e.id, -1,
                                             "(" + brief(ef.forward) + "," + brief(ef.backward) +
                                                 ") outside [1/" + e.capacity.get_str() + "," +
                                                 e.capacity.get_str() + "]"});
        }
        if (f.kind == FlowKind::StrictInteger) {
            if (e.touches(net.source) && into_value(e, ef, net.source) != 1)
                report.violations.push_back({"strictness", e.id, net.source, "flow enters the source"});
            if (e.touches(net.sink) && out_value(e, ef, net.sink) != 1)
                report.violations.push_back({"strictness", e.id, net.sink, "flow leaves the sink"});
        }
    }
    auto inc = net.incidence();
    for (int v = 0; v < net.vertex_count(); ++v) {
        if (v == net.source || v == net.sink) continue;
        Rat in(1), out(1);
        for (int eid : inc[v]) {
            const EdgeInstance& e = net.edges[eid];
            if (f.edges[eid].forward <= 0 || f.edges[eid].backward <= 0) continue;
            in *= into_value(e, f.edges[eid], v);
            out *= out_value(e, f.edges[eid], v);
        }
        if (in != out)
            report.violations.push_back({"conservation", -1, v,
                                         "in " + brief(in) + " != out " + brief(out)});
    }
    return report;
}

Rat cut_ratio(const Network& net, const MultiplicativeFlow& f, const Cut& cut) {
    require_shape(net, f, "cut_ratio");
    if (static_cast<int>(cut.source_side.size()) != net.vertex_count() ||
        !cut.source_side[net.source] || cut.source_side[net.sink])
        throw PreconditionError("cut_ratio: invalid cut");
    Rat ratio(1);
    for (const EdgeInstance& e : net.edges) {
        if (cut.source_side[e.u] == cut.source_side[e.v]) continue;
        const EdgeFlow& ef = f.edges[e.id];
        if (cut.source_side[e.u]) {
            ratio *= ef.forward;
            ratio /= ef.backward;
        } else {
            ratio *= ef.backward;
            ratio /= ef.forward;
        }
    }
    return ratio;
}

QmcResult quantum_min_cut(const Network& net) {
    DigraphCut dc = min_cut(reduction_digraph(net, ArcWeight::Log));
    QmcResult out;
    out.witness = make_cut(net, dc.source_side);
    out.qmc = out.witness.capacity_product;
    if (dc.capacity.count != 0 || dc.capacity.logweight != Rat(out.qmc))
        throw std::logic_error("reduction min-cut does not match network cut product");
    return out;
}

Int brute_force_qmc(const Network& net, int max_vertices) {
    if (net.vertex_count() > max_vertices)
        throw BudgetError("brute_force_qmc: graph too large for cut enumeration");
    const std::vector<int> free = free_vertices_of(net);
    Int best;
    bool have = false;
    for (unsigned long long mask = 0; mask < (1ull << free.size()); ++mask) {
        Cut cut = make_cut(net, mask_to_sides(net, mask, free));
        if (!have || cut.capacity_product < best) {
            best = cut.capacity_product;
            have = true;
        }
    }
    return best;
}

std::vector<Cut> enumerate_min_cuts(const Network& net, int max_vertices) {
    Int qmc = brute_force_qmc(net, max_vertices);
    const std::vector<int> free = free_vertices_of(net);
    std::vector<Cut> cuts;
    for (unsigned long long mask = 0; mask < (1ull << free.size()); ++mask) {
        Cut cut = make_cut(net, mask_to_sides(net, mask, free));
        if (cut.capacity_product == qmc) cuts.push_back(std::move(cut));
    }
    return cuts;
}

MultiplicativeFlow rational_max_flow(const Network& net) {
    DirectedCapacityGraph g = reduction_digraph(net, ArcWeight::Log);
    ClassicalFlow cf = max_flow(g);

    // log-domain flow per edge orientation; absent arcs carry weight 1
    std::vector<Rat> fwd(net.edge_count(), Rat(1)), bwd(net.edge_count(), Rat(1));
    for (size_t i = 0; i < g.arcs.size(); ++i) {
        const Arc& a = g.arcs[i];
        (a.forward ? fwd : bwd)[a.edge_id] = cf.arc_flow[i].logweight;
    }

    MultiplicativeFlow f;
    f.kind = FlowKind::RationalSingleDirection;
    f.edges.resize(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) {
        // anti-parallel cancellation in the log domain, then exponentiate
        Rat r = fwd[e] / bwd[e];
        if (r >= 1)
            f.edges[e] = {r, Rat(1)};
        else
            f.edges[e] = {Rat(1), Rat(1) / r};
    }
    return f;
}

VerificationReport saturation_check(const Network& net, const MultiplicativeFlow& f,
                                    int max_vertices) {
    require_shape(net, f, "saturation_check");
    QmcResult qmc = quantum_min_cut(net);
    if (flow_value(net, f) != Rat(qmc.qmc))
        throw PreconditionError("saturation_check requires a flow of value QMC");
    VerificationReport report;
    for (const Cut& cut : enumerate_min_cuts(net, max_vertices)) {
        for (int eid : cut.cut_edges) {
            const EdgeInstance& e = net.edges[eid];
            const EdgeFlow& ef = f.edges[eid];
            const Rat& fval = cut.source_side[e.u] ? ef.forward : ef.backward;
            const Rat& bval = cut.source_side[e.u] ? ef.backward : ef.forward;
            if (fval != Rat(e.capacity) && bval != make_rat(1, e.capacity))
                report.violations.push_back({"saturation", eid, -1,
                                             "cut edge carries " + brief(fval) + " forward, " +
                                                 brief(bval) + " backward, capacity " +
                                                 e.capacity.get_str()});
        }
    }
    return report;
}

ScalingParams scaling_params(const Network& net) {
    if (!source_sink_connected(net))
        throw PreconditionError("scaling_params requires source and sink to be connected");
    ScalingParams params;
    params.n0 = 1;
    for (const EdgeInstance& e : net.edges) params.n0 *= e.capacity;
    params.cut = lex_min_cut(net);
    params.base_rational_flow = rational_max_flow(scale_network(net, params.n0));
    params.m0 = 1;
    for (const EdgeFlow& ef : params.base_rational_flow.edges) {
        params.m0 = lcm(params.m0, num(ef.forward));
        params.m0 = lcm(params.m0, den(ef.forward));
        params.m0 = lcm(params.m0, num(ef.backward));
        params.m0 = lcm(params.m0, den(ef.backward));
    }
    return params;
}

IntegerFlowPlan plan_integer_flow(const Network& net) {
    IntegerFlowPlan plan;
    plan.params = scaling_params(net);
    plan.paths = edge_disjoint_paths(net);
    if (static_cast<int>(plan.paths.size()) != plan.params.cut.cardinality)
        throw std::logic_error("disjoint path count does not match lexicographic min cut");

    plan.reoriented = plan.params.base_rational_flow;
    std::vector<char> on_path(net.edge_count(), 0);
    for (const Path& path : plan.paths) {
        for (const Traversal& t : path) {
            on_path[t.edge_id] = 1;
            EdgeFlow& ef = plan.reoriented.edges[t.edge_id];
            Rat& along = t.forward ? ef.forward : ef.backward;
            Rat& against = t.forward ? ef.backward : ef.forward;
            if (along == 1) {
                // flip a single-direction value onto the path direction
                along = Rat(1) / against;
                against = Rat(1);
            }
        }
    }

    plan.k_min = 1;
    for (const EdgeInstance& e : net.edges) {
        if (on_path[e.id]) continue;
        const EdgeFlow& ef = plan.reoriented.edges[e.id];
        const Rat& val = ef.forward != 1 ? ef.forward : ef.backward;
        Int pq = num(val) * den(val);
        Int bound = plan.params.n0 * plan.params.m0 * e.capacity;
        Int k_e = cdiv(pq, bound);
        if (k_e > plan.k_min) plan.k_min = k_e;
    }
    return plan;
}

IntegerFlowResult integer_flow(const Network& net, const Int& k) {
    return integer_flow(net, plan_integer_flow(net), k);
}

IntegerFlowResult integer_flow(const Network& net, const IntegerFlowPlan& plan, const Int& k) {
    if (k < plan.k_min)
        throw PreconditionError("k below k_min (k_min = " + plan.k_min.get_str() + ")");
    IntegerFlowResult out;
    out.k = k;
    out.k_min = plan.k_min;
    out.n = k * plan.params.n0 * plan.params.m0;
    out.scaled = scale_network(net, out.n);

    std::vector<char> on_path(net.edge_count(), 0);
    out.flow.kind = FlowKind::Integer;
    out.flow.edges.assign(net.edge_count(), EdgeFlow{});
    const Rat km0 = Rat(k * plan.params.m0);
    for (const Path& path : plan.paths) {
        for (const Traversal& t : path) {
            on_path[t.edge_id] = 1;
            const EdgeFlow& g = plan.reoriented.edges[t.edge_id];
            Rat scaled = km0 * (t.forward ? g.forward : g.backward);
            if (!is_integral(scaled))
                throw std::logic_error("m0 does not clear the base flow on a path edge");
            EdgeFlow& ef = out.flow.edges[t.edge_id];
            (t.forward ? ef.forward : ef.backward) = scaled;
            (t.forward ? ef.backward : ef.forward) = Rat(1);
        }
    }
    for (const EdgeInstance& e : net.edges) {
        if (on_path[e.id]) continue;
        const EdgeFlow& g = plan.reoriented.edges[e.id];
        EdgeFlow& ef = out.flow.edges[e.id];
        if (g.forward != 1) {
            ef.forward = Rat(num(g.forward));
            ef.backward = Rat(den(g.forward));
        } else if (g.backward != 1) {
            ef.backward = Rat(num(g.backward));
            ef.forward = Rat(den(g.backward));
        }
    }
    return out;
}

std::map<Int, ExponentFlow> exponent_flows(const MultiplicativeFlow& f) {
    if (f.kind == FlowKind::RationalSingleDirection)
        throw PreconditionError("exponent_flows requires an integer flow");
    const size_t m = f.edges.size();
    std::map<Int, ExponentFlow> out;
    auto record = [&](const Rat& value, size_t edge, bool forward) {
        if (!is_integral(value))
            throw PreconditionError("exponent_flows requires integer direction values");
        for (const auto& [p, exp] : factorize(num(value)).factors) {
            auto [it, fresh] = out.try_emplace(p);
            if (fresh) {
                it->second.prime = p;
                it->second.exponents.assign(m, {0, 0});
            }
            auto& slot = it->second.exponents[edge];
            (forward ? slot.first : slot.second) = exp;
        }
    };
    for (size_t e = 0; e < m; ++e) {
        record(f.edges[e].forward, e, true);
        record(f.edges[e].backward, e, false);
    }
    return out;
}

namespace {

struct IntFlowView {
    const Network& net;
    std::vector<std::pair<Int, Int>> vals;  // (forward, backward) per edge
    std::vector<std::vector<int>> inc;

    IntFlowView(const Network& n, const MultiplicativeFlow& f) : net(n), inc(n.incidence()) {
        vals.reserve(f.edges.size());
        for (const EdgeFlow& ef : f.edges) {
            if (!is_integral(ef.forward) || !is_integral(ef.backward))
                throw PreconditionError("integer flow expected");
            vals.emplace_back(num(ef.forward), num(ef.backward));
        }
    }

    Int& into(int edge, int vertex) {
        const EdgeInstance& e = net.edges[edge];
        return e.v == vertex ? vals[edge].first : vals[edge].second;
    }
    Int& out_of(int edge, int vertex) {
        const EdgeInstance& e = net.edges[edge];
        return e.u == vertex ? vals[edge].first : vals[edge].second;
    }

    MultiplicativeFlow to_flow(FlowKind kind) const {
        MultiplicativeFlow f;
        f.kind = kind;
        for (const auto& [a, b] : vals) f.edges.push_back({Rat(a), Rat(b)});
        return f;
    }

    // Walks from `start` along arcs whose value the prime divides (backward:
    // against the arc direction) until a vertex repeats, then divides the
    // prime out of every arc on the closed portion.
    void cancel_cycle(int start, const Int& q, bool walk_backward) {
        std::vector<int> order{start};
        std::vector<int> used_edge;
        for (;;) {
            int cur = order.back();
            int chosen = -1;
            for (int eid : inc[cur]) {
                Int& val = walk_backward ? into(eid, cur) : out_of(eid, cur);
                if (mpz_divisible_p(val.get_mpz_t(), q.get_mpz_t())) {
                    chosen = eid;
                    break;
                }
            }
            if (chosen < 0) throw std::logic_error("exponent walk stuck; flow is not optimal");
            int next = net.edges[chosen].other(cur);
            auto seen = std::find(order.begin(), order.end(), next);
            const bool revisit = seen != order.end();
            const size_t first = static_cast<size_t>(seen - order.begin());
            used_edge.push_back(chosen);
            order.push_back(next);
            if (revisit) {
                for (size_t i = first; i + 1 < order.size(); ++i) {
                    Int& val = walk_backward ? into(used_edge[i], order[i]) : out_of(used_edge[i], order[i]);
                    val /= q;
                }
                return;
            }
            if (order.size() > static_cast<size_t>(net.vertex_count()) + 1)
                throw std::logic_error("exponent walk failed to close");
        }
    }
};

Int lowest_prime_factor(const Int& v) { return factorize(v).factors.begin()->first; }

}  // namespace

MultiplicativeFlow strictify(const Network& net, const MultiplicativeFlow& f) {
    require_shape(net, f, "strictify");
    if (f.kind == FlowKind::RationalSingleDirection)
        throw PreconditionError("strictify requires an integer flow");
    const Rat value = flow_value(net, f);
    QmcResult qmc = quantum_min_cut(net);
    if (value != Rat(qmc.qmc))
        throw PreconditionError("strictify requires an optimal flow (value = QMC = " +
                                qmc.qmc.get_str() + ", got " + value.get_str() + ")");

    IntFlowView view(net, f);
    for (;;) {
        int offending = -1;
        for (int eid : view.inc[net.source]) {
            if (view.into(eid, net.source) > 1) {
                offending = eid;
                break;
            }
        }
        if (offending < 0) break;
        Int q = lowest_prime_factor(view.into(offending, net.source));
        view.cancel_cycle(net.edges[offending].other(net.source), q, /*walk_backward=*/true);
    }
    for (;;) {
        int offending = -1;
        for (int eid : view.inc[net.sink]) {
            if (view.out_of(eid, net.sink) > 1) {
                offending = eid;
                break;
            }
        }
        if (offending < 0) break;
        Int q = lowest_prime_factor(view.out_of(offending, net.sink));
        view.cancel_cycle(net.edges[offending].other(net.sink), q, /*walk_backward=*/false);
    }

    MultiplicativeFlow out = view.to_flow(FlowKind::StrictInteger);
    if (flow_value(net, out) != value)
        throw std::logic_error("strictification changed the flow value");
    return out;
}

BruteForceFlowResult brute_force_qmf_flow(const Network& net, bool strict, long long search_cap) {
    Int total = 1;
    for (const EdgeInstance& e : net.edges) total *= e.capacity;
    if (!fits_i64(total) || to_i64(total) > (1ll << 31))
        throw BudgetError("brute_force_qmf: capacity product too large for exhaustive search");

    struct Choice {
        unsigned long long fwd, bwd;
    };
    std::vector<std::vector<Choice>> candidates(net.edge_count());
    Int space = 1;
    for (const EdgeInstance& e : net.edges) {
        const auto d = static_cast<unsigned long long>(to_i64(e.capacity));
        const bool force_fwd = strict && (e.v == net.source || e.u == net.sink);
        const bool force_bwd = strict && (e.u == net.source || e.v == net.sink);
        for (unsigned long long a = 1; a <= (force_fwd ? 1 : d); ++a)
            for (unsigned long long b = 1; a * b <= d; ++b) {
                if (force_bwd && b > 1) break;
                candidates[e.id].push_back({a, b});
            }
        space *= static_cast<long>(candidates[e.id].size());
    }
    if (space > search_cap)
        throw BudgetError("brute_force_qmf: search space " + space.get_str() + " exceeds cap " +
                          std::to_string(search_cap));

    // internal vertices whose incident edges are all assigned once edge id
    // j is chosen; conservation is checked there and the branch pruned
    std::vector<std::vector<int>> complete_at(net.edge_count());
    {
        std::vector<int> last(net.vertex_count(), -1);
        for (const EdgeInstance& e : net.edges) {
            last[e.u] = std::max(last[e.u], e.id);
            last[e.v] = std::max(last[e.v], e.id);
        }
        for (int v = 0; v < net.vertex_count(); ++v) {
            if (v == net.source || v == net.sink || last[v] < 0) continue;
            complete_at[last[v]].push_back(v);
        }
    }

    std::vector<unsigned long long> in_prod(net.vertex_count(), 1), out_prod(net.vertex_count(), 1);
    unsigned long long val_num = 1, val_den = 1;
    unsigned long long best_num = 0, best_den = 1;  // max over valid assignments
    std::vector<int> choice(net.edge_count(), 0), best_choice;

    auto apply = [&](const EdgeInstance& e, const Choice& c, bool undo) {
        auto mul = [&](unsigned long long& slot, unsigned long long x) {
            if (undo) slot /= x; else slot *= x;
        };
        mul(out_prod[e.u], c.fwd);
        mul(in_prod[e.v], c.fwd);
        mul(out_prod[e.v], c.bwd);
        mul(in_prod[e.u], c.bwd);
        if (e.u == net.source) { mul(val_num, c.fwd); mul(val_den, c.bwd); }
        if (e.v == net.source) { mul(val_num, c.bwd); mul(val_den, c.fwd); }
    };

    auto search = [&](auto&& self, int edge) -> void {
        if (edge == net.edge_count()) {
            if (static_cast<unsigned __int128>(val_num) * best_den >
                static_cast<unsigned __int128>(best_num) * val_den) {
                best_num = val_num;
                best_den = val_den;
                best_choice = choice;
            }
            return;
        }
        for (size_t ci = 0; ci < candidates[edge].size(); ++ci) {
            const Choice& c = candidates[edge][ci];
            choice[edge] = static_cast<int>(ci);
            apply(net.edges[edge], c, false);
            bool conserving = true;
            for (int v : complete_at[edge])
                if (in_prod[v] != out_prod[v]) conserving = false;
            if (conserving) self(self, edge + 1);
            apply(net.edges[edge], c, true);
        }
    };
    search(search, 0);

    if (best_num == 0) throw std::logic_error("no conserving assignment found");
    BruteForceFlowResult out;
    out.value = make_rat(Int(static_cast<unsigned long>(best_num)),
                         Int(static_cast<unsigned long>(best_den)));
    out.flow.kind = strict ? FlowKind::StrictInteger : FlowKind::Integer;
    for (int e = 0; e < net.edge_count(); ++e) {
        const Choice& c = candidates[e][best_choice[e]];
        out.flow.edges.push_back({Rat(static_cast<unsigned long>(c.fwd)),
                                  Rat(static_cast<unsigned long>(c.bwd))});
    }
    return out;
}

std::pair<Int, MultiplicativeFlow> random_conserving_flow(const Network& net, std::uint64_t seed,
                                                          int monomials) {
    std::mt19937_64 rng(seed);
    auto inc = net.incidence();
    MultiplicativeFlow f;
    f.kind = FlowKind::Integer;
    f.edges.assign(net.edge_count(), EdgeFlow{});
    const long multipliers[4] = {2, 3, 5, 7};

    auto random_walk = [&](int start, bool stop_at_sink) {
        // loop-erased random walk; returns traversals of an s->t path or of
        // a directed cycle (the erased loop), possibly empty on failure
        std::vector<int> vertices{start};
        std::vector<Traversal> steps;
        const int step_cap = 8 * net.vertex_count() * std::max(net.edge_count(), 1);
        for (int i = 0; i < step_cap; ++i) {
            int cur = vertices.back();
            if (inc[cur].empty()) return std::vector<Traversal>{};
            int eid = inc[cur][rng() % inc[cur].size()];
            const EdgeInstance& e = net.edges[eid];
            int to = e.other(cur);
            auto seen = std::find(vertices.begin(), vertices.end(), to);
            if (seen != vertices.end()) {
                size_t pos = static_cast<size_t>(seen - vertices.begin());
                std::vector<Traversal> cycle(steps.begin() + pos, steps.end());
                cycle.push_back({eid, e.u == cur, cur, to});
                if (!stop_at_sink) return cycle;
                steps.resize(pos);
                vertices.resize(pos + 1);
                continue;
            }
            steps.push_back({eid, e.u == cur, cur, to});
            vertices.push_back(to);
            if (stop_at_sink && to == net.sink) return steps;
        }
        return std::vector<Traversal>{};
    };

    for (int i = 0; i < monomials; ++i) {
        const bool want_path = rng() % 2 == 0;
        const Rat mult(multipliers[rng() % 4]);
        int start = want_path ? net.source : static_cast<int>(rng() % net.vertex_count());
        std::vector<Traversal> walk = random_walk(start, want_path);
        if (walk.empty()) continue;
        for (const Traversal& t : walk) {
            EdgeFlow& ef = f.edges[t.edge_id];
            (t.forward ? ef.forward : ef.backward) *= mult;
        }
    }

    Int scale = 1;
    for (const EdgeInstance& e : net.edges) {
        const EdgeFlow& ef = f.edges[e.id];
        Int needed = cdiv(num(ef.forward) * num(ef.backward), e.capacity);
        if (needed > scale) scale = needed;
    }
    return {scale, std::move(f)};
}

}  // namespace qmfmc
