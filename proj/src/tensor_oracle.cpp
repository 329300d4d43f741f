#include "qmfmc/tensor_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qmfmc {

namespace {

void check_field(std::uint32_t q) {
    if (q < 2 || !is_prime(Int(static_cast<unsigned long>(q))))
        throw PreconditionError("field modulus must be prime");
    if (q >= (1u << 31)) throw PreconditionError("field modulus must be below 2^31");
}

long long dim_of(const Int& capacity, long long budget) {
    if (!fits_i64(capacity) || to_i64(capacity) > budget)
        throw BudgetError("edge dimension exceeds the contraction budget");
    return to_i64(capacity);
}

// Internal vertices grouped by connectivity through internal-internal
// edges; boundary edges stay attached to their internal endpoint's group.
struct Components {
    std::vector<std::vector<int>> vertex_groups;
    std::vector<std::vector<int>> edge_groups;  // all edges incident to the group
    std::vector<int> direct_edges;              // source-sink edges, no tensor attached

    Components(const Network& net) {
        std::vector<int> root(net.vertex_count());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        auto internal = [&](int v) { return v != net.source && v != net.sink; };
        for (const EdgeInstance& e : net.edges)
            if (internal(e.u) && internal(e.v)) root[find(e.u)] = find(e.v);

        std::map<int, int> group_of;
        for (int v = 0; v < net.vertex_count(); ++v) {
            if (!internal(v)) continue;
            int r = find(v);
            auto [it, fresh] = group_of.try_emplace(r, static_cast<int>(vertex_groups.size()));
            if (fresh) {
                vertex_groups.emplace_back();
                edge_groups.emplace_back();
            }
            vertex_groups[it->second].push_back(v);
        }
        for (const EdgeInstance& e : net.edges) {
            if (internal(e.u))
                edge_groups[group_of.at(find(e.u))].push_back(e.id);
            else if (internal(e.v))
                edge_groups[group_of.at(find(e.v))].push_back(e.id);
            else
                direct_edges.push_back(e.id);
        }
    }
};

std::vector<long long> strides_of(const FieldTensor& t) {
    std::vector<long long> s(t.legs.size(), 1);
    for (int i = static_cast<int>(t.legs.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * t.dims[i + 1];
    return s;
}

// Sums the shared legs of a and b over F_q; result legs are the symmetric
// difference, ascending.
FieldTensor contract_pair(const FieldTensor& a, const FieldTensor& b, std::uint32_t q) {
    std::vector<int> shared;
    std::set_intersection(a.legs.begin(), a.legs.end(), b.legs.begin(), b.legs.end(),
                          std::back_inserter(shared));
    FieldTensor out;
    std::set_symmetric_difference(a.legs.begin(), a.legs.end(), b.legs.begin(), b.legs.end(),
                                  std::back_inserter(out.legs));

    auto dim_lookup = [](const FieldTensor& t, int leg) {
        auto it = std::lower_bound(t.legs.begin(), t.legs.end(), leg);
        return t.dims[it - t.legs.begin()];
    };
    long long out_size = 1, shared_size = 1;
    for (int leg : out.legs) {
        long long d = std::binary_search(a.legs.begin(), a.legs.end(), leg) ? dim_lookup(a, leg)
                                                                            : dim_lookup(b, leg);
        out.dims.push_back(d);
        out_size *= d;
    }
    std::vector<long long> shared_dims;
    for (int leg : shared) {
        shared_dims.push_back(dim_lookup(a, leg));
        shared_size *= shared_dims.back();
    }
    out.data.assign(out_size, 0);

    // per source tensor: stride contribution of each out leg and shared leg
    auto stride_map = [&](const FieldTensor& t) {
        auto st = strides_of(t);
        std::vector<long long> out_strides(out.legs.size(), 0), shared_strides(shared.size(), 0);
        for (size_t i = 0; i < t.legs.size(); ++i) {
            auto oit = std::lower_bound(out.legs.begin(), out.legs.end(), t.legs[i]);
            if (oit != out.legs.end() && *oit == t.legs[i]) {
                out_strides[oit - out.legs.begin()] = st[i];
            } else {
                auto sit = std::lower_bound(shared.begin(), shared.end(), t.legs[i]);
                shared_strides[sit - shared.begin()] = st[i];
            }
        }
        return std::pair(out_strides, shared_strides);
    };
    auto [a_out, a_shared] = stride_map(a);
    auto [b_out, b_shared] = stride_map(b);

    std::vector<long long> digits(out.legs.size(), 0);
    for (long long idx = 0; idx < out_size; ++idx) {
        long long rem = idx;
        long long a_base = 0, b_base = 0;
        // mixed-radix decode, least significant leg last
        for (int i = static_cast<int>(out.legs.size()) - 1; i >= 0; --i) {
            digits[i] = rem % out.dims[i];
            rem /= out.dims[i];
        }
        for (size_t i = 0; i < out.legs.size(); ++i) {
            a_base += digits[i] * a_out[i];
            b_base += digits[i] * b_out[i];
        }
        std::uint64_t acc = 0;
        std::vector<long long> sdig(shared.size(), 0);
        for (long long s = 0; s < shared_size; ++s) {
            long long srem = s, ai = a_base, bi = b_base;
            for (int i = static_cast<int>(shared.size()) - 1; i >= 0; --i) {
                sdig[i] = srem % shared_dims[i];
                srem /= shared_dims[i];
            }
            for (size_t i = 0; i < shared.size(); ++i) {
                ai += sdig[i] * a_shared[i];
                bi += sdig[i] * b_shared[i];
            }
            acc = (acc + static_cast<std::uint64_t>(a.data[ai]) * b.data[bi]) % q;
        }
        out.data[idx] = static_cast<std::uint32_t>(acc);
    }
    return out;
}

long long rank_mod_q(std::vector<std::uint32_t>& m, long long rows, long long cols,
                     std::uint32_t q) {
    auto inv = [&](std::uint64_t a) {
        // Fermat inverse, q prime
        std::uint64_t r = 1, base = a % q;
        for (std::uint64_t e = q - 2; e; e >>= 1) {
            if (e & 1) r = r * base % q;
            base = base * base % q;
        }
        return r;
    };
    long long rank = 0;
    for (long long col = 0; col < cols && rank < rows; ++col) {
        long long pivot = -1;
        for (long long r = rank; r < rows; ++r)
            if (m[r * cols + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (long long c = col; c < cols; ++c)
                std::swap(m[pivot * cols + c], m[rank * cols + c]);
        const std::uint64_t piv_inv = inv(m[rank * cols + col]);
        for (long long r = rank + 1; r < rows; ++r) {
            std::uint64_t factor = m[r * cols + col] * piv_inv % q;
            if (factor == 0) continue;
            const std::uint64_t neg = q - factor;
            for (long long c = col; c < cols; ++c) {
                m[r * cols + c] = static_cast<std::uint32_t>(
                    (m[r * cols + c] + neg * m[rank * cols + c]) % q);
            }
        }
        ++rank;
    }
    return rank;
}

FieldTensor empty_tensor_for(const Network& net, int vertex, long long budget) {
    FieldTensor t;
    for (const EdgeInstance& e : net.edges)
        if (e.touches(vertex)) t.legs.push_back(e.id);
    long long size = 1;
    for (int leg : t.legs) {
        t.dims.push_back(dim_of(net.edges[leg].capacity, budget));
        size *= t.dims.back();
        if (size > budget) throw BudgetError("tensor exceeds the contraction budget");
    }
    t.data.assign(size, 0);
    return t;
}

TensorAssignment make_assignment(const Network& net, std::uint32_t q, long long budget) {
    check_field(q);
    TensorAssignment out;
    out.field_prime = q;
    for (int v = 0; v < net.vertex_count(); ++v) {
        if (v == net.source || v == net.sink) continue;
        out.vertex_tensors.emplace(v, empty_tensor_for(net, v, budget));
    }
    return out;
}

}  // namespace

long long FieldTensor::size() const {
    long long s = 1;
    for (long long d : dims) s *= d;
    return s;
}

TensorAssignment random_assignment(const Network& net, std::uint64_t seed, std::uint32_t q,
                                   long long budget) {
    TensorAssignment out = make_assignment(net, q, budget);
    std::mt19937_64 rng(seed);
    for (auto& [v, tensor] : out.vertex_tensors)
        for (std::uint32_t& cell : tensor.data) cell = static_cast<std::uint32_t>(rng() % q);
    return out;
}

TensorAssignment zero_assignment(const Network& net, std::uint32_t q, long long budget) {
    return make_assignment(net, q, budget);
}

TensorAssignment protocol_witness_assignment(const Network& net, const Protocol& prot,
                                             std::uint32_t q, long long budget) {
    TensorAssignment out = make_assignment(net, q, budget);

    // per edge: dimensions of the steps traversing it, in step order
    struct Block {
        std::vector<long long> step_index;
        std::vector<long long> dims;
        long long used = 1;
    };
    std::vector<Block> blocks(net.edge_count());
    for (size_t s = 0; s < prot.steps.size(); ++s) {
        const TeleportStep& step = prot.steps[s];
        if (!fits_i64(step.dimension)) throw BudgetError("step dimension too large");
        for (const Traversal& t : step.path) {
            Block& b = blocks[t.edge_id];
            if (!b.step_index.empty() && b.step_index.back() == static_cast<long long>(s))
                throw PreconditionError("witness requires each step to use an edge at most once");
            b.step_index.push_back(static_cast<long long>(s));
            b.dims.push_back(to_i64(step.dimension));
            b.used *= b.dims.back();
        }
    }

    // digit of step s inside the used block of edge e, or -1 when unused
    auto digit_of = [&](int edge, long long x, size_t step) -> long long {
        const Block& b = blocks[edge];
        if (x >= b.used) return -2;  // outside the used block
        long long rem = x;
        long long found = -1;
        for (int i = static_cast<int>(b.dims.size()) - 1; i >= 0; --i) {
            long long d = rem % b.dims[i];
            rem /= b.dims[i];
            if (b.step_index[i] == static_cast<long long>(step)) found = d;
        }
        return found;
    };

    for (auto& [vertex, tensor] : out.vertex_tensors) {
        // steps passing through this vertex: (step, in-edge, out-edge)
        struct Through {
            size_t step;
            int in_edge, out_edge;
        };
        std::vector<Through> through;
        for (size_t s = 0; s < prot.steps.size(); ++s) {
            int in_edge = -1, out_edge = -1;
            for (const Traversal& t : prot.steps[s].path) {
                if (t.to == vertex) in_edge = t.edge_id;
                if (t.from == vertex) out_edge = t.edge_id;
            }
            if (in_edge >= 0 || out_edge >= 0) {
                if (in_edge < 0 || out_edge < 0)
                    throw PreconditionError("witness path stops at an internal vertex");
                through.push_back({s, in_edge, out_edge});
            }
        }
        const long long size = tensor.size();
        std::vector<long long> digits(tensor.legs.size());
        for (long long idx = 0; idx < size; ++idx) {
            long long rem = idx;
            for (int i = static_cast<int>(tensor.legs.size()) - 1; i >= 0; --i) {
                digits[i] = rem % tensor.dims[i];
                rem /= tensor.dims[i];
            }
            bool match = true;
            for (size_t i = 0; i < tensor.legs.size() && match; ++i)
                if (digits[i] >= blocks[tensor.legs[i]].used) match = false;
            for (const Through& th : through) {
                if (!match) break;
                long long a = -1, b = -1;
                for (size_t i = 0; i < tensor.legs.size(); ++i) {
                    if (tensor.legs[i] == th.in_edge) a = digit_of(th.in_edge, digits[i], th.step);
                    if (tensor.legs[i] == th.out_edge) b = digit_of(th.out_edge, digits[i], th.step);
                }
                if (a < 0 || b < 0 || a != b) match = false;
            }
            if (match) tensor.data[idx] = 1;
        }
    }
    return out;
}

ContractionResult contract_assignment(const Network& net, const TensorAssignment& assignment,
                                      long long budget) {
    const std::uint32_t q = assignment.field_prime;
    check_field(q);
    Components comp(net);

    ContractionResult result;
    result.rank = 1;
    for (const EdgeInstance& e : net.edges) {
        if (e.touches(net.source)) result.source_dim *= e.capacity;
        if (e.touches(net.sink)) result.sink_dim *= e.capacity;
    }
    for (int eid : comp.direct_edges) result.rank *= net.edges[eid].capacity;

    for (size_t g = 0; g < comp.vertex_groups.size(); ++g) {
        Int state_space = 1;
        for (int eid : comp.edge_groups[g]) state_space *= net.edges[eid].capacity;
        if (!fits_i64(state_space) || to_i64(state_space) > budget)
            throw BudgetError("component state space " + state_space.get_str() +
                              " exceeds contraction budget " + std::to_string(budget));

        std::vector<FieldTensor> work;
        for (int v : comp.vertex_groups[g]) work.push_back(assignment.vertex_tensors.at(v));

        while (work.size() > 1) {
            // greedy: contract the pair with the smallest result
            size_t bi = 0, bj = 1;
            long long best = -1;
            bool best_shares = false;
            for (size_t i = 0; i < work.size(); ++i)
                for (size_t j = i + 1; j < work.size(); ++j) {
                    std::vector<int> shared;
                    std::set_intersection(work[i].legs.begin(), work[i].legs.end(),
                                          work[j].legs.begin(), work[j].legs.end(),
                                          std::back_inserter(shared));
                    long long shared_size = 1;
                    for (int leg : shared)
                        shared_size *= work[i].dims[std::lower_bound(work[i].legs.begin(),
                                                                     work[i].legs.end(), leg) -
                                                    work[i].legs.begin()];
                    long long result_size = work[i].size() / shared_size * (work[j].size() / shared_size);
                    bool shares = !shared.empty();
                    if (best < 0 || (shares && !best_shares) ||
                        (shares == best_shares && result_size < best)) {
                        best = result_size;
                        best_shares = shares;
                        bi = i;
                        bj = j;
                    }
                }
            if (best > budget) throw BudgetError("intermediate tensor exceeds contraction budget");
            FieldTensor merged = contract_pair(work[bi], work[bj], q);
            work.erase(work.begin() + bj);
            work[bi] = std::move(merged);
        }

        ComponentContraction cc;
        cc.vertices = comp.vertex_groups[g];
        const FieldTensor& final_tensor = work.front();
        std::vector<int> row_legs, col_legs;
        for (int leg : final_tensor.legs) {
            const EdgeInstance& e = net.edges[leg];
            if (e.touches(net.source))
                row_legs.push_back(leg);
            else if (e.touches(net.sink))
                col_legs.push_back(leg);
            else
                throw std::logic_error("internal leg left after contraction");
        }
        long long rows = 1, cols = 1;
        for (int leg : row_legs) rows *= dim_of(net.edges[leg].capacity, budget);
        for (int leg : col_legs) cols *= dim_of(net.edges[leg].capacity, budget);
        cc.row_dim = rows;
        cc.col_dim = cols;

        // reorder entries into a rows x cols matrix (row legs major)
        std::vector<std::uint32_t> matrix(static_cast<size_t>(rows * cols), 0);
        std::vector<int> order;  // position of each matrix leg inside final_tensor
        for (int leg : row_legs)
            order.push_back(static_cast<int>(std::lower_bound(final_tensor.legs.begin(),
                                                              final_tensor.legs.end(), leg) -
                                             final_tensor.legs.begin()));
        for (int leg : col_legs)
            order.push_back(static_cast<int>(std::lower_bound(final_tensor.legs.begin(),
                                                              final_tensor.legs.end(), leg) -
                                             final_tensor.legs.begin()));
        auto strides = strides_of(final_tensor);
        std::vector<long long> dims_in_order;
        for (int pos : order) dims_in_order.push_back(final_tensor.dims[pos]);
        const long long total = rows * cols;
        std::vector<long long> digits(order.size());
        for (long long idx = 0; idx < total; ++idx) {
            long long rem = idx, src = 0;
            for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
                digits[i] = rem % dims_in_order[i];
                rem /= dims_in_order[i];
            }
            for (size_t i = 0; i < order.size(); ++i) src += digits[i] * strides[order[i]];
            matrix[idx] = final_tensor.data[src];
        }
        cc.rank = rank_mod_q(matrix, rows, cols, q);
        result.rank *= cc.rank;
        result.components.push_back(std::move(cc));
    }
    return result;
}

ContractionResult contract_random(const Network& net, std::uint64_t seed, std::uint32_t q,
                                  long long budget) {
    return contract_assignment(net, random_assignment(net, seed, q, budget), budget);
}

QmfTildeEstimate estimate_qmf_tilde(const Network& net, int trials, std::uint64_t seed,
                                    std::uint32_t q, long long budget) {
    if (trials < 1) throw PreconditionError("estimate_qmf_tilde needs at least one trial");
    QmfTildeEstimate est;
    for (int i = 0; i < trials; ++i) {
        est.seeds.push_back(seed + static_cast<std::uint64_t>(i));
        ContractionResult r = contract_random(net, est.seeds.back(), q, budget);
        if (r.rank > est.max_rank) est.max_rank = r.rank;
    }
    return est;
}

}  // namespace qmfmc
