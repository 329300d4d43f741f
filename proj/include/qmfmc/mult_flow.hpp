#ifndef QMFMC_MULT_FLOW_HPP
#define QMFMC_MULT_FLOW_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmfmc/classical_flow.hpp"
#include "qmfmc/network.hpp"
#include "qmfmc/numeric.hpp"

namespace qmfmc {

enum class FlowKind { Integer, StrictInteger, RationalSingleDirection };

std::string to_string(FlowKind kind);
FlowKind flow_kind_from_string(const std::string& name);

// Flow assignment of one edge instance: forward is the value from u to v
// as the edge is written in the network, backward the value from v to u.
struct EdgeFlow {
    Rat forward = Rat(1);
    Rat backward = Rat(1);
};

struct MultiplicativeFlow {
    FlowKind kind = FlowKind::Integer;
    std::vector<EdgeFlow> edges;
};

// One violated constraint; `edge` / `vertex` are -1 when not applicable.
struct Violation {
    std::string constraint;
    int edge = -1;
    int vertex = -1;
    std::string detail;
};

struct VerificationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Product of values leaving the source over product of values entering it.
Rat flow_value(const Network& net, const MultiplicativeFlow& f);

// Checks positivity, integrality, capacity, single-direction, strictness
// and product conservation as appropriate for the flow's kind. Violations
// are report entries, never exceptions.
VerificationReport verify_flow(const Network& net, const MultiplicativeFlow& f);

// Product of flows crossing the cut forward over product crossing backward.
// Equals flow_value for every conserving flow.
Rat cut_ratio(const Network& net, const MultiplicativeFlow& f, const Cut& cut);

struct QmcResult {
    Int qmc = 1;
    Cut witness;
};

// Exact quantum min-cut via the log-domain reduction; the witness is the
// residual-reachability cut. Disconnected networks give qmc = 1.
QmcResult quantum_min_cut(const Network& net);

// Direct enumeration of all 2^(|V|-2) bipartitions.
Int brute_force_qmc(const Network& net, int max_vertices = 20);

// All bipartitions achieving brute_force_qmc.
std::vector<Cut> enumerate_min_cuts(const Network& net, int max_vertices = 20);

// Rational single-direction flow of value exactly quantum_min_cut(net),
// built from a maximum flow on the log-domain reduction with anti-parallel
// flow cancelled before exponentiation.
MultiplicativeFlow rational_max_flow(const Network& net);

// For a flow of value QMC: every forward edge of every minimum cut must
// carry its full capacity (or the exact reciprocal backward).
VerificationReport saturation_check(const Network& net, const MultiplicativeFlow& f,
                                    int max_vertices = 20);

struct ScalingParams {
    Int n0 = 1;                           // product of all capacities
    Int m0 = 1;                           // clears every denominator of the base flow
    Cut cut;                              // lexicographic (cardinality, product) min cut
    MultiplicativeFlow base_rational_flow;  // rational max flow on n0-scaled network
};

ScalingParams scaling_params(const Network& net);

struct IntegerFlowPlan {
    ScalingParams params;
    std::vector<Path> paths;          // edge-disjoint source-sink paths
    MultiplicativeFlow reoriented;    // base flow reoriented along the paths
    Int k_min = 1;                    // smallest k whose assignment respects capacity
};

IntegerFlowPlan plan_integer_flow(const Network& net);

struct IntegerFlowResult {
    Int n;                 // k * n0 * m0
    Int k;
    Int k_min;
    Network scaled;        // the n-scaled network the flow lives on
    MultiplicativeFlow flow;
};

IntegerFlowResult integer_flow(const Network& net, const Int& k);
IntegerFlowResult integer_flow(const Network& net, const IntegerFlowPlan& plan, const Int& k);

// Per-prime classical additive flow of exponents, one entry per edge in
// (forward, backward) orientation.
struct ExponentFlow {
    Int prime;
    std::vector<std::pair<unsigned long, unsigned long>> exponents;
};

std::map<Int, ExponentFlow> exponent_flows(const MultiplicativeFlow& f);

// Removes source-entering and sink-leaving factors of an optimal integer
// flow by cancelling unit exponents around directed cycles, preserving the
// value. Returns a strict flow; a no-op when the input is already strict.
MultiplicativeFlow strictify(const Network& net, const MultiplicativeFlow& f);

inline constexpr long long kDefaultOracleCap = 100'000'000;

struct BruteForceFlowResult {
    Rat value;
    MultiplicativeFlow flow;  // a maximizing assignment (lexicographically first)
};

// Exhaustive maximum of |f| over all integer flows (strict ones when
// `strict`). The search space is the product over edges of the number of
// admissible direction pairs and must stay within `search_cap`.
BruteForceFlowResult brute_force_qmf_flow(const Network& net, bool strict,
                                          long long search_cap = kDefaultOracleCap);

inline Rat brute_force_qmf(const Network& net, bool strict,
                           long long search_cap = kDefaultOracleCap) {
    return brute_force_qmf_flow(net, strict, search_cap).value;
}

// Deterministic pseudo-random conserving integer flow built from path and
// cycle monomials, together with the least scale factor n making it
// capacity-feasible on scale_network(net, n).
std::pair<Int, MultiplicativeFlow> random_conserving_flow(const Network& net, std::uint64_t seed,
                                                          int monomials = 8);

}  // namespace qmfmc

#endif
