#ifndef QMFMC_PROTOCOL_HPP
#define QMFMC_PROTOCOL_HPP

#include <vector>

#include "qmfmc/mult_flow.hpp"
#include "qmfmc/network.hpp"

namespace qmfmc {

// One teleportation of a prime-dimensional system along a directed
// source-to-sink path.
struct TeleportStep {
    Int dimension;
    std::vector<Traversal> path;
};

struct Protocol {
    std::vector<TeleportStep> steps;
    Int claimed_dimension = 1;  // product of the step dimensions
};

// Decomposes a strict optimal flow into teleport steps: per prime in
// ascending order, residual cycles are cancelled first, then unit-exponent
// source-to-sink paths are peeled off until the exponent flow is empty.
Protocol extract_protocol(const Network& net, const MultiplicativeFlow& f);

struct SimulationReport {
    std::vector<Int> edge_usage;  // product of dimensions crossing each edge
    Int final_dimension = 1;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Pure dimension bookkeeping: multiplies per-edge usage along every step
// (either direction), checks usage against capacity, path well-formedness,
// primality, and the claimed total dimension. Order-insensitive.
SimulationReport simulate_protocol(const Network& net, const Protocol& prot);

}  // namespace qmfmc

#endif
