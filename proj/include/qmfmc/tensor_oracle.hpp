#ifndef QMFMC_TENSOR_ORACLE_HPP
#define QMFMC_TENSOR_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "qmfmc/network.hpp"
#include "qmfmc/protocol.hpp"

namespace qmfmc {

inline constexpr long long kDefaultContractionBudget = 1ll << 20;
inline constexpr std::uint32_t kDefaultFieldPrime = 1'000'003;

// Dense tensor over F_q. Legs are edge ids in ascending order; data is
// row-major with the first leg most significant.
struct FieldTensor {
    std::vector<int> legs;
    std::vector<long long> dims;
    std::vector<std::uint32_t> data;

    long long size() const;
};

struct TensorAssignment {
    std::uint32_t field_prime = kDefaultFieldPrime;
    std::map<int, FieldTensor> vertex_tensors;  // internal vertex -> tensor
};

struct ComponentContraction {
    std::vector<int> vertices;  // internal vertices of the component
    Int row_dim = 1;            // product of source-leg dimensions
    Int col_dim = 1;            // product of sink-leg dimensions
    Int rank = 1;
};

struct ContractionResult {
    Int source_dim = 1;  // dim of the full source space
    Int sink_dim = 1;    // dim of the full sink space
    Int rank = 0;        // rank of the source-to-sink map
    std::vector<ComponentContraction> components;
};

TensorAssignment random_assignment(const Network& net, std::uint64_t seed, std::uint32_t q,
                                   long long budget = kDefaultContractionBudget);
TensorAssignment zero_assignment(const Network& net, std::uint32_t q,
                                 long long budget = kDefaultContractionBudget);

// Delta-tensor assignment that routes each teleport step of the protocol
// through a mixed-radix block of every edge it traverses; its contraction
// rank equals the protocol dimension, certifying the rank lower bound
// carried by the teleportation protocol.
TensorAssignment protocol_witness_assignment(const Network& net, const Protocol& prot,
                                             std::uint32_t q,
                                             long long budget = kDefaultContractionBudget);

// Contracts internal edges greedily (smallest intermediate first) one
// connected component of the internal graph at a time; the total rank is
// the product of the component ranks and of direct source-sink capacities.
// Each component's state space must stay within `budget` entries.
ContractionResult contract_assignment(const Network& net, const TensorAssignment& assignment,
                                      long long budget = kDefaultContractionBudget);

ContractionResult contract_random(const Network& net, std::uint64_t seed,
                                  std::uint32_t q = kDefaultFieldPrime,
                                  long long budget = kDefaultContractionBudget);

struct QmfTildeEstimate {
    Int max_rank = 0;
    std::vector<std::uint64_t> seeds;
};

// Max contraction rank over independent random assignments: an exact lower
// bound on the version-I quantum max-flow, generically tight for large q.
QmfTildeEstimate estimate_qmf_tilde(const Network& net, int trials, std::uint64_t seed = 1,
                                    std::uint32_t q = kDefaultFieldPrime,
                                    long long budget = kDefaultContractionBudget);

}  // namespace qmfmc

#endif
