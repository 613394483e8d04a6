#pragma once
// Particle dissemination: seeded random walks with multiplicative decay.
//
// Each positive (negative) seed emits particles_per_seed particles carrying
// +initial_energy (-initial_energy). A particle deposits its energy at its
// seed, then repeatedly: samples an outgoing edge with probability
// proportional to weight (times the per-kind multiplier), decays, moves, and
// deposits its current energy at the new node. It retires when |energy|
// drops below epsilon, after max_steps steps, or at a node with no outgoing
// edges. The run is a pure function of (graph, problem, config): per-particle
// random streams are derived from rng_seed, and deposits are reduced in
// particle-index order, so serial and parallel execution agree bit-for-bit.

#include <array>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "bibnet/graph.hpp"

namespace bibnet {

struct DisseminationConfig {
    uint64_t particles_per_seed = 1000;
    double initial_energy = 1.0;
    double decay_scalar = 0.85; // in [0, 1]; per-step retention
    double epsilon = 1e-6;      // retirement threshold on |energy|
    uint64_t max_steps = 10000; // hard cap per particle
    uint64_t rng_seed = 0;
    std::array<double, kEdgeKindCount> edge_kind_multipliers{1, 1, 1, 1, 1, 1, 1, 1, 1};
    std::array<double, kLayerCount> seed_layer_multipliers{1, 1, 1}; // particle-count scale per seed layer
    unsigned worker_threads = 0; // 0 = hardware default; never affects the result
};

// Throws InvalidConfig on out-of-range values.
void validate(const DisseminationConfig& config);

struct ProblemModel {
    std::set<NodeRef> positive_seeds; // excitatory sources; at least one
    std::set<NodeRef> negative_seeds; // inhibitory sources; disjoint from positive
};

// Accumulated energy per node; absent means 0.
struct EnergyLedger {
    std::unordered_map<NodeId, double> energy;

    double value(NodeId id) const {
        auto it = energy.find(id);
        return it == energy.end() ? 0.0 : it->second;
    }

    // Entries sorted by energy descending, ties by (layer, key) ascending.
    std::vector<std::pair<NodeId, double>> sorted_entries(const MultilayerGraph& graph) const;
};

EnergyLedger disseminate(const MultilayerGraph& graph, const ProblemModel& problem,
                         const DisseminationConfig& config);

namespace detail {

// Seeds in canonical node order with polarity attached. The order is shared
// with the oracle and is what makes polarity negation reuse the same random
// stream per seed node.
struct SeedPlan {
    std::vector<NodeId> nodes;
    std::vector<double> sign;          // +1 / -1
    std::vector<uint64_t> particles;   // per seed, after layer multipliers
};

SeedPlan plan_seeds(const MultilayerGraph& graph, const ProblemModel& problem,
                    const DisseminationConfig& config);

// Per-run transition structure with edge-kind multipliers applied (CSR).
struct Transitions {
    std::vector<uint32_t> offset; // node_count + 1
    std::vector<NodeId> target;
    std::vector<double> cumulative; // within each node segment
    std::vector<double> total;      // per node; 0 for dead ends

    bool dead_end(NodeId id) const { return offset[id] == offset[id + 1]; }
};

Transitions build_transitions(const MultilayerGraph& graph, const DisseminationConfig& config);

} // namespace detail

} // namespace bibnet
