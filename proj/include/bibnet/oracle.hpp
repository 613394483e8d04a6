#pragma once
// Dense-expectation twin of the particle engine, used as an independent
// check and as the deterministic `--oracle` query engine on small graphs.

#include "bibnet/disseminate.hpp"

namespace bibnet {

// Dense n x n arithmetic; refuse anything bigger.
constexpr size_t kOracleMaxNodes = 4096;

// Expected ledger of disseminate(): with transition matrix T (rows are the
// reweighted out-distributions, dead-end rows zero) and seed vector s, the
// result is s + sum over t of m_t * (s T^t), where the decay coefficients
// m_t follow the engine's own floating-point product and the sum stops at
// the engine's retirement step (first m_t < epsilon, capped at max_steps).
// Positive and negative seeds are propagated separately and summed at the
// end, matching particles that never interact in flight.
EnergyLedger expected_energy_oracle(const MultilayerGraph& graph, const ProblemModel& problem,
                                    const DisseminationConfig& config);

} // namespace bibnet
