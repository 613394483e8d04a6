#include "bibnet/disseminate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace bibnet {

namespace {

// splitmix64: the particle index is mixed into the master seed to derive one
// independent stream per particle.
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    uint64_t state;

    uint64_t next() {
        state += kGolden;
        return mix64(state);
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

uint64_t particle_stream_seed(uint64_t master, uint64_t particle_index) {
    return mix64(master ^ mix64(particle_index + kGolden));
}

struct Deposit {
    NodeId node;
    double amount;
};

// One particle's walk; deposits are appended in step order.
void simulate_particle(const detail::Transitions& t, NodeId seed, double sign,
                       const DisseminationConfig& cfg, uint64_t particle_index,
                       std::vector<Deposit>& out) {
    SplitMix64 rng{particle_stream_seed(cfg.rng_seed, particle_index)};
    double energy = sign * cfg.initial_energy;
    out.push_back({seed, energy}); // seeds receive the undecayed deposit
    if (std::abs(energy) < cfg.epsilon) return;

    NodeId pos = seed;
    for (uint64_t steps = 0; steps < cfg.max_steps; ++steps) {
        if (t.dead_end(pos)) return;
        uint32_t begin = t.offset[pos];
        uint32_t end = t.offset[pos + 1];
        double r = rng.next_unit() * t.total[pos];
        const double* first = t.cumulative.data() + begin;
        const double* last = t.cumulative.data() + end;
        auto it = std::upper_bound(first, last, r);
        if (it == last) --it; // r can round up to the segment total
        pos = t.target[begin + static_cast<uint32_t>(it - first)];
        energy *= cfg.decay_scalar;
        if (energy != 0.0) out.push_back({pos, energy});
        if (std::abs(energy) < cfg.epsilon) return;
    }
}

} // namespace

void validate(const DisseminationConfig& config) {
    if (config.particles_per_seed == 0)
        fail(Errc::InvalidConfig, "particles_per_seed must be positive");
    if (!(config.initial_energy > 0.0) || !std::isfinite(config.initial_energy))
        fail(Errc::InvalidConfig, "initial_energy must be positive and finite");
    if (!(config.decay_scalar >= 0.0 && config.decay_scalar <= 1.0))
        fail(Errc::InvalidConfig, "decay_scalar must lie in [0, 1]");
    if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon))
        fail(Errc::InvalidConfig, "epsilon must be positive");
    if (config.max_steps == 0) fail(Errc::InvalidConfig, "max_steps must be positive");
    for (double m : config.edge_kind_multipliers)
        if (!(m >= 0.0) || !std::isfinite(m))
            fail(Errc::InvalidConfig, "edge kind multipliers must be non-negative");
    for (double m : config.seed_layer_multipliers)
        if (!(m >= 0.0) || !std::isfinite(m))
            fail(Errc::InvalidConfig, "seed layer multipliers must be non-negative");
}

std::vector<std::pair<NodeId, double>> EnergyLedger::sorted_entries(
    const MultilayerGraph& graph) const {
    std::vector<std::pair<NodeId, double>> entries(energy.begin(), energy.end());
    std::sort(entries.begin(), entries.end(), [&graph](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return graph.node(a.first) < graph.node(b.first);
    });
    return entries;
}

namespace detail {

SeedPlan plan_seeds(const MultilayerGraph& graph, const ProblemModel& problem,
                    const DisseminationConfig& config) {
    if (problem.positive_seeds.empty())
        fail(Errc::InvalidConfig, "problem model needs at least one positive seed");
    for (const NodeRef& ref : problem.positive_seeds)
        if (problem.negative_seeds.count(ref))
            fail(Errc::InvalidConfig, "seed '" + ref.key + "' is both positive and negative");

    // canonical (layer, key) order across both polarities
    std::map<NodeRef, double> ordered;
    for (const NodeRef& ref : problem.positive_seeds) ordered.emplace(ref, 1.0);
    for (const NodeRef& ref : problem.negative_seeds) ordered.emplace(ref, -1.0);

    SeedPlan plan;
    for (const auto& [ref, sign] : ordered) {
        NodeId id = graph.find(ref);
        if (id == kInvalidNode)
            fail(Errc::SeedNotInGraph, "seed " + std::string(layer_name(ref.layer)) + " '" +
                                           ref.key + "' is not in the graph");
        double scale = config.seed_layer_multipliers[static_cast<int>(ref.layer)];
        auto count = static_cast<uint64_t>(
            std::llround(static_cast<double>(config.particles_per_seed) * scale));
        plan.nodes.push_back(id);
        plan.sign.push_back(sign);
        plan.particles.push_back(count);
    }
    return plan;
}

Transitions build_transitions(const MultilayerGraph& graph, const DisseminationConfig& config) {
    Transitions t;
    size_t n = graph.node_count();
    t.offset.assign(n + 1, 0);
    t.total.assign(n, 0.0);
    for (NodeId id = 0; id < n; ++id) {
        t.offset[id] = static_cast<uint32_t>(t.target.size());
        double cum = 0.0;
        for (const Edge& e : graph.out_edges(id)) {
            double w = e.weight * config.edge_kind_multipliers[static_cast<int>(e.kind)];
            if (w <= 0.0) continue;
            cum += w;
            t.target.push_back(e.dst);
            t.cumulative.push_back(cum);
        }
        t.total[id] = cum;
    }
    t.offset[n] = static_cast<uint32_t>(t.target.size());
    return t;
}

} // namespace detail

EnergyLedger disseminate(const MultilayerGraph& graph, const ProblemModel& problem,
                         const DisseminationConfig& config) {
    validate(config);
    detail::SeedPlan plan = detail::plan_seeds(graph, problem, config);
    detail::Transitions transitions = detail::build_transitions(graph, config);

    // flatten (seed, repeat) into global particle indices
    struct Job {
        NodeId seed;
        double sign;
    };
    std::vector<Job> jobs;
    for (size_t s = 0; s < plan.nodes.size(); ++s)
        for (uint64_t k = 0; k < plan.particles[s]; ++k)
            jobs.push_back({plan.nodes[s], plan.sign[s]});

    EnergyLedger ledger;
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = config.worker_threads ? config.worker_threads : (hw ? hw : 1);

    // Windows bound memory; merging window-by-window in particle order keeps
    // the reduction identical to a fully serial run.
    constexpr size_t kWindow = 8192;
    std::vector<std::vector<Deposit>> partial(std::min(jobs.size(), kWindow));
    for (size_t base = 0; base < jobs.size(); base += kWindow) {
        size_t count = std::min(kWindow, jobs.size() - base);
        if (workers <= 1 || count < 256) {
            for (size_t i = 0; i < count; ++i) {
                partial[i].clear();
                simulate_particle(transitions, jobs[base + i].seed, jobs[base + i].sign, config,
                                  base + i, partial[i]);
            }
        } else {
            std::atomic<size_t> cursor{0};
            auto work = [&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= count) return;
                    partial[i].clear();
                    simulate_particle(transitions, jobs[base + i].seed, jobs[base + i].sign,
                                      config, base + i, partial[i]);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        for (size_t i = 0; i < count; ++i)
            for (const Deposit& d : partial[i]) ledger.energy[d.node] += d.amount;
    }
    return ledger;
}

} // namespace bibnet
