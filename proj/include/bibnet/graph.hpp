#pragma once
// The three-layer author/paper/journal network.
//
// A GraphBuilder accumulates nodes and weighted edges; freeze() turns it into
// an immutable MultilayerGraph whose adjacency is canonically sorted, safe
// for unlimited concurrent readers.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bibnet/error.hpp"

namespace bibnet {

enum class Layer : uint8_t { Author = 0, Paper = 1, Journal = 2 };
constexpr int kLayerCount = 3;

enum class EdgeKind : uint8_t {
    CoauthoredWith = 0, // Author  -> Author   lateral
    CoCitedWith,        // Author  -> Author   lateral (co-citation variant)
    Cites,              // Paper   -> Paper    feedforward
    CitedBy,            // Paper   -> Paper    feedback
    SimilarJournal,     // Journal -> Journal  lateral
    WrotePaper,         // Author  -> Paper
    WrittenBy,          // Paper   -> Author
    PublishedIn,        // Paper   -> Journal
    ContainsPaper,      // Journal -> Paper
};
constexpr int kEdgeKindCount = 9;

Layer edge_src_layer(EdgeKind kind);
Layer edge_dst_layer(EdgeKind kind);

std::string_view layer_name(Layer layer);       // "author" | "paper" | "journal"
std::string_view edge_kind_name(EdgeKind kind); // "coauthored-with" | ...
std::optional<Layer> layer_from_name(std::string_view name);
std::optional<EdgeKind> edge_kind_from_name(std::string_view name);

// (layer, key) uniquely identifies a node; ordering is the canonical order
// used everywhere (persistence, seeding, tie-breaks).
struct NodeRef {
    Layer layer;
    std::string key;

    auto operator<=>(const NodeRef&) const = default;
};

using NodeId = uint32_t;
constexpr NodeId kInvalidNode = UINT32_MAX;

struct Edge {
    NodeId dst;
    EdgeKind kind;
    double weight; // > 0, finite
};

// Display-only provenance carried from the corpus; not persisted.
struct NodeDisplay {
    std::string title;    // papers
    std::string raw_name; // authors
};

class MultilayerGraph {
public:
    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const;

    NodeId find(const NodeRef& ref) const; // kInvalidNode when absent
    NodeId require(const NodeRef& ref) const;
    bool contains(const NodeRef& ref) const { return find(ref) != kInvalidNode; }

    const NodeRef& node(NodeId id) const { return nodes_[id]; }
    const std::vector<Edge>& out_edges(NodeId id) const { return adjacency_[id]; }
    double out_weight(NodeId id) const { return out_weight_[id]; }

    // All node ids in (layer, key) order.
    const std::vector<NodeId>& canonical_order() const { return canonical_; }

    const NodeDisplay* display(NodeId id) const;

    // Probabilities proportional to outgoing edge weight over ALL edge kinds,
    // normalized to 1. Empty when the node has no outgoing edges.
    std::vector<std::pair<NodeId, double>> out_distribution(NodeId id) const;
    std::vector<std::pair<NodeRef, double>> out_distribution(const NodeRef& ref) const;

private:
    friend class GraphBuilder;

    std::vector<NodeRef> nodes_;
    std::vector<std::vector<Edge>> adjacency_;
    std::vector<double> out_weight_;
    std::map<NodeRef, NodeId> index_;
    std::vector<NodeId> canonical_;
    std::map<NodeId, NodeDisplay> display_;
};

class GraphBuilder {
public:
    GraphBuilder() = default;

    // Re-open a frozen graph for modification (used by the rebuild path).
    static GraphBuilder from_graph(const MultilayerGraph& graph);

    NodeId add_node(const NodeRef& ref); // idempotent
    bool has_node(const NodeRef& ref) const;

    // Accumulates onto any existing (src, dst, kind) edge. Weight must be
    // positive and finite; layers must match the kind.
    void add_edge(const NodeRef& src, const NodeRef& dst, EdgeKind kind, double weight);

    void erase_kind(EdgeKind kind);

    void set_title(const NodeRef& ref, std::string title);
    void set_raw_name(const NodeRef& ref, std::string raw_name);

    MultilayerGraph freeze() &&;

private:
    NodeId intern(const NodeRef& ref);

    std::map<NodeRef, NodeId> index_;
    std::vector<NodeRef> nodes_;
    std::map<std::tuple<NodeId, NodeId, EdgeKind>, double> edges_;
    std::map<NodeId, NodeDisplay> display_;
};

} // namespace bibnet
