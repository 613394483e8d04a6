#include "bibnet/graph.hpp"

#include <algorithm>
#include <cmath>

namespace bibnet {

namespace {

struct KindInfo {
    Layer src;
    Layer dst;
    std::string_view name;
};

constexpr KindInfo kKinds[kEdgeKindCount] = {
    {Layer::Author, Layer::Author, "coauthored-with"},
    {Layer::Author, Layer::Author, "co-cited-with"},
    {Layer::Paper, Layer::Paper, "cites"},
    {Layer::Paper, Layer::Paper, "cited-by"},
    {Layer::Journal, Layer::Journal, "similar-journal"},
    {Layer::Author, Layer::Paper, "wrote-paper"},
    {Layer::Paper, Layer::Author, "written-by"},
    {Layer::Paper, Layer::Journal, "published-in"},
    {Layer::Journal, Layer::Paper, "contains-paper"},
};

constexpr std::string_view kLayerNames[kLayerCount] = {"author", "paper", "journal"};

} // namespace

Layer edge_src_layer(EdgeKind kind) { return kKinds[static_cast<int>(kind)].src; }
Layer edge_dst_layer(EdgeKind kind) { return kKinds[static_cast<int>(kind)].dst; }

std::string_view layer_name(Layer layer) { return kLayerNames[static_cast<int>(layer)]; }
std::string_view edge_kind_name(EdgeKind kind) { return kKinds[static_cast<int>(kind)].name; }

std::optional<Layer> layer_from_name(std::string_view name) {
    for (int i = 0; i < kLayerCount; ++i)
        if (kLayerNames[i] == name) return static_cast<Layer>(i);
    return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from_name(std::string_view name) {
    for (int i = 0; i < kEdgeKindCount; ++i)
        if (kKinds[i].name == name) return static_cast<EdgeKind>(i);
    return std::nullopt;
}

// --- MultilayerGraph --------------------------------------------------------

size_t MultilayerGraph::edge_count() const {
    size_t n = 0;
    for (const auto& adj : adjacency_) n += adj.size();
    return n;
}

NodeId MultilayerGraph::find(const NodeRef& ref) const {
    auto it = index_.find(ref);
    return it == index_.end() ? kInvalidNode : it->second;
}

NodeId MultilayerGraph::require(const NodeRef& ref) const {
    NodeId id = find(ref);
    if (id == kInvalidNode)
        fail(Errc::UnknownNode,
             "unknown " + std::string(layer_name(ref.layer)) + " node '" + ref.key + "'");
    return id;
}

const NodeDisplay* MultilayerGraph::display(NodeId id) const {
    auto it = display_.find(id);
    return it == display_.end() ? nullptr : &it->second;
}

std::vector<std::pair<NodeId, double>> MultilayerGraph::out_distribution(NodeId id) const {
    std::vector<std::pair<NodeId, double>> dist;
    const auto& adj = adjacency_[id];
    if (adj.empty()) return dist;
    double total = out_weight_[id];
    dist.reserve(adj.size());
    for (const Edge& e : adj) dist.emplace_back(e.dst, e.weight / total);
    return dist;
}

std::vector<std::pair<NodeRef, double>> MultilayerGraph::out_distribution(const NodeRef& ref) const {
    std::vector<std::pair<NodeRef, double>> dist;
    for (const auto& [id, p] : out_distribution(require(ref))) dist.emplace_back(nodes_[id], p);
    return dist;
}

// --- GraphBuilder -----------------------------------------------------------

GraphBuilder GraphBuilder::from_graph(const MultilayerGraph& graph) {
    GraphBuilder b;
    b.nodes_ = graph.nodes_;
    b.index_ = graph.index_;
    b.display_ = graph.display_;
    for (NodeId src = 0; src < graph.nodes_.size(); ++src)
        for (const Edge& e : graph.adjacency_[src])
            b.edges_[{src, e.dst, e.kind}] = e.weight;
    return b;
}

NodeId GraphBuilder::intern(const NodeRef& ref) {
    auto [it, inserted] = index_.try_emplace(ref, static_cast<NodeId>(nodes_.size()));
    if (inserted) nodes_.push_back(ref);
    return it->second;
}

NodeId GraphBuilder::add_node(const NodeRef& ref) { return intern(ref); }

bool GraphBuilder::has_node(const NodeRef& ref) const { return index_.count(ref) != 0; }

void GraphBuilder::add_edge(const NodeRef& src, const NodeRef& dst, EdgeKind kind, double weight) {
    if (src.layer != edge_src_layer(kind) || dst.layer != edge_dst_layer(kind))
        fail(Errc::InvalidConfig, std::string("edge kind ") + std::string(edge_kind_name(kind)) +
                                      " does not connect " + std::string(layer_name(src.layer)) +
                                      " to " + std::string(layer_name(dst.layer)));
    if (!(weight > 0.0) || !std::isfinite(weight))
        fail(Errc::InvalidConfig, "edge weight must be positive and finite");
    NodeId s = intern(src);
    NodeId d = intern(dst);
    edges_[{s, d, kind}] += weight;
}

void GraphBuilder::erase_kind(EdgeKind kind) {
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (std::get<2>(it->first) == kind)
            it = edges_.erase(it);
        else
            ++it;
    }
}

void GraphBuilder::set_title(const NodeRef& ref, std::string title) {
    display_[intern(ref)].title = std::move(title);
}

void GraphBuilder::set_raw_name(const NodeRef& ref, std::string raw_name) {
    display_[intern(ref)].raw_name = std::move(raw_name);
}

MultilayerGraph GraphBuilder::freeze() && {
    MultilayerGraph g;
    g.nodes_ = std::move(nodes_);
    g.index_ = std::move(index_);
    g.display_ = std::move(display_);
    g.adjacency_.assign(g.nodes_.size(), {});
    g.out_weight_.assign(g.nodes_.size(), 0.0);

    for (const auto& [key, weight] : edges_) {
        auto [src, dst, kind] = key;
        g.adjacency_[src].push_back(Edge{dst, kind, weight});
    }
    // canonical adjacency order: (dst layer, dst key, kind)
    for (NodeId id = 0; id < g.nodes_.size(); ++id) {
        auto& adj = g.adjacency_[id];
        std::sort(adj.begin(), adj.end(), [&g](const Edge& a, const Edge& b) {
            const NodeRef& ra = g.nodes_[a.dst];
            const NodeRef& rb = g.nodes_[b.dst];
            if (ra != rb) return ra < rb;
            return a.kind < b.kind;
        });
        double total = 0.0;
        for (const Edge& e : adj) total += e.weight;
        g.out_weight_[id] = total;
    }

    g.canonical_.reserve(g.nodes_.size());
    for (const auto& [ref, id] : g.index_) g.canonical_.push_back(id);
    return g;
}

} // namespace bibnet
