#include "bibnet/build.hpp"

#include <algorithm>
#include <utility>

namespace bibnet {

namespace {

void add_author_nodes(GraphBuilder& builder, const Corpus& corpus) {
    std::set<AuthorKey> named;
    for (const auto& [id, rec] : corpus.records) {
        for (size_t i = 0; i < rec.authors.size(); ++i) {
            NodeRef author{Layer::Author, rec.authors[i]};
            builder.add_node(author);
            if (i < rec.raw_authors.size() && named.insert(rec.authors[i]).second)
                builder.set_raw_name(author, rec.raw_authors[i]);
        }
    }
}

void add_similarity_edges(GraphBuilder& builder, const JournalMembership& membership) {
    // invert containment; journal lists come out sorted because the outer map is
    std::map<RecordId, std::vector<std::string>> journals_of;
    for (const auto& [journal, papers] : membership)
        for (const auto& p : papers) journals_of[p].push_back(journal);

    std::map<std::pair<std::string, std::string>, double> shared;
    for (const auto& [paper, js] : journals_of)
        for (size_t i = 0; i < js.size(); ++i)
            for (size_t j = i + 1; j < js.size(); ++j)
                shared[{js[i], js[j]}] += 1.0;

    for (const auto& [pair, n] : shared) {
        NodeRef a{Layer::Journal, pair.first};
        NodeRef b{Layer::Journal, pair.second};
        builder.add_edge(a, b, EdgeKind::SimilarJournal, n);
        builder.add_edge(b, a, EdgeKind::SimilarJournal, n);
    }
}

} // namespace

void build_coauthorship_layer(GraphBuilder& builder, const Corpus& corpus) {
    add_author_nodes(builder, corpus);
    for (const auto& [id, rec] : corpus.records) {
        size_t n = rec.authors.size();
        if (n < 2) continue;
        double increment = 1.0 / static_cast<double>(n - 1);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                NodeRef a{Layer::Author, rec.authors[i]};
                NodeRef b{Layer::Author, rec.authors[j]};
                builder.add_edge(a, b, EdgeKind::CoauthoredWith, increment);
                builder.add_edge(b, a, EdgeKind::CoauthoredWith, increment);
            }
        }
    }
}

void build_author_cocitation_layer(GraphBuilder& builder, const Corpus& corpus) {
    add_author_nodes(builder, corpus);
    for (const auto& [id, rec] : corpus.records) {
        // authors are only known for referenced papers present in the corpus
        std::vector<const std::vector<AuthorKey>*> cited;
        for (const auto& r : rec.references) {
            auto it = corpus.records.find(r);
            if (it != corpus.records.end() && !it->second.authors.empty())
                cited.push_back(&it->second.authors);
        }
        // one increment per citing record and unordered author pair, however
        // many cited-paper pairs support it
        std::set<std::pair<AuthorKey, AuthorKey>> pairs;
        for (size_t i = 0; i < cited.size(); ++i)
            for (size_t j = i + 1; j < cited.size(); ++j)
                for (const auto& a : *cited[i])
                    for (const auto& b : *cited[j]) {
                        if (a == b) continue;
                        pairs.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
                    }
        for (const auto& [a, b] : pairs) {
            builder.add_edge({Layer::Author, a}, {Layer::Author, b}, EdgeKind::CoCitedWith, 1.0);
            builder.add_edge({Layer::Author, b}, {Layer::Author, a}, EdgeKind::CoCitedWith, 1.0);
        }
    }
}

void build_citation_layer(GraphBuilder& builder, const Corpus& corpus) {
    for (const auto& [id, rec] : corpus.records) {
        NodeRef paper{Layer::Paper, id};
        builder.add_node(paper);
        if (rec.title) builder.set_title(paper, *rec.title);
    }
    for (const auto& [id, rec] : corpus.records) {
        NodeRef paper{Layer::Paper, id};
        if (!rec.references.empty()) {
            double w = 1.0 / static_cast<double>(rec.references.size());
            for (const auto& r : rec.references) {
                NodeRef target{Layer::Paper, r};
                builder.add_edge(paper, target, EdgeKind::Cites, w);
                builder.add_edge(target, paper, EdgeKind::CitedBy, w);
            }
        }
        for (const auto& c : rec.referenced_by) {
            // an ingested citer's own reference list is authoritative; only
            // unknown citers get the provisional weight-1.0 pair
            if (corpus.records.count(c)) continue;
            NodeRef citer{Layer::Paper, c};
            builder.add_edge(citer, paper, EdgeKind::Cites, 1.0);
            builder.add_edge(paper, citer, EdgeKind::CitedBy, 1.0);
        }
    }
}

JournalMembership build_journal_layer(GraphBuilder& builder, const Corpus& corpus,
                                      const VirtualJournals* virtual_journals,
                                      std::vector<std::string>* warnings) {
    JournalMembership membership;
    for (const auto& [id, rec] : corpus.records) {
        if (!rec.publisher) continue; // pre-prints have no journal
        membership[*rec.publisher].insert(id);
    }
    if (virtual_journals) {
        for (const auto& [label, members] : virtual_journals->members) {
            auto& slot = membership[label]; // the journal node exists even when empty
            for (const auto& rid : members) {
                // runs after the citation layer, so dangling stubs are known paper nodes
                if (!corpus.records.count(rid) && !builder.has_node({Layer::Paper, rid})) {
                    if (warnings)
                        warnings->push_back("unknown virtual journal member '" + rid + "' in '" +
                                            label + "', skipped");
                    continue;
                }
                slot.insert(rid);
            }
        }
    }
    for (const auto& [journal, members] : membership)
        builder.add_node({Layer::Journal, journal});
    add_similarity_edges(builder, membership);
    return membership;
}

void build_vertical_projections(GraphBuilder& builder, const Corpus& corpus,
                                const JournalMembership& membership) {
    for (const auto& [id, rec] : corpus.records) {
        NodeRef paper{Layer::Paper, id};
        builder.add_node(paper);
        for (const auto& a : rec.authors) {
            NodeRef author{Layer::Author, a};
            builder.add_edge(author, paper, EdgeKind::WrotePaper, 1.0);
            builder.add_edge(paper, author, EdgeKind::WrittenBy, 1.0);
        }
    }
    for (const auto& [journal, members] : membership) {
        NodeRef j{Layer::Journal, journal};
        for (const auto& rid : members) {
            NodeRef paper{Layer::Paper, rid};
            builder.add_edge(paper, j, EdgeKind::PublishedIn, 1.0);
            builder.add_edge(j, paper, EdgeKind::ContainsPaper, 1.0);
        }
    }
}

MultilayerGraph build_graph(const Corpus& corpus, const VirtualJournals* virtual_journals,
                            AuthorLayerKind author_layer, std::vector<std::string>* warnings) {
    GraphBuilder builder;
    if (author_layer == AuthorLayerKind::Coauthorship)
        build_coauthorship_layer(builder, corpus);
    else
        build_author_cocitation_layer(builder, corpus);
    build_citation_layer(builder, corpus);
    JournalMembership membership = build_journal_layer(builder, corpus, virtual_journals, warnings);
    build_vertical_projections(builder, corpus, membership);
    return std::move(builder).freeze();
}

MultilayerGraph apply_virtual_journals(const MultilayerGraph& graph,
                                       const VirtualJournals& virtual_journals,
                                       std::vector<std::string>* warnings) {
    GraphBuilder builder = GraphBuilder::from_graph(graph);

    JournalMembership membership;
    for (NodeId id = 0; id < graph.node_count(); ++id) {
        const NodeRef& ref = graph.node(id);
        if (ref.layer != Layer::Journal) continue;
        auto& slot = membership[ref.key];
        for (const Edge& e : graph.out_edges(id))
            if (e.kind == EdgeKind::ContainsPaper) slot.insert(graph.node(e.dst).key);
    }

    for (const auto& [label, members] : virtual_journals.members) {
        auto& slot = membership[label];
        builder.add_node({Layer::Journal, label});
        for (const auto& rid : members) {
            if (!builder.has_node({Layer::Paper, rid})) {
                if (warnings)
                    warnings->push_back("unknown virtual journal member '" + rid + "' in '" +
                                        label + "', skipped");
                continue;
            }
            if (!slot.insert(rid).second) continue; // containment already present
            builder.add_edge({Layer::Paper, rid}, {Layer::Journal, label}, EdgeKind::PublishedIn, 1.0);
            builder.add_edge({Layer::Journal, label}, {Layer::Paper, rid}, EdgeKind::ContainsPaper, 1.0);
        }
    }

    builder.erase_kind(EdgeKind::SimilarJournal);
    add_similarity_edges(builder, membership);
    return std::move(builder).freeze();
}

} // namespace bibnet
