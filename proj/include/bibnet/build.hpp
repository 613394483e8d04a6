#pragma once
// Builders that turn a Corpus into the three network layers and their
// vertical projections.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bibnet/graph.hpp"
#include "bibnet/oai.hpp"

namespace bibnet {

enum class AuthorLayerKind { Coauthorship, Cocitation };

// Declared paper groupings acting as journal nodes; similarity between two
// journals is the number of member papers they share.
struct VirtualJournals {
    std::map<std::string, std::set<RecordId>> members; // label -> record ids
};

using JournalMembership = std::map<std::string, std::set<RecordId>>;

// Author nodes for every record author; for each record with n >= 2 authors,
// every ordered pair gains 1/(n-1) of CoauthoredWith weight.
void build_coauthorship_layer(GraphBuilder& builder, const Corpus& corpus);

// Co-citation variant of the author layer: authors of two different papers
// referenced by the same record gain 1 of CoCitedWith weight per such record.
void build_author_cocitation_layer(GraphBuilder& builder, const Corpus& corpus);

// Paper nodes for every record plus stubs for referenced / citing papers.
// Each record with n references adds Cites (feedforward) and CitedBy
// (feedback) edges of weight 1/n per reference. "Is Referenced By" entries
// whose citing record is not in the corpus add a provisional pair at weight
// 1.0; ingested citers are covered by their own reference lists.
void build_citation_layer(GraphBuilder& builder, const Corpus& corpus);

// Journal nodes from publishers and declared virtual journals; SimilarJournal
// edges weighted by shared-paper count. Returns the full containment map
// (journal key -> member papers) for the vertical step. Unknown virtual
// journal members are skipped with a warning.
JournalMembership build_journal_layer(GraphBuilder& builder, const Corpus& corpus,
                                      const VirtualJournals* virtual_journals,
                                      std::vector<std::string>* warnings);

// WrotePaper/WrittenBy for every record author and PublishedIn/ContainsPaper
// for every containment, all at weight 1.0 per relationship.
void build_vertical_projections(GraphBuilder& builder, const Corpus& corpus,
                                const JournalMembership& membership);

// Full pipeline over a corpus.
MultilayerGraph build_graph(const Corpus& corpus,
                            const VirtualJournals* virtual_journals = nullptr,
                            AuthorLayerKind author_layer = AuthorLayerKind::Coauthorship,
                            std::vector<std::string>* warnings = nullptr);

// Add virtual-journal declarations to an existing graph: creates the journal
// nodes and containment edges, then recomputes every SimilarJournal weight
// from the resulting containment relation.
MultilayerGraph apply_virtual_journals(const MultilayerGraph& graph,
                                       const VirtualJournals& virtual_journals,
                                       std::vector<std::string>* warnings);

} // namespace bibnet
