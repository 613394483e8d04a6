#pragma once
// Metadata ingestion: OAI-style <record> parsing and author-name normalization.
//
// Only the elements that feed the network are extracted: the record
// identifier, title, author names, "References" / "Is Referenced By"
// relations, the publisher, and the timestamp. Everything else is ignored.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bibnet/error.hpp"

namespace bibnet {

using RecordId = std::string;  // e.g. "oai:CiteSeerPSU:99914"
using AuthorKey = std::string; // canonical author name, see normalize_author_name

struct OaiRecord {
    RecordId id;
    std::optional<std::string> title;
    std::vector<AuthorKey> authors;       // canonical, duplicates dropped, order kept
    std::vector<std::string> raw_authors; // as written, aligned with authors
    std::vector<RecordId> references;     // outgoing citations, deduplicated, no self
    std::vector<RecordId> referenced_by;  // incoming citations, deduplicated, no self
    std::optional<std::string> publisher; // whitespace-normalized
    std::optional<std::string> timestamp; // informational only

    bool operator==(const OaiRecord&) const = default;
};

struct Corpus {
    // Keyed map makes iteration order canonical regardless of ingest order.
    std::map<RecordId, OaiRecord> records;
    std::vector<std::pair<std::string, std::string>> warnings; // (record id or offset, message)
};

// Trim plus collapse of internal whitespace runs to a single space.
std::string normalize_whitespace(std::string_view text);

// Canonical author identity: trim, collapse whitespace, strip the period from
// single-letter initials ("A." -> "A"), then case-fold. Idempotent.
// Throws EmptyName if nothing is left.
AuthorKey normalize_author_name(std::string_view raw);

// Parse one <record> element. Pure: same text, same record.
// Throws MalformedXml / MissingIdentifier.
OaiRecord parse_record(std::string_view xml_text);

// Scan a stream for <record> elements (a <ListRecords> or other envelope is
// tolerated) and merge them into `corpus`. Per-record failures become
// warnings; duplicate ids are replaced last-write-wins with a warning.
// `source` labels offset-based warnings when a record has no readable id.
void parse_records_into(Corpus& corpus, std::string_view xml_stream,
                        std::string_view source = {});

// parse_records_into over a single stream; throws EmptyCorpus when no record
// could be parsed at all.
Corpus parse_corpus(std::string_view xml_stream);

} // namespace bibnet
