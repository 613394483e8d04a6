#include "bibnet/oai.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace bibnet {

namespace {

// ---------------------------------------------------------------------------
// Minimal XML subset scanner: elements, attributes, self-closing tags,
// comments, processing instructions, CDATA, predefined + numeric character
// references. Open/close tags are matched by LOCAL name: harvested metadata
// dumps mix namespace prefixes on the same element (e.g. `oi_citeseer:` vs
// `oai_citeseer:` in CiteSeer records), and rejecting those loses records.
// ---------------------------------------------------------------------------

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' || c == '.';
}

std::string_view local_of(std::string_view qualified) {
    size_t colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string decode_entities(std::string_view s) {
    if (s.find('&') == std::string_view::npos) return std::string(s);
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        size_t semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 12) {
            out += s[i++];
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") {
            out += '&';
        } else if (ent == "lt") {
            out += '<';
        } else if (ent == "gt") {
            out += '>';
        } else if (ent == "quot") {
            out += '"';
        } else if (ent == "apos") {
            out += '\'';
        } else if (ent.size() > 1 && ent[0] == '#') {
            uint32_t cp = 0;
            std::from_chars_result r{};
            if (ent[1] == 'x' || ent[1] == 'X')
                r = std::from_chars(ent.data() + 2, ent.data() + ent.size(), cp, 16);
            else
                r = std::from_chars(ent.data() + 1, ent.data() + ent.size(), cp, 10);
            if (r.ec != std::errc() || r.ptr != ent.data() + ent.size() || cp > 0x10FFFF) {
                out += s[i++]; // bad reference, keep literal
                continue;
            }
            append_utf8(out, cp);
        } else {
            out += s[i++]; // unknown entity, keep literal
            continue;
        }
        i = semi + 1;
    }
    return out;
}

struct XmlElement {
    std::string name;  // qualified, as written
    std::string local; // after the last ':'
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlElement> children;
    std::string text; // concatenated character data, entity-decoded

    const XmlElement* child(std::string_view local_name) const {
        for (const auto& c : children)
            if (c.local == local_name) return &c;
        return nullptr;
    }

    std::string_view attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key || local_of(k) == key) return v;
        return {};
    }
};

struct Scanner {
    std::string_view text;
    size_t pos = 0;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    bool at(std::string_view s) const { return text.substr(pos, s.size()) == s; }

    [[noreturn]] void err(const std::string& what) const {
        fail(Errc::MalformedXml, what + " at offset " + std::to_string(pos));
    }

    void skip_ws() {
        while (!eof() && is_ws(peek())) ++pos;
    }

    std::string read_name() {
        size_t start = pos;
        while (!eof() && is_name_char(peek())) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    void skip_until(std::string_view terminator, const char* what) {
        size_t end = text.find(terminator, pos);
        if (end == std::string_view::npos) err(std::string("unterminated ") + what);
        pos = end + terminator.size();
    }
};

XmlElement parse_element(Scanner& sc) {
    if (sc.eof() || sc.peek() != '<') sc.err("expected '<'");
    ++sc.pos;
    XmlElement el;
    el.name = sc.read_name();
    if (el.name.empty()) sc.err("empty tag name");
    el.local = std::string(local_of(el.name));

    for (;;) {
        sc.skip_ws();
        if (sc.eof()) sc.err("unterminated tag <" + el.name + ">");
        if (sc.at("/>")) {
            sc.pos += 2;
            return el;
        }
        if (sc.peek() == '>') {
            ++sc.pos;
            break;
        }
        std::string aname = sc.read_name();
        if (aname.empty()) sc.err("malformed attribute in <" + el.name + ">");
        sc.skip_ws();
        if (sc.eof() || sc.peek() != '=') sc.err("attribute '" + aname + "' has no value");
        ++sc.pos;
        sc.skip_ws();
        if (sc.eof() || (sc.peek() != '"' && sc.peek() != '\''))
            sc.err("attribute '" + aname + "' value is not quoted");
        char quote = sc.peek();
        ++sc.pos;
        size_t start = sc.pos;
        while (!sc.eof() && sc.peek() != quote) ++sc.pos;
        if (sc.eof()) sc.err("unterminated attribute value");
        el.attrs.emplace_back(std::move(aname),
                              decode_entities(sc.text.substr(start, sc.pos - start)));
        ++sc.pos;
    }

    for (;;) {
        if (sc.eof()) sc.err("unterminated element <" + el.name + ">");
        if (sc.peek() != '<') {
            size_t start = sc.pos;
            while (!sc.eof() && sc.peek() != '<') ++sc.pos;
            el.text += decode_entities(sc.text.substr(start, sc.pos - start));
            continue;
        }
        if (sc.at("</")) {
            sc.pos += 2;
            std::string cname = sc.read_name();
            sc.skip_ws();
            if (sc.eof() || sc.peek() != '>') sc.err("malformed closing tag </" + cname + ">");
            ++sc.pos;
            if (local_of(cname) != el.local)
                sc.err("closing tag </" + cname + "> does not match <" + el.name + ">");
            return el;
        }
        if (sc.at("<!--")) {
            sc.pos += 4;
            sc.skip_until("-->", "comment");
            continue;
        }
        if (sc.at("<![CDATA[")) {
            sc.pos += 9;
            size_t end = sc.text.find("]]>", sc.pos);
            if (end == std::string_view::npos) sc.err("unterminated CDATA section");
            el.text.append(sc.text.substr(sc.pos, end - sc.pos));
            sc.pos = end + 3;
            continue;
        }
        if (sc.at("<?")) {
            sc.pos += 2;
            sc.skip_until("?>", "processing instruction");
            continue;
        }
        if (sc.at("<!")) {
            sc.pos += 2;
            sc.skip_until(">", "declaration");
            continue;
        }
        el.children.push_back(parse_element(sc));
    }
}

void skip_prolog(Scanner& sc) {
    for (;;) {
        sc.skip_ws();
        if (sc.at("<?")) {
            sc.pos += 2;
            sc.skip_until("?>", "processing instruction");
        } else if (sc.at("<!--")) {
            sc.pos += 4;
            sc.skip_until("-->", "comment");
        } else if (sc.at("<!")) {
            sc.pos += 2;
            sc.skip_until(">", "declaration");
        } else {
            return;
        }
    }
}

std::string trimmed(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// Pull title/author/relation/publisher out of the record subtree. The header
// is handled separately so <dc:identifier> (a URL) can never be mistaken for
// the record id.
void extract_metadata(const XmlElement& el, OaiRecord& rec) {
    for (const auto& c : el.children) {
        if (c.local == "header") continue;
        if (c.local == "title") {
            if (!rec.title) {
                std::string t = normalize_whitespace(c.text);
                if (!t.empty()) rec.title = std::move(t);
            }
        } else if (c.local == "author") {
            std::string raw = trimmed(c.attr("name"));
            if (!raw.empty()) rec.raw_authors.push_back(std::move(raw));
        } else if (c.local == "relation") {
            std::string_view type = c.attr("type");
            if (type != "References" && type != "Is Referenced By") continue;
            auto& out = (type == "References") ? rec.references : rec.referenced_by;
            for (const auto& u : c.children) {
                if (u.local != "uri") continue;
                std::string uri = trimmed(u.text);
                if (!uri.empty()) out.push_back(std::move(uri));
            }
        } else if (c.local == "publisher") {
            if (!rec.publisher) {
                std::string p = normalize_whitespace(c.text);
                if (!p.empty()) rec.publisher = std::move(p);
            }
        } else {
            extract_metadata(c, rec);
        }
    }
}

void dedupe_ids(std::vector<RecordId>& ids, const RecordId& self) {
    std::set<RecordId> seen;
    std::vector<RecordId> kept;
    kept.reserve(ids.size());
    for (auto& id : ids) {
        if (id == self) continue; // self-citations dropped
        if (seen.insert(id).second) kept.push_back(std::move(id));
    }
    ids = std::move(kept);
}

OaiRecord extract_record(const XmlElement& root) {
    OaiRecord rec;
    const XmlElement* header = root.child("header");
    const XmlElement* ident = header ? header->child("identifier") : root.child("identifier");
    if (!ident) fail(Errc::MissingIdentifier, "record has no <identifier>");
    rec.id = trimmed(ident->text);
    if (rec.id.empty()) fail(Errc::MissingIdentifier, "record <identifier> is empty");
    if (header) {
        if (const XmlElement* ts = header->child("timestamp")) {
            std::string t = trimmed(ts->text);
            if (!t.empty()) rec.timestamp = std::move(t);
        }
    }
    extract_metadata(root, rec);

    dedupe_ids(rec.references, rec.id);
    dedupe_ids(rec.referenced_by, rec.id);

    // canonicalize authors, dropping duplicates (first raw spelling wins)
    std::vector<AuthorKey> keys;
    std::vector<std::string> raws;
    std::set<AuthorKey> seen;
    for (auto& raw : rec.raw_authors) {
        AuthorKey key = normalize_author_name(raw);
        if (!seen.insert(key).second) continue;
        keys.push_back(std::move(key));
        raws.push_back(std::move(raw));
    }
    rec.authors = std::move(keys);
    rec.raw_authors = std::move(raws);
    return rec;
}

bool record_starts_at(std::string_view stream, size_t p) {
    if (stream.compare(p, 7, "<record") != 0) return false;
    if (p + 7 >= stream.size()) return false;
    char c = stream[p + 7];
    return c == '>' || c == '/' || is_ws(c);
}

} // namespace

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_gap = false;
    for (char ch : text) {
        if (is_ws(ch)) {
            pending_gap = !out.empty();
            continue;
        }
        if (pending_gap) out += ' ';
        pending_gap = false;
        out += ch;
    }
    return out;
}

AuthorKey normalize_author_name(std::string_view raw) {
    std::string collapsed = normalize_whitespace(raw);
    if (collapsed.empty()) fail(Errc::EmptyName, "author name is empty");
    std::string out;
    out.reserve(collapsed.size());
    std::string_view cv = collapsed;
    size_t i = 0;
    while (i <= cv.size()) {
        size_t end = cv.find(' ', i);
        if (end == std::string_view::npos) end = cv.size();
        std::string_view tok = cv.substr(i, end - i);
        if (!out.empty()) out += ' ';
        if (tok.size() == 2 && std::isalpha(static_cast<unsigned char>(tok[0])) && tok[1] == '.')
            out += tok[0]; // initial: "A." -> "A"
        else
            out.append(tok);
        if (end == cv.size()) break;
        i = end + 1;
    }
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

OaiRecord parse_record(std::string_view xml_text) {
    Scanner sc{xml_text};
    skip_prolog(sc);
    if (sc.eof() || sc.peek() != '<') sc.err("no element found");
    XmlElement root = parse_element(sc);
    if (root.local != "record")
        fail(Errc::MalformedXml, "expected a <record> element, got <" + root.name + ">");
    return extract_record(root);
}

void parse_records_into(Corpus& corpus, std::string_view xml_stream, std::string_view source) {
    size_t pos = 0;
    while (pos < xml_stream.size()) {
        size_t lt = xml_stream.find('<', pos);
        if (lt == std::string_view::npos) break;
        if (xml_stream.compare(lt, 4, "<!--") == 0) {
            size_t end = xml_stream.find("-->", lt);
            pos = (end == std::string_view::npos) ? xml_stream.size() : end + 3;
            continue;
        }
        if (!record_starts_at(xml_stream, lt)) {
            pos = lt + 1;
            continue;
        }
        Scanner sc{xml_stream, lt};
        try {
            XmlElement el = parse_element(sc);
            OaiRecord rec = extract_record(el);
            auto it = corpus.records.find(rec.id);
            if (it != corpus.records.end()) {
                corpus.warnings.emplace_back(rec.id, "duplicate record id, replacing earlier record");
                it->second = std::move(rec);
            } else {
                corpus.records.emplace(rec.id, std::move(rec));
            }
            pos = sc.pos;
        } catch (const Error& e) {
            std::string where = source.empty() ? std::string() : std::string(source) + ":";
            where += "offset:" + std::to_string(lt);
            corpus.warnings.emplace_back(std::move(where), e.what());
            pos = lt + 1;
        }
    }
}

Corpus parse_corpus(std::string_view xml_stream) {
    Corpus corpus;
    parse_records_into(corpus, xml_stream);
    if (corpus.records.empty())
        fail(Errc::EmptyCorpus, "no parseable <record> elements in input");
    return corpus;
}

} // namespace bibnet
