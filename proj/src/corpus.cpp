#include "newstraject/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "newstraject/csv.hpp"
#include "newstraject/errors.hpp"
#include "newstraject/log.hpp"

namespace newstraject {

std::vector<std::string> Taxonomy::ordered_ids() const {
    std::vector<std::string> ids;
    ids.reserve(entries.size());
    for (const auto& [id, def] : entries) ids.push_back(id);
    return ids;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string require_string(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw DataError("corpus line " + std::to_string(line) + ": missing required field \"" +
                        key + "\"");
    if (!it->is_string())
        throw DataError("corpus line " + std::to_string(line) + ": field \"" + key +
                        "\" must be a string");
    return it->get<std::string>();
}

Document parse_document_line(const std::string& line, std::size_t line_no) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("corpus line " + std::to_string(line_no) + ": malformed JSON (" +
                        e.what() + ")");
    }
    if (!obj.is_object())
        throw DataError("corpus line " + std::to_string(line_no) + ": expected a JSON object");

    Document doc;
    doc.id = require_string(obj, "id", line_no);
    if (doc.id.empty())
        throw DataError("corpus line " + std::to_string(line_no) + ": empty document id");
    doc.text = require_string(obj, "text", line_no);

    std::string ts = require_string(obj, "timestamp", line_no);
    auto date = Date::parse(ts);
    if (!date)
        throw DataError("corpus line " + std::to_string(line_no) + ": unparseable timestamp \"" +
                        ts + "\" (expected YYYY-MM-DD)");
    doc.timestamp = *date;

    doc.region = require_string(obj, "region", line_no);
    auto first = doc.region.find_first_not_of(" \t");
    if (first == std::string::npos)
        throw DataError("corpus line " + std::to_string(line_no) + ": region must be non-empty");

    if (auto it = obj.find("labels"); it != obj.end()) {
        if (!it->is_array())
            throw DataError("corpus line " + std::to_string(line_no) +
                            ": field \"labels\" must be an array of strings");
        std::set<std::string> labels;
        for (const auto& item : *it) {
            if (!item.is_string())
                throw DataError("corpus line " + std::to_string(line_no) +
                                ": field \"labels\" must be an array of strings");
            labels.insert(item.get<std::string>());
        }
        doc.labels.assign(labels.begin(), labels.end());
    }
    return doc;
}

}  // namespace

Corpus parse_documents(const std::string& content) {
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::size_t line_no = 0;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Document doc = parse_document_line(line, line_no);
        if (!seen_ids.insert(doc.id).second)
            throw DataError("corpus line " + std::to_string(line_no) + ": duplicate document id \"" +
                            doc.id + "\"");
        if (!corpus.time_span) {
            corpus.time_span = {doc.timestamp, doc.timestamp};
        } else {
            corpus.time_span->first = std::min(corpus.time_span->first, doc.timestamp);
            corpus.time_span->second = std::max(corpus.time_span->second, doc.timestamp);
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

Corpus ingest_documents(const std::string& path, CorpusFormat format) {
    (void)format;  // jsonl is the only wire format
    NT_INFO("ingesting corpus from %s", path.c_str());
    return parse_documents(read_file(path));
}

std::string serialize_documents(const Corpus& corpus) {
    std::string out;
    for (const Document& doc : corpus.documents) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        obj["text"] = doc.text;
        obj["timestamp"] = doc.timestamp.to_iso();
        obj["region"] = doc.region;
        obj["labels"] = doc.labels;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

void write_documents(const Corpus& corpus, const std::string& path) {
    write_file(path, serialize_documents(corpus));
}

Taxonomy parse_taxonomy(const std::string& content) {
    auto rows = csv::parse(content);
    if (rows.empty() || rows[0] != std::vector<std::string>{"label_id", "definition"})
        throw DataError("taxonomy: missing header `label_id,definition`");
    if (rows.size() == 1) throw DataError("taxonomy: no entries (at least one row required)");

    Taxonomy taxonomy;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 2)
            throw DataError("taxonomy row " + std::to_string(i + 1) + ": expected 2 fields, got " +
                            std::to_string(row.size()));
        const std::string& id = row[0];
        const std::string& definition = row[1];
        if (id.empty()) throw DataError("taxonomy row " + std::to_string(i + 1) + ": empty label_id");
        if (definition.empty())
            throw DataError("taxonomy row " + std::to_string(i + 1) + ": empty definition for label " +
                            id);
        if (!taxonomy.entries.emplace(id, definition).second)
            throw DataError("taxonomy row " + std::to_string(i + 1) + ": duplicate label_id " + id);
    }
    return taxonomy;
}

Taxonomy load_taxonomy(const std::string& path) {
    NT_INFO("loading taxonomy from %s", path.c_str());
    return parse_taxonomy(read_file(path));
}

ValidationReport validate_corpus(const Corpus& corpus, const Taxonomy& taxonomy,
                                 std::optional<std::pair<Date, Date>> window) {
    ValidationReport report;
    report.documents = corpus.documents.size();
    for (const Document& doc : corpus.documents) {
        if (!doc.labels.empty()) ++report.labeled;
        for (const std::string& label : doc.labels) {
            if (!taxonomy.contains(label))
                report.issues.push_back({ValidationIssue::Kind::unknown_label, doc.id,
                                         "label \"" + label + "\" not in taxonomy"});
        }
        if (doc.text.empty())
            report.issues.push_back({ValidationIssue::Kind::empty_text, doc.id, "empty text"});
        if (window && (doc.timestamp < window->first || doc.timestamp > window->second))
            report.issues.push_back({ValidationIssue::Kind::out_of_window, doc.id,
                                     "timestamp " + doc.timestamp.to_iso() + " outside window " +
                                         window->first.to_iso() + ".." + window->second.to_iso()});
    }
    return report;
}

std::string format_validation_report(const ValidationReport& report) {
    std::string out;
    out += "documents: " + std::to_string(report.documents) + "\n";
    out += "labeled: " + std::to_string(report.labeled) + "\n";
    out += "issues: " + std::to_string(report.issues.size()) + "\n";
    for (const auto& issue : report.issues) {
        const char* kind = issue.kind == ValidationIssue::Kind::unknown_label ? "unknown-label"
                           : issue.kind == ValidationIssue::Kind::empty_text  ? "empty-text"
                                                                              : "out-of-window";
        out += std::string(kind) + " doc=" + issue.doc_id + ": " + issue.detail + "\n";
    }
    return out;
}

}  // namespace newstraject
