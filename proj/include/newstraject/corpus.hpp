#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newstraject/date.hpp"

namespace newstraject {

// One news article. Labels are normalized to a sorted, duplicate-free list;
// an empty list means the document is unlabeled (inference-only flows).
struct Document {
    std::string id;
    std::string text;
    Date timestamp;
    std::string region;
    std::vector<std::string> labels;

    bool operator==(const Document&) const = default;
};

// Label id -> human-readable definition. Iteration order (ascending id)
// defines the label index order used by the classifier.
struct Taxonomy {
    std::map<std::string, std::string> entries;

    std::size_t size() const { return entries.size(); }
    bool contains(const std::string& id) const { return entries.count(id) > 0; }
    std::vector<std::string> ordered_ids() const;
};

struct Corpus {
    std::vector<Document> documents;  // insertion order preserved
    std::optional<std::pair<Date, Date>> time_span;

    bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { jsonl };

// One JSON object per line: {"id","text","timestamp","region","labels"}.
// Blank lines are skipped; errors carry the 1-based line number.
Corpus ingest_documents(const std::string& path, CorpusFormat format = CorpusFormat::jsonl);
Corpus parse_documents(const std::string& content);

// Canonical serialization; ingest(serialize(c)) == c.
std::string serialize_documents(const Corpus& corpus);
void write_documents(const Corpus& corpus, const std::string& path);

// CSV with header `label_id,definition` (RFC 4180).
Taxonomy load_taxonomy(const std::string& path);
Taxonomy parse_taxonomy(const std::string& content);

struct ValidationIssue {
    enum class Kind { unknown_label, empty_text, out_of_window };
    Kind kind;
    std::string doc_id;
    std::string detail;
};

struct ValidationReport {
    std::size_t documents = 0;
    std::size_t labeled = 0;
    std::vector<ValidationIssue> issues;
};

// Reports unknown label ids, empty-text documents and documents outside the
// optional date window. Never mutates or throws on bad content.
ValidationReport validate_corpus(const Corpus& corpus, const Taxonomy& taxonomy,
                                 std::optional<std::pair<Date, Date>> window = std::nullopt);

std::string format_validation_report(const ValidationReport& report);

// Small file helpers shared by the pipeline stages.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace newstraject
