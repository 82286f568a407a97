#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace newstraject {

// Clean token sequence for one document. Tokens are lowercase, letters only,
// at least 3 characters, stopword-free and duplicate-free (first kept).
struct PreprocessedDoc {
    std::vector<std::string> tokens;
    std::string joined;  // tokens joined by single spaces

    bool operator==(const PreprocessedDoc&) const = default;
};

using StopwordSet = std::unordered_set<std::string>;

// The bundled frozen English list; data/stopwords_en.txt ships the same words.
const StopwordSet& builtin_stopwords();

// One word per line, UTF-8, '#' starts a comment line.
StopwordSet load_stopwords(const std::string& path);
StopwordSet parse_stopwords(const std::string& content);

// Cleaning chain, in order: delete every character that is neither a letter
// nor whitespace, lowercase, split on whitespace runs, drop stopwords, drop
// repeated tokens keeping the first occurrence, drop tokens shorter than
// 3 characters, join with single spaces.
PreprocessedDoc preprocess(std::string_view text, const StopwordSet& stopwords);

}  // namespace newstraject
