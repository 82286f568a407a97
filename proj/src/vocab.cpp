#include "newstraject/vocab.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "newstraject/corpus.hpp"

namespace newstraject {

Vocabulary Vocabulary::build(const std::vector<PreprocessedDoc>& docs, std::size_t max_size) {
    if (max_size < 3) throw DataError("vocabulary max_size must be at least 3");

    std::map<std::string, std::size_t> freq;  // ordered map gives the lexicographic tiebreak
    for (const auto& doc : docs)
        for (const auto& token : doc.tokens) ++freq[token];

    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    Vocabulary vocab;
    std::size_t keep = std::min(ranked.size(), max_size - 2);
    vocab.index_to_token_.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        vocab.token_to_index_.emplace(ranked[i].first, static_cast<std::int32_t>(i + 2));
        vocab.index_to_token_.push_back(ranked[i].first);
    }
    return vocab;
}

const std::string& Vocabulary::token_at(std::int32_t index) const {
    if (index < 2 || static_cast<std::size_t>(index - 2) >= index_to_token_.size())
        throw DataError("vocabulary index out of range: " + std::to_string(index));
    return index_to_token_[static_cast<std::size_t>(index - 2)];
}

std::string Vocabulary::serialize(int seq_len) const {
    std::string out = "#pad=0 oov=1 L=" + std::to_string(seq_len) + "\n";
    for (std::size_t i = 0; i < index_to_token_.size(); ++i)
        out += index_to_token_[i] + "\t" + std::to_string(i + 2) + "\n";
    return out;
}

Vocabulary Vocabulary::deserialize(const std::string& content, int* seq_len) {
    Vocabulary vocab;
    std::size_t pos = content.find('\n');
    if (pos == std::string::npos) throw DataError("vocabulary file: missing header line");
    std::string header = content.substr(0, pos);
    int parsed_len = 0;
    if (std::sscanf(header.c_str(), "#pad=0 oov=1 L=%d", &parsed_len) != 1 || parsed_len < 1)
        throw DataError("vocabulary file: bad header \"" + header + "\"");
    if (seq_len != nullptr) *seq_len = parsed_len;

    std::size_t line_no = 1;
    std::size_t start = pos + 1;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        ++line_no;
        std::string line = content.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("vocabulary line " + std::to_string(line_no) + ": missing tab");
        std::string token = line.substr(0, tab);
        long index = std::stol(line.substr(tab + 1));
        if (index != static_cast<long>(vocab.index_to_token_.size() + 2))
            throw DataError("vocabulary line " + std::to_string(line_no) + ": out-of-order index");
        vocab.token_to_index_.emplace(token, static_cast<std::int32_t>(index));
        vocab.index_to_token_.push_back(std::move(token));
    }
    return vocab;
}

void Vocabulary::save(const std::string& path, int seq_len) const {
    write_file(path, serialize(seq_len));
}

Vocabulary Vocabulary::load(const std::string& path, int* seq_len) {
    return deserialize(read_file(path), seq_len);
}

std::vector<std::int32_t> encode_pad(const Vocabulary& vocab, const PreprocessedDoc& doc,
                                     int seq_len) {
    if (seq_len < 1) throw DataError("sequence length must be at least 1");
    std::vector<std::int32_t> indices(static_cast<std::size_t>(seq_len), Vocabulary::kPad);
    std::size_t n = std::min(doc.tokens.size(), static_cast<std::size_t>(seq_len));
    for (std::size_t i = 0; i < n; ++i) indices[i] = vocab.index_of(doc.tokens[i]);
    return indices;
}

}  // namespace newstraject
