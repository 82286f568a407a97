#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "newstraject/errors.hpp"
#include "newstraject/textprep.hpp"

namespace newstraject {

// Frequency-ranked vocabulary. Index 0 is padding, 1 is out-of-vocabulary;
// real tokens start at 2, ordered by descending corpus frequency with ties
// broken lexicographically.
class Vocabulary {
public:
    static constexpr std::int32_t kPad = 0;
    static constexpr std::int32_t kOov = 1;

    Vocabulary() = default;

    // max_size caps the total size including the two reserved indices.
    static Vocabulary build(const std::vector<PreprocessedDoc>& docs, std::size_t max_size);

    std::int32_t index_of(const std::string& token) const {
        auto it = token_to_index_.find(token);
        return it == token_to_index_.end() ? kOov : it->second;
    }
    bool contains(const std::string& token) const { return token_to_index_.count(token) > 0; }
    std::size_t size() const { return token_to_index_.size() + 2; }  // includes pad + oov
    const std::string& token_at(std::int32_t index) const;           // index >= 2

    // Text format: header `#pad=0 oov=1 L=<L>`, then `token<TAB>index` lines.
    std::string serialize(int seq_len) const;
    static Vocabulary deserialize(const std::string& content, int* seq_len);
    void save(const std::string& path, int seq_len) const;
    static Vocabulary load(const std::string& path, int* seq_len);

    bool operator==(const Vocabulary& other) const { return index_to_token_ == other.index_to_token_; }

private:
    std::unordered_map<std::string, std::int32_t> token_to_index_;
    std::vector<std::string> index_to_token_;  // position i holds the token at index i + 2
};

// Fixed-length integer encoding: known tokens to their index, unknown to 1,
// truncated to the first L tokens, post-padded with 0.
std::vector<std::int32_t> encode_pad(const Vocabulary& vocab, const PreprocessedDoc& doc, int seq_len);

// Head/tail split at floor(fraction * n); both sides must end up non-empty.
template <class T>
std::pair<std::vector<T>, std::vector<T>> split_train_val(const std::vector<T>& items,
                                                          double fraction = 0.8) {
    if (items.size() < 2) throw DataError("split requires at least 2 items");
    if (!(fraction > 0.0 && fraction < 1.0)) throw DataError("split fraction must be in (0,1)");
    auto cut = static_cast<std::size_t>(fraction * static_cast<double>(items.size()));
    if (cut == 0 || cut == items.size())
        throw DataError("split fraction " + std::to_string(fraction) + " leaves an empty side for " +
                        std::to_string(items.size()) + " items");
    return {std::vector<T>(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(cut)),
            std::vector<T>(items.begin() + static_cast<std::ptrdiff_t>(cut), items.end())};
}

}  // namespace newstraject
