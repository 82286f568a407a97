#include "newstraject/textprep.hpp"

#include <cstdint>

#include "newstraject/corpus.hpp"

namespace newstraject {

namespace {

// Decodes the code point starting at s[i] and advances i. Invalid bytes
// decode to U+FFFD one byte at a time, which the cleaner then drops.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        unsigned char b = byte(i + static_cast<std::size_t>(k));
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
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

bool is_space_cp(char32_t c) {
    switch (c) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return c >= 0x2000 && c <= 0x200A;
    }
}

// Letter coverage: ASCII plus the Latin supplements/extensions, Greek and
// Cyrillic. Everything else counts as punctuation and is deleted.
bool is_letter_cp(char32_t c) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
    if (c >= 0x250 && c <= 0x2AF) return true;  // IPA extensions
    if (c >= 0x386 && c <= 0x3FF) return c != 0x387;
    if (c >= 0x400 && c <= 0x4FF) return true;
    return false;
}

char32_t to_lower_cp(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 0x20;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    if (c >= 0x100 && c <= 0x177) {
        // Latin Extended-A pairs: even upper, odd lower (with two odd runs).
        if (c <= 0x137 || c >= 0x14A) return (c % 2 == 0) ? c + 1 : c;
        return (c % 2 == 1) ? c + 1 : c;
    }
    if (c == 0x178) return 0xFF;
    if (c >= 0x179 && c <= 0x17D) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 0x20;
    if (c >= 0x410 && c <= 0x42F) return c + 0x20;
    if (c >= 0x400 && c <= 0x40F) return c + 0x50;
    return c;
}

std::size_t codepoint_count(std::string_view token) {
    std::size_t n = 0;
    for (char c : token)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

}  // namespace

PreprocessedDoc preprocess(std::string_view text, const StopwordSet& stopwords) {
    // Pass 1: keep letters (lowercased) and whitespace, drop the rest.
    std::string cleaned;
    cleaned.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (is_space_cp(cp)) {
            cleaned += ' ';
        } else if (is_letter_cp(cp)) {
            append_utf8(cleaned, to_lower_cp(cp));
        }
    }

    // Pass 2: split, stopword filter, dedup (first kept), small-word filter.
    PreprocessedDoc doc;
    StopwordSet seen;
    std::vector<std::string> kept;
    std::size_t start = 0;
    while (start < cleaned.size()) {
        std::size_t end = cleaned.find(' ', start);
        if (end == std::string::npos) end = cleaned.size();
        if (end > start) {
            std::string token = cleaned.substr(start, end - start);
            if (stopwords.count(token) == 0 && seen.insert(token).second) kept.push_back(std::move(token));
        }
        start = end + 1;
    }
    for (std::string& token : kept) {
        if (codepoint_count(token) < 3) continue;
        if (!doc.joined.empty()) doc.joined += ' ';
        doc.joined += token;
        doc.tokens.push_back(std::move(token));
    }
    return doc;
}

StopwordSet parse_stopwords(const std::string& content) {
    StopwordSet words;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        std::string line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto a = line.find_first_not_of(" \t");
        if (a != std::string::npos && line[a] != '#') {
            auto b = line.find_last_not_of(" \t");
            std::string word = line.substr(a, b - a + 1);
            // Stopwords are matched after lowercasing, so fold the entry too.
            std::string folded;
            std::size_t i = 0;
            while (i < word.size()) append_utf8(folded, to_lower_cp(decode_utf8(word, i)));
            words.insert(folded);
        }
        if (end == content.size()) break;
        start = end + 1;
    }
    return words;
}

StopwordSet load_stopwords(const std::string& path) { return parse_stopwords(read_file(path)); }

}  // namespace newstraject
