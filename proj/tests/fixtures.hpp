#pragma once

// Deterministic fixtures shared between the unit suites and the acceptance
// harness. Fixed seeds throughout; the same call always builds the same data.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "newstraject/corpus.hpp"
#include "newstraject/topics.hpp"

namespace fixtures {

// Two-label corpus that is linearly separable by construction: label A iff
// the text contains "solar", label B iff it contains "loan", every third
// document carries both. All documents are labeled.
inline std::vector<newstraject::Document> separable_docs(int n) {
    static const char* kFillers[] = {
        "council", "report",   "project",  "city",     "market",      "plans",
        "region",  "budget",   "mayor",    "meeting",  "strategy",    "development",
        "program", "spending", "partners", "review",   "committee",   "proposal",
        "quarter", "network",  "industry", "services", "contractors", "residents"};
    std::mt19937_64 g(777);
    std::vector<newstraject::Document> docs;
    docs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> words;
        const int fill = 6 + static_cast<int>(g() % 5);
        for (int j = 0; j < fill; ++j) words.emplace_back(kFillers[g() % 24]);
        newstraject::Document doc;
        switch (i % 3) {
            case 0:
                words.emplace_back("solar");
                doc.labels = {"A"};
                break;
            case 1:
                words.emplace_back("loan");
                doc.labels = {"B"};
                break;
            default:
                words.emplace_back("solar");
                words.emplace_back("loan");
                doc.labels = {"A", "B"};
                break;
        }
        for (std::size_t w = words.size() - 1; w > 0; --w)
            std::swap(words[w], words[static_cast<std::size_t>(g() % (w + 1))]);
        std::string text;
        for (const auto& w : words) {
            if (!text.empty()) text += ' ';
            text += w;
        }
        doc.id = "sep-" + std::to_string(i);
        doc.text = text;
        doc.timestamp = newstraject::Date::from_civil(2020, 1 + i % 12, 1 + i % 28);
        doc.region = (i % 2 == 0) ? "R-EAST" : "R-WEST";
        docs.push_back(std::move(doc));
    }
    return docs;
}

inline newstraject::Taxonomy separable_taxonomy() {
    newstraject::Taxonomy tax;
    tax.entries["A"] = "Solar energy coverage";
    tax.entries["B"] = "Bank lending coverage";
    return tax;
}

// Three well-separated 2-D blobs, `per` points each, jitter within +-1.
inline Eigen::MatrixXd three_blobs(int per) {
    std::mt19937_64 g(555);
    const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    Eigen::MatrixXd x(3 * per, 2);
    auto jitter = [&g]() {
        return 2.0 * (static_cast<double>(g() >> 11) * 0x1.0p-53) - 1.0;
    };
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < per; ++i) {
            x(b * per + i, 0) = centers[b][0] + jitter();
            x(b * per + i, 1) = centers[b][1] + jitter();
        }
    return x;
}

// Twelve preprocessed documents in three groups of four with overlapping
// vocabulary; the shared term "city" appears in every group.
inline std::vector<newstraject::PreprocessedDoc> topic_docs() {
    auto doc = [](std::vector<std::string> tokens) {
        newstraject::PreprocessedDoc d;
        std::string joined;
        for (const auto& t : tokens) {
            if (!joined.empty()) joined += ' ';
            joined += t;
        }
        d.tokens = std::move(tokens);
        d.joined = std::move(joined);
        return d;
    };
    return {
        doc({"solar", "park", "energy", "city"}),
        doc({"solar", "power", "grid"}),
        doc({"energy", "solar", "turbine", "wind"}),
        doc({"park", "solar", "energy"}),
        doc({"bank", "loan", "credit", "city"}),
        doc({"loan", "bank", "deposit"}),
        doc({"credit", "bank", "loan", "interest"}),
        doc({"bank", "deposit", "loan"}),
        doc({"bridge", "highway", "concrete", "city"}),
        doc({"highway", "bridge", "tunnel"}),
        doc({"concrete", "bridge", "highway", "asphalt"}),
        doc({"bridge", "tunnel", "highway"}),
    };
}

// Group labels matching topic_docs: four documents per topic.
inline std::vector<int> topic_assignment() {
    return {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
}

// Dates spreading topic_docs over three equal-width bins. Topic 0 lands two
// documents in each of bins 0 and 1 and none in bin 2 (so an empty
// (topic, bin) cell occurs); topics 1 and 2 land one in bins 0 and 1 and two
// in bin 2.
inline std::vector<newstraject::Date> topic_timestamps() {
    auto d = [](int day) { return newstraject::Date::from_civil(2021, 1, day); };
    // Span 2021-01-01 .. 2021-01-09, three bins: [1,3] [4,6] [7,9].
    return {d(1), d(2), d(4), d(5), d(1), d(4), d(7), d(8), d(2), d(5), d(7), d(9)};
}

// Clustered-and-represented model over topic_docs, ready for
// topics_over_time without running an embedding or k-means.
inline newstraject::TopicModel topic_model() {
    newstraject::TopicModel model;
    model.k = 3;
    model.assignment = topic_assignment();
    model.sizes = {4, 4, 4};
    newstraject::fill_representation(model, topic_docs());
    return model;
}

// Byte soup for robustness properties: ASCII of every class, accented and
// non-Latin letters, multi-byte punctuation, truncated and invalid UTF-8.
inline std::string random_text(std::mt19937_64& g, std::size_t max_pieces = 60) {
    static const std::vector<std::string> kPieces = {
        "a",     "b",      "q",     "z",        "T",     "W",          "solar", "Loan",
        "the",   "and",    "of",    "parks",    "naïve", "Über",       "crèche", "ßig",
        "Жук",   "λόγος",  "1",     "42",       "0",     ",",          ".",      "!",
        "-",     "_",      "\"",    "'",        "(",     ")",          "#",      "€",
        "×",     "÷",      " ",     "  ",       "\t",    "\n",         "\r\n",   "\xFF",
        "\xC3",  "\xE2\x82", "ab",  "abc",      "abcd",  "commission", "o",      ";",
        "\xC2\xA0", "\xE2\x80\x89"};
    std::string out;
    const std::size_t n = g() % (max_pieces + 1);
    for (std::size_t i = 0; i < n; ++i) out += kPieces[g() % kPieces.size()];
    return out;
}

// Drops bytes that do not form valid UTF-8 sequences. Parsed corpora are
// always valid UTF-8 (JSON admits nothing else), so documents meant to
// survive serialization must be too.
inline std::string sanitize_utf8(const std::string& s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b = static_cast<unsigned char>(s[i]);
        const std::size_t len = b < 0x80           ? 1
                                : (b >> 5) == 0x6  ? 2
                                : (b >> 4) == 0xE  ? 3
                                : (b >> 3) == 0x1E ? 4
                                                   : 0;
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
        if (ok) {
            out.append(s, i, len);
            i += len;
        } else {
            ++i;
        }
    }
    return out;
}

// Random but internally normalized document (labels sorted and deduped,
// text valid UTF-8), so serialization round-trips compare equal.
inline newstraject::Document random_document(std::mt19937_64& g, int serial) {
    static const std::vector<std::string> kRegions = {"FR-BFC", "FR-IDF", "über-Ost",
                                                      "zone \"9\"", "a,b"};
    static const std::vector<std::string> kLabels = {"101", "202", "303", "9", "äö"};
    newstraject::Document doc;
    doc.id = "r-" + std::to_string(serial);
    doc.text = sanitize_utf8(random_text(g));
    doc.timestamp = newstraject::Date::from_days(static_cast<std::int64_t>(g() % 40000) - 3000);
    doc.region = kRegions[g() % kRegions.size()];
    std::vector<std::string> labels;
    const std::size_t nl = g() % 4;
    for (std::size_t i = 0; i < nl; ++i) labels.push_back(kLabels[g() % kLabels.size()]);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    doc.labels = std::move(labels);
    return doc;
}

}  // namespace fixtures
