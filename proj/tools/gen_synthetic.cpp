// Writes the bundled synthetic fixture: 600 documents over three planted
// vocabulary themes, two regions and 24 monthly timestamps, plus the matching
// taxonomy and a ready-to-run pipeline config. Regenerating with the default
// seed reproduces the committed files byte for byte.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newstraject/corpus.hpp"
#include "newstraject/csv.hpp"
#include "newstraject/date.hpp"
#include "newstraject/rng.hpp"

namespace {

using newstraject::uniform01;

struct Theme {
    const char* label;
    const char* definition;
    // (token, per-document probability); the leading tokens anchor the topic.
    std::vector<std::pair<const char*, double>> words;
    const char* main_region;
    double main_region_share;
    std::vector<double> month_weights;  // 24 entries, relative volume per month
};

std::vector<double> ramp_up() {
    std::vector<double> w(24);
    for (int m = 0; m < 24; ++m) w[static_cast<std::size_t>(m)] = 1.0 + m * 0.15;
    return w;
}

std::vector<double> flat() { return std::vector<double>(24, 1.0); }

std::vector<double> seasonal() {
    // Construction volume peaks mid-year: {1,1,2,3,4,4,4,3,2,1,1,1} repeated.
    const double base[12] = {1, 1, 2, 3, 4, 4, 4, 3, 2, 1, 1, 1};
    std::vector<double> w(24);
    for (int m = 0; m < 24; ++m) w[static_cast<std::size_t>(m)] = base[m % 12];
    return w;
}

std::size_t weighted_pick(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform01(rng) * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += weights[i];
        if (cum > target) return i;
    }
    return weights.size() - 1;
}

const std::vector<const char*> kFillers = {
    "company", "project",  "million", "announced", "regional", "local",  "development",
    "plan",    "investment", "public", "meeting",  "report",   "market", "service",
    "director", "budget",  "growth",  "contract",  "partner",  "launch", "expansion",
    "agency",  "council",  "proposal", "decision", "committee", "review", "initiative"};

std::string capitalize(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z')
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
    return word;
}

std::string render_text(std::vector<std::string> tokens, std::mt19937_64& rng) {
    newstraject::shuffle_inplace(tokens, rng);
    std::string text;
    std::size_t sentence_len = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::string word = tokens[i];
        if (sentence_len == 0) word = capitalize(word);
        if (!text.empty()) text += sentence_len == 0 ? " " : " ";
        text += word;
        ++sentence_len;
        const bool last = i + 1 == tokens.size();
        if (last || sentence_len >= 5 + rng() % 4) {
            // Sprinkle digits and punctuation for the cleaner to strip.
            if (!last && uniform01(rng) < 0.3)
                text += ", worth " + std::to_string(2 + rng() % 40) + " million euros";
            text += ".";
            sentence_len = 0;
        }
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic news corpus"};
    std::string out_dir = "data/synthetic";
    std::uint64_t seed = 1234;
    int docs_per_theme = 200;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--docs-per-theme", docs_per_theme, "documents per theme");
    CLI11_PARSE(app, argc, argv);

    std::vector<Theme> themes = {
        {"101",
         "Renewable energy projects and infrastructure",
         {{"solar", 0.95},
          {"energy", 0.90},
          {"power", 0.60},
          {"park", 0.55},
          {"wind", 0.50},
          {"turbine", 0.45},
          {"grid", 0.40},
          {"panel", 0.40},
          {"megawatt", 0.35},
          {"farm", 0.35},
          {"photovoltaic", 0.30},
          {"storage", 0.25}},
         "FR-BFC",
         0.8,
         ramp_up()},
        {"202",
         "Banking, credit and financial services",
         {{"bank", 0.95},
          {"loan", 0.90},
          {"credit", 0.60},
          {"deposit", 0.55},
          {"interest", 0.50},
          {"mortgage", 0.45},
          {"branch", 0.40},
          {"savings", 0.40},
          {"account", 0.35},
          {"lending", 0.35},
          {"finance", 0.30},
          {"rate", 0.25}},
         "FR-IDF",
         0.8,
         flat()},
        {"303",
         "Construction, roads and public transport",
         {{"bridge", 0.95},
          {"highway", 0.90},
          {"construction", 0.60},
          {"tram", 0.55},
          {"depot", 0.50},
          {"concrete", 0.45},
          {"tunnel", 0.40},
          {"asphalt", 0.40},
          {"roadway", 0.35},
          {"viaduct", 0.35},
          {"station", 0.30},
          {"contractor", 0.25}},
         "FR-BFC",
         0.5,
         seasonal()}};

    std::mt19937_64 rng(seed);
    newstraject::Corpus corpus;

    int doc_no = 0;
    for (std::size_t t = 0; t < themes.size(); ++t) {
        const Theme& theme = themes[t];
        for (int d = 0; d < docs_per_theme; ++d) {
            newstraject::Document doc;
            doc.id = "doc-" + std::to_string(++doc_no);

            std::vector<std::string> tokens;
            for (const auto& [word, p] : theme.words)
                if (uniform01(rng) < p) tokens.emplace_back(word);
            if (tokens.empty()) tokens.emplace_back(theme.words[0].first);
            const std::size_t fillers = 2 + rng() % 3;
            for (std::size_t f = 0; f < fillers; ++f)
                tokens.emplace_back(kFillers[rng() % kFillers.size()]);

            doc.labels = {theme.label};
            if (uniform01(rng) < 0.08) {  // a second theme bleeds in
                const std::size_t other = (t + 1 + rng() % 2) % themes.size();
                tokens.emplace_back(themes[other].words[0].first);
                tokens.emplace_back(themes[other].words[1].first);
                doc.labels.push_back(themes[other].label);
                std::sort(doc.labels.begin(), doc.labels.end());
            }

            doc.text = render_text(std::move(tokens), rng);

            const auto month = static_cast<int>(weighted_pick(theme.month_weights, rng));
            doc.timestamp = newstraject::Date::from_civil(2019 + month / 12, month % 12 + 1, 15);

            const bool main = uniform01(rng) < theme.main_region_share;
            const char* other_region =
                std::string(theme.main_region) == "FR-BFC" ? "FR-IDF" : "FR-BFC";
            doc.region = main ? theme.main_region : other_region;

            corpus.documents.push_back(std::move(doc));
        }
    }

    newstraject::write_documents(corpus, out_dir + "/corpus.jsonl");

    std::string taxonomy = "label_id,definition\n";
    for (const Theme& theme : themes)
        taxonomy += newstraject::csv::join_row({theme.label, theme.definition}) + "\n";
    newstraject::write_file(out_dir + "/taxonomy.csv", taxonomy);

    const std::string config = R"({
  "corpus": "data/synthetic/corpus.jsonl",
  "taxonomy": "data/synthetic/taxonomy.csv",
  "output_dir": "out/synthetic",
  "model_dir": "out/synthetic/model",
  "seed": 42,
  "k": 3,
  "nr_bins": 8,
  "epochs": 10
}
)";
    newstraject::write_file(out_dir + "/config.json", config);
    return 0;
}
