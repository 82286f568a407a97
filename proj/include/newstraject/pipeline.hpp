#pragma once

#include <cstdint>
#include <string>

#include "newstraject/classifier.hpp"
#include "newstraject/topics.hpp"

namespace newstraject {

// Flat JSON run configuration. Unknown keys are rejected so typos cannot
// silently fall back to defaults.
struct RunConfig {
    std::string corpus;
    std::string taxonomy;
    std::string stopwords;  // empty means the builtin list
    std::string output_dir = "out";
    std::string model_dir = "model";
    std::uint64_t seed = 42;

    std::string embedding_provider = "lsa";  // lsa | external
    int embedding_dim = 512;
    std::string external_embeddings;

    int k = 12;
    int nr_bins = 8;
    bool global_tuning = true;
    bool evolution_tuning = true;
    double hot_ratio = 1.0;

    int d_e = 64;
    int h = 128;
    int L = 256;
    double dropout = 0.3;
    int batch_size = 32;
    int epochs = 10;
    double lr = 0.001;
    double threshold = 0.5;
    std::size_t max_vocab = 20000;
    double train_fraction = 0.8;
    bool vocab_before_split = false;

    std::string date_window_start;  // empty end means unbounded
    std::string date_window_end;

    static RunConfig from_json_file(const std::string& path);
    void validate() const;

    ClassifierConfig classifier_config() const;
    EmbeddingConfig embedding_config() const;
};

// Each stage reads its inputs from disk and persists its artifacts under
// output_dir (the model under model_dir), so stages compose across processes.
void stage_ingest(const RunConfig& config);
void stage_preprocess(const RunConfig& config);
void stage_train(const RunConfig& config);
void stage_classify(const RunConfig& config);
void stage_topics(const RunConfig& config);
void stage_topics_over_time(const RunConfig& config);
void stage_trajectory(const RunConfig& config);
void stage_report(const RunConfig& config);

// All stages in order, then a manifest listing the artifacts. Deterministic:
// identical config and seed give a byte-identical output tree.
void run_all(const RunConfig& config);

}  // namespace newstraject
