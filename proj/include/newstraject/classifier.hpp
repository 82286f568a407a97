#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "newstraject/corpus.hpp"
#include "newstraject/nn.hpp"
#include "newstraject/textprep.hpp"
#include "newstraject/vocab.hpp"

namespace newstraject {

struct ClassifierConfig {
    int d_e = 64;
    int h = 128;
    int L = 256;
    double dropout = 0.3;
    int batch_size = 32;
    int epochs = 10;
    double lr = 0.001;
    double threshold = 0.5;
    std::uint64_t seed = 0;
    std::size_t max_vocab = 20000;
    double train_fraction = 0.8;
    // On: the vocabulary is built from all labeled documents before the
    // split, which leaks validation tokens; off keeps it train-only.
    bool vocab_before_split = false;

    void validate() const;  // throws DataError on out-of-range values
};

struct EpochRecord {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
    double val_precision = 0.0;
};

using TrainReport = std::vector<EpochRecord>;

struct Prediction {
    Eigen::VectorXd probs;            // one per label, taxonomy order
    std::vector<std::string> labels;  // ids with prob >= threshold, ascending
};

struct Metrics {
    double accuracy = 0.0;   // fraction of (doc,label) cells matching gold
    double precision = 0.0;  // micro TP/(TP+FP), 1.0 when no positives predicted
};

// Everything predict() needs, persisted as a model directory.
struct TrainedClassifier {
    Parameters params;
    Vocabulary vocab;
    std::vector<std::string> label_ids;  // ascending lexicographic, defines column order
    StopwordSet stopwords;
    int seq_len = 0;
    double dropout = 0.0;
    double threshold = 0.5;
    std::uint64_t seed = 0;
};

struct TrainResult {
    TrainedClassifier model;
    TrainReport report;
};

struct SplitPlan {
    std::vector<std::size_t> train;  // indices into the document list
    std::vector<std::size_t> val;
};

// The shuffle-once-then-split plan used by train(). Exposed so callers and
// tests can locate the validation documents for a given seed.
SplitPlan plan_split(std::size_t n, std::uint64_t seed, double train_fraction);

// Binary target row in ascending label-id order. Unknown labels are an error.
Eigen::VectorXd encode_targets(const Taxonomy& taxonomy, const std::vector<std::string>& labels);

// Trains on the labeled subset of docs (>= 2 required). Deterministic for a
// fixed seed: one shuffle before the split, per-epoch reshuffles of the train
// portion, mini-batch Adam, validation metrics after every epoch.
TrainResult train(const std::vector<Document>& docs, const Taxonomy& taxonomy,
                  const StopwordSet& stopwords, const ClassifierConfig& config);

Prediction predict(const TrainedClassifier& model, const Document& doc);

// Per-cell metrics of thresholded probabilities against binary targets.
Metrics metrics_from(const Eigen::MatrixXd& probs, const Eigen::MatrixXd& targets,
                     double threshold);

// Convenience wrapper: predict every doc, compare against its gold labels.
Metrics evaluate(const TrainedClassifier& model, const std::vector<Document>& docs,
                 const Taxonomy& taxonomy);

// Directory layout: params.bin, vocab.txt, labels.txt, stopwords.txt, config.json.
void save_model(const std::string& dir, const TrainedClassifier& model);
TrainedClassifier load_model(const std::string& dir);

// epoch,train_loss,val_loss,val_accuracy,val_precision
void write_metrics_csv(const std::string& path, const TrainReport& report);

}  // namespace newstraject
