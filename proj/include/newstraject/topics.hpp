#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "newstraject/date.hpp"
#include "newstraject/textprep.hpp"
#include "newstraject/timebins.hpp"

namespace newstraject {

enum class EmbeddingProvider { lsa, external };

struct EmbeddingConfig {
    EmbeddingProvider provider = EmbeddingProvider::lsa;
    int d = 512;
    std::uint64_t seed = 0;
    std::string external_path;  // used when provider == external
};

// Shared term axis for every c-TF-IDF computation of one fit: terms sorted
// lexicographically, f(t) counted over the whole corpus, A = tokens / classes.
struct TermStats {
    std::vector<std::string> terms;
    std::unordered_map<std::string, Eigen::Index> index;
    Eigen::VectorXd corpus_freq;
    double avg_class_tokens = 0.0;
};

struct CtfidfResult {
    Eigen::MatrixXd weights;  // k x Vt
    TermStats stats;
};

struct TopicModel {
    int k = 0;
    Eigen::MatrixXd centroids;        // k x d
    std::vector<int> assignment;      // doc -> topic id in [0, k)
    std::vector<std::size_t> sizes;   // docs per topic
    Eigen::MatrixXd global_ctfidf;    // k x Vt
    std::vector<std::vector<std::string>> top_words;
    TermStats term_stats;
};

struct TotCell {
    std::size_t frequency = 0;
    Eigen::VectorXd representation;  // Vt, after tuning
    std::vector<std::string> top_words;
};

struct TopicsOverTime {
    TimeBins bins;
    std::vector<std::vector<TotCell>> cells;  // [topic][bin]
};

struct RandomizedSvd {
    Eigen::MatrixXd u;  // n x r
    Eigen::VectorXd s;  // r
    Eigen::MatrixXd v;  // cols x r
};

// TF-IDF with tf = in-document count and idf = ln((1+n)/(1+df)) + 1,
// rows L2-normalized. Column order follows stats.terms.
Eigen::MatrixXd tfidf_matrix(const std::vector<PreprocessedDoc>& docs, TermStats* stats = nullptr);

// Seeded Halko sketch: Gaussian test matrix, 4 power iterations with QR
// re-orthogonalization, oversampling 10. rank is capped at min(rows, cols).
RandomizedSvd randomized_svd(const Eigen::MatrixXd& x, int rank, std::uint64_t seed);

// TF-IDF -> truncated SVD -> rows scaled by singular values, L2-normalized,
// zero-padded out to config.d columns.
Eigen::MatrixXd embed_lsa(const std::vector<PreprocessedDoc>& docs, const EmbeddingConfig& config);

// Header `n d`, then n rows of d reals. Rows are L2-normalized on load
// unless already unit length within 1e-6.
Eigen::MatrixXd load_embeddings(const std::string& path, std::size_t expected_n);

// k-means with kmeans++ seeding and Lloyd iterations to an assignment
// fixpoint (at most 300 rounds). Fills k, centroids, assignment, sizes.
TopicModel fit_topics(const Eigen::MatrixXd& embeddings, int k, std::uint64_t seed);

// W(t,c) = tf(t,c) * ln(1 + A / f(t)). Every class must be non-empty.
CtfidfResult compute_ctfidf(const std::vector<std::vector<std::string>>& classes);

// Same formula against a frozen term axis and frozen f(t), A. Classes may be
// empty here (zero rows); terms outside stats.terms are ignored.
Eigen::MatrixXd ctfidf_with_stats(const std::vector<std::vector<std::string>>& classes,
                                  const TermStats& stats);

// Per topic: n highest-weight terms, weight descending, ties lexicographic
// ascending, zero-weight terms never included.
std::vector<std::vector<std::string>> top_words(const Eigen::MatrixXd& weights,
                                                const std::vector<std::string>& terms,
                                                std::size_t n = 10);

// Row-stochastic softmax over negative squared Euclidean distances.
Eigen::MatrixXd topic_probabilities(const Eigen::MatrixXd& embeddings,
                                    const Eigen::MatrixXd& centroids);

// Fills global_ctfidf, top_words and term_stats of a clustered model from
// the documents' preprocessed tokens.
void fill_representation(TopicModel& model, const std::vector<PreprocessedDoc>& docs);

// Per (topic, bin) frequency and representation. Bin representations reuse
// the model's global f(t) and A. evolution_tuning averages each bin with the
// previous bin's already-tuned representation, global_tuning then averages
// with the model's global representation.
TopicsOverTime topics_over_time(const TopicModel& model, const std::vector<PreprocessedDoc>& docs,
                                const std::vector<Date>& timestamps, int nr_bins,
                                bool global_tuning, bool evolution_tuning);

// topic_id,size,word_1..word_10
void write_topic_table_csv(const std::string& path, const TopicModel& model);

// topic_id,bin_start,bin_end,frequency,top_words (semicolon-joined)
void write_topics_over_time_csv(const std::string& path, const TopicsOverTime& tot);

// JSON artifact carrying everything topics-over-time needs: k, assignment,
// term stats, global c-TF-IDF, top words, sizes.
void save_topic_model(const std::string& path, const TopicModel& model);
TopicModel load_topic_model(const std::string& path);

}  // namespace newstraject
