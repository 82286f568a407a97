#include "newstraject/topics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "newstraject/corpus.hpp"
#include "newstraject/csv.hpp"
#include "newstraject/errors.hpp"
#include "newstraject/log.hpp"
#include "newstraject/rng.hpp"

namespace newstraject {

namespace {

void normalize_rows(Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double norm = m.row(i).norm();
        if (norm > 0.0) m.row(i) /= norm;
    }
}

// Thin Q factor of a Householder QR.
Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
    const Eigen::Index cols = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), cols);
}

}  // namespace

Eigen::MatrixXd tfidf_matrix(const std::vector<PreprocessedDoc>& docs, TermStats* stats) {
    const auto n = static_cast<Eigen::Index>(docs.size());

    std::map<std::string, Eigen::Index> doc_freq;  // lexicographic term axis
    for (const auto& doc : docs) {
        std::unordered_set<std::string> seen;
        for (const auto& tok : doc.tokens)
            if (seen.insert(tok).second) ++doc_freq[tok];
    }

    TermStats local;
    local.terms.reserve(doc_freq.size());
    for (const auto& [term, _] : doc_freq) {
        local.index[term] = static_cast<Eigen::Index>(local.terms.size());
        local.terms.push_back(term);
    }
    const auto vt = static_cast<Eigen::Index>(local.terms.size());

    Eigen::VectorXd idf(vt);
    for (const auto& [term, df] : doc_freq)
        idf(local.index.at(term)) =
            std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(df))) + 1.0;

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, vt);
    local.corpus_freq = Eigen::VectorXd::Zero(vt);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (const auto& tok : docs[static_cast<std::size_t>(i)].tokens) {
            const Eigen::Index j = local.index.at(tok);
            x(i, j) += idf(j);  // tf accumulates one idf unit per occurrence
            local.corpus_freq(j) += 1.0;
        }
    }
    normalize_rows(x);

    if (stats != nullptr) *stats = std::move(local);
    return x;
}

RandomizedSvd randomized_svd(const Eigen::MatrixXd& x, int rank, std::uint64_t seed) {
    const Eigen::Index small = std::min(x.rows(), x.cols());
    const Eigen::Index r = std::min<Eigen::Index>(rank, small);
    if (r < 1) throw DataError("svd rank must be at least 1");

    const Eigen::Index sketch = std::min<Eigen::Index>(r + 10, small);
    std::mt19937_64 rng(derive_seed(seed, "svd"));
    Eigen::MatrixXd omega(x.cols(), sketch);
    for (Eigen::Index i = 0; i < omega.rows(); ++i)
        for (Eigen::Index j = 0; j < omega.cols(); ++j) omega(i, j) = gaussian(rng);

    Eigen::MatrixXd q = thin_q(x * omega);
    for (int iter = 0; iter < 4; ++iter) {
        const Eigen::MatrixXd z = thin_q(x.transpose() * q);
        q = thin_q(x * z);
    }

    const Eigen::MatrixXd b = q.transpose() * x;  // sketch x cols
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);

    RandomizedSvd out;
    out.u = q * svd.matrixU().leftCols(r);
    out.s = svd.singularValues().head(r);
    out.v = svd.matrixV().leftCols(r);
    return out;
}

Eigen::MatrixXd embed_lsa(const std::vector<PreprocessedDoc>& docs,
                          const EmbeddingConfig& config) {
    if (docs.size() < 2) throw DataError("embedding needs at least 2 documents");
    if (config.d < 2) throw DataError("embedding dimension must be at least 2");

    TermStats stats;
    const Eigen::MatrixXd x = tfidf_matrix(docs, &stats);
    if (stats.terms.size() < 2)
        throw DataError("corpus has fewer than 2 distinct terms after preprocessing");

    const auto r =
        static_cast<Eigen::Index>(std::min<Eigen::Index>(config.d, std::min(x.rows(), x.cols())));
    const RandomizedSvd svd = randomized_svd(x, static_cast<int>(r), config.seed);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), config.d);
    out.leftCols(r) = svd.u * svd.s.asDiagonal();
    normalize_rows(out);
    return out;
}

Eigen::MatrixXd load_embeddings(const std::string& path, std::size_t expected_n) {
    const std::string content = read_file(path);

    std::vector<std::pair<std::size_t, std::string>> lines;  // (1-based line no, text)
    std::size_t pos = 0, line_no = 0;
    while (pos <= content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        ++line_no;
        std::string line = content.substr(pos, nl - pos);
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.emplace_back(line_no, line);
        pos = nl + 1;
        if (nl == content.size()) break;
    }
    if (lines.empty()) throw DataError(path + ": empty embedding file");

    auto parse_fields = [&](const std::string& text, std::size_t no) {
        std::vector<double> vals;
        const char* p = text.data();
        const char* end = p + text.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p >= end) break;
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw DataError(path + ": line " + std::to_string(no) + ": non-numeric entry");
            p = next;
            if (p < end && *p != ' ' && *p != '\t' && *p != '\r')
                throw DataError(path + ": line " + std::to_string(no) + ": non-numeric entry");
            vals.push_back(v);
        }
        return vals;
    };

    const auto header = parse_fields(lines[0].second, lines[0].first);
    if (header.size() != 2 || header[0] != std::floor(header[0]) ||
        header[1] != std::floor(header[1]) || header[0] < 1 || header[1] < 1)
        throw DataError(path + ": line " + std::to_string(lines[0].first) +
                        ": header must be two positive integers `n d`");
    const auto n = static_cast<std::size_t>(header[0]);
    const auto d = static_cast<Eigen::Index>(header[1]);

    if (n != expected_n)
        throw DataError(path + ": header declares " + std::to_string(n) + " rows but the corpus has " +
                        std::to_string(expected_n) + " documents");
    if (lines.size() - 1 != n)
        throw DataError(path + ": expected " + std::to_string(n) + " data rows, found " +
                        std::to_string(lines.size() - 1));

    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto vals = parse_fields(lines[i + 1].second, lines[i + 1].first);
        if (static_cast<Eigen::Index>(vals.size()) != d)
            throw DataError(path + ": line " + std::to_string(lines[i + 1].first) + ": expected " +
                            std::to_string(d) + " values, found " + std::to_string(vals.size()));
        for (Eigen::Index j = 0; j < d; ++j) out(static_cast<Eigen::Index>(i), j) = vals[static_cast<std::size_t>(j)];
    }

    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm > 0.0 && std::abs(norm - 1.0) > 1e-6) out.row(i) /= norm;
    }
    return out;
}

namespace {

double sq_dist(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b,
               Eigen::Index j) {
    return (a.row(i) - b.row(j)).squaredNorm();
}

// kmeans++: each next centroid sampled proportionally to squared distance
// from the nearest already-chosen one.
std::vector<Eigen::Index> kmeanspp_seeds(const Eigen::MatrixXd& points, int k,
                                         std::mt19937_64& rng) {
    const Eigen::Index n = points.rows();
    std::vector<Eigen::Index> seeds;
    seeds.push_back(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));

    Eigen::VectorXd d2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    while (static_cast<int>(seeds.size()) < k) {
        const Eigen::Index last = seeds.back();
        for (Eigen::Index i = 0; i < n; ++i)
            d2(i) = std::min(d2(i), (points.row(i) - points.row(last)).squaredNorm());

        const double total = d2.sum();
        Eigen::Index chosen;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double cum = 0.0;
            chosen = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                cum += d2(i);
                if (cum > target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
        }
        seeds.push_back(chosen);
    }
    return seeds;
}

}  // namespace

TopicModel fit_topics(const Eigen::MatrixXd& embeddings, int k, std::uint64_t seed) {
    const Eigen::Index n = embeddings.rows();
    if (k < 2) throw DataError("topic count must be at least 2, got " + std::to_string(k));
    if (static_cast<Eigen::Index>(k) > n)
        throw DataError("topic count " + std::to_string(k) + " exceeds the document count " +
                        std::to_string(n));

    std::mt19937_64 rng(derive_seed(seed, "kmeans"));
    const auto seeds = kmeanspp_seeds(embeddings, k, rng);
    Eigen::MatrixXd centroids(k, embeddings.cols());
    for (int c = 0; c < k; ++c) centroids.row(c) = embeddings.row(seeds[static_cast<std::size_t>(c)]);

    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    std::vector<int> previous;
    for (int round = 0; round < 300; ++round) {
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = sq_dist(embeddings, i, centroids, 0);
            for (int c = 1; c < k; ++c) {
                const double d2 = sq_dist(embeddings, i, centroids, c);
                if (d2 < best_d2) {  // ties keep the lowest centroid index
                    best_d2 = d2;
                    best = c;
                }
            }
            assignment[static_cast<std::size_t>(i)] = best;
        }

        // Re-home the farthest point of some multi-member cluster into each
        // empty cluster, lowest empty index first.
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (int a : assignment) ++counts[static_cast<std::size_t>(a)];
        for (int empty = 0; empty < k; ++empty) {
            if (counts[static_cast<std::size_t>(empty)] != 0) continue;
            Eigen::Index victim = -1;
            double victim_d2 = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int home = assignment[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(home)] < 2) continue;
                const double d2 = sq_dist(embeddings, i, centroids, home);
                if (d2 > victim_d2) {  // ties keep the lowest point index
                    victim_d2 = d2;
                    victim = i;
                }
            }
            if (victim < 0) throw DataError("k-means cannot repair an empty cluster");
            --counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(victim)])];
            assignment[static_cast<std::size_t>(victim)] = empty;
            counts[static_cast<std::size_t>(empty)] = 1;
        }

        centroids.setZero();
        for (Eigen::Index i = 0; i < n; ++i)
            centroids.row(assignment[static_cast<std::size_t>(i)]) += embeddings.row(i);
        for (int c = 0; c < k; ++c)
            centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

        if (assignment == previous) break;
        previous = assignment;
    }

    TopicModel model;
    model.k = k;
    model.centroids = std::move(centroids);
    model.assignment = std::move(assignment);
    model.sizes.assign(static_cast<std::size_t>(k), 0);
    for (int a : model.assignment) ++model.sizes[static_cast<std::size_t>(a)];
    return model;
}

CtfidfResult compute_ctfidf(const std::vector<std::vector<std::string>>& classes) {
    if (classes.empty()) throw DataError("c-TF-IDF needs at least one class");
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c].empty())
            throw DataError("c-TF-IDF class " + std::to_string(c) + " has no tokens");

    std::map<std::string, Eigen::Index> order;
    std::size_t total_tokens = 0;
    for (const auto& tokens : classes) {
        total_tokens += tokens.size();
        for (const auto& tok : tokens) order.emplace(tok, 0);
    }

    CtfidfResult result;
    result.stats.terms.reserve(order.size());
    for (auto& [term, idx] : order) {
        idx = static_cast<Eigen::Index>(result.stats.terms.size());
        result.stats.index[term] = idx;
        result.stats.terms.push_back(term);
    }
    const auto vt = static_cast<Eigen::Index>(result.stats.terms.size());
    const auto k = static_cast<Eigen::Index>(classes.size());

    Eigen::MatrixXd tf = Eigen::MatrixXd::Zero(k, vt);
    for (Eigen::Index c = 0; c < k; ++c)
        for (const auto& tok : classes[static_cast<std::size_t>(c)])
            tf(c, order.at(tok)) += 1.0;

    result.stats.corpus_freq = tf.colwise().sum().transpose();
    result.stats.avg_class_tokens =
        static_cast<double>(total_tokens) / static_cast<double>(classes.size());

    result.weights = ctfidf_with_stats(classes, result.stats);
    return result;
}

Eigen::MatrixXd ctfidf_with_stats(const std::vector<std::vector<std::string>>& classes,
                                  const TermStats& stats) {
    const auto vt = static_cast<Eigen::Index>(stats.terms.size());
    const auto k = static_cast<Eigen::Index>(classes.size());

    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(k, vt);
    for (Eigen::Index c = 0; c < k; ++c) {
        for (const auto& tok : classes[static_cast<std::size_t>(c)]) {
            auto it = stats.index.find(tok);
            if (it != stats.index.end()) weights(c, it->second) += 1.0;
        }
    }
    for (Eigen::Index j = 0; j < vt; ++j) {
        const double f = stats.corpus_freq(j);
        const double scale = f > 0.0 ? std::log(1.0 + stats.avg_class_tokens / f) : 0.0;
        weights.col(j) *= scale;
    }
    return weights;
}

std::vector<std::vector<std::string>> top_words(const Eigen::MatrixXd& weights,
                                                const std::vector<std::string>& terms,
                                                std::size_t n) {
    if (static_cast<Eigen::Index>(terms.size()) != weights.cols())
        throw DataError("top_words: term list does not match weight matrix width");

    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(weights.rows()));
    for (Eigen::Index c = 0; c < weights.rows(); ++c) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < weights.cols(); ++j)
            if (weights(c, j) > 0.0) idx.push_back(j);
        std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (weights(c, a) != weights(c, b)) return weights(c, a) > weights(c, b);
            return terms[static_cast<std::size_t>(a)] < terms[static_cast<std::size_t>(b)];
        });
        if (idx.size() > n) idx.resize(n);
        for (Eigen::Index j : idx) out[static_cast<std::size_t>(c)].push_back(terms[static_cast<std::size_t>(j)]);
    }
    return out;
}

Eigen::MatrixXd topic_probabilities(const Eigen::MatrixXd& embeddings,
                                    const Eigen::MatrixXd& centroids) {
    if (embeddings.cols() != centroids.cols())
        throw DataError("topic probabilities: embedding and centroid widths differ");

    Eigen::MatrixXd probs(embeddings.rows(), centroids.rows());
    for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
        Eigen::VectorXd logits(centroids.rows());
        for (Eigen::Index c = 0; c < centroids.rows(); ++c)
            logits(c) = -(embeddings.row(i) - centroids.row(c)).squaredNorm();
        const double peak = logits.maxCoeff();
        Eigen::VectorXd e = (logits.array() - peak).exp();
        probs.row(i) = (e / e.sum()).transpose();
    }
    return probs;
}

void fill_representation(TopicModel& model, const std::vector<PreprocessedDoc>& docs) {
    if (docs.size() != model.assignment.size())
        throw DataError("representation: document count does not match the fitted assignment");

    std::vector<std::vector<std::string>> classes(static_cast<std::size_t>(model.k));
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto& bucket = classes[static_cast<std::size_t>(model.assignment[i])];
        bucket.insert(bucket.end(), docs[i].tokens.begin(), docs[i].tokens.end());
    }

    CtfidfResult global = compute_ctfidf(classes);
    model.global_ctfidf = std::move(global.weights);
    model.term_stats = std::move(global.stats);
    model.top_words = top_words(model.global_ctfidf, model.term_stats.terms, 10);
}

TopicsOverTime topics_over_time(const TopicModel& model, const std::vector<PreprocessedDoc>& docs,
                                const std::vector<Date>& timestamps, int nr_bins,
                                bool global_tuning, bool evolution_tuning) {
    if (docs.size() != model.assignment.size() || timestamps.size() != docs.size())
        throw DataError("topics over time: documents, timestamps and assignment differ in size");
    if (model.term_stats.terms.empty())
        throw DataError("topics over time: model representation not filled");

    TopicsOverTime tot;
    tot.bins = TimeBins::over(timestamps, nr_bins);

    std::vector<std::vector<std::size_t>> bin_docs(static_cast<std::size_t>(nr_bins));
    for (std::size_t i = 0; i < docs.size(); ++i)
        bin_docs[static_cast<std::size_t>(tot.bins.index_of(timestamps[i]))].push_back(i);

    tot.cells.assign(static_cast<std::size_t>(model.k),
                     std::vector<TotCell>(static_cast<std::size_t>(nr_bins)));

    Eigen::MatrixXd previous;  // previous bin's tuned representations, k x Vt
    for (int b = 0; b < nr_bins; ++b) {
        std::vector<std::vector<std::string>> classes(static_cast<std::size_t>(model.k));
        std::vector<std::size_t> freq(static_cast<std::size_t>(model.k), 0);
        for (std::size_t i : bin_docs[static_cast<std::size_t>(b)]) {
            const auto topic = static_cast<std::size_t>(model.assignment[i]);
            ++freq[topic];
            classes[topic].insert(classes[topic].end(), docs[i].tokens.begin(),
                                  docs[i].tokens.end());
        }

        Eigen::MatrixXd rep = ctfidf_with_stats(classes, model.term_stats);
        if (evolution_tuning && b > 0) rep = (rep + previous) / 2.0;
        if (global_tuning) rep = (rep + model.global_ctfidf) / 2.0;
        previous = rep;

        const auto words = top_words(rep, model.term_stats.terms, 10);
        for (int t = 0; t < model.k; ++t) {
            TotCell& cell = tot.cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)];
            cell.frequency = freq[static_cast<std::size_t>(t)];
            cell.representation = rep.row(t).transpose();
            cell.top_words = words[static_cast<std::size_t>(t)];
        }
    }
    return tot;
}

void write_topic_table_csv(const std::string& path, const TopicModel& model) {
    std::string out = "topic_id,size";
    for (int w = 1; w <= 10; ++w) out += ",word_" + std::to_string(w);
    out += "\n";
    for (int t = 0; t < model.k; ++t) {
        std::vector<std::string> row{std::to_string(t),
                                     std::to_string(model.sizes[static_cast<std::size_t>(t)])};
        const auto& words = model.top_words[static_cast<std::size_t>(t)];
        for (std::size_t w = 0; w < 10; ++w) row.push_back(w < words.size() ? words[w] : "");
        out += csv::join_row(row) + "\n";
    }
    write_file(path, out);
}

void write_topics_over_time_csv(const std::string& path, const TopicsOverTime& tot) {
    std::string out = "topic_id,bin_start,bin_end,frequency,top_words\n";
    for (std::size_t t = 0; t < tot.cells.size(); ++t) {
        for (int b = 0; b < tot.bins.count; ++b) {
            const TotCell& cell = tot.cells[t][static_cast<std::size_t>(b)];
            std::string words;
            for (std::size_t w = 0; w < cell.top_words.size(); ++w) {
                if (w > 0) words += ";";
                words += cell.top_words[w];
            }
            out += csv::join_row({std::to_string(t), tot.bins.start(b).to_iso(),
                                  tot.bins.end(b).to_iso(), std::to_string(cell.frequency),
                                  words}) +
                   "\n";
        }
    }
    write_file(path, out);
}

void save_topic_model(const std::string& path, const TopicModel& model) {
    nlohmann::ordered_json j;
    j["k"] = model.k;
    j["sizes"] = model.sizes;
    j["assignment"] = model.assignment;
    j["terms"] = model.term_stats.terms;
    j["avg_class_tokens"] = model.term_stats.avg_class_tokens;

    std::vector<double> freq(model.term_stats.corpus_freq.data(),
                             model.term_stats.corpus_freq.data() + model.term_stats.corpus_freq.size());
    j["corpus_freq"] = freq;

    std::vector<std::vector<double>> weights;
    weights.reserve(static_cast<std::size_t>(model.global_ctfidf.rows()));
    for (Eigen::Index r = 0; r < model.global_ctfidf.rows(); ++r) {
        Eigen::VectorXd row = model.global_ctfidf.row(r).transpose();
        weights.emplace_back(row.data(), row.data() + row.size());
    }
    j["global_ctfidf"] = weights;
    j["top_words"] = model.top_words;

    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<std::size_t>(model.centroids.rows()));
    for (Eigen::Index r = 0; r < model.centroids.rows(); ++r) {
        Eigen::VectorXd row = model.centroids.row(r).transpose();
        centroids.emplace_back(row.data(), row.data() + row.size());
    }
    j["centroids"] = centroids;

    write_file(path, j.dump(2) + "\n");
}

TopicModel load_topic_model(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": bad topic model JSON: " + std::string(e.what()));
    }

    TopicModel model;
    try {
        model.k = j.at("k").get<int>();
        model.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        model.assignment = j.at("assignment").get<std::vector<int>>();
        model.term_stats.terms = j.at("terms").get<std::vector<std::string>>();
        model.term_stats.avg_class_tokens = j.at("avg_class_tokens").get<double>();

        const auto freq = j.at("corpus_freq").get<std::vector<double>>();
        model.term_stats.corpus_freq =
            Eigen::Map<const Eigen::VectorXd>(freq.data(), static_cast<Eigen::Index>(freq.size()));

        const auto weights = j.at("global_ctfidf").get<std::vector<std::vector<double>>>();
        model.global_ctfidf.resize(model.k, static_cast<Eigen::Index>(model.term_stats.terms.size()));
        for (std::size_t r = 0; r < weights.size(); ++r) {
            if (weights[r].size() != model.term_stats.terms.size())
                throw DataError(path + ": c-TF-IDF row width does not match the term list");
            for (std::size_t c = 0; c < weights[r].size(); ++c)
                model.global_ctfidf(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    weights[r][c];
        }

        model.top_words = j.at("top_words").get<std::vector<std::vector<std::string>>>();

        const auto centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
        if (!centroids.empty()) {
            model.centroids.resize(static_cast<Eigen::Index>(centroids.size()),
                                   static_cast<Eigen::Index>(centroids[0].size()));
            for (std::size_t r = 0; r < centroids.size(); ++r)
                for (std::size_t c = 0; c < centroids[r].size(); ++c)
                    model.centroids(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        centroids[r][c];
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": bad topic model JSON: " + std::string(e.what()));
    }

    for (std::size_t i = 0; i < model.term_stats.terms.size(); ++i)
        model.term_stats.index[model.term_stats.terms[i]] = static_cast<Eigen::Index>(i);

    if (static_cast<int>(model.sizes.size()) != model.k ||
        static_cast<Eigen::Index>(model.global_ctfidf.rows()) != model.k ||
        static_cast<int>(model.top_words.size()) != model.k)
        throw DataError(path + ": topic model arrays disagree with k");
    return model;
}

}  // namespace newstraject
