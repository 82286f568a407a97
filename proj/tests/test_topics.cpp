#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "newstraject/corpus.hpp"
#include "newstraject/errors.hpp"
#include "newstraject/rng.hpp"
#include "newstraject/topics.hpp"
#include "oracles.hpp"

using namespace newstraject;

namespace {

PreprocessedDoc doc_of(std::vector<std::string> tokens) {
    PreprocessedDoc d;
    for (const auto& t : tokens) {
        if (!d.joined.empty()) d.joined += ' ';
        d.joined += t;
    }
    d.tokens = std::move(tokens);
    return d;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "newstraject_test_topics";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("time bins tile the span with floor membership and ceil edges") {
    auto d = [](int day) { return Date::from_days(day); };
    const TimeBins bins = TimeBins::over({d(0), d(7), d(3)}, 3);
    CHECK(bins.min == d(0));
    CHECK(bins.max == d(7));
    CHECK(bins.start(0) == d(0));
    CHECK(bins.start(1) == d(3));
    CHECK(bins.start(2) == d(5));
    CHECK(bins.end(0) == d(3));
    CHECK(bins.end(1) == d(5));
    CHECK(bins.end(2) == d(7));  // last bin closed at the corpus maximum

    CHECK(bins.index_of(d(0)) == 0);
    CHECK(bins.index_of(d(2)) == 0);
    CHECK(bins.index_of(d(3)) == 1);
    CHECK(bins.index_of(d(4)) == 1);
    CHECK(bins.index_of(d(5)) == 2);
    CHECK(bins.index_of(d(7)) == 2);
    CHECK_THROWS_AS(bins.index_of(d(8)), DataError);
    CHECK_THROWS_AS(bins.index_of(d(-1)), DataError);

    // Every day of the span lands in the bin whose edges claim it.
    for (int day = 0; day <= 7; ++day) {
        const int idx = bins.index_of(d(day));
        CHECK(bins.start(idx) <= d(day));
        if (idx < 2)
            CHECK(d(day) < bins.end(idx));
        else
            CHECK(d(day) <= bins.end(idx));
    }

    const TimeBins single = TimeBins::over({d(9)}, 4);
    CHECK(single.index_of(d(9)) == 0);  // zero span folds into the first bin

    CHECK_THROWS_AS(TimeBins::over({}, 3), DataError);
    CHECK_THROWS_AS(TimeBins::over({d(1)}, 0), DataError);
}

TEST_CASE("tf-idf uses smoothed idf and L2-normalized rows") {
    TermStats stats;
    const Eigen::MatrixXd x =
        tfidf_matrix({doc_of({"solar", "park"}), doc_of({"solar", "bank"})}, &stats);
    REQUIRE(stats.terms == std::vector<std::string>{"bank", "park", "solar"});
    REQUIRE(x.rows() == 2);
    REQUIRE(x.cols() == 3);

    const double idf_rare = std::log(3.0 / 2.0) + 1.0;  // df = 1
    const double idf_common = std::log(3.0 / 3.0) + 1.0;
    const double norm = std::sqrt(idf_rare * idf_rare + idf_common * idf_common);
    CHECK(x(0, 0) == 0.0);
    CHECK(x(0, 1) == doctest::Approx(idf_rare / norm).epsilon(1e-12));
    CHECK(x(0, 2) == doctest::Approx(idf_common / norm).epsilon(1e-12));
    CHECK(x(1, 0) == doctest::Approx(idf_rare / norm).epsilon(1e-12));
    CHECK(x.row(0).norm() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(stats.corpus_freq(2) == 2.0);  // solar appears twice

    // A document emptied by preprocessing keeps an all-zero row.
    const Eigen::MatrixXd with_empty =
        tfidf_matrix({doc_of({"alpha"}), doc_of({}), doc_of({"beta"})});
    CHECK(with_empty.row(1).isZero(0.0));
}

TEST_CASE("randomized svd agrees with a Jacobi oracle on singular values") {
    std::mt19937_64 g(2718);
    Eigen::MatrixXd x(6, 8);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = uniform(g, -2.0, 2.0);

    const RandomizedSvd svd = randomized_svd(x, 6, 12345);
    const std::vector<double> reference = oracle::singular_values(x);
    REQUIRE(svd.s.size() == 6);
    for (Eigen::Index i = 0; i < 6; ++i)
        CHECK(svd.s(i) == doctest::Approx(reference[static_cast<std::size_t>(i)]).epsilon(1e-6));
}

TEST_CASE("randomized svd reconstructs and caps the requested rank") {
    std::mt19937_64 g(31415);
    Eigen::MatrixXd x(6, 8);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = uniform(g, -1.0, 1.0);

    const RandomizedSvd svd = randomized_svd(x, 50, 9);  // capped at min(6, 8)
    REQUIRE(svd.u.cols() == 6);
    REQUIRE(svd.v.cols() == 6);
    const Eigen::MatrixXd rebuilt = svd.u * svd.s.asDiagonal() * svd.v.transpose();
    CHECK((rebuilt - x).norm() < 1e-8);
    CHECK((svd.u.transpose() * svd.u - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-9);
    CHECK((svd.v.transpose() * svd.v - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-9);

    const RandomizedSvd again = randomized_svd(x, 50, 9);
    CHECK((svd.u.array() == again.u.array()).all());  // same seed, same sketch
    CHECK_THROWS_AS(randomized_svd(x, 0, 9), DataError);
}

TEST_CASE("lsa embeddings separate disjoint vocabularies") {
    EmbeddingConfig config;
    config.d = 6;
    config.seed = 4;

    const std::vector<PreprocessedDoc> docs = {
        doc_of({"alpha", "beta", "gamma"}),
        doc_of({"delta", "epsilon", "zeta"}),
        doc_of({"alpha", "gamma"}),
    };
    const Eigen::MatrixXd e = embed_lsa(docs, config);
    REQUIRE(e.rows() == 3);
    REQUIRE(e.cols() == 6);
    CHECK(std::abs(e.row(0).dot(e.row(1))) < 1e-9);
    CHECK(e.row(0).norm() == doctest::Approx(1.0).epsilon(1e-9));
    // Rank is min(d, docs, terms) = 3: columns beyond it stay zero padding.
    CHECK(e.col(3).isZero(0.0));
    CHECK(e.col(5).isZero(0.0));
}

TEST_CASE("identical documents embed identically with a collapsed spectrum") {
    EmbeddingConfig config;
    config.d = 4;
    config.seed = 4;
    const std::vector<PreprocessedDoc> docs = {doc_of({"solar", "park"}),
                                               doc_of({"solar", "park"}),
                                               doc_of({"solar", "park"})};
    const Eigen::MatrixXd e = embed_lsa(docs, config);
    CHECK((e.row(0) - e.row(1)).norm() < 1e-9);
    CHECK((e.row(1) - e.row(2)).norm() < 1e-9);

    const Eigen::MatrixXd x = tfidf_matrix(docs);
    const RandomizedSvd svd = randomized_svd(x, 2, config.seed);
    CHECK(svd.s(0) > 1.0);
    CHECK(svd.s(1) < 1e-9);  // rank one: the second direction is numerical noise

    CHECK_THROWS_AS(embed_lsa({docs[0]}, config), DataError);
    EmbeddingConfig tiny = config;
    tiny.d = 1;
    CHECK_THROWS_AS(embed_lsa(docs, tiny), DataError);
}

TEST_CASE("external embedding files parse, normalize and reject malformed input") {
    const auto dir = temp_dir();
    const auto path = (dir / "embeddings.txt").string();

    write_file(path, "2 3\n1 0 0\n0 3 4\n");
    const Eigen::MatrixXd e = load_embeddings(path, 2);
    REQUIRE(e.rows() == 2);
    CHECK(e(0, 0) == 1.0);
    CHECK(e(1, 1) == doctest::Approx(0.6).epsilon(1e-12));  // normalized from (0,3,4)
    CHECK(e(1, 2) == doctest::Approx(0.8).epsilon(1e-12));

    auto message = [&](const std::string& content, std::size_t expected_n) {
        write_file(path, content);
        try {
            load_embeddings(path, expected_n);
        } catch (const DataError& err) {
            return std::string(err.what());
        }
        return std::string();
    };
    CHECK(message("2 3\n1 0 0\n0 3 4\n", 5).find("corpus has 5") != std::string::npos);
    CHECK(message("2 3\n1 0 0\n", 2).find("expected 2 data rows") != std::string::npos);
    CHECK(message("2 3\n1 0 0\n0 3\n", 2).find("expected 3") != std::string::npos);
    CHECK(message("2 3\n1 0 0\nx y z\n", 2).find("line 3") != std::string::npos);
    CHECK(message("", 2).find("empty") != std::string::npos);
    CHECK_THROWS_AS(load_embeddings((dir / "absent.txt").string(), 2), IoError);
}

TEST_CASE("k-means separates two obvious 1-D clusters") {
    Eigen::MatrixXd x(4, 1);
    x << 0.0, 0.1, 10.0, 10.1;
    const TopicModel model = fit_topics(x, 2, 7);

    CHECK(model.k == 2);
    CHECK(model.assignment[0] == model.assignment[1]);
    CHECK(model.assignment[2] == model.assignment[3]);
    CHECK(model.assignment[0] != model.assignment[2]);
    CHECK(model.sizes == std::vector<std::size_t>{2, 2});

    const double low = std::min(model.centroids(0, 0), model.centroids(1, 0));
    const double high = std::max(model.centroids(0, 0), model.centroids(1, 0));
    CHECK(low == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(high == doctest::Approx(10.05).epsilon(1e-12));
}

TEST_CASE("k-means handles the degenerate and invalid extremes") {
    Eigen::MatrixXd x(3, 2);
    x << 0.0, 0.0, 5.0, 0.0, 0.0, 5.0;
    const TopicModel each_own = fit_topics(x, 3, 1);
    CHECK(each_own.sizes == std::vector<std::size_t>{1, 1, 1});
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK((x.row(i) - each_own.centroids.row(each_own.assignment[static_cast<std::size_t>(i)]))
                  .norm() == 0.0);

    CHECK_THROWS_AS(fit_topics(x, 4, 1), DataError);
    CHECK_THROWS_AS(fit_topics(x, 1, 1), DataError);
}

TEST_CASE("k-means matches a 100-restart oracle on three blobs") {
    const Eigen::MatrixXd x = fixtures::three_blobs(20);
    const TopicModel model = fit_topics(x, 3, 42);
    const TopicModel again = fit_topics(x, 3, 42);
    CHECK(model.assignment == again.assignment);
    CHECK((model.centroids.array() == again.centroids.array()).all());

    const oracle::KmeansRef reference = oracle::kmeans_restarts(x, 3, 100, 1234);
    CHECK(oracle::clustering_agreement(model.assignment, reference.labels, 3) >= 0.95);
}

TEST_CASE("class-based tf-idf follows the weighting formula exactly") {
    const std::vector<std::vector<std::string>> classes = {
        {"solar", "park", "solar"},
        {"bank", "loan", "bank", "loan"},
    };
    const CtfidfResult result = compute_ctfidf(classes);
    REQUIRE(result.stats.terms == std::vector<std::string>{"bank", "loan", "park", "solar"});
    CHECK(result.stats.avg_class_tokens == 3.5);

    const auto w = [&](int cls, const std::string& term) {
        return result.weights(cls, result.stats.index.at(term));
    };
    CHECK(w(0, "solar") == 2.0 * std::log(1.0 + 3.5 / 2.0));
    CHECK(w(0, "park") == std::log(1.0 + 3.5));
    CHECK(w(1, "bank") == 2.0 * std::log(1.0 + 3.5 / 2.0));
    CHECK(w(1, "loan") == 2.0 * std::log(1.0 + 3.5 / 2.0));
    CHECK(w(0, "bank") == 0.0);
    CHECK(w(0, "loan") == 0.0);
    CHECK(w(1, "solar") == 0.0);
    CHECK(w(1, "park") == 0.0);

    CHECK_THROWS_AS(compute_ctfidf({}), DataError);
    CHECK_THROWS_AS(compute_ctfidf({{"word"}, {}}), DataError);
}

TEST_CASE("single-class corpora of unique terms weigh every term at ln(1+V)") {
    const std::vector<std::vector<std::string>> classes = {
        {"alpha", "bravo", "charlie", "delta", "echo"}};
    const CtfidfResult result = compute_ctfidf(classes);
    const double expected = std::log(1.0 + 5.0);
    for (Eigen::Index j = 0; j < result.weights.cols(); ++j)
        CHECK(result.weights(0, j) == expected);  // exact, not approximate
}

TEST_CASE("class-based tf-idf matches the independent oracle on a mixed fixture") {
    const auto docs = fixtures::topic_docs();
    const auto assignment = fixtures::topic_assignment();
    std::vector<std::vector<std::string>> classes(3);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto& cls = classes[static_cast<std::size_t>(assignment[i])];
        cls.insert(cls.end(), docs[i].tokens.begin(), docs[i].tokens.end());
    }
    const CtfidfResult result = compute_ctfidf(classes);
    const auto reference = oracle::ctfidf(classes);

    for (std::size_t c = 0; c < classes.size(); ++c)
        for (Eigen::Index j = 0; j < result.weights.cols(); ++j) {
            const std::string& term = result.stats.terms[static_cast<std::size_t>(j)];
            const auto it = reference[c].find(term);
            const double expected = it == reference[c].end() ? 0.0 : it->second;
            CHECK(std::abs(result.weights(static_cast<Eigen::Index>(c), j) - expected) < 1e-12);
        }
}

TEST_CASE("doubling every class scales weights by exactly two") {
    std::vector<std::vector<std::string>> classes = {
        {"solar", "park", "solar"},
        {"bank", "loan", "bank", "loan"},
    };
    const CtfidfResult base = compute_ctfidf(classes);
    for (auto& cls : classes) {
        const auto copy = cls;
        cls.insert(cls.end(), copy.begin(), copy.end());
    }
    const CtfidfResult doubled = compute_ctfidf(classes);
    // A and every f(t) double, so ln(1 + A/f) is untouched and tf doubles.
    CHECK((doubled.weights - 2.0 * base.weights).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frozen-stats weighting tolerates empty classes and unknown terms") {
    const CtfidfResult fitted = compute_ctfidf({{"solar", "park"}, {"bank", "loan"}});

    const Eigen::MatrixXd same = ctfidf_with_stats({{"solar", "park"}, {"bank", "loan"}},
                                                   fitted.stats);
    CHECK((same.array() == fitted.weights.array()).all());

    const Eigen::MatrixXd sparse =
        ctfidf_with_stats({{}, {"bank", "neverseen"}}, fitted.stats);
    CHECK(sparse.row(0).isZero(0.0));  // empty class allowed here
    CHECK(sparse(1, fitted.stats.index.at("bank")) > 0.0);
    CHECK(sparse.row(1).sum() ==
          sparse(1, fitted.stats.index.at("bank")));  // the unknown term left no trace

    TermStats ghost = fitted.stats;
    ghost.corpus_freq(0) = 0.0;  // frozen f(t) of zero must not divide
    const Eigen::MatrixXd guarded = ctfidf_with_stats({{"bank"}, {"loan"}}, ghost);
    CHECK(guarded(0, 0) == 0.0);
}

TEST_CASE("top words rank by weight then lexicographically, dropping zeros") {
    const std::vector<std::string> terms = {"delta", "alpha", "echo", "bravo", "charlie"};
    Eigen::MatrixXd weights(1, 5);
    weights << 1.0, 1.0, 1.0, 1.0, 1.0;
    CHECK(top_words(weights, terms, 3) ==
          std::vector<std::vector<std::string>>{{"alpha", "bravo", "charlie"}});

    weights << 0.5, 2.0, 0.0, 1.0, 0.0;
    CHECK(top_words(weights, terms, 10) ==
          std::vector<std::vector<std::string>>{{"alpha", "bravo", "delta"}});

    CHECK_THROWS_AS(top_words(weights, {"too", "short"}, 3), DataError);
}

TEST_CASE("topic probabilities form a distance-based softmax") {
    Eigen::MatrixXd centroids(2, 2);
    centroids << 0.0, 0.0, 2.0, 0.0;

    Eigen::MatrixXd midpoint(1, 2);
    midpoint << 1.0, 0.0;
    const Eigen::MatrixXd equal = topic_probabilities(midpoint, centroids);
    CHECK(equal(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(equal(0, 1) == doctest::Approx(0.5).epsilon(1e-12));

    Eigen::MatrixXd far(1, 2);
    far << 0.0, 0.0;
    Eigen::MatrixXd spread_centroids(2, 2);
    spread_centroids << 0.0, 0.0, 7.0, 0.0;  // squared distance 49 >= 40
    const Eigen::MatrixXd confident = topic_probabilities(far, spread_centroids);
    CHECK(confident(0, 0) > 0.999);

    std::mt19937_64 g(91);
    Eigen::MatrixXd points(40, 2), many(5, 2);
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = 0; j < 2; ++j) points(i, j) = uniform(g, -1000.0, 1000.0);
    for (Eigen::Index i = 0; i < many.rows(); ++i)
        for (Eigen::Index j = 0; j < 2; ++j) many(i, j) = uniform(g, -1000.0, 1000.0);
    const Eigen::MatrixXd probs = topic_probabilities(points, many);
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        CHECK(std::abs(probs.row(i).sum() - 1.0) < 1e-9);
        CHECK(probs.row(i).minCoeff() >= 0.0);
        CHECK(std::isfinite(probs.row(i).maxCoeff()));
    }

    CHECK_THROWS_AS(topic_probabilities(points, Eigen::MatrixXd::Zero(2, 3)), DataError);
}

TEST_CASE("representation fill produces coherent per-topic words") {
    const newstraject::TopicModel model = fixtures::topic_model();
    REQUIRE(model.top_words.size() == 3);
    const auto& solar = model.top_words[0];
    CHECK(std::find(solar.begin(), solar.end(), "solar") != solar.end());
    CHECK(std::find(solar.begin(), solar.end(), "energy") != solar.end());
    const auto& banking = model.top_words[1];
    CHECK(std::find(banking.begin(), banking.end(), "bank") != banking.end());
    CHECK(std::find(banking.begin(), banking.end(), "loan") != banking.end());

    // "city" occurs once per topic: its weight must be identical in all rows.
    const auto city = model.term_stats.index.at("city");
    CHECK(model.global_ctfidf(0, city) == model.global_ctfidf(1, city));
    CHECK(model.global_ctfidf(1, city) == model.global_ctfidf(2, city));

    newstraject::TopicModel wrong = model;
    wrong.assignment.pop_back();
    CHECK_THROWS_AS(fill_representation(wrong, fixtures::topic_docs()), DataError);
}

TEST_CASE("topics over time without tuning equals standalone bin weighting") {
    const auto model = fixtures::topic_model();
    const auto docs = fixtures::topic_docs();
    const auto stamps = fixtures::topic_timestamps();

    const TopicsOverTime tot = topics_over_time(model, docs, stamps, 3, false, false);
    REQUIRE(tot.cells.size() == 3);
    REQUIRE(tot.cells[0].size() == 3);

    // Frequencies per (topic, bin) down to the empty cell.
    CHECK(tot.cells[0][0].frequency == 2);
    CHECK(tot.cells[0][1].frequency == 2);
    CHECK(tot.cells[0][2].frequency == 0);
    CHECK(tot.cells[1][0].frequency == 1);
    CHECK(tot.cells[2][2].frequency == 2);
    for (int b = 0; b < 3; ++b) {
        std::size_t total = 0;
        for (int t = 0; t < 3; ++t) total += tot.cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)].frequency;
        CHECK(total == 4);
    }

    // Independent recount: global f(t) and A from scratch, bin tf by hand.
    std::map<std::string, double> freq;
    double total_tokens = 0.0;
    for (const auto& d : docs)
        for (const auto& t : d.tokens) {
            freq[t] += 1.0;
            total_tokens += 1.0;
        }
    const double avg = total_tokens / 3.0;
    const TimeBins bins = TimeBins::over(stamps, 3);
    for (int topic = 0; topic < 3; ++topic)
        for (int b = 0; b < 3; ++b) {
            std::map<std::string, double> tf;
            for (std::size_t i = 0; i < docs.size(); ++i)
                if (model.assignment[i] == topic && bins.index_of(stamps[i]) == b)
                    for (const auto& t : docs[i].tokens) tf[t] += 1.0;
            const auto& cell = tot.cells[static_cast<std::size_t>(topic)][static_cast<std::size_t>(b)];
            for (Eigen::Index j = 0; j < cell.representation.size(); ++j) {
                const std::string& term = model.term_stats.terms[static_cast<std::size_t>(j)];
                const double expected =
                    tf.count(term) ? tf[term] * std::log(1.0 + avg / freq[term]) : 0.0;
                CHECK(std::abs(cell.representation(j) - expected) < 1e-12);
            }
        }
}

TEST_CASE("a single bin with global tuning reproduces the global representation") {
    const auto model = fixtures::topic_model();
    const TopicsOverTime tot = topics_over_time(model, fixtures::topic_docs(),
                                                fixtures::topic_timestamps(), 1, true, true);
    REQUIRE(tot.cells[0].size() == 1);
    for (int t = 0; t < 3; ++t) {
        const auto& cell = tot.cells[static_cast<std::size_t>(t)][0];
        CHECK((cell.representation.transpose() - model.global_ctfidf.row(t)).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK(cell.top_words == model.top_words[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("evolution and global tuning average in the documented order") {
    const auto model = fixtures::topic_model();
    const auto docs = fixtures::topic_docs();
    const auto stamps = fixtures::topic_timestamps();

    const TopicsOverTime raw = topics_over_time(model, docs, stamps, 3, false, false);
    const TopicsOverTime tuned = topics_over_time(model, docs, stamps, 3, true, true);
    const TopicsOverTime global_only = topics_over_time(model, docs, stamps, 3, true, false);
    const TopicsOverTime evolution_only = topics_over_time(model, docs, stamps, 3, false, true);

    for (int t = 0; t < 3; ++t) {
        const auto ti = static_cast<std::size_t>(t);
        // Global-only: mean of the raw bin row and the global row.
        for (int b = 0; b < 3; ++b) {
            const Eigen::VectorXd expected =
                (raw.cells[ti][static_cast<std::size_t>(b)].representation +
                 model.global_ctfidf.row(t).transpose()) /
                2.0;
            CHECK((global_only.cells[ti][static_cast<std::size_t>(b)].representation - expected)
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }

        // Evolution-only: bin 0 is raw, later bins average with the previous
        // final representation.
        CHECK((evolution_only.cells[ti][0].representation - raw.cells[ti][0].representation)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        Eigen::VectorXd previous = raw.cells[ti][0].representation;
        for (int b = 1; b < 3; ++b) {
            previous = (raw.cells[ti][static_cast<std::size_t>(b)].representation + previous) / 2.0;
            CHECK((evolution_only.cells[ti][static_cast<std::size_t>(b)].representation - previous)
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }

        // Both: evolve against the previous bin's post-global row, then
        // average with the global row.
        Eigen::VectorXd carried;
        for (int b = 0; b < 3; ++b) {
            Eigen::VectorXd rep = raw.cells[ti][static_cast<std::size_t>(b)].representation;
            if (b > 0) rep = (rep + carried) / 2.0;
            rep = (rep + model.global_ctfidf.row(t).transpose()) / 2.0;
            carried = rep;
            CHECK((tuned.cells[ti][static_cast<std::size_t>(b)].representation - rep)
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("topics over time validates its inputs") {
    const auto model = fixtures::topic_model();
    const auto docs = fixtures::topic_docs();
    auto stamps = fixtures::topic_timestamps();

    stamps.pop_back();
    CHECK_THROWS_AS(topics_over_time(model, docs, stamps, 3, true, true), DataError);
    stamps = fixtures::topic_timestamps();
    CHECK_THROWS_AS(topics_over_time(model, docs, stamps, 0, true, true), DataError);

    newstraject::TopicModel unfilled;
    unfilled.k = 3;
    unfilled.assignment = fixtures::topic_assignment();
    CHECK_THROWS_AS(topics_over_time(unfilled, docs, stamps, 3, true, true), DataError);
}

TEST_CASE("topic model JSON artifacts round-trip exactly") {
    newstraject::TopicModel model = fixtures::topic_model();
    model.centroids = Eigen::MatrixXd::Zero(3, 2);
    model.centroids << 0.25, -1.5, 3.0, 0.125, -0.75, 2.5;

    const auto path = (temp_dir() / "topic_model.json").string();
    save_topic_model(path, model);
    const newstraject::TopicModel loaded = load_topic_model(path);

    CHECK(loaded.k == model.k);
    CHECK(loaded.assignment == model.assignment);
    CHECK(loaded.sizes == model.sizes);
    CHECK(loaded.top_words == model.top_words);
    CHECK(loaded.term_stats.terms == model.term_stats.terms);
    CHECK(loaded.term_stats.avg_class_tokens == model.term_stats.avg_class_tokens);
    CHECK((loaded.term_stats.corpus_freq.array() == model.term_stats.corpus_freq.array()).all());
    CHECK((loaded.global_ctfidf.array() == model.global_ctfidf.array()).all());
    CHECK((loaded.centroids.array() == model.centroids.array()).all());

    write_file(path, "{ not json");
    CHECK_THROWS_AS(load_topic_model(path), DataError);
    CHECK_THROWS_AS(load_topic_model((temp_dir() / "absent.json").string()), IoError);
}

TEST_CASE("topic csv artifacts carry the documented columns") {
    const auto model = fixtures::topic_model();
    const auto table_path = (temp_dir() / "topic_table.csv").string();
    write_topic_table_csv(table_path, model);
    const std::string table = read_file(table_path);
    CHECK(table.rfind("topic_id,size,word_1,word_2,word_3,word_4,word_5,word_6,word_7,word_8,"
                      "word_9,word_10\n",
                      0) == 0);
    CHECK(table.find("\n0,4,") != std::string::npos);
    CHECK(table.find("\n2,4,") != std::string::npos);

    const TopicsOverTime tot = topics_over_time(model, fixtures::topic_docs(),
                                                fixtures::topic_timestamps(), 3, true, true);
    const auto tot_path = (temp_dir() / "topics_over_time.csv").string();
    write_topics_over_time_csv(tot_path, tot);
    const std::string content = read_file(tot_path);
    CHECK(content.rfind("topic_id,bin_start,bin_end,frequency,top_words\n", 0) == 0);
    // 3 topics x 3 bins plus the header.
    CHECK(std::count(content.begin(), content.end(), '\n') == 10);
    CHECK(content.find("2021-01-01") != std::string::npos);
    CHECK(content.find(";") != std::string::npos);  // semicolon-joined word lists
}
