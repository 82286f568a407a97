#include "newstraject/classifier.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "newstraject/csv.hpp"
#include "newstraject/errors.hpp"
#include "newstraject/log.hpp"
#include "newstraject/rng.hpp"

namespace newstraject {

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void ClassifierConfig::validate() const {
    if (d_e < 1 || h < 1 || L < 1 || batch_size < 1 || epochs < 1)
        throw DataError("classifier config: dimensions, batch size and epochs must be positive");
    if (!(dropout >= 0.0 && dropout < 1.0))
        throw DataError("classifier config: dropout must be in [0,1)");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DataError("classifier config: threshold must be in (0,1)");
    if (!(lr > 0.0)) throw DataError("classifier config: learning rate must be positive");
    if (max_vocab < 3) throw DataError("classifier config: max_vocab must be at least 3");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("classifier config: train fraction must be in (0,1)");
}

SplitPlan plan_split(std::size_t n, std::uint64_t seed, double train_fraction) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(derive_seed(seed, "shuffle"));
    shuffle_inplace(order, rng);
    auto [train, val] = split_train_val(order, train_fraction);
    return {std::move(train), std::move(val)};
}

Eigen::VectorXd encode_targets(const Taxonomy& taxonomy, const std::vector<std::string>& labels) {
    const auto ids = taxonomy.ordered_ids();
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ids.size()));
    for (const auto& label : labels) {
        auto it = std::lower_bound(ids.begin(), ids.end(), label);
        if (it == ids.end() || *it != label)
            throw DataError("label \"" + label + "\" is not in the taxonomy");
        row(it - ids.begin()) = 1.0;
    }
    return row;
}

namespace {

// Forward in infer mode, chunked so hidden-layer intermediates stay small.
Eigen::MatrixXd infer_probs(const Parameters& params, const Eigen::MatrixXi& inputs,
                            int batch_size) {
    std::mt19937_64 unused_rng(0);
    Eigen::MatrixXd probs(inputs.rows(), params.w2.cols());
    for (Eigen::Index start = 0; start < inputs.rows(); start += batch_size) {
        const Eigen::Index rows = std::min<Eigen::Index>(batch_size, inputs.rows() - start);
        probs.middleRows(start, rows) = forward(params, inputs.middleRows(start, rows), 0.0,
                                                RunMode::infer, unused_rng);
    }
    return probs;
}

}  // namespace

TrainResult train(const std::vector<Document>& docs, const Taxonomy& taxonomy,
                  const StopwordSet& stopwords, const ClassifierConfig& config) {
    config.validate();
    if (taxonomy.size() == 0) throw DataError("cannot train against an empty taxonomy");

    std::vector<const Document*> labeled;
    for (const auto& doc : docs)
        if (!doc.labels.empty()) labeled.push_back(&doc);
    if (labeled.size() < 2)
        throw DataError("training needs at least 2 labeled documents, found " +
                        std::to_string(labeled.size()));

    const auto label_ids = taxonomy.ordered_ids();
    const auto n_labels = static_cast<Eigen::Index>(label_ids.size());

    std::vector<PreprocessedDoc> pre(labeled.size());
    std::vector<Eigen::VectorXd> targets(labeled.size());
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        pre[i] = preprocess(labeled[i]->text, stopwords);
        targets[i] = encode_targets(taxonomy, labeled[i]->labels);
    }

    SplitPlan plan = plan_split(labeled.size(), config.seed, config.train_fraction);

    std::vector<PreprocessedDoc> vocab_source;
    if (config.vocab_before_split) {
        vocab_source = pre;
    } else {
        vocab_source.reserve(plan.train.size());
        for (std::size_t i : plan.train) vocab_source.push_back(pre[i]);
    }
    Vocabulary vocab = Vocabulary::build(vocab_source, config.max_vocab);

    auto encode_block = [&](const std::vector<std::size_t>& idxs, Eigen::MatrixXi& inputs,
                            Eigen::MatrixXd& gold) {
        inputs.resize(static_cast<Eigen::Index>(idxs.size()), config.L);
        gold.resize(static_cast<Eigen::Index>(idxs.size()), n_labels);
        for (std::size_t r = 0; r < idxs.size(); ++r) {
            const auto enc = encode_pad(vocab, pre[idxs[r]], config.L);
            for (int c = 0; c < config.L; ++c) inputs(static_cast<Eigen::Index>(r), c) = enc[c];
            gold.row(static_cast<Eigen::Index>(r)) = targets[idxs[r]].transpose();
        }
    };
    Eigen::MatrixXi train_x, val_x;
    Eigen::MatrixXd train_y, val_y;
    encode_block(plan.train, train_x, train_y);
    encode_block(plan.val, val_x, val_y);

    NetShape shape{static_cast<int>(vocab.size()), config.d_e, config.h,
                   static_cast<int>(n_labels), config.L};
    std::mt19937_64 init_rng(derive_seed(config.seed, "init"));
    Parameters params = Parameters::init(shape, init_rng);
    AdamState adam = AdamState::zeros(shape);
    std::mt19937_64 train_rng(derive_seed(config.seed, "train"));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(train_x.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    TrainReport report;
    report.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        shuffle_inplace(order, train_rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
            const auto rows = std::min<std::size_t>(static_cast<std::size_t>(config.batch_size),
                                                    order.size() - start);
            Eigen::MatrixXi batch_x(static_cast<Eigen::Index>(rows), config.L);
            Eigen::MatrixXd batch_y(static_cast<Eigen::Index>(rows), n_labels);
            for (std::size_t r = 0; r < rows; ++r) {
                batch_x.row(static_cast<Eigen::Index>(r)) = train_x.row(order[start + r]);
                batch_y.row(static_cast<Eigen::Index>(r)) = train_y.row(order[start + r]);
            }
            ForwardCache cache;
            const auto probs =
                forward(params, batch_x, config.dropout, RunMode::train, train_rng, &cache);
            loss_sum += bce_loss(probs, batch_y) * static_cast<double>(rows);
            const Gradients grads = backward(cache, params, batch_y);
            adam_step(params, grads, adam, config.lr);
        }

        const auto val_probs = infer_probs(params, val_x, config.batch_size);
        const Metrics val = metrics_from(val_probs, val_y, config.threshold);
        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(order.size());
        rec.val_loss = bce_loss(val_probs, val_y);
        rec.val_accuracy = val.accuracy;
        rec.val_precision = val.precision;
        report.push_back(rec);
        NT_INFO("epoch %d/%d train_loss=%.6f val_loss=%.6f val_acc=%.4f val_prec=%.4f", epoch,
                config.epochs, rec.train_loss, rec.val_loss, rec.val_accuracy, rec.val_precision);
    }

    TrainResult result;
    result.model.params = std::move(params);
    result.model.vocab = std::move(vocab);
    result.model.label_ids = label_ids;
    result.model.stopwords = stopwords;
    result.model.seq_len = config.L;
    result.model.dropout = config.dropout;
    result.model.threshold = config.threshold;
    result.model.seed = config.seed;
    result.report = std::move(report);
    return result;
}

Prediction predict(const TrainedClassifier& model, const Document& doc) {
    const PreprocessedDoc pre = preprocess(doc.text, model.stopwords);
    const auto encoded = encode_pad(model.vocab, pre, model.seq_len);
    Eigen::MatrixXi input(1, model.seq_len);
    for (int c = 0; c < model.seq_len; ++c) input(0, c) = encoded[static_cast<std::size_t>(c)];
    std::mt19937_64 unused_rng(0);
    const auto probs = forward(model.params, input, 0.0, RunMode::infer, unused_rng);

    Prediction p;
    p.probs = probs.row(0).transpose();
    for (Eigen::Index k = 0; k < p.probs.size(); ++k)
        if (p.probs(k) >= model.threshold) p.labels.push_back(model.label_ids[static_cast<std::size_t>(k)]);
    return p;
}

Metrics metrics_from(const Eigen::MatrixXd& probs, const Eigen::MatrixXd& targets,
                     double threshold) {
    if (probs.rows() != targets.rows() || probs.cols() != targets.cols())
        throw DataError("metrics: prediction and target shapes differ");
    if (probs.size() == 0) throw DataError("metrics need at least one document");

    long long match = 0, tp = 0, fp = 0;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        for (Eigen::Index k = 0; k < probs.cols(); ++k) {
            const bool predicted = probs(i, k) >= threshold;
            const bool gold = targets(i, k) != 0.0;
            if (predicted == gold) ++match;
            if (predicted && gold) ++tp;
            if (predicted && !gold) ++fp;
        }
    }
    Metrics m;
    m.accuracy = static_cast<double>(match) / static_cast<double>(probs.size());
    m.precision = (tp + fp) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    return m;
}

Metrics evaluate(const TrainedClassifier& model, const std::vector<Document>& docs,
                 const Taxonomy& taxonomy) {
    std::vector<const Document*> labeled;
    for (const auto& doc : docs)
        if (!doc.labels.empty()) labeled.push_back(&doc);
    if (labeled.empty()) throw DataError("evaluation needs at least one labeled document");

    const auto n_labels = static_cast<Eigen::Index>(model.label_ids.size());
    Eigen::MatrixXd probs(static_cast<Eigen::Index>(labeled.size()), n_labels);
    Eigen::MatrixXd gold(static_cast<Eigen::Index>(labeled.size()), n_labels);
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        probs.row(static_cast<Eigen::Index>(i)) = predict(model, *labeled[i]).probs.transpose();
        gold.row(static_cast<Eigen::Index>(i)) =
            encode_targets(taxonomy, labeled[i]->labels).transpose();
    }
    return metrics_from(probs, gold, model.threshold);
}

void save_model(const std::string& dir, const TrainedClassifier& model) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create model directory " + dir + ": " + ec.message());

    ModelFile file;
    file.params = model.params;
    file.seq_len = model.seq_len;
    file.dropout = model.dropout;
    file.seed = model.seed;
    write_model(dir + "/params.bin", file);

    model.vocab.save(dir + "/vocab.txt", model.seq_len);

    std::string labels;
    for (const auto& id : model.label_ids) labels += id + "\n";
    write_file(dir + "/labels.txt", labels);

    std::vector<std::string> words(model.stopwords.begin(), model.stopwords.end());
    std::sort(words.begin(), words.end());
    std::string stopword_text;
    for (const auto& w : words) stopword_text += w + "\n";
    write_file(dir + "/stopwords.txt", stopword_text);

    nlohmann::ordered_json cfg;
    cfg["d_e"] = model.params.embedding.cols();
    cfg["h"] = model.params.w1.cols();
    cfg["L"] = model.seq_len;
    cfg["dropout"] = model.dropout;
    cfg["threshold"] = model.threshold;
    cfg["seed"] = model.seed;
    cfg["vocab_size"] = model.vocab.size();
    cfg["labels"] = model.label_ids.size();
    write_file(dir + "/config.json", cfg.dump(2) + "\n");
}

TrainedClassifier load_model(const std::string& dir) {
    ModelFile file = read_model(dir + "/params.bin");

    int vocab_len = 0;
    Vocabulary vocab = Vocabulary::load(dir + "/vocab.txt", &vocab_len);
    if (vocab_len != file.seq_len)
        throw DataError("model directory " + dir + ": vocab L=" + std::to_string(vocab_len) +
                        " does not match params L=" + std::to_string(file.seq_len));
    if (static_cast<Eigen::Index>(vocab.size()) != file.params.embedding.rows())
        throw DataError("model directory " + dir + ": vocabulary size does not match embedding");

    std::vector<std::string> label_ids;
    const std::string content = read_file(dir + "/labels.txt");
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        if (nl > pos) label_ids.push_back(content.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (static_cast<Eigen::Index>(label_ids.size()) != file.params.w2.cols())
        throw DataError("model directory " + dir + ": label count does not match output layer");

    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(read_file(dir + "/config.json"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model directory " + dir + ": bad config.json: " + e.what());
    }

    TrainedClassifier model;
    model.params = std::move(file.params);
    model.vocab = std::move(vocab);
    model.label_ids = std::move(label_ids);
    model.stopwords = parse_stopwords(read_file(dir + "/stopwords.txt"));
    model.seq_len = file.seq_len;
    model.dropout = file.dropout;
    model.threshold = cfg.value("threshold", 0.5);
    model.seed = file.seed;
    return model;
}

void write_metrics_csv(const std::string& path, const TrainReport& report) {
    std::string out = "epoch,train_loss,val_loss,val_accuracy,val_precision\n";
    for (const auto& rec : report) {
        out += csv::join_row({std::to_string(rec.epoch), fmt6(rec.train_loss), fmt6(rec.val_loss),
                              fmt6(rec.val_accuracy), fmt6(rec.val_precision)}) +
               "\n";
    }
    write_file(path, out);
}

}  // namespace newstraject
