#include "newstraject/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <utility>

#include <json.hpp>

#include "newstraject/csv.hpp"
#include "newstraject/errors.hpp"
#include "newstraject/log.hpp"
#include "newstraject/report.hpp"
#include "newstraject/trajectory.hpp"

namespace newstraject {

namespace {

using nlohmann::json;

void assign_key(RunConfig& cfg, const std::string& key, const json& value,
                const std::string& path) {
    try {
        if (key == "corpus") cfg.corpus = value.get<std::string>();
        else if (key == "taxonomy") cfg.taxonomy = value.get<std::string>();
        else if (key == "stopwords") cfg.stopwords = value.get<std::string>();
        else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
        else if (key == "model_dir") cfg.model_dir = value.get<std::string>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "embedding_provider") cfg.embedding_provider = value.get<std::string>();
        else if (key == "embedding_dim") cfg.embedding_dim = value.get<int>();
        else if (key == "external_embeddings") cfg.external_embeddings = value.get<std::string>();
        else if (key == "k") cfg.k = value.get<int>();
        else if (key == "nr_bins") cfg.nr_bins = value.get<int>();
        else if (key == "global_tuning") cfg.global_tuning = value.get<bool>();
        else if (key == "evolution_tuning") cfg.evolution_tuning = value.get<bool>();
        else if (key == "hot_ratio") cfg.hot_ratio = value.get<double>();
        else if (key == "d_e") cfg.d_e = value.get<int>();
        else if (key == "h") cfg.h = value.get<int>();
        else if (key == "L") cfg.L = value.get<int>();
        else if (key == "dropout") cfg.dropout = value.get<double>();
        else if (key == "batch_size") cfg.batch_size = value.get<int>();
        else if (key == "epochs") cfg.epochs = value.get<int>();
        else if (key == "lr") cfg.lr = value.get<double>();
        else if (key == "threshold") cfg.threshold = value.get<double>();
        else if (key == "max_vocab") cfg.max_vocab = value.get<std::size_t>();
        else if (key == "train_fraction") cfg.train_fraction = value.get<double>();
        else if (key == "vocab_before_split") cfg.vocab_before_split = value.get<bool>();
        else if (key == "date_window_start") cfg.date_window_start = value.get<std::string>();
        else if (key == "date_window_end") cfg.date_window_end = value.get<std::string>();
        else throw DataError(path + ": unknown config key \"" + key + "\"");
    } catch (const json::exception&) {
        throw DataError(path + ": config key \"" + key + "\" has the wrong type");
    }
}

std::optional<std::pair<Date, Date>> parse_window(const RunConfig& cfg) {
    if (cfg.date_window_start.empty() && cfg.date_window_end.empty()) return std::nullopt;
    if (cfg.date_window_start.empty() || cfg.date_window_end.empty())
        throw DataError("config: date_window_start and date_window_end must be set together");
    auto start = Date::parse(cfg.date_window_start);
    auto end = Date::parse(cfg.date_window_end);
    if (!start || !end)
        throw DataError("config: date window bounds must be YYYY-MM-DD dates");
    if (*end < *start) throw DataError("config: date window end precedes its start");
    return std::make_pair(*start, *end);
}

std::string artifact(const RunConfig& cfg, const char* name) {
    return cfg.output_dir + "/" + name;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

StopwordSet stopwords_for(const RunConfig& cfg) {
    return cfg.stopwords.empty() ? builtin_stopwords() : load_stopwords(cfg.stopwords);
}

Corpus read_corpus_artifact(const RunConfig& cfg) {
    return ingest_documents(artifact(cfg, "corpus.jsonl"));
}

// Preprocessed docs in corpus order; ids must line up with the corpus
// artifact or the stage chain is out of step.
std::vector<PreprocessedDoc> read_preprocessed_artifact(const RunConfig& cfg,
                                                        const Corpus& corpus) {
    const std::string path = artifact(cfg, "preprocessed.jsonl");
    const std::string content = read_file(path);

    std::vector<PreprocessedDoc> docs;
    docs.reserve(corpus.documents.size());
    std::size_t line_no = 0, doc_no = 0, pos = 0;
    while (pos <= content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        ++line_no;
        const std::string line = content.substr(pos, nl - pos);
        pos = nl + 1;
        if (nl == content.size() && line.empty()) break;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed JSON (" +
                            e.what() + ")");
        }
        if (doc_no >= corpus.documents.size())
            throw DataError(path + ": more entries than corpus documents, rerun preprocess");
        if (!obj.contains("id") || !obj.contains("tokens") || !obj["tokens"].is_array())
            throw DataError(path + " line " + std::to_string(line_no) +
                            ": expected {\"id\", \"tokens\"}");
        if (obj["id"].get<std::string>() != corpus.documents[doc_no].id)
            throw DataError(path + " line " + std::to_string(line_no) +
                            ": id does not match the corpus order, rerun preprocess");

        PreprocessedDoc doc;
        for (const auto& tok : obj["tokens"]) doc.tokens.push_back(tok.get<std::string>());
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i > 0) doc.joined += ' ';
            doc.joined += doc.tokens[i];
        }
        docs.push_back(std::move(doc));
        ++doc_no;
        if (nl == content.size()) break;
    }
    if (docs.size() != corpus.documents.size())
        throw DataError(path + ": fewer entries than corpus documents, rerun preprocess");
    return docs;
}

std::vector<int> read_assignments_artifact(const RunConfig& cfg, const Corpus& corpus) {
    const std::string path = artifact(cfg, "assignments.csv");
    const auto rows = csv::parse(read_file(path));
    if (rows.empty() || rows[0] != std::vector<std::string>{"doc_id", "topic_id"})
        throw DataError(path + ": missing header `doc_id,topic_id`");
    if (rows.size() - 1 != corpus.documents.size())
        throw DataError(path + ": " + std::to_string(rows.size() - 1) + " rows for " +
                        std::to_string(corpus.documents.size()) + " documents, rerun topics");

    std::vector<int> assignment(corpus.documents.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
            throw DataError(path + " row " + std::to_string(i + 1) + ": expected 2 fields");
        if (rows[i][0] != corpus.documents[i - 1].id)
            throw DataError(path + " row " + std::to_string(i + 1) +
                            ": id does not match the corpus order, rerun topics");
        try {
            assignment[i - 1] = std::stoi(rows[i][1]);
        } catch (const std::exception&) {
            throw DataError(path + " row " + std::to_string(i + 1) + ": bad topic id \"" +
                            rows[i][1] + "\"");
        }
    }
    return assignment;
}

std::vector<Date> timestamps_of(const Corpus& corpus) {
    std::vector<Date> out;
    out.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) out.push_back(doc.timestamp);
    return out;
}

Eigen::MatrixXd embeddings_for(const RunConfig& cfg, const std::vector<PreprocessedDoc>& pre) {
    if (cfg.embedding_provider == "external")
        return load_embeddings(cfg.external_embeddings, pre.size());
    return embed_lsa(pre, cfg.embedding_config());
}

// The largest topic, lowest id on ties; the per-topic charts focus on it.
int largest_topic(const std::vector<std::size_t>& sizes) {
    return static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

TopicsOverTime frequencies_only(const std::vector<int>& assignment,
                                const std::vector<Date>& timestamps, int k, int nr_bins) {
    TopicsOverTime tot;
    tot.bins = TimeBins::over(timestamps, nr_bins);
    tot.cells.assign(static_cast<std::size_t>(k),
                     std::vector<TotCell>(static_cast<std::size_t>(nr_bins)));
    for (std::size_t i = 0; i < assignment.size(); ++i)
        ++tot.cells[static_cast<std::size_t>(assignment[i])]
                   [static_cast<std::size_t>(tot.bins.index_of(timestamps[i]))]
                       .frequency;
    return tot;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
    json parsed;
    try {
        parsed = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw DataError(path + ": malformed config JSON: " + std::string(e.what()));
    }
    if (!parsed.is_object()) throw DataError(path + ": config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : parsed.items()) assign_key(cfg, key, value, path);
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    if (corpus.empty()) throw DataError("config: \"corpus\" path is required");
    if (taxonomy.empty()) throw DataError("config: \"taxonomy\" path is required");
    if (embedding_provider != "lsa" && embedding_provider != "external")
        throw DataError("config: embedding_provider must be \"lsa\" or \"external\"");
    if (embedding_provider == "external" && external_embeddings.empty())
        throw DataError("config: external embeddings need an \"external_embeddings\" path");
    if (embedding_dim < 2) throw DataError("config: embedding_dim must be at least 2");
    if (k < 2) throw DataError("config: k must be at least 2");
    if (nr_bins < 1) throw DataError("config: nr_bins must be at least 1");
    if (!(hot_ratio > 0.0)) throw DataError("config: hot_ratio must be positive");
    classifier_config().validate();
    parse_window(*this);
}

ClassifierConfig RunConfig::classifier_config() const {
    ClassifierConfig cfg;
    cfg.d_e = d_e;
    cfg.h = h;
    cfg.L = L;
    cfg.dropout = dropout;
    cfg.batch_size = batch_size;
    cfg.epochs = epochs;
    cfg.lr = lr;
    cfg.threshold = threshold;
    cfg.seed = seed;
    cfg.max_vocab = max_vocab;
    cfg.train_fraction = train_fraction;
    cfg.vocab_before_split = vocab_before_split;
    return cfg;
}

EmbeddingConfig RunConfig::embedding_config() const {
    EmbeddingConfig cfg;
    cfg.provider =
        embedding_provider == "external" ? EmbeddingProvider::external : EmbeddingProvider::lsa;
    cfg.d = embedding_dim;
    cfg.seed = seed;
    cfg.external_path = external_embeddings;
    return cfg;
}

void stage_ingest(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    Corpus corpus = ingest_documents(config.corpus);
    Taxonomy taxonomy = load_taxonomy(config.taxonomy);
    const auto report = validate_corpus(corpus, taxonomy, parse_window(config));

    write_documents(corpus, artifact(config, "corpus.jsonl"));
    write_file(artifact(config, "ingest_report.txt"), format_validation_report(report));
    if (!report.issues.empty())
        NT_WARN("ingest found %zu issue(s), see ingest_report.txt", report.issues.size());
}

void stage_preprocess(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const StopwordSet stopwords = stopwords_for(config);

    std::string out;
    for (const auto& doc : corpus.documents) {
        const PreprocessedDoc pre = preprocess(doc.text, stopwords);
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        obj["tokens"] = pre.tokens;
        out += obj.dump();
        out += '\n';
    }
    write_file(artifact(config, "preprocessed.jsonl"), out);
}

void stage_train(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const Taxonomy taxonomy = load_taxonomy(config.taxonomy);
    const TrainResult result =
        train(corpus.documents, taxonomy, stopwords_for(config), config.classifier_config());

    save_model(config.model_dir, result.model);
    write_metrics_csv(artifact(config, "metrics.csv"), result.report);
}

void stage_classify(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const TrainedClassifier model = load_model(config.model_dir);

    std::string out = "doc_id,predicted_labels\n";
    for (const auto& doc : corpus.documents) {
        const Prediction p = predict(model, doc);
        std::string labels;
        for (std::size_t i = 0; i < p.labels.size(); ++i) {
            if (i > 0) labels += ";";
            labels += p.labels[i];
        }
        out += csv::join_row({doc.id, labels}) + "\n";
    }
    write_file(artifact(config, "predictions.csv"), out);
}

void stage_topics(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const auto pre = read_preprocessed_artifact(config, corpus);
    const Eigen::MatrixXd embeddings = embeddings_for(config, pre);

    TopicModel model = fit_topics(embeddings, config.k, config.seed);
    fill_representation(model, pre);

    std::string assignments = "doc_id,topic_id\n";
    for (std::size_t i = 0; i < corpus.documents.size(); ++i)
        assignments +=
            csv::join_row({corpus.documents[i].id, std::to_string(model.assignment[i])}) + "\n";
    write_file(artifact(config, "assignments.csv"), assignments);

    write_topic_table_csv(artifact(config, "topic_table.csv"), model);
    save_topic_model(artifact(config, "topic_model.json"), model);
}

void stage_topics_over_time(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const auto pre = read_preprocessed_artifact(config, corpus);
    const TopicModel model = load_topic_model(artifact(config, "topic_model.json"));

    const TopicsOverTime tot =
        topics_over_time(model, pre, timestamps_of(corpus), config.nr_bins, config.global_tuning,
                         config.evolution_tuning);
    write_topics_over_time_csv(artifact(config, "topics_over_time.csv"), tot);
}

void stage_trajectory(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const auto assignment = read_assignments_artifact(config, corpus);

    TrajectoryTable table;
    table.bins = TimeBins::over(timestamps_of(corpus), config.nr_bins);
    table.cells = aggregate_trajectory(assignment, corpus.documents, table.bins);
    table.phases = hot_cold(table.cells, config.nr_bins, config.hot_ratio);
    write_trajectory_csv(artifact(config, "trajectory.csv"), table);
}

void stage_report(const RunConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);

    const Corpus corpus = read_corpus_artifact(config);
    const auto assignment = read_assignments_artifact(config, corpus);
    const TopicModel model = load_topic_model(artifact(config, "topic_model.json"));
    const auto timestamps = timestamps_of(corpus);

    const TopicsOverTime counts =
        frequencies_only(assignment, timestamps, model.k, config.nr_bins);
    const int focus = largest_topic(model.sizes);

    ChartSpec lines;
    lines.kind = ChartKind::topic_evolution_lines;
    lines.title = "Topic frequency over time";
    emit_chart(lines, counts, artifact(config, "topics_over_time.svg"));

    ChartSpec bars;
    bars.kind = ChartKind::topic_volume_bars;
    bars.title = "Articles per bin, topic " + std::to_string(focus);
    bars.topic = focus;
    emit_chart(bars, counts, artifact(config, "topic_volume.svg"));

    const auto cells = aggregate_trajectory(assignment, corpus.documents, counts.bins);
    ChartSpec heat;
    heat.kind = ChartKind::trajectory_heatmap;
    heat.title = "Regional trajectory, topic " + std::to_string(focus);
    heat.topic = focus;
    emit_chart(heat, cells, counts.bins, artifact(config, "trajectory.svg"));
}

void run_all(const RunConfig& config) {
    config.validate();

    for (const std::string& path : {config.corpus, config.taxonomy, config.stopwords,
                                    config.embedding_provider == "external"
                                        ? config.external_embeddings
                                        : std::string()}) {
        if (path.empty()) continue;
        if (!std::filesystem::exists(path)) throw IoError("input file does not exist: " + path);
    }

    stage_ingest(config);
    stage_preprocess(config);
    stage_train(config);
    stage_classify(config);
    stage_topics(config);
    stage_topics_over_time(config);
    stage_trajectory(config);
    stage_report(config);

    // No paths or timestamps here: the manifest must not break byte-identical
    // reruns into the same tree.
    nlohmann::ordered_json manifest;
    manifest["seed"] = config.seed;
    nlohmann::ordered_json params;
    params["embedding_provider"] = config.embedding_provider;
    params["embedding_dim"] = config.embedding_dim;
    params["k"] = config.k;
    params["nr_bins"] = config.nr_bins;
    params["global_tuning"] = config.global_tuning;
    params["evolution_tuning"] = config.evolution_tuning;
    params["hot_ratio"] = config.hot_ratio;
    params["d_e"] = config.d_e;
    params["h"] = config.h;
    params["L"] = config.L;
    params["dropout"] = config.dropout;
    params["batch_size"] = config.batch_size;
    params["epochs"] = config.epochs;
    params["lr"] = config.lr;
    params["threshold"] = config.threshold;
    params["max_vocab"] = config.max_vocab;
    params["train_fraction"] = config.train_fraction;
    params["vocab_before_split"] = config.vocab_before_split;
    manifest["parameters"] = params;
    manifest["artifacts"] = {"corpus.jsonl",     "ingest_report.txt",    "preprocessed.jsonl",
                             "metrics.csv",      "predictions.csv",      "assignments.csv",
                             "topic_table.csv",  "topic_model.json",     "topics_over_time.csv",
                             "trajectory.csv",   "topics_over_time.svg", "topic_volume.svg",
                             "trajectory.svg",   "manifest.json"};
    write_file(artifact(config, "manifest.json"), manifest.dump(2) + "\n");
}

}  // namespace newstraject
