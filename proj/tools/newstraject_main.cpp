// Pipeline driver: every subcommand loads the JSON run config, applies any
// flag overrides and executes one stage (or all of them).

#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newstraject/errors.hpp"
#include "newstraject/pipeline.hpp"

namespace {

struct Overrides {
    CLI::App* sub = nullptr;
    std::uint64_t seed = 0;
    std::string out, model_dir, stopwords;
    int k = 0, nr_bins = 0, epochs = 0;
    double hot_ratio = 0.0, threshold = 0.0;
    bool vocab_before_split = false;

    void apply(newstraject::RunConfig& cfg) const {
        if (sub->count("--seed")) cfg.seed = seed;
        if (sub->count("--out")) cfg.output_dir = out;
        if (sub->count("--model-dir")) cfg.model_dir = model_dir;
        if (sub->count("--stopwords")) cfg.stopwords = stopwords;
        if (sub->count("--k")) cfg.k = k;
        if (sub->count("--nr-bins")) cfg.nr_bins = nr_bins;
        if (sub->count("--epochs")) cfg.epochs = epochs;
        if (sub->count("--hot-ratio")) cfg.hot_ratio = hot_ratio;
        if (sub->count("--threshold")) cfg.threshold = threshold;
        if (sub->count("--vocab-before-split")) cfg.vocab_before_split = true;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"newstraject: news corpus classification, topics and trajectory reports"};
    app.require_subcommand(1);

    struct StageCmd {
        std::string config_path;
        Overrides overrides;
        std::function<void(const newstraject::RunConfig&)> run;
    };
    std::vector<std::unique_ptr<StageCmd>> commands;

    auto add_stage = [&](const char* name, const char* help,
                         std::function<void(const newstraject::RunConfig&)> fn) {
        auto cmd = std::make_unique<StageCmd>();
        cmd->run = std::move(fn);
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", cmd->config_path, "JSON run configuration")
            ->required();
        Overrides& ov = cmd->overrides;
        ov.sub = sub;
        sub->add_option("--seed", ov.seed, "override the config seed");
        sub->add_option("--out", ov.out, "override the output directory");
        sub->add_option("--model-dir", ov.model_dir, "override the model directory");
        sub->add_option("--stopwords", ov.stopwords, "override the stopword file");
        sub->add_option("--k", ov.k, "override the topic count");
        sub->add_option("--nr-bins", ov.nr_bins, "override the time bin count");
        sub->add_option("--epochs", ov.epochs, "override the training epoch count");
        sub->add_option("--hot-ratio", ov.hot_ratio, "override the hot/cold ratio");
        sub->add_option("--threshold", ov.threshold, "override the decision threshold");
        sub->add_flag("--vocab-before-split", ov.vocab_before_split,
                      "build the vocabulary from all labeled documents, not just the train side");
        commands.push_back(std::move(cmd));
        StageCmd* raw = commands.back().get();
        sub->callback([raw] {
            newstraject::RunConfig cfg = newstraject::RunConfig::from_json_file(raw->config_path);
            raw->overrides.apply(cfg);
            cfg.validate();
            raw->run(cfg);
        });
    };

    add_stage("ingest", "read and validate the corpus and taxonomy", newstraject::stage_ingest);
    add_stage("preprocess", "clean and tokenize the ingested corpus",
              newstraject::stage_preprocess);
    add_stage("train", "train the multi-label classifier", newstraject::stage_train);
    add_stage("classify", "predict labels for every document", newstraject::stage_classify);
    add_stage("topics", "embed, cluster and describe topics", newstraject::stage_topics);
    add_stage("topics-over-time", "per-bin topic frequencies and words",
              newstraject::stage_topics_over_time);
    add_stage("trajectory", "regional counts with hot/cold phases",
              newstraject::stage_trajectory);
    add_stage("report", "render the SVG charts", newstraject::stage_report);
    add_stage("run-all", "run every stage in order", newstraject::run_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);  // --help and friends
        std::fprintf(stderr, "%s\n\n%s", e.what(), app.help().c_str());
        return 1;
    } catch (const newstraject::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const newstraject::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const newstraject::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
