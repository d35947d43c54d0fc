#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pedant/errors.hpp"
#include "pedant/pipeline.hpp"

namespace {

struct StagePlan {
    pedant::Stage first = pedant::Stage::INGEST;
    pedant::Stage last = pedant::Stage::EVALUATE;
};

// The positional argument picks one stage (or "all"); --stages overrides it
// with an inclusive range like "filter..assemble".
StagePlan parse_plan(const std::string& stage_arg, const std::string& range) {
    if (!range.empty()) {
        const auto sep = range.find("..");
        if (sep == std::string::npos) {
            throw pedant::ConfigError("--stages expects <first>..<last>, got '" + range + "'");
        }
        return StagePlan{pedant::stage_from_string(range.substr(0, sep)),
                         pedant::stage_from_string(range.substr(sep + 2))};
    }
    if (stage_arg == "all") {
        return StagePlan{pedant::all_stages().front(), pedant::all_stages().back()};
    }
    const pedant::Stage stage = pedant::stage_from_string(stage_arg);
    return StagePlan{stage, stage};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pedant: personality data augmentation pipeline"};
    std::string stage_arg;
    std::string config_path;
    std::string stages_range;
    std::string out_override;
    bool force = false;
    app.add_option("stage", stage_arg, "stage to run (ingest, finetune, generate, filter, rank, "
                                       "assemble, evaluate) or 'all'")
        ->required();
    app.add_option("--config", config_path, "run config JSON file")->required();
    app.add_flag("--force", force, "rerun stages even when their artifacts are up to date");
    app.add_option("--stages", stages_range, "inclusive stage range, e.g. filter..assemble");
    app.add_option("--out", out_override, "override the configured output directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    pedant::RunConfig config;
    StagePlan plan;
    try {
        config = pedant::load_run_config(config_path);
        if (!out_override.empty()) config.output_dir = out_override;
        plan = parse_plan(stage_arg, stages_range);
    } catch (const pedant::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    pedant::PipelineRunner runner(std::move(config));
    std::printf("config %s -> %s\n", runner.config().config_hash().c_str(),
                runner.run_dir().string().c_str());

    const auto& stages = pedant::all_stages();
    const auto first_it = std::find(stages.begin(), stages.end(), plan.first);
    const auto last_it = std::find(stages.begin(), stages.end(), plan.last);
    if (first_it > last_it) {
        std::fprintf(stderr, "error: stage range is reversed: %s comes after %s\n",
                     pedant::to_string(plan.first).c_str(), pedant::to_string(plan.last).c_str());
        return 2;
    }
    for (auto it = first_it; it <= last_it; ++it) {
        try {
            const pedant::StageResult result = runner.run_stage(*it, force);
            std::printf("%-9s %s %s\n", pedant::to_string(*it).c_str(),
                        result.skipped ? "up-to-date" : "done", result.counts.dump().c_str());
        } catch (const pedant::ConfigError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "stage %s failed: %s\n", pedant::to_string(*it).c_str(),
                         e.what());
            return 1;
        }
    }
    return 0;
}
