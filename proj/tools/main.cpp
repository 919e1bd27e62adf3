#include "skinbabble/errors.hpp"
#include "skinbabble/experiment.hpp"
#include "skinbabble/io.hpp"
#include "skinbabble/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <vector>

namespace fs = std::filesystem;
using namespace skinbabble;

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out_root;
    int parallel = 1;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "Override the base seed");
    cmd->add_option("--trials", ov.trials, "Override the trial count");
    cmd->add_option("--out", ov.out_root, "Output root directory");
    cmd->add_option("--parallel", ov.parallel, "Worker threads for trials")
        ->check(CLI::PositiveNumber);
}

// Root precedence: --out, then the config's output_dir, then
// $SKINBABBLE_OUT_ROOT, then ./results. Each experiment writes to
// <root>/<name>.
fs::path output_root(const Overrides& ov, const std::string& config_output_dir) {
    if (!ov.out_root.empty())
        return ov.out_root;
    if (!config_output_dir.empty())
        return config_output_dir;
    if (const char* env = std::getenv("SKINBABBLE_OUT_ROOT"); env && *env)
        return env;
    return "results";
}

void apply(const Overrides& ov, ExperimentConfig& cfg) {
    if (ov.seed)
        cfg.seed = *ov.seed;
    if (ov.trials) {
        if (*ov.trials < 1)
            throw ConfigError("--trials: must be >= 1");
        cfg.trials = *ov.trials;
    }
}

int failed_trials(const ExperimentResult& res) {
    int n = 0;
    for (const TrialResult& tr : res.trials)
        if (!tr.ok())
            ++n;
    return n;
}

void print_summary(const ExperimentResult& res, const fs::path& dir) {
    std::cout << res.config.name << ": strategy=" << res.config.strategy
              << " hash=" << res.hash << " trials="
              << (res.trials.size() - failed_trials(res)) << "/" << res.trials.size();
    // last mean checkpoint across ok trials
    double mre_sum = 0.0, touch_sum = 0.0;
    int mre_n = 0, touch_n = 0;
    for (const TrialResult& tr : res.trials) {
        if (!tr.ok() || tr.checkpoints.empty())
            continue;
        const CheckpointReport& cp = tr.checkpoints.back();
        touch_sum += static_cast<double>(cp.cumulative_touches);
        ++touch_n;
        if (cp.mre) {
            mre_sum += *cp.mre;
            ++mre_n;
        }
    }
    if (mre_n > 0)
        std::cout << " final_mre=" << fmt_double(mre_sum / mre_n);
    if (touch_n > 0)
        std::cout << " touches=" << fmt_double(touch_sum / touch_n);
    std::cout << " -> " << dir.string() << "\n";
}

int run_one(const fs::path& config_path, const Overrides& ov,
            const std::string& forced_root = "") {
    ExperimentConfig cfg = load_config_file(config_path);
    apply(ov, cfg);
    const fs::path root =
        forced_root.empty() ? output_root(ov, cfg.output_dir) : fs::path(forced_root);
    const fs::path dir = root / cfg.name;
    const ExperimentResult res = run_experiment(cfg, ov.parallel);
    write_results(res, dir);
    write_skin_svg(dir);
    write_curves_svg(dir);
    print_summary(res, dir);
    for (const TrialResult& tr : res.trials)
        if (!tr.ok())
            std::cerr << cfg.name << ": trial with seed " << tr.seed
                      << " failed: " << tr.error << "\n";
    return failed_trials(res) > 0 ? 2 : 0;
}

int cmd_run(const fs::path& config_path, const Overrides& ov) {
    return run_one(config_path, ov);
}

int cmd_matrix(const fs::path& dir, const Overrides& ov) {
    if (!fs::is_directory(dir))
        throw ConfigError("matrix: '" + dir.string() + "' is not a directory");
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            configs.push_back(entry.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty())
        throw ConfigError("matrix: no .json configs in '" + dir.string() + "'");

    // The matrix shares one root so the comparison lives next to the runs;
    // per-config output_dir is ignored here.
    const fs::path root = output_root(ov, "");

    int worst = 0;
    std::vector<ExperimentResult> done;
    for (const fs::path& path : configs) {
        try {
            ExperimentConfig cfg = load_config_file(path);
            apply(ov, cfg);
            const fs::path exp_dir = root / cfg.name;
            ExperimentResult res = run_experiment(cfg, ov.parallel);
            write_results(res, exp_dir);
            write_skin_svg(exp_dir);
            write_curves_svg(exp_dir);
            print_summary(res, exp_dir);
            if (failed_trials(res) > 0) {
                for (const TrialResult& tr : res.trials)
                    if (!tr.ok())
                        std::cerr << cfg.name << ": trial with seed " << tr.seed
                                  << " failed: " << tr.error << "\n";
                worst = std::max(worst, 2);
            }
            done.push_back(std::move(res));
        } catch (const ConfigError& e) {
            std::cerr << path.filename().string() << ": " << e.what() << "\n";
            worst = std::max(worst, 1);
        } catch (const std::exception& e) {
            std::cerr << path.filename().string() << ": " << e.what() << "\n";
            worst = std::max(worst, 2);
        }
    }
    if (!done.empty()) {
        fs::create_directories(root);
        write_comparison_csv(done, root / "comparison.csv");
        write_comparison_svg(root);
        std::cout << "comparison -> " << (root / "comparison.csv").string() << "\n";
    }
    return worst;
}

int cmd_plot(const fs::path& dir) {
    if (fs::exists(dir / "comparison.csv")) {
        write_comparison_svg(dir);
        std::cout << (dir / "comparison.svg").string() << "\n";
        return 0;
    }
    if (fs::exists(dir / "checkpoints_mean.csv")) {
        write_skin_svg(dir);
        write_curves_svg(dir);
        std::cout << (dir / "skin.svg").string() << "\n"
                  << (dir / "curves.svg").string() << "\n";
        return 0;
    }
    throw ConfigError("plot: '" + dir.string() +
                      "' has neither comparison.csv nor checkpoints_mean.csv");
}

int cmd_validate(const fs::path& config_path) {
    const ExperimentConfig cfg = load_config_file(config_path);
    std::cout << "ok " << cfg.name << ": body=" << cfg.body
              << " resolution=" << cfg.resolution << " strategy=" << cfg.strategy
              << " iterations=" << cfg.iterations << " trials=" << cfg.trials
              << " hash=" << config_hash(cfg) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"skin-space exploration experiments on a simulated arm"};
    app.require_subcommand(1);

    std::string run_config, matrix_dir, plot_dir, validate_config;
    Overrides run_ov, matrix_ov;

    CLI::App* run = app.add_subcommand("run", "Run one experiment config");
    run->add_option("config", run_config, "Experiment config (JSON)")->required();
    add_common_options(run, run_ov);

    CLI::App* matrix =
        app.add_subcommand("matrix", "Run every config in a directory and compare");
    matrix->add_option("dir", matrix_dir, "Directory of experiment configs")->required();
    add_common_options(matrix, matrix_ov);

    CLI::App* plot = app.add_subcommand("plot", "Regenerate plots for a result directory");
    plot->add_option("dir", plot_dir, "Experiment or matrix result directory")->required();

    CLI::App* validate = app.add_subcommand("validate", "Check a config and print its hash");
    validate->add_option("config", validate_config, "Experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are validation errors
    }

    try {
        if (run->parsed())
            return cmd_run(run_config, run_ov);
        if (matrix->parsed())
            return cmd_matrix(matrix_dir, matrix_ov);
        if (plot->parsed())
            return cmd_plot(plot_dir);
        return cmd_validate(validate_config);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
