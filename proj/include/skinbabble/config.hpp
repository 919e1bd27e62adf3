#pragma once

#include "skinbabble/environment.hpp"
#include "skinbabble/explorer.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace skinbabble {

// Everything a run depends on. Parsing is strict: unknown fields are
// configuration errors, so a hash over the effective (fully materialized)
// form changes exactly when a semantic field changes.
struct ExperimentConfig {
    std::string name;
    std::string body = "torso";      // torso | head
    std::string resolution = "low";  // low | high
    std::string strategy = "rmb";    // rmb | rgb | rgb-do | dgb-<m> | dgb-<m>-do

    int iterations = 1000;
    int eval_interval = 100;
    int trials = 10;
    std::uint64_t seed = 1;
    std::string output_dir; // optional; CLI resolves the final location

    double noise_sigma = 0.05;
    double epsilon = 0.1;
    double interest_init = 1.0;
    std::optional<double> d_miss; // default: goal rectangle diameter
    bool interest_window = false;
    int interest_window_size = 4;

    int do_generations = 10;
    bool do_real_executions = false;
    int lwlr_neighbors = 20;
    double lwlr_bandwidth = 0.0; // <= 0: auto
    double lwlr_ridge = 1e-6;

    int bootstrap_touches = 10;
    int bootstrap_cap = 500;
    double bootstrap_sub_range = 0.25;

    double catchment_radius = 0.0; // 0: 0.6 x max taxel pitch
    double max_penetration = 0.0;  // 0: tip radius
    double goal_padding = 0.05;
    int test_stride_rows = 4;
    int test_stride_cols = 3;

    // Optional overrides of the built-in body geometry, kept as parsed JSON;
    // absent means the defaults for (body, resolution).
    std::optional<nlohmann::json> chain_override;
    std::optional<nlohmann::json> patch_override;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

KinematicChain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const KinematicChain& chain);
PatchSpec patch_spec_from_json(const nlohmann::json& j);
nlohmann::json patch_spec_to_json(const PatchSpec& spec);

KinematicChain build_chain(const ExperimentConfig& cfg);
PatchSpec build_patch_spec(const ExperimentConfig& cfg);
Environment build_environment(const ExperimentConfig& cfg);
StrategyParams strategy_params(const ExperimentConfig& cfg);

// Config with every default materialized, including the full chain and patch
// geometry; canonical because nlohmann::json orders object keys.
nlohmann::json effective_json(const ExperimentConfig& cfg);

// FNV-1a 64-bit over the canonical dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

} // namespace skinbabble
