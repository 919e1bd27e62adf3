#include "skinbabble/config.hpp"

#include "skinbabble/body.hpp"
#include "skinbabble/errors.hpp"

#include <fstream>
#include <set>
#include <string>

namespace skinbabble {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
}

void expect_keys(const json& j, const std::string& where,
                 const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            bad(where.empty() ? key : where + "." + key, "unknown field");
}

double num(const json& j, const std::string& field) {
    if (!j.is_number())
        bad(field, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer())
        bad(field, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& field) {
    if (!j.is_string())
        bad(field, "expected a string");
    return j.get<std::string>();
}

bool boolean(const json& j, const std::string& field) {
    if (!j.is_boolean())
        bad(field, "expected a boolean");
    return j.get<bool>();
}

Vec3 vec3(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        bad(field, "expected [x, y, z]");
    return {num(j[0], field), num(j[1], field), num(j[2], field)};
}

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

struct StrategySpec {
    StrategyKind kind;
    bool direct_opt;
    int grid; // 0 when not dgb
};

StrategySpec parse_strategy(const std::string& s) {
    if (s == "rmb")
        return {StrategyKind::Rmb, false, 0};
    if (s == "rgb")
        return {StrategyKind::Rgb, false, 0};
    if (s == "rgb-do")
        return {StrategyKind::Rgb, true, 0};
    if (s.rfind("dgb-", 0) == 0) {
        std::string rest = s.substr(4);
        bool direct = false;
        if (rest.size() > 3 && rest.substr(rest.size() - 3) == "-do") {
            direct = true;
            rest = rest.substr(0, rest.size() - 3);
        }
        try {
            std::size_t pos = 0;
            const int grid = std::stoi(rest, &pos);
            if (pos == rest.size() && grid >= 1)
                return {StrategyKind::Dgb, direct, grid};
        } catch (const std::exception&) {
        }
    }
    bad("strategy",
        "expected rmb | rgb | rgb-do | dgb-<cells> | dgb-<cells>-do, got '" + s + "'");
}

} // namespace

KinematicChain chain_from_json(const json& j) {
    expect_keys(j, "chain",
                {"arm_base", "tip_offset", "tip_radius", "arm_dof", "joints", "frames"});
    KinematicChain c;
    if (!j.contains("joints") || !j["joints"].is_array() || j["joints"].empty())
        bad("chain.joints", "expected a non-empty array");
    for (std::size_t i = 0; i < j["joints"].size(); ++i) {
        const json& jj = j["joints"][i];
        const std::string where = "chain.joints[" + std::to_string(i) + "]";
        expect_keys(jj, where, {"axis", "limits", "translation"});
        RevoluteJoint joint;
        if (!jj.contains("axis") || !jj.contains("limits"))
            bad(where, "axis and limits are required");
        joint.axis = vec3(jj["axis"], where + ".axis");
        if (!jj["limits"].is_array() || jj["limits"].size() != 2)
            bad(where + ".limits", "expected [min, max]");
        joint.lo = num(jj["limits"][0], where + ".limits");
        joint.hi = num(jj["limits"][1], where + ".limits");
        if (jj.contains("translation"))
            joint.post_translation = vec3(jj["translation"], where + ".translation");
        c.joints.push_back(joint);
    }
    c.arm_dof = j.contains("arm_dof")
                    ? static_cast<std::size_t>(integer(j["arm_dof"], "chain.arm_dof"))
                    : c.joints.size();
    if (j.contains("arm_base"))
        c.arm_base = vec3(j["arm_base"], "chain.arm_base");
    if (j.contains("tip_offset"))
        c.tip_offset = vec3(j["tip_offset"], "chain.tip_offset");
    if (!j.contains("tip_radius"))
        bad("chain.tip_radius", "required");
    c.tip_radius = num(j["tip_radius"], "chain.tip_radius");
    c.frames["torso"] = FrameDef{}; // the torso frame is always the fixed base
    if (j.contains("frames")) {
        for (const auto& [name, jf] : j["frames"].items()) {
            const std::string where = "chain.frames." + name;
            expect_keys(jf, where, {"base", "joints"});
            FrameDef f;
            if (jf.contains("base"))
                f.base_translation = vec3(jf["base"], where + ".base");
            if (jf.contains("joints"))
                for (const json& idx : jf["joints"])
                    f.joints.push_back(
                        static_cast<std::size_t>(integer(idx, where + ".joints")));
            c.frames[name] = f;
        }
    }
    validate_chain(c);
    return c;
}

json chain_to_json(const KinematicChain& chain) {
    json j;
    j["arm_base"] = vec3_json(chain.arm_base);
    j["tip_offset"] = vec3_json(chain.tip_offset);
    j["tip_radius"] = chain.tip_radius;
    j["arm_dof"] = chain.arm_dof;
    j["joints"] = json::array();
    for (const RevoluteJoint& joint : chain.joints)
        j["joints"].push_back({{"axis", vec3_json(joint.axis)},
                               {"limits", json::array({joint.lo, joint.hi})},
                               {"translation", vec3_json(joint.post_translation)}});
    j["frames"] = json::object();
    for (const auto& [name, f] : chain.frames) {
        if (name == "torso")
            continue;
        j["frames"][name] = {{"base", vec3_json(f.base_translation)},
                             {"joints", f.joints}};
    }
    return j;
}

PatchSpec patch_spec_from_json(const json& j) {
    expect_keys(j, "patch",
                {"name", "frame", "surface", "rows", "cols", "expected_count", "origin",
                 "axis_u", "axis_v", "half_extents", "center", "radius", "theta_span",
                 "height_span"});
    PatchSpec spec;
    if (j.contains("name"))
        spec.name = text(j["name"], "patch.name");
    spec.frame = j.contains("frame") ? text(j["frame"], "patch.frame") : "torso";
    if (!j.contains("surface"))
        bad("patch.surface", "required ('planar' or 'cylinder')");
    const std::string kind = text(j["surface"], "patch.surface");
    if (kind == "planar") {
        PlanarSurface s;
        if (j.contains("origin"))
            s.origin = vec3(j["origin"], "patch.origin");
        if (j.contains("axis_u"))
            s.axis_u = vec3(j["axis_u"], "patch.axis_u");
        if (j.contains("axis_v"))
            s.axis_v = vec3(j["axis_v"], "patch.axis_v");
        if (!j.contains("half_extents") || !j["half_extents"].is_array() ||
            j["half_extents"].size() != 2)
            bad("patch.half_extents", "expected [half_u, half_v]");
        s.half_u = num(j["half_extents"][0], "patch.half_extents");
        s.half_v = num(j["half_extents"][1], "patch.half_extents");
        spec.surface = s;
    } else if (kind == "cylinder") {
        CylinderSurface s;
        if (j.contains("center"))
            s.center = vec3(j["center"], "patch.center");
        if (!j.contains("radius"))
            bad("patch.radius", "required for cylinder surfaces");
        s.radius = num(j["radius"], "patch.radius");
        if (!j.contains("theta_span") || !j["theta_span"].is_array() ||
            j["theta_span"].size() != 2)
            bad("patch.theta_span", "expected [theta0, theta1]");
        s.theta0 = num(j["theta_span"][0], "patch.theta_span");
        s.theta1 = num(j["theta_span"][1], "patch.theta_span");
        if (!j.contains("height_span") || !j["height_span"].is_array() ||
            j["height_span"].size() != 2)
            bad("patch.height_span", "expected [h0, h1]");
        s.h0 = num(j["height_span"][0], "patch.height_span");
        s.h1 = num(j["height_span"][1], "patch.height_span");
        spec.surface = s;
    } else {
        bad("patch.surface", "expected 'planar' or 'cylinder', got '" + kind + "'");
    }
    if (!j.contains("rows") || !j.contains("cols"))
        bad("patch.rows", "rows and cols are required");
    spec.rows = integer(j["rows"], "patch.rows");
    spec.cols = integer(j["cols"], "patch.cols");
    if (j.contains("expected_count"))
        spec.expected_count = integer(j["expected_count"], "patch.expected_count");
    return spec;
}

json patch_spec_to_json(const PatchSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["frame"] = spec.frame;
    j["rows"] = spec.rows;
    j["cols"] = spec.cols;
    if (spec.expected_count >= 0)
        j["expected_count"] = spec.expected_count;
    if (const auto* pl = std::get_if<PlanarSurface>(&spec.surface)) {
        j["surface"] = "planar";
        j["origin"] = vec3_json(pl->origin);
        j["axis_u"] = vec3_json(pl->axis_u);
        j["axis_v"] = vec3_json(pl->axis_v);
        j["half_extents"] = json::array({pl->half_u, pl->half_v});
    } else {
        const auto& cy = std::get<CylinderSurface>(spec.surface);
        j["surface"] = "cylinder";
        j["center"] = vec3_json(cy.center);
        j["radius"] = cy.radius;
        j["theta_span"] = json::array({cy.theta0, cy.theta1});
        j["height_span"] = json::array({cy.h0, cy.h1});
    }
    return j;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    expect_keys(j, "",
                {"name", "body", "resolution", "strategy", "iterations", "eval_interval",
                 "trials", "seed", "output_dir", "noise_sigma", "epsilon",
                 "interest_init", "d_miss", "interest_window", "interest_window_size",
                 "do", "lwlr", "bootstrap", "contact", "goal_padding", "test_stride",
                 "chain", "patch"});

    ExperimentConfig c;
    if (j.contains("name"))
        c.name = text(j["name"], "name");
    if (!j.contains("body"))
        bad("body", "required");
    c.body = text(j["body"], "body");
    if (c.body != "torso" && c.body != "head")
        bad("body", "must be 'torso' or 'head', got '" + c.body + "'");
    if (!j.contains("resolution"))
        bad("resolution", "required");
    c.resolution = text(j["resolution"], "resolution");
    if (c.resolution != "low" && c.resolution != "high")
        bad("resolution", "must be 'low' or 'high', got '" + c.resolution + "'");
    if (!j.contains("strategy"))
        bad("strategy", "required");
    c.strategy = text(j["strategy"], "strategy");
    parse_strategy(c.strategy); // validates the shape

    if (j.contains("iterations"))
        c.iterations = integer(j["iterations"], "iterations");
    if (c.iterations < 1)
        bad("iterations", "must be > 0");
    if (j.contains("eval_interval"))
        c.eval_interval = integer(j["eval_interval"], "eval_interval");
    if (c.eval_interval < 1 || c.iterations % c.eval_interval != 0)
        bad("eval_interval", "must be > 0 and divide iterations");
    if (j.contains("trials"))
        c.trials = integer(j["trials"], "trials");
    if (c.trials < 1)
        bad("trials", "must be >= 1");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            bad("seed", "expected an integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output_dir"))
        c.output_dir = text(j["output_dir"], "output_dir");

    if (j.contains("noise_sigma"))
        c.noise_sigma = num(j["noise_sigma"], "noise_sigma");
    if (c.noise_sigma < 0.0)
        bad("noise_sigma", "must be >= 0");
    if (j.contains("epsilon"))
        c.epsilon = num(j["epsilon"], "epsilon");
    if (c.epsilon < 0.0 || c.epsilon > 1.0)
        bad("epsilon", "must be in [0, 1]");
    if (j.contains("interest_init"))
        c.interest_init = num(j["interest_init"], "interest_init");
    if (c.interest_init < 0.0)
        bad("interest_init", "must be >= 0");
    if (j.contains("d_miss") && !j["d_miss"].is_null())
        c.d_miss = num(j["d_miss"], "d_miss");
    if (j.contains("interest_window"))
        c.interest_window = boolean(j["interest_window"], "interest_window");
    if (j.contains("interest_window_size"))
        c.interest_window_size = integer(j["interest_window_size"], "interest_window_size");
    if (c.interest_window && c.interest_window_size < 2)
        bad("interest_window_size", "must be >= 2");

    if (j.contains("do")) {
        expect_keys(j["do"], "do", {"generations", "real_executions"});
        if (j["do"].contains("generations"))
            c.do_generations = integer(j["do"]["generations"], "do.generations");
        if (c.do_generations < 1)
            bad("do.generations", "must be >= 1");
        if (j["do"].contains("real_executions"))
            c.do_real_executions = boolean(j["do"]["real_executions"], "do.real_executions");
    }
    if (j.contains("lwlr")) {
        expect_keys(j["lwlr"], "lwlr", {"neighbors", "bandwidth", "ridge"});
        if (j["lwlr"].contains("neighbors"))
            c.lwlr_neighbors = integer(j["lwlr"]["neighbors"], "lwlr.neighbors");
        if (j["lwlr"].contains("bandwidth"))
            c.lwlr_bandwidth = num(j["lwlr"]["bandwidth"], "lwlr.bandwidth");
        if (j["lwlr"].contains("ridge"))
            c.lwlr_ridge = num(j["lwlr"]["ridge"], "lwlr.ridge");
        if (c.lwlr_ridge < 0.0)
            bad("lwlr.ridge", "must be >= 0");
    }
    if (j.contains("bootstrap")) {
        expect_keys(j["bootstrap"], "bootstrap", {"touches", "cap", "sub_range"});
        if (j["bootstrap"].contains("touches"))
            c.bootstrap_touches = integer(j["bootstrap"]["touches"], "bootstrap.touches");
        if (c.bootstrap_touches < 1)
            bad("bootstrap.touches", "must be >= 1");
        if (j["bootstrap"].contains("cap"))
            c.bootstrap_cap = integer(j["bootstrap"]["cap"], "bootstrap.cap");
        if (c.bootstrap_cap < 1)
            bad("bootstrap.cap", "must be >= 1");
        if (j["bootstrap"].contains("sub_range"))
            c.bootstrap_sub_range = num(j["bootstrap"]["sub_range"], "bootstrap.sub_range");
        if (!(c.bootstrap_sub_range > 0.0 && c.bootstrap_sub_range <= 1.0))
            bad("bootstrap.sub_range", "must be in (0, 1]");
    }
    if (j.contains("contact")) {
        expect_keys(j["contact"], "contact", {"catchment_radius", "max_penetration"});
        if (j["contact"].contains("catchment_radius"))
            c.catchment_radius = num(j["contact"]["catchment_radius"], "contact.catchment_radius");
        if (j["contact"].contains("max_penetration"))
            c.max_penetration = num(j["contact"]["max_penetration"], "contact.max_penetration");
    }
    if (j.contains("goal_padding"))
        c.goal_padding = num(j["goal_padding"], "goal_padding");
    if (c.goal_padding < 0.0)
        bad("goal_padding", "must be >= 0");
    if (j.contains("test_stride")) {
        if (!j["test_stride"].is_array() || j["test_stride"].size() != 2)
            bad("test_stride", "expected [stride_rows, stride_cols]");
        c.test_stride_rows = integer(j["test_stride"][0], "test_stride");
        c.test_stride_cols = integer(j["test_stride"][1], "test_stride");
        if (c.test_stride_rows < 1 || c.test_stride_cols < 1)
            bad("test_stride", "strides must be >= 1");
    }
    if (j.contains("chain"))
        c.chain_override = j["chain"];
    if (j.contains("patch"))
        c.patch_override = j["patch"];

    // Fail fast on broken geometry overrides and parameter interplay.
    const KinematicChain chain = build_chain(c);
    build_patch_spec(c);
    if (c.lwlr_neighbors < static_cast<int>(chain.dof()) + 1)
        bad("lwlr.neighbors", "must be >= chain DoF + 1");
    return c;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
    ExperimentConfig c = parse_config(j);
    if (c.name.empty())
        c.name = path.stem().string();
    return c;
}

KinematicChain build_chain(const ExperimentConfig& cfg) {
    if (cfg.chain_override)
        return chain_from_json(*cfg.chain_override);
    return default_chain(cfg.body);
}

PatchSpec build_patch_spec(const ExperimentConfig& cfg) {
    PatchSpec spec = cfg.patch_override ? patch_spec_from_json(*cfg.patch_override)
                                        : default_patch_spec(cfg.body, cfg.resolution);
    if (cfg.catchment_radius > 0.0)
        spec.catchment_radius = cfg.catchment_radius;
    if (cfg.max_penetration > 0.0)
        spec.max_penetration = cfg.max_penetration;
    return spec;
}

Environment build_environment(const ExperimentConfig& cfg) {
    KinematicChain chain = build_chain(cfg);
    SkinPatch patch = generate_skin(build_patch_spec(cfg), chain.tip_radius);
    if (!chain.frames.contains(patch.frame))
        bad("patch.frame", "chain has no frame named '" + patch.frame + "'");
    Environment env(std::move(chain), std::move(patch), cfg.goal_padding);
    if (cfg.d_miss)
        env.set_d_miss(*cfg.d_miss);
    return env;
}

StrategyParams strategy_params(const ExperimentConfig& cfg) {
    const StrategySpec s = parse_strategy(cfg.strategy);
    StrategyParams p;
    p.kind = s.kind;
    p.direct_opt = s.direct_opt;
    p.label = cfg.strategy;
    p.grid_m = s.grid;
    p.grid_n = s.grid;
    p.noise_sigma = cfg.noise_sigma;
    p.epsilon = cfg.epsilon;
    p.interest_init = cfg.interest_init;
    p.interest_window = cfg.interest_window;
    p.interest_window_size = cfg.interest_window_size;
    p.do_generations = cfg.do_generations;
    p.do_real_executions = cfg.do_real_executions;
    p.lwlr_neighbors = cfg.lwlr_neighbors;
    p.lwlr_bandwidth = cfg.lwlr_bandwidth;
    p.lwlr_ridge = cfg.lwlr_ridge;
    p.bootstrap_touches = cfg.bootstrap_touches;
    p.bootstrap_cap = cfg.bootstrap_cap;
    p.bootstrap_sub_range = cfg.bootstrap_sub_range;
    return p;
}

json effective_json(const ExperimentConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["body"] = cfg.body;
    j["resolution"] = cfg.resolution;
    j["strategy"] = cfg.strategy;
    j["iterations"] = cfg.iterations;
    j["eval_interval"] = cfg.eval_interval;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["noise_sigma"] = cfg.noise_sigma;
    j["epsilon"] = cfg.epsilon;
    j["interest_init"] = cfg.interest_init;
    j["d_miss"] = cfg.d_miss ? json(*cfg.d_miss) : json(nullptr);
    j["interest_window"] = cfg.interest_window;
    j["interest_window_size"] = cfg.interest_window_size;
    j["do"] = {{"generations", cfg.do_generations},
               {"real_executions", cfg.do_real_executions}};
    j["lwlr"] = {{"neighbors", cfg.lwlr_neighbors},
                 {"bandwidth", cfg.lwlr_bandwidth},
                 {"ridge", cfg.lwlr_ridge}};
    j["bootstrap"] = {{"touches", cfg.bootstrap_touches},
                      {"cap", cfg.bootstrap_cap},
                      {"sub_range", cfg.bootstrap_sub_range}};
    j["contact"] = {{"catchment_radius", cfg.catchment_radius},
                    {"max_penetration", cfg.max_penetration}};
    j["goal_padding"] = cfg.goal_padding;
    j["test_stride"] = json::array({cfg.test_stride_rows, cfg.test_stride_cols});
    j["chain"] = chain_to_json(build_chain(cfg));
    j["patch"] = patch_spec_to_json(build_patch_spec(cfg));
    return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string dump = effective_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a 64
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

} // namespace skinbabble
