// Python module exposing the exploration engine: config validation, single
// environment interactions, the sample database and full experiment runs.

#include "skinbabble/config.hpp"
#include "skinbabble/environment.hpp"
#include "skinbabble/errors.hpp"
#include "skinbabble/experiment.hpp"
#include "skinbabble/inverse_model.hpp"
#include "skinbabble/io.hpp"
#include "skinbabble/kinematics.hpp"
#include "skinbabble/svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace skinbabble;
using nlohmann::json;

namespace {

ExperimentConfig config_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

JointConfig to_joint_config(const std::vector<double>& q) {
    JointConfig out(static_cast<Eigen::Index>(q.size()));
    for (std::size_t i = 0; i < q.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = q[i];
    return out;
}

py::dict config_info(const ExperimentConfig& cfg) {
    py::dict d;
    d["name"] = cfg.name;
    d["body"] = cfg.body;
    d["resolution"] = cfg.resolution;
    d["strategy"] = cfg.strategy;
    d["iterations"] = cfg.iterations;
    d["eval_interval"] = cfg.eval_interval;
    d["trials"] = cfg.trials;
    d["seed"] = cfg.seed;
    d["hash"] = config_hash(cfg);
    return d;
}

// The environment plus its config: enough to poke the simulation from python
// without running a whole experiment.
class Engine {
public:
    explicit Engine(const std::string& config_text)
        : cfg_(config_from_text(config_text)), env_(build_environment(cfg_)) {}

    std::size_t dof() const { return env_.chain().dof(); }
    std::size_t taxel_count() const { return env_.patch().taxels.size(); }
    double d_miss() const { return env_.d_miss(); }
    long executions() const { return env_.executions(); }

    py::tuple goal_bounds() const {
        const Rect& b = env_.goal_bounds();
        return py::make_tuple(b.u0, b.v0, b.u1, b.v1);
    }

    py::list joint_limits() const {
        py::list limits;
        for (const RevoluteJoint& j : env_.chain().joints)
            limits.append(py::make_tuple(j.lo, j.hi));
        return limits;
    }

    py::tuple tip_position(const std::vector<double>& q) const {
        const Vec3 p = forward_kinematics(env_.chain(), to_joint_config(q));
        return py::make_tuple(p.x(), p.y(), p.z());
    }

    py::dict execute(const std::vector<double>& q) const {
        const ExecResult r = env_.execute(to_joint_config(q));
        py::dict d;
        d["touched"] = r.touched();
        d["taxel"] = r.taxel ? py::object(py::int_(*r.taxel)) : py::none();
        d["x"] = r.obs ? py::object(py::make_tuple((*r.obs)[0], (*r.obs)[1]))
                       : py::object(py::none());
        return d;
    }

    py::tuple taxel_uv(int id) const {
        const auto& uv = env_.projection().taxel_uv();
        if (id < 0 || static_cast<std::size_t>(id) >= uv.size())
            throw ConfigError("taxel id out of range");
        return py::make_tuple(uv[static_cast<std::size_t>(id)][0],
                              uv[static_cast<std::size_t>(id)][1]);
    }

    py::dict info() const { return config_info(cfg_); }

private:
    ExperimentConfig cfg_;
    Environment env_;
};

py::dict summarize(const ExperimentResult& res,
                   const std::optional<std::string>& out_dir) {
    py::dict d;
    d["name"] = res.config.name;
    d["hash"] = res.hash;
    d["strategy"] = res.config.strategy;
    d["trials"] = res.trials.size();
    d["trials_ok"] =
        std::count_if(res.trials.begin(), res.trials.end(),
                      [](const TrialResult& t) { return t.ok(); });
    d["wall_seconds"] = res.wall_seconds;

    py::list checkpoints;
    const std::size_t n_cp = res.trials.empty() || res.trials[0].checkpoints.empty()
                                 ? 0
                                 : res.trials[0].checkpoints.size();
    for (std::size_t k = 0; k < n_cp; ++k) {
        double mre_sum = 0.0, touch_sum = 0.0;
        int mre_n = 0, touch_n = 0, iteration = 0;
        for (const TrialResult& t : res.trials) {
            if (!t.ok())
                continue;
            const CheckpointReport& cp = t.checkpoints[k];
            iteration = cp.iteration;
            touch_sum += static_cast<double>(cp.cumulative_touches);
            ++touch_n;
            if (cp.mre) {
                mre_sum += *cp.mre;
                ++mre_n;
            }
        }
        py::dict cp;
        cp["iteration"] = iteration;
        cp["mean_mre"] = mre_n > 0 ? py::object(py::float_(mre_sum / mre_n))
                                   : py::object(py::none());
        cp["mean_touches"] = touch_n > 0 ? touch_sum / touch_n : 0.0;
        checkpoints.append(cp);
    }
    d["checkpoints"] = checkpoints;

    py::dict classes;
    int blue = 0, magenta = 0, red = 0;
    for (const TaxelSummary& t : res.taxel_summary) {
        if (t.cls == "blue")
            ++blue;
        else if (t.cls == "magenta")
            ++magenta;
        else
            ++red;
    }
    classes["blue"] = blue;
    classes["magenta"] = magenta;
    classes["red"] = red;
    d["taxel_classes"] = classes;
    d["out_dir"] = out_dir ? py::object(py::str(*out_dir)) : py::object(py::none());
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "skin-space exploration engine";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_RuntimeError);
    py::register_exception<OptimizerError>(m, "OptimizerError", PyExc_RuntimeError);
    py::register_exception<BootstrapError>(m, "BootstrapError", PyExc_RuntimeError);
    py::register_exception<ProjectionError>(m, "ProjectionError", PyExc_RuntimeError);

    m.def(
        "validate_config",
        [](const std::string& text) { return config_info(config_from_text(text)); },
        py::arg("config"),
        "Parse a config (JSON text) and return its effective key fields");

    m.def(
        "run_experiment",
        [](const std::string& text, std::optional<std::string> out_dir, int parallel,
           std::optional<std::uint64_t> seed, std::optional<int> trials) {
            ExperimentConfig cfg = config_from_text(text);
            if (seed)
                cfg.seed = *seed;
            if (trials)
                cfg.trials = *trials;
            ExperimentResult res;
            {
                py::gil_scoped_release release;
                res = run_experiment(cfg, parallel);
                if (out_dir) {
                    write_results(res, *out_dir);
                    write_skin_svg(*out_dir);
                    write_curves_svg(*out_dir);
                }
            }
            return summarize(res, out_dir);
        },
        py::arg("config"), py::arg("out_dir") = std::nullopt,
        py::arg("parallel") = 1, py::arg("seed") = std::nullopt,
        py::arg("trials") = std::nullopt,
        "Run all trials of a config; optionally write the result directory");

    py::class_<Engine>(m, "Engine",
                       "One simulated environment built from a config")
        .def(py::init<const std::string&>(), py::arg("config"))
        .def_property_readonly("dof", &Engine::dof)
        .def_property_readonly("taxel_count", &Engine::taxel_count)
        .def_property_readonly("d_miss", &Engine::d_miss)
        .def_property_readonly("executions", &Engine::executions)
        .def("goal_bounds", &Engine::goal_bounds)
        .def("joint_limits", &Engine::joint_limits)
        .def("tip_position", &Engine::tip_position, py::arg("q"))
        .def("execute", &Engine::execute, py::arg("q"))
        .def("taxel_uv", &Engine::taxel_uv, py::arg("taxel_id"))
        .def("info", &Engine::info);

    py::class_<SampleDatabase>(m, "SampleDatabase",
                               "Joint-config/observation pairs with 1-NN and "
                               "locally weighted regression queries")
        .def(py::init<>())
        .def("insert",
             [](SampleDatabase& db, const std::vector<double>& q, double u, double v) {
                 db.insert(to_joint_config(q), Obs(u, v));
             },
             py::arg("q"), py::arg("u"), py::arg("v"))
        .def("size", &SampleDatabase::size)
        .def("nn_inverse",
             [](const SampleDatabase& db, double u, double v) {
                 const JointConfig q = db.nn_inverse(Obs(u, v));
                 return std::vector<double>(q.data(), q.data() + q.size());
             },
             py::arg("u"), py::arg("v"))
        .def("lwlr_forward",
             [](const SampleDatabase& db, const std::vector<double>& q, int neighbors,
                double bandwidth, double ridge) {
                 const Obs x =
                     db.lwlr_forward(to_joint_config(q), neighbors, bandwidth, ridge);
                 return py::make_tuple(x[0], x[1]);
             },
             py::arg("q"), py::arg("neighbors") = 20, py::arg("bandwidth") = 0.0,
             py::arg("ridge") = 1e-6);
}
