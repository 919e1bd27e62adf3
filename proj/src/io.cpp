#include "skinbabble/io.hpp"

#include "skinbabble/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace skinbabble {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string outcomes_csv(const TrialResult& tr, std::size_t dof) {
    std::ostringstream out;
    out << "iteration,strategy,goal_u,goal_v";
    for (std::size_t k = 1; k <= dof; ++k)
        out << ",q" << k;
    out << ",touched,x_u,x_v,cell,cell_interest\n";
    for (const Outcome& o : tr.outcomes) {
        out << o.iteration << ',' << o.strategy << ',';
        if (o.goal)
            out << fmt_double(o.goal->x()) << ',' << fmt_double(o.goal->y());
        else
            out << ',';
        for (Eigen::Index k = 0; k < o.q.size(); ++k)
            out << ',' << fmt_double(o.q[k]);
        out << ',' << (o.x ? 1 : 0) << ',';
        if (o.x)
            out << fmt_double(o.x->x()) << ',' << fmt_double(o.x->y());
        else
            out << ',';
        out << ',';
        if (o.cell >= 0)
            out << o.cell;
        out << ',';
        if (o.cell_interest)
            out << fmt_double(*o.cell_interest);
        out << '\n';
    }
    return out.str();
}

std::string checkpoints_csv(const TrialResult& tr) {
    std::ostringstream out;
    out << "iteration,mre,cumulative_touches\n";
    for (const CheckpointReport& cp : tr.checkpoints) {
        out << cp.iteration << ',';
        if (cp.mre)
            out << fmt_double(*cp.mre);
        out << ',' << cp.cumulative_touches << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<TaxelSummary>& summary) {
    std::ostringstream out;
    out << "id,u,v,reach_rate,mean_error,class\n";
    for (const TaxelSummary& t : summary) {
        out << t.taxel_id << ',' << fmt_double(t.uv.x()) << ',' << fmt_double(t.uv.y())
            << ',' << fmt_double(t.reach_rate) << ',';
        if (t.mean_error)
            out << fmt_double(*t.mean_error);
        out << ',' << t.cls << '\n';
    }
    return out.str();
}

// Mean over trials at each checkpoint; the MRE mean skips trials where it is
// missing and stays blank when no trial has one.
std::string mean_checkpoints_csv(const std::vector<TrialResult>& trials) {
    std::ostringstream out;
    out << "iteration,mean_mre,mean_touches\n";
    std::size_t n_cp = 0;
    for (const TrialResult& tr : trials)
        if (tr.ok())
            n_cp = std::max(n_cp, tr.checkpoints.size());
    for (std::size_t c = 0; c < n_cp; ++c) {
        int iteration = 0;
        double mre_sum = 0.0, touch_sum = 0.0;
        int mre_n = 0, touch_n = 0;
        for (const TrialResult& tr : trials) {
            if (!tr.ok() || c >= tr.checkpoints.size())
                continue;
            const CheckpointReport& cp = tr.checkpoints[c];
            iteration = cp.iteration;
            touch_sum += static_cast<double>(cp.cumulative_touches);
            ++touch_n;
            if (cp.mre) {
                mre_sum += *cp.mre;
                ++mre_n;
            }
        }
        out << iteration << ',';
        if (mre_n > 0)
            out << fmt_double(mre_sum / mre_n);
        out << ',' << (touch_n > 0 ? fmt_double(touch_sum / touch_n) : "") << '\n';
    }
    return out.str();
}

} // namespace

void write_results(const ExperimentResult& result, const fs::path& dir) {
    fs::create_directories(dir);
    const Environment env = build_environment(result.config);

    write_file(dir / "config.json", effective_json(result.config).dump(2) + "\n");

    json meta;
    meta["hash"] = result.hash;
    meta["wall_seconds"] = result.wall_seconds;
    meta["trials"] = json::array();
    for (const TrialResult& tr : result.trials) {
        json t;
        t["seed"] = tr.seed;
        t["ok"] = tr.ok();
        if (!tr.ok())
            t["error"] = tr.error;
        t["bootstrap_iterations"] = tr.bootstrap_iterations;
        meta["trials"].push_back(t);
    }
    write_file(dir / "meta.json", meta.dump(2) + "\n");

    write_file(dir / "taxels.csv", patch_geometry_csv(env.patch()));
    write_file(dir / "taxels_uv.csv", taxel_uv_csv(env.projection()));
    write_file(dir / "taxel_summary.csv", summary_csv(result.taxel_summary));
    write_file(dir / "checkpoints_mean.csv", mean_checkpoints_csv(result.trials));

    const std::size_t dof = env.chain().dof();
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const TrialResult& tr = result.trials[i];
        const fs::path tdir = dir / ("trial_" + std::to_string(i));
        fs::create_directories(tdir);
        if (!tr.ok()) {
            write_file(tdir / "error.txt", tr.error + "\n");
            continue;
        }
        write_file(tdir / "outcomes.csv", outcomes_csv(tr, dof));
        write_file(tdir / "checkpoints.csv", checkpoints_csv(tr));
        std::ostringstream db;
        write_database_csv(tr.db, db);
        write_file(tdir / "database.csv", db.str());
    }
}

void write_comparison_csv(const std::vector<ExperimentResult>& results,
                          const fs::path& file) {
    std::ostringstream out;
    out << "strategy,iteration,mean_mre,mean_touches\n";
    for (const ExperimentResult& res : results) {
        std::size_t n_cp = 0;
        for (const TrialResult& tr : res.trials)
            if (tr.ok())
                n_cp = std::max(n_cp, tr.checkpoints.size());
        for (std::size_t c = 0; c < n_cp; ++c) {
            int iteration = 0;
            double mre_sum = 0.0, touch_sum = 0.0;
            int mre_n = 0, touch_n = 0;
            for (const TrialResult& tr : res.trials) {
                if (!tr.ok() || c >= tr.checkpoints.size())
                    continue;
                const CheckpointReport& cp = tr.checkpoints[c];
                iteration = cp.iteration;
                touch_sum += static_cast<double>(cp.cumulative_touches);
                ++touch_n;
                if (cp.mre) {
                    mre_sum += *cp.mre;
                    ++mre_n;
                }
            }
            out << res.config.strategy << ',' << iteration << ',';
            if (mre_n > 0)
                out << fmt_double(mre_sum / mre_n);
            out << ',' << (touch_n > 0 ? fmt_double(touch_sum / touch_n) : "") << '\n';
        }
    }
    write_file(file, out.str());
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot read '" + file.string() + "'");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

} // namespace skinbabble
