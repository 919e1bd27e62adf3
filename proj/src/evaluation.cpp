#include "skinbabble/evaluation.hpp"

#include "skinbabble/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace skinbabble {

int CheckpointReport::count(ReachOutcome o) const {
    return static_cast<int>(
        std::count_if(results.begin(), results.end(),
                      [o](const TaxelTestResult& r) { return r.outcome == o; }));
}

TestSet build_test_set(const SkinPatch& patch, const std::string& resolution,
                       int stride_rows, int stride_cols) {
    TestSet ts;
    if (resolution == "low") {
        for (const Taxel& t : patch.taxels)
            ts.taxel_ids.push_back(t.id);
        return ts;
    }
    if (resolution != "high")
        throw ConfigError("resolution: must be 'low' or 'high', got '" + resolution + "'");
    if (stride_rows < 1 || stride_cols < 1)
        throw ConfigError("test_stride: strides must be >= 1");
    for (int i = 0; i < patch.rows; i += stride_rows)
        for (int j = 0; j < patch.cols; j += stride_cols)
            ts.taxel_ids.push_back(i * patch.cols + j);
    return ts;
}

CheckpointReport evaluate_checkpoint(const Environment& env, const SampleDatabase& db,
                                     const TestSet& test_set, int iteration) {
    CheckpointReport rep;
    rep.iteration = iteration;
    rep.cumulative_touches = static_cast<long>(db.size());

    double err_sum = 0.0;
    int err_count = 0;
    for (int target : test_set.taxel_ids) {
        TaxelTestResult r;
        r.taxel_id = target;
        if (db.empty()) {
            r.outcome = ReachOutcome::Unreached;
            rep.results.push_back(r);
            continue;
        }
        const Obs goal = env.projection().taxel_uv()[static_cast<std::size_t>(target)];
        const ExecResult ex = env.execute(db.nn_inverse(goal));
        if (!ex.touched()) {
            r.outcome = ReachOutcome::Unreached;
        } else if (*ex.taxel == target) {
            r.outcome = ReachOutcome::Exact;
            r.error = 0.0;
            ++err_count; // an exact hit is a measured error of zero
        } else {
            r.outcome = ReachOutcome::WithError;
            r.error = distance(
                goal, env.projection().taxel_uv()[static_cast<std::size_t>(*ex.taxel)]);
            err_sum += r.error;
            ++err_count;
        }
        rep.results.push_back(r);
    }
    if (err_count > 0)
        rep.mre = err_sum / err_count;
    return rep;
}

std::vector<TaxelSummary> aggregate_trials(
    const std::vector<const CheckpointReport*>& finals, const Projection& proj,
    double threshold) {
    std::vector<TaxelSummary> out;
    if (finals.empty())
        return out;

    std::map<int, std::pair<int, double>> reached; // taxel -> (count, error sum)
    std::vector<int> order;
    for (const TaxelTestResult& r : finals.front()->results)
        order.push_back(r.taxel_id);

    for (const CheckpointReport* rep : finals)
        for (const TaxelTestResult& r : rep->results)
            if (r.outcome != ReachOutcome::Unreached) {
                auto& [n, sum] = reached[r.taxel_id];
                ++n;
                sum += r.error;
            }

    const auto trials = static_cast<double>(finals.size());
    for (int id : order) {
        TaxelSummary s;
        s.taxel_id = id;
        s.uv = proj.taxel_uv()[static_cast<std::size_t>(id)];
        const auto it = reached.find(id);
        const int n = it == reached.end() ? 0 : it->second.first;
        s.reach_rate = n / trials;
        if (s.reach_rate >= threshold && n > 0) {
            s.mean_error = it->second.second / n;
            s.cls = *s.mean_error == 0.0 ? "blue" : "magenta";
        } else {
            s.cls = "red";
        }
        out.push_back(s);
    }
    return out;
}

} // namespace skinbabble
