#include "skinbabble/inverse_model.hpp"

#include "skinbabble/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace skinbabble {

void SampleDatabase::insert(const JointConfig& q, const Obs& x) {
    if (!q_.empty() && q.size() != q_.front().size())
        throw ConfigError("db.insert: q dimension " + std::to_string(q.size()) +
                          " does not match stored dimension " +
                          std::to_string(q_.front().size()));
    if (!x.allFinite() || !q.allFinite())
        throw ConfigError("db.insert: non-finite sample");
    q_.push_back(q);
    x_.push_back(x);
}

std::size_t SampleDatabase::nn_index(const Obs& goal) const {
    if (empty())
        throw ModelError("nn_inverse: database is empty");
    std::size_t best = 0;
    double best_d2 = (x_[0] - goal).squaredNorm();
    for (std::size_t i = 1; i < x_.size(); ++i) {
        const double d2 = (x_[i] - goal).squaredNorm();
        if (d2 < best_d2) { // strict: earliest insertion wins ties
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

Obs SampleDatabase::lwlr_forward(const JointConfig& q_query, int k_neighbors,
                                 double bandwidth, double ridge) const {
    if (k_neighbors < 1)
        throw ModelError("lwlr: k_neighbors must be >= 1");
    if (size() < static_cast<std::size_t>(k_neighbors))
        throw ModelError("lwlr: database has " + std::to_string(size()) +
                         " entries, need " + std::to_string(k_neighbors));

    std::vector<std::pair<double, std::size_t>> d2(size());
    for (std::size_t i = 0; i < size(); ++i)
        d2[i] = {(q_[i] - q_query).squaredNorm(), i};
    std::partial_sort(d2.begin(), d2.begin() + k_neighbors, d2.end());

    const int k = k_neighbors;
    const Eigen::Index dim = q_query.size();

    double h = bandwidth;
    if (h <= 0.0) {
        double mean_d = 0.0;
        for (int i = 0; i < k; ++i)
            mean_d += std::sqrt(d2[i].first);
        h = mean_d / k;
    }

    Eigen::VectorXd w(k);
    if (h <= 0.0) {
        w.setOnes(); // all neighbors coincide with the query
    } else {
        for (int i = 0; i < k; ++i)
            w[i] = std::exp(-d2[i].first / (2.0 * h * h));
    }

    Eigen::MatrixXd Q(k, dim);
    Eigen::MatrixXd X(k, 2);
    for (int i = 0; i < k; ++i) {
        Q.row(i) = q_[d2[i].second].transpose();
        X.row(i) = x_[d2[i].second].transpose();
    }

    // Weighted affine fit, centered so the ridge never penalizes the
    // intercept: x(q) ~= xbar + B^T (q - qbar).
    const double wsum = w.sum();
    const Eigen::VectorXd qbar = Q.transpose() * w / wsum;
    const Eigen::Vector2d xbar = X.transpose() * w / wsum;
    Eigen::MatrixXd Qc = Q.rowwise() - qbar.transpose();
    Eigen::MatrixXd Xc = X.rowwise() - xbar.transpose();
    const Eigen::MatrixXd A = Qc.transpose() * w.asDiagonal() * Qc +
                              ridge * Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd B = A.ldlt().solve(Qc.transpose() * w.asDiagonal() * Xc);
    return xbar + B.transpose() * (q_query - qbar);
}

void write_database_csv(const SampleDatabase& db, std::ostream& out) {
    if (db.size() == 0)
        return; // no entries fix no column count; empty stream reads back empty
    const int dim = db.dim();
    for (int i = 0; i < std::max(dim, 0); ++i)
        out << 'q' << i + 1 << ',';
    out << "u,v\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        out.write(buf, p - buf);
        out.put(sep);
    };
    for (std::size_t i = 0; i < db.size(); ++i) {
        const JointConfig& q = db.q_at(i);
        for (Eigen::Index j = 0; j < q.size(); ++j)
            put(q[j], ',');
        put(db.x_at(i)[0], ',');
        put(db.x_at(i)[1], '\n');
    }
}

SampleDatabase read_database_csv(std::istream& in) {
    SampleDatabase db;
    std::string line;
    if (!std::getline(in, line))
        return db;
    const auto columns = static_cast<Eigen::Index>(
        std::count(line.begin(), line.end(), ',') + 1);
    if (columns < 3)
        throw ConfigError("database csv: expected q1..qn,u,v header");
    const Eigen::Index dim = columns - 2;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        JointConfig q(dim);
        Obs x;
        for (Eigen::Index j = 0; j < columns; ++j) {
            if (!std::getline(row, field, ','))
                throw ConfigError("database csv: short row");
            const double v = std::stod(field);
            if (j < dim)
                q[j] = v;
            else
                x[j - dim] = v;
        }
        db.insert(q, x);
    }
    return db;
}

} // namespace skinbabble
