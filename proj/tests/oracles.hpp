#pragma once

// Test-only oracles, deliberately written as plain loops independent of the
// library's computation paths.

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aewelm/corpus.hpp"
#include "aewelm/elm.hpp"
#include "aewelm/ensemble.hpp"
#include "aewelm/rng.hpp"

namespace oracles {

// ---- entropy, recomputed straight from the token lists ----

inline double ed_oracle(const aewelm::Corpus& corpus, const std::string& term, double theta) {
    std::map<std::string, int> df_by_class;
    int df_total = 0;
    for (const auto& doc : corpus.documents) {
        bool contains = false;
        for (const auto& tok : doc.tokens)
            if (tok == term) { contains = true; break; }
        if (contains) {
            ++df_by_class[doc.label];
            ++df_total;
        }
    }
    double e_d = 0.0;
    for (const auto& [cls, df] : df_by_class) {
        const double p = double(df) / double(df_total);
        e_d -= p * std::log(p);
    }
    return std::log(1.0 / (e_d + theta));
}

inline double ec_oracle(const aewelm::Corpus& corpus, const std::string& term) {
    double max_entropy = 0.0;
    for (const auto& category : corpus.categories) {
        std::vector<double> counts;
        double total = 0.0;
        for (const auto& doc : corpus.documents) {
            if (doc.label != category) continue;
            double count = 0.0;
            for (const auto& tok : doc.tokens)
                if (tok == term) count += 1.0;
            if (count > 0.0) {
                counts.push_back(count);
                total += count;
            }
        }
        if (total == 0.0) continue;
        double entropy = 0.0;
        for (double count : counts) {
            const double p = count / total;
            entropy -= p * std::log(p);
        }
        if (entropy > max_entropy) max_entropy = entropy;
    }
    return std::exp(max_entropy);
}

// entropy of the DF distribution alone (for the E_d <= ln m property)
inline double e_d_raw_oracle(const aewelm::Corpus& corpus, const std::string& term) {
    std::map<std::string, int> df_by_class;
    int df_total = 0;
    for (const auto& doc : corpus.documents) {
        for (const auto& tok : doc.tokens)
            if (tok == term) {
                ++df_by_class[doc.label];
                ++df_total;
                break;
            }
    }
    double e_d = 0.0;
    for (const auto& [cls, df] : df_by_class) {
        const double p = double(df) / double(df_total);
        e_d -= p * std::log(p);
    }
    return e_d;
}

// ---- ridge least squares by explicit normal equations + Gauss-Jordan ----

inline Eigen::MatrixXd gauss_jordan_solve(Eigen::MatrixXd a, Eigen::MatrixXd b) {
    const int n = int(a.rows());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw std::runtime_error("gauss_jordan_solve: singular matrix");
        a.row(col).swap(a.row(pivot));
        b.row(col).swap(b.row(pivot));
        const double inv = 1.0 / a(col, col);
        a.row(col) *= inv;
        b.row(col) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a(r, col);
            if (factor == 0.0) continue;
            a.row(r) -= factor * a.row(col);
            b.row(r) -= factor * b.row(col);
        }
    }
    return b;
}

inline Eigen::MatrixXd ridge_oracle(const Eigen::MatrixXd& h, const Eigen::MatrixXd& t, double c,
                                    const Eigen::VectorXd* w = nullptr) {
    const int n = int(h.rows());
    const int l = int(h.cols());
    const int m = int(t.cols());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(l, l);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(l, m);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            for (int r = 0; r < n; ++r)
                a(i, j) += h(r, i) * (w ? (*w)(r) : 1.0) * h(r, j);
    for (int i = 0; i < l; ++i) a(i, i) += 1.0 / c;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < m; ++j)
            for (int r = 0; r < n; ++r)
                rhs(i, j) += h(r, i) * (w ? (*w)(r) : 1.0) * t(r, j);
    return gauss_jordan_solve(std::move(a), std::move(rhs));
}

// ---- independent SAMME boosting loop (shares only the weak learner) ----

struct BoostTrajectory {
    std::vector<double> eps;
    std::vector<double> alpha;
    std::vector<Eigen::VectorXd> d;  // distribution entering each round
};

// base_cost is the static per-sample factor multiplied into the weak
// learner's solve weights (ones = plain SAMME, 1/n_k = class-balance).
inline BoostTrajectory samme_reference(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                       const std::vector<std::string>& classes,
                                       const Eigen::VectorXd& base_cost, Eigen::VectorXd d0,
                                       int rounds, int hidden_nodes, double c,
                                       std::uint64_t seed) {
    const int n = int(x.rows());
    const double k = double(classes.size());
    Eigen::VectorXd d = d0 / d0.sum();
    BoostTrajectory traj;
    for (int t = 0; t < rounds; ++t) {
        const Eigen::VectorXd w = d.cwiseProduct(base_cost);
        const aewelm::ElmModel member = aewelm::train_elm(
            x, labels, classes, hidden_nodes, c, aewelm::member_seed(seed, t, 0), &w);
        const std::vector<int> pred = aewelm::predict_labels(member, x);
        double eps = 0.0;
        for (int i = 0; i < n; ++i)
            if (pred[size_t(i)] != labels[size_t(i)]) eps += d(i);
        if (eps < 0.01 || eps > 0.5)
            throw std::runtime_error("samme_reference: epsilon left the acceptance band at round " +
                                     std::to_string(t) + " (" + std::to_string(eps) + ")");
        const double alpha = std::log((1.0 - eps) / eps) + std::log(k - 1.0);
        traj.d.push_back(d);
        traj.eps.push_back(eps);
        traj.alpha.push_back(alpha);
        for (int i = 0; i < n; ++i)
            if (pred[size_t(i)] != labels[size_t(i)]) d(i) *= std::exp(alpha);
        d /= d.sum();
    }
    return traj;
}

// ---- synthetic data ----

struct Blobs {
    Eigen::MatrixXd x;
    std::vector<int> y;
    std::vector<std::string> classes;
};

inline Blobs gaussian_blobs(const std::vector<int>& sizes, int dim, double separation,
                            double noise, std::uint64_t seed) {
    const int m = int(sizes.size());
    int n = 0;
    for (int s : sizes) n += s;
    aewelm::Rng rng(aewelm::derive_seed(seed, "blobs", 0));
    Eigen::MatrixXd means(m, dim);
    for (int c = 0; c < m; ++c) {
        for (int j = 0; j < dim; ++j) means(c, j) = rng.normal();
        means.row(c) *= separation / means.row(c).norm();
    }
    Blobs blobs;
    blobs.x.resize(n, dim);
    blobs.y.reserve(size_t(n));
    int row = 0;
    for (int c = 0; c < m; ++c) {
        blobs.classes.push_back("class" + std::to_string(c));
        for (int i = 0; i < sizes[size_t(c)]; ++i) {
            for (int j = 0; j < dim; ++j) blobs.x(row, j) = means(c, j) + noise * rng.normal();
            blobs.y.push_back(c);
            ++row;
        }
    }
    return blobs;
}

inline double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == pred[i]) ++hits;
    return double(hits) / double(truth.size());
}

}  // namespace oracles
