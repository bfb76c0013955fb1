#include "aewelm/ensemble.hpp"

#include <cmath>

#include "aewelm/rng.hpp"

namespace aewelm {

std::uint64_t member_seed(std::uint64_t base_seed, int round, int retry) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(round),
                       static_cast<std::uint64_t>(retry));
}

namespace {

void validate_boost_inputs(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                           const std::vector<std::string>& classes, const BoostConfig& cfg) {
    const auto m = classes.size();
    if (m < 2) throw std::invalid_argument("boosting: need at least 2 classes");
    if (static_cast<Eigen::Index>(labels.size()) != x.rows())
        throw std::invalid_argument("boosting: label count does not match row count");
    if (cfg.rounds < 1) throw std::invalid_argument("boosting: rounds must be >= 1");
    const double chance = (static_cast<double>(m) - 1.0) / static_cast<double>(m);
    if (!(cfg.eps_lo > 0.0 && cfg.eps_lo < cfg.eps_hi && cfg.eps_hi <= chance))
        throw std::invalid_argument(
            "boosting: epsilon band must satisfy 0 < lo < hi <= (k-1)/k");
}

double vote_error(const EnsembleModel& model, const Eigen::MatrixXd& x,
                  const std::vector<int>& labels) {
    const std::vector<int> pred = ensemble_predict(model, x);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (pred[i] != labels[i]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

// Shared boosting loop. base_cost is the static per-sample factor composed
// with D_t for the weak learner's solve weights; importance drives the
// variant's distribution update (ignored for AdaWelm).
EnsembleModel boost_loop(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                         const std::vector<std::string>& classes,
                         const Eigen::VectorXd& base_cost, const Eigen::VectorXd& importance,
                         Eigen::VectorXd d, const BoostConfig& cfg, const std::string& variant_tag,
                         BoostReport* report) {
    const Eigen::Index n = x.rows();
    const double k = static_cast<double>(classes.size());

    d /= d.sum();

    EnsembleModel model;
    model.classes = classes;
    model.variant = variant_tag;

    std::vector<double> last_rejected;
    for (int t = 0; t < cfg.rounds; ++t) {
        ElmModel member;
        std::vector<int> pred;
        double eps = 0.0;
        int retry = 0;
        bool accepted = false;
        last_rejected.clear();
        for (; retry <= cfg.max_retries; ++retry) {
            const Eigen::VectorXd solve_w = d.cwiseProduct(base_cost);
            member = train_elm(x, labels, classes, cfg.hidden_nodes, cfg.c,
                               member_seed(cfg.seed, t, retry), &solve_w);
            pred = predict_labels(member, x);
            eps = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                if (pred[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(i)])
                    eps += d[i];
            if (eps >= cfg.eps_lo && eps <= cfg.eps_hi) {
                accepted = true;
                break;
            }
            last_rejected.push_back(eps);
        }
        if (!accepted) {
            if (model.members.empty())
                throw BoostFailure(
                    "boosting: no round reached the epsilon acceptance band [" +
                        std::to_string(cfg.eps_lo) + ", " + std::to_string(cfg.eps_hi) +
                        "] after " + std::to_string(cfg.max_retries + 1) + " attempts",
                    last_rejected);
            break;  // early stop, keep accepted members
        }

        const double alpha = std::log((1.0 - eps) / eps) + std::log(k - 1.0);
        if (report && cfg.record_distributions) report->distributions.push_back(d);
        model.members.push_back(std::move(member));
        model.alphas.push_back(alpha);

        for (Eigen::Index i = 0; i < n; ++i) {
            if (pred[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(i)]) continue;
            switch (cfg.variant) {
                case BoostVariant::Ae1: d[i] *= std::exp(importance[i] * alpha); break;
                case BoostVariant::Ae2: d[i] *= importance[i] * std::exp(alpha); break;
                case BoostVariant::AdaWelm: d[i] *= std::exp(alpha); break;
            }
        }
        d /= d.sum();

        if (report) {
            RoundDiagnostics diag;
            diag.round = t;
            diag.eps = eps;
            diag.alpha = alpha;
            diag.train_err = vote_error(model, x, labels);
            diag.retries = retry;
            report->rounds.push_back(diag);
        }
    }
    model.rounds_used = static_cast<int>(model.members.size());
    return model;
}

}  // namespace

EnsembleModel train_aex_welm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             const std::vector<std::string>& classes,
                             const Eigen::VectorXd& doc_importance, const BoostConfig& cfg,
                             BoostReport* report) {
    validate_boost_inputs(x, labels, classes, cfg);
    if (doc_importance.size() != x.rows())
        throw std::invalid_argument("train_aex_welm: importance length does not match row count");
    if ((doc_importance.array() <= 0.0).any())
        throw std::invalid_argument("train_aex_welm: importance values must be positive");
    if (cfg.variant == BoostVariant::AdaWelm)
        throw std::invalid_argument("train_aex_welm: use train_ada_welm for the ada-welm variant");
    return boost_loop(x, labels, classes, doc_importance, doc_importance, doc_importance, cfg,
                      cfg.variant == BoostVariant::Ae1 ? "ae1" : "ae2", report);
}

EnsembleModel train_ada_welm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             const std::vector<std::string>& classes, const BoostConfig& cfg,
                             BoostReport* report) {
    validate_boost_inputs(x, labels, classes, cfg);
    BoostConfig ada_cfg = cfg;
    ada_cfg.variant = BoostVariant::AdaWelm;
    const Eigen::VectorXd balance = class_balance_weights(labels, static_cast<int>(classes.size()));
    const Eigen::VectorXd uniform = Eigen::VectorXd::Ones(x.rows());
    return boost_loop(x, labels, classes, balance, uniform, uniform, ada_cfg, "ada-welm", report);
}

EnsembleModel train_bagging_elm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                const std::vector<std::string>& classes, int bags,
                                const BoostConfig& cfg, BoostReport* report) {
    if (classes.size() < 2) throw std::invalid_argument("bagging: need at least 2 classes");
    if (bags < 1) throw std::invalid_argument("bagging: bag count must be >= 1");
    const Eigen::Index n = x.rows();
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw std::invalid_argument("bagging: label count does not match row count");

    EnsembleModel model;
    model.classes = classes;
    model.variant = "bagging";
    for (int b = 0; b < bags; ++b) {
        Rng rng(derive_seed(cfg.seed, "bag-sample", static_cast<std::uint64_t>(b)));
        Eigen::MatrixXd xb(n, x.cols());
        std::vector<int> yb(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto pick = static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(n)));
            xb.row(i) = x.row(pick);
            yb[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(pick)];
        }
        model.members.push_back(train_elm(xb, yb, classes, cfg.hidden_nodes, cfg.c,
                                          derive_seed(cfg.seed, "bag-model",
                                                      static_cast<std::uint64_t>(b))));
        model.alphas.push_back(1.0);
        if (report) {
            RoundDiagnostics diag;
            diag.round = b;
            diag.alpha = 1.0;
            diag.train_err = vote_error(model, x, labels);
            report->rounds.push_back(diag);
        }
    }
    model.rounds_used = bags;
    return model;
}

Eigen::MatrixXd ensemble_votes(const EnsembleModel& model, const Eigen::MatrixXd& x) {
    if (model.members.empty()) throw std::invalid_argument("ensemble_votes: empty ensemble");
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd votes =
        Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(model.classes.size()));
    for (std::size_t t = 0; t < model.members.size(); ++t) {
        const std::vector<int> pred = predict_labels(model.members[t], x);
        for (Eigen::Index i = 0; i < n; ++i)
            votes(i, pred[static_cast<std::size_t>(i)]) += model.alphas[t];
    }
    return votes;
}

std::vector<int> ensemble_predict(const EnsembleModel& model, const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd votes = ensemble_votes(model, x);
    std::vector<int> labels(static_cast<std::size_t>(votes.rows()));
    for (Eigen::Index i = 0; i < votes.rows(); ++i)
        labels[static_cast<std::size_t>(i)] = argmax_row(votes.row(i));
    return labels;
}

}  // namespace aewelm
