#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aewelm/elm.hpp"

namespace aewelm {

enum class BoostVariant { Ae1, Ae2, AdaWelm };

struct BoostConfig {
    int rounds = 20;  // T
    double c = 1.0;
    int hidden_nodes = 100;  // L
    std::uint64_t seed = 0;
    BoostVariant variant = BoostVariant::Ae1;
    double eps_lo = 0.01;  // acceptance band for the weighted error
    double eps_hi = 0.5;
    int max_retries = 5;  // hidden-layer reseeds per round before early stop
    bool record_distributions = false;
};

struct RoundDiagnostics {
    int round = 0;
    double eps = 0.0;
    double alpha = 0.0;
    double train_err = 0.0;  // weighted-vote error on the training set so far
    int retries = 0;
};

struct BoostReport {
    std::vector<RoundDiagnostics> rounds;
    std::vector<Eigen::VectorXd> distributions;  // D entering each accepted round
};

struct EnsembleModel {
    std::vector<ElmModel> members;
    std::vector<double> alphas;
    std::vector<std::string> classes;
    std::string variant;  // ae1 | ae2 | ada-welm | bagging | elm | relm
    int rounds_used = 0;
};

// Thrown when no round can reach the epsilon acceptance band.
class BoostFailure : public std::runtime_error {
public:
    BoostFailure(const std::string& msg, std::vector<double> rejected)
        : std::runtime_error(msg), rejected_eps(std::move(rejected)) {}
    std::vector<double> rejected_eps;
};

// Seed for the round's hidden layer; retries reseed deterministically.
std::uint64_t member_seed(std::uint64_t base_seed, int round, int retry);

// Cost-sensitive boosted WELM. doc_importance (values in [0.01, 1]) becomes
// the static cost matrix; each round trains on D_t-modulated costs and the
// distribution update follows the configured variant:
//   Ae1: misclassified weights scale by e^{importance * alpha}
//   Ae2: misclassified weights scale by importance * e^{alpha}
EnsembleModel train_aex_welm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             const std::vector<std::string>& classes,
                             const Eigen::VectorXd& doc_importance, const BoostConfig& cfg,
                             BoostReport* report = nullptr);

// Boosted WELM with static class-balance costs (1/n_k), uniform initial
// distribution and the plain multiclass AdaBoost update.
EnsembleModel train_ada_welm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             const std::vector<std::string>& classes, const BoostConfig& cfg,
                             BoostReport* report = nullptr);

// Bootstrap-aggregated unweighted ELMs, majority vote (all alphas 1).
EnsembleModel train_bagging_elm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                const std::vector<std::string>& classes, int bags,
                                const BoostConfig& cfg, BoostReport* report = nullptr);

// Weighted vote tally, n x m.
Eigen::MatrixXd ensemble_votes(const EnsembleModel& model, const Eigen::MatrixXd& x);

// argmax_k sum_t alpha_t [h_t(x) = k], ties to the lowest class index.
std::vector<int> ensemble_predict(const EnsembleModel& model, const Eigen::MatrixXd& x);

}  // namespace aewelm
