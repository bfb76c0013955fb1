#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace aewelm {

struct HiddenLayer {
    Eigen::MatrixXd weights;  // L x d, i.i.d. uniform [-1, 1]
    Eigen::VectorXd biases;   // L
    std::uint64_t seed = 0;
    std::string activation = "tanh";
};

HiddenLayer init_hidden(int hidden_nodes, int input_dim, std::uint64_t seed);

// H[i, l] = tanh(a_l . x_i + b_l)
Eigen::MatrixXd hidden_output(const HiddenLayer& hidden, const Eigen::MatrixXd& x);

// One-hot +1/-1 coding, one +1 per row.
Eigen::MatrixXd encode_targets(const std::vector<int>& labels, int num_classes);

enum class SolveForm {
    Auto,    // primal when N >= L, dual otherwise
    Primal,  // beta = (I/C + H^T W H)^-1 H^T W T
    Dual,    // beta = H^T (W^-1/C + H H^T)^-1 T  (same minimizer, N x N system)
};

// Closed-form solve of the weighted ridge objective
//   min 1/2 |beta|^2 + C/2 sum_i w_i |h(x_i) beta - t_i|^2
// via an LDLT factorization of the symmetric positive-definite system.
// sample_weights == nullptr means identity weighting.
Eigen::MatrixXd solve_beta(const Eigen::MatrixXd& h, const Eigen::MatrixXd& t, double c,
                           const Eigen::VectorXd* sample_weights = nullptr,
                           SolveForm form = SolveForm::Auto);

struct ElmModel {
    HiddenLayer hidden;
    Eigen::MatrixXd beta;  // L x m
    std::vector<std::string> classes;
    double c = 1.0;
    bool trained_weighted = false;
};

ElmModel train_elm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                   const std::vector<std::string>& classes, int hidden_nodes, double c,
                   std::uint64_t seed, const Eigen::VectorXd* sample_weights = nullptr);

Eigen::MatrixXd predict_scores(const ElmModel& model, const Eigen::MatrixXd& x);
std::vector<int> predict_labels(const ElmModel& model, const Eigen::MatrixXd& x);

// Ties resolve to the lowest class index.
int argmax_row(const Eigen::Ref<const Eigen::RowVectorXd>& row);

// w_i = 1 / n_{class(i)}
Eigen::VectorXd class_balance_weights(const std::vector<int>& labels, int num_classes);

}  // namespace aewelm
