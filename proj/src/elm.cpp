#include "aewelm/elm.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

#include "aewelm/rng.hpp"

namespace aewelm {

HiddenLayer init_hidden(int hidden_nodes, int input_dim, std::uint64_t seed) {
    if (hidden_nodes < 1 || input_dim < 1)
        throw std::invalid_argument("init_hidden: hidden_nodes and input_dim must be >= 1");
    HiddenLayer layer;
    layer.seed = seed;
    layer.weights.resize(hidden_nodes, input_dim);
    layer.biases.resize(hidden_nodes);
    Rng rng(seed);
    // fixed fill order: weights row by row, then biases
    for (int l = 0; l < hidden_nodes; ++l)
        for (int j = 0; j < input_dim; ++j) layer.weights(l, j) = rng.uniform(-1.0, 1.0);
    for (int l = 0; l < hidden_nodes; ++l) layer.biases(l) = rng.uniform(-1.0, 1.0);
    return layer;
}

Eigen::MatrixXd hidden_output(const HiddenLayer& hidden, const Eigen::MatrixXd& x) {
    if (x.cols() != hidden.weights.cols())
        throw std::invalid_argument("hidden_output: input has " + std::to_string(x.cols()) +
                                    " columns, layer expects " +
                                    std::to_string(hidden.weights.cols()));
    Eigen::MatrixXd pre = x * hidden.weights.transpose();
    pre.rowwise() += hidden.biases.transpose();
    return pre.array().tanh();
}

Eigen::MatrixXd encode_targets(const std::vector<int>& labels, int num_classes) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(labels.size()),
                                                  num_classes, -1.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= num_classes)
            throw std::invalid_argument("encode_targets: label index out of range");
        t(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    }
    return t;
}

Eigen::MatrixXd solve_beta(const Eigen::MatrixXd& h, const Eigen::MatrixXd& t, double c,
                           const Eigen::VectorXd* sample_weights, SolveForm form) {
    const Eigen::Index n = h.rows();
    const Eigen::Index l = h.cols();
    if (t.rows() != n)
        throw std::invalid_argument("solve_beta: H and T row counts differ");
    if (c <= 0.0) throw std::invalid_argument("solve_beta: regularization parameter must be > 0");
    if (sample_weights) {
        if (sample_weights->size() != n)
            throw std::invalid_argument("solve_beta: weight vector length mismatch");
        if ((sample_weights->array() <= 0.0).any())
            throw std::invalid_argument("solve_beta: sample weights must be strictly positive");
    }

    if (form == SolveForm::Auto) form = n >= l ? SolveForm::Primal : SolveForm::Dual;

    Eigen::MatrixXd beta;
    if (form == SolveForm::Primal) {
        Eigen::MatrixXd a(l, l);
        Eigen::MatrixXd rhs;
        if (sample_weights) {
            a.noalias() = h.transpose() * sample_weights->asDiagonal() * h;
            rhs.noalias() = h.transpose() * sample_weights->asDiagonal() * t;
        } else {
            a.noalias() = h.transpose() * h;
            rhs.noalias() = h.transpose() * t;
        }
        a.diagonal().array() += 1.0 / c;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve_beta: factorization failed (degenerate H or c too large)");
        beta = ldlt.solve(rhs);
    } else {
        // (W^-1/C + H H^T) z = T, beta = H^T z; SPD for any positive W
        Eigen::MatrixXd a(n, n);
        a.noalias() = h * h.transpose();
        if (sample_weights)
            a.diagonal() += (1.0 / (c * sample_weights->array())).matrix();
        else
            a.diagonal().array() += 1.0 / c;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve_beta: factorization failed (degenerate H or c too large)");
        beta.noalias() = h.transpose() * ldlt.solve(t);
    }
    if (!beta.allFinite())
        throw std::runtime_error("solve_beta: non-finite solution (degenerate H or c too large)");
    return beta;
}

ElmModel train_elm(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                   const std::vector<std::string>& classes, int hidden_nodes, double c,
                   std::uint64_t seed, const Eigen::VectorXd* sample_weights) {
    if (classes.size() < 2) throw std::invalid_argument("train_elm: need at least 2 classes");
    if (static_cast<Eigen::Index>(labels.size()) != x.rows())
        throw std::invalid_argument("train_elm: label count does not match row count");
    ElmModel model;
    model.hidden = init_hidden(hidden_nodes, static_cast<int>(x.cols()), seed);
    model.classes = classes;
    model.c = c;
    model.trained_weighted = sample_weights != nullptr;
    const Eigen::MatrixXd h = hidden_output(model.hidden, x);
    const Eigen::MatrixXd t = encode_targets(labels, static_cast<int>(classes.size()));
    model.beta = solve_beta(h, t, c, sample_weights);
    return model;
}

Eigen::MatrixXd predict_scores(const ElmModel& model, const Eigen::MatrixXd& x) {
    return hidden_output(model.hidden, x) * model.beta;
}

int argmax_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
    int best = 0;
    for (int j = 1; j < row.size(); ++j)
        if (row[j] > row[best]) best = j;
    return best;
}

std::vector<int> predict_labels(const ElmModel& model, const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd scores = predict_scores(model, x);
    std::vector<int> labels(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i)
        labels[static_cast<std::size_t>(i)] = argmax_row(scores.row(i));
    return labels;
}

Eigen::VectorXd class_balance_weights(const std::vector<int>& labels, int num_classes) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(num_classes), 0);
    for (int lab : labels) {
        if (lab < 0 || lab >= num_classes)
            throw std::invalid_argument("class_balance_weights: label index out of range");
        ++counts[static_cast<std::size_t>(lab)];
    }
    Eigen::VectorXd w(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        w[static_cast<Eigen::Index>(i)] = 1.0 / static_cast<double>(counts[static_cast<std::size_t>(labels[i])]);
    return w;
}

}  // namespace aewelm
