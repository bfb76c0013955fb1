#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aewelm/corpus.hpp"

namespace aewelm {

struct ConfusionMatrix {
    // rows = true class, columns = predicted class
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;

    std::int64_t total() const { return counts.sum(); }
    int num_classes() const { return static_cast<int>(counts.rows()); }
};

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& predicted,
                          int num_classes);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool flagged = false;  // some denominator was zero
};

struct EvalReport {
    std::vector<ClassMetrics> per_class;
    double micro_precision = 0.0;  // pooled counts; equals accuracy for single-label data
    double micro_recall = 0.0;
    double micro_f1 = 0.0;
    double macro_precision = 0.0;  // unweighted means over classes
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::int64_t n = 0;
};

EvalReport metrics(const ConfusionMatrix& cm);

// Returns a predictor over feature rows.
using ModelFn = std::function<std::vector<int>(const Eigen::MatrixXd&)>;
// Builds a predictor from a training sub-corpus and its feature rows; any
// corpus-derived statistics (entropy scores etc.) must be fitted inside, on
// the training split only.
using TrainerFn = std::function<ModelFn(const Corpus& train_corpus, const Eigen::MatrixXd& x_train,
                                        const std::vector<int>& train_labels)>;

struct CvResult {
    std::vector<EvalReport> fold_reports;
    double mean_micro_f1 = 0.0;
    double std_micro_f1 = 0.0;
    double mean_macro_f1 = 0.0;
    double std_macro_f1 = 0.0;
};

// Stratified k-fold cross-validation; x_all rows align with corpus documents.
CvResult cross_validate(const Corpus& corpus, const Eigen::MatrixXd& x_all, int k,
                        std::uint64_t seed, const TrainerFn& trainer);

struct GridCell {
    double c = 0.0;
    int hidden_nodes = 0;
    std::vector<double> fold_micro;  // one entry per fold x repeat
    std::vector<double> fold_macro;
    double mean_micro_f1 = 0.0;
    double mean_macro_f1 = 0.0;
};

struct GridResult {
    std::vector<GridCell> cells;
    std::size_t best = 0;  // max mean micro-F1; ties -> larger c, then smaller L
};

// Trainer factory per (c, L, seed); the fold split is fixed across cells.
using CellTrainerFactory = std::function<TrainerFn(double c, int hidden_nodes, std::uint64_t seed)>;

GridResult grid_search(const Corpus& corpus, const Eigen::MatrixXd& x_all,
                       const std::vector<double>& c_grid, const std::vector<int>& l_grid, int k,
                       std::uint64_t seed, int repeats, const CellTrainerFactory& factory);

}  // namespace aewelm
