#pragma once

#include <cstdint>
#include <string>

#include "aewelm/ensemble.hpp"
#include "aewelm/eval.hpp"

namespace aewelm {

enum class Algo { Elm, Relm, Bagging, AdaWelm, Ae1, Ae2 };

Algo parse_algo(const std::string& tag);
std::string algo_name(Algo algo);

struct PipelineParams {
    Algo algo = Algo::Ae1;
    double c = 1.0;
    int hidden_nodes = 100;
    int rounds = 20;   // boosting rounds T
    int bags = 20;     // bagging ensemble size
    double theta = 0.05;
    std::uint64_t seed = 0;
    bool doc_multiplicity = false;  // token-multiplicity variant of document EDC
};

// Trains the configured algorithm on a labeled corpus whose feature rows are
// x. For ae1/ae2 the entropy scores are fitted on exactly these documents.
// elm/relm train a single model wrapped as a one-member ensemble.
EnsembleModel train_pipeline(const Corpus& corpus, const Eigen::MatrixXd& x,
                             const std::vector<int>& labels, const PipelineParams& params,
                             BoostReport* report = nullptr);

// Cross-validation adapter; entropy fitting stays inside each fold.
TrainerFn make_pipeline_trainer(const PipelineParams& params);

// The plain-ELM baseline has no ridge: implemented as the C -> infinity
// limit of the regularized solve.
inline constexpr double kUnregularizedC = 1e12;

}  // namespace aewelm
