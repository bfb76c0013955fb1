#include "aewelm/pipeline.hpp"

#include <memory>
#include <stdexcept>

#include "aewelm/entropy.hpp"

namespace aewelm {

Algo parse_algo(const std::string& tag) {
    if (tag == "elm") return Algo::Elm;
    if (tag == "relm") return Algo::Relm;
    if (tag == "bagging") return Algo::Bagging;
    if (tag == "ada-welm") return Algo::AdaWelm;
    if (tag == "ae1") return Algo::Ae1;
    if (tag == "ae2") return Algo::Ae2;
    throw std::invalid_argument("unknown algorithm tag: '" + tag +
                                "' (expected elm|relm|bagging|ada-welm|ae1|ae2)");
}

std::string algo_name(Algo algo) {
    switch (algo) {
        case Algo::Elm: return "elm";
        case Algo::Relm: return "relm";
        case Algo::Bagging: return "bagging";
        case Algo::AdaWelm: return "ada-welm";
        case Algo::Ae1: return "ae1";
        case Algo::Ae2: return "ae2";
    }
    return "?";
}

namespace {

EnsembleModel wrap_single(ElmModel member, const std::string& variant) {
    EnsembleModel model;
    model.classes = member.classes;
    model.variant = variant;
    model.members.push_back(std::move(member));
    model.alphas.push_back(1.0);
    model.rounds_used = 1;
    return model;
}

BoostConfig boost_config(const PipelineParams& params) {
    BoostConfig cfg;
    cfg.rounds = params.rounds;
    cfg.c = params.c;
    cfg.hidden_nodes = params.hidden_nodes;
    cfg.seed = params.seed;
    return cfg;
}

}  // namespace

EnsembleModel train_pipeline(const Corpus& corpus, const Eigen::MatrixXd& x,
                             const std::vector<int>& labels, const PipelineParams& params,
                             BoostReport* report) {
    const std::vector<std::string>& classes = corpus.categories;
    switch (params.algo) {
        case Algo::Elm:
            return wrap_single(train_elm(x, labels, classes, params.hidden_nodes,
                                         kUnregularizedC, params.seed),
                               "elm");
        case Algo::Relm:
            return wrap_single(
                train_elm(x, labels, classes, params.hidden_nodes, params.c, params.seed), "relm");
        case Algo::Bagging: {
            BoostConfig cfg = boost_config(params);
            return train_bagging_elm(x, labels, classes, params.bags, cfg, report);
        }
        case Algo::AdaWelm: {
            BoostConfig cfg = boost_config(params);
            cfg.variant = BoostVariant::AdaWelm;
            return train_ada_welm(x, labels, classes, cfg, report);
        }
        case Algo::Ae1:
        case Algo::Ae2: {
            const TermStats stats = compute_term_stats(corpus);
            const EntropyScores scores =
                compute_entropy_scores(corpus, stats, params.theta, params.doc_multiplicity);
            Eigen::VectorXd importance(static_cast<Eigen::Index>(scores.doc_edc.size()));
            for (std::size_t i = 0; i < scores.doc_edc.size(); ++i)
                importance[static_cast<Eigen::Index>(i)] = scores.doc_edc[i];
            BoostConfig cfg = boost_config(params);
            cfg.variant = params.algo == Algo::Ae1 ? BoostVariant::Ae1 : BoostVariant::Ae2;
            return train_aex_welm(x, labels, classes, importance, cfg, report);
        }
    }
    throw std::logic_error("train_pipeline: unhandled algorithm");
}

TrainerFn make_pipeline_trainer(const PipelineParams& params) {
    return [params](const Corpus& train_corpus, const Eigen::MatrixXd& x_train,
                    const std::vector<int>& train_labels) -> ModelFn {
        auto model = std::make_shared<EnsembleModel>(
            train_pipeline(train_corpus, x_train, train_labels, params));
        return [model](const Eigen::MatrixXd& x) { return ensemble_predict(*model, x); };
    };
}

}  // namespace aewelm
