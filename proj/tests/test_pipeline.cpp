#include "aewelm/embed.hpp"
#include "aewelm/entropy.hpp"
#include "aewelm/pipeline.hpp"
#include "aewelm/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aewelm;

namespace {

struct TextFixture {
    Corpus corpus;
    EmbeddingTable table;
    Eigen::MatrixXd x;
    std::vector<int> labels;
};

// Two topics with distinct vocabularies plus shared filler. Topic words get
// embeddings clustered around a per-topic direction so documents separate.
TextFixture make_text_fixture(std::uint64_t seed, int docs_per_class = 20) {
    TextFixture fix;
    fix.corpus.categories = {"one", "two"};
    const int dim = 8;
    std::vector<std::string> vocab;
    for (int i = 0; i < 10; ++i) vocab.push_back("one" + std::to_string(i));
    for (int i = 0; i < 10; ++i) vocab.push_back("two" + std::to_string(i));
    for (int i = 0; i < 6; ++i) vocab.push_back("shared" + std::to_string(i));

    Rng rng(derive_seed(seed, "text-fixture", 0));
    fix.table.dim = dim;
    for (std::size_t w = 0; w < vocab.size(); ++w) {
        Eigen::VectorXd vec(dim);
        for (int j = 0; j < dim; ++j) vec(j) = 0.8 * rng.normal();
        if (w < 10) vec(0) += 1.0;
        else if (w < 20) vec(1) += 1.0;
        fix.table.entries.emplace(vocab[w], std::move(vec));
    }

    for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < docs_per_class; ++d) {
            Document doc;
            doc.id = fix.corpus.categories[size_t(c)] + "/" + std::to_string(d);
            doc.label = fix.corpus.categories[size_t(c)];
            const int len = 8 + int(rng.uniform_int(8));
            for (int t = 0; t < len; ++t) {
                const bool topical = rng.uniform() < 0.55;
                if (topical)
                    doc.tokens.push_back(vocab[size_t(c) * 10 + rng.uniform_int(10)]);
                else
                    doc.tokens.push_back(vocab[20 + rng.uniform_int(6)]);
            }
            fix.corpus.documents.push_back(std::move(doc));
        }
    }
    fix.x = vectorize_corpus(fix.corpus, fix.table, OovPolicy::Skip).x;
    fix.labels = fix.corpus.label_indices();
    return fix;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("algo tags round-trip") {
    for (const char* tag : {"elm", "relm", "bagging", "ada-welm", "ae1", "ae2"})
        CHECK(algo_name(parse_algo(tag)) == tag);
    CHECK_THROWS_AS(parse_algo("boost3000"), std::invalid_argument);
}

TEST_CASE("train_pipeline dispatches every algorithm") {
    const TextFixture fix = make_text_fixture(99);
    PipelineParams params;
    params.hidden_nodes = 8;
    params.c = 1.0;
    params.rounds = 3;
    params.bags = 3;
    params.seed = 5;

    for (Algo algo : {Algo::Elm, Algo::Relm, Algo::Bagging, Algo::AdaWelm, Algo::Ae1, Algo::Ae2}) {
        params.algo = algo;
        CAPTURE(algo_name(algo));
        const EnsembleModel model = train_pipeline(fix.corpus, fix.x, fix.labels, params);
        CHECK(!model.members.empty());
        CHECK(model.classes == fix.corpus.categories);
        const std::vector<int> pred = ensemble_predict(model, fix.x);
        CHECK(oracles::accuracy(fix.labels, pred) > 0.5);
        if (algo == Algo::Elm || algo == Algo::Relm) {
            CHECK(model.members.size() == 1);
            CHECK(model.variant == algo_name(algo));
        }
    }
}

TEST_CASE("ae1 pipeline uses entropy importance fitted on the training corpus") {
    const TextFixture fix = make_text_fixture(123);
    PipelineParams params;
    params.algo = Algo::Ae1;
    params.hidden_nodes = 8;
    params.rounds = 3;
    params.seed = 21;

    BoostReport report;
    const EnsembleModel model = train_pipeline(fix.corpus, fix.x, fix.labels, params, &report);
    CHECK(model.variant == "ae1");
    CHECK(!report.rounds.empty());

    // same importance as computing the scores by hand
    const TermStats stats = compute_term_stats(fix.corpus);
    const EntropyScores scores = compute_entropy_scores(fix.corpus, stats, params.theta);
    Eigen::VectorXd importance(Eigen::Index(scores.doc_edc.size()));
    for (std::size_t i = 0; i < scores.doc_edc.size(); ++i)
        importance[Eigen::Index(i)] = scores.doc_edc[i];
    BoostConfig cfg;
    cfg.rounds = params.rounds;
    cfg.c = params.c;
    cfg.hidden_nodes = params.hidden_nodes;
    cfg.seed = params.seed;
    cfg.variant = BoostVariant::Ae1;
    const EnsembleModel expected =
        train_aex_welm(fix.x, fix.labels, fix.corpus.categories, importance, cfg);
    REQUIRE(expected.members.size() == model.members.size());
    for (std::size_t t = 0; t < model.members.size(); ++t)
        CHECK((model.members[t].beta.array() == expected.members[t].beta.array()).all());
}

TEST_CASE("pipeline trainer works under cross-validation without leakage") {
    const TextFixture fix = make_text_fixture(4321, 15);
    PipelineParams params;
    params.algo = Algo::Ae1;
    params.hidden_nodes = 6;
    params.rounds = 2;
    params.seed = 77;

    const CvResult cv = cross_validate(fix.corpus, fix.x, 3, 11, make_pipeline_trainer(params));
    CHECK(cv.fold_reports.size() == 3);
    for (const auto& report : cv.fold_reports) CHECK(report.n == 10);
    CHECK(cv.mean_micro_f1 > 0.4);  // learnable topics, should beat chance comfortably
}

TEST_SUITE_END();
