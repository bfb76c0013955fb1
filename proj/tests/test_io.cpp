#include <sstream>

#include "aewelm/model_io.hpp"
#include "aewelm/num_format.hpp"
#include "aewelm/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aewelm;

TEST_SUITE_BEGIN("io");

TEST_CASE("format_double round-trips exactly") {
    Rng rng(2718);
    for (int iter = 0; iter < 500; ++iter) {
        double v = rng.normal() * std::pow(10.0, rng.uniform(-30.0, 30.0));
        if (iter % 7 == 0) v = -v;
        if (iter == 0) v = 0.0;
        if (iter == 1) v = 0.1;
        if (iter == 2) v = 1.0 / 3.0;
        const auto parsed = parse_double(format_double(v));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == v);
    }
    CHECK(!parse_double("1.5x").has_value());
    CHECK(!parse_double("").has_value());
}

TEST_CASE("elm model round-trips bit-exactly") {
    const oracles::Blobs blobs = oracles::gaussian_blobs({8, 8, 8}, 3, 2.0, 0.8, 77);
    const ElmModel model = train_elm(blobs.x, blobs.y, blobs.classes, 6, 0.25, 99);

    std::stringstream buffer;
    save_elm_model(buffer, model);
    const ElmModel loaded = load_elm_model(buffer);

    CHECK(loaded.classes == model.classes);
    CHECK(loaded.c == model.c);
    CHECK(loaded.hidden.seed == model.hidden.seed);
    CHECK((loaded.hidden.weights.array() == model.hidden.weights.array()).all());
    CHECK((loaded.hidden.biases.array() == model.hidden.biases.array()).all());
    CHECK((loaded.beta.array() == model.beta.array()).all());
    CHECK(predict_labels(loaded, blobs.x) == predict_labels(model, blobs.x));
}

TEST_CASE("ensemble round-trips bit-exactly") {
    const oracles::Blobs blobs = oracles::gaussian_blobs({20, 20, 20}, 2, 1.2, 1.0, 31);
    BoostConfig cfg;
    cfg.rounds = 3;
    cfg.hidden_nodes = 4;
    cfg.seed = 17;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(blobs.x.rows());
    const EnsembleModel model = train_aex_welm(blobs.x, blobs.y, blobs.classes, ones, cfg);

    std::stringstream buffer;
    save_ensemble(buffer, model);
    const EnsembleModel loaded = load_ensemble(buffer);

    CHECK(loaded.variant == model.variant);
    CHECK(loaded.classes == model.classes);
    CHECK(loaded.rounds_used == model.rounds_used);
    REQUIRE(loaded.members.size() == model.members.size());
    for (std::size_t t = 0; t < model.members.size(); ++t) {
        CHECK(loaded.alphas[t] == model.alphas[t]);
        CHECK((loaded.members[t].beta.array() == model.members[t].beta.array()).all());
    }
    CHECK(ensemble_predict(loaded, blobs.x) == ensemble_predict(model, blobs.x));
}

TEST_CASE("version tag mismatches fail fast naming both tags") {
    std::stringstream buffer("aewelm-model v99\n");
    try {
        load_elm_model(buffer);
        FAIL("expected a version error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("aewelm-model v99") != std::string::npos);
        CHECK(msg.find("aewelm-model v1") != std::string::npos);
    }
}

TEST_CASE("corpus file round-trips") {
    Corpus corpus;
    corpus.categories = {"alpha", "beta"};
    corpus.documents = {{"alpha/1", "alpha", {"some", "token"}},
                        {"beta/1", "beta", {"other"}},
                        {"probe", "", {"unlabeled", "doc"}}};
    std::stringstream buffer;
    save_corpus_file(buffer, corpus);
    const Corpus loaded = load_corpus_file(buffer);
    CHECK(loaded.categories == corpus.categories);
    REQUIRE(loaded.documents.size() == corpus.documents.size());
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        CHECK(loaded.documents[i].id == corpus.documents[i].id);
        CHECK(loaded.documents[i].label == corpus.documents[i].label);
        CHECK(loaded.documents[i].tokens == corpus.documents[i].tokens);
    }
}

TEST_CASE("corpus file writes are byte-stable") {
    Corpus corpus;
    corpus.categories = {"a"};
    corpus.documents = {{"a/1", "a", {"x", "y"}}};
    std::stringstream first, second;
    save_corpus_file(first, corpus);
    save_corpus_file(second, corpus);
    CHECK(first.str() == second.str());
}

TEST_SUITE_END();
