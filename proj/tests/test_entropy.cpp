#include <cmath>

#include "aewelm/entropy.hpp"
#include "aewelm/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aewelm;

namespace {

Corpus toy_corpus() {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {"x", "x", "y"}},
                        {"d2", "A", {"x"}},
                        {"d3", "B", {"y", "y"}}};
    return corpus;
}

Corpus random_corpus(Rng& rng, int max_vocab = 6) {
    Corpus corpus;
    const int m = 2 + int(rng.uniform_int(3));
    for (int c = 0; c < m; ++c) corpus.categories.push_back("c" + std::to_string(c));
    const int n = m + int(rng.uniform_int(10));
    for (int d = 0; d < n; ++d) {
        Document doc;
        doc.id = "d" + std::to_string(d);
        doc.label = corpus.categories[size_t(d) % size_t(m)];
        const int len = 1 + int(rng.uniform_int(10));
        for (int t = 0; t < len; ++t)
            doc.tokens.push_back(std::string(1, char('a' + rng.uniform_int(std::uint64_t(max_vocab)))));
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace

TEST_SUITE_BEGIN("entropy");

TEST_CASE("toy corpus matches the brute-force oracle and frozen values") {
    const Corpus corpus = toy_corpus();
    const TermStats stats = compute_term_stats(corpus);
    const double theta = 0.05;

    const double ed_x = inter_class_entropy("x", stats, theta);
    const double ec_x = inner_class_entropy("x", stats);
    CHECK(ed_x == doctest::Approx(oracles::ed_oracle(corpus, "x", theta)).epsilon(1e-12));
    CHECK(ec_x == doctest::Approx(oracles::ec_oracle(corpus, "x")).epsilon(1e-12));

    // x appears only in class A: E_d = 0, ED = ln(1/theta) = ln 20
    CHECK(ed_x == doctest::Approx(std::log(20.0)).epsilon(1e-12));
    // occurrences split 2:1 over d1, d2: EC = 3 * 2^(-2/3)
    CHECK(ec_x == doctest::Approx(3.0 * std::pow(2.0, -2.0 / 3.0)).epsilon(1e-12));
    CHECK(ed_x * ec_x == doctest::Approx(5.66157918).epsilon(1e-8));

    const double ed_y = inter_class_entropy("y", stats, theta);
    const double ec_y = inner_class_entropy("y", stats);
    CHECK(ed_y == doctest::Approx(oracles::ed_oracle(corpus, "y", theta)).epsilon(1e-12));
    CHECK(ec_y == doctest::Approx(oracles::ec_oracle(corpus, "y")).epsilon(1e-12));
    // y is uniform over the two classes: E_d = ln 2, ED = ln(1/(ln 2 + 0.05))
    CHECK(ed_y == doctest::Approx(std::log(1.0 / (std::log(2.0) + 0.05))).epsilon(1e-12));
    CHECK(ed_y > 0.0);  // ln 2 + 0.05 < 1, so the log is positive
    // single occurrence pattern per class: EC = 1
    CHECK(ec_y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("term uniform over q documents of one class has EC = q") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    for (int i = 0; i < 4; ++i)
        corpus.documents.push_back({"a" + std::to_string(i), "A", {"w", "pad"}});
    corpus.documents.push_back({"b0", "B", {"pad"}});
    const TermStats stats = compute_term_stats(corpus);
    CHECK(inner_class_entropy("w", stats) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("single-document term has EC = 1") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {"solo", "solo", "solo"}}, {"d2", "B", {"pad"}}};
    const TermStats stats = compute_term_stats(corpus);
    CHECK(inner_class_entropy("solo", stats) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy errors") {
    const TermStats stats = compute_term_stats(toy_corpus());
    CHECK_THROWS_AS(inter_class_entropy("nosuch", stats, 0.05), std::runtime_error);
    CHECK_THROWS_AS(inter_class_entropy("x", stats, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(inner_class_entropy("nosuch", stats), std::runtime_error);
}

TEST_CASE("implementation matches the oracle on random corpora") {
    Rng rng(4242);
    for (int iter = 0; iter < 30; ++iter) {
        const Corpus corpus = random_corpus(rng);
        const TermStats stats = compute_term_stats(corpus);
        for (const auto& [term, rec] : stats.terms) {
            CAPTURE(term);
            CHECK(inter_class_entropy(term, stats, 0.05) ==
                  doctest::Approx(oracles::ed_oracle(corpus, term, 0.05)).epsilon(1e-12));
            CHECK(inner_class_entropy(term, stats) ==
                  doctest::Approx(oracles::ec_oracle(corpus, term)).epsilon(1e-12));

            // E_d <= ln m, EC >= 1
            const double e_d = oracles::e_d_raw_oracle(corpus, term);
            CHECK(e_d <= std::log(double(corpus.categories.size())) + 1e-12);
            CHECK(inner_class_entropy(term, stats) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("ED is maximal exactly for single-class terms") {
    const Corpus corpus = toy_corpus();
    const TermStats stats = compute_term_stats(corpus);
    const double theta = 0.05;
    CHECK(inter_class_entropy("x", stats, theta) ==
          doctest::Approx(std::log(1.0 / theta)).epsilon(1e-12));
    CHECK(inter_class_entropy("y", stats, theta) < std::log(1.0 / theta));
}

TEST_CASE("normalization maps into (0, 1] and preserves ranking") {
    Rng rng(777);
    for (int iter = 0; iter < 20; ++iter) {
        const Corpus corpus = random_corpus(rng);
        const TermStats stats = compute_term_stats(corpus);
        const EntropyScores scores = compute_entropy_scores(corpus, stats, 0.05);
        for (const auto& [ta, sa] : scores.terms) {
            CHECK(sa.norm_edc > 0.0);
            CHECK(sa.norm_edc <= 1.0);
            for (const auto& [tb, sb] : scores.terms) {
                if (sa.raw_edc < sb.raw_edc) CHECK(sa.norm_edc <= sb.norm_edc);
                if (sa.raw_edc == sb.raw_edc) CHECK(sa.norm_edc == sb.norm_edc);
            }
        }
    }
}

TEST_CASE("single-term corpus normalizes to 1") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {"only"}}, {"d2", "B", {"only"}}};
    const TermStats stats = compute_term_stats(corpus);
    const EntropyScores scores = compute_entropy_scores(corpus, stats, 0.05);
    CHECK(scores.find("only")->norm_edc == doctest::Approx(1.0));
}

TEST_CASE("document importance follows the distinct-term sum") {
    const Corpus corpus = toy_corpus();
    const TermStats stats = compute_term_stats(corpus);
    const EntropyScores scores = compute_entropy_scores(corpus, stats, 0.05);

    const double nx = scores.find("x")->norm_edc;
    const double ny = scores.find("y")->norm_edc;
    // raw sums: d1 = nx + ny (distinct terms, multiplicity ignored), d2 = nx, d3 = ny
    const std::vector<double> raw = {nx + ny, nx, ny};
    const double lo = std::min({raw[0], raw[1], raw[2]});
    const double hi = std::max({raw[0], raw[1], raw[2]});
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double expected = 0.01 + 0.99 * (raw[i] - lo) / (hi - lo);
        CHECK(scores.doc_edc[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("document importance ignores multiplicity and order by default") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {"u", "v", "u", "u"}},
                        {"d2", "A", {"v", "u"}},
                        {"d3", "B", {"w", "w"}}};
    const TermStats stats = compute_term_stats(corpus);
    const EntropyScores scores = compute_entropy_scores(corpus, stats, 0.05);
    CHECK(scores.doc_edc[0] == doctest::Approx(scores.doc_edc[1]).epsilon(1e-12));
}

TEST_CASE("identical documents all get importance 1") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {"u", "v"}}, {"d2", "A", {"u", "v"}}, {"d3", "B", {"u", "v"}}};
    const TermStats stats = compute_term_stats(corpus);
    const EntropyScores scores = compute_entropy_scores(corpus, stats, 0.05);
    for (double v : scores.doc_edc) CHECK(v == doctest::Approx(1.0));
    CHECK(scores.floor_docs.empty());
}

TEST_CASE("documents with no known terms fall to the floor and are flagged") {
    const Corpus train = toy_corpus();
    const TermStats stats = compute_term_stats(train);
    const EntropyScores scores = compute_entropy_scores(train, stats, 0.05);

    Corpus test;
    test.categories = train.categories;
    test.documents = {{"t1", "A", {"x", "y"}}, {"t2", "B", {"unseen", "tokens"}}};
    std::vector<int> floors;
    const std::vector<double> imp = score_documents(test, scores, false, &floors);
    CHECK(floors == std::vector<int>{1});
    CHECK(imp[1] == doctest::Approx(0.01));
    CHECK(imp[0] == doctest::Approx(1.0));
}

TEST_CASE("empty term set is rejected") {
    Corpus corpus;
    corpus.categories = {"A", "B"};
    corpus.documents = {{"d1", "A", {}}, {"d2", "B", {}}};
    const TermStats stats = compute_term_stats(corpus);
    CHECK_THROWS_AS(compute_entropy_scores(corpus, stats, 0.05), std::runtime_error);
}

TEST_SUITE_END();
