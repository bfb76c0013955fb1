#include "aewelm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace aewelm {

namespace {

constexpr double kFloor = 0.01;

const TermRecord& require_term(const TermStats& stats, const std::string& term) {
    const TermRecord* rec = stats.find(term);
    if (!rec) throw std::runtime_error("unknown term: '" + term + "'");
    return *rec;
}

// x -> [0.01, 1]; a degenerate range maps everything to the upper bound
// unless all values are zero (no information at all).
void min_max_normalize(std::vector<double>& values) {
    if (values.empty()) return;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
        std::fill(values.begin(), values.end(), hi == 0.0 ? kFloor : 1.0);
        return;
    }
    for (double& v : values) v = kFloor + (1.0 - kFloor) * (v - lo) / (hi - lo);
}

}  // namespace

double inter_class_entropy(const std::string& term, const TermStats& stats, double theta) {
    if (theta <= 0.0) throw std::invalid_argument("inter_class_entropy: theta must be > 0");
    const TermRecord& rec = require_term(stats, term);
    double e_d = 0.0;
    for (std::int64_t df : rec.df_class) {
        if (df == 0) continue;
        const double p = static_cast<double>(df) / static_cast<double>(rec.df_total);
        e_d -= p * std::log(p);
    }
    return std::log(1.0 / (e_d + theta));
}

double inner_class_entropy(const std::string& term, const TermStats& stats) {
    const TermRecord& rec = require_term(stats, term);
    double max_e_c = 0.0;  // absent classes contribute 0
    for (int cls = 0; cls < stats.num_classes; ++cls) {
        const std::int64_t tf_class = rec.tf_class[static_cast<std::size_t>(cls)];
        if (tf_class == 0) continue;
        double e_c = 0.0;
        for (const auto& [doc, count] : rec.tf_doc) {
            if (stats.doc_class[static_cast<std::size_t>(doc)] != cls || count == 0) continue;
            const double p = static_cast<double>(count) / static_cast<double>(tf_class);
            e_c -= p * std::log(p);
        }
        max_e_c = std::max(max_e_c, e_c);
    }
    return std::exp(max_e_c);
}

EntropyScores compute_entropy_scores(const Corpus& corpus, const TermStats& stats, double theta,
                                     bool count_multiplicity) {
    if (stats.terms.empty()) throw std::runtime_error("compute_entropy_scores: empty term set");
    EntropyScores scores;
    scores.theta = theta;

    std::vector<std::pair<const std::string*, double>> raw;
    raw.reserve(stats.terms.size());
    for (const auto& [term, rec] : stats.terms) {
        (void)rec;
        TermScore ts;
        ts.ed = inter_class_entropy(term, stats, theta);
        ts.ec = inner_class_entropy(term, stats);
        ts.raw_edc = ts.ed * ts.ec;
        scores.terms.emplace(term, ts);
        raw.emplace_back(&term, ts.raw_edc);
    }

    std::vector<double> values;
    values.reserve(raw.size());
    for (const auto& [term, v] : raw) values.push_back(v);
    min_max_normalize(values);
    for (std::size_t i = 0; i < raw.size(); ++i) scores.terms[*raw[i].first].norm_edc = values[i];

    scores.doc_edc = score_documents(corpus, scores, count_multiplicity, &scores.floor_docs);
    return scores;
}

std::vector<double> score_documents(const Corpus& corpus, const EntropyScores& scores,
                                    bool count_multiplicity, std::vector<int>* floor_docs) {
    std::vector<double> raw(corpus.documents.size(), 0.0);
    if (floor_docs) floor_docs->clear();
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const auto& tokens = corpus.documents[d].tokens;
        double sum = 0.0;
        bool any_known = false;
        std::unordered_set<std::string> seen;
        for (const auto& tok : tokens) {
            if (!count_multiplicity && !seen.insert(tok).second) continue;
            if (const TermScore* ts = scores.find(tok)) {
                sum += ts->norm_edc;
                any_known = true;
            }
        }
        raw[d] = sum;
        if (!any_known && floor_docs) floor_docs->push_back(static_cast<int>(d));
    }
    min_max_normalize(raw);
    return raw;
}

}  // namespace aewelm
