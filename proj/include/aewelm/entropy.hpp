#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "aewelm/corpus.hpp"

namespace aewelm {

struct TermScore {
    double ed = 0.0;        // inter-class score ln(1/(E_d + theta))
    double ec = 1.0;        // inner-class score e^{max_j E_c}, always >= 1
    double raw_edc = 0.0;   // ed * ec, may be negative
    double norm_edc = 1.0;  // min-max mapped into [0.01, 1]
};

struct EntropyScores {
    double theta = 0.05;
    std::unordered_map<std::string, TermScore> terms;

    // Document importance for the corpus the scores were fitted on,
    // min-max mapped into [0.01, 1], aligned with document order.
    std::vector<double> doc_edc;
    std::vector<int> floor_docs;  // documents with no known terms

    const TermScore* find(const std::string& term) const {
        auto it = terms.find(term);
        return it == terms.end() ? nullptr : &it->second;
    }
};

// ED(t) = ln(1/(E_d(t) + theta)) where E_d is the entropy of the term's
// document-frequency distribution across classes. Zero-count classes
// contribute nothing (x ln x -> 0). Throws on unknown term or theta <= 0.
double inter_class_entropy(const std::string& term, const TermStats& stats, double theta);

// EC(t) = e^{max over classes of E_c(t, c)} where E_c is the entropy of the
// term's occurrence distribution across the class's documents. Classes
// without the term contribute 0 to the max, so EC >= 1. Throws on unknown term.
double inner_class_entropy(const std::string& term, const TermStats& stats);

// Fits per-term scores on the given corpus (raw EDC = ED * EC, then min-max
// normalization onto [0.01, 1]) and scores its documents. When
// count_multiplicity is false a document's raw importance sums normalized EDC
// over its distinct terms; true switches to token multiplicity.
EntropyScores compute_entropy_scores(const Corpus& corpus, const TermStats& stats, double theta,
                                     bool count_multiplicity = false);

// Document importance for any corpus using fitted term scores. Terms unseen
// at fit time contribute 0; documents with no known terms are reported in
// floor_docs and end up at the 0.01 floor.
std::vector<double> score_documents(const Corpus& corpus, const EntropyScores& scores,
                                    bool count_multiplicity = false,
                                    std::vector<int>* floor_docs = nullptr);

}  // namespace aewelm
