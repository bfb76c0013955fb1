#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "aewelm/corpus.hpp"

namespace aewelm {

struct EmbeddingTable {
    int dim = 0;
    std::unordered_map<std::string, Eigen::VectorXd> entries;
    std::size_t duplicate_rows = 0;  // rows dropped under first-occurrence-wins

    const Eigen::VectorXd* find(const std::string& word) const {
        auto it = entries.find(word);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// Text format: header "<vocab_count> <dim>", then "<word> <v1> ... <v_dim>"
// per line. Duplicate words keep the first occurrence.
EmbeddingTable load_embeddings(const std::string& path);

enum class OovPolicy {
    Skip,  // mean over in-vocabulary tokens only
    Zero,  // out-of-vocabulary tokens contribute zero vectors, divisor counts all tokens
};

struct DocVector {
    std::string doc_id;
    Eigen::VectorXd values;
    std::size_t covered = 0;  // tokens found in the table
    std::size_t total = 0;    // all tokens
};

// Token-average document vector. A document with zero covered tokens yields
// the zero vector (covered == 0 is the caller's degeneracy flag).
DocVector doc_vector(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                     OovPolicy policy);

struct CorpusVectors {
    Eigen::MatrixXd x;                 // n x dim, rows in corpus document order
    std::vector<std::string> doc_ids;
    std::vector<std::string> labels;   // may contain empty strings (unlabeled)
    std::vector<int> fully_oov_docs;   // row indices with covered == 0
};

// Throws when the fully-OOV fraction exceeds max_oov_fraction.
CorpusVectors vectorize_corpus(const Corpus& corpus, const EmbeddingTable& table, OovPolicy policy,
                               double max_oov_fraction = 0.10);

// Seeded fallback table for tests: uniform entries on [-0.5/dim, 0.5/dim].
EmbeddingTable random_embeddings(const std::vector<std::string>& vocabulary, int dim,
                                 std::uint64_t seed);

}  // namespace aewelm
