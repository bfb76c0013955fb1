#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace aewelm {

struct Document {
    std::string id;
    std::string label;  // empty = unlabeled (prediction input)
    std::vector<std::string> tokens;
};

// Category order is fixed at load time and persisted; it defines the one-hot
// column order everywhere downstream.
struct Corpus {
    std::vector<Document> documents;
    std::vector<std::string> categories;

    int class_index(const std::string& label) const;  // -1 if unknown
    std::vector<int> label_indices() const;           // throws if any document is unlabeled
    Corpus subset(const std::vector<int>& indices) const;
    std::size_t size() const { return documents.size(); }
};

struct PreprocessOptions {
    std::unordered_set<std::string> stopwords;
    bool stem = true;
    std::size_t min_token_length = 2;
};

// Lowercase, split on non-alphabetic bytes, drop short tokens and stopwords,
// then Porter-stem. Stopword/length filters run again after stemming so the
// output is a fixed point of the operation.
std::vector<std::string> preprocess(const std::string& raw, const PreprocessOptions& opts);

// One token per line, UTF-8; '#'-prefixed lines and blanks ignored.
std::unordered_set<std::string> load_stopwords(const std::string& path);

enum class CorpusFormat { DirPerClass, Tsv };

// dir-per-class: <root>/<category>/<docid>.txt; tsv: "label<TAB>raw text".
// Document order is deterministic (lexicographic path / line number) and
// categories come out sorted lexicographically.
Corpus load_corpus(const std::string& path, CorpusFormat format, const PreprocessOptions& opts);

// Prediction input: one raw document per line, no labels.
Corpus load_unlabeled_lines(const std::string& path, const PreprocessOptions& opts);

struct TermRecord {
    std::int64_t df_total = 0;                         // documents containing the term
    std::vector<std::int64_t> df_class;                // per-class document counts
    std::vector<std::int64_t> tf_class;                // per-class total occurrences
    std::vector<std::pair<int, std::int64_t>> tf_doc;  // (doc index, occurrences), doc order
};

struct TermStats {
    int num_classes = 0;
    std::vector<int> doc_class;  // class index per document
    std::unordered_map<std::string, TermRecord> terms;

    const TermRecord* find(const std::string& term) const;
    std::int64_t df_total(const std::string& term) const;
    std::int64_t df_in_class(const std::string& term, int cls) const;
    std::int64_t tf_in_class(const std::string& term, int cls) const;
    std::int64_t tf_in_doc(const std::string& term, int doc_index) const;
};

// Requires a fully labeled corpus. Satisfies DF_total = sum over classes of
// DF_class exactly (integer identity).
TermStats compute_term_stats(const Corpus& corpus);

struct KFoldSplit {
    std::vector<std::vector<int>> folds;  // validation indices, ascending within a fold
    std::vector<int> train_indices(int fold) const;
};

// Stratified by label, deterministic for a fixed seed. Requires 2 <= k <= n
// and a fully labeled corpus.
KFoldSplit kfold_split(const Corpus& corpus, int k, std::uint64_t seed);

}  // namespace aewelm
