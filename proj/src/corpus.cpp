#include "aewelm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aewelm/porter.hpp"
#include "aewelm/rng.hpp"

namespace fs = std::filesystem;

namespace aewelm {

int Corpus::class_index(const std::string& label) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == label) return static_cast<int>(i);
    return -1;
}

std::vector<int> Corpus::label_indices() const {
    std::vector<int> out;
    out.reserve(documents.size());
    for (const auto& doc : documents) {
        if (doc.label.empty())
            throw std::runtime_error("unlabeled document '" + doc.id + "' in labeled corpus");
        const int idx = class_index(doc.label);
        if (idx < 0)
            throw std::runtime_error("document '" + doc.id + "' has label '" + doc.label +
                                     "' not in the category list");
        out.push_back(idx);
    }
    return out;
}

Corpus Corpus::subset(const std::vector<int>& indices) const {
    Corpus out;
    out.categories = categories;
    out.documents.reserve(indices.size());
    for (int i : indices) out.documents.push_back(documents.at(static_cast<std::size_t>(i)));
    return out;
}

std::vector<std::string> preprocess(const std::string& raw, const PreprocessOptions& opts) {
    std::vector<std::string> tokens;
    std::string current;
    auto keep = [&](const std::string& tok) {
        return tok.size() >= opts.min_token_length && !opts.stopwords.count(tok);
    };
    auto flush = [&]() {
        if (keep(current)) {
            std::string tok = opts.stem ? porter_stem(current) : current;
            if (keep(tok)) tokens.push_back(std::move(tok));
        }
        current.clear();
    };
    for (char ch : raw) {
        const unsigned char uc = static_cast<unsigned char>(ch);
        if (uc < 0x80 && std::isalpha(uc)) {
            current.push_back(static_cast<char>(std::tolower(uc)));
        } else {
            flush();  // any non-ASCII-alphabetic byte acts as a separator
        }
    }
    flush();
    return tokens;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.insert(line);
    }
    return words;
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_id(const std::string& id) {
    for (char c : id)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw std::runtime_error("document id contains whitespace: '" + id + "'");
}

Corpus load_dir_per_class(const std::string& root, const PreprocessOptions& opts) {
    if (!fs::exists(root)) throw std::runtime_error("corpus path does not exist: " + root);
    if (!fs::is_directory(root)) throw std::runtime_error("corpus path is not a directory: " + root);

    std::vector<std::string> categories;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) categories.push_back(entry.path().filename().string());
    std::sort(categories.begin(), categories.end());
    if (categories.empty())
        throw std::runtime_error("no category subdirectories under: " + root);

    Corpus corpus;
    corpus.categories = categories;
    std::set<std::string> seen_ids;
    for (const auto& category : categories) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(fs::path(root) / category))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw std::runtime_error("empty category directory: " + category);
        for (const auto& file : files) {
            Document doc;
            doc.id = category + "/" + file.stem().string();
            doc.label = category;
            check_id(doc.id);
            if (!seen_ids.insert(doc.id).second)
                throw std::runtime_error("duplicate document id: " + doc.id);
            doc.tokens = preprocess(read_file(file), opts);
            corpus.documents.push_back(std::move(doc));
        }
    }
    return corpus;
}

Corpus load_tsv(const std::string& path, const PreprocessOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("corpus path does not exist: " + path);

    Corpus corpus;
    std::set<std::string> categories;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": missing TAB between label and text");
        std::string label = line.substr(0, tab);
        if (label.empty())
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": empty label");
        Document doc;
        doc.id = "line" + std::to_string(line_no);
        doc.label = label;
        doc.tokens = preprocess(line.substr(tab + 1), opts);
        corpus.documents.push_back(std::move(doc));
        categories.insert(std::move(label));
    }
    if (corpus.documents.empty()) throw std::runtime_error("empty corpus file: " + path);
    corpus.categories.assign(categories.begin(), categories.end());
    return corpus;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format, const PreprocessOptions& opts) {
    switch (format) {
        case CorpusFormat::DirPerClass: return load_dir_per_class(path, opts);
        case CorpusFormat::Tsv: return load_tsv(path, opts);
    }
    throw std::logic_error("unknown corpus format");
}

Corpus load_unlabeled_lines(const std::string& path, const PreprocessOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("input path does not exist: " + path);
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Document doc;
        doc.id = "line" + std::to_string(line_no);
        doc.tokens = preprocess(line, opts);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

const TermRecord* TermStats::find(const std::string& term) const {
    auto it = terms.find(term);
    return it == terms.end() ? nullptr : &it->second;
}

std::int64_t TermStats::df_total(const std::string& term) const {
    const TermRecord* rec = find(term);
    return rec ? rec->df_total : 0;
}

std::int64_t TermStats::df_in_class(const std::string& term, int cls) const {
    const TermRecord* rec = find(term);
    return rec ? rec->df_class.at(static_cast<std::size_t>(cls)) : 0;
}

std::int64_t TermStats::tf_in_class(const std::string& term, int cls) const {
    const TermRecord* rec = find(term);
    return rec ? rec->tf_class.at(static_cast<std::size_t>(cls)) : 0;
}

std::int64_t TermStats::tf_in_doc(const std::string& term, int doc_index) const {
    const TermRecord* rec = find(term);
    if (!rec) return 0;
    for (const auto& [doc, count] : rec->tf_doc)
        if (doc == doc_index) return count;
    return 0;
}

TermStats compute_term_stats(const Corpus& corpus) {
    TermStats stats;
    stats.num_classes = static_cast<int>(corpus.categories.size());
    stats.doc_class = corpus.label_indices();

    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const int cls = stats.doc_class[d];
        std::unordered_map<std::string, std::int64_t> counts;
        for (const auto& tok : corpus.documents[d].tokens) ++counts[tok];

        // iterate the document's distinct terms in token order for
        // deterministic tf_doc layout
        std::unordered_set<std::string> done;
        for (const auto& tok : corpus.documents[d].tokens) {
            if (!done.insert(tok).second) continue;
            TermRecord& rec = stats.terms[tok];
            if (rec.df_class.empty()) {
                rec.df_class.assign(static_cast<std::size_t>(stats.num_classes), 0);
                rec.tf_class.assign(static_cast<std::size_t>(stats.num_classes), 0);
            }
            const std::int64_t count = counts[tok];
            rec.df_total += 1;
            rec.df_class[static_cast<std::size_t>(cls)] += 1;
            rec.tf_class[static_cast<std::size_t>(cls)] += count;
            rec.tf_doc.emplace_back(static_cast<int>(d), count);
        }
    }
    return stats;
}

std::vector<int> KFoldSplit::train_indices(int fold) const {
    std::vector<int> out;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        if (static_cast<int>(f) == fold) continue;
        out.insert(out.end(), folds[f].begin(), folds[f].end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

KFoldSplit kfold_split(const Corpus& corpus, int k, std::uint64_t seed) {
    const int n = static_cast<int>(corpus.documents.size());
    if (k < 2) throw std::invalid_argument("kfold_split: k must be >= 2");
    if (k > n) throw std::invalid_argument("kfold_split: k (" + std::to_string(k) +
                                           ") exceeds corpus size (" + std::to_string(n) + ")");
    const std::vector<int> labels = corpus.label_indices();

    std::vector<std::vector<int>> by_class(corpus.categories.size());
    for (int i = 0; i < n; ++i) by_class[static_cast<std::size_t>(labels[i])].push_back(i);

    KFoldSplit split;
    split.folds.assign(static_cast<std::size_t>(k), {});
    // the dealing cursor carries over between classes so fold sizes stay
    // within one of each other and no fold is left empty
    std::size_t cursor = 0;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& idx = by_class[c];
        Rng rng(derive_seed(seed, "kfold", c));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.uniform_int(i)]);
        for (std::size_t i = 0; i < idx.size(); ++i)
            split.folds[(cursor + i) % static_cast<std::size_t>(k)].push_back(idx[i]);
        cursor = (cursor + idx.size()) % static_cast<std::size_t>(k);
    }
    for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
    return split;
}

}  // namespace aewelm
