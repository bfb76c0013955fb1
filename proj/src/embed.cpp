#include "aewelm/embed.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aewelm/num_format.hpp"
#include "aewelm/rng.hpp"

namespace aewelm {

EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty embedding file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream header(line);
    long long declared_count = 0, dim = 0;
    if (!(header >> declared_count >> dim) || dim < 1)
        throw std::runtime_error(path + ": malformed header, expected '<vocab_count> <dim>'");

    EmbeddingTable table;
    table.dim = static_cast<int>(dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string word;
        row >> word;
        Eigen::VectorXd vec(dim);
        std::string field;
        for (long long i = 0; i < dim; ++i) {
            if (!(row >> field))
                throw std::runtime_error(path + ": line " + std::to_string(line_no) + " ('" + word +
                                         "'): expected " + std::to_string(dim) +
                                         " components, found " + std::to_string(i));
            auto value = parse_double(field);
            if (!value)
                throw std::runtime_error(path + ": line " + std::to_string(line_no) + " ('" + word +
                                         "'): non-numeric component '" + field + "'");
            vec[static_cast<Eigen::Index>(i)] = *value;
        }
        std::string extra;
        if (row >> extra)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + " ('" + word +
                                     "'): more than " + std::to_string(dim) + " components");
        if (!table.entries.emplace(std::move(word), std::move(vec)).second)
            ++table.duplicate_rows;  // first occurrence wins
    }
    if (table.entries.empty()) throw std::runtime_error(path + ": no embedding rows");
    return table;
}

DocVector doc_vector(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                     OovPolicy policy) {
    DocVector out;
    out.values = Eigen::VectorXd::Zero(table.dim);
    out.total = tokens.size();
    for (const auto& tok : tokens) {
        if (const Eigen::VectorXd* vec = table.find(tok)) {
            out.values += *vec;
            ++out.covered;
        }
    }
    const std::size_t divisor = policy == OovPolicy::Skip ? out.covered : out.total;
    if (divisor > 0) out.values /= static_cast<double>(divisor);
    return out;
}

CorpusVectors vectorize_corpus(const Corpus& corpus, const EmbeddingTable& table, OovPolicy policy,
                               double max_oov_fraction) {
    CorpusVectors out;
    const auto n = static_cast<Eigen::Index>(corpus.documents.size());
    out.x.resize(n, table.dim);
    out.doc_ids.reserve(corpus.documents.size());
    out.labels.reserve(corpus.documents.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const Document& doc = corpus.documents[static_cast<std::size_t>(i)];
        DocVector dv = doc_vector(doc.tokens, table, policy);
        out.x.row(i) = dv.values.transpose();
        out.doc_ids.push_back(doc.id);
        out.labels.push_back(doc.label);
        if (dv.covered == 0) out.fully_oov_docs.push_back(static_cast<int>(i));
    }
    if (n > 0) {
        const double fraction =
            static_cast<double>(out.fully_oov_docs.size()) / static_cast<double>(n);
        if (fraction > max_oov_fraction)
            throw std::runtime_error(
                "fully out-of-vocabulary documents exceed threshold: " +
                std::to_string(out.fully_oov_docs.size()) + "/" + std::to_string(n));
    }
    return out;
}

EmbeddingTable random_embeddings(const std::vector<std::string>& vocabulary, int dim,
                                 std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("random_embeddings: dim must be >= 1");
    EmbeddingTable table;
    table.dim = dim;
    Rng rng(derive_seed(seed, "random-embeddings", 0));
    const double half = 0.5 / static_cast<double>(dim);
    for (const auto& word : vocabulary) {
        if (table.entries.count(word)) continue;
        Eigen::VectorXd vec(dim);
        for (int i = 0; i < dim; ++i) vec[i] = rng.uniform(-half, half);
        table.entries.emplace(word, std::move(vec));
    }
    return table;
}

}  // namespace aewelm
