#include "aewelm/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aewelm/num_format.hpp"

namespace aewelm {

namespace {

constexpr const char* kModelTag = "aewelm-model v1";
constexpr const char* kEnsembleTag = "aewelm-ensemble v1";
constexpr const char* kCorpusTag = "aewelm-corpus v1";

std::string next_line(std::istream& in, const char* context) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(std::string("model file truncated while reading ") + context);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void expect_tag(std::istream& in, const char* expected) {
    const std::string line = next_line(in, "version tag");
    if (line != expected)
        throw std::runtime_error("version tag mismatch: found '" + line + "', expected '" +
                                 expected + "'");
}

// "key value..." line; returns the remainder after the key
std::string expect_key(std::istream& in, const std::string& key) {
    const std::string line = next_line(in, key.c_str());
    if (line.compare(0, key.size(), key) != 0 ||
        (line.size() > key.size() && line[key.size()] != ' '))
        throw std::runtime_error("expected '" + key + "' line, found '" + line + "'");
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
}

long long to_int(const std::string& s, const char* context) {
    auto v = parse_int(s);
    if (!v) throw std::runtime_error(std::string("bad integer in model file (") + context + "): '" + s + "'");
    return *v;
}

unsigned long long to_uint(const std::string& s, const char* context) {
    auto v = parse_uint(s);
    if (!v) throw std::runtime_error(std::string("bad integer in model file (") + context + "): '" + s + "'");
    return *v;
}

double to_double(const std::string& s, const char* context) {
    auto v = parse_double(s);
    if (!v) throw std::runtime_error(std::string("bad number in model file (") + context + "): '" + s + "'");
    return *v;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_matrix(std::istream& in, Eigen::Index rows, Eigen::Index cols,
                            const char* context) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        std::istringstream row(next_line(in, context));
        std::string field;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!(row >> field))
                throw std::runtime_error(std::string("short matrix row in model file (") + context + ")");
            m(i, j) = to_double(field, context);
        }
    }
    return m;
}

}  // namespace

void save_elm_model(std::ostream& out, const ElmModel& model) {
    out << kModelTag << '\n';
    out << "activation " << model.hidden.activation << '\n';
    out << "seed " << model.hidden.seed << '\n';
    out << "hidden " << model.hidden.weights.rows() << '\n';
    out << "input " << model.hidden.weights.cols() << '\n';
    out << "classes " << model.classes.size() << '\n';
    for (const auto& cls : model.classes) out << cls << '\n';
    out << "c " << format_double(model.c) << '\n';
    out << "weighted " << (model.trained_weighted ? 1 : 0) << '\n';
    out << "a\n";
    write_matrix(out, model.hidden.weights);
    out << "b\n";
    write_matrix(out, model.hidden.biases.transpose());
    out << "beta\n";
    write_matrix(out, model.beta);
    out << "end\n";
}

ElmModel load_elm_model(std::istream& in) {
    expect_tag(in, kModelTag);
    ElmModel model;
    model.hidden.activation = expect_key(in, "activation");
    if (model.hidden.activation != "tanh")
        throw std::runtime_error("unsupported activation: " + model.hidden.activation);
    model.hidden.seed = static_cast<std::uint64_t>(to_uint(expect_key(in, "seed"), "seed"));
    const auto hidden = to_int(expect_key(in, "hidden"), "hidden");
    const auto input = to_int(expect_key(in, "input"), "input");
    const auto num_classes = to_int(expect_key(in, "classes"), "classes");
    if (hidden < 1 || input < 1 || num_classes < 1)
        throw std::runtime_error("bad dimensions in model file");
    for (long long i = 0; i < num_classes; ++i) model.classes.push_back(next_line(in, "class name"));
    model.c = to_double(expect_key(in, "c"), "c");
    model.trained_weighted = to_int(expect_key(in, "weighted"), "weighted") != 0;
    expect_key(in, "a");
    model.hidden.weights = read_matrix(in, hidden, input, "a");
    expect_key(in, "b");
    model.hidden.biases = read_matrix(in, 1, hidden, "b").transpose();
    expect_key(in, "beta");
    model.beta = read_matrix(in, hidden, num_classes, "beta");
    expect_key(in, "end");
    return model;
}

void save_ensemble(std::ostream& out, const EnsembleModel& model) {
    out << kEnsembleTag << '\n';
    out << "variant " << model.variant << '\n';
    out << "classes " << model.classes.size() << '\n';
    for (const auto& cls : model.classes) out << cls << '\n';
    out << "rounds_used " << model.rounds_used << '\n';
    out << "members " << model.members.size() << '\n';
    out << "alphas";
    for (double a : model.alphas) out << ' ' << format_double(a);
    out << '\n';
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        out << "member " << i << '\n';
        save_elm_model(out, model.members[i]);
    }
    out << "end\n";
}

EnsembleModel load_ensemble(std::istream& in) {
    expect_tag(in, kEnsembleTag);
    EnsembleModel model;
    model.variant = expect_key(in, "variant");
    const auto num_classes = to_int(expect_key(in, "classes"), "classes");
    for (long long i = 0; i < num_classes; ++i) model.classes.push_back(next_line(in, "class name"));
    model.rounds_used = static_cast<int>(to_int(expect_key(in, "rounds_used"), "rounds_used"));
    const auto members = to_int(expect_key(in, "members"), "members");
    if (members < 1) throw std::runtime_error("ensemble file has no members");
    std::istringstream alphas(expect_key(in, "alphas"));
    std::string field;
    while (alphas >> field) model.alphas.push_back(to_double(field, "alphas"));
    if (static_cast<long long>(model.alphas.size()) != members)
        throw std::runtime_error("ensemble file: alpha count does not match member count");
    for (long long i = 0; i < members; ++i) {
        expect_key(in, "member");
        model.members.push_back(load_elm_model(in));
        if (model.members.back().classes != model.classes)
            throw std::runtime_error("ensemble file: member class list mismatch");
    }
    expect_key(in, "end");
    return model;
}

EnsembleModel load_any_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::string first;
    if (!std::getline(in, first)) throw std::runtime_error("empty model file: " + path);
    in.seekg(0);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (first == kEnsembleTag) return load_ensemble(in);
    if (first == kModelTag) {
        EnsembleModel model;
        model.members.push_back(load_elm_model(in));
        model.alphas.push_back(1.0);
        model.classes = model.members.front().classes;
        model.variant = "single";
        model.rounds_used = 1;
        return model;
    }
    throw std::runtime_error("version tag mismatch in " + path + ": found '" + first +
                             "', expected '" + kModelTag + "' or '" + kEnsembleTag + "'");
}

namespace {

template <typename Fn>
void save_to_path(const std::string& path, Fn&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void save_elm_model(const std::string& path, const ElmModel& model) {
    save_to_path(path, [&](std::ostream& out) { save_elm_model(out, model); });
}

void save_ensemble(const std::string& path, const EnsembleModel& model) {
    save_to_path(path, [&](std::ostream& out) { save_ensemble(out, model); });
}

void save_corpus_file(std::ostream& out, const Corpus& corpus) {
    out << kCorpusTag << '\n';
    out << "classes " << corpus.categories.size() << '\n';
    for (const auto& cls : corpus.categories) out << cls << '\n';
    out << "documents " << corpus.documents.size() << '\n';
    for (const auto& doc : corpus.documents) {
        out << "doc " << doc.id << ' ' << doc.tokens.size();
        if (!doc.label.empty()) out << ' ' << doc.label;
        out << '\n';
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i) out << ' ';
            out << doc.tokens[i];
        }
        out << '\n';
    }
    out << "end\n";
}

Corpus load_corpus_file(std::istream& in) {
    expect_tag(in, kCorpusTag);
    Corpus corpus;
    const auto num_classes = to_int(expect_key(in, "classes"), "classes");
    for (long long i = 0; i < num_classes; ++i)
        corpus.categories.push_back(next_line(in, "class name"));
    const auto num_docs = to_int(expect_key(in, "documents"), "documents");
    for (long long d = 0; d < num_docs; ++d) {
        std::istringstream header(expect_key(in, "doc"));
        Document doc;
        long long token_count = 0;
        if (!(header >> doc.id >> token_count))
            throw std::runtime_error("corpus file: malformed doc header");
        header >> doc.label;  // optional
        std::istringstream tokens(next_line(in, "tokens"));
        std::string tok;
        while (tokens >> tok) doc.tokens.push_back(std::move(tok));
        if (static_cast<long long>(doc.tokens.size()) != token_count)
            throw std::runtime_error("corpus file: token count mismatch for document " + doc.id);
        corpus.documents.push_back(std::move(doc));
    }
    expect_key(in, "end");
    return corpus;
}

void save_corpus_file(const std::string& path, const Corpus& corpus) {
    save_to_path(path, [&](std::ostream& out) { save_corpus_file(out, corpus); });
}

Corpus load_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    return load_corpus_file(in);
}

}  // namespace aewelm
