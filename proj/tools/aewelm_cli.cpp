// Command-line front end: preprocess corpora, build document vectors, score
// entropy, train/evaluate models and run grid searches.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "aewelm/embed.hpp"
#include "aewelm/entropy.hpp"
#include "aewelm/eval.hpp"
#include "aewelm/model_io.hpp"
#include "aewelm/num_format.hpp"
#include "aewelm/pipeline.hpp"
#include "aewelm/rng.hpp"

using namespace aewelm;
namespace fs = std::filesystem;

namespace {

// Artifacts land via temp-file + rename: a nonzero exit never leaves a
// half-written output behind.
void write_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write: " + path);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path);
    }
    fs::rename(tmp, target);
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

struct PrepFlags {
    std::string stopwords_path;
    bool no_stem = false;
    std::size_t min_token_len = 2;

    PreprocessOptions options() const {
        PreprocessOptions opts;
        if (!stopwords_path.empty()) opts.stopwords = load_stopwords(stopwords_path);
        opts.stem = !no_stem;
        opts.min_token_length = min_token_len;
        return opts;
    }
};

void add_prep_flags(CLI::App* cmd, PrepFlags& flags) {
    cmd->add_option("--stopwords", flags.stopwords_path, "stopword file, one token per line");
    cmd->add_flag("--no-stem", flags.no_stem, "disable Porter stemming");
    cmd->add_option("--min-token-len", flags.min_token_len, "minimum token length (default 2)");
}

OovPolicy parse_oov(const std::string& tag) {
    if (tag == "skip") return OovPolicy::Skip;
    if (tag == "zero") return OovPolicy::Zero;
    throw CLI::ValidationError("--oov", "expected 'skip' or 'zero'");
}

CorpusFormat parse_format(const std::string& tag) {
    if (tag == "dir") return CorpusFormat::DirPerClass;
    if (tag == "tsv") return CorpusFormat::Tsv;
    throw CLI::ValidationError("--format", "expected 'dir' or 'tsv'");
}

std::size_t count_distinct_terms(const Corpus& corpus) {
    std::unordered_set<std::string> terms;
    for (const auto& doc : corpus.documents) terms.insert(doc.tokens.begin(), doc.tokens.end());
    return terms.size();
}

void warn_oov(const CorpusVectors& vecs) {
    for (int idx : vecs.fully_oov_docs)
        std::cerr << "warning: document '" << vecs.doc_ids[std::size_t(idx)]
                  << "' has no in-vocabulary tokens; zero vector used\n";
}

std::string diagnostics_csv(const BoostReport& report) {
    std::string csv = "round,eps,alpha,train_err,retries\n";
    for (const auto& r : report.rounds) {
        csv += std::to_string(r.round) + ',' + format_double(r.eps) + ',' +
               format_double(r.alpha) + ',' + format_double(r.train_err) + ',' +
               std::to_string(r.retries) + '\n';
    }
    return csv;
}

std::string eval_report_csv(const EvalReport& report, const std::vector<std::string>& classes) {
    std::string csv = "class,precision,recall,f1,flagged\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const ClassMetrics& cls = report.per_class[i];
        csv += csv_field(classes[i]) + ',' + format_double(cls.precision) + ',' +
               format_double(cls.recall) + ',' + format_double(cls.f1) + ',' +
               (cls.flagged ? "1" : "0") + '\n';
    }
    csv += "_micro," + format_double(report.micro_precision) + ',' +
           format_double(report.micro_recall) + ',' + format_double(report.micro_f1) + ",0\n";
    csv += "_macro," + format_double(report.macro_precision) + ',' +
           format_double(report.macro_recall) + ',' + format_double(report.macro_f1) + ",0\n";
    return csv;
}

EvalReport evaluate_model(const EnsembleModel& model, const Corpus& corpus,
                          const EmbeddingTable& table, OovPolicy oov) {
    if (model.classes != corpus.categories) {
        std::string msg = "class-list mismatch between model [";
        for (const auto& c : model.classes) msg += ' ' + c;
        msg += " ] and corpus [";
        for (const auto& c : corpus.categories) msg += ' ' + c;
        msg += " ]";
        throw std::runtime_error(msg);
    }
    const CorpusVectors vecs = vectorize_corpus(corpus, table, oov);
    warn_oov(vecs);
    const std::vector<int> pred = ensemble_predict(model, vecs.x);
    return metrics(confusion(corpus.label_indices(), pred, int(corpus.categories.size())));
}

// ---- subcommand bodies ----

struct PrepArgs {
    std::string corpus_path;
    std::string format = "dir";
    PrepFlags flags;
    std::string out;
};

int cmd_prep(const PrepArgs& args) {
    const Corpus corpus =
        load_corpus(args.corpus_path, parse_format(args.format), args.flags.options());
    std::ostringstream buffer;
    save_corpus_file(buffer, corpus);
    write_atomic(args.out, buffer.str());
    std::cout << corpus.documents.size() << " docs, " << corpus.categories.size() << " classes, "
              << count_distinct_terms(corpus) << " terms\n";
    return 0;
}

struct VectorsArgs {
    std::string corpus_file;
    std::string embeddings;
    std::string oov = "skip";
    double max_oov_fraction = 0.10;
    std::string out;
};

int cmd_vectors(const VectorsArgs& args) {
    const Corpus corpus = load_corpus_file(args.corpus_file);
    const EmbeddingTable table = load_embeddings(args.embeddings);
    if (table.duplicate_rows > 0)
        std::cerr << "warning: " << table.duplicate_rows
                  << " duplicate embedding rows dropped (first occurrence wins)\n";
    const CorpusVectors vecs =
        vectorize_corpus(corpus, table, parse_oov(args.oov), args.max_oov_fraction);
    warn_oov(vecs);

    std::string csv = "docid,label";
    for (int j = 0; j < table.dim; ++j) csv += ",v" + std::to_string(j + 1);
    csv += '\n';
    for (Eigen::Index i = 0; i < vecs.x.rows(); ++i) {
        csv += csv_field(vecs.doc_ids[std::size_t(i)]) + ',' +
               csv_field(vecs.labels[std::size_t(i)]);
        for (int j = 0; j < table.dim; ++j) csv += ',' + format_double(vecs.x(i, j));
        csv += '\n';
    }
    write_atomic(args.out, csv);
    std::cout << vecs.x.rows() << " vectors of dimension " << table.dim << "\n";
    return 0;
}

struct EntropyArgs {
    std::string corpus_file;
    double theta = 0.05;
    bool doc_multiplicity = false;
    std::string out;
};

int cmd_entropy(const EntropyArgs& args) {
    const Corpus corpus = load_corpus_file(args.corpus_file);
    const TermStats stats = compute_term_stats(corpus);
    const EntropyScores scores =
        compute_entropy_scores(corpus, stats, args.theta, args.doc_multiplicity);
    for (int idx : scores.floor_docs)
        std::cerr << "warning: document '" << corpus.documents[std::size_t(idx)].id
                  << "' has no scored terms; floor importance assigned\n";

    std::map<std::string, const TermScore*> sorted;
    for (const auto& [term, score] : scores.terms) sorted.emplace(term, &score);
    std::string terms_csv = "term,ED,EC,rawEDC,normEDC\n";
    for (const auto& [term, score] : sorted)
        terms_csv += csv_field(term) + ',' + format_double(score->ed) + ',' +
                     format_double(score->ec) + ',' + format_double(score->raw_edc) + ',' +
                     format_double(score->norm_edc) + '\n';
    write_atomic(args.out + ".terms.csv", terms_csv);

    std::string docs_csv = "docid,docEDC\n";
    for (std::size_t i = 0; i < corpus.documents.size(); ++i)
        docs_csv +=
            csv_field(corpus.documents[i].id) + ',' + format_double(scores.doc_edc[i]) + '\n';
    write_atomic(args.out + ".docs.csv", docs_csv);

    std::cout << scores.terms.size() << " terms scored, theta " << format_double(args.theta)
              << "\n";
    return 0;
}

struct TrainArgs {
    std::string corpus_file;
    std::string embeddings;
    std::string algo = "ae1";
    double c = 1.0;
    int hidden = 100;
    int rounds = 20;
    int bags = 20;
    double theta = 0.05;
    std::string oov = "skip";
    std::uint64_t seed = 0;
    int repeats = 1;
    bool doc_multiplicity = false;
    std::string out;
};

int cmd_train(const TrainArgs& args) {
    const Corpus corpus = load_corpus_file(args.corpus_file);
    const EmbeddingTable table = load_embeddings(args.embeddings);
    const CorpusVectors vecs = vectorize_corpus(corpus, table, parse_oov(args.oov));
    warn_oov(vecs);
    const std::vector<int> labels = corpus.label_indices();

    PipelineParams params;
    params.algo = parse_algo(args.algo);
    params.c = args.c;
    params.hidden_nodes = args.hidden;
    params.rounds = args.rounds;
    params.bags = args.bags;
    params.theta = args.theta;
    params.doc_multiplicity = args.doc_multiplicity;

    const bool is_ensemble = params.algo != Algo::Elm && params.algo != Algo::Relm;
    double micro_sum = 0.0, macro_sum = 0.0;
    for (int run = 0; run < args.repeats; ++run) {
        params.seed = run == 0 ? args.seed
                               : derive_seed(args.seed, "train-repeat", std::uint64_t(run));
        BoostReport report;
        const EnsembleModel model = train_pipeline(corpus, vecs.x, labels, params, &report);
        const std::vector<int> pred = ensemble_predict(model, vecs.x);
        const EvalReport train_metrics =
            metrics(confusion(labels, pred, int(corpus.categories.size())));
        micro_sum += train_metrics.micro_f1;
        macro_sum += train_metrics.macro_f1;
        if (args.repeats > 1)
            std::cout << "run " << run << " seed " << params.seed << " training micro_f1 "
                      << format_double(train_metrics.micro_f1) << " macro_f1 "
                      << format_double(train_metrics.macro_f1) << "\n";

        if (run == 0) {
            std::ostringstream buffer;
            if (is_ensemble)
                save_ensemble(buffer, model);
            else
                save_elm_model(buffer, model.members.front());
            write_atomic(args.out, buffer.str());
            if (is_ensemble) write_atomic(args.out + ".diagnostics.csv", diagnostics_csv(report));
        }
    }
    std::cout << "training micro_f1 " << format_double(micro_sum / args.repeats) << " macro_f1 "
              << format_double(macro_sum / args.repeats);
    if (args.repeats > 1) std::cout << " (mean over " << args.repeats << " runs)";
    std::cout << "\n";
    return 0;
}

struct PredictArgs {
    std::string model_path;
    std::string embeddings;
    std::string input;
    std::string informat = "lines";
    PrepFlags flags;
    std::string oov = "skip";
    std::string out;
};

int cmd_predict(const PredictArgs& args) {
    const EnsembleModel model = load_any_model(args.model_path);
    const EmbeddingTable table = load_embeddings(args.embeddings);

    Corpus corpus;
    if (args.informat == "corpus")
        corpus = load_corpus_file(args.input);
    else if (args.informat == "lines")
        corpus = load_unlabeled_lines(args.input, args.flags.options());
    else
        corpus = load_corpus(args.input, parse_format(args.informat), args.flags.options());

    const CorpusVectors vecs = vectorize_corpus(corpus, table, parse_oov(args.oov), 1.0);
    warn_oov(vecs);
    const std::vector<int> pred = ensemble_predict(model, vecs.x);

    std::string csv = "docid,label\n";
    for (std::size_t i = 0; i < pred.size(); ++i)
        csv += csv_field(vecs.doc_ids[i]) + ',' +
               csv_field(model.classes[std::size_t(pred[i])]) + '\n';
    write_atomic(args.out, csv);
    std::cout << pred.size() << " predictions\n";
    return 0;
}

struct EvalArgs {
    std::string model_path;
    std::string corpus_file;
    std::string embeddings;
    std::string oov = "skip";
    std::string out;
};

int cmd_eval(const EvalArgs& args) {
    const EnsembleModel model = load_any_model(args.model_path);
    const Corpus corpus = load_corpus_file(args.corpus_file);
    const EmbeddingTable table = load_embeddings(args.embeddings);
    const EvalReport report = evaluate_model(model, corpus, table, parse_oov(args.oov));
    write_atomic(args.out, eval_report_csv(report, corpus.categories));
    std::cout << "micro_f1 " << format_double(report.micro_f1) << " macro_f1 "
              << format_double(report.macro_f1) << " on " << report.n << " documents\n";
    return 0;
}

struct GridArgs {
    std::string corpus_file;
    std::string embeddings;
    std::string algo = "ae1";
    std::vector<double> c_grid;
    std::vector<int> hidden_grid;
    int folds = 5;
    std::uint64_t seed = 0;
    int repeats = 1;
    int rounds = 20;
    int bags = 20;
    double theta = 0.05;
    std::string oov = "skip";
    bool doc_multiplicity = false;
    std::string out;
};

int cmd_grid(GridArgs args) {
    if (args.c_grid.empty())
        for (int e = 0; e >= -8; --e) args.c_grid.push_back(std::pow(10.0, e));
    if (args.hidden_grid.empty())
        for (int l = 100; l <= 1000; l += 100) args.hidden_grid.push_back(l);

    const Corpus corpus = load_corpus_file(args.corpus_file);
    const EmbeddingTable table = load_embeddings(args.embeddings);
    const CorpusVectors vecs = vectorize_corpus(corpus, table, parse_oov(args.oov));
    warn_oov(vecs);

    PipelineParams base;
    base.algo = parse_algo(args.algo);
    base.rounds = args.rounds;
    base.bags = args.bags;
    base.theta = args.theta;
    base.doc_multiplicity = args.doc_multiplicity;

    const CellTrainerFactory factory = [&](double c, int hidden, std::uint64_t seed) {
        PipelineParams params = base;
        params.c = c;
        params.hidden_nodes = hidden;
        params.seed = seed;
        return make_pipeline_trainer(params);
    };

    const GridResult grid = grid_search(corpus, vecs.x, args.c_grid, args.hidden_grid,
                                        args.folds, args.seed, args.repeats, factory);

    std::string csv = "c,L,fold,micro_f1,macro_f1\n";
    for (const auto& cell : grid.cells)
        for (std::size_t f = 0; f < cell.fold_micro.size(); ++f)
            csv += format_double(cell.c) + ',' + std::to_string(cell.hidden_nodes) + ',' +
                   std::to_string(f) + ',' + format_double(cell.fold_micro[f]) + ',' +
                   format_double(cell.fold_macro[f]) + '\n';
    write_atomic(args.out, csv);

    const GridCell& best = grid.cells[grid.best];
    std::cout << "best c " << format_double(best.c) << " L " << best.hidden_nodes
              << " mean micro_f1 " << format_double(best.mean_micro_f1) << " mean macro_f1 "
              << format_double(best.mean_macro_f1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cost-sensitive ensemble weighted ELM text classification toolchain"};
    app.require_subcommand(1);

    PrepArgs prep;
    auto* prep_cmd = app.add_subcommand("prep", "preprocess a raw corpus into a corpus file");
    prep_cmd->set_config("--config");
    prep_cmd->add_option("--corpus", prep.corpus_path, "corpus root (dir layout) or file (tsv)")
        ->required();
    prep_cmd->add_option("--format", prep.format, "corpus format: dir | tsv");
    add_prep_flags(prep_cmd, prep.flags);
    prep_cmd->add_option("--out", prep.out, "output corpus file")->required();

    VectorsArgs vectors;
    auto* vectors_cmd = app.add_subcommand("vectors", "emit document vectors as CSV");
    vectors_cmd->set_config("--config");
    vectors_cmd->add_option("--corpus-file", vectors.corpus_file, "prep output")->required();
    vectors_cmd->add_option("--embeddings", vectors.embeddings, "word embedding text file")
        ->required();
    vectors_cmd->add_option("--oov", vectors.oov, "out-of-vocabulary policy: skip | zero");
    vectors_cmd->add_option("--max-oov-fraction", vectors.max_oov_fraction,
                            "error when more documents are fully OOV (default 0.10)");
    vectors_cmd->add_option("--out", vectors.out, "output CSV")->required();

    EntropyArgs entropy;
    auto* entropy_cmd =
        app.add_subcommand("entropy", "score term and document information entropy");
    entropy_cmd->set_config("--config");
    entropy_cmd->add_option("--corpus-file", entropy.corpus_file, "prep output")->required();
    entropy_cmd->add_option("--theta", entropy.theta, "smoothing parameter (default 0.05)");
    entropy_cmd->add_flag("--doc-multiplicity", entropy.doc_multiplicity,
                          "sum document importance over tokens instead of distinct terms");
    entropy_cmd->add_option("--out", entropy.out,
                            "output base path (writes <out>.terms.csv and <out>.docs.csv)")
        ->required();

    TrainArgs train;
    auto* train_cmd = app.add_subcommand("train", "train a model");
    train_cmd->set_config("--config");
    train_cmd->add_option("--corpus-file", train.corpus_file, "prep output")->required();
    train_cmd->add_option("--embeddings", train.embeddings, "word embedding text file")
        ->required();
    train_cmd->add_option("--algo", train.algo,
                          "elm | relm | bagging | ada-welm | ae1 | ae2 (default ae1)");
    train_cmd->add_option("--c", train.c, "regularization parameter C (default 1)");
    train_cmd->add_option("--hidden", train.hidden, "hidden nodes L (default 100)");
    train_cmd->add_option("--rounds", train.rounds, "boosting rounds T (default 20)");
    train_cmd->add_option("--bags", train.bags, "bagging ensemble size (default 20)");
    train_cmd->add_option("--theta", train.theta, "entropy smoothing (default 0.05)");
    train_cmd->add_option("--oov", train.oov, "skip | zero");
    train_cmd->add_option("--seed", train.seed, "root random seed");
    train_cmd->add_option("--repeats", train.repeats,
                          "average training metrics over reseeded runs (default 1)");
    train_cmd->add_flag("--doc-multiplicity", train.doc_multiplicity,
                        "token-multiplicity document importance");
    train_cmd->add_option("--out", train.out, "output model file")->required();

    PredictArgs predict;
    auto* predict_cmd = app.add_subcommand("predict", "label documents with a trained model");
    predict_cmd->set_config("--config");
    predict_cmd->add_option("--model", predict.model_path, "model file")->required();
    predict_cmd->add_option("--embeddings", predict.embeddings, "word embedding text file")
        ->required();
    predict_cmd->add_option("--input", predict.input, "input documents")->required();
    predict_cmd->add_option("--informat", predict.informat,
                            "input format: lines | tsv | dir | corpus (default lines)");
    add_prep_flags(predict_cmd, predict.flags);
    predict_cmd->add_option("--oov", predict.oov, "skip | zero");
    predict_cmd->add_option("--out", predict.out, "output CSV (docid,label)")->required();

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a labeled corpus");
    eval_cmd->set_config("--config");
    eval_cmd->add_option("--model", eval.model_path, "model file")->required();
    eval_cmd->add_option("--corpus-file", eval.corpus_file, "labeled corpus file")->required();
    eval_cmd->add_option("--embeddings", eval.embeddings, "word embedding text file")->required();
    eval_cmd->add_option("--oov", eval.oov, "skip | zero");
    eval_cmd->add_option("--out", eval.out, "output report CSV")->required();

    GridArgs grid;
    auto* grid_cmd = app.add_subcommand("grid", "cross-validated (c, L) grid search");
    grid_cmd->set_config("--config");
    grid_cmd->add_option("--corpus-file", grid.corpus_file, "prep output")->required();
    grid_cmd->add_option("--embeddings", grid.embeddings, "word embedding text file")->required();
    grid_cmd->add_option("--algo", grid.algo, "algorithm tag (default ae1)");
    grid_cmd->add_option("--c-grid", grid.c_grid,
                         "C values (default 1e0 down to 1e-8 by decades)");
    grid_cmd->add_option("--hidden-grid", grid.hidden_grid,
                         "L values (default 100..1000 step 100)");
    grid_cmd->add_option("--folds", grid.folds, "cross-validation folds (default 5)");
    grid_cmd->add_option("--seed", grid.seed, "root random seed");
    grid_cmd->add_option("--repeats", grid.repeats, "reseeded repeats per cell (default 1)");
    grid_cmd->add_option("--rounds", grid.rounds, "boosting rounds");
    grid_cmd->add_option("--bags", grid.bags, "bagging ensemble size");
    grid_cmd->add_option("--theta", grid.theta, "entropy smoothing");
    grid_cmd->add_option("--oov", grid.oov, "skip | zero");
    grid_cmd->add_flag("--doc-multiplicity", grid.doc_multiplicity,
                       "token-multiplicity document importance");
    grid_cmd->add_option("--out", grid.out, "output grid CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (prep_cmd->parsed()) return cmd_prep(prep);
        if (vectors_cmd->parsed()) return cmd_vectors(vectors);
        if (entropy_cmd->parsed()) return cmd_entropy(entropy);
        if (train_cmd->parsed()) return cmd_train(train);
        if (predict_cmd->parsed()) return cmd_predict(predict);
        if (eval_cmd->parsed()) return cmd_eval(eval);
        if (grid_cmd->parsed()) return cmd_grid(grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
