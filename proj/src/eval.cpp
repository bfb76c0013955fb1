#include "aewelm/eval.hpp"

#include <cmath>
#include <stdexcept>

#include "aewelm/rng.hpp"

namespace aewelm {

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& predicted,
                          int num_classes) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("confusion: label vectors differ in length");
    if (num_classes < 1) throw std::invalid_argument("confusion: need at least one class");
    ConfusionMatrix cm;
    cm.counts.setZero(num_classes, num_classes);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || truth[i] >= num_classes || predicted[i] < 0 ||
            predicted[i] >= num_classes)
            throw std::invalid_argument("confusion: label index out of range at position " +
                                        std::to_string(i));
        ++cm.counts(truth[i], predicted[i]);
    }
    return cm;
}

EvalReport metrics(const ConfusionMatrix& cm) {
    const int m = cm.num_classes();
    if (m == 0 || cm.total() == 0) throw std::invalid_argument("metrics: empty confusion matrix");

    EvalReport report;
    report.n = cm.total();
    report.per_class.resize(static_cast<std::size_t>(m));

    std::int64_t diag_sum = 0, pred_sum = 0, true_sum = 0;
    for (int i = 0; i < m; ++i) {
        const std::int64_t a = cm.counts(i, i);             // correctly identified as i
        const std::int64_t b = cm.counts.col(i).sum();      // predicted as i
        const std::int64_t d = cm.counts.row(i).sum();      // truly i
        diag_sum += a;
        pred_sum += b;
        true_sum += d;

        ClassMetrics& cls = report.per_class[static_cast<std::size_t>(i)];
        if (b == 0) cls.flagged = true;
        else cls.precision = static_cast<double>(a) / static_cast<double>(b);
        if (d == 0) cls.flagged = true;
        else cls.recall = static_cast<double>(a) / static_cast<double>(d);
        const double pr = cls.precision + cls.recall;
        if (pr == 0.0) cls.flagged = true;
        else cls.f1 = 2.0 * cls.precision * cls.recall / pr;

        report.macro_precision += cls.precision;
        report.macro_recall += cls.recall;
        report.macro_f1 += cls.f1;
    }
    report.macro_precision /= m;
    report.macro_recall /= m;
    report.macro_f1 /= m;

    report.micro_precision = static_cast<double>(diag_sum) / static_cast<double>(pred_sum);
    report.micro_recall = static_cast<double>(diag_sum) / static_cast<double>(true_sum);
    const double pr = report.micro_precision + report.micro_recall;
    report.micro_f1 = pr == 0.0 ? 0.0 : 2.0 * report.micro_precision * report.micro_recall / pr;
    return report;
}

CvResult cross_validate(const Corpus& corpus, const Eigen::MatrixXd& x_all, int k,
                        std::uint64_t seed, const TrainerFn& trainer) {
    if (x_all.rows() != static_cast<Eigen::Index>(corpus.documents.size()))
        throw std::invalid_argument("cross_validate: feature rows do not match corpus size");
    const KFoldSplit split = kfold_split(corpus, k, seed);
    const std::vector<int> labels = corpus.label_indices();
    const int m = static_cast<int>(corpus.categories.size());

    auto slice = [&](const std::vector<int>& idx) {
        Eigen::MatrixXd x(static_cast<Eigen::Index>(idx.size()), x_all.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = x_all.row(idx[i]);
        return x;
    };

    CvResult result;
    for (int f = 0; f < k; ++f) {
        const std::vector<int> train_idx = split.train_indices(f);
        const std::vector<int>& val_idx = split.folds[static_cast<std::size_t>(f)];

        const Corpus train_corpus = corpus.subset(train_idx);
        std::vector<int> train_labels, val_labels;
        for (int i : train_idx) train_labels.push_back(labels[static_cast<std::size_t>(i)]);
        for (int i : val_idx) val_labels.push_back(labels[static_cast<std::size_t>(i)]);

        ModelFn model;
        try {
            model = trainer(train_corpus, slice(train_idx), train_labels);
        } catch (const std::exception& e) {
            throw std::runtime_error("cross_validate: fold " + std::to_string(f) + ": " + e.what());
        }
        const std::vector<int> pred = model(slice(val_idx));
        result.fold_reports.push_back(metrics(confusion(val_labels, pred, m)));
    }

    auto mean_std = [&](auto pick, double& mean, double& stdev) {
        double sum = 0.0;
        for (const auto& r : result.fold_reports) sum += pick(r);
        mean = sum / static_cast<double>(result.fold_reports.size());
        double ss = 0.0;
        for (const auto& r : result.fold_reports) ss += (pick(r) - mean) * (pick(r) - mean);
        stdev = result.fold_reports.size() > 1
                    ? std::sqrt(ss / static_cast<double>(result.fold_reports.size() - 1))
                    : 0.0;
    };
    mean_std([](const EvalReport& r) { return r.micro_f1; }, result.mean_micro_f1,
             result.std_micro_f1);
    mean_std([](const EvalReport& r) { return r.macro_f1; }, result.mean_macro_f1,
             result.std_macro_f1);
    return result;
}

GridResult grid_search(const Corpus& corpus, const Eigen::MatrixXd& x_all,
                       const std::vector<double>& c_grid, const std::vector<int>& l_grid, int k,
                       std::uint64_t seed, int repeats, const CellTrainerFactory& factory) {
    if (c_grid.empty() || l_grid.empty())
        throw std::invalid_argument("grid_search: empty parameter grid");
    if (repeats < 1) throw std::invalid_argument("grid_search: repeats must be >= 1");

    GridResult result;
    for (double c : c_grid) {
        for (int l : l_grid) {
            GridCell cell;
            cell.c = c;
            cell.hidden_nodes = l;
            for (int r = 0; r < repeats; ++r) {
                const std::uint64_t run_seed = derive_seed(seed, "grid-repeat",
                                                           static_cast<std::uint64_t>(r));
                CvResult cv;
                try {
                    cv = cross_validate(corpus, x_all, k, seed, factory(c, l, run_seed));
                } catch (const std::exception& e) {
                    throw std::runtime_error("grid_search: cell (c=" + std::to_string(c) +
                                             ", L=" + std::to_string(l) + "): " + e.what());
                }
                for (const auto& rep : cv.fold_reports) {
                    cell.fold_micro.push_back(rep.micro_f1);
                    cell.fold_macro.push_back(rep.macro_f1);
                }
            }
            double sum_micro = 0.0, sum_macro = 0.0;
            for (double v : cell.fold_micro) sum_micro += v;
            for (double v : cell.fold_macro) sum_macro += v;
            cell.mean_micro_f1 = sum_micro / static_cast<double>(cell.fold_micro.size());
            cell.mean_macro_f1 = sum_macro / static_cast<double>(cell.fold_macro.size());
            result.cells.push_back(std::move(cell));
        }
    }

    result.best = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        const GridCell& cand = result.cells[i];
        const GridCell& best = result.cells[result.best];
        const bool better =
            cand.mean_micro_f1 > best.mean_micro_f1 ||
            (cand.mean_micro_f1 == best.mean_micro_f1 &&
             (cand.c > best.c || (cand.c == best.c && cand.hidden_nodes < best.hidden_nodes)));
        if (better) result.best = i;
    }
    return result;
}

}  // namespace aewelm
