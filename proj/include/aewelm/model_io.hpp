#pragma once

#include <iosfwd>
#include <string>

#include "aewelm/corpus.hpp"
#include "aewelm/ensemble.hpp"

namespace aewelm {

// Structured-text model files. Doubles are written in shortest round-trip
// form, so save/load is bit-exact. Loaders check the version tag first and
// fail fast on mismatches.

void save_elm_model(std::ostream& out, const ElmModel& model);
ElmModel load_elm_model(std::istream& in);

void save_ensemble(std::ostream& out, const EnsembleModel& model);
EnsembleModel load_ensemble(std::istream& in);

// Reads either container: a bare model file loads as a single-member
// ensemble with alpha 1.
EnsembleModel load_any_model(const std::string& path);

void save_elm_model(const std::string& path, const ElmModel& model);
void save_ensemble(const std::string& path, const EnsembleModel& model);

// Tokenized-corpus file (the `prep` output).
void save_corpus_file(std::ostream& out, const Corpus& corpus);
Corpus load_corpus_file(std::istream& in);
void save_corpus_file(const std::string& path, const Corpus& corpus);
Corpus load_corpus_file(const std::string& path);

}  // namespace aewelm
