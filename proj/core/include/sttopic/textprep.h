// sttopic/textprep.h

// Copyright 2026  The sttopic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef STTOPIC_TEXTPREP_H_
#define STTOPIC_TEXTPREP_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "sttopic/corpus.h"

namespace sttopic {

struct TokenizerOptions {
  bool remove_stopwords = true;
  // Minimum token length in code points; shorter tokens are dropped.
  int min_token_length = 2;
};

/// Lowercases `text`, deletes every code point in the Unicode P* and S*
/// general categories, splits on Unicode whitespace, then applies the
/// stopword and length filters. Invalid UTF-8 bytes are dropped.
///
/// Punctuation is deleted rather than treated as a separator, so "i'm"
/// becomes "im" and "e-mail" becomes "email".
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerOptions &opts = {});

struct VocabularyOptions {
  int min_df = 2;
  double max_df_ratio = 0.10;
  std::size_t max_terms = 1000;
  TokenizerOptions tokenizer;
};

/// Feature vocabulary plus the document statistics of the corpus it was
/// fitted on. Column j of every matrix built from it is terms()[j].
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<int> doc_freq,
             int n_docs_fit, TokenizerOptions tokenizer);

  const std::vector<std::string> &terms() const { return terms_; }
  const std::vector<int> &doc_freq() const { return doc_freq_; }
  int n_docs_fit() const { return n_docs_fit_; }
  const TokenizerOptions &tokenizer() const { return tokenizer_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  std::optional<std::size_t> Index(const std::string &term) const;

  /// Smoothed inverse document frequency ln((1 + n) / (1 + df)) + 1.
  double Idf(std::size_t column) const;

  bool operator==(const Vocabulary &other) const;

 private:
  std::vector<std::string> terms_;
  std::vector<int> doc_freq_;
  int n_docs_fit_ = 0;
  TokenizerOptions tokenizer_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Keeps terms with min_df <= df <= max_df_ratio * |docs|, then the
/// max_terms of those with the highest total token count (ties go to the
/// lexicographically smaller term). Terms are stored in lexicographic
/// order. Throws DataError("empty vocabulary") if nothing survives.
Vocabulary BuildVocabulary(const std::vector<SegmentDoc> &docs,
                           const VocabularyOptions &opts = {});

std::string VocabularyToJson(const Vocabulary &vocab);
Vocabulary VocabularyFromJson(std::string_view json);

/// Nonnegative, l2-row-normalized document x term matrix.
struct TfidfMatrix {
  using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  Storage values;
  std::vector<std::string> row_ids;

  Eigen::Index n_docs() const { return values.rows(); }
  Eigen::Index n_terms() const { return values.cols(); }
};

/// Raw term counts times the vocabulary's fitted idf, each row scaled to
/// unit Euclidean norm. Documents without any vocabulary term give an
/// all-zero row.
TfidfMatrix Vectorize(const std::vector<SegmentDoc> &docs, const Vocabulary &vocab);

/// Coordinate CSV `doc_id,term_index,value`, one line per nonzero.
std::string TfidfToCoordinateCsv(const TfidfMatrix &m);

}  // namespace sttopic

#endif  // STTOPIC_TEXTPREP_H_
