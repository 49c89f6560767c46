// sttopic/topics.h

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

#ifndef STTOPIC_TOPICS_H_
#define STTOPIC_TOPICS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sttopic/error.h"
#include "sttopic/nmf.h"
#include "sttopic/textprep.h"

namespace sttopic {

inline constexpr int kModelFormatVersion = 1;

/// A fitted topic dictionary: the vocabulary it is bound to, the topic x
/// term matrix H and optional human-readable topic names.
struct TopicModel {
  Vocabulary vocab;
  TopicTermMatrix h;
  std::optional<std::vector<std::string>> names;
  NmfConfig config;
  VocabularyOptions vocab_options;
  std::string fingerprint;  // hex SHA-256 of the canonical payload

  int n_topics() const { return static_cast<int>(h.values.rows()); }
  int n_terms() const { return static_cast<int>(h.values.cols()); }
  std::string TopicName(int topic_id) const;
};

/// Builds a model and stamps its fingerprint. Throws if the shapes or the
/// number of names disagree.
TopicModel MakeTopicModel(Vocabulary vocab, TopicTermMatrix h, NmfConfig config,
                          VocabularyOptions vocab_options,
                          std::optional<std::vector<std::string>> names = std::nullopt);

/// Recomputes the fingerprint from the model contents.
std::string ComputeFingerprint(const TopicModel &model);

struct TopicSummary {
  int topic_id = 0;
  std::vector<std::pair<std::string, double>> top_terms;
};

/// The k heaviest terms of a topic; equal weights are ordered by term.
/// Throws UsageError for a bad topic id or k, DataError("degenerate topic")
/// when the topic row is all zero.
TopicSummary TopTerms(const TopicModel &model, int topic_id, int k);

struct LabelAssignment {
  std::vector<int> labels;
  std::vector<bool> degenerate;  // row was all zero, labeled 0
};

/// Per-row argmax, ties to the lowest topic index.
LabelAssignment AssignLabels(const DocTopicMatrix &w);
LabelAssignment AssignLabels(const DenseMatrix &w);

/// Model file errors. Each failure mode has its own type.
class ModelFormatError : public DataError {
 public:
  using DataError::DataError;
};
class CorruptModelError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};
class ModelVersionError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};
class ModelHashError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

std::string ModelToJson(const TopicModel &model);
TopicModel ModelFromJson(const std::string &json);
void SaveModel(const TopicModel &model, const std::filesystem::path &path);
TopicModel LoadModel(const std::filesystem::path &path);

/// Infers W' for `docs` against the model's vocabulary and H.
DocTopicMatrix InferTopics(const TopicModel &model, const std::vector<SegmentDoc> &docs);

}  // namespace sttopic

#endif  // STTOPIC_TOPICS_H_
