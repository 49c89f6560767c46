// sttopic/pipeline.h

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

#ifndef STTOPIC_PIPELINE_H_
#define STTOPIC_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sttopic/corpus.h"
#include "sttopic/degrade.h"
#include "sttopic/eval.h"
#include "sttopic/nmf.h"
#include "sttopic/synth.h"
#include "sttopic/textprep.h"
#include "sttopic/topics.h"

namespace sttopic {

struct FitOptions {
  VocabularyOptions vocab;
  NmfConfig nmf;
  std::optional<std::vector<std::string>> names;
};

struct FitResult {
  TopicModel model;
  NmfFit fit;
};

/// Vocabulary selection, tf-idf and NMF over training documents.
FitResult FitTopicModel(const std::vector<SegmentDoc> &docs, const FitOptions &opts);

/// Argmax of the inferred W' for each document.
LabeledSet LabelDocuments(const TopicModel &model, const std::vector<SegmentDoc> &docs,
                          LabelSource source);

/// `topic_id,topic,rank,term,weight` for the k heaviest terms of every
/// topic. Degenerate topics are listed with no terms.
std::string TopTermsToCsv(const TopicModel &model, int k);

/// Names learned topics after the planted topic that holds most of their
/// weight, matching greedily so each planted name is used at most once.
/// Unmatched topics keep their "t<id+1>" name.
std::vector<std::string> NameTopicsByPlantedTerms(
    const TopicModel &model, const std::vector<std::vector<std::string>> &planted_terms,
    const std::vector<std::string> &planted_names);

struct NoiseLevel {
  std::string name;
  double p_drop = 0.0;
  double p_sub = 0.0;
};

struct LadderRow {
  NoiseLevel level;
  double bleu = 0.0;
  double accuracy = 0.0;
};

struct DemoSummary {
  std::vector<LadderRow> ladder;
  MajorityClass baseline;
  std::size_t n_train_docs = 0;
  std::size_t n_eval_docs = 0;
  std::size_t vocab_size = 0;
  int n_topics = 0;
};

/// The noise ladder run by the demo, gold text first.
std::vector<NoiseLevel> DemoNoiseLadder();

/// Generates the synthetic corpus and runs every stage of the pipeline,
/// writing all intermediate files, reports and CSV tables to `out_dir`.
/// Output is a pure function of `seed`.
DemoSummary RunDemo(const std::filesystem::path &out_dir, std::uint64_t seed);

}  // namespace sttopic

#endif  // STTOPIC_PIPELINE_H_
