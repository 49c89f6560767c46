// sttopic/eval.h

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

#ifndef STTOPIC_EVAL_H_
#define STTOPIC_EVAL_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sttopic/corpus.h"
#include "sttopic/topics.h"

namespace sttopic {

enum class LabelSource { kSilver, kSystem, kAssignedPrompt };

const char *LabelSourceName(LabelSource source);
LabelSource ParseLabelSource(const std::string &name);

/// Labels keyed by document id. For assigned prompts the ids are call ids.
struct LabeledSet {
  std::vector<std::string> doc_ids;
  std::vector<int> labels;
  LabelSource source = LabelSource::kSystem;
  std::vector<bool> degenerate;  // empty, or one flag per label
};

LabeledSet MakeLabeledSet(const std::vector<std::string> &doc_ids,
                          const LabelAssignment &assignment, LabelSource source);

/// JSON lines: {"doc_id": ..., "topic_id": ..., "degenerate": bool}.
std::string LabelsToJsonl(const LabeledSet &set);
void SaveLabels(const LabeledSet &set, const std::filesystem::path &path);
LabeledSet LoadLabels(const std::filesystem::path &path, LabelSource source);

/// Fraction of documents whose labels agree, after matching by doc_id.
/// Throws DataError naming the first id present in only one set.
double Accuracy(const LabeledSet &pred, const LabeledSet &silver);

struct MajorityClass {
  int topic_id = 0;
  double fraction = 0.0;
};

/// Most frequent label (ties to the lowest id) and its share.
MajorityClass MajorityBaseline(const LabeledSet &silver);

/// Rows are silver labels, columns predictions.
struct ConfusionMatrix {
  int n_topics = 0;
  std::vector<std::vector<long long>> counts;
  // Row-normalized counts. Rows of absent silver classes are all zero.
  std::vector<std::vector<double>> row_normalized;
  long long total = 0;

  long long SilverCount(int topic) const;
  long long Correct() const;
};

/// `n_topics` of 0 sizes the matrix from the largest label seen.
ConfusionMatrix Confusion(const LabeledSet &pred, const LabeledSet &silver,
                          int n_topics = 0);

std::vector<long long> LabelHistogram(const LabeledSet &set, int n_topics);

struct EvalReport {
  double accuracy = 0.0;
  MajorityClass baseline;
  std::vector<double> per_topic_recall;
  ConfusionMatrix confusion;
  std::vector<long long> silver_histogram;
  std::vector<long long> predicted_histogram;
  long long degenerate_predictions = 0;
};

EvalReport Evaluate(const LabeledSet &pred, const LabeledSet &silver, int n_topics = 0);

/// Topic display names; falls back to "t<id+1>" past the end of `names`.
std::string TopicLabel(const std::vector<std::string> &names, int topic_id);

std::string EvalReportToJson(const EvalReport &report,
                             const std::vector<std::string> &names = {});
/// Row-normalized percentages with one decimal; absent silver rows blank.
std::string ConfusionToCsv(const ConfusionMatrix &cm,
                           const std::vector<std::string> &names = {});
std::string RecallToCsv(const EvalReport &report,
                        const std::vector<std::string> &names = {});

/// Writes report.json, confusion.csv and recall.csv into `dir`.
void WriteEvalReport(const EvalReport &report, const std::filesystem::path &dir,
                     const std::vector<std::string> &names = {});

/// Label distribution per segment index over a set of calls.
struct DriftTimeline {
  int n_topics = 0;
  std::size_t n_calls = 0;
  std::vector<int> segment_indices;               // ascending
  std::vector<std::vector<long long>> counts;     // [row][topic]
  std::vector<std::vector<double>> fractions;     // rows sum to 1
  std::vector<double> overall;                    // shares over all segments
  long long n_segments = 0;
};

/// Resolves every labeled doc to its (call, segment index) through `segs`
/// and tallies labels per index over calls in `call_filter` (all calls when
/// the filter is empty). Throws DataError for an unresolvable doc_id.
DriftTimeline ComputeDriftTimeline(const LabeledSet &labels,
                                   const std::vector<SegmentDoc> &segs,
                                   const std::set<std::string> &call_filter,
                                   int n_topics = 0);

/// `segment_index,topic_id,fraction`, every topic listed for every index.
std::string TimelineToCsv(const DriftTimeline &timeline);

/// Share of calls per label.
std::map<int, double> PromptHistogram(const LabeledSet &assigned);

}  // namespace sttopic

#endif  // STTOPIC_EVAL_H_
