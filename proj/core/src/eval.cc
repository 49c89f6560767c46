// src/eval.cc

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

#include "sttopic/eval.h"

#include <algorithm>
#include <unordered_map>

#include "jsonl.h"
#include "sttopic/error.h"

namespace sttopic {

using internal::FormatFixed;
using internal::Json;

namespace {

// Index of each silver doc id; throws on duplicates.
std::unordered_map<std::string, std::size_t> IndexIds(const LabeledSet &set,
                                                      const char *which) {
  if (set.doc_ids.size() != set.labels.size())
    throw DataError(std::string(which) + " labels and doc ids differ in length");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < set.doc_ids.size(); ++i) {
    if (!index.emplace(set.doc_ids[i], i).second)
      throw DataError(std::string("duplicate doc_id '") + set.doc_ids[i] + "' in " + which +
                      " labels");
  }
  return index;
}

// For each prediction, the matching silver position.
std::vector<std::size_t> Align(const LabeledSet &pred, const LabeledSet &silver) {
  auto silver_index = IndexIds(silver, "silver");
  IndexIds(pred, "predicted");
  if (pred.doc_ids.size() != silver.doc_ids.size() ||
      std::any_of(pred.doc_ids.begin(), pred.doc_ids.end(),
                  [&](const std::string &id) { return !silver_index.count(id); })) {
    std::vector<std::string> a = pred.doc_ids, b = silver.doc_ids;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    std::string detail;
    if (ia != a.end() && (ib == b.end() || *ia < *ib))
      detail = "'" + *ia + "' is predicted but has no silver label";
    else
      detail = "'" + *ib + "' has a silver label but no prediction";
    throw DataError("label sets differ: " + detail);
  }
  std::vector<std::size_t> match;
  match.reserve(pred.doc_ids.size());
  for (const auto &id : pred.doc_ids) match.push_back(silver_index.at(id));
  return match;
}

int MaxLabel(const LabeledSet &set) {
  int m = -1;
  for (int l : set.labels) {
    if (l < 0) throw DataError("negative topic id " + std::to_string(l));
    m = std::max(m, l);
  }
  return m;
}

}  // namespace

const char *LabelSourceName(LabelSource source) {
  switch (source) {
    case LabelSource::kSilver: return "silver";
    case LabelSource::kSystem: return "system";
    case LabelSource::kAssignedPrompt: return "assigned-prompt";
  }
  return "system";
}

LabelSource ParseLabelSource(const std::string &name) {
  if (name == "silver") return LabelSource::kSilver;
  if (name == "system") return LabelSource::kSystem;
  if (name == "assigned-prompt") return LabelSource::kAssignedPrompt;
  throw UsageError("unknown label source '" + name + "'");
}

LabeledSet MakeLabeledSet(const std::vector<std::string> &doc_ids,
                          const LabelAssignment &assignment, LabelSource source) {
  if (doc_ids.size() != assignment.labels.size())
    throw DataError("label count does not match document count");
  return {doc_ids, assignment.labels, source, assignment.degenerate};
}

std::string LabelsToJsonl(const LabeledSet &set) {
  std::string out;
  for (std::size_t i = 0; i < set.doc_ids.size(); ++i) {
    Json obj = {{"doc_id", set.doc_ids[i]}, {"topic_id", set.labels[i]}};
    obj["degenerate"] = i < set.degenerate.size() && set.degenerate[i];
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void SaveLabels(const LabeledSet &set, const std::filesystem::path &path) {
  internal::WriteFile(path, LabelsToJsonl(set));
}

LabeledSet LoadLabels(const std::filesystem::path &path, LabelSource source) {
  LabeledSet set;
  set.source = source;
  internal::ForEachLine(path, [&](std::size_t n, const std::string &line) {
    Json obj = internal::ParseJsonLine(line, n);
    set.doc_ids.push_back(internal::RequireString(obj, "doc_id", n));
    long long label = internal::RequireInteger(obj, "topic_id", n);
    if (label < 0) throw FieldError(n, "topic_id", "must be >= 0");
    set.labels.push_back(static_cast<int>(label));
    auto it = obj.find("degenerate");
    set.degenerate.push_back(it != obj.end() && it->is_boolean() && it->get<bool>());
  });
  IndexIds(set, path.string().c_str());
  return set;
}

double Accuracy(const LabeledSet &pred, const LabeledSet &silver) {
  auto match = Align(pred, silver);
  if (match.empty()) throw DataError("cannot compute accuracy over zero documents");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < match.size(); ++i)
    if (pred.labels[i] == silver.labels[match[i]]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(match.size());
}

MajorityClass MajorityBaseline(const LabeledSet &silver) {
  if (silver.labels.empty()) throw DataError("majority baseline of an empty label set");
  auto hist = LabelHistogram(silver, MaxLabel(silver) + 1);
  auto best = std::max_element(hist.begin(), hist.end());  // first maximum
  return {static_cast<int>(best - hist.begin()),
          static_cast<double>(*best) / static_cast<double>(silver.labels.size())};
}

long long ConfusionMatrix::SilverCount(int topic) const {
  long long s = 0;
  for (long long c : counts[static_cast<std::size_t>(topic)]) s += c;
  return s;
}

long long ConfusionMatrix::Correct() const {
  long long s = 0;
  for (int i = 0; i < n_topics; ++i) s += counts[i][i];
  return s;
}

ConfusionMatrix Confusion(const LabeledSet &pred, const LabeledSet &silver,
                          int n_topics) {
  auto match = Align(pred, silver);
  int needed = std::max(MaxLabel(pred), MaxLabel(silver)) + 1;
  if (n_topics == 0) n_topics = needed;
  if (needed > n_topics) {
    throw DataError("label " + std::to_string(needed - 1) + " exceeds topic count " +
                    std::to_string(n_topics));
  }
  ConfusionMatrix cm;
  cm.n_topics = n_topics;
  cm.counts.assign(n_topics, std::vector<long long>(n_topics, 0));
  for (std::size_t i = 0; i < match.size(); ++i)
    ++cm.counts[silver.labels[match[i]]][pred.labels[i]];
  cm.total = static_cast<long long>(match.size());
  cm.row_normalized.assign(n_topics, std::vector<double>(n_topics, 0.0));
  for (int r = 0; r < n_topics; ++r) {
    long long row = cm.SilverCount(r);
    if (row == 0) continue;
    for (int c = 0; c < n_topics; ++c)
      cm.row_normalized[r][c] = static_cast<double>(cm.counts[r][c]) / row;
  }
  return cm;
}

std::vector<long long> LabelHistogram(const LabeledSet &set, int n_topics) {
  std::vector<long long> hist(static_cast<std::size_t>(std::max(n_topics, 0)), 0);
  for (int l : set.labels) {
    if (l < 0 || l >= n_topics)
      throw DataError("label " + std::to_string(l) + " outside [0, " +
                      std::to_string(n_topics) + ")");
    ++hist[static_cast<std::size_t>(l)];
  }
  return hist;
}

EvalReport Evaluate(const LabeledSet &pred, const LabeledSet &silver, int n_topics) {
  EvalReport r;
  r.confusion = Confusion(pred, silver, n_topics);
  const int t = r.confusion.n_topics;
  if (r.confusion.total == 0) throw DataError("cannot evaluate zero documents");
  r.accuracy = static_cast<double>(r.confusion.Correct()) / r.confusion.total;
  r.baseline = MajorityBaseline(silver);
  for (int i = 0; i < t; ++i) r.per_topic_recall.push_back(r.confusion.row_normalized[i][i]);
  r.silver_histogram = LabelHistogram(silver, t);
  r.predicted_histogram = LabelHistogram(pred, t);
  for (bool d : pred.degenerate) r.degenerate_predictions += d ? 1 : 0;
  return r;
}

std::string TopicLabel(const std::vector<std::string> &names, int topic_id) {
  if (topic_id >= 0 && topic_id < static_cast<int>(names.size()))
    return names[static_cast<std::size_t>(topic_id)];
  return "t" + std::to_string(topic_id + 1);
}

std::string EvalReportToJson(const EvalReport &r, const std::vector<std::string> &names) {
  const int t = r.confusion.n_topics;
  Json topics = Json::array();
  for (int i = 0; i < t; ++i) topics.push_back(TopicLabel(names, i));
  Json doc = {
      {"accuracy", r.accuracy},
      {"baseline", {{"topic_id", r.baseline.topic_id}, {"accuracy", r.baseline.fraction}}},
      {"per_topic_recall", r.per_topic_recall},
      {"topics", topics},
      {"confusion",
       {{"counts", r.confusion.counts},
        {"row_normalized", r.confusion.row_normalized},
        {"total", r.confusion.total}}},
      {"label_histograms",
       {{"silver", r.silver_histogram}, {"predicted", r.predicted_histogram}}},
      {"degenerate_predictions", r.degenerate_predictions},
  };
  return doc.dump(2) + "\n";
}

std::string ConfusionToCsv(const ConfusionMatrix &cm,
                           const std::vector<std::string> &names) {
  std::string out = "silver\\predicted";
  for (int c = 0; c < cm.n_topics; ++c) out += "," + TopicLabel(names, c);
  out += '\n';
  for (int r = 0; r < cm.n_topics; ++r) {
    out += TopicLabel(names, r);
    const bool present = cm.SilverCount(r) > 0;
    for (int c = 0; c < cm.n_topics; ++c) {
      out += ',';
      if (present) out += FormatFixed(100.0 * cm.row_normalized[r][c], 1);
    }
    out += '\n';
  }
  return out;
}

std::string RecallToCsv(const EvalReport &r, const std::vector<std::string> &names) {
  std::string out = "topic_id,topic,silver_count,recall_pct\n";
  for (int i = 0; i < r.confusion.n_topics; ++i) {
    long long n = r.confusion.SilverCount(i);
    out += std::to_string(i) + "," + TopicLabel(names, i) + "," + std::to_string(n) + ",";
    if (n > 0) out += FormatFixed(100.0 * r.per_topic_recall[i], 1);
    out += '\n';
  }
  return out;
}

void WriteEvalReport(const EvalReport &report, const std::filesystem::path &dir,
                     const std::vector<std::string> &names) {
  internal::WriteFile(dir / "report.json", EvalReportToJson(report, names));
  internal::WriteFile(dir / "confusion.csv", ConfusionToCsv(report.confusion, names));
  internal::WriteFile(dir / "recall.csv", RecallToCsv(report, names));
}

DriftTimeline ComputeDriftTimeline(const LabeledSet &labels,
                                   const std::vector<SegmentDoc> &segs,
                                   const std::set<std::string> &call_filter,
                                   int n_topics) {
  std::unordered_map<std::string, const SegmentDoc *> by_id;
  for (const auto &s : segs) by_id.emplace(s.doc_id, &s);
  IndexIds(labels, "timeline");

  const int needed = MaxLabel(labels) + 1;
  if (n_topics == 0) n_topics = needed;
  if (needed > n_topics) throw DataError("label exceeds topic count");

  DriftTimeline tl;
  tl.n_topics = n_topics;
  std::map<int, std::vector<long long>> rows;
  std::set<std::string> calls;
  std::vector<long long> overall(static_cast<std::size_t>(n_topics), 0);
  for (std::size_t i = 0; i < labels.doc_ids.size(); ++i) {
    auto it = by_id.find(labels.doc_ids[i]);
    if (it == by_id.end())
      throw DataError("doc_id '" + labels.doc_ids[i] + "' is not in the segment list");
    const SegmentDoc &seg = *it->second;
    if (!call_filter.empty() && !call_filter.count(seg.call_id)) continue;
    auto &row = rows[seg.segment_index];
    if (row.empty()) row.assign(static_cast<std::size_t>(n_topics), 0);
    ++row[static_cast<std::size_t>(labels.labels[i])];
    ++overall[static_cast<std::size_t>(labels.labels[i])];
    calls.insert(seg.call_id);
    ++tl.n_segments;
  }
  tl.n_calls = calls.size();
  for (auto &[index, counts] : rows) {
    long long total = 0;
    for (long long c : counts) total += c;
    std::vector<double> frac;
    for (long long c : counts) frac.push_back(static_cast<double>(c) / total);
    tl.segment_indices.push_back(index);
    tl.counts.push_back(counts);
    tl.fractions.push_back(std::move(frac));
  }
  for (long long c : overall)
    tl.overall.push_back(tl.n_segments ? static_cast<double>(c) / tl.n_segments : 0.0);
  return tl;
}

std::string TimelineToCsv(const DriftTimeline &tl) {
  std::string out = "segment_index,topic_id,fraction\n";
  for (std::size_t r = 0; r < tl.segment_indices.size(); ++r) {
    for (int t = 0; t < tl.n_topics; ++t) {
      out += std::to_string(tl.segment_indices[r]) + "," + std::to_string(t) + "," +
             FormatFixed(tl.fractions[r][static_cast<std::size_t>(t)], 6) + "\n";
    }
  }
  return out;
}

std::map<int, double> PromptHistogram(const LabeledSet &assigned) {
  std::map<int, double> hist;
  if (assigned.labels.empty()) return hist;
  for (int l : assigned.labels) hist[l] += 1.0;
  for (auto &[label, v] : hist) v /= static_cast<double>(assigned.labels.size());
  return hist;
}

}  // namespace sttopic
