// sttopic/corpus.h

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

#ifndef STTOPIC_CORPUS_H_
#define STTOPIC_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sttopic {

/// One translated utterance of a call. `translation` may be empty.
struct Utterance {
  std::string call_id;
  std::string speaker;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string translation;
  std::vector<std::string> references;  // extra human references, if any
};

/// A fixed-duration slice of a call, the unit we classify.
struct SegmentDoc {
  std::string doc_id;  // "<call_id>#<segment_index>"
  std::string call_id;
  int segment_index = 0;
  std::string text;
  // Number of utterances merged into this segment. Not serialized.
  std::size_t n_utterances = 0;
};

/// A set of calls drawn by SampleSplit.
struct CorpusSplit {
  std::string name;
  std::vector<std::string> call_ids;  // sorted, unique
  double total_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// (call_id, duration in seconds)
using CallDuration = std::pair<std::string, double>;

inline constexpr double kDefaultWindowSeconds = 60.0;

std::string MakeDocId(const std::string &call_id, int segment_index);

/// Parses a JSON-lines utterance file. Blank lines are skipped; line
/// numbers in errors are 1-based physical lines.
std::vector<Utterance> LoadCorpus(const std::filesystem::path &path);

/// Parses a single utterance record; `line_no` is only used in errors.
Utterance ParseUtterance(const std::string &line, std::size_t line_no);
std::string UtteranceToJson(const Utterance &u);
void SaveCorpus(const std::vector<Utterance> &utts, const std::filesystem::path &path);

/// Assigns every utterance to window floor(start_s / window_s) of its call
/// and joins the member translations with single spaces in (start_s,
/// speaker) order. Calls appear in order of first occurrence in `utts`,
/// segments in increasing index; empty windows are omitted.
std::vector<SegmentDoc> SegmentCalls(const std::vector<Utterance> &utts,
                                     double window_s = kDefaultWindowSeconds);

std::vector<SegmentDoc> LoadSegments(const std::filesystem::path &path);
void SaveSegments(const std::vector<SegmentDoc> &segs,
                  const std::filesystem::path &path);
std::string SegmentsToJsonl(const std::vector<SegmentDoc> &segs);

/// Per-call duration, taken as the largest utterance end time. Calls are
/// returned sorted by call_id.
std::vector<CallDuration> CallDurations(const std::vector<Utterance> &utts);

/// Draws calls for a split of at least `target_seconds`.
///
/// The calls are first sorted by call_id, then shuffled with SplitMix64
/// seeded by `seed` (Fisher-Yates from the back), and taken greedily from
/// the front of the shuffled order until the total reaches the target.
/// The shuffled order does not depend on the target, so splits drawn with
/// the same seed for decreasing targets are nested.
CorpusSplit SampleSplit(const std::vector<CallDuration> &calls,
                        double target_seconds, std::uint64_t seed,
                        const std::string &name = "split");

/// Calls of `calls` that are in none of `taken`, as a split named `name`.
CorpusSplit ComplementSplit(const std::vector<CallDuration> &calls,
                            const std::vector<CorpusSplit> &taken,
                            const std::string &name);

std::string SplitsToJson(const std::vector<CorpusSplit> &splits);
std::vector<CorpusSplit> LoadSplits(const std::filesystem::path &path);

/// Segments whose call belongs to `split`, in input order.
std::vector<SegmentDoc> FilterByCalls(const std::vector<SegmentDoc> &segs,
                                      const std::vector<std::string> &call_ids);

}  // namespace sttopic

#endif  // STTOPIC_CORPUS_H_
