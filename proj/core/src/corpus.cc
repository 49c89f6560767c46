// src/corpus.cc

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

#include "sttopic/corpus.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "jsonl.h"
#include "sttopic/error.h"
#include "sttopic/random.h"

namespace sttopic {

using internal::Json;

std::string MakeDocId(const std::string &call_id, int segment_index) {
  return call_id + "#" + std::to_string(segment_index);
}

Utterance ParseUtterance(const std::string &line, std::size_t line_no) {
  Json obj = internal::ParseJsonLine(line, line_no);
  Utterance u;
  u.call_id = internal::RequireString(obj, "call_id", line_no);
  u.speaker = internal::RequireString(obj, "speaker", line_no);
  u.start_s = internal::RequireNumber(obj, "start_s", line_no);
  u.end_s = internal::RequireNumber(obj, "end_s", line_no);
  u.translation = internal::RequireString(obj, "translation", line_no);
  if (auto it = obj.find("references"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw FieldError(line_no, "references", "expected an array");
    for (const Json &r : *it) {
      if (!r.is_string())
        throw FieldError(line_no, "references", "expected an array of strings");
      u.references.push_back(r.get<std::string>());
    }
  }
  if (u.call_id.empty()) throw FieldError(line_no, "call_id", "must be nonempty");
  if (!std::isfinite(u.start_s) || u.start_s < 0.0)
    throw FieldError(line_no, "start_s", "must be a finite number >= 0");
  if (!std::isfinite(u.end_s) || !(u.end_s > u.start_s))
    throw FieldError(line_no, "end_s", "must be greater than start_s");
  return u;
}

std::vector<Utterance> LoadCorpus(const std::filesystem::path &path) {
  std::vector<Utterance> utts;
  internal::ForEachLine(path, [&](std::size_t n, const std::string &line) {
    utts.push_back(ParseUtterance(line, n));
  });
  return utts;
}

std::string UtteranceToJson(const Utterance &u) {
  Json obj = {{"call_id", u.call_id},     {"speaker", u.speaker},
              {"start_s", u.start_s},     {"end_s", u.end_s},
              {"translation", u.translation}};
  if (!u.references.empty()) obj["references"] = u.references;
  return obj.dump();
}

void SaveCorpus(const std::vector<Utterance> &utts,
                const std::filesystem::path &path) {
  std::string out;
  for (const auto &u : utts) {
    out += UtteranceToJson(u);
    out += '\n';
  }
  internal::WriteFile(path, out);
}

std::vector<SegmentDoc> SegmentCalls(const std::vector<Utterance> &utts,
                                     double window_s) {
  if (!(window_s > 0.0)) throw UsageError("segment window must be > 0 seconds");

  std::vector<std::string> call_order;
  std::unordered_map<std::string, std::map<long long, std::vector<std::size_t>>> buckets;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const Utterance &u = utts[i];
    auto [it, inserted] = buckets.try_emplace(u.call_id);
    if (inserted) call_order.push_back(u.call_id);
    long long index = static_cast<long long>(std::floor(u.start_s / window_s));
    it->second[index].push_back(i);
  }

  std::vector<SegmentDoc> segs;
  for (const std::string &call : call_order) {
    for (auto &[index, members] : buckets[call]) {
      std::stable_sort(members.begin(), members.end(),
                       [&](std::size_t a, std::size_t b) {
                         if (utts[a].start_s != utts[b].start_s)
                           return utts[a].start_s < utts[b].start_s;
                         return utts[a].speaker < utts[b].speaker;
                       });
      SegmentDoc doc;
      doc.call_id = call;
      doc.segment_index = static_cast<int>(index);
      doc.doc_id = MakeDocId(call, doc.segment_index);
      doc.n_utterances = members.size();
      for (std::size_t m : members) {
        const std::string &t = utts[m].translation;
        if (t.empty()) continue;
        if (!doc.text.empty()) doc.text += ' ';
        doc.text += t;
      }
      segs.push_back(std::move(doc));
    }
  }
  return segs;
}

std::string SegmentsToJsonl(const std::vector<SegmentDoc> &segs) {
  std::string out;
  for (const auto &s : segs) {
    Json obj = {{"doc_id", s.doc_id},
                {"call_id", s.call_id},
                {"segment_index", s.segment_index},
                {"text", s.text}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void SaveSegments(const std::vector<SegmentDoc> &segs,
                  const std::filesystem::path &path) {
  internal::WriteFile(path, SegmentsToJsonl(segs));
}

std::vector<SegmentDoc> LoadSegments(const std::filesystem::path &path) {
  std::vector<SegmentDoc> segs;
  std::set<std::string> seen;
  internal::ForEachLine(path, [&](std::size_t n, const std::string &line) {
    Json obj = internal::ParseJsonLine(line, n);
    SegmentDoc s;
    s.doc_id = internal::RequireString(obj, "doc_id", n);
    s.call_id = internal::RequireString(obj, "call_id", n);
    long long index = internal::RequireInteger(obj, "segment_index", n);
    if (index < 0) throw FieldError(n, "segment_index", "must be >= 0");
    s.segment_index = static_cast<int>(index);
    s.text = internal::RequireString(obj, "text", n);
    if (!seen.insert(s.doc_id).second)
      throw FieldError(n, "doc_id", "duplicate doc_id '" + s.doc_id + "'");
    segs.push_back(std::move(s));
  });
  return segs;
}

std::vector<CallDuration> CallDurations(const std::vector<Utterance> &utts) {
  std::map<std::string, double> dur;
  for (const auto &u : utts) {
    double &d = dur[u.call_id];
    d = std::max(d, u.end_s);
  }
  return {dur.begin(), dur.end()};
}

CorpusSplit SampleSplit(const std::vector<CallDuration> &calls,
                        double target_seconds, std::uint64_t seed,
                        const std::string &name) {
  if (target_seconds < 0.0) throw UsageError("split target must be >= 0 seconds");
  double available = 0.0;
  for (const auto &c : calls) available += c.second;
  if (available < target_seconds) {
    throw DataError("corpus has " + internal::FormatFixed(available, 1) +
                    " s but split '" + name + "' needs " +
                    internal::FormatFixed(target_seconds, 1) + " s (short by " +
                    internal::FormatFixed(target_seconds - available, 1) + " s)");
  }

  std::vector<CallDuration> order(calls);
  std::sort(order.begin(), order.end());
  SplitMix64 rng(seed);
  Shuffle(&order, &rng);

  CorpusSplit split;
  split.name = name;
  split.seed = seed;
  for (const auto &[id, seconds] : order) {
    if (split.total_seconds >= target_seconds) break;
    split.call_ids.push_back(id);
    split.total_seconds += seconds;
  }
  std::sort(split.call_ids.begin(), split.call_ids.end());
  return split;
}

CorpusSplit ComplementSplit(const std::vector<CallDuration> &calls,
                            const std::vector<CorpusSplit> &taken,
                            const std::string &name) {
  std::set<std::string> used;
  for (const auto &s : taken) used.insert(s.call_ids.begin(), s.call_ids.end());
  CorpusSplit rest;
  rest.name = name;
  rest.seed = taken.empty() ? 0 : taken.front().seed;
  std::vector<CallDuration> sorted(calls);
  std::sort(sorted.begin(), sorted.end());
  for (const auto &[id, seconds] : sorted) {
    if (used.count(id)) continue;
    rest.call_ids.push_back(id);
    rest.total_seconds += seconds;
  }
  return rest;
}

std::string SplitsToJson(const std::vector<CorpusSplit> &splits) {
  Json arr = Json::array();
  for (const auto &s : splits) {
    arr.push_back({{"name", s.name},
                   {"call_ids", s.call_ids},
                   {"total_seconds", s.total_seconds},
                   {"seed", s.seed}});
  }
  return Json{{"splits", arr}}.dump(2) + "\n";
}

std::vector<CorpusSplit> LoadSplits(const std::filesystem::path &path) {
  std::vector<CorpusSplit> out;
  try {
    Json doc = Json::parse(internal::ReadFile(path));
    for (const Json &s : doc.at("splits")) {
      CorpusSplit split;
      split.name = s.at("name").get<std::string>();
      split.call_ids = s.at("call_ids").get<std::vector<std::string>>();
      split.total_seconds = s.at("total_seconds").get<double>();
      split.seed = s.at("seed").get<std::uint64_t>();
      out.push_back(std::move(split));
    }
  } catch (const Json::exception &e) {
    throw DataError("malformed split file '" + path.string() + "': " + e.what());
  }
  return out;
}

std::vector<SegmentDoc> FilterByCalls(const std::vector<SegmentDoc> &segs,
                                      const std::vector<std::string> &call_ids) {
  std::set<std::string> keep(call_ids.begin(), call_ids.end());
  std::vector<SegmentDoc> out;
  for (const auto &s : segs)
    if (keep.count(s.call_id)) out.push_back(s);
  return out;
}

}  // namespace sttopic
