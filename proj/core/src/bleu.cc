// src/bleu.cc

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

#include "sttopic/bleu.h"

#include <cmath>
#include <cstdlib>
#include <map>

#include "jsonl.h"
#include "sttopic/error.h"
#include "sttopic/textprep.h"

namespace sttopic {

namespace {

using NgramCounts = std::map<std::vector<std::string>, long long>;

const TokenizerOptions kBleuTokenizer{/*remove_stopwords=*/false, /*min_token_length=*/1};

NgramCounts CountNgrams(const std::vector<std::string> &toks, int n) {
  NgramCounts counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i)
    ++counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

}  // namespace

BleuScore CorpusBleu(const std::vector<std::string> &hyps,
                     const std::vector<std::vector<std::string>> &refs,
                     const BleuOptions &opts) {
  if (hyps.size() != refs.size()) {
    throw DataError("BLEU: " + std::to_string(hyps.size()) + " hypotheses but " +
                    std::to_string(refs.size()) + " reference sets");
  }
  BleuScore s;
  for (std::size_t seg = 0; seg < hyps.size(); ++seg) {
    if (refs[seg].empty())
      throw DataError("BLEU: segment " + std::to_string(seg) + " has no reference");
    const auto hyp = Tokenize(hyps[seg], kBleuTokenizer);
    std::vector<std::vector<std::string>> ref_toks;
    for (const auto &r : refs[seg]) ref_toks.push_back(Tokenize(r, kBleuTokenizer));

    const long long c = static_cast<long long>(hyp.size());
    long long best = -1;
    for (const auto &r : ref_toks) {
      const long long len = static_cast<long long>(r.size());
      if (best < 0 || std::llabs(len - c) < std::llabs(best - c) ||
          (std::llabs(len - c) == std::llabs(best - c) && len < best))
        best = len;
    }
    s.hyp_len += c;
    s.ref_len += best;

    for (int n = 1; n <= kBleuMaxOrder; ++n) {
      NgramCounts hyp_counts = CountNgrams(hyp, n);
      NgramCounts max_ref;
      for (const auto &r : ref_toks)
        for (const auto &[gram, cnt] : CountNgrams(r, n))
          max_ref[gram] = std::max(max_ref[gram], cnt);
      for (const auto &[gram, cnt] : hyp_counts) {
        s.totals[n - 1] += cnt;
        auto it = max_ref.find(gram);
        if (it != max_ref.end()) s.matches[n - 1] += std::min(cnt, it->second);
      }
    }
  }

  if (s.hyp_len == 0) return s;
  s.brevity_penalty =
      s.hyp_len < s.ref_len
          ? std::exp(1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len))
          : 1.0;

  double log_sum = 0.0;
  int orders = 0;
  bool zero = false;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (s.totals[n] == 0) continue;
    double m = static_cast<double>(s.matches[n]);
    double t = static_cast<double>(s.totals[n]);
    if (opts.smooth && n > 0) {
      m += 1.0;
      t += 1.0;
    }
    s.precisions[n] = m / t;
    if (m == 0.0) {
      zero = true;
      continue;
    }
    log_sum += std::log(s.precisions[n]);
    ++orders;
  }
  if (zero || orders == 0) return s;
  s.score = 100.0 * s.brevity_penalty * std::exp(log_sum / orders);
  // exp(log x) can overshoot by an ulp.
  if (s.score > 100.0) s.score = 100.0;
  return s;
}

std::vector<std::vector<std::string>> TransposeReferences(
    const std::vector<std::vector<std::string>> &streams) {
  if (streams.empty()) return {};
  const std::size_t n = streams.front().size();
  for (const auto &s : streams) {
    if (s.size() != n)
      throw DataError("reference files differ in line count (" + std::to_string(n) +
                      " vs " + std::to_string(s.size()) + ")");
  }
  std::vector<std::vector<std::string>> out(n);
  for (const auto &s : streams)
    for (std::size_t i = 0; i < n; ++i) out[i].push_back(s[i]);
  return out;
}

std::string BleuToJson(const BleuScore &s) {
  internal::Json doc = {{"bleu", s.score},
                        {"precisions", s.precisions},
                        {"matches", s.matches},
                        {"totals", s.totals},
                        {"brevity_penalty", s.brevity_penalty},
                        {"hyp_len", s.hyp_len},
                        {"ref_len", s.ref_len}};
  return doc.dump(2) + "\n";
}

}  // namespace sttopic
