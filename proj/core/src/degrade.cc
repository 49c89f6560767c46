// src/degrade.cc

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

#include "sttopic/degrade.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "sttopic/error.h"
#include "sttopic/random.h"

namespace sttopic {

namespace {

std::vector<std::string> SplitWhitespace(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(std::move(tok));
  return out;
}

// Discrete distribution over tokens, in lexicographic token order.
struct Pool {
  std::vector<std::string> tokens;
  std::vector<double> cumulative;  // ends at 1

  const std::string &Draw(SplitMix64 *rng) const {
    double u = rng->UniformDouble();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
    return tokens[std::min(i, tokens.size() - 1)];
  }
};

Pool BuildPool(const std::vector<SegmentDoc> &docs, const NoiseParams &noise) {
  std::map<std::string, double> weight;
  if (noise.pool == SubstitutionPool::kFixedList) {
    for (const auto &t : noise.fixed_pool) weight[t] += 1.0;
  } else {
    for (const auto &d : docs)
      for (auto &t : SplitWhitespace(d.text)) weight[t] += 1.0;
  }
  Pool pool;
  double total = 0.0;
  for (const auto &[t, w] : weight) total += w;
  double acc = 0.0;
  for (const auto &[t, w] : weight) {
    acc += w;
    pool.tokens.push_back(t);
    pool.cumulative.push_back(acc / total);
  }
  return pool;
}

}  // namespace

void ValidateNoiseParams(const NoiseParams &noise) {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(noise.p_drop) || !prob(noise.p_sub))
    throw UsageError("noise probabilities must be in [0, 1]");
  if (noise.p_drop + noise.p_sub > 1.0 + 1e-12)
    throw UsageError("p_drop + p_sub must not exceed 1");
  if (noise.pool == SubstitutionPool::kFixedList && noise.fixed_pool.empty() &&
      noise.p_sub > 0.0)
    throw UsageError("fixed substitution pool is empty");
}

std::vector<SegmentDoc> DegradeCorpus(const std::vector<SegmentDoc> &docs,
                                      const NoiseParams &noise) {
  ValidateNoiseParams(noise);
  std::vector<SegmentDoc> out(docs);
  if (noise.p_drop == 0.0 && noise.p_sub == 0.0) return out;

  const Pool pool = BuildPool(docs, noise);
  for (auto &doc : out) {
    SplitMix64 rng(DeriveSeed(noise.seed, doc.doc_id));
    std::string text;
    bool changed = false;
    for (auto &tok : SplitWhitespace(doc.text)) {
      const double u = rng.UniformDouble();
      if (u < noise.p_drop) {
        changed = true;
        continue;
      }
      if (u < noise.p_drop + noise.p_sub && !pool.tokens.empty()) {
        const std::string &sub = pool.Draw(&rng);
        changed = changed || sub != tok;
        tok = sub;
      }
      if (!text.empty()) text += ' ';
      text += tok;
    }
    if (changed) doc.text = std::move(text);
  }
  return out;
}

}  // namespace sttopic
