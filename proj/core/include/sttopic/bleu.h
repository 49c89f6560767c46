// sttopic/bleu.h

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

#ifndef STTOPIC_BLEU_H_
#define STTOPIC_BLEU_H_

#include <array>
#include <string>
#include <vector>

namespace sttopic {

inline constexpr int kBleuMaxOrder = 4;

struct BleuOptions {
  // Add-one smoothing of the 2..4-gram precisions.
  bool smooth = false;
};

struct BleuScore {
  double score = 0.0;  // 0..100
  std::array<double, kBleuMaxOrder> precisions{};
  std::array<long long, kBleuMaxOrder> matches{};
  std::array<long long, kBleuMaxOrder> totals{};
  double brevity_penalty = 0.0;
  long long hyp_len = 0;
  long long ref_len = 0;
};

/// Corpus BLEU-4. Text is lowercased, stripped of punctuation and split on
/// whitespace (no stopword or length filtering). Clipping uses the maximum
/// count of each n-gram over a segment's references; the effective
/// reference length of a segment is that of the reference closest in
/// length to the hypothesis, preferring the shorter one on ties.
///
/// Orders for which the hypotheses contain no n-grams at all are left out
/// of the geometric mean. Unsmoothed, any order with candidates but no
/// matches gives a score of 0.
BleuScore CorpusBleu(const std::vector<std::string> &hyps,
                     const std::vector<std::vector<std::string>> &refs,
                     const BleuOptions &opts = {});

/// Transposes K aligned reference streams into per-segment reference lists.
std::vector<std::vector<std::string>> TransposeReferences(
    const std::vector<std::vector<std::string>> &streams);

std::string BleuToJson(const BleuScore &s);

}  // namespace sttopic

#endif  // STTOPIC_BLEU_H_
