// sttopic/degrade.h

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

#ifndef STTOPIC_DEGRADE_H_
#define STTOPIC_DEGRADE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sttopic/corpus.h"

namespace sttopic {

enum class SubstitutionPool {
  kCorpusUnigram,  // draw replacements by corpus token frequency
  kFixedList,      // draw uniformly from NoiseParams::fixed_pool
};

/// Token-level corruption applied independently to every whitespace token.
/// One uniform draw u per token: u < p_drop deletes it, p_drop <= u <
/// p_drop + p_sub replaces it, anything else keeps it.
struct NoiseParams {
  double p_drop = 0.0;
  double p_sub = 0.0;
  SubstitutionPool pool = SubstitutionPool::kCorpusUnigram;
  std::vector<std::string> fixed_pool;
  std::uint64_t seed = 0;
};

/// Throws UsageError when the probabilities are outside [0, 1], sum above
/// 1, or a fixed pool is requested but empty.
void ValidateNoiseParams(const NoiseParams &noise);

/// Returns corrupted copies of `docs` with ids and order preserved. Each
/// document draws from its own stream, seeded from (noise.seed, doc_id), so
/// the result does not depend on document order. Documents left untouched
/// keep their text byte-for-byte; changed ones are re-joined with single
/// spaces.
std::vector<SegmentDoc> DegradeCorpus(const std::vector<SegmentDoc> &docs,
                                      const NoiseParams &noise);

}  // namespace sttopic

#endif  // STTOPIC_DEGRADE_H_
