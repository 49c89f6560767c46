// sttopic/synth.h

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

#ifndef STTOPIC_SYNTH_H_
#define STTOPIC_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sttopic/corpus.h"

namespace sttopic {

/// Deterministic pronounceable filler word for `index` (e.g. "bakemo").
/// Distinct indices give distinct words; none is an English stopword.
std::string PseudoWord(int index);

struct PlantedCorpusOptions {
  int n_docs = 500;
  int n_topics = 5;
  int terms_per_topic = 20;
  int tokens_per_doc = 50;
  std::uint64_t seed = 1;
};

/// Every document draws all its tokens uniformly from the vocabulary of a
/// single planted topic. Topic vocabularies are disjoint.
struct PlantedCorpus {
  std::vector<SegmentDoc> docs;
  std::vector<int> topics;                       // planted topic per doc
  std::vector<std::vector<std::string>> topic_terms;
};

PlantedCorpus GeneratePlantedCorpus(const PlantedCorpusOptions &opts);

struct DemoCorpusOptions {
  int n_calls = 200;
  double min_call_s = 600.0;
  double max_call_s = 840.0;
  std::uint64_t seed = 11;
};

/// Synthetic conversational corpus shaped like prompted telephone calls:
/// each call has an assigned prompt, opens with introductions, and drifts
/// between the prompt and small talk. Utterances mix stopwords, common
/// conversational words and topical words from a mixture of topics.
struct DemoCorpus {
  std::vector<Utterance> utterances;
  std::map<std::string, std::string> call_prompts;  // call_id -> prompt
  std::vector<std::string> topic_names;             // planted topics
  std::vector<std::vector<std::string>> topic_terms;
  std::vector<std::string> prompts;                 // topics usable as prompts
};

DemoCorpus GenerateDemoCorpus(const DemoCorpusOptions &opts);

}  // namespace sttopic

#endif  // STTOPIC_SYNTH_H_
