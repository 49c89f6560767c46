// src/synth.cc

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

#include "sttopic/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "sttopic/error.h"
#include "sttopic/random.h"

namespace sttopic {

namespace {

constexpr char kConsonants[] = "bdfgklmnprstvz";
constexpr char kVowels[] = "aeiou";
constexpr std::uint64_t kNumConsonants = 14, kNumVowels = 5;
constexpr std::uint64_t kSyllables = kNumConsonants * kNumVowels;
constexpr std::uint64_t kPseudoSpace = kSyllables * kSyllables * kSyllables * kNumConsonants;

// Cumulative Zipf weights 1 / (rank + 1)^s, normalized.
std::vector<double> ZipfCdf(std::size_t n, double s) {
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), s);
    cdf[r] = acc;
  }
  for (double &c : cdf) c /= acc;
  return cdf;
}

std::size_t DrawFromCdf(const std::vector<double> &cdf, SplitMix64 *rng) {
  double u = rng->UniformDouble();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

double UniformIn(SplitMix64 *rng, double lo, double hi) {
  return lo + (hi - lo) * rng->UniformDouble();
}

struct DemoTopic {
  const char *name;
  bool prompt;
  std::vector<const char *> seeds;
  int size;       // vocabulary size after padding with pseudo-words
  double zipf_s;  // skew of within-topic term use
};

// Planted topics of the demo corpus. Seed words lead each vocabulary.
const std::vector<DemoTopic> &DemoTopics() {
  static const std::vector<DemoTopic> topics = {
      {"family-misc", false,
       {"married", "kids", "huh", "love", "three", "children", "wife", "husband",
        "daughter", "son", "brother", "sister", "mother", "father", "family", "house",
        "years", "school", "weekend", "cousins", "grandmother", "birthday", "cooking",
        "dinner", "neighbors", "vacation", "beach", "friends", "baby", "parents"},
       250, 0.8},
      {"music", true,
       {"music", "listen", "dance", "listening", "hear", "songs", "song", "band", "radio",
        "concert", "salsa", "guitar", "singer", "rock", "jazz", "classical", "albums",
        "lyrics", "piano", "rhythm"},
       120, 1.0},
      {"intro-misc", false,
       {"hello", "fine", "name", "hi", "york", "calling", "speaking", "topic", "nice",
        "meet", "philadelphia", "evening", "pleasure", "introduce", "morning", "pennsylvania"},
       90, 1.0},
      {"religion", true,
       {"religion", "god", "religions", "believe", "bible", "church", "catholic",
        "religious", "pray", "faith", "jesus", "priest", "christian", "mass", "spiritual"},
       120, 1.0},
      {"movies-tv", true,
       {"movies", "movie", "watch", "theater", "television", "tv", "films", "actor",
        "cinema", "channel", "comedy", "series", "netflix", "actress", "cartoons"},
       120, 1.0},
      {"welfare", true,
       {"insurance", "money", "pay", "expensive", "health", "doctor", "hospital",
        "medical", "cost", "benefits", "taxes", "welfare", "medicine", "salary", "bills"},
       120, 1.0},
      {"languages-misc", true,
       {"english", "spanish", "speak", "learn", "language", "languages", "accent",
        "translate", "words", "class", "grammar", "bilingual", "vocabulary", "teacher"},
       120, 1.0},
      {"tech-marketing", true,
       {"phone", "cell", "computer", "call", "number", "telephone", "calls", "cellular",
        "company", "email", "texting", "minutes", "plan", "advertising", "telemarketers"},
       120, 1.0},
      {"dating", true,
       {"internet", "met", "old", "dating", "someone", "boyfriend", "girlfriend", "date",
        "relationship", "online", "chat", "single", "romantic", "couple", "profile"},
       120, 1.0},
      {"politics", true,
       {"power", "world", "positive", "china", "agree", "war", "president", "country",
        "countries", "government", "vote", "election", "economy", "congress", "peace"},
       120, 1.0},
  };
  return topics;
}

// Everyday conversational words used in every topic.
const std::vector<const char *> kBackground = {
    "yeah",  "know",   "like",  "think", "really", "people", "mean",  "right",
    "okay",  "good",   "time",  "going", "say",    "thing",  "things", "lot",
    "uh",    "um",     "yes",   "well",  "much",   "want",   "see",   "sure",
    "maybe", "little", "way",   "kind",  "always", "never",  "said",  "got"};

const std::vector<const char *> kFiller = {
    "i",   "the", "and", "to",   "you",  "that", "it",   "a",    "of",  "is",
    "was", "in",  "so",  "but",  "we",   "my",   "they", "have", "do",  "for",
    "i'm", "don't", "it's", "that's", "there", "this", "with", "are", "be", "on"};

// Token mix of an utterance; the remainder is topical.
constexpr double kFillerRate = 0.42;
constexpr double kBackgroundRate = 0.18;
constexpr double kGenericRate = 0.31;
constexpr int kGenericWords = 400;
constexpr double kWordsPerSecond = 1.8;

// Topic of a minute after the first.
constexpr double kPromptShare = 0.35;
constexpr double kFamilyShare = 0.56;

constexpr int kIntro = 2;
constexpr int kFamily = 0;

}  // namespace

std::string PseudoWord(int index) {
  if (index < 0) throw UsageError("pseudo-word index must be >= 0");
  std::uint64_t x =
      (static_cast<std::uint64_t>(index) * 2654435761ULL + 12345ULL) % kPseudoSpace;
  std::string w;
  for (int s = 0; s < 3; ++s) {
    std::uint64_t syl = x % kSyllables;
    x /= kSyllables;
    w += kConsonants[syl / kNumVowels];
    w += kVowels[syl % kNumVowels];
  }
  w += kConsonants[x % kNumConsonants];
  return w;
}

PlantedCorpus GeneratePlantedCorpus(const PlantedCorpusOptions &opts) {
  if (opts.n_docs < 1 || opts.n_topics < 1 || opts.terms_per_topic < 1 ||
      opts.tokens_per_doc < 1)
    throw UsageError("planted corpus sizes must be positive");
  PlantedCorpus c;
  int next_word = 0;
  for (int k = 0; k < opts.n_topics; ++k) {
    std::vector<std::string> terms;
    for (int j = 0; j < opts.terms_per_topic; ++j) terms.push_back(PseudoWord(next_word++));
    c.topic_terms.push_back(std::move(terms));
  }
  SplitMix64 rng(opts.seed);
  for (int i = 0; i < opts.n_docs; ++i) {
    int topic = static_cast<int>(rng.UniformIndex(static_cast<std::uint64_t>(opts.n_topics)));
    const auto &terms = c.topic_terms[static_cast<std::size_t>(topic)];
    SegmentDoc doc;
    char id[32];
    std::snprintf(id, sizeof(id), "doc%05d", i);
    doc.call_id = id;
    doc.segment_index = 0;
    doc.doc_id = MakeDocId(doc.call_id, 0);
    doc.n_utterances = 1;
    for (int j = 0; j < opts.tokens_per_doc; ++j) {
      if (j) doc.text += ' ';
      doc.text += terms[rng.UniformIndex(terms.size())];
    }
    c.docs.push_back(std::move(doc));
    c.topics.push_back(topic);
  }
  return c;
}

DemoCorpus GenerateDemoCorpus(const DemoCorpusOptions &opts) {
  if (opts.n_calls < 1 || !(opts.min_call_s > 0.0) || opts.max_call_s < opts.min_call_s)
    throw UsageError("invalid demo corpus options");

  const auto &topics = DemoTopics();
  const int n_topics = static_cast<int>(topics.size());
  DemoCorpus c;

  // Vocabularies: seeds first, then pseudo-words.
  int next_word = 0;
  std::vector<std::vector<double>> cdfs;
  for (const auto &t : topics) {
    std::vector<std::string> terms(t.seeds.begin(), t.seeds.end());
    while (static_cast<int>(terms.size()) < t.size) terms.push_back(PseudoWord(next_word++));
    cdfs.push_back(ZipfCdf(terms.size(), t.zipf_s));
    c.topic_names.push_back(t.name);
    if (t.prompt) c.prompts.push_back(t.name);
    c.topic_terms.push_back(std::move(terms));
  }
  // Content words that carry no topic.
  std::vector<std::string> generic;
  while (static_cast<int>(generic.size()) < kGenericWords)
    generic.push_back(PseudoWord(next_word++));
  const std::vector<double> generic_cdf = ZipfCdf(generic.size(), 1.0);

  std::vector<int> prompt_ids;
  for (int k = 0; k < n_topics; ++k)
    if (topics[static_cast<std::size_t>(k)].prompt) prompt_ids.push_back(k);

  SplitMix64 rng(opts.seed);
  auto draw_topic_word = [&](int k) -> const std::string & {
    auto kk = static_cast<std::size_t>(k);
    return c.topic_terms[kk][DrawFromCdf(cdfs[kk], &rng)];
  };

  for (int call = 0; call < opts.n_calls; ++call) {
    char id[32];
    std::snprintf(id, sizeof(id), "call%04d", call);
    const std::string call_id = id;
    const int prompt = prompt_ids[rng.UniformIndex(prompt_ids.size())];
    c.call_prompts[call_id] = topics[static_cast<std::size_t>(prompt)].name;
    const double duration = UniformIn(&rng, opts.min_call_s, opts.max_call_s);

    int window = -1;
    int main_topic = kFamily, side_topic = prompt;
    double main_weight = 1.0;
    double t = 0.0;
    bool speaker_a = rng.UniformDouble() < 0.5;
    while (duration - t > 0.5) {
      const int w = static_cast<int>(std::floor(t / 60.0));
      if (w != window) {
        // What this minute of the conversation is about.
        window = w;
        const double u = rng.UniformDouble();
        if (w == 0) {
          main_topic = u < 0.7 ? kIntro : (u < 0.85 ? kFamily : prompt);
        } else if (u < kPromptShare) {
          main_topic = prompt;
        } else if (u < kPromptShare + kFamilyShare) {
          main_topic = kFamily;
        } else {
          main_topic = static_cast<int>(rng.UniformIndex(static_cast<std::uint64_t>(n_topics)));
        }
        side_topic = main_topic == kFamily ? prompt : kFamily;
        main_weight = main_topic == kFamily ? UniformIn(&rng, 0.85, 1.0)
                                            : UniformIn(&rng, 0.45, 0.9);
      }

      const double len = std::min(UniformIn(&rng, 2.5, 7.5), duration - t);
      const int n_tokens = std::max(1, static_cast<int>(std::lround(len * kWordsPerSecond)));
      std::string text;
      for (int i = 0; i < n_tokens; ++i) {
        const double u = rng.UniformDouble();
        std::string tok;
        if (u < kFillerRate) {
          tok = kFiller[rng.UniformIndex(kFiller.size())];
        } else if (u < kFillerRate + kBackgroundRate) {
          tok = kBackground[rng.UniformIndex(kBackground.size())];
        } else if (u < kFillerRate + kBackgroundRate + kGenericRate) {
          tok = generic[DrawFromCdf(generic_cdf, &rng)];
        } else {
          const double v = rng.UniformDouble();
          int k;
          if (v < 0.05)
            k = static_cast<int>(rng.UniformIndex(static_cast<std::uint64_t>(n_topics)));
          else if (v < 0.05 + 0.95 * main_weight)
            k = main_topic;
          else
            k = side_topic;
          tok = draw_topic_word(k);
        }
        if (i == 0 && !tok.empty()) tok[0] = static_cast<char>(std::toupper(tok[0]));
        if (!text.empty()) text += (rng.UniformDouble() < 0.06 ? ", " : " ");
        text += tok;
      }
      text += rng.UniformDouble() < 0.2 ? "?" : ".";

      Utterance utt;
      utt.call_id = call_id;
      utt.speaker = speaker_a ? "A" : "B";
      utt.start_s = std::round(t * 100.0) / 100.0;
      utt.end_s = std::round((t + len) * 100.0) / 100.0;
      if (utt.end_s <= utt.start_s) utt.end_s = utt.start_s + 0.01;
      utt.translation = std::move(text);
      c.utterances.push_back(std::move(utt));
      speaker_a = !speaker_a;
      t += len + UniformIn(&rng, 0.1, 0.8);
    }
  }
  return c;
}

}  // namespace sttopic
