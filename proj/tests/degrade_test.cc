// tests/degrade_test.cc

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

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sttopic/bleu.h"
#include "sttopic/corpus.h"
#include "sttopic/degrade.h"
#include "sttopic/error.h"
#include "test_util.h"

namespace sttopic {
namespace {

using testing::RefSplitMix;

std::size_t CountTokens(const std::string &text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::size_t CountTokens(const std::vector<SegmentDoc> &docs) {
  std::size_t n = 0;
  for (const auto &d : docs) n += CountTokens(d.text);
  return n;
}

std::vector<SegmentDoc> Corpus(int n_docs, int tokens_per_doc, std::uint64_t seed) {
  RefSplitMix rng{seed};
  std::vector<SegmentDoc> docs;
  for (int i = 0; i < n_docs; ++i) {
    SegmentDoc d;
    d.call_id = "call" + std::to_string(i / 10);
    d.segment_index = i % 10;
    d.doc_id = MakeDocId(d.call_id, d.segment_index);
    for (int k = 0; k < tokens_per_doc; ++k) {
      if (k) d.text += ' ';
      d.text += "tok" + std::to_string(rng.Next() % 300);
    }
    docs.push_back(d);
  }
  return docs;
}

double BleuAgainst(const std::vector<SegmentDoc> &hyp, const std::vector<SegmentDoc> &ref) {
  std::vector<std::string> h;
  std::vector<std::vector<std::string>> r;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    h.push_back(hyp[i].text);
    r.push_back({ref[i].text});
  }
  return CorpusBleu(h, r).score;
}

TEST_SUITE("degrade") {
  TEST_CASE("zero noise is the identity") {
    auto docs = Corpus(30, 20, 1);
    docs[3].text = "  odd   spacing ";
    NoiseParams noise;
    noise.seed = 5;
    auto out = DegradeCorpus(docs, noise);
    CHECK(SegmentsToJsonl(out) == SegmentsToJsonl(docs));
  }

  TEST_CASE("p_drop = 1 empties every document") {
    auto docs = Corpus(30, 20, 2);
    NoiseParams noise;
    noise.p_drop = 1.0;
    auto out = DegradeCorpus(docs, noise);
    REQUIRE(out.size() == docs.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].text.empty());
      CHECK(out[i].doc_id == docs[i].doc_id);
    }
  }

  TEST_CASE("surviving token count is binomial") {
    auto docs = Corpus(100, 100, 3);
    REQUIRE(CountTokens(docs) == 10000);
    const double sigma = std::sqrt(10000 * 0.3 * 0.7);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      NoiseParams noise;
      noise.p_drop = 0.3;
      noise.seed = seed;
      double kept = static_cast<double>(CountTokens(DegradeCorpus(docs, noise)));
      CHECK(std::abs(kept - 7000.0) <= 3.0 * sigma);
    }
  }

  TEST_CASE("deterministic and order independent") {
    auto docs = Corpus(40, 30, 4);
    NoiseParams noise;
    noise.p_drop = 0.2;
    noise.p_sub = 0.3;
    noise.seed = 17;
    auto a = DegradeCorpus(docs, noise);
    CHECK(SegmentsToJsonl(DegradeCorpus(docs, noise)) == SegmentsToJsonl(a));
    // Each document draws from its own stream keyed by doc_id.
    std::vector<SegmentDoc> reversed(docs.rbegin(), docs.rend());
    auto b = DegradeCorpus(reversed, noise);
    for (std::size_t i = 0; i < docs.size(); ++i)
      CHECK(b[docs.size() - 1 - i].text == a[i].text);
    noise.seed = 18;
    CHECK(SegmentsToJsonl(DegradeCorpus(docs, noise)) != SegmentsToJsonl(a));
  }

  TEST_CASE("token count never increases; ids preserved") {
    auto docs = Corpus(50, 25, 5);
    for (double p_drop : {0.0, 0.1, 0.5}) {
      for (double p_sub : {0.0, 0.2, 0.5}) {
        NoiseParams noise;
        noise.p_drop = p_drop;
        noise.p_sub = p_sub;
        noise.seed = 3;
        auto out = DegradeCorpus(docs, noise);
        REQUIRE(out.size() == docs.size());
        for (std::size_t i = 0; i < docs.size(); ++i) {
          CHECK(out[i].doc_id == docs[i].doc_id);
          CHECK(CountTokens(out[i].text) <= CountTokens(docs[i].text));
        }
      }
    }
  }

  TEST_CASE("substitutes come from the pool") {
    auto docs = Corpus(20, 20, 6);
    NoiseParams noise;
    noise.p_sub = 1.0;
    noise.pool = SubstitutionPool::kFixedList;
    noise.fixed_pool = {"zebra", "yak"};
    for (const auto &d : DegradeCorpus(docs, noise)) {
      std::istringstream in(d.text);
      for (std::string w; in >> w;) CHECK((w == "zebra" || w == "yak"));
    }
    noise.pool = SubstitutionPool::kCorpusUnigram;
    std::set<std::string> vocab;
    for (const auto &d : docs) {
      std::istringstream in(d.text);
      for (std::string w; in >> w;) vocab.insert(w);
    }
    for (const auto &d : DegradeCorpus(docs, noise)) {
      std::istringstream in(d.text);
      for (std::string w; in >> w;) CHECK(vocab.count(w) == 1);
    }
  }

  TEST_CASE("BLEU does not increase along the p_drop grid") {
    auto docs = Corpus(80, 30, 7);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      double prev = 101.0;
      for (double p_drop : {0.1, 0.3, 0.5}) {
        NoiseParams noise;
        noise.p_drop = p_drop;
        noise.p_sub = 0.1;
        noise.seed = seed;
        double bleu = BleuAgainst(DegradeCorpus(docs, noise), docs);
        CHECK(bleu <= prev);
        prev = bleu;
      }
    }
  }

  TEST_CASE("invalid noise parameters") {
    NoiseParams noise;
    noise.p_drop = 1.2;
    CHECK_THROWS_AS(ValidateNoiseParams(noise), UsageError);
    noise.p_drop = 0.7;
    noise.p_sub = 0.5;
    CHECK_THROWS_AS(ValidateNoiseParams(noise), UsageError);
    noise.p_sub = 0.2;
    noise.pool = SubstitutionPool::kFixedList;
    CHECK_THROWS_AS(ValidateNoiseParams(noise), UsageError);
  }
}

}  // namespace
}  // namespace sttopic
