// tests/textprep_test.cc

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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "sttopic/corpus.h"
#include "sttopic/error.h"
#include "sttopic/stopwords.h"
#include "sttopic/textprep.h"
#include "test_util.h"

namespace sttopic {
namespace {

using Tokens = std::vector<std::string>;

std::vector<SegmentDoc> Docs(const std::vector<std::string> &texts) {
  std::vector<SegmentDoc> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    SegmentDoc d;
    d.call_id = "c";
    d.segment_index = static_cast<int>(i);
    d.doc_id = MakeDocId(d.call_id, d.segment_index);
    d.text = texts[i];
    docs.push_back(d);
  }
  return docs;
}

// Single letters are stopwords and shorter than the default minimum, so the
// toy examples switch both filters off.
VocabularyOptions Loose() {
  VocabularyOptions o;
  o.min_df = 1;
  o.max_df_ratio = 1.0;
  o.tokenizer.remove_stopwords = false;
  o.tokenizer.min_token_length = 1;
  return o;
}

TEST_SUITE("textprep") {
  TEST_CASE("tokenize drops stopwords and short tokens") {
    CHECK(Tokenize("I eh listen to the music in English") ==
          Tokens{"eh", "listen", "music", "english"});
    CHECK(Tokenize("").empty());
    CHECK(Tokenize("THE The the").empty());
  }

  TEST_CASE("tokenize strips punctuation and symbols") {
    CHECK(Tokenize("i'm sure, it's e-mail... $100 + more!") ==
          Tokens{"im", "sure", "email", "100"});
    CHECK(Tokenize("don't") == Tokens{});
    TokenizerOptions keep;
    keep.remove_stopwords = false;
    keep.min_token_length = 1;
    CHECK(Tokenize("Don't STOP", keep) == Tokens{"dont", "stop"});
  }

  TEST_CASE("tokenize handles unicode") {
    CHECK(Tokenize("CAF\xc3\x89 \xc2\xbfm\xc3\xbasica?") == Tokens{"caf\xc3\xa9", "m\xc3\xbasica"});
    // U+3000 ideographic space separates; U+00A0 no-break space too.
    CHECK(Tokenize("alpha\xe3\x80\x80" "beta\xc2\xa0gamma") == Tokens{"alpha", "beta", "gamma"});
    // Invalid bytes are dropped.
    CHECK(Tokenize("ab\xff" "cd") == Tokens{"abcd"});
  }

  TEST_CASE("bundled stopword list") {
    CHECK(EnglishStopwords().size() == 179);
    auto list = EnglishStopwords();
    CHECK(std::count(list.begin(), list.end(), "the") == 1);
    CHECK(std::count(list.begin(), list.end(), "music") == 0);
  }

  TEST_CASE("min_df removes singletons") {
    auto v = BuildVocabulary(Docs({"a b", "a c", "a d"}), [] {
      auto o = Loose();
      o.min_df = 2;
      return o;
    }());
    CHECK(v.terms() == Tokens{"a"});
    CHECK(v.doc_freq() == std::vector<int>{3});
    CHECK(v.n_docs_fit() == 3);
  }

  TEST_CASE("max_df excludes a term in 200 of 1080 docs") {
    std::vector<std::string> texts;
    for (int i = 0; i < 1080; ++i) {
      std::string t = "filler" + std::to_string(i % 540);
      if (i < 200) t += " music";
      if (i < 100) t += " guitar";
      texts.push_back(t);
    }
    VocabularyOptions o;
    auto v = BuildVocabulary(Docs(texts), o);
    CHECK_FALSE(v.Index("music").has_value());
    REQUIRE(v.Index("guitar").has_value());
    CHECK(v.doc_freq()[*v.Index("guitar")] == 100);
    CHECK(v.size() <= 1000);
    for (int df : v.doc_freq()) {
      CHECK(df >= 2);
      CHECK(df <= 108);
    }
  }

  TEST_CASE("max_terms keeps the most frequent, ties lexicographic") {
    auto o = Loose();
    o.max_terms = 3;
    auto v = BuildVocabulary(Docs({"d d d c c b", "a a a e"}), o);
    // counts: a=3 d=3 c=2 b=1 e=1
    CHECK(v.terms() == Tokens{"a", "c", "d"});
    o.max_terms = 4;
    CHECK(BuildVocabulary(Docs({"d d d c c b", "a a a e"}), o).terms() ==
          Tokens{"a", "b", "c", "d"});
  }

  TEST_CASE("empty vocabulary is an error") {
    CHECK_THROWS_WITH_AS(BuildVocabulary(Docs({"the and of", "a b"})), "empty vocabulary",
                         DataError);
  }

  TEST_CASE("tf-idf worked example") {
    auto o = Loose();
    auto docs = Docs({"x x y", "x z"});
    auto v = BuildVocabulary(docs, o);
    REQUIRE(v.terms() == Tokens{"x", "y", "z"});
    auto m = Vectorize(docs, v);
    REQUIRE(m.n_docs() == 2);
    REQUIRE(m.n_terms() == 3);

    const double idf_x = std::log(3.0 / 3.0) + 1.0;
    const double idf_y = std::log(3.0 / 2.0) + 1.0;
    const double idf_z = idf_y;
    double r0[3] = {2 * idf_x, 1 * idf_y, 0.0};
    double r1[3] = {1 * idf_x, 0.0, 1 * idf_z};
    double n0 = std::sqrt(r0[0] * r0[0] + r0[1] * r0[1]);
    double n1 = std::sqrt(r1[0] * r1[0] + r1[2] * r1[2]);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(m.values.coeff(0, j) - r0[j] / n0) <= 1e-12);
      CHECK(std::abs(m.values.coeff(1, j) - r1[j] / n1) <= 1e-12);
    }
    CHECK(m.values.coeff(0, 0) == doctest::Approx(0.8182).epsilon(1e-4));
    CHECK(m.values.coeff(0, 1) == doctest::Approx(0.5750).epsilon(1e-3));
    CHECK(m.row_ids == Tokens{"c#0", "c#1"});
  }

  TEST_CASE("rows without vocabulary terms are zero; others unit norm") {
    testing::RefSplitMix rng{3};
    std::vector<std::string> texts;
    for (int i = 0; i < 200; ++i) {
      std::string t;
      int n = static_cast<int>(rng.Next() % 30);
      for (int k = 0; k < n; ++k) t += "w" + std::to_string(rng.Next() % 80) + " ";
      texts.push_back(t);
    }
    texts.push_back("nothing known here");
    auto docs = Docs(texts);
    VocabularyOptions o;
    o.max_df_ratio = 0.5;
    auto v = BuildVocabulary(docs, o);
    auto m = Vectorize(docs, v);
    for (Eigen::Index r = 0; r < m.n_docs(); ++r) {
      double sq = 0.0;
      for (TfidfMatrix::Storage::InnerIterator it(m.values, r); it; ++it) {
        CHECK(it.value() >= 0.0);
        sq += it.value() * it.value();
      }
      if (sq > 0.0) CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-12);
    }
    CHECK(m.values.row(m.n_docs() - 1).norm() == 0.0);

    auto again = Vectorize(docs, v);
    REQUIRE(again.values.nonZeros() == m.values.nonZeros());
    for (Eigen::Index k = 0; k < m.values.nonZeros(); ++k) {
      CHECK(again.values.valuePtr()[k] == m.values.valuePtr()[k]);
      CHECK(again.values.innerIndexPtr()[k] == m.values.innerIndexPtr()[k]);
    }
    CHECK(TfidfToCoordinateCsv(again) == TfidfToCoordinateCsv(m));
  }

  TEST_CASE("evaluation docs reuse the fitted idf") {
    auto o = Loose();
    auto v = BuildVocabulary(Docs({"x x y", "x z"}), o);
    auto m = Vectorize(Docs({"y", "q"}), v);
    CHECK(m.values.coeff(0, 1) == doctest::Approx(1.0));
    CHECK(m.values.row(1).norm() == 0.0);
    CHECK(v.Idf(1) == std::log(1.5) + 1.0);
  }

  TEST_CASE("vocabulary JSON round trip") {
    auto o = Loose();
    auto v = BuildVocabulary(Docs({"x x y", "x z"}), o);
    auto json = VocabularyToJson(v);
    CHECK(VocabularyFromJson(json) == v);
    CHECK(json.find("\"n_docs_fit\"") != std::string::npos);
    CHECK_THROWS_AS(VocabularyFromJson("{\"terms\": 3}"), DataError);
  }

  TEST_CASE("coordinate CSV") {
    auto v = BuildVocabulary(Docs({"x x y", "x z"}), Loose());
    auto csv = TfidfToCoordinateCsv(Vectorize(Docs({"z"}), v));
    CHECK(csv == "doc_id,term_index,value\nc#0,2,1\n");
  }
}

}  // namespace
}  // namespace sttopic
