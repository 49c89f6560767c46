// tests/bleu_test.cc

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
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sttopic/bleu.h"
#include "sttopic/error.h"
#include "test_util.h"

namespace sttopic {
namespace {

using testing::RefSplitMix;
using Refs = std::vector<std::vector<std::string>>;

std::vector<std::string> Words(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Straightforward BLEU-4 over whitespace tokens of lowercase input.
double OracleBleu(const std::vector<std::string> &hyps, const Refs &refs) {
  double matches[4] = {}, totals[4] = {};
  double c = 0, r = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    auto h = Words(hyps[s]);
    c += h.size();
    std::size_t best = 0;
    bool first = true;
    for (const auto &ref : refs[s]) {
      std::size_t len = Words(ref).size();
      long d = std::labs(static_cast<long>(len) - static_cast<long>(h.size()));
      long bd = std::labs(static_cast<long>(best) - static_cast<long>(h.size()));
      if (first || d < bd || (d == bd && len < best)) best = len;
      first = false;
    }
    r += best;
    for (int n = 1; n <= 4; ++n) {
      auto grams = [n](const std::vector<std::string> &t) {
        std::map<std::string, int> m;
        for (std::size_t i = 0; i + n <= t.size(); ++i) {
          std::string key;
          for (int k = 0; k < n; ++k) key += t[i + k] + "\x1f";
          ++m[key];
        }
        return m;
      };
      auto hg = grams(h);
      std::map<std::string, int> clip;
      for (const auto &ref : refs[s])
        for (const auto &[g, k] : grams(Words(ref))) clip[g] = std::max(clip[g], k);
      for (const auto &[g, k] : hg) {
        totals[n - 1] += k;
        matches[n - 1] += std::min(k, clip[g]);
      }
    }
  }
  double logp = 0;
  int orders = 0;
  for (int n = 0; n < 4; ++n) {
    if (totals[n] == 0) continue;
    if (matches[n] == 0) return 0.0;
    logp += std::log(matches[n] / totals[n]);
    ++orders;
  }
  if (orders == 0) return 0.0;
  double bp = c < r ? std::exp(1 - r / c) : 1.0;
  return 100.0 * bp * std::exp(logp / orders);
}

std::string Noisy(const std::vector<std::string> &src, double p, RefSplitMix *rng) {
  std::string out;
  for (const auto &w : src) {
    double u = rng->Uniform();
    std::string tok = w;
    if (u < p / 3) continue;
    if (u < 2 * p / 3)
      tok = "w" + std::to_string(rng->Next() % 40);
    else if (u < p)
      out += "w" + std::to_string(rng->Next() % 40) + " ";
    out += tok + " ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

// Random sentences, hypotheses and four references, all noisy copies of a
// hidden source.
struct Case {
  std::vector<std::string> hyps;
  Refs refs;
};

Case MakeCase(std::uint64_t seed) {
  RefSplitMix rng{seed};
  Case c;
  int n = 5 + static_cast<int>(rng.Next() % 20);
  for (int s = 0; s < n; ++s) {
    std::vector<std::string> src;
    int len = 4 + static_cast<int>(rng.Next() % 16);
    for (int i = 0; i < len; ++i) src.push_back("w" + std::to_string(rng.Next() % 40));
    c.hyps.push_back(Noisy(src, 0.4, &rng));
    std::vector<std::string> refs;
    for (int k = 0; k < 4; ++k) refs.push_back(Noisy(src, 0.3, &rng));
    c.refs.push_back(refs);
  }
  return c;
}

Refs FirstK(const Refs &refs, std::size_t k) {
  Refs out;
  for (const auto &r : refs) out.emplace_back(r.begin(), r.begin() + k);
  return out;
}

TEST_SUITE("bleu") {
  TEST_CASE("identical text scores 100") {
    std::vector<std::string> hyps = {"the cat sat on the mat", "a dog barked loudly today"};
    auto s = CorpusBleu(hyps, {{hyps[0]}, {hyps[1]}});
    CHECK(s.score == 100.0);
    CHECK(s.brevity_penalty == 1.0);
  }

  TEST_CASE("brevity penalty example") {
    auto s = CorpusBleu({"the cat sat"}, {{"the cat sat down"}});
    CHECK(std::abs(s.brevity_penalty - std::exp(1.0 - 4.0 / 3.0)) <= 1e-6);
    CHECK(s.precisions[0] == 1.0);
    CHECK(s.precisions[1] == 1.0);
    CHECK(s.precisions[2] == 1.0);
    CHECK(s.totals[3] == 0);
    CHECK(std::abs(s.score - 100.0 * std::exp(1.0 - 4.0 / 3.0)) <= 1e-6);
    CHECK(s.hyp_len == 3);
    CHECK(s.ref_len == 4);
  }

  TEST_CASE("closest reference length, ties to the shorter") {
    auto s = CorpusBleu({"a b c d e"}, {{"a b c", "a b c d e f g", "a b c d e f"}});
    CHECK(s.ref_len == 6);
    auto t = CorpusBleu({"a b c d"}, {{"a b c", "a b c d e"}});
    CHECK(t.ref_len == 3);
  }

  TEST_CASE("clipping uses the per-reference maximum") {
    auto s = CorpusBleu({"the the the the"}, {{"the cat", "the the dog"}});
    CHECK(s.matches[0] == 2);
    CHECK(s.totals[0] == 4);
  }

  TEST_CASE("zero precision without smoothing gives 0; smoothing rescues it") {
    std::vector<std::string> hyps = {"alpha beta gamma delta"};
    Refs refs = {{"alpha gamma beta delta"}};
    CHECK(CorpusBleu(hyps, refs).score == 0.0);
    BleuOptions smooth;
    smooth.smooth = true;
    auto s = CorpusBleu(hyps, refs, smooth);
    CHECK(s.score > 0.0);
    CHECK(s.precisions[1] == doctest::Approx(1.0 / 4.0));
  }

  TEST_CASE("tokenization lowercases and strips punctuation") {
    CHECK(CorpusBleu({"The CAT, sat!"}, {{"the cat sat"}}).score == 100.0);
  }

  TEST_CASE("matches the oracle on random cases") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto c = MakeCase(seed);
      for (std::size_t k = 1; k <= 4; ++k) {
        auto refs = FirstK(c.refs, k);
        CHECK(CorpusBleu(c.hyps, refs).score ==
              doctest::Approx(OracleBleu(c.hyps, refs)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("adding references never lowers clipped matches") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto c = MakeCase(seed);
      BleuScore prev;
      for (std::size_t k = 1; k <= 4; ++k) {
        auto s = CorpusBleu(c.hyps, FirstK(c.refs, k));
        for (int n = 0; n < kBleuMaxOrder; ++n) {
          CHECK(s.matches[n] >= prev.matches[n]);
          if (k > 1) CHECK(s.totals[n] == prev.totals[n]);
        }
        prev = s;
      }
    }
  }

  TEST_CASE("adding references never lowers the score while BP is unchanged") {
    int steps = 0, bp_steps = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto c = MakeCase(seed);
      BleuScore prev;
      for (std::size_t k = 1; k <= 4; ++k) {
        auto s = CorpusBleu(c.hyps, FirstK(c.refs, k));
        if (k > 1) {
          ++steps;
          if (s.brevity_penalty >= prev.brevity_penalty)
            CHECK(s.score >= prev.score);
          else
            ++bp_steps;
        }
        prev = s;
      }
    }
    MESSAGE(bp_steps << " of " << steps << " steps lowered the brevity penalty");
  }

  TEST_CASE("a closer but longer reference can lower the score") {
    // The extra reference adds no matches but moves the closest length from
    // 6 to 9, above the hypothesis length, bringing in a brevity penalty.
    std::vector<std::string> hyps = {"a b c d e f g h"};
    auto one = CorpusBleu(hyps, {{"a b c d e f"}});
    auto two = CorpusBleu(hyps, {{"a b c d e f", "a b c x y z w v u"}});
    CHECK(one.ref_len == 6);
    CHECK(two.ref_len == 9);
    CHECK(two.matches == one.matches);
    CHECK(two.brevity_penalty == doctest::Approx(std::exp(1.0 - 9.0 / 8.0)));
    CHECK(two.score < one.score);
  }

  TEST_CASE("segment order does not matter and score stays in range") {
    auto c = MakeCase(99);
    double base = CorpusBleu(c.hyps, c.refs).score;
    std::vector<std::size_t> order(c.hyps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
    std::vector<std::string> h;
    Refs r;
    for (auto i : order) {
      h.push_back(c.hyps[i]);
      r.push_back(c.refs[i]);
    }
    CHECK(CorpusBleu(h, r).score == doctest::Approx(base).epsilon(1e-14));
    CHECK(base >= 0.0);
    CHECK(base <= 100.0);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(CorpusBleu({"a", "b"}, {{"a"}}), DataError);
    CHECK_THROWS_AS(CorpusBleu({"a"}, {{}}), DataError);
    CHECK_THROWS_AS(TransposeReferences({{"a", "b"}, {"a"}}), DataError);
    auto t = TransposeReferences({{"a", "b"}, {"c", "d"}});
    CHECK(t == Refs{{"a", "c"}, {"b", "d"}});
    CHECK(CorpusBleu({}, {}).score == 0.0);
  }
}

}  // namespace
}  // namespace sttopic
