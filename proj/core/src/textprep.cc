// src/textprep.cc

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

#include "sttopic/textprep.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_set>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "jsonl.h"
#include "serialize.h"
#include "sttopic/error.h"
#include "sttopic/stopwords.h"

namespace sttopic {

namespace {

constexpr std::uint32_t kDroppedCategories = U_GC_P_MASK | U_GC_S_MASK;

// Lowercase, strip punctuation/symbols and split on whitespace. Returns
// (token, code point count) pairs.
std::vector<std::pair<std::string, int>> Normalize(std::string_view text) {
  std::vector<std::pair<std::string, int>> out;
  std::string cur;
  int cur_len = 0;
  auto flush = [&] {
    if (!cur.empty()) out.emplace_back(std::move(cur), cur_len);
    cur.clear();
    cur_len = 0;
  };

  const auto *s = reinterpret_cast<const std::uint8_t *>(text.data());
  const std::int32_t length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) continue;
    if (u_isUWhiteSpace(c)) {
      flush();
      continue;
    }
    if (U_GET_GC_MASK(c) & kDroppedCategories) continue;
    UChar32 lower = u_tolower(c);
    char buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, lower);
    cur.append(buf, static_cast<std::size_t>(n));
    ++cur_len;
  }
  flush();
  return out;
}

const std::unordered_set<std::string> &StopwordSet() {
  static const std::unordered_set<std::string> set = [] {
    std::unordered_set<std::string> s;
    for (std::string_view w : EnglishStopwords()) {
      for (auto &[tok, len] : Normalize(w)) s.insert(tok);
    }
    return s;
  }();
  return set;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text, const TokenizerOptions &opts) {
  std::vector<std::string> tokens;
  const auto &stop = StopwordSet();
  for (auto &[tok, len] : Normalize(text)) {
    if (len < opts.min_token_length) continue;
    if (opts.remove_stopwords && stop.count(tok)) continue;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<int> doc_freq,
                       int n_docs_fit, TokenizerOptions tokenizer)
    : terms_(std::move(terms)),
      doc_freq_(std::move(doc_freq)),
      n_docs_fit_(n_docs_fit),
      tokenizer_(tokenizer) {
  if (terms_.size() != doc_freq_.size())
    throw DataError("vocabulary terms and doc_freq differ in length");
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (!index_.emplace(terms_[j], j).second)
      throw DataError("duplicate vocabulary term '" + terms_[j] + "'");
  }
}

std::optional<std::size_t> Vocabulary::Index(const std::string &term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::Idf(std::size_t column) const {
  return std::log((1.0 + n_docs_fit_) / (1.0 + doc_freq_[column])) + 1.0;
}

bool Vocabulary::operator==(const Vocabulary &other) const {
  return terms_ == other.terms_ && doc_freq_ == other.doc_freq_ &&
         n_docs_fit_ == other.n_docs_fit_ &&
         tokenizer_.remove_stopwords == other.tokenizer_.remove_stopwords &&
         tokenizer_.min_token_length == other.tokenizer_.min_token_length;
}

Vocabulary BuildVocabulary(const std::vector<SegmentDoc> &docs,
                           const VocabularyOptions &opts) {
  if (docs.empty()) throw DataError("cannot build a vocabulary from zero documents");
  if (opts.min_df < 0 || opts.max_df_ratio < 0.0 || opts.max_terms == 0)
    throw UsageError("invalid vocabulary options");

  std::map<std::string, std::pair<int, long long>> stats;  // term -> (df, count)
  for (const auto &doc : docs) {
    std::set<std::string> seen;
    for (auto &tok : Tokenize(doc.text, opts.tokenizer)) {
      auto &entry = stats[tok];
      entry.second += 1;
      if (seen.insert(tok).second) entry.first += 1;
    }
  }

  const double max_df = opts.max_df_ratio * static_cast<double>(docs.size());
  struct Candidate {
    const std::string *term;
    int df;
    long long count;
  };
  std::vector<Candidate> kept;
  for (const auto &[term, st] : stats) {
    if (st.first < opts.min_df) continue;
    if (static_cast<double>(st.first) > max_df) continue;
    kept.push_back({&term, st.first, st.second});
  }
  if (kept.empty()) throw DataError("empty vocabulary");

  std::stable_sort(kept.begin(), kept.end(), [](const Candidate &a, const Candidate &b) {
    if (a.count != b.count) return a.count > b.count;
    return *a.term < *b.term;
  });
  if (kept.size() > opts.max_terms) kept.resize(opts.max_terms);
  std::sort(kept.begin(), kept.end(), [](const Candidate &a, const Candidate &b) {
    return *a.term < *b.term;
  });

  std::vector<std::string> terms;
  std::vector<int> df;
  for (const auto &c : kept) {
    terms.push_back(*c.term);
    df.push_back(c.df);
  }
  return Vocabulary(std::move(terms), std::move(df), static_cast<int>(docs.size()),
                    opts.tokenizer);
}

TfidfMatrix Vectorize(const std::vector<SegmentDoc> &docs, const Vocabulary &vocab) {
  if (vocab.empty()) throw DataError("empty vocabulary");
  const auto n_terms = static_cast<Eigen::Index>(vocab.size());
  std::vector<double> idf(vocab.size());
  for (std::size_t j = 0; j < vocab.size(); ++j) idf[j] = vocab.Idf(j);

  TfidfMatrix m;
  m.values.resize(static_cast<Eigen::Index>(docs.size()), n_terms);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    m.row_ids.push_back(docs[i].doc_id);
    std::map<std::size_t, int> counts;
    for (const auto &tok : Tokenize(docs[i].text, vocab.tokenizer())) {
      if (auto col = vocab.Index(tok)) ++counts[*col];
    }
    double norm2 = 0.0;
    std::vector<std::pair<std::size_t, double>> row;
    for (const auto &[col, tf] : counts) {
      double v = tf * idf[col];
      row.emplace_back(col, v);
      norm2 += v * v;
    }
    if (row.empty()) continue;
    const double norm = std::sqrt(norm2);
    for (const auto &[col, v] : row) {
      triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col),
                            v / norm);
    }
  }
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  m.values.makeCompressed();
  return m;
}

std::string TfidfToCoordinateCsv(const TfidfMatrix &m) {
  std::string out = "doc_id,term_index,value\n";
  char buf[64];
  for (Eigen::Index i = 0; i < m.values.outerSize(); ++i) {
    for (TfidfMatrix::Storage::InnerIterator it(m.values, i); it; ++it) {
      std::snprintf(buf, sizeof(buf), ",%" PRId64 ",%.17g\n",
                    static_cast<std::int64_t>(it.col()), it.value());
      out += m.row_ids[static_cast<std::size_t>(i)];
      out += buf;
    }
  }
  return out;
}

namespace internal {

Json VocabularyToJsonValue(const Vocabulary &vocab) {
  Json terms = Json::array();
  for (std::size_t j = 0; j < vocab.size(); ++j)
    terms.push_back({{"t", vocab.terms()[j]}, {"df", vocab.doc_freq()[j]}});
  return {{"n_docs_fit", vocab.n_docs_fit()},
          {"terms", terms},
          {"tokenizer",
           {{"min_token_length", vocab.tokenizer().min_token_length},
            {"stopwords", vocab.tokenizer().remove_stopwords
                              ? Json(std::string(kStopwordListId))
                              : Json(nullptr)}}}};
}

Vocabulary VocabularyFromJsonValue(const Json &obj) {
  try {
    TokenizerOptions tok;
    if (auto it = obj.find("tokenizer"); it != obj.end()) {
      tok.min_token_length = it->at("min_token_length").get<int>();
      const Json &sw = it->at("stopwords");
      tok.remove_stopwords = !sw.is_null();
      if (tok.remove_stopwords && sw.get<std::string>() != kStopwordListId) {
        throw DataError("vocabulary was fitted with stopword list '" +
                        sw.get<std::string>() + "', this build bundles '" +
                        std::string(kStopwordListId) + "'");
      }
    }
    std::vector<std::string> terms;
    std::vector<int> df;
    for (const Json &t : obj.at("terms")) {
      terms.push_back(t.at("t").get<std::string>());
      df.push_back(t.at("df").get<int>());
    }
    return Vocabulary(std::move(terms), std::move(df), obj.at("n_docs_fit").get<int>(),
                      tok);
  } catch (const Json::exception &e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
}

}  // namespace internal

std::string VocabularyToJson(const Vocabulary &vocab) {
  return internal::VocabularyToJsonValue(vocab).dump() + "\n";
}

Vocabulary VocabularyFromJson(std::string_view json) {
  internal::Json obj;
  try {
    obj = internal::Json::parse(json);
  } catch (const internal::Json::exception &e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
  return internal::VocabularyFromJsonValue(obj);
}

}  // namespace sttopic
