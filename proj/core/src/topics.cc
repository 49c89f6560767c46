// src/topics.cc

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

#include "sttopic/topics.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <openssl/evp.h>

#include "jsonl.h"
#include "serialize.h"

namespace sttopic {

using internal::Json;

namespace {

std::string Sha256Hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::kData, "SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json PayloadOf(const TopicModel &model) {
  Json h = Json::array();
  const DenseMatrix &m = model.h.values;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) h.push_back(m(i, j));
  Json payload = {
      {"version", kModelFormatVersion},
      {"config",
       {{"nmf", internal::NmfConfigToJsonValue(model.config)},
        {"textprep",
         {{"min_df", model.vocab_options.min_df},
          {"max_df_ratio", model.vocab_options.max_df_ratio},
          {"max_terms", model.vocab_options.max_terms}}}}},
      {"vocab", internal::VocabularyToJsonValue(model.vocab)},
      {"dims", {m.rows(), m.cols()}},
      {"H", std::move(h)},
  };
  if (model.names) payload["names"] = *model.names;
  return payload;
}

}  // namespace

std::string TopicModel::TopicName(int topic_id) const {
  if (names && topic_id >= 0 && topic_id < static_cast<int>(names->size()))
    return (*names)[static_cast<std::size_t>(topic_id)];
  return "t" + std::to_string(topic_id + 1);
}

std::string ComputeFingerprint(const TopicModel &model) {
  return Sha256Hex(PayloadOf(model).dump());
}

TopicModel MakeTopicModel(Vocabulary vocab, TopicTermMatrix h, NmfConfig config,
                          VocabularyOptions vocab_options,
                          std::optional<std::vector<std::string>> names) {
  if (static_cast<std::size_t>(h.values.cols()) != vocab.size()) {
    throw DataError("topic matrix has " + std::to_string(h.values.cols()) +
                    " columns but the vocabulary has " + std::to_string(vocab.size()) +
                    " terms");
  }
  if (names && names->size() != static_cast<std::size_t>(h.values.rows())) {
    throw UsageError("got " + std::to_string(names->size()) + " topic names for " +
                     std::to_string(h.values.rows()) + " topics");
  }
  TopicModel model;
  model.vocab = std::move(vocab);
  model.h = std::move(h);
  model.config = config;
  model.vocab_options = vocab_options;
  model.names = std::move(names);
  model.fingerprint = ComputeFingerprint(model);
  return model;
}

TopicSummary TopTerms(const TopicModel &model, int topic_id, int k) {
  if (topic_id < 0 || topic_id >= model.n_topics()) {
    throw UsageError("topic id " + std::to_string(topic_id) + " out of range [0, " +
                     std::to_string(model.n_topics()) + ")");
  }
  if (k < 1 || k > model.n_terms())
    throw UsageError("k must be in [1, " + std::to_string(model.n_terms()) + "]");
  auto row = model.h.values.row(topic_id);
  if ((row.array() == 0.0).all())
    throw DataError("degenerate topic " + std::to_string(topic_id));

  std::vector<std::size_t> order(static_cast<std::size_t>(model.n_terms()));
  std::iota(order.begin(), order.end(), 0);
  const auto &terms = model.vocab.terms();
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      double wa = row(static_cast<Eigen::Index>(a));
                      double wb = row(static_cast<Eigen::Index>(b));
                      if (wa != wb) return wa > wb;
                      return terms[a] < terms[b];
                    });
  TopicSummary summary;
  summary.topic_id = topic_id;
  for (int i = 0; i < k; ++i) {
    std::size_t j = order[static_cast<std::size_t>(i)];
    summary.top_terms.emplace_back(terms[j], row(static_cast<Eigen::Index>(j)));
  }
  return summary;
}

LabelAssignment AssignLabels(const DenseMatrix &w) {
  LabelAssignment out;
  out.labels.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    int best = 0;
    bool any = w.cols() > 0 && w(i, 0) != 0.0;
    for (Eigen::Index j = 1; j < w.cols(); ++j) {
      if (w(i, j) != 0.0) any = true;
      if (w(i, j) > w(i, best)) best = static_cast<int>(j);
    }
    out.labels.push_back(best);
    out.degenerate.push_back(!any);
  }
  return out;
}

LabelAssignment AssignLabels(const DocTopicMatrix &w) { return AssignLabels(w.values); }

std::string ModelToJson(const TopicModel &model) {
  Json doc = PayloadOf(model);
  doc["fingerprint"] = model.fingerprint;
  return doc.dump() + "\n";
}

TopicModel ModelFromJson(const std::string &text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception &e) {
    throw CorruptModelError(std::string("corrupt model: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version"))
    throw CorruptModelError("corrupt model: missing version");
  if (!doc["version"].is_number_integer() ||
      doc["version"].get<long long>() != kModelFormatVersion) {
    throw ModelVersionError("unsupported model version " + doc["version"].dump() +
                            " (expected " + std::to_string(kModelFormatVersion) + ")");
  }

  TopicModel model;
  std::string stored;
  try {
    stored = doc.at("fingerprint").get<std::string>();
    const Json &cfg = doc.at("config");
    model.config = internal::NmfConfigFromJsonValue(cfg.at("nmf"));
    const Json &tp = cfg.at("textprep");
    model.vocab_options.min_df = tp.at("min_df").get<int>();
    model.vocab_options.max_df_ratio = tp.at("max_df_ratio").get<double>();
    model.vocab_options.max_terms = tp.at("max_terms").get<std::size_t>();
    model.vocab = internal::VocabularyFromJsonValue(doc.at("vocab"));
    model.vocab_options.tokenizer = model.vocab.tokenizer();
    const auto dims = doc.at("dims").get<std::vector<long long>>();
    const Json &h = doc.at("H");
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 ||
        static_cast<long long>(h.size()) != dims[0] * dims[1] ||
        static_cast<std::size_t>(dims[1]) != model.vocab.size()) {
      throw CorruptModelError("corrupt model: H dimensions do not match its data");
    }
    model.h.values.resize(dims[0], dims[1]);
    std::size_t k = 0;
    for (long long i = 0; i < dims[0]; ++i)
      for (long long j = 0; j < dims[1]; ++j) model.h.values(i, j) = h[k++].get<double>();
    if (doc.contains("names")) model.names = doc["names"].get<std::vector<std::string>>();
  } catch (const Json::exception &e) {
    throw CorruptModelError(std::string("corrupt model: ") + e.what());
  } catch (const ModelFormatError &) {
    throw;
  } catch (const DataError &e) {
    throw CorruptModelError(std::string("corrupt model: ") + e.what());
  }
  if (model.names && model.names->size() != static_cast<std::size_t>(model.n_topics()))
    throw CorruptModelError("corrupt model: names do not match topic count");

  model.fingerprint = ComputeFingerprint(model);
  if (model.fingerprint != stored) {
    throw ModelHashError("model fingerprint mismatch: file says " + stored +
                         ", contents hash to " + model.fingerprint);
  }
  return model;
}

void SaveModel(const TopicModel &model, const std::filesystem::path &path) {
  internal::WriteFile(path, ModelToJson(model));
}

TopicModel LoadModel(const std::filesystem::path &path) {
  return ModelFromJson(internal::ReadFile(path));
}

DocTopicMatrix InferTopics(const TopicModel &model, const std::vector<SegmentDoc> &docs) {
  TfidfMatrix vp = Vectorize(docs, model.vocab);
  return NmfTransform(vp, model.h, model.config);
}

}  // namespace sttopic
