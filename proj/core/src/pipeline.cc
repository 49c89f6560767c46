// src/pipeline.cc

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

#include "sttopic/pipeline.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "jsonl.h"
#include "sttopic/bleu.h"
#include "sttopic/error.h"
#include "sttopic/random.h"

namespace sttopic {

using internal::FormatFixed;
using internal::Json;
using internal::WriteFile;

FitResult FitTopicModel(const std::vector<SegmentDoc> &docs, const FitOptions &opts) {
  ValidateNmfConfig(opts.nmf);
  if (opts.names && opts.names->size() != static_cast<std::size_t>(opts.nmf.n_topics)) {
    throw UsageError("got " + std::to_string(opts.names->size()) + " topic names for " +
                     std::to_string(opts.nmf.n_topics) + " topics");
  }
  Vocabulary vocab = BuildVocabulary(docs, opts.vocab);
  TfidfMatrix v = Vectorize(docs, vocab);
  NmfConfig cfg = opts.nmf;
  NmfFit fit = NmfTrain(v, cfg);
  TopicTermMatrix h = fit.h;
  TopicModel model = MakeTopicModel(std::move(vocab), std::move(h), cfg, opts.vocab, opts.names);
  return {std::move(model), std::move(fit)};
}

LabeledSet LabelDocuments(const TopicModel &model, const std::vector<SegmentDoc> &docs,
                          LabelSource source) {
  DocTopicMatrix w = InferTopics(model, docs);
  return MakeLabeledSet(w.row_ids, AssignLabels(w), source);
}

std::string TopTermsToCsv(const TopicModel &model, int k) {
  std::string out = "topic_id,topic,rank,term,weight\n";
  const int kk = std::min(k, model.n_terms());
  for (int t = 0; t < model.n_topics(); ++t) {
    if ((model.h.values.row(t).array() == 0.0).all()) continue;
    TopicSummary s = TopTerms(model, t, kk);
    for (std::size_t r = 0; r < s.top_terms.size(); ++r) {
      out += std::to_string(t) + "," + model.TopicName(t) + "," + std::to_string(r + 1) +
             "," + s.top_terms[r].first + "," + FormatFixed(s.top_terms[r].second, 6) +
             "\n";
    }
  }
  return out;
}

std::vector<std::string> NameTopicsByPlantedTerms(
    const TopicModel &model, const std::vector<std::vector<std::string>> &planted_terms,
    const std::vector<std::string> &planted_names) {
  const int t = model.n_topics();
  const int p = static_cast<int>(planted_terms.size());
  // mass[i][j]: weight of learned topic i on the vocabulary of planted topic j
  std::vector<std::vector<double>> mass(t, std::vector<double>(p, 0.0));
  for (int j = 0; j < p; ++j) {
    for (const auto &term : planted_terms[j]) {
      if (auto col = model.vocab.Index(term)) {
        for (int i = 0; i < t; ++i)
          mass[i][j] += model.h.values(i, static_cast<Eigen::Index>(*col));
      }
    }
  }
  for (int i = 0; i < t; ++i) {
    double total = model.h.values.row(i).sum();
    if (total > 0.0)
      for (double &m : mass[i]) m /= total;
  }

  std::vector<std::string> names(t);
  for (int i = 0; i < t; ++i) names[i] = "t" + std::to_string(i + 1);
  std::vector<bool> row_used(t, false), col_used(p, false);
  for (int step = 0; step < std::min(t, p); ++step) {
    int bi = -1, bj = -1;
    double best = 0.0;
    for (int i = 0; i < t; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < p; ++j) {
        if (!col_used[j] && mass[i][j] > best) {
          best = mass[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    row_used[bi] = col_used[bj] = true;
    names[bi] = planted_names[bj];
  }
  return names;
}

std::vector<NoiseLevel> DemoNoiseLadder() {
  return {
      {"gold", 0.0, 0.0},
      {"drop0.0-sub0.1", 0.0, 0.1},
      {"drop0.4-sub0.1", 0.4, 0.1},
      {"drop0.8-sub0.1", 0.8, 0.1},
  };
}

namespace {

std::string TimelineSummaryRow(const std::string &prompt, const DriftTimeline &tl,
                               int prompt_topic, int family_topic, int intro_topic) {
  auto share = [&](int k) { return k >= 0 ? tl.overall[k] : 0.0; };
  double first_intro = 0.0;
  if (!tl.segment_indices.empty() && tl.segment_indices.front() == 0 && intro_topic >= 0)
    first_intro = tl.fractions.front()[intro_topic];
  return prompt + "," + std::to_string(tl.n_calls) + "," + std::to_string(tl.n_segments) +
         "," + FormatFixed(share(prompt_topic), 6) + "," +
         FormatFixed(share(family_topic), 6) + "," + FormatFixed(first_intro, 6) + "\n";
}

int FindName(const std::vector<std::string> &names, const std::string &name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

}  // namespace

DemoSummary RunDemo(const std::filesystem::path &out_dir, std::uint64_t seed) {
  DemoSummary summary;

  DemoCorpusOptions corpus_opts;
  corpus_opts.seed = seed;
  DemoCorpus corpus = GenerateDemoCorpus(corpus_opts);
  SaveCorpus(corpus.utterances, out_dir / "utterances.jsonl");
  {
    std::string out;
    for (const auto &[call, prompt] : corpus.call_prompts)
      out += Json{{"call_id", call}, {"prompt", prompt}}.dump() + "\n";
    WriteFile(out_dir / "prompts.jsonl", out);
  }

  std::vector<SegmentDoc> segs = SegmentCalls(corpus.utterances);
  SaveSegments(segs, out_dir / "segments.jsonl");

  // Nested training splits plus the held-out remainder.
  const auto durations = CallDurations(corpus.utterances);
  std::vector<CorpusSplit> splits;
  for (auto [name, hours] : std::vector<std::pair<std::string, double>>{
           {"train20h", 20.0}, {"train10h", 10.0}, {"train5h", 5.0}, {"train2.5h", 2.5}})
    splits.push_back(SampleSplit(durations, hours * 3600.0, seed, name));
  splits.push_back(ComplementSplit(durations, {splits.front()}, "eval"));
  WriteFile(out_dir / "splits.json", SplitsToJson(splits));

  const std::vector<SegmentDoc> train = FilterByCalls(segs, splits.front().call_ids);
  const std::vector<SegmentDoc> eval = FilterByCalls(segs, splits.back().call_ids);
  summary.n_train_docs = train.size();
  summary.n_eval_docs = eval.size();

  FitOptions fit_opts;
  fit_opts.nmf.seed = seed;
  FitResult fitted = FitTopicModel(train, fit_opts);
  auto names =
      NameTopicsByPlantedTerms(fitted.model, corpus.topic_terms, corpus.topic_names);
  TopicModel model = MakeTopicModel(fitted.model.vocab, fitted.model.h, fitted.model.config,
                                    fitted.model.vocab_options, names);
  SaveModel(model, out_dir / "model.json");
  WriteFile(out_dir / "top_terms.csv", TopTermsToCsv(model, 5));
  {
    std::string out = "iteration,objective\n";
    for (std::size_t i = 0; i < fitted.fit.trace.size(); ++i)
      out += std::to_string(i) + "," + FormatFixed(fitted.fit.trace[i], 9) + "\n";
    WriteFile(out_dir / "nmf_trace.csv", out);
  }
  summary.vocab_size = model.vocab.size();
  summary.n_topics = model.n_topics();

  // Silver labels: the model applied to the clean held-out text.
  const LabeledSet silver = LabelDocuments(model, eval, LabelSource::kSilver);
  SaveLabels(silver, out_dir / "silver_labels.jsonl");
  summary.baseline = MajorityBaseline(silver);

  std::vector<std::string> eval_texts;
  for (const auto &d : eval) eval_texts.push_back(d.text);
  std::vector<std::vector<std::string>> refs;
  for (const auto &t : eval_texts) refs.push_back({t});

  std::string ladder_csv = "level,p_drop,p_sub,bleu,accuracy,baseline_accuracy\n";
  std::vector<std::pair<std::string, std::vector<long long>>> histograms;
  histograms.emplace_back("silver", LabelHistogram(silver, model.n_topics()));
  for (const NoiseLevel &level : DemoNoiseLadder()) {
    NoiseParams noise;
    noise.p_drop = level.p_drop;
    noise.p_sub = level.p_sub;
    noise.seed = DeriveSeed(seed, level.name);
    std::vector<SegmentDoc> noisy = DegradeCorpus(eval, noise);
    SaveSegments(noisy, out_dir / "levels" / level.name / "segments.jsonl");

    std::vector<std::string> hyps;
    for (const auto &d : noisy) hyps.push_back(d.text);
    const BleuScore bleu = CorpusBleu(hyps, refs);

    const LabeledSet pred = LabelDocuments(model, noisy, LabelSource::kSystem);
    SaveLabels(pred, out_dir / "levels" / level.name / "labels.jsonl");
    const EvalReport report = Evaluate(pred, silver, model.n_topics());
    WriteEvalReport(report, out_dir / "levels" / level.name, names);
    WriteFile(out_dir / "levels" / level.name / "bleu.json", BleuToJson(bleu));
    histograms.emplace_back(level.name, report.predicted_histogram);

    summary.ladder.push_back({level, bleu.score, report.accuracy});
    ladder_csv += level.name + "," + FormatFixed(level.p_drop, 2) + "," +
                  FormatFixed(level.p_sub, 2) + "," + FormatFixed(bleu.score, 4) + "," +
                  FormatFixed(report.accuracy, 6) + "," +
                  FormatFixed(report.baseline.fraction, 6) + "\n";
  }
  WriteFile(out_dir / "ladder.csv", ladder_csv);
  {
    std::string out = "topic_id,topic";
    for (const auto &[name, h] : histograms) out += "," + name;
    out += '\n';
    for (int t = 0; t < model.n_topics(); ++t) {
      out += std::to_string(t) + "," + names[t];
      for (const auto &[name, h] : histograms) out += "," + std::to_string(h[t]);
      out += '\n';
    }
    WriteFile(out_dir / "label_histograms.csv", out);
  }

  // Assigned-prompt distribution over all calls and over the training split.
  {
    std::vector<std::string> prompt_names = corpus.prompts;
    std::sort(prompt_names.begin(), prompt_names.end());
    auto prompt_set = [&](const std::vector<std::string> &calls) {
      LabeledSet s;
      s.source = LabelSource::kAssignedPrompt;
      for (const auto &call : calls) {
        s.doc_ids.push_back(call);
        s.labels.push_back(FindName(prompt_names, corpus.call_prompts.at(call)));
      }
      return s;
    };
    std::vector<std::string> all_calls;
    for (const auto &[call, prompt] : corpus.call_prompts) all_calls.push_back(call);
    const auto all = PromptHistogram(prompt_set(all_calls));
    const auto train_hist = PromptHistogram(prompt_set(splits.front().call_ids));
    std::string out = "prompt,all_calls,train20h\n";
    for (std::size_t p = 0; p < prompt_names.size(); ++p) {
      int key = static_cast<int>(p);
      auto get = [&](const std::map<int, double> &h) {
        auto it = h.find(key);
        return it == h.end() ? 0.0 : it->second;
      };
      out += prompt_names[p] + "," + FormatFixed(get(all), 6) + "," +
             FormatFixed(get(train_hist), 6) + "\n";
    }
    WriteFile(out_dir / "prompt_histogram.csv", out);
  }

  // Topic drift within training calls, grouped by assigned prompt.
  {
    const LabeledSet train_silver = LabelDocuments(model, train, LabelSource::kSilver);
    SaveLabels(train_silver, out_dir / "train_silver_labels.jsonl");
    std::string drift =
        "prompt,n_calls,n_segments,share_prompt_topic,share_family_misc,first_segment_intro\n";
    for (const std::string prompt : {"religion", "music"}) {
      std::set<std::string> calls;
      for (const auto &call : splits.front().call_ids)
        if (corpus.call_prompts.at(call) == prompt) calls.insert(call);
      if (calls.empty()) continue;
      DriftTimeline tl = ComputeDriftTimeline(train_silver, train, calls, model.n_topics());
      WriteFile(out_dir / ("timeline_" + prompt + ".csv"), TimelineToCsv(tl));
      drift += TimelineSummaryRow(prompt, tl, FindName(names, prompt),
                                  FindName(names, "family-misc"),
                                  FindName(names, "intro-misc"));
    }
    WriteFile(out_dir / "drift_summary.csv", drift);
  }

  Json doc = {{"seed", seed},
              {"n_calls", corpus.call_prompts.size()},
              {"n_segments", segs.size()},
              {"n_train_docs", summary.n_train_docs},
              {"n_eval_docs", summary.n_eval_docs},
              {"vocab_size", summary.vocab_size},
              {"n_topics", summary.n_topics},
              {"nmf_iterations", fitted.fit.iterations},
              {"model_fingerprint", model.fingerprint},
              {"baseline", {{"topic", names[summary.baseline.topic_id]},
                            {"accuracy", summary.baseline.fraction}}}};
  Json ladder = Json::array();
  for (const auto &row : summary.ladder)
    ladder.push_back({{"level", row.level.name},
                      {"p_drop", row.level.p_drop},
                      {"p_sub", row.level.p_sub},
                      {"bleu", row.bleu},
                      {"accuracy", row.accuracy}});
  doc["ladder"] = ladder;
  WriteFile(out_dir / "summary.json", doc.dump(2) + "\n");
  return summary;
}

}  // namespace sttopic
