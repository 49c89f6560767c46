// tools/sttopic_main.cc

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

// Command-line front end: one subcommand per pipeline stage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sttopic/bleu.h"
#include "sttopic/corpus.h"
#include "sttopic/degrade.h"
#include "sttopic/error.h"
#include "sttopic/eval.h"
#include "sttopic/pipeline.h"
#include "sttopic/topics.h"

namespace {

using sttopic::DataError;
using sttopic::UsageError;
using Json = nlohmann::json;
namespace fs = std::filesystem;

int ExitCode(sttopic::ErrorKind kind) {
  switch (kind) {
    case sttopic::ErrorKind::kUsage: return 2;
    case sttopic::ErrorKind::kData: return 3;
    case sttopic::ErrorKind::kNumerical: return 4;
  }
  return 3;
}

const char *KindName(sttopic::ErrorKind kind) {
  switch (kind) {
    case sttopic::ErrorKind::kUsage: return "usage";
    case sttopic::ErrorKind::kData: return "data";
    case sttopic::ErrorKind::kNumerical: return "numerical";
  }
  return "data";
}

int ReportError(const std::string &command, const char *kind, const std::string &msg,
                int code) {
  Json err = {{"error", kind}, {"command", command}, {"message", msg}, {"exit_code", code}};
  std::cerr << err.dump() << std::endl;
  return code;
}

void Log(const std::string &command, const std::string &msg) {
  std::cerr << "[" << command << "] " << msg << std::endl;
}

void WriteText(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
}

std::vector<std::string> ReadLines(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> SplitCommaList(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "20h", "90m", "1800s" or plain seconds.
double ParseDuration(const std::string &text) {
  if (text.empty()) throw UsageError("empty duration");
  double scale = 1.0;
  std::string num = text;
  switch (text.back()) {
    case 'h': scale = 3600.0; num.pop_back(); break;
    case 'm': scale = 60.0; num.pop_back(); break;
    case 's': num.pop_back(); break;
    default: break;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(num, &used);
  } catch (const std::exception &) {
    throw UsageError("bad duration '" + text + "'");
  }
  if (used != num.size() || v < 0.0) throw UsageError("bad duration '" + text + "'");
  return v * scale;
}

// Segments, optionally restricted to one named split.
std::vector<sttopic::SegmentDoc> LoadDocs(const std::string &path,
                                          const std::string &split_file,
                                          const std::string &split_name) {
  auto segs = sttopic::LoadSegments(path);
  if (split_file.empty()) return segs;
  if (split_name.empty()) throw UsageError("--split is required with --split-file");
  for (const auto &s : sttopic::LoadSplits(split_file))
    if (s.name == split_name) return sttopic::FilterByCalls(segs, s.call_ids);
  throw UsageError("split '" + split_name + "' not found in " + split_file);
}

std::vector<std::string> ModelNames(const sttopic::TopicModel &model) {
  std::vector<std::string> names;
  for (int t = 0; t < model.n_topics(); ++t) names.push_back(model.TopicName(t));
  return names;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Topic classification of translated speech segments"};
  app.set_config("--config", "", "TOML-style config file; flags override its values");
  app.require_subcommand(1);
  std::string command = "sttopic";

  // segment
  std::string seg_in, seg_out;
  double window_s = sttopic::kDefaultWindowSeconds;
  auto *seg = app.add_subcommand("segment", "Split calls into fixed-length segments");
  seg->add_option("input", seg_in, "Utterance JSON-lines file")->required();
  seg->add_option("output", seg_out, "Segment JSON-lines output")->required();
  seg->add_option("--window", window_s, "Window length in seconds")->capture_default_str();

  // split
  std::string split_in, split_out, split_prefix = "train", split_rest;
  std::vector<std::string> split_targets;
  std::uint64_t split_seed = 0;
  auto *split = app.add_subcommand("split", "Sample nested call splits by duration");
  split->add_option("input", split_in, "Utterance JSON-lines file")->required();
  split->add_option("output", split_out, "Split JSON output")->required();
  split->add_option("--target", split_targets, "Target duration, e.g. 20h (repeatable)")
      ->required();
  split->add_option("--seed", split_seed, "Shuffle seed")->capture_default_str();
  split->add_option("--prefix", split_prefix, "Split name prefix")->capture_default_str();
  split->add_option("--rest", split_rest, "Also emit calls outside the first split under this name");

  // fit
  std::string fit_in, fit_model, fit_split_file, fit_split, fit_names, fit_top_out,
      fit_trace_out, fit_vocab_out, fit_tfidf_out, fit_init = "nndsvda";
  int fit_top_k = 5;
  sttopic::FitOptions fit_opts;
  auto *fit = app.add_subcommand("fit", "Learn a topic model from training segments");
  fit->add_option("input", fit_in, "Segment JSON-lines file")->required();
  fit->add_option("model", fit_model, "Model JSON output")->required();
  fit->add_option("--topics", fit_opts.nmf.n_topics, "Number of topics")->capture_default_str();
  fit->add_option("--max-iter", fit_opts.nmf.max_iter, "NMF iteration cap")->capture_default_str();
  fit->add_option("--tol", fit_opts.nmf.tol, "Relative improvement stop")->capture_default_str();
  fit->add_option("--seed", fit_opts.nmf.seed, "Seed")->capture_default_str();
  fit->add_option("--init", fit_init, "nndsvda or seeded-random")->capture_default_str();
  fit->add_option("--min-df", fit_opts.vocab.min_df, "Minimum document frequency")
      ->capture_default_str();
  fit->add_option("--max-df", fit_opts.vocab.max_df_ratio, "Maximum document frequency ratio")
      ->capture_default_str();
  fit->add_option("--max-terms", fit_opts.vocab.max_terms, "Vocabulary size cap")
      ->capture_default_str();
  fit->add_option("--names", fit_names, "Comma-separated topic names");
  fit->add_option("--split-file", fit_split_file, "Split JSON restricting the input");
  fit->add_option("--split", fit_split, "Split name inside --split-file");
  fit->add_option("--top-terms-out", fit_top_out, "Write top terms CSV");
  fit->add_option("--top-k", fit_top_k, "Terms per topic in --top-terms-out")->capture_default_str();
  fit->add_option("--trace-out", fit_trace_out, "Write the objective trace CSV");
  fit->add_option("--vocab-out", fit_vocab_out, "Write the vocabulary JSON");
  fit->add_option("--tfidf-out", fit_tfidf_out, "Write the training tf-idf matrix as CSV");

  // label
  std::string lab_in, lab_model, lab_out, lab_split_file, lab_split, lab_source = "system";
  auto *label = app.add_subcommand("label", "Assign topics to segments with a fixed model");
  label->add_option("input", lab_in, "Segment JSON-lines file")->required();
  label->add_option("--model", lab_model, "Model JSON")->required();
  label->add_option("output", lab_out, "Label JSON-lines output")->required();
  label->add_option("--split-file", lab_split_file, "Split JSON restricting the input");
  label->add_option("--split", lab_split, "Split name inside --split-file");
  label->add_option("--source", lab_source, "silver or system")->capture_default_str();

  // eval
  std::string ev_pred, ev_silver, ev_out, ev_model;
  auto *eval = app.add_subcommand("eval", "Score predicted labels against silver labels");
  eval->add_option("--pred", ev_pred, "Predicted labels")->required();
  eval->add_option("--silver", ev_silver, "Silver labels")->required();
  eval->add_option("--out-dir", ev_out, "Directory for report.json and CSVs")->required();
  eval->add_option("--model", ev_model, "Model JSON, for topic names and count");

  // drift
  std::string dr_labels, dr_segments, dr_calls, dr_calls_file, dr_out, dr_model;
  auto *drift = app.add_subcommand("drift", "Label distribution per segment index");
  drift->add_option("--labels", dr_labels, "Label JSON-lines")->required();
  drift->add_option("--segments", dr_segments, "Segment JSON-lines")->required();
  drift->add_option("--calls", dr_calls, "Comma-separated call ids (default: all)");
  drift->add_option("--calls-file", dr_calls_file, "File with one call id per line");
  drift->add_option("--out", dr_out, "timeline.csv output")->required();
  drift->add_option("--model", dr_model, "Model JSON, for the topic count");

  // prompts
  std::string pr_in, pr_out, pr_calls_file;
  auto *prompts = app.add_subcommand("prompts", "Share of calls per assigned prompt");
  prompts->add_option("input", pr_in, "JSON-lines {call_id, prompt}")->required();
  prompts->add_option("output", pr_out, "CSV output")->required();
  prompts->add_option("--calls-file", pr_calls_file, "Restrict to these call ids");

  // bleu
  std::string bl_hyp, bl_out;
  std::vector<std::string> bl_refs;
  bool bl_smooth = false;
  auto *bleu = app.add_subcommand("bleu", "Corpus BLEU against one or more references");
  bleu->add_option("--hyp", bl_hyp, "Hypothesis file, one segment per line")->required();
  bleu->add_option("--ref", bl_refs, "Reference file (repeatable)")->required();
  bleu->add_flag("--smooth", bl_smooth, "Add-one smoothing for 2..4-grams");
  bleu->add_option("--out", bl_out, "Write the score as JSON");

  // degrade
  std::string dg_in, dg_out, dg_pool_file;
  sttopic::NoiseParams dg_noise;
  auto *degrade = app.add_subcommand("degrade", "Simulate noisy translations");
  degrade->add_option("input", dg_in, "Segment JSON-lines")->required();
  degrade->add_option("output", dg_out, "Segment JSON-lines output")->required();
  degrade->add_option("--p-drop", dg_noise.p_drop, "Token deletion probability")
      ->capture_default_str();
  degrade->add_option("--p-sub", dg_noise.p_sub, "Token substitution probability")
      ->capture_default_str();
  degrade->add_option("--seed", dg_noise.seed, "Seed")->capture_default_str();
  degrade->add_option("--pool-file", dg_pool_file,
                      "Substitute from these whitespace-separated words instead of the "
                      "corpus unigram distribution");

  // demo
  std::string demo_out;
  std::uint64_t demo_seed = 11;
  auto *demo = app.add_subcommand("demo", "Run the whole pipeline on a synthetic corpus");
  demo->add_option("--out-dir", demo_out, "Output directory")->required();
  demo->add_option("--seed", demo_seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return ReportError(command, "usage", e.what(), 2);
  }

  try {
    if (*seg) {
      command = "segment";
      auto utts = sttopic::LoadCorpus(seg_in);
      auto segs = sttopic::SegmentCalls(utts, window_s);
      sttopic::SaveSegments(segs, seg_out);
      Log(command, std::to_string(utts.size()) + " utterances -> " +
                       std::to_string(segs.size()) + " segments");
    } else if (*split) {
      command = "split";
      auto durations = sttopic::CallDurations(sttopic::LoadCorpus(split_in));
      std::vector<sttopic::CorpusSplit> splits;
      for (const auto &t : split_targets)
        splits.push_back(
            sttopic::SampleSplit(durations, ParseDuration(t), split_seed, split_prefix + t));
      if (!split_rest.empty())
        splits.push_back(sttopic::ComplementSplit(durations, {splits.front()}, split_rest));
      WriteText(split_out, sttopic::SplitsToJson(splits));
      for (const auto &s : splits)
        Log(command, s.name + ": " + std::to_string(s.call_ids.size()) + " calls");
    } else if (*fit) {
      command = "fit";
      fit_opts.nmf.init = sttopic::ParseNmfInit(fit_init);
      if (!fit_names.empty()) fit_opts.names = SplitCommaList(fit_names);
      auto docs = LoadDocs(fit_in, fit_split_file, fit_split);
      auto result = sttopic::FitTopicModel(docs, fit_opts);
      sttopic::SaveModel(result.model, fit_model);
      if (!fit_top_out.empty())
        WriteText(fit_top_out, sttopic::TopTermsToCsv(result.model, fit_top_k));
      if (!fit_trace_out.empty()) {
        std::string out = "iteration,objective\n";
        char buf[64];
        for (std::size_t i = 0; i < result.fit.trace.size(); ++i) {
          std::snprintf(buf, sizeof(buf), "%zu,%.9f\n", i, result.fit.trace[i]);
          out += buf;
        }
        WriteText(fit_trace_out, out);
      }
      if (!fit_vocab_out.empty())
        WriteText(fit_vocab_out, sttopic::VocabularyToJson(result.model.vocab));
      if (!fit_tfidf_out.empty())
        WriteText(fit_tfidf_out,
                  sttopic::TfidfToCoordinateCsv(sttopic::Vectorize(docs, result.model.vocab)));
      Log(command, std::to_string(docs.size()) + " docs, H " +
                       std::to_string(result.model.n_topics()) + "x" +
                       std::to_string(result.model.n_terms()) + ", " +
                       std::to_string(result.fit.iterations) + " iterations");
    } else if (*label) {
      command = "label";
      auto model = sttopic::LoadModel(lab_model);
      auto docs = LoadDocs(lab_in, lab_split_file, lab_split);
      auto labels =
          sttopic::LabelDocuments(model, docs, sttopic::ParseLabelSource(lab_source));
      sttopic::SaveLabels(labels, lab_out);
      long long degenerate = 0;
      for (bool d : labels.degenerate) degenerate += d;
      Log(command, std::to_string(docs.size()) + " docs labeled, " +
                       std::to_string(degenerate) + " degenerate");
    } else if (*eval) {
      command = "eval";
      auto pred = sttopic::LoadLabels(ev_pred, sttopic::LabelSource::kSystem);
      auto silver = sttopic::LoadLabels(ev_silver, sttopic::LabelSource::kSilver);
      std::vector<std::string> names;
      int n_topics = 0;
      if (!ev_model.empty()) {
        auto model = sttopic::LoadModel(ev_model);
        names = ModelNames(model);
        n_topics = model.n_topics();
      }
      auto report = sttopic::Evaluate(pred, silver, n_topics);
      sttopic::WriteEvalReport(report, ev_out, names);
      char buf[96];
      std::snprintf(buf, sizeof(buf), "accuracy %.4f, majority baseline %.4f",
                    report.accuracy, report.baseline.fraction);
      Log(command, buf);
    } else if (*drift) {
      command = "drift";
      auto labels = sttopic::LoadLabels(dr_labels, sttopic::LabelSource::kSilver);
      auto segs = sttopic::LoadSegments(dr_segments);
      std::set<std::string> calls;
      for (const auto &c : SplitCommaList(dr_calls)) calls.insert(c);
      if (!dr_calls_file.empty())
        for (const auto &c : ReadLines(dr_calls_file))
          if (!c.empty()) calls.insert(c);
      int n_topics = dr_model.empty() ? 0 : sttopic::LoadModel(dr_model).n_topics();
      auto tl = sttopic::ComputeDriftTimeline(labels, segs, calls, n_topics);
      WriteText(dr_out, sttopic::TimelineToCsv(tl));
      Log(command, std::to_string(tl.n_calls) + " calls, " + std::to_string(tl.n_segments) +
                       " segments");
    } else if (*prompts) {
      command = "prompts";
      std::set<std::string> keep;
      if (!pr_calls_file.empty())
        for (const auto &c : ReadLines(pr_calls_file))
          if (!c.empty()) keep.insert(c);
      std::vector<std::pair<std::string, std::string>> rows;
      std::set<std::string> names;
      std::size_t n = 0;
      std::ifstream in(pr_in);
      if (!in) throw DataError("cannot open '" + pr_in + "' for reading");
      for (std::string line; std::getline(in, line);) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json obj;
        try {
          obj = Json::parse(line);
          rows.emplace_back(obj.at("call_id").get<std::string>(),
                            obj.at("prompt").get<std::string>());
        } catch (const Json::exception &e) {
          throw sttopic::ParseError(n, e.what());
        }
        names.insert(rows.back().second);
      }
      std::vector<std::string> ordered(names.begin(), names.end());
      sttopic::LabeledSet set;
      set.source = sttopic::LabelSource::kAssignedPrompt;
      for (const auto &[call, prompt] : rows) {
        if (!keep.empty() && !keep.count(call)) continue;
        set.doc_ids.push_back(call);
        set.labels.push_back(static_cast<int>(
            std::find(ordered.begin(), ordered.end(), prompt) - ordered.begin()));
      }
      std::string out = "prompt,fraction\n";
      char buf[32];
      for (const auto &[label, frac] : sttopic::PromptHistogram(set)) {
        std::snprintf(buf, sizeof(buf), ",%.6f\n", frac);
        out += ordered[static_cast<std::size_t>(label)] + buf;
      }
      WriteText(pr_out, out);
    } else if (*bleu) {
      command = "bleu";
      auto hyps = ReadLines(bl_hyp);
      std::vector<std::vector<std::string>> streams;
      for (const auto &r : bl_refs) streams.push_back(ReadLines(r));
      auto refs = sttopic::TransposeReferences(streams);
      sttopic::BleuOptions opts;
      opts.smooth = bl_smooth;
      auto score = sttopic::CorpusBleu(hyps, refs, opts);
      if (!bl_out.empty()) WriteText(bl_out, sttopic::BleuToJson(score));
      char buf[64];
      std::snprintf(buf, sizeof(buf), "BLEU = %.2f", score.score);
      std::cout << buf << std::endl;
    } else if (*degrade) {
      command = "degrade";
      if (!dg_pool_file.empty()) {
        dg_noise.pool = sttopic::SubstitutionPool::kFixedList;
        std::ifstream in(dg_pool_file);
        if (!in) throw DataError("cannot open '" + dg_pool_file + "' for reading");
        for (std::string w; in >> w;) dg_noise.fixed_pool.push_back(w);
      }
      auto docs = sttopic::LoadSegments(dg_in);
      sttopic::SaveSegments(sttopic::DegradeCorpus(docs, dg_noise), dg_out);
      Log(command, std::to_string(docs.size()) + " segments degraded");
    } else if (*demo) {
      command = "demo";
      auto summary = sttopic::RunDemo(demo_out, demo_seed);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%zu train / %zu eval segments, baseline %.4f",
                    summary.n_train_docs, summary.n_eval_docs, summary.baseline.fraction);
      Log(command, buf);
      for (const auto &row : summary.ladder) {
        std::snprintf(buf, sizeof(buf), "%-16s BLEU %6.2f  accuracy %.4f",
                      row.level.name.c_str(), row.bleu, row.accuracy);
        Log(command, buf);
      }
    }
  } catch (const sttopic::Error &e) {
    return ReportError(command, KindName(e.kind()), e.what(), ExitCode(e.kind()));
  } catch (const fs::filesystem_error &e) {
    return ReportError(command, "data", e.what(), 3);
  } catch (const std::exception &e) {
    return ReportError(command, "data", e.what(), 3);
  }
  return 0;
}
