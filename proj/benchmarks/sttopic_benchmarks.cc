// benchmarks/sttopic_benchmarks.cc

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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sttopic/bleu.h"
#include "sttopic/degrade.h"
#include "sttopic/nmf.h"
#include "sttopic/pipeline.h"
#include "sttopic/random.h"
#include "sttopic/synth.h"
#include "sttopic/textprep.h"

namespace {

using namespace sttopic;

const std::vector<SegmentDoc> &DemoSegments() {
  static const std::vector<SegmentDoc> segs = [] {
    DemoCorpusOptions opts;
    opts.n_calls = 100;
    return SegmentCalls(GenerateDemoCorpus(opts).utterances);
  }();
  return segs;
}

SparseMatrix RandomSparse(int rows, int cols, double density, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng.UniformDouble() < density) trips.emplace_back(i, j, rng.UniformDouble());
  SparseMatrix m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

void BM_Tokenize(benchmark::State &state) {
  const auto &segs = DemoSegments();
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto &s : segs) {
      auto toks = Tokenize(s.text);
      benchmark::DoNotOptimize(toks.data());
      bytes += s.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

void BM_Vectorize(benchmark::State &state) {
  const auto &segs = DemoSegments();
  VocabularyOptions opts;
  const Vocabulary vocab = BuildVocabulary(segs, opts);
  for (auto _ : state) {
    auto m = Vectorize(segs, vocab);
    benchmark::DoNotOptimize(m.values.nonZeros());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(segs.size()));
}
BENCHMARK(BM_Vectorize)->Unit(benchmark::kMillisecond);

void BM_NmfTrain(benchmark::State &state) {
  const int docs = static_cast<int>(state.range(0));
  const SparseMatrix v = RandomSparse(docs, 1000, 0.02, 7);
  NmfConfig cfg;
  cfg.n_topics = 10;
  cfg.max_iter = 50;
  cfg.tol = 0.0;
  for (auto _ : state) {
    auto fit = NmfTrain(v, cfg);
    benchmark::DoNotOptimize(fit.trace.back());
  }
}
BENCHMARK(BM_NmfTrain)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_NmfTransform(benchmark::State &state) {
  const SparseMatrix v = RandomSparse(1000, 1000, 0.02, 7);
  NmfConfig cfg;
  cfg.n_topics = 10;
  const DenseMatrix h = NmfTrain(v, cfg).h.values;
  const SparseMatrix vp = RandomSparse(5000, 1000, 0.02, 8);
  for (auto _ : state) {
    auto w = NmfTransform(vp, h, cfg);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_NmfTransform)->Unit(benchmark::kMillisecond);

void BM_CorpusBleu(benchmark::State &state) {
  const auto &segs = DemoSegments();
  NoiseParams noise;
  noise.p_drop = 0.2;
  noise.p_sub = 0.1;
  const auto noisy = DegradeCorpus(segs, noise);
  std::vector<std::string> hyps;
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    hyps.push_back(noisy[i].text);
    refs.push_back({segs[i].text});
  }
  for (auto _ : state) benchmark::DoNotOptimize(CorpusBleu(hyps, refs).score);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hyps.size()));
}
BENCHMARK(BM_CorpusBleu)->Unit(benchmark::kMillisecond);

void BM_Degrade(benchmark::State &state) {
  const auto &segs = DemoSegments();
  NoiseParams noise;
  noise.p_drop = 0.4;
  noise.p_sub = 0.1;
  for (auto _ : state) {
    auto out = DegradeCorpus(segs, noise);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Degrade)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
