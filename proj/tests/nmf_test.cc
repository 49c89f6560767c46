// tests/nmf_test.cc

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
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "sttopic/error.h"
#include "sttopic/nmf.h"
#include "sttopic/pipeline.h"
#include "sttopic/synth.h"
#include "sttopic/topics.h"
#include "test_util.h"

namespace sttopic {
namespace {

using testing::RefSplitMix;

SparseMatrix ToSparse(const DenseMatrix &d) { return d.sparseView(0.0, 0.0); }

DenseMatrix RandomDense(int rows, int cols, std::uint64_t seed, double zero_frac = 0.0) {
  RefSplitMix rng{seed};
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double u = rng.Uniform();
      m(i, j) = rng.Uniform() < zero_frac ? 0.0 : u;
    }
  return m;
}

// Plain-loop multiplicative update, W first, for cross-checking.
void ReferenceStep(const DenseMatrix &v, DenseMatrix *w, DenseMatrix *h) {
  const int n = static_cast<int>(v.rows()), m = static_cast<int>(v.cols());
  const int t = static_cast<int>(w->cols());
  DenseMatrix nw = *w;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < t; ++k) {
      double num = 0.0, den = 0.0;
      for (int j = 0; j < m; ++j) {
        num += v(i, j) * (*h)(k, j);
        double wh = 0.0;
        for (int q = 0; q < t; ++q) wh += (*w)(i, q) * (*h)(q, j);
        den += wh * (*h)(k, j);
      }
      nw(i, k) = (*w)(i, k) * num / (den + 1e-12);
    }
  *w = nw;
  DenseMatrix nh = *h;
  for (int k = 0; k < t; ++k)
    for (int j = 0; j < m; ++j) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        num += (*w)(i, k) * v(i, j);
        double wh = 0.0;
        for (int q = 0; q < t; ++q) wh += (*w)(i, q) * (*h)(q, j);
        den += (*w)(i, k) * wh;
      }
      nh(k, j) = (*h)(k, j) * num / (den + 1e-12);
    }
  *h = nh;
}

std::vector<Eigen::Index> RowArgmax(const DenseMatrix &w) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    Eigen::Index best = 0;
    w.row(i).maxCoeff(&best);
    out.push_back(best);
  }
  return out;
}

TEST_SUITE("nmf") {
  TEST_CASE("objective examples") {
    DenseMatrix v(1, 2), w(1, 1), h(1, 2);
    v << 1, 1;
    w << 1;
    h << 0, 0;
    CHECK(Objective(v, w, h) == 1.0);
    h << 1, 1;
    CHECK(Objective(v, w, h) == 0.0);
    CHECK(Objective(ToSparse(v), w, h) == 0.0);
  }

  TEST_CASE("objective equals the elementwise sum") {
    DenseMatrix v = RandomDense(20, 10, 1), w = RandomDense(20, 3, 2), h = RandomDense(3, 10, 3);
    double sum = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 10; ++j) {
        double wh = 0.0;
        for (int k = 0; k < 3; ++k) wh += w(i, k) * h(k, j);
        sum += (v(i, j) - wh) * (v(i, j) - wh);
      }
    CHECK(Objective(v, w, h) == doctest::Approx(0.5 * sum).epsilon(1e-12));
    CHECK(Objective(ToSparse(v), w, h) == doctest::Approx(0.5 * sum).epsilon(1e-12));
  }

  TEST_CASE("objective shape mismatch") {
    DenseMatrix v = RandomDense(4, 3, 1);
    CHECK_THROWS_AS(Objective(v, RandomDense(4, 2, 1), RandomDense(3, 3, 1)), UsageError);
    CHECK_THROWS_AS(Objective(v, RandomDense(5, 2, 1), RandomDense(2, 3, 1)), UsageError);
  }

  TEST_CASE("rank-1 recovery") {
    Eigen::VectorXd u = RandomDense(30, 1, 11).col(0).array() + 0.1;
    Eigen::VectorXd r = RandomDense(25, 1, 12).col(0).array() + 0.1;
    DenseMatrix v = u * r.transpose();
    for (NmfInit init : {NmfInit::kNndsvda, NmfInit::kSeededRandom}) {
      NmfConfig cfg;
      cfg.n_topics = 1;
      cfg.max_iter = 200;
      cfg.tol = 0.0;
      cfg.init = init;
      auto fit = NmfTrain(ToSparse(v), cfg);
      CHECK(Objective(v, fit.w.values, fit.h.values) < 1e-8 * v.squaredNorm());
    }
  }

  TEST_CASE("identity is a fixed point") {
    DenseMatrix eye = DenseMatrix::Identity(2, 2);
    NmfConfig cfg;
    cfg.n_topics = 2;
    cfg.max_iter = 5;
    cfg.tol = 0.0;
    auto fit = NmfTrain(ToSparse(eye), cfg, eye, eye);
    CHECK(fit.trace[0] == 0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(fit.w.values(i, j) == doctest::Approx(eye(i, j)).epsilon(1e-11));
        CHECK(fit.h.values(i, j) == doctest::Approx(eye(i, j)).epsilon(1e-11));
      }
    CHECK(fit.w.values(0, 1) == 0.0);
    CHECK(fit.h.values(1, 0) == 0.0);
  }

  TEST_CASE("single hand-run update") {
    DenseMatrix v(2, 2), w0(2, 1), h0(1, 2);
    v << 2, 0, 0, 2;
    w0 << 1, 1;
    h0 << 1, 1;
    NmfConfig cfg;
    cfg.n_topics = 1;
    cfg.max_iter = 1;
    cfg.tol = 0.0;
    auto fit = NmfTrain(ToSparse(v), cfg, w0, h0);
    REQUIRE(fit.trace.size() == 2);
    CHECK(fit.trace[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(fit.trace[1] == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(fit.w.values(0, 0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(fit.w.values(1, 0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(fit.h.values(0, 0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(fit.h.values(0, 1) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(Objective(v, fit.w.values, fit.h.values) == doctest::Approx(2.0).epsilon(1e-11));
  }

  TEST_CASE("updates agree with the plain-loop reference") {
    DenseMatrix v = RandomDense(12, 9, 21, 0.4);
    DenseMatrix w = RandomDense(12, 3, 22), h = RandomDense(3, 9, 23);
    NmfConfig cfg;
    cfg.n_topics = 3;
    cfg.max_iter = 6;
    cfg.tol = 0.0;
    auto fit = NmfTrain(ToSparse(v), cfg, w, h);
    for (int it = 0; it < 6; ++it) {
      ReferenceStep(v, &w, &h);
      CHECK(fit.trace[it + 1] == doctest::Approx(Objective(v, w, h)).epsilon(1e-9));
    }
    CHECK((fit.w.values - w).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((fit.h.values - h).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("nndsvda on 2I has no zero entries") {
    DenseMatrix v(2, 2);
    v << 2, 0, 0, 2;
    NmfConfig cfg;
    cfg.n_topics = 2;
    auto [w0, h0] = InitFactors(ToSparse(v), cfg);
    CHECK((w0.array() > 0.0).all());
    CHECK((h0.array() > 0.0).all());
    // Each factor's zero pattern is filled with mean(V) = 1.
    CHECK((w0.array() == 1.0).count() == 2);
    CHECK((h0.array() == 1.0).count() == 2);
    CHECK(w0.maxCoeff() == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("nndsvda on a larger matrix") {
    // Low-rank plus noise, big enough for the randomized SVD path.
    DenseMatrix v =
        RandomDense(120, 4, 63) * RandomDense(4, 90, 64) + 0.01 * RandomDense(120, 90, 65);
    NmfConfig cfg;
    cfg.n_topics = 4;
    auto [w0, h0] = InitFactors(ToSparse(v), cfg);
    auto [w1, h1] = InitFactors(ToSparse(v), cfg);
    CHECK(w0 == w1);
    CHECK(h0 == h1);
    CHECK(w0.minCoeff() > 0.0);
    CHECK(h0.minCoeff() > 0.0);
    // The leading component alone already explains most of V.
    DenseMatrix rank1 = w0.col(0) * h0.row(0);
    CHECK((v - rank1).squaredNorm() < 0.5 * v.squaredNorm());

    cfg.tol = 0.0;
    cfg.max_iter = 200;
    auto fit = NmfTrain(ToSparse(v), cfg);
    CHECK(Objective(v, fit.w.values, fit.h.values) < 1e-3 * v.squaredNorm());
  }

  TEST_CASE("seeded-random init is deterministic and scaled") {
    DenseMatrix v = RandomDense(15, 8, 4);
    NmfConfig cfg;
    cfg.n_topics = 4;
    cfg.init = NmfInit::kSeededRandom;
    cfg.seed = 77;
    auto a = InitFactors(ToSparse(v), cfg);
    auto b = InitFactors(ToSparse(v), cfg);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    const double bound = std::sqrt(v.mean() / 4.0);
    CHECK(a.first.minCoeff() >= 0.0);
    CHECK(a.first.maxCoeff() < bound);
    cfg.seed = 78;
    CHECK_FALSE(InitFactors(ToSparse(v), cfg).first == a.first);
  }

  TEST_CASE("trace is non-increasing and factors stay nonnegative") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
      DenseMatrix v = RandomDense(60, 40, seed, 0.7);
      NmfConfig cfg;
      cfg.n_topics = 6;
      cfg.max_iter = 150;
      cfg.tol = 0.0;
      cfg.init = seed == 6 ? NmfInit::kSeededRandom : NmfInit::kNndsvda;
      auto fit = NmfTrain(ToSparse(v), cfg);
      CHECK(fit.iterations == 150);
      for (std::size_t k = 1; k < fit.trace.size(); ++k)
        CHECK(fit.trace[k] <= fit.trace[k - 1] + 1e-9);
      CHECK(fit.w.values.minCoeff() >= 0.0);
      CHECK(fit.h.values.minCoeff() >= 0.0);
      CHECK(fit.trace.back() ==
            doctest::Approx(Objective(v, fit.w.values, fit.h.values)).epsilon(1e-9));
    }
  }

  TEST_CASE("tolerance stops early") {
    DenseMatrix v = RandomDense(30, 20, 8);
    NmfConfig cfg;
    cfg.n_topics = 3;
    cfg.tol = 1e-3;
    auto fit = NmfTrain(ToSparse(v), cfg);
    CHECK(fit.converged);
    CHECK(fit.iterations < cfg.max_iter);
    const double prev = fit.trace[fit.trace.size() - 2];
    CHECK((prev - fit.trace.back()) / prev < 1e-3);
  }

  TEST_CASE("training errors") {
    NmfConfig cfg;
    cfg.n_topics = 2;
    CHECK_THROWS_AS(NmfTrain(ToSparse(DenseMatrix::Zero(3, 3)), cfg), DataError);
    cfg.n_topics = 4;
    CHECK_THROWS_AS(NmfTrain(ToSparse(RandomDense(3, 5, 1)), cfg), UsageError);
    cfg.n_topics = 1;
    cfg.max_iter = 0;
    CHECK_THROWS_AS(NmfTrain(ToSparse(RandomDense(3, 5, 1)), cfg), UsageError);
  }

  TEST_CASE("non-finite values name the iteration") {
    DenseMatrix v = RandomDense(6, 5, 3) * 1e200;
    NmfConfig cfg;
    cfg.n_topics = 2;
    cfg.init = NmfInit::kSeededRandom;
    try {
      NmfTrain(ToSparse(v), cfg);
      FAIL("expected NumericalError");
    } catch (const NumericalError &e) {
      CHECK(std::string(e.what()).find("iteration") != std::string::npos);
    }
  }

  TEST_CASE("transform keeps H fixed and is reproducible") {
    DenseMatrix v = RandomDense(50, 30, 31, 0.5);
    NmfConfig cfg;
    cfg.n_topics = 5;
    auto fit = NmfTrain(ToSparse(v), cfg);
    const DenseMatrix h_before = fit.h.values;
    DenseMatrix vp = RandomDense(20, 30, 32, 0.5);
    DenseMatrix w1 = NmfTransform(ToSparse(vp), fit.h.values, cfg);
    CHECK(fit.h.values == h_before);
    CHECK(std::memcmp(fit.h.values.data(), h_before.data(),
                      sizeof(double) * static_cast<std::size_t>(h_before.size())) == 0);
    CHECK(w1.minCoeff() >= 0.0);
    CHECK(NmfTransform(ToSparse(vp), fit.h.values, cfg) == w1);
    CHECK(w1.rows() == 20);
    CHECK(w1.cols() == 5);
  }

  TEST_CASE("transform of a zero row") {
    DenseMatrix h = RandomDense(3, 6, 41);
    DenseMatrix vp = DenseMatrix::Zero(2, 6);
    vp.row(1) = RandomDense(1, 6, 42).row(0);
    NmfConfig cfg;
    cfg.n_topics = 3;
    DenseMatrix w = NmfTransform(ToSparse(vp), h, cfg);
    CHECK(w.row(0).maxCoeff() < 1e-12);
    auto labels = AssignLabels(w);
    CHECK(labels.labels[0] == 0);
    CHECK(labels.degenerate[0]);
    CHECK_FALSE(labels.degenerate[1]);
  }

  TEST_CASE("transform dimension mismatch") {
    NmfConfig cfg;
    cfg.n_topics = 2;
    CHECK_THROWS_AS(NmfTransform(ToSparse(RandomDense(3, 5, 1)), RandomDense(2, 4, 1), cfg),
                    DataError);
  }

  TEST_CASE("transform of training rows recovers their topic") {
    PlantedCorpusOptions popts;
    popts.n_docs = 200;
    auto corpus = GeneratePlantedCorpus(popts);
    FitOptions fo;
    fo.vocab.max_df_ratio = 1.0;
    fo.nmf.n_topics = 5;
    auto result = FitTopicModel(corpus.docs, fo);
    auto v = Vectorize(corpus.docs, result.model.vocab);
    auto train_labels = RowArgmax(result.fit.w.values);
    auto inferred = RowArgmax(NmfTransform(v.values, result.model.h.values, result.model.config));
    CHECK(inferred == train_labels);
  }

  TEST_CASE("scaling V scales the objective and keeps argmax") {
    DenseMatrix v = RandomDense(40, 25, 51, 0.6);
    NmfConfig cfg;
    cfg.n_topics = 4;
    cfg.max_iter = 100;
    cfg.tol = 0.0;
    cfg.init = NmfInit::kSeededRandom;
    auto a = NmfTrain(ToSparse(v), cfg);
    auto b = NmfTrain(ToSparse(3.0 * v), cfg);
    CHECK(b.trace.back() == doctest::Approx(9.0 * a.trace.back()).epsilon(1e-6));
    CHECK(RowArgmax(a.w.values) == RowArgmax(b.w.values));
  }

  TEST_CASE("init names") {
    CHECK(ParseNmfInit("nndsvda") == NmfInit::kNndsvda);
    CHECK(ParseNmfInit(NmfInitName(NmfInit::kSeededRandom)) == NmfInit::kSeededRandom);
    CHECK_THROWS_AS(ParseNmfInit("svd"), UsageError);
  }
}

}  // namespace
}  // namespace sttopic
