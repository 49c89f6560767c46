// src/nmf.cc

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

#include "sttopic/nmf.h"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "serialize.h"
#include "sttopic/error.h"
#include "sttopic/random.h"

namespace sttopic {

namespace {

double MeanOf(const SparseMatrix &v) {
  if (v.rows() == 0 || v.cols() == 0) return 0.0;
  return v.sum() / (static_cast<double>(v.rows()) * static_cast<double>(v.cols()));
}

bool AllFinite(const DenseMatrix &m) { return m.allFinite(); }

// 0.5 * (||V||^2 - 2 <V, WH> + tr(W^T W H H^T)), with <V, WH> summed over
// the nonzeros of V only. Cheap enough to evaluate every iteration.
double FastObjective(const SparseMatrix &v, double v_norm2, const DenseMatrix &w,
                     const DenseMatrix &h, const DenseMatrix &wtw,
                     const DenseMatrix &hht) {
  double cross = 0.0;
  for (Eigen::Index i = 0; i < v.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(v, i); it; ++it)
      cross += it.value() * w.row(i).dot(h.col(it.col()));
  }
  double quad = (wtw.cwiseProduct(hht)).sum();
  return std::max(0.0, 0.5 * (v_norm2 - 2.0 * cross + quad));
}

void FillSeededRandom(DenseMatrix *m, double scale, SplitMix64 *rng) {
  for (Eigen::Index i = 0; i < m->rows(); ++i)
    for (Eigen::Index j = 0; j < m->cols(); ++j)
      (*m)(i, j) = scale * rng->UniformDouble();
}

struct Svd {
  DenseMatrix u;  // left singular vectors as columns
  Eigen::VectorXd s;
  DenseMatrix v;  // right singular vectors as columns
};

DenseMatrix OrthonormalBasis(const DenseMatrix &y) {
  Eigen::HouseholderQR<DenseMatrix> qr(y);
  return qr.householderQ() * DenseMatrix::Identity(y.rows(), y.cols());
}

// Leading k singular triplets. Small problems use a full SVD; larger ones
// a randomized range finder with power iterations and a fixed seed.
Svd LeadingSvd(const SparseMatrix &v, int k) {
  constexpr int kOversample = 10;
  constexpr int kPowerIterations = 7;
  const Eigen::Index l = k + kOversample;
  Svd out;
  if (l >= std::min(v.rows(), v.cols())) {
    Eigen::BDCSVD<DenseMatrix> svd(DenseMatrix(v), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV();
    return out;
  }
  SplitMix64 rng(0x6e6e647376646100ULL);
  DenseMatrix omega(v.cols(), l);
  for (Eigen::Index i = 0; i < omega.rows(); ++i)
    for (Eigen::Index j = 0; j < l; ++j) omega(i, j) = 2.0 * rng.UniformDouble() - 1.0;
  DenseMatrix q = OrthonormalBasis(v * omega);
  for (int it = 0; it < kPowerIterations; ++it) {
    DenseMatrix z = OrthonormalBasis(v.transpose() * q);
    q = OrthonormalBasis(v * z);
  }
  const DenseMatrix b = (v.transpose() * q).transpose();  // l x cols
  Eigen::BDCSVD<DenseMatrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.u = q * svd.matrixU();
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  return out;
}

std::pair<DenseMatrix, DenseMatrix> Nndsvda(const SparseMatrix &v, int t) {
  const Svd svd = LeadingSvd(v, t);
  const DenseMatrix &u = svd.u;
  const DenseMatrix &vt = svd.v;
  const Eigen::VectorXd &s = svd.s;

  DenseMatrix w = DenseMatrix::Zero(v.rows(), t);
  DenseMatrix h = DenseMatrix::Zero(t, v.cols());
  const Eigen::Index k = std::min<Eigen::Index>(t, s.size());
  for (Eigen::Index j = 0; j < k; ++j) {
    if (j == 0) {
      w.col(0) = std::sqrt(s(0)) * u.col(0).cwiseAbs();
      h.row(0) = std::sqrt(s(0)) * vt.col(0).cwiseAbs().transpose();
      continue;
    }
    Eigen::VectorXd x = u.col(j), y = vt.col(j);
    Eigen::VectorXd xp = x.cwiseMax(0.0), yp = y.cwiseMax(0.0);
    Eigen::VectorXd xn = (-x).cwiseMax(0.0), yn = (-y).cwiseMax(0.0);
    const double xpn = xp.norm(), ypn = yp.norm(), xnn = xn.norm(), ynn = yn.norm();
    const double mp = xpn * ypn, mn = xnn * ynn;
    Eigen::VectorXd uu, vv;
    double sigma;
    if (mp > mn) {
      uu = xp / xpn;
      vv = yp / ypn;
      sigma = mp;
    } else {
      if (mn == 0.0) continue;
      uu = xn / xnn;
      vv = yn / ynn;
      sigma = mn;
    }
    const double lambda = std::sqrt(s(j) * sigma);
    w.col(j) = lambda * uu;
    h.row(j) = lambda * vv.transpose();
  }

  constexpr double kTiny = 1e-6;
  const double avg = MeanOf(v);
  w = w.unaryExpr([&](double x) { return x < kTiny ? avg : x; });
  h = h.unaryExpr([&](double x) { return x < kTiny ? avg : x; });
  return {std::move(w), std::move(h)};
}

void CheckFinite(const DenseMatrix &m, const char *what, int iteration) {
  if (!AllFinite(m)) {
    throw NumericalError(std::string("non-finite value in ") + what + " at iteration " +
                         std::to_string(iteration));
  }
}

bool Converged(double prev, double cur, double tol) {
  if (tol <= 0.0) return false;
  if (prev <= 0.0) return true;
  return (prev - cur) / prev < tol;
}

}  // namespace

void ValidateNmfConfig(const NmfConfig &cfg) {
  if (cfg.n_topics < 1) throw UsageError("n_topics must be >= 1");
  if (cfg.max_iter < 1) throw UsageError("max_iter must be >= 1");
  if (!(cfg.tol >= 0.0)) throw UsageError("tol must be >= 0");
}

const char *NmfInitName(NmfInit init) {
  return init == NmfInit::kNndsvda ? "nndsvda" : "seeded-random";
}

NmfInit ParseNmfInit(const std::string &name) {
  if (name == "nndsvda") return NmfInit::kNndsvda;
  if (name == "seeded-random" || name == "random") return NmfInit::kSeededRandom;
  throw UsageError("unknown NMF init '" + name + "' (expected nndsvda or seeded-random)");
}

double Objective(const SparseMatrix &v, const DenseMatrix &w, const DenseMatrix &h) {
  return Objective(DenseMatrix(v), w, h);
}

double Objective(const DenseMatrix &v, const DenseMatrix &w, const DenseMatrix &h) {
  if (w.cols() != h.rows() || w.rows() != v.rows() || h.cols() != v.cols()) {
    throw UsageError("objective: shapes V " + std::to_string(v.rows()) + "x" +
                     std::to_string(v.cols()) + ", W " + std::to_string(w.rows()) + "x" +
                     std::to_string(w.cols()) + ", H " + std::to_string(h.rows()) + "x" +
                     std::to_string(h.cols()) + " are not conformable");
  }
  return 0.5 * (v - w * h).squaredNorm();
}

std::pair<DenseMatrix, DenseMatrix> InitFactors(const SparseMatrix &v,
                                                const NmfConfig &cfg) {
  ValidateNmfConfig(cfg);
  const int t = cfg.n_topics;
  if (cfg.init == NmfInit::kNndsvda) return Nndsvda(v, t);

  const double scale = std::sqrt(MeanOf(v) / t);
  SplitMix64 rng(cfg.seed);
  DenseMatrix w(v.rows(), t), h(t, v.cols());
  FillSeededRandom(&w, scale, &rng);
  FillSeededRandom(&h, scale, &rng);
  return {std::move(w), std::move(h)};
}

NmfFit NmfTrain(const TfidfMatrix &v, const NmfConfig &cfg) {
  NmfFit fit = NmfTrain(v.values, cfg);
  fit.w.row_ids = v.row_ids;
  return fit;
}

NmfFit NmfTrain(const SparseMatrix &v, const NmfConfig &cfg) {
  ValidateNmfConfig(cfg);
  if (v.nonZeros() == 0 || v.cwiseAbs().sum() == 0.0)
    throw DataError("NMF input matrix is all zero");
  if (cfg.n_topics > std::min(v.rows(), v.cols())) {
    throw UsageError("n_topics " + std::to_string(cfg.n_topics) + " exceeds min(" +
                     std::to_string(v.rows()) + " docs, " + std::to_string(v.cols()) +
                     " terms)");
  }
  auto [w0, h0] = InitFactors(v, cfg);
  return NmfTrain(v, cfg, std::move(w0), std::move(h0));
}

NmfFit NmfTrain(const SparseMatrix &v, const NmfConfig &cfg, DenseMatrix w,
                DenseMatrix h) {
  ValidateNmfConfig(cfg);
  if (w.rows() != v.rows() || h.cols() != v.cols() || w.cols() != h.rows())
    throw UsageError("initial factors do not match V");
  if ((w.array() < 0.0).any() || (h.array() < 0.0).any())
    throw UsageError("initial factors must be nonnegative");

  const double v_norm2 = v.squaredNorm();
  const SparseMatrix vt = v.transpose();

  NmfFit fit;
  DenseMatrix wtw = w.transpose() * w;
  DenseMatrix hht = h * h.transpose();
  fit.trace.push_back(FastObjective(v, v_norm2, w, h, wtw, hht));
  CheckFinite(w, "W", 0);
  CheckFinite(h, "H", 0);

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    DenseMatrix num_w = v * h.transpose();
    DenseMatrix den_w = (w * hht).array() + kNmfEpsilon;
    w = w.cwiseProduct(num_w).cwiseQuotient(den_w);
    CheckFinite(w, "W", iter);

    wtw.noalias() = w.transpose() * w;
    DenseMatrix num_h = (vt * w).transpose();
    DenseMatrix den_h = (wtw * h).array() + kNmfEpsilon;
    h = h.cwiseProduct(num_h).cwiseQuotient(den_h);
    CheckFinite(h, "H", iter);

    hht.noalias() = h * h.transpose();
    const double obj = FastObjective(v, v_norm2, w, h, wtw, hht);
    if (!std::isfinite(obj))
      throw NumericalError("non-finite objective at iteration " + std::to_string(iter));
    const double prev = fit.trace.back();
    fit.trace.push_back(obj);
    fit.iterations = iter;
    if (Converged(prev, obj, cfg.tol)) {
      fit.converged = true;
      break;
    }
  }
  fit.w.values = std::move(w);
  fit.h.values = std::move(h);
  return fit;
}

DenseMatrix NmfTransform(const SparseMatrix &vp, const DenseMatrix &h,
                         const NmfConfig &cfg) {
  ValidateNmfConfig(cfg);
  if (vp.cols() != h.cols()) {
    throw DataError("transform: input has " + std::to_string(vp.cols()) +
                    " terms but the topic matrix has " + std::to_string(h.cols()));
  }
  const Eigen::Index t = h.rows();
  DenseMatrix w(vp.rows(), t);
  SplitMix64 rng(cfg.seed);
  FillSeededRandom(&w, std::sqrt(MeanOf(vp) / static_cast<double>(t)), &rng);
  if (vp.rows() == 0) return w;

  const double v_norm2 = vp.squaredNorm();
  const DenseMatrix hht = h * h.transpose();
  const DenseMatrix num = vp * h.transpose();  // fixed across iterations
  double prev = FastObjective(vp, v_norm2, w, h, w.transpose() * w, hht);
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    DenseMatrix den = (w * hht).array() + kNmfEpsilon;
    w = w.cwiseProduct(num).cwiseQuotient(den);
    CheckFinite(w, "W'", iter);
    const double obj = FastObjective(vp, v_norm2, w, h, w.transpose() * w, hht);
    if (Converged(prev, obj, cfg.tol)) break;
    prev = obj;
  }
  return w;
}

DocTopicMatrix NmfTransform(const TfidfMatrix &vp, const TopicTermMatrix &h,
                            const NmfConfig &cfg) {
  DocTopicMatrix out;
  out.values = NmfTransform(vp.values, h.values, cfg);
  out.row_ids = vp.row_ids;
  return out;
}

namespace internal {

Json NmfConfigToJsonValue(const NmfConfig &cfg) {
  return {{"n_topics", cfg.n_topics}, {"max_iter", cfg.max_iter},
          {"tol", cfg.tol},           {"seed", cfg.seed},
          {"init", NmfInitName(cfg.init)}};
}

NmfConfig NmfConfigFromJsonValue(const Json &obj) {
  NmfConfig cfg;
  try {
    cfg.n_topics = obj.at("n_topics").get<int>();
    cfg.max_iter = obj.at("max_iter").get<int>();
    cfg.tol = obj.at("tol").get<double>();
    cfg.seed = obj.at("seed").get<std::uint64_t>();
    cfg.init = ParseNmfInit(obj.at("init").get<std::string>());
  } catch (const Json::exception &e) {
    throw DataError(std::string("malformed NMF config: ") + e.what());
  }
  return cfg;
}

}  // namespace internal

}  // namespace sttopic
