// sttopic/nmf.h

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

#ifndef STTOPIC_NMF_H_
#define STTOPIC_NMF_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sttopic/textprep.h"

namespace sttopic {

using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = TfidfMatrix::Storage;

enum class NmfInit {
  kNndsvda,       // NNDSVD with zeros filled by mean(V)
  kSeededRandom,  // uniform(0, 1) * sqrt(mean(V) / t)
};

const char *NmfInitName(NmfInit init);
NmfInit ParseNmfInit(const std::string &name);

/// Added to every multiplicative-update denominator.
inline constexpr double kNmfEpsilon = 1e-12;

struct NmfConfig {
  int n_topics = 10;
  int max_iter = 200;
  // Stop once (prev - cur) / prev < tol. tol == 0 runs all max_iter steps.
  double tol = 1e-4;
  std::uint64_t seed = 0;
  // Start for training. Inference always starts from seeded-random W'.
  NmfInit init = NmfInit::kNndsvda;
};

/// Throws UsageError unless n_topics >= 1, max_iter >= 1 and tol >= 0.
void ValidateNmfConfig(const NmfConfig &cfg);

/// Rows are documents, columns topics.
struct DocTopicMatrix {
  DenseMatrix values;
  std::vector<std::string> row_ids;
};

/// Rows are topics, columns vocabulary terms.
struct TopicTermMatrix {
  DenseMatrix values;
};

struct NmfFit {
  DocTopicMatrix w;
  TopicTermMatrix h;
  // trace[0] is the objective at the start, trace[k] after iteration k.
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

/// 0.5 * ||V - W H||_F^2, computed from the explicit residual.
double Objective(const SparseMatrix &v, const DenseMatrix &w, const DenseMatrix &h);
double Objective(const DenseMatrix &v, const DenseMatrix &w, const DenseMatrix &h);

std::pair<DenseMatrix, DenseMatrix> InitFactors(const SparseMatrix &v,
                                                const NmfConfig &cfg);

/// Lee-Seung multiplicative updates for the Frobenius loss:
///   W <- W .* (V H^T) ./ (W H H^T + eps)
///   H <- H .* (W^T V) ./ (W^T W H + eps)
/// W is updated first in every iteration.
NmfFit NmfTrain(const TfidfMatrix &v, const NmfConfig &cfg);
NmfFit NmfTrain(const SparseMatrix &v, const NmfConfig &cfg);

/// Same iteration from caller-supplied starting factors.
NmfFit NmfTrain(const SparseMatrix &v, const NmfConfig &cfg, DenseMatrix w0,
                DenseMatrix h0);

/// Infers W' for new rows with H held fixed: only the W update runs.
/// W' starts from seeded-random values drawn with cfg.seed.
DocTopicMatrix NmfTransform(const TfidfMatrix &vp, const TopicTermMatrix &h,
                            const NmfConfig &cfg);
DenseMatrix NmfTransform(const SparseMatrix &vp, const DenseMatrix &h,
                         const NmfConfig &cfg);

}  // namespace sttopic

#endif  // STTOPIC_NMF_H_
