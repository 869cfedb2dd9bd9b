// Copyright 2026 The branchlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "branchlab/measures.hpp"

#include <algorithm>
#include <numeric>

namespace branchlab {

double BranchProfile::weight(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorCode::invalid_argument, "no block labelled '" + label + "'");
  return weights[static_cast<std::size_t>(it - labels.begin())];
}

double BranchProfile::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

BranchProfile born_weights(const StateVector& psi, const Partition& p) {
  if (psi.size() != p.ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "state vs partition");
  const double n2 = psi.squaredNorm();
  if (n2 == 0.0) throw Error(ErrorCode::zero_vector, "Born weights of the zero vector");
  BranchProfile out;
  out.labels = p.labels();
  for (const Event& b : p.blocks()) out.weights.push_back((b.frame().adjoint() * psi).squaredNorm() / n2);
  return out;
}

std::size_t branch_count(const StateVector& psi, const Partition& p, double theta) {
  if (!(theta > 0.0)) throw Error(ErrorCode::invalid_argument, "threshold must be positive");
  const BranchProfile prof = born_weights(psi, p);
  return static_cast<std::size_t>(
      std::count_if(prof.weights.begin(), prof.weights.end(), [&](double w) { return w > theta; }));
}

StabilityReport count_stability(const StateVector& psi, const std::vector<Partition>& chain, double theta,
                                const Tolerances& tol) {
  if (chain.empty()) throw Error(ErrorCode::invalid_argument, "empty grain chain");
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!is_refinement(chain[i], chain[i - 1], tol)) {
      throw Error(ErrorCode::invalid_partition,
                  "grain " + std::to_string(i) + " does not refine grain " + std::to_string(i - 1));
    }
  }
  StabilityReport r;
  for (const Partition& p : chain) r.counts.push_back(branch_count(psi, p, theta));
  std::size_t start = 0;
  for (std::size_t i = 1; i <= r.counts.size(); ++i) {
    if (i == r.counts.size() || r.counts[i] != r.counts[start]) {
      const std::size_t len = i - start;
      const std::size_t best = r.plateau ? r.plateau->second - r.plateau->first + 1 : 1;
      if (len >= 2 && len > best) r.plateau = std::make_pair(start, i - 1);
      start = i;
    }
  }
  return r;
}

RatioResult measure_ratio(const BranchProfile& profile, const std::set<std::string>& good,
                          const std::set<std::string>& bad, const Tolerances& tol) {
  RatioResult r;
  for (const auto& g : good) {
    if (bad.count(g)) throw Error(ErrorCode::invalid_argument, "label '" + g + "' is both good and bad");
    r.good += profile.weight(g);
  }
  for (const auto& b : bad) r.bad += profile.weight(b);
  if (r.good <= tol.exact && r.bad <= tol.exact) {
    throw Error(ErrorCode::invalid_argument, "both weight sums vanish");
  }
  if (r.bad <= tol.exact) {
    r.infinite = true;
    return r;
  }
  r.value = r.good / r.bad;
  return r;
}

}  // namespace branchlab
