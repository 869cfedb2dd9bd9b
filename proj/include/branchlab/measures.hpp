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

// Branch measures: Born weights against branch counts at a threshold, and
// how counts behave as the grain gets finer.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "branchlab/events.hpp"

namespace branchlab {

constexpr double kDefaultCountThreshold = 1e-12;

struct BranchProfile {
  std::vector<std::string> labels;
  std::vector<double> weights;  // ||Pi_M psi||^2 / ||psi||^2, in partition order

  double weight(const std::string& label) const;
  double total() const;
};

/// Throws Error(zero_vector).
BranchProfile born_weights(const StateVector& psi, const Partition& p);

/// Blocks with weight > theta.
std::size_t branch_count(const StateVector& psi, const Partition& p, double theta = kDefaultCountThreshold);

struct StabilityReport {
  std::vector<std::size_t> counts;  // coarse to fine
  /// Longest run [first, last] (length >= 2) of equal counts; the earliest wins ties.
  std::optional<std::pair<std::size_t, std::size_t>> plateau;
};

/// `chain` runs coarse to fine; each partition must refine the previous one.
/// Throws Error(invalid_partition) otherwise.
StabilityReport count_stability(const StateVector& psi, const std::vector<Partition>& chain,
                                double theta = kDefaultCountThreshold, const Tolerances& tol = {});

struct RatioResult {
  double value = 0.0;  // meaningless when infinite
  bool infinite = false;
  double good = 0.0;
  double bad = 0.0;
};

/// (sum of good weights) / (sum of bad weights); infinite when bad <= tol.exact.
/// Throws Error(invalid_argument) when both sums vanish, labels repeat across
/// the sets, or a label is unknown.
RatioResult measure_ratio(const BranchProfile& profile, const std::set<std::string>& good,
                          const std::set<std::string>& bad, const Tolerances& tol = {});

}  // namespace branchlab
