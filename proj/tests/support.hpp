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

// Generators and oracles shared by the unit and acceptance tests. Nothing
// here calls into the code under test except constructors.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <numeric>
#include <vector>

#include "branchlab/histories.hpp"
#include "branchlab/random.hpp"

namespace branchlab::testing {

inline StateVector basis_vec(Index n, Index i) {
  StateVector v = StateVector::Zero(n);
  v(i) = 1.0;
  return v;
}

inline Matrix diag_projector(Index n, const std::vector<Index>& idx) {
  Matrix p = Matrix::Zero(n, n);
  for (Index i : idx) p(i, i) = 1.0;
  return p;
}

// Mixed-radix digits of a basis index: digit 0 is the system, digit k the
// k-th record register.
inline std::vector<Index> digits(Index idx, Index radix, std::size_t count) {
  std::vector<Index> d(count);
  for (std::size_t k = 0; k < count; ++k) {
    d[k] = idx % radix;
    idx /= radix;
  }
  return d;
}

inline Index undigits(const std::vector<Index>& d, Index radix) {
  Index idx = 0;
  for (std::size_t k = d.size(); k-- > 0;) idx = idx * radix + d[k];
  return idx;
}

enum class RecordCells {
  system_and_records,  // cell = system value and every earlier record: branching
  system_only,         // cell = system value: consistent, in general not branching
};

// A system of dimension s with n record registers. Step k applies a random
// unitary to the system and then copies the system value into register k
// (a modular add, so the step is a permutation). Records start at 0, so
// distinct paths stay orthogonal. A random global unitary then hides the
// product structure.
inline HistorySpace record_space(Rng& rng, Index s, std::size_t n, RecordCells cells, bool rotate = true) {
  const std::size_t regs = n + 1;
  Index dim = 1;
  for (std::size_t k = 0; k < regs; ++k) dim *= s;

  std::vector<Matrix> steps;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix us = random_unitary(s, rng);
    Matrix step = Matrix::Zero(dim, dim);
    for (Index col = 0; col < dim; ++col) {
      const auto d = digits(col, s, regs);
      for (Index j = 0; j < s; ++j) {
        auto e = d;
        e[0] = j;
        e[k + 1] = (d[k + 1] + j) % s;
        step(undigits(e, s), col) += us(j, d[0]);
      }
    }
    steps.push_back(std::move(step));
  }

  // The sample space after step k reads the system and, for the branching
  // variant, the registers written so far (1..k+1).
  std::vector<SampleSpace> spaces;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t read = cells == RecordCells::system_and_records ? k + 2 : 1;
    std::map<Index, std::vector<Index>> groups;
    for (Index idx = 0; idx < dim; ++idx) {
      const auto d = digits(idx, s, regs);
      Index key = 0;
      for (std::size_t r = read; r-- > 0;) key = key * s + d[r];
      groups[key].push_back(idx);
    }
    std::vector<Matrix> ps;
    std::vector<std::string> labels;
    for (const auto& [key, idx] : groups) {
      ps.push_back(diag_projector(dim, idx));
      labels.push_back("c" + std::to_string(key));
    }
    spaces.push_back(SampleSpace::make(std::move(ps), std::move(labels)));
  }

  StateVector psi0 = StateVector::Zero(dim);
  const StateVector sys = random_state(s, rng);
  for (Index j = 0; j < s; ++j) psi0(j) = sys(j);  // records at 0: index = system digit

  std::vector<double> times(n + 1);
  std::iota(times.begin(), times.end(), 0.0);
  if (rotate) {
    const Matrix v = random_unitary(dim, rng);
    for (Matrix& st : steps) st = v * st * v.adjoint();
    std::vector<SampleSpace> rotated;
    for (const SampleSpace& sp : spaces) {
      std::vector<Matrix> ps;
      for (std::size_t c = 0; c < sp.size(); ++c) ps.push_back(v * sp.projector(c) * v.adjoint());
      rotated.push_back(SampleSpace::make(std::move(ps), sp.labels()));
    }
    spaces = std::move(rotated);
    psi0 = v * psi0;
  }
  return HistorySpace::make(Dynamics::make(std::move(times), std::move(steps)), std::move(spaces), psi0);
}

// Merges cells of one time into groups: fine cell c goes to group[c].
struct Coarsened {
  HistorySpace space;
  CellMapping mapping;
};

inline Coarsened coarsen(const HistorySpace& fine, std::size_t time, const std::vector<std::size_t>& group) {
  const std::size_t groups = *std::max_element(group.begin(), group.end()) + 1;
  std::vector<SampleSpace> spaces;
  CellMapping mapping;
  for (std::size_t k = 0; k < fine.time_count(); ++k) {
    const SampleSpace& sp = fine.sample_space(k);
    if (k != time) {
      spaces.push_back(sp);
      std::vector<std::size_t> id(sp.size());
      std::iota(id.begin(), id.end(), 0);
      mapping.push_back(id);
      continue;
    }
    std::vector<Matrix> ps(groups, Matrix::Zero(fine.ambient_dim(), fine.ambient_dim()));
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < sp.size(); ++c) ps[group[c]] += sp.projector(c);
    for (std::size_t g = 0; g < groups; ++g) labels.push_back("g" + std::to_string(g));
    spaces.push_back(SampleSpace::make(std::move(ps), std::move(labels)));
    mapping.push_back(group);
  }
  return {HistorySpace::make(fine.dynamics(), std::move(spaces), fine.initial()), std::move(mapping)};
}

// Every history of a space, in lexicographic order, without the library's
// enumerator.
inline std::vector<History> all_histories(const HistorySpace& hs) {
  std::vector<History> out{History{}};
  for (std::size_t k = 0; k < hs.time_count(); ++k) {
    std::vector<History> next;
    for (const History& h : out) {
      for (std::size_t c = 0; c < hs.sample_space(k).size(); ++c) {
        History g = h;
        g.push_back(c);
        next.push_back(std::move(g));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Schrodinger-picture chain P_n U_n ... P_1 U_1 psi0, independent of the
// library's Heisenberg branch vectors (it differs from them by the final
// evolution, which preserves inner products).
inline StateVector chain_vector(const HistorySpace& hs, const History& h) {
  StateVector v = hs.initial();
  for (std::size_t k = 0; k < hs.time_count(); ++k) {
    v = hs.sample_space(k).projector(h[k]) * (hs.dynamics().step(k) * v);
  }
  return v;
}

// Maximum bipartite matching (Kuhn). left[i] lists the right vertices i may
// use.
inline std::size_t max_matching(const std::vector<std::vector<std::size_t>>& left, std::size_t right_count) {
  std::vector<long> owner(right_count, -1);
  std::size_t matched = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    std::vector<char> seen(right_count, 0);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t r : left[u]) {
        if (seen[r]) continue;
        seen[r] = 1;
        if (owner[r] < 0 || augment(static_cast<std::size_t>(owner[r]))) {
          owner[r] = static_cast<long>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(i)) ++matched;
  }
  return matched;
}

}  // namespace branchlab::testing
