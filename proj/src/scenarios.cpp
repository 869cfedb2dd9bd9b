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

#include "branchlab/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "branchlab/random.hpp"

namespace branchlab {

namespace {

StateVector basis(Index n, Index i) { return StateVector::Unit(n, i); }

Event lines(Index n, std::initializer_list<Index> idx) {
  Matrix f = Matrix::Zero(n, static_cast<Index>(idx.size()));
  Index c = 0;
  for (Index i : idx) f(i, c++) = 1.0;
  return Event::from_frame(std::move(f));
}

Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

SampleSpace basis_sample_space(Index n, const std::string& prefix) {
  return SampleSpace::from_partition(Partition::standard_basis(n, prefix));
}

}  // namespace

// ---------------------------------------------------------------------------
// Histories

HistorySpace build_measurement_model(const std::vector<Complex>& coeffs, std::size_t times) {
  if (coeffs.empty()) throw Error(ErrorCode::invalid_argument, "no coefficients");
  if (times < 1) throw Error(ErrorCode::invalid_argument, "need at least one time");
  const Index n = static_cast<Index>(coeffs.size());
  StateVector c(n);
  for (Index i = 0; i < n; ++i) c(i) = coeffs[static_cast<std::size_t>(i)];
  if (c.norm() == 0.0) throw Error(ErrorCode::zero_vector, "coefficients are all zero");
  c /= c.norm();

  const Index dim = n * n;  // index = system * n + device
  StateVector psi0 = StateVector::Zero(dim);
  for (Index i = 0; i < n; ++i) psi0(i * n) = c(i);

  Matrix entangle = Matrix::Zero(dim, dim);
  for (Index i = 0; i < n; ++i) {
    for (Index d = 0; d < n; ++d) entangle(i * n + (d + i) % n, i * n + d) = 1.0;
  }
  std::vector<Matrix> steps{entangle};
  std::vector<double> t{0.0, 1.0};
  for (std::size_t k = 1; k < times; ++k) {
    steps.push_back(Matrix::Identity(dim, dim));
    t.push_back(static_cast<double>(k + 1));
  }

  std::vector<Matrix> projectors;
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    Matrix p = Matrix::Zero(dim, dim);
    for (Index d = 0; d < n; ++d) p(i * n + d, i * n + d) = 1.0;
    projectors.push_back(std::move(p));
    labels.push_back("s" + std::to_string(i));
  }
  const SampleSpace ss = SampleSpace::make(projectors, labels);
  return HistorySpace::make(Dynamics::make(std::move(t), std::move(steps)),
                            std::vector<SampleSpace>(times, ss), std::move(psi0));
}

RecombiningDemo build_recombining_space() {
  const StateVector psi0 = (basis(2, 0) + basis(2, 1)) / std::sqrt(2.0);
  const Dynamics dyn = Dynamics::make({0.0, 1.0, 2.0}, {Matrix::Identity(2, 2), hadamard()});
  const SampleSpace z = basis_sample_space(2, "z");
  const SampleSpace none = SampleSpace::make({Matrix::Identity(2, 2)}, {"any"});
  return RecombiningDemo{HistorySpace::make(dyn, {z, z}, psi0), HistorySpace::make(dyn, {none, z}, psi0),
                         CellMapping{{0, 0}, {0, 1}}};
}

HistorySpace build_recorded_recombination() {
  // system (x) record, index = 2 * system + record.
  const Index dim = 4;
  StateVector psi0 = StateVector::Zero(dim);
  psi0(0) = psi0(2) = 1.0 / std::sqrt(2.0);
  Matrix cnot = Matrix::Zero(dim, dim);
  cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
  Matrix h_sys = Matrix::Zero(dim, dim);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      for (Index r = 0; r < 2; ++r) h_sys(2 * a + r, 2 * b + r) = hadamard()(a, b);
    }
  }
  const Dynamics dyn = Dynamics::make({0.0, 1.0, 2.0}, {Matrix::Identity(dim, dim), h_sys * cnot});

  Matrix p0 = Matrix::Zero(dim, dim);
  p0(0, 0) = p0(1, 1) = 1.0;
  const SampleSpace sys = SampleSpace::make({p0, Matrix::Identity(dim, dim) - p0}, {"z0", "z1"});
  return HistorySpace::make(dyn, {sys, sys}, psi0);
}

AlgebraFailureDemo build_algebra_failure() {
  const Index dim = 4;
  const Partition cells = Partition::make({lines(dim, {0, 1}), lines(dim, {2, 3})}, {"A", "B"});
  // Each cell's branch is a superposition of two of the algebra's atoms.
  StateVector psi0(dim);
  psi0 << 0.6, 0.0, 0.48, 0.64;
  const Dynamics dyn = Dynamics::trivial(dim, 1);
  HistorySpace hs = HistorySpace::make(dyn, {SampleSpace::from_partition(cells)}, psi0);
  return AlgebraFailureDemo{std::move(hs), EventAlgebra(Partition::standard_basis(dim, "x"))};
}

// ---------------------------------------------------------------------------
// Decision problems

AbcBets build_abc_bets() {
  const Index n = 8;
  enum : Index { kReady, kBUp, kBDown, kAUp, kADown, kCUp, kCDown, kSplit };
  const std::vector<std::string> names{"ready",        "B:up",         "B:down",          "A:up",
                                       "A:down",       "B:down>A:up", "B:down>A:down", "B:down'"};
  std::vector<Event> blocks;
  for (Index i = 0; i < n; ++i) blocks.push_back(Event::line(basis(n, i)));
  Partition macro = Partition::make(blocks, names);

  const std::string win = "cash+1000";
  const std::string zero = "cash0";
  const std::string loss = "cash-100";
  Partition rewards = Partition::make(
      {lines(n, {kBUp, kAUp, kCUp}), lines(n, {kReady, kBDown, kSplit}), lines(n, {kADown, kCDown})},
      {win, zero, loss});
  std::map<std::string, std::string> reward_of{
      {"ready", zero},   {"B:up", win},          {"B:down", zero},        {"A:up", win},
      {"A:down", loss},  {"B:down>A:up", win},   {"B:down>A:down", loss}, {"B:down'", zero}};

  DecisionProblem dp = DecisionProblem::make(std::move(macro), std::move(rewards), std::move(reward_of));
  const double h = 1.0 / std::sqrt(2.0);
  auto act = [&](Index from, const StateVector& to, const std::string& label) {
    return Act::make(Event::line(basis(n, from)), Matrix(to), label);
  };

  const Event ready = Event::line(basis(n, kReady));
  dp.add_act(Act::identity(ready));
  dp.add_act(act(kReady, h * (basis(n, kAUp) + basis(n, kADown)), "A"));
  dp.add_act(act(kReady, h * (basis(n, kBUp) + basis(n, kBDown)), "B"));
  dp.add_act(act(kReady, h * basis(n, kBUp) + 0.5 * (basis(n, kCUp) + basis(n, kCDown)), "C"));

  const Act a_down = act(kBDown, h * (basis(n, kCUp) + basis(n, kCDown)), "A@down");
  const Act split = act(kBDown, h * (basis(n, kBDown) + basis(n, kSplit)), "split");
  dp.add_act(Act::identity(Event::line(basis(n, kBDown))));
  dp.add_act(a_down);
  dp.add_act(split);

  const Act up_id = Act::identity(Event::line(basis(n, kBUp)));
  dp.add_act(up_id);
  const Event both = lines(n, {kBUp, kBDown});
  const Act stay = Act::identity(both);
  const Act bet_down = compatible_lift(up_id, a_down).act->relabeled("1+A@down");
  const Act split_down = compatible_lift(up_id, split).act->relabeled("1+split");
  dp.add_act(stay);
  dp.add_act(bet_down);
  dp.add_act(split_down);

  Strategy s;
  s.kind = StrategyKind::born_eu;
  s.utilities = {{win, 1000.0}, {zero, 0.0}, {loss, -100.0}};

  const BlockSet ready_member{static_cast<std::size_t>(kReady)};
  const StateVector psi = basis(n, kReady);
  DiachronicScenario sc{ready_member, psi, *dp.find_act(ready_member, "B"), {}, {stay, bet_down}};
  return AbcBets{std::move(dp), psi, ready_member, std::move(s), std::move(sc)};
}

ErasureDemo build_erasure_contradiction(double separation, bool distinct_targets) {
  if (separation < 0.0 || separation > 2.0) throw Error(ErrorCode::out_of_range, "separation must lie in [0, 2]");
  const Index n = 3;
  // Block order e0, e1, e2; label order E < M < N picks e2 as the target.
  Partition macro = Partition::make({Event::line(basis(n, 0)), Event::line(basis(n, 1)), Event::line(basis(n, 2))},
                                    {"M", "N", "E"});
  Partition rewards = Partition::make({Event::full(n)}, {"r"});
  DecisionProblem dp = DecisionProblem::make(std::move(macro), std::move(rewards),
                                             {{"M", "r"}, {"N", "r"}, {"E", "r"}});
  const StateVector psi = basis(n, 0);
  const StateVector phi = basis(n, 1);
  ErasureResult er = erasure_pair(dp, 0, 1, psi, phi);

  Act v = er.v;
  if (distinct_targets || separation > 0.0) {
    StateVector t2 = basis(n, 0);  // first frame column of the next label, M
    if (!distinct_targets) {
      const double theta = 2.0 * std::asin(separation / 2.0);
      t2 = std::cos(theta) * er.target + std::sin(theta) * basis(n, 0);
    }
    v = isometry_sending(dp.macrostates().block(1), Event::full(n), phi, t2, "V");
  }
  LiftResult lift = compatible_lift(er.u, v);
  const double before = std::abs(psi.dot(phi));
  const double after = std::abs(er.u.apply(psi).dot(v.apply(phi)));
  return ErasureDemo{std::move(dp), psi, phi, std::move(er.u), std::move(v), std::move(lift), before, after};
}

RewardAvailabilityDemo build_reward_availability_contradiction(bool whole_space_reward) {
  const Index n = 8;
  Partition macro = Partition::make({lines(n, {0, 1}), lines(n, {2, 3}), lines(n, {4, 5}), lines(n, {6, 7})},
                                    {"M0", "M1", "M2", "M3"});
  std::vector<std::size_t> targets(4, 0);
  if (whole_space_reward) {
    DecisionProblem dp = DecisionProblem::make(std::move(macro), Partition::make({Event::full(n)}, {"all"}),
                                               {{"M0", "all"}, {"M1", "all"}, {"M2", "all"}, {"M3", "all"}});
    RewardSearchResult res = reward_act_search(dp, {0, 1, 2, 3}, targets);
    return RewardAvailabilityDemo{std::move(dp), {0, 1, 2, 3}, targets, std::move(res)};
  }
  Partition rewards = Partition::make({lines(n, {0, 1, 2, 3}), lines(n, {4, 5, 6, 7})}, {"r", "s"});
  DecisionProblem dp = DecisionProblem::make(std::move(macro), std::move(rewards),
                                             {{"M0", "r"}, {"M1", "r"}, {"M2", "s"}, {"M3", "s"}});
  RewardSearchResult res = reward_act_search(dp, {0, 1, 2, 3}, targets);
  return RewardAvailabilityDemo{std::move(dp), {0, 1, 2, 3}, targets, std::move(res)};
}

// ---------------------------------------------------------------------------
// Spreading and pointer frames

SpreadingTail build_spreading_tail(std::size_t n, std::size_t steps, double dt) {
  if (n < 2 || n > 64) throw Error(ErrorCode::out_of_range, "grid size must lie in [2, 64]");
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "time step must be positive");
  const Index N = static_cast<Index>(n);
  Matrix lap = Matrix::Zero(N, N);
  for (Index i = 0; i < N; ++i) {
    lap(i, i) += 2.0;
    lap(i, (i + 1) % N) -= 1.0;
    lap((i + 1) % N, i) -= 1.0;
  }
  const Matrix step = hermitian_exp(lap, -dt);

  const Partition cells = Partition::standard_basis(N, "x");
  DecisionProblem dp = DecisionProblem::make(cells, Partition::make({Event::full(N)}, {"all"}), [&] {
    std::map<std::string, std::string> m;
    for (const auto& l : cells.labels()) m[l] = "all";
    return m;
  }());

  const std::size_t start = n / 2;
  StateVector out = basis(N, static_cast<Index>(start));
  for (std::size_t k = 0; k < steps; ++k) out = step * out;
  Act act = Act::make(Event::line(basis(N, static_cast<Index>(start))), Matrix(out),
                      "propagate^" + std::to_string(steps));
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = std::norm(out(static_cast<Index>(i)));
  BlockSet smallest = smallest_member(act, dp.algebra());
  dp.add_act(act);
  return SpreadingTail{std::move(dp), step, dt, start, steps, std::move(act), std::move(out), std::move(weights),
                       std::move(smallest)};
}

StateVector pointer_state(std::size_t n, double sigma, double centre) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "empty grid");
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_argument, "width must be positive");
  const double len = static_cast<double>(n);
  StateVector v(static_cast<Index>(n));
  for (std::size_t y = 0; y < n; ++y) {
    double d = std::fmod(std::abs(static_cast<double>(y) - centre), len);
    d = std::min(d, len - d);
    v(static_cast<Index>(y)) = std::exp(-(d / sigma) * (d / sigma));
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::degenerate_frame, "pointer profile underflows");
  return v / norm;
}

double permutation_deviation(const Matrix& m) {
  auto second = [](std::vector<double> v) {
    if (v.size() < 2) return 0.0;
    std::partial_sort(v.begin(), v.begin() + 2, v.end(), std::greater<>());
    return v[1];
  };
  double out = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row;
    for (Index j = 0; j < m.cols(); ++j) row.push_back(std::abs(m(i, j)));
    out = std::max(out, second(std::move(row)));
  }
  for (Index j = 0; j < m.cols(); ++j) {
    std::vector<double> col;
    for (Index i = 0; i < m.rows(); ++i) col.push_back(std::abs(m(i, j)));
    out = std::max(out, second(std::move(col)));
  }
  return out;
}

namespace {

struct FrameSolve {
  Matrix range;       // orthonormal basis of the frame's range
  Matrix pinv;        // min-norm pseudo-inverse
  double condition;   // Gram condition number on the range
};

FrameSolve solve_frame(const Matrix& f, const char* name) {
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > 1e-10 * s(0)) ++r;
  const double cond = (s(0) / s(r - 1)) * (s(0) / s(r - 1));
  if (cond > 1e8) {
    throw Error(ErrorCode::degenerate_frame, std::string("pointer frame ") + name +
                                                 " has Gram condition number " + std::to_string(cond));
  }
  Eigen::VectorXcd inv = s.head(r).cwiseInverse().cast<Complex>();
  Matrix pinv = svd.matrixV().leftCols(r) * inv.asDiagonal() * svd.matrixU().leftCols(r).adjoint();
  return FrameSolve{svd.matrixU().leftCols(r), std::move(pinv), cond};
}

}  // namespace

PointerDecomposition build_pointer_decompositions(std::size_t n, double sigma, double shift) {
  if (n < 4 || n > 64) throw Error(ErrorCode::out_of_range, "grid size must lie in [4, 64]");
  PointerDecomposition d;
  d.n = n;
  d.sigma = sigma;
  d.shift = shift;
  const Index N = static_cast<Index>(n);
  d.frame_a.resize(N, N);
  d.frame_b.resize(N, N);
  for (Index c = 0; c < N; ++c) {
    d.frame_a.col(c) = pointer_state(n, sigma, static_cast<double>(c));
    d.frame_b.col(c) = pointer_state(n, sigma, static_cast<double>(c) + shift);
  }
  const FrameSolve a = solve_frame(d.frame_a, "A");
  const FrameSolve b = solve_frame(d.frame_b, "B");
  d.condition_a = a.condition;
  d.condition_b = b.condition;

  // Two well-separated pointers, pulled into the range of both frames.
  const StateVector raw = d.frame_a.col(N / 4) + d.frame_a.col(3 * N / 4);
  StateVector psi = b.range * (b.range.adjoint() * raw);
  psi = a.range * (a.range.adjoint() * psi);
  d.psi = psi / psi.norm();

  const StateVector ca = a.pinv * d.psi;
  const StateVector cb = b.pinv * d.psi;
  StateVector sum_a = StateVector::Zero(N);
  StateVector sum_b = StateVector::Zero(N);
  for (Index c = 0; c < N; ++c) {
    d.parts_a.push_back(ca(c) * d.frame_a.col(c));
    d.parts_b.push_back(cb(c) * d.frame_b.col(c));
    sum_a += d.parts_a.back();
    sum_b += d.parts_b.back();
  }
  d.residual_a = (sum_a - d.psi).norm();
  d.residual_b = (sum_b - d.psi).norm();

  d.cross.resize(N, N);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < N; ++j) d.cross(i, j) = std::abs(d.parts_a[static_cast<std::size_t>(i)].dot(d.parts_b[static_cast<std::size_t>(j)]));
  }
  d.deviation = permutation_deviation(d.cross);
  return d;
}

// ---------------------------------------------------------------------------

std::vector<GeneratedProblem> generate_decision_suite(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<GeneratedProblem> out;
  for (std::size_t p = 0; p < count; ++p) {
    const Index n = static_cast<Index>(uniform_index(rng, 4, 8));
    const Matrix q = random_unitary(n, rng);

    // Macrostates: consecutive columns of q, ranks 1 or 2, at least three.
    std::vector<Event> blocks;
    std::vector<std::string> labels;
    Index at = 0;
    while (at < n) {
      Index r = static_cast<Index>(uniform_index(rng, 1, 2));
      const Index still_needed = std::max<Index>(0, 2 - static_cast<Index>(blocks.size()));
      if (n - at - r < still_needed) r = 1;
      r = std::min(r, n - at);
      blocks.push_back(Event::from_frame(q.middleCols(at, r)));
      labels.push_back("m" + std::to_string(blocks.size() - 1));
      at += r;
    }
    const std::size_t atoms = blocks.size();
    const std::size_t k = std::min<std::size_t>(3, atoms);
    std::vector<std::vector<std::size_t>> groups(k);
    std::map<std::string, std::string> reward_of;
    for (std::size_t i = 0; i < atoms; ++i) {
      groups[i % k].push_back(i);
      reward_of[labels[i]] = "r" + std::to_string(i % k);
    }
    std::vector<Event> rblocks;
    std::vector<std::string> rlabels;
    for (std::size_t g = 0; g < k; ++g) {
      Event j = Event::zero(n);
      for (std::size_t i : groups[g]) j = join(j, blocks[i]);
      rblocks.push_back(j);
      rlabels.push_back("r" + std::to_string(g));
    }
    DecisionProblem dp = DecisionProblem::make(Partition::make(blocks, labels), Partition::make(rblocks, rlabels),
                                               reward_of);
    const auto& alg = dp.algebra();

    std::vector<Act> added;
    for (std::size_t m = 0; m < atoms; ++m) {
      const Event& me = alg.generators().block(m);
      const Index rm = me.rank();
      added.push_back(Act::identity(me));
      const Event& reward = dp.rewards().block(dp.reward_of(m));
      const Matrix w = random_unitary(reward.rank(), rng);
      added.push_back(Act::make(me, reward.frame() * w.leftCols(rm), "w"));
      const Matrix g = random_unitary(n, rng);
      added.push_back(Act::make(me, g.leftCols(rm), "g"));
      const std::size_t other = (m + 1 + uniform_index(rng, 0, atoms - 2)) % atoms;
      const Event pair = join(me, alg.generators().block(other));
      const Matrix b = random_unitary(pair.rank(), rng);
      added.push_back(Act::make(me, pair.frame() * b.leftCols(rm), "b"));
    }
    for (const Act& a : added) dp.add_act(a);
    for (const Act& a : added) {
      const BlockSet o = smallest_member(a, alg);
      if (o.empty() || !dp.acts_at(o).empty()) continue;
      const Event oe = alg.event_of(o);
      dp.add_act(Act::identity(oe));
      dp.add_act(Act::make(oe, oe.frame() * random_unitary(oe.rank(), rng), "v"));
    }

    Strategy s;
    s.kind = StrategyKind::born_eu;
    for (std::size_t g = 0; g < k; ++g) s.utilities["r" + std::to_string(g)] = uniform(rng, -10.0, 10.0);
    out.push_back(GeneratedProblem{std::move(dp), std::move(s)});
  }
  return out;
}

}  // namespace branchlab
