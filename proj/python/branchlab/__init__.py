# Copyright 2026 The branchlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Branching, consistency and decision-theoretic checks (C++ core)."""

from ._branchlab import (
    BranchlabError,
    DecisionProblem,
    HistorySpace,
    abc_values,
    bc_refine,
    born_weights,
    branch_count,
    consistency,
    erasure,
    is_branching,
    measurement_model,
    pointer_decomposition,
    reward_availability,
    run_cli,
    spreading_tail,
)

__all__ = [
    "BranchlabError",
    "DecisionProblem",
    "HistorySpace",
    "abc_values",
    "bc_refine",
    "born_weights",
    "branch_count",
    "consistency",
    "erasure",
    "is_branching",
    "measurement_model",
    "pointer_decomposition",
    "reward_availability",
    "run_cli",
    "spreading_tail",
]
