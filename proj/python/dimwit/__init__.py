# Copyright 2026 The dimwit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Temporal-correlation dimension witnesses (Python bindings)."""

from ._dimwit import (
    DimwitError,
    GuardExceeded,
    ParseError,
    __version__,
    algebraic_max,
    aot_constraint_counts,
    aot_test,
    bound,
    certify,
    hoeffding_halfwidth,
    run_cli,
    sample,
    simulate,
    strategy_count,
    tee_closed_form,
    witness_names,
)

__all__ = [
    "DimwitError",
    "GuardExceeded",
    "ParseError",
    "__version__",
    "algebraic_max",
    "aot_constraint_counts",
    "aot_test",
    "bound",
    "certify",
    "hoeffding_halfwidth",
    "run_cli",
    "sample",
    "simulate",
    "strategy_count",
    "tee_closed_form",
    "witness_names",
]
