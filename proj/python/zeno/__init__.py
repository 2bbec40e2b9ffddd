# Copyright 2026 The Zeno Dynamics Authors
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
"""Quantum Zeno dynamics on finite-dimensional systems."""

import json as _json

from ._core import (
    ExceptionalPointError,
    IntegrityError,
    NumericalError,
    PreconditionError,
    SingularityError,
    StructuralError,
    UnderflowError,
    UsageError,
    cli,
    closed_form_sp3,
    closed_form_sp3s,
    continuous_limit,
    effective_decay_rate,
    expm,
    fit_decay_rate,
    kicked_limit,
    model,
    model_names,
    offdiagonal_leakage,
    preset,
    preset_names,
    propagator,
    pulsed_selective_survival,
    spectral_projections,
    survival_probability,
    zeno_time,
)
from ._core import run as _run

__version__ = "0.1.0"


def run(config):
    """Runs an experiment config given as a dict or JSON text."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(config)
