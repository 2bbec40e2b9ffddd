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
"""Smoke tests of the Python bindings."""

import math

import numpy as np
import pytest

import zeno


def test_propagator_of_rabi_model():
    h = zeno.model("rabi_two_level", omega=1.0)
    u = zeno.propagator(h, 0.7)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    assert abs(u[0, 0]) ** 2 == pytest.approx(math.cos(0.35) ** 2, abs=1e-12)


def test_pulsed_survival_freezes():
    h = zeno.model("rabi_two_level", omega=1.0)
    psi = np.array([1.0, 0.0], dtype=complex)
    s100 = zeno.pulsed_selective_survival(h, psi, 100, math.pi)
    assert s100 == pytest.approx(math.cos(math.pi / 200) ** 200, abs=1e-12)
    assert zeno.pulsed_selective_survival(h, psi, 1000, math.pi) > s100


def test_zeno_hamiltonian_of_three_level_model():
    h = zeno.model("three_level_ideal", omega=1.0, omega_prime=3.0)
    hc = np.zeros((3, 3), dtype=complex)
    hc[1, 2] = hc[2, 1] = 0.5
    hz, projectors = zeno.continuous_limit(h, hc)
    np.testing.assert_allclose(hz, 3.0 * hc, atol=1e-12)
    assert len(projectors) == 3
    hz_kick, _ = zeno.kicked_limit(h, zeno.propagator(hc, 1.0))
    np.testing.assert_allclose(hz_kick, hz, atol=1e-10)


def test_run_config_dict():
    result = zeno.run({
        "name": "rabi",
        "model": {"name": "rabi_two_level", "params": {"omega": 1.0}},
        "procedure": {"kind": "free"},
        "time": {"t_max": 3.0, "samples": 31},
    })
    t = np.array(result["series"]["t"])
    np.testing.assert_allclose(result["series"]["p1"], np.cos(t / 2) ** 2, atol=1e-10)
    assert "tau_zeno" in result["scalars"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(zeno.UsageError):
        zeno.run('{"name": "x"}')
    with pytest.raises(zeno.SingularityError):
        h = zeno.model("rabi_two_level", omega=1.0)
        zeno.effective_decay_rate(h, np.array([1.0, 0.0], dtype=complex), math.pi)
    with pytest.raises(ValueError):
        zeno.model("rabi_two_level", bogus=1.0)


def test_preset_and_cli(tmp_path):
    assert "fig6" in zeno.preset_names()
    assert zeno.preset("fig6")["scalars"]["max_deviation"] < 1e-9
    code, out, _ = zeno.cli(["preset", "fig1", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "fig1.csv").read_text().startswith("t,p_free,p_measured,p_exponential\n")
    assert zeno.cli(["preset", "nope"])[0] == 2
