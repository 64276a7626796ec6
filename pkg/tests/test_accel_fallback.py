"""The pure-numpy fallback (CIESDRO_NO_NUMBA=1) must agree with the
compiled kernels."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

PROBE = r"""
import json
import numpy as np
from ciesdro.accel import USING_NUMBA
from ciesdro.scenarios import kmeans_cluster, silhouette
from ciesdro.solver import SparseProblem, solve_lp

rng = np.random.default_rng(42)
samples = rng.uniform(0, 50, size=(60, 24))
clus = kmeans_cluster(samples, 3, seed=1)

p = SparseProblem()
for j in range(5):
    p.add_var(0, 3.0, rng.normal())
for i in range(4):
    p.add_row(range(5), rng.normal(size=5), "<=", rng.uniform(2, 6))
sol = solve_lp(p)

print(json.dumps({
    "numba": USING_NUMBA,
    "labels": clus.labels.tolist(),
    "centers_sum": float(clus.centers.sum()),
    "sc": silhouette(samples, clus),
    "lp_status": sol.status,
    "lp_obj": sol.objective,
}))
"""


def _probe(no_numba):
    env = dict(os.environ)
    env["CIESDRO_NO_NUMBA"] = "1" if no_numba else "0"
    out = subprocess.run([sys.executable, "-c", PROBE], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def test_fallback_matches_compiled_path():
    jit = _probe(no_numba=False)
    plain = _probe(no_numba=True)
    assert plain["numba"] is False
    assert plain["labels"] == jit["labels"]
    assert plain["centers_sum"] == pytest.approx(jit["centers_sum"], rel=1e-12)
    assert plain["sc"] == pytest.approx(jit["sc"], abs=1e-12)
    assert plain["lp_status"] == jit["lp_status"]
    assert plain["lp_obj"] == pytest.approx(jit["lp_obj"], abs=1e-9)
