import numpy as np
import pytest

from ciesdro import SolveMode, run
from ciesdro.fixture import fixture_config, fixture_scenarios


@pytest.fixture(scope="session")
def cfg():
    return fixture_config()


@pytest.fixture(scope="session")
def scenarios_full():
    """The bundled fixture reduced at full size: 2 PV x 4 WT scenarios."""
    scen = fixture_scenarios(seed=0)
    assert scen.n_s == 8, "fixture reduction is expected to select 2 x 4"
    return scen


@pytest.fixture(scope="session")
def scenarios_small():
    """A cheap 2-scenario set for fast solver-level tests."""
    scen = fixture_scenarios(seed=0, n_days=120, k_min=2, k_max=2)
    assert scen.n_s == 4
    return scen


@pytest.fixture(scope="session")
def dro_result(cfg, scenarios_full):
    """The reference solve: DRO, alpha=0.99, M=5000, tol=0.01."""
    return run(cfg, scenarios_full,
               SolveMode(kind="dro", alpha1=0.99, alphainf=0.99, m_hist=5000),
               tol=0.01, max_iter=10)


@pytest.fixture(scope="session")
def stochastic_result(cfg, scenarios_full):
    return run(cfg, scenarios_full, SolveMode(kind="stochastic"),
               tol=0.01, max_iter=10)


@pytest.fixture(scope="session")
def robust_result(cfg, scenarios_full):
    return run(cfg, scenarios_full, SolveMode(kind="robust"),
               tol=0.01, max_iter=10)
