"""Bundled synthetic dataset: seeded renewable sample generators plus a
reference community configuration (winter heating season).

Replaces proprietary measurement data; every artifact is deterministic in
the seed so fixture files are byte-identical across runs.
"""

import os

import numpy as np

from .config import CiesConfig, save_config
from .scenarios import build_scenario_set, save_samples_csv, select_cluster_count

N_DAYS = 730
DAYLIGHT = slice(6, 20)  # h06..h19 carry PV output; night columns stay zero

PV_CLEAR_PEAK = 120.0
PV_CLOUDY_PEAK = 45.0

WT_REGIME_LEVELS = (15.0, 60.0, 115.0, 170.0)
WT_REGIME_PROBS = (0.30, 0.30, 0.25, 0.15)


def _solar_shape():
    hours = np.arange(24, dtype=float)
    shape = np.zeros(24)
    day = hours[DAYLIGHT]
    shape[DAYLIGHT] = np.clip(np.sin(np.pi * (day - 6.0) / 13.0), 0.0, None) ** 1.5
    return shape


def generate_pv_samples(n_days=N_DAYS, seed=0):
    """Bimodal daily PV availability: clear and cloudy sky modes."""
    rng = np.random.default_rng(seed)
    shape = _solar_shape()
    out = np.zeros((n_days, 24))
    clear = rng.random(n_days) < 0.55
    for i in range(n_days):
        peak = PV_CLEAR_PEAK if clear[i] else PV_CLOUDY_PEAK
        jitter = 1.0 + 0.05 * rng.standard_normal()
        noise = 0.03 * peak * rng.standard_normal(24)
        profile = peak * jitter * shape + noise * (shape > 0)
        out[i] = np.clip(profile, 0.0, None)
    out[:, :6] = 0.0
    out[:, 20:] = 0.0
    return out


def generate_wt_samples(n_days=N_DAYS, seed=0):
    """Daily wind availability drawn from four distinct weather regimes."""
    rng = np.random.default_rng(seed + 1)
    hours = np.arange(24, dtype=float)
    # mild nocturnal tilt, stronger for the windy regimes
    tilt = 0.25 * np.cos(2 * np.pi * (hours - 3.0) / 24.0)
    out = np.zeros((n_days, 24))
    regimes = rng.choice(4, size=n_days, p=WT_REGIME_PROBS)
    for i in range(n_days):
        level = WT_REGIME_LEVELS[regimes[i]]
        profile = level * (1.0 + tilt * (0.4 + 0.2 * regimes[i]))
        profile = profile * (1.0 + 0.04 * rng.standard_normal())
        profile = profile + 0.05 * level * rng.standard_normal(24)
        out[i] = np.clip(profile, 0.0, None)
    return out


def fixture_profiles():
    """Community base electric load (kW) and winter outdoor temperature (degC)."""
    hours = np.arange(24, dtype=float)
    base = (260.0
            + 95.0 * np.exp(-0.5 * ((hours - 19.0) / 2.4) ** 2)   # evening peak
            + 55.0 * np.exp(-0.5 * ((hours - 10.0) / 2.8) ** 2)   # morning shoulder
            - 75.0 * np.exp(-0.5 * ((hours - 3.0) / 2.6) ** 2))   # night valley
    t_out = -2.0 + 4.0 * np.sin(np.pi * (hours - 8.0) / 14.0) * (hours > 7) \
        - 3.0 * np.exp(-0.5 * ((hours - 4.0) / 3.0) ** 2)
    return base.round(3), t_out.round(3)


def fixture_config():
    base, t_out = fixture_profiles()
    return CiesConfig(base_eload=base, t_out=t_out)


def fixture_scenarios(seed=0, k_min=2, k_max=6, n_days=N_DAYS):
    """Reduce the synthetic samples into the joint PV x WT scenario set."""
    pv_sel = select_cluster_count(generate_pv_samples(n_days, seed), k_min, k_max, seed)
    wt_sel = select_cluster_count(generate_wt_samples(n_days, seed), k_min, k_max, seed)
    scen = build_scenario_set(pv_sel.clusterings[pv_sel.k],
                              wt_sel.clusterings[wt_sel.k])
    scen.meta = {"seed": seed, "k_pv": pv_sel.k, "k_wt": wt_sel.k,
                 "pv_table": pv_sel.table, "wt_table": wt_sel.table}
    return scen


def write_fixture(out_dir, seed=0, n_days=N_DAYS):
    """Emit pv_samples.csv, wt_samples.csv and config.json into ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "pv": os.path.join(out_dir, "pv_samples.csv"),
        "wt": os.path.join(out_dir, "wt_samples.csv"),
        "config": os.path.join(out_dir, "config.json"),
    }
    save_samples_csv(paths["pv"], generate_pv_samples(n_days, seed))
    save_samples_csv(paths["wt"], generate_wt_samples(n_days, seed))
    save_config(paths["config"], fixture_config())
    return paths
