"""Community energy system configuration: equipment, tariffs, demand
response, comfort and envelope parameters, plus the JSON mapping."""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .comfort import ComfortParams, Envelope, baseline_heat_profile, comfort_band, \
    neutral_temperature

HORIZON = 24
DT_HOURS = 1.0


def default_tou_prices():
    """Time-of-use purchase tariff: valley 0.48, flat 0.90, peak 1.35 (index
    t covers the period ending at hour t+1)."""
    price = np.empty(HORIZON)
    price[0:7] = 0.48    # 1:00-7:00
    price[7] = 0.90      # 8:00
    price[8:11] = 1.35   # 9:00-11:00
    price[11:18] = 0.90  # 12:00-18:00
    price[18:23] = 1.35  # 19:00-23:00
    price[23] = 0.48     # 24:00
    return price


def default_pmv_limits():
    """Relaxed comfort (0.9) overnight, tight comfort (0.5) 8:00-19:00."""
    limit = np.empty(HORIZON)
    limit[0:7] = 0.9
    limit[7:19] = 0.5
    limit[19:24] = 0.9
    return limit


@dataclass
class MtgParams:
    count: int = 1
    p_el_max: float = 300.0
    ramp_up: float = 50.0
    ramp_down: float = 50.0
    p_hl_max: float = 360.0
    heat_ratio: float = 1.2
    cost_a: float = 1.2
    cost_b: float = 0.0015
    startup_cost: float = 0.25
    shutdown_cost: float = 0.25
    initial_on: int = 0


@dataclass
class StorageParams:
    ch_max: float
    dc_max: float
    eta_ch: float
    eta_dc: float
    c_min: float
    c_max: float
    c_init: float
    op_price: float


@dataclass
class EbParams:
    eta: float = 0.9
    p_hl_rated: float = 200.0


@dataclass
class GridParams:
    buy_cap: float = 600.0
    sell_cap: float = 600.0
    buy_price: np.ndarray = field(default_factory=default_tou_prices)
    sell_price: np.ndarray = None

    def __post_init__(self):
        self.buy_price = np.asarray(self.buy_price, dtype=float)
        if self.sell_price is None:
            self.sell_price = 0.85 * self.buy_price
        self.sell_price = np.asarray(self.sell_price, dtype=float)


@dataclass
class PenaltyParams:
    curtail_price: float = 0.62
    co2_price: float = 0.05
    co2_per_kwh_mtg: float = 0.49
    co2_per_kwh_grid: float = 0.82


@dataclass
class IdrParams:
    shift_price: float = 0.1      # per kWh of time-shifted load, both directions
    interrupt_el_price: float = 0.3
    interrupt_heat_price: float = 0.2
    tsl_band_frac: float = 0.10
    eil_frac: float = 0.10


@dataclass
class CiesConfig:
    base_eload: np.ndarray
    t_out: np.ndarray
    mtg: MtgParams = field(default_factory=MtgParams)
    ess: StorageParams = field(default_factory=lambda: StorageParams(
        20.0, 20.0, 0.95, 0.95, 10.0, 90.0, 10.0, 0.02))
    hsd: StorageParams = field(default_factory=lambda: StorageParams(
        50.0, 50.0, 0.85, 0.90, 10.0, 150.0, 10.0, 0.011))
    eb: EbParams = field(default_factory=EbParams)
    grid: GridParams = field(default_factory=GridParams)
    penalties: PenaltyParams = field(default_factory=PenaltyParams)
    idr: IdrParams = field(default_factory=IdrParams)
    comfort: ComfortParams = field(default_factory=ComfortParams)
    pmv_limits: np.ndarray = field(default_factory=default_pmv_limits)
    envelope: Envelope = field(default_factory=lambda: Envelope(10.0, 60.0, 20.574468085106382))
    horizon: int = HORIZON
    dt: float = DT_HOURS

    def __post_init__(self):
        self.base_eload = np.asarray(self.base_eload, dtype=float)
        self.t_out = np.asarray(self.t_out, dtype=float)
        self.pmv_limits = np.asarray(self.pmv_limits, dtype=float)
        self.validate()

    def validate(self):
        t = self.horizon
        if self.base_eload.shape != (t,) or self.t_out.shape != (t,):
            raise ValueError("base_eload and t_out must cover the full horizon")
        for name, arr in (("base_eload", self.base_eload),
                          ("buy_price", self.grid.buy_price),
                          ("sell_price", self.grid.sell_price)):
            if np.any(np.asarray(arr) < 0):
                raise ValueError(f"{name} must be non-negative")
        if self.mtg.count != 1:
            raise ValueError("only a single micro-turbine is supported (count=1)")
        if np.any(self.grid.sell_price >= self.grid.buy_price):
            raise ValueError("sell tariff must be strictly below the purchase tariff")
        for tag, st in (("ess", self.ess), ("hsd", self.hsd)):
            if not 0 < st.eta_ch <= 1 or not 0 < st.eta_dc <= 1:
                raise ValueError(f"{tag} efficiencies must lie in (0, 1]")
            if not st.c_min <= st.c_init <= st.c_max:
                raise ValueError(f"{tag} requires c_min <= c_init <= c_max")
            if st.ch_max < 0 or st.dc_max < 0:
                raise ValueError(f"{tag} power limits must be non-negative")
        if not np.all(np.isin(self.pmv_limits, (0.5, 0.9))):
            raise ValueError("pmv limits must be 0.5 or 0.9 per period")
        if np.any(self.baseline_heat() < -1e-9):
            raise ValueError("outdoor temperature must stay at or below the "
                             "comfort setpoint over the horizon "
                             "(heating-season model)")
        return self

    # -- derived quantities -------------------------------------------------

    def baseline_heat(self):
        """Heat demand profile holding the zero-vote indoor setpoint."""
        return baseline_heat_profile(self.envelope, self.comfort, self.t_out, self.dt)

    def comfort_bounds(self):
        """Per-period (t_low, t_high) indoor temperature band."""
        lows = np.empty(self.horizon)
        highs = np.empty(self.horizon)
        for t in range(self.horizon):
            lows[t], highs[t] = comfort_band(self.pmv_limits[t], self.comfort)
        return lows, highs

    def neutral_setpoint(self):
        return neutral_temperature(self.comfort)


# -- JSON mapping -----------------------------------------------------------

def _to_jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [float(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    return obj


def config_to_dict(cfg):
    out = {
        "base_eload": list(map(float, cfg.base_eload)),
        "t_out": list(map(float, cfg.t_out)),
        "mtg": asdict(cfg.mtg),
        "ess": asdict(cfg.ess),
        "hsd": asdict(cfg.hsd),
        "eb": asdict(cfg.eb),
        "grid": _to_jsonable({"buy_cap": cfg.grid.buy_cap, "sell_cap": cfg.grid.sell_cap,
                              "buy_price": cfg.grid.buy_price,
                              "sell_price": cfg.grid.sell_price}),
        "penalties": asdict(cfg.penalties),
        "idr": asdict(cfg.idr),
        "comfort": asdict(cfg.comfort),
        "pmv_limits": list(map(float, cfg.pmv_limits)),
        "envelope": asdict(cfg.envelope),
        "horizon": cfg.horizon,
        "dt": cfg.dt,
    }
    return out


def config_from_dict(data):
    kwargs = dict(
        base_eload=data["base_eload"],
        t_out=data["t_out"],
    )
    if "mtg" in data:
        kwargs["mtg"] = MtgParams(**data["mtg"])
    if "ess" in data:
        kwargs["ess"] = StorageParams(**data["ess"])
    if "hsd" in data:
        kwargs["hsd"] = StorageParams(**data["hsd"])
    if "eb" in data:
        kwargs["eb"] = EbParams(**data["eb"])
    if "grid" in data:
        kwargs["grid"] = GridParams(**data["grid"])
    if "penalties" in data:
        kwargs["penalties"] = PenaltyParams(**data["penalties"])
    if "idr" in data:
        kwargs["idr"] = IdrParams(**data["idr"])
    if "comfort" in data:
        kwargs["comfort"] = ComfortParams(**data["comfort"])
    if "pmv_limits" in data:
        kwargs["pmv_limits"] = data["pmv_limits"]
    if "envelope" in data:
        kwargs["envelope"] = Envelope(**data["envelope"])
    for key in ("horizon", "dt"):
        if key in data:
            kwargs[key] = data[key]
    return CiesConfig(**kwargs)


def save_config(path, cfg):
    with open(path, "w") as fh:
        json.dump(config_to_dict(cfg), fh, indent=1)
        fh.write("\n")


def load_config(path):
    with open(path) as fh:
        return config_from_dict(json.load(fh))
