"""Thermal comfort index and building heat relations."""

from dataclasses import dataclass, field

import numpy as np

PMV_SCALE = 3.76
PMV_OFFSET = 2.43
CLOTHING_AIR_FILM = 0.1


@dataclass(frozen=True)
class ComfortParams:
    metabolic_rate: float = 80.0
    clothing_resistance: float = 0.15
    skin_comfort_temp: float = 33.5

    @property
    def thermal_gain(self):
        return self.metabolic_rate * (self.clothing_resistance + CLOTHING_AIR_FILM)


def pmv(t_in, comfort):
    """Predicted mean vote at indoor temperature ``t_in`` (degC)."""
    gain = comfort.thermal_gain
    if gain <= 0:
        raise ZeroDivisionError("metabolic rate x clothing resistance must be positive")
    return PMV_OFFSET - PMV_SCALE * (comfort.skin_comfort_temp - t_in) / gain


def neutral_temperature(comfort):
    """Indoor temperature at which the vote is exactly zero."""
    return comfort.skin_comfort_temp - PMV_OFFSET * comfort.thermal_gain / PMV_SCALE


def comfort_band(limit, comfort):
    """Closed-form indoor temperature interval where |vote| <= limit."""
    if limit <= 0:
        raise ValueError("comfort limit must be positive")
    gain = comfort.thermal_gain
    t_low = comfort.skin_comfort_temp - (PMV_OFFSET + limit) * gain / PMV_SCALE
    t_high = comfort.skin_comfort_temp - (PMV_OFFSET - limit) * gain / PMV_SCALE
    return t_low, t_high


@dataclass(frozen=True)
class Envelope:
    kf: float            # aggregate loss coefficient, kW/degC
    cap: float           # aggregate thermal capacitance, kWh/degC
    t_in_init: float     # indoor temperature entering the horizon, degC

    def __post_init__(self):
        if self.kf <= 0 or self.cap <= 0:
            raise ValueError("envelope kf and cap must be positive")


def heat_demand(t_in_now, t_in_prev, t_out, envelope, dt=1.0):
    """Heating power holding the implicit-Euler indoor temperature step."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return (envelope.cap * (t_in_now - t_in_prev) / dt
            + envelope.kf * (t_in_now - t_out))


def indoor_step(t_in_prev, t_out, heat, envelope, dt=1.0):
    """Unique indoor temperature after one step under ``heat`` kW."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    denom = envelope.cap / dt + envelope.kf
    return (heat + envelope.cap / dt * t_in_prev + envelope.kf * t_out) / denom


def baseline_heat_profile(envelope, comfort, t_out, dt=1.0):
    """Hourly heat demand holding the indoor setpoint at the zero-vote point."""
    t_star = neutral_temperature(comfort)
    t_out = np.asarray(t_out, dtype=float)
    h0 = np.empty_like(t_out)
    prev = envelope.t_in_init
    for t in range(t_out.size):
        h0[t] = heat_demand(t_star, prev, t_out[t], envelope, dt)
        prev = t_star
    return h0
