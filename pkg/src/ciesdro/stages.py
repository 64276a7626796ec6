"""First-stage commitment fragment and per-scenario second-stage dispatch LP.

The second-stage emitter serves two callers: the standalone recourse LP
(commitment fixed, gating folded into variable bounds) and the master
problem (commitment symbolic, gating emitted as coupling rows against the
binary columns). Physics rows are identical in both paths.

Per-period variable groups (16 x T continuous):
    mtg_el, eb_el, grid_buy, grid_sell, wt, pv, ess_ch, ess_dc, hsd_ch,
    hsd_dc, tse_pos, tse_neg, eil, hie, t_in, c_hsd
The ESS energy state is not a variable; its window and terminal-reset
constraints are prefix-sum rows over charge/discharge power.
"""

from dataclasses import dataclass, field

import numpy as np

from .solver import SparseProblem

V_GROUPS = ("mtg_el", "eb_el", "grid_buy", "grid_sell", "wt", "pv",
            "ess_ch", "ess_dc", "hsd_ch", "hsd_dc",
            "tse_pos", "tse_neg", "eil", "hie", "t_in", "c_hsd")
U_GROUPS = ("mtg_on", "mtg_start", "mtg_stop",
            "ess_ch_flag", "ess_dc_flag", "hsd_ch_flag", "hsd_dc_flag")

N_V_GROUPS = len(V_GROUPS)
N_U_GROUPS = len(U_GROUPS)

BALANCE_TOL = 1e-6


class InfeasibleError(RuntimeError):
    """The configured system cannot serve demand in some scenario."""


class RecourseInfeasibleError(InfeasibleError):
    def __init__(self, scenario):
        super().__init__(f"second-stage dispatch infeasible for scenario {scenario}")
        self.scenario = scenario


@dataclass
class FirstStageDecision:
    on: np.ndarray
    start: np.ndarray
    stop: np.ndarray
    ess_ch: np.ndarray
    ess_dc: np.ndarray
    hsd_ch: np.ndarray
    hsd_dc: np.ndarray

    def arrays(self):
        return (self.on, self.start, self.stop, self.ess_ch, self.ess_dc,
                self.hsd_ch, self.hsd_dc)

    def validate(self, cfg):
        t = cfg.horizon
        for name, arr in zip(U_GROUPS, self.arrays()):
            if arr.shape != (t,):
                raise ValueError(f"{name} must have length {t}")
            if not np.all(np.isin(arr, (0, 1))):
                raise ValueError(f"{name} must be 0/1")
        if np.any(self.start + self.stop > 1):
            raise ValueError("simultaneous startup and shutdown")
        if np.any(self.ess_ch + self.ess_dc > 1):
            raise ValueError("simultaneous ESS charge and discharge flags")
        if np.any(self.hsd_ch + self.hsd_dc > 1):
            raise ValueError("simultaneous HSD charge and discharge flags")
        prev = np.concatenate(([cfg.mtg.initial_on], self.on[:-1]))
        if np.any(self.on - prev != self.start - self.stop):
            raise ValueError("commitment status must link startups and shutdowns")
        return self

    @classmethod
    def from_master_x(cls, cfg, x):
        t = cfg.horizon
        vals = [np.round(x[g * t:(g + 1) * t]).astype(int) for g in range(N_U_GROUPS)]
        return cls(*vals)

    @classmethod
    def all_off(cls, cfg):
        t = cfg.horizon
        z = np.zeros(t, dtype=int)
        dec = cls(z.copy(), z.copy(), z.copy(), z.copy(), z.copy(), z.copy(), z.copy())
        if cfg.mtg.initial_on:
            dec.stop = z.copy()
            dec.stop[0] = 1
            dec.on = z.copy()
        return dec.validate(cfg)

    @classmethod
    def always_on(cls, cfg):
        t = cfg.horizon
        one = np.ones(t, dtype=int)
        z = np.zeros(t, dtype=int)
        start = z.copy()
        if not cfg.mtg.initial_on:
            start[0] = 1
        return cls(one, start, z.copy(), z.copy(), z.copy(), z.copy(), z.copy()) \
            .validate(cfg)


def first_stage_cost(cfg, u):
    return float(cfg.mtg.startup_cost * u.start.sum()
                 + cfg.mtg.shutdown_cost * u.stop.sum())


def build_first_stage(cfg):
    """Binary commitment fragment: 7T variables, logic rows, start/stop costs.

    Returns the problem and a {group: column array} map for callers that
    extend it (the master problem builder).
    """
    t = cfg.horizon
    prob = SparseProblem()
    cols = {}
    for g in U_GROUPS:
        cols[g] = np.asarray(prob.add_vars(t, 0.0, 1.0, binary=True, name=g))
    for k in range(t):
        prob.set_obj(cols["mtg_start"][k], cfg.mtg.startup_cost)
        prob.set_obj(cols["mtg_stop"][k], cfg.mtg.shutdown_cost)
        prob.add_row([cols["mtg_start"][k], cols["mtg_stop"][k]], [1, 1], "<=", 1,
                     name=f"start_stop[{k}]")
        prob.add_row([cols["ess_ch_flag"][k], cols["ess_dc_flag"][k]], [1, 1], "<=", 1,
                     name=f"ess_flag[{k}]")
        prob.add_row([cols["hsd_ch_flag"][k], cols["hsd_dc_flag"][k]], [1, 1], "<=", 1,
                     name=f"hsd_flag[{k}]")
        # status linkage: on_t - on_{t-1} = start_t - stop_t
        if k == 0:
            prob.add_row([cols["mtg_on"][0], cols["mtg_start"][0], cols["mtg_stop"][0]],
                         [1, -1, 1], "=", cfg.mtg.initial_on, name="status_link[0]")
        else:
            prob.add_row([cols["mtg_on"][k], cols["mtg_on"][k - 1],
                          cols["mtg_start"][k], cols["mtg_stop"][k]],
                         [1, -1, -1, 1], "=", 0, name=f"status_link[{k}]")
    return prob, cols


@dataclass
class CopyLayout:
    base: int
    horizon: int
    obj: np.ndarray          # local cost vector over the copy's columns
    obj_offset: float        # curtailment constant for this scenario

    def col(self, group, t):
        return self.base + V_GROUPS.index(group) * self.horizon + t

    def cols(self, group):
        g = V_GROUPS.index(group)
        return np.arange(self.base + g * self.horizon,
                         self.base + (g + 1) * self.horizon)


def _emit_second_stage(prob, cfg, pv, wt, u=None, u_cols=None, tag=""):
    """Append one scenario's dispatch variables and rows to ``prob``."""
    t = cfg.horizon
    dt = cfg.dt
    pv = np.asarray(pv, dtype=float)
    wt = np.asarray(wt, dtype=float)
    h0 = cfg.baseline_heat()
    t_low, t_high = cfg.comfort_bounds()
    mtg_cap = min(cfg.mtg.p_el_max, cfg.mtg.p_hl_max / cfg.mtg.heat_ratio)
    eb_cap = cfg.eb.p_hl_rated / cfg.eb.eta
    band = cfg.idr.tsl_band_frac * cfg.base_eload
    eil_cap = cfg.idr.eil_frac * cfg.base_eload
    fixed = u is not None

    base = prob.n_vars
    bounds = {
        "mtg_el": (np.zeros(t), (u.on * mtg_cap) if fixed else np.full(t, mtg_cap)),
        "eb_el": (np.zeros(t), np.full(t, eb_cap)),
        "grid_buy": (np.zeros(t), np.full(t, cfg.grid.buy_cap)),
        "grid_sell": (np.zeros(t), np.full(t, cfg.grid.sell_cap)),
        "wt": (np.zeros(t), wt),
        "pv": (np.zeros(t), pv),
        "ess_ch": (np.zeros(t), (u.ess_ch * cfg.ess.ch_max) if fixed
                   else np.full(t, cfg.ess.ch_max)),
        "ess_dc": (np.zeros(t), (u.ess_dc * cfg.ess.dc_max) if fixed
                   else np.full(t, cfg.ess.dc_max)),
        "hsd_ch": (np.zeros(t), (u.hsd_ch * cfg.hsd.ch_max) if fixed
                   else np.full(t, cfg.hsd.ch_max)),
        "hsd_dc": (np.zeros(t), (u.hsd_dc * cfg.hsd.dc_max) if fixed
                   else np.full(t, cfg.hsd.dc_max)),
        "tse_pos": (np.zeros(t), band),
        "tse_neg": (np.zeros(t), band),
        "eil": (np.zeros(t), eil_cap),
        "hie": (np.zeros(t), h0),
        "t_in": (t_low, t_high),
        "c_hsd": (np.full(t, cfg.hsd.c_min), np.full(t, cfg.hsd.c_max)),
    }
    for g in V_GROUPS:
        lo, hi = bounds[g]
        for k in range(t):
            prob.add_var(lo[k], hi[k], name=f"{tag}{g}[{k}]")

    lay = CopyLayout(base, t, np.zeros(N_V_GROUPS * t), 0.0)

    # local objective: all per-kWh prices applied over dt
    cost = {
        "mtg_el": np.full(t, (cfg.mtg.cost_a
                              + cfg.penalties.co2_price * cfg.penalties.co2_per_kwh_mtg) * dt),
        "grid_buy": (cfg.grid.buy_price
                     + cfg.penalties.co2_price * cfg.penalties.co2_per_kwh_grid) * dt,
        "grid_sell": -cfg.grid.sell_price * dt,
        "wt": np.full(t, -cfg.penalties.curtail_price * dt),
        "pv": np.full(t, -cfg.penalties.curtail_price * dt),
        "ess_ch": np.full(t, cfg.ess.op_price * dt),
        "ess_dc": np.full(t, cfg.ess.op_price * dt),
        "hsd_ch": np.full(t, cfg.hsd.op_price * dt),
        "hsd_dc": np.full(t, cfg.hsd.op_price * dt),
        "tse_pos": np.full(t, cfg.idr.shift_price * dt),
        "tse_neg": np.full(t, cfg.idr.shift_price * dt),
        "eil": np.full(t, cfg.idr.interrupt_el_price * dt),
        "hie": np.full(t, cfg.idr.interrupt_heat_price * dt),
    }
    for g, vec in cost.items():
        gi = V_GROUPS.index(g)
        lay.obj[gi * t:(gi + 1) * t] = vec
    lay.obj_offset = float(cfg.penalties.curtail_price * dt * (pv.sum() + wt.sum()))

    def c(group, k):
        return lay.col(group, k)

    for k in range(t):
        prob.add_row(
            [c("grid_buy", k), c("wt", k), c("pv", k), c("ess_dc", k), c("mtg_el", k),
             c("ess_ch", k), c("grid_sell", k), c("eb_el", k),
             c("tse_pos", k), c("tse_neg", k), c("eil", k)],
            [1, 1, 1, 1, 1, -1, -1, -1, -1, 1, 1],
            "=", cfg.base_eload[k], name=f"{tag}elec[{k}]")
        prob.add_row(
            [c("mtg_el", k), c("eb_el", k), c("hsd_ch", k), c("hsd_dc", k), c("hie", k)],
            [cfg.mtg.heat_ratio, cfg.eb.eta, -1, 1, 1],
            "=", h0[k], name=f"{tag}heat[{k}]")
        # indoor temperature step defines the interrupted heat
        cap_dt = cfg.envelope.cap / dt
        rhs = h0[k] + cfg.envelope.kf * cfg.t_out[k]
        if k == 0:
            rhs += cap_dt * cfg.envelope.t_in_init
            prob.add_row([c("t_in", 0), c("hie", 0)],
                         [cap_dt + cfg.envelope.kf, 1.0], "=", rhs,
                         name=f"{tag}t_in[0]")
        else:
            prob.add_row([c("t_in", k), c("t_in", k - 1), c("hie", k)],
                         [cap_dt + cfg.envelope.kf, -cap_dt, 1.0], "=", rhs,
                         name=f"{tag}t_in[{k}]")

    # ESS energy window as prefix sums of charge/discharge power
    ch_cols = list(lay.cols("ess_ch"))
    dc_cols = list(lay.cols("ess_dc"))
    for k in range(t):
        cols = ch_cols[:k + 1] + dc_cols[:k + 1]
        coefs = [cfg.ess.eta_ch * dt] * (k + 1) + [-dt / cfg.ess.eta_dc] * (k + 1)
        prob.add_row(cols, coefs, "<=", cfg.ess.c_max - cfg.ess.c_init,
                     name=f"{tag}ess_hi[{k}]")
        prob.add_row(cols, coefs, ">=", cfg.ess.c_min - cfg.ess.c_init,
                     name=f"{tag}ess_lo[{k}]")
    prob.add_row(ch_cols + dc_cols,
                 [cfg.ess.eta_ch * dt] * t + [-dt / cfg.ess.eta_dc] * t,
                 "=", 0.0, name=f"{tag}ess_reset")

    for k in range(t):
        cols = [c("c_hsd", k), c("hsd_ch", k), c("hsd_dc", k)]
        coefs = [1.0, -cfg.hsd.eta_ch * dt, dt / cfg.hsd.eta_dc]
        if k == 0:
            prob.add_row(cols, coefs, "=", cfg.hsd.c_init, name=f"{tag}hsd[0]")
        else:
            prob.add_row(cols + [c("c_hsd", k - 1)], coefs + [-1.0], "=", 0.0,
                         name=f"{tag}hsd[{k}]")

    prob.add_row(list(lay.cols("tse_pos")) + list(lay.cols("tse_neg")),
                 [1.0] * t + [-1.0] * t, "=", 0.0, name=f"{tag}tsl_zero")

    # ramps; startup/shutdown periods are exempt up to p_el_max
    pmax = cfg.mtg.p_el_max
    for k in range(1, t):
        if fixed:
            prob.add_row([c("mtg_el", k), c("mtg_el", k - 1)], [1, -1], "<=",
                         pmax - (pmax - cfg.mtg.ramp_up) * u.on[k - 1],
                         name=f"{tag}ramp_up[{k}]")
            prob.add_row([c("mtg_el", k - 1), c("mtg_el", k)], [1, -1], "<=",
                         pmax - (pmax - cfg.mtg.ramp_down) * u.on[k],
                         name=f"{tag}ramp_dn[{k}]")
        else:
            prob.add_row([c("mtg_el", k), c("mtg_el", k - 1), u_cols["mtg_on"][k - 1]],
                         [1, -1, pmax - cfg.mtg.ramp_up], "<=", pmax,
                         name=f"{tag}ramp_up[{k}]")
            prob.add_row([c("mtg_el", k - 1), c("mtg_el", k), u_cols["mtg_on"][k]],
                         [1, -1, pmax - cfg.mtg.ramp_down], "<=", pmax,
                         name=f"{tag}ramp_dn[{k}]")

    if not fixed:
        gates = (("mtg_el", "mtg_on", cfg.mtg.p_el_max),
                 ("ess_ch", "ess_ch_flag", cfg.ess.ch_max),
                 ("ess_dc", "ess_dc_flag", cfg.ess.dc_max),
                 ("hsd_ch", "hsd_ch_flag", cfg.hsd.ch_max),
                 ("hsd_dc", "hsd_dc_flag", cfg.hsd.dc_max))
        for vg, ug, cap in gates:
            for k in range(t):
                prob.add_row([c(vg, k), u_cols[ug][k]], [1.0, -cap], "<=", 0.0,
                             name=f"{tag}gate_{vg}[{k}]")
    return lay


def build_second_stage(cfg, pv, wt, u):
    """Standalone recourse LP for one scenario under a fixed commitment."""
    u.validate(cfg)
    prob = SparseProblem()
    lay = _emit_second_stage(prob, cfg, pv, wt, u=u)
    for j, coef in enumerate(lay.obj):
        if coef:
            prob.set_obj(lay.base + j, coef)
    # per-period constant cost of the running commitment
    prob.obj_offset = lay.obj_offset + cfg.mtg.cost_b * float(u.on.sum())
    return prob, lay


def append_master_copy(prob, cfg, pv, wt, u_cols, tag=""):
    """Append one symbolic-commitment scenario copy to the master problem."""
    return _emit_second_stage(prob, cfg, pv, wt, u_cols=u_cols, tag=tag)


@dataclass
class SecondStageDecision:
    values: dict            # group -> length-T array
    pv_avail: np.ndarray
    wt_avail: np.ndarray

    def __getitem__(self, group):
        return self.values[group]

    @classmethod
    def from_vector(cls, cfg, pv, wt, x, base=0):
        t = cfg.horizon
        vals = {}
        for g, grp in enumerate(V_GROUPS):
            vals[grp] = np.asarray(x[base + g * t: base + (g + 1) * t], dtype=float)
        return cls(vals, np.asarray(pv, dtype=float), np.asarray(wt, dtype=float))

    def derived(self, cfg):
        """Heat-side quantities implied by the dispatch vector."""
        h0 = cfg.baseline_heat()
        mtg_heat = cfg.mtg.heat_ratio * self["mtg_el"]
        eb_heat = cfg.eb.eta * self["eb_el"]
        heat_load = h0 - self["hie"]
        net = (cfg.ess.eta_ch * self["ess_ch"] - self["ess_dc"] / cfg.ess.eta_dc) * cfg.dt
        c_ess = cfg.ess.c_init + np.cumsum(net)
        return {"mtg_heat": mtg_heat, "eb_heat": eb_heat, "heat_load": heat_load,
                "c_ess": c_ess, "h0": h0}


@dataclass
class CostBreakdown:
    c_mtg: float
    c_buy: float
    c_sell_profit: float
    c_ess: float
    c_hsd: float
    c_loss: float
    c_co2: float
    c_idr: float
    c_startstop: float
    total: float = field(init=False)

    def __post_init__(self):
        self.total = (self.c_startstop + self.c_mtg + self.c_buy + self.c_ess
                      + self.c_hsd + self.c_loss + self.c_co2 + self.c_idr
                      - self.c_sell_profit)

    def as_dict(self):
        return {k: float(getattr(self, k)) for k in
                ("c_mtg", "c_buy", "c_sell_profit", "c_ess", "c_hsd",
                 "c_loss", "c_co2", "c_idr", "c_startstop", "total")}


def cost_breakdown(cfg, u, v, pv=None, wt=None, validate=False):
    """Evaluate every objective term for one scenario's dispatch."""
    pv = v.pv_avail if pv is None else np.asarray(pv, dtype=float)
    wt = v.wt_avail if wt is None else np.asarray(wt, dtype=float)
    if validate:
        problems = audit_dispatch(cfg, pv, wt, u, v)
        if problems:
            raise ValueError("infeasible dispatch:\n  " + "\n  ".join(problems))
    dt = cfg.dt
    pen = cfg.penalties
    c_mtg = float((cfg.mtg.cost_a * v["mtg_el"] * dt).sum()
                  + cfg.mtg.cost_b * u.on.sum())
    c_buy = float((cfg.grid.buy_price * v["grid_buy"] * dt).sum())
    c_sell = float((cfg.grid.sell_price * v["grid_sell"] * dt).sum())
    c_ess = float(cfg.ess.op_price * dt * (v["ess_ch"] + v["ess_dc"]).sum())
    c_hsd = float(cfg.hsd.op_price * dt * (v["hsd_ch"] + v["hsd_dc"]).sum())
    c_loss = float(pen.curtail_price * dt
                   * ((pv - v["pv"]).sum() + (wt - v["wt"]).sum()))
    c_co2 = float(pen.co2_price * dt * (pen.co2_per_kwh_mtg * v["mtg_el"].sum()
                                        + pen.co2_per_kwh_grid * v["grid_buy"].sum()))
    c_idr = float(dt * (cfg.idr.shift_price * (v["tse_pos"] + v["tse_neg"]).sum()
                        + cfg.idr.interrupt_el_price * v["eil"].sum()
                        + cfg.idr.interrupt_heat_price * v["hie"].sum()))
    c_ss = first_stage_cost(cfg, u)
    return CostBreakdown(c_mtg, c_buy, c_sell, c_ess, c_hsd, c_loss, c_co2, c_idr, c_ss)


def audit_dispatch(cfg, pv, wt, u, v, tol=BALANCE_TOL):
    """Re-check every dispatch constraint; returns a list of violations."""
    t = cfg.horizon
    dt = cfg.dt
    pv = np.asarray(pv, dtype=float)
    wt = np.asarray(wt, dtype=float)
    out = []
    der = v.derived(cfg)
    h0 = der["h0"]

    elec = (v["grid_buy"] + v["wt"] + v["pv"] + v["ess_dc"] + v["mtg_el"]
            - v["ess_ch"] - v["grid_sell"] - v["eb_el"]
            - (cfg.base_eload + v["tse_pos"] - v["tse_neg"] - v["eil"]))
    heat = der["mtg_heat"] + der["eb_heat"] - v["hsd_ch"] + v["hsd_dc"] - der["heat_load"]
    for k in range(t):
        if abs(elec[k]) > tol:
            out.append(f"electric balance residual {elec[k]:.3e} at t={k}")
        if abs(heat[k]) > tol:
            out.append(f"heat balance residual {heat[k]:.3e} at t={k}")

    for g in ("mtg_el", "eb_el", "grid_buy", "grid_sell", "wt", "pv", "ess_ch",
              "ess_dc", "hsd_ch", "hsd_dc", "tse_pos", "tse_neg", "eil", "hie"):
        if np.any(v[g] < -tol):
            out.append(f"negative dispatch in {g}")
    if np.any(v["pv"] > pv + tol) or np.any(v["wt"] > wt + tol):
        out.append("dispatch exceeds renewable availability")

    if np.any(v["mtg_el"] > u.on * min(cfg.mtg.p_el_max,
                                       cfg.mtg.p_hl_max / cfg.mtg.heat_ratio) + tol):
        out.append("turbine output exceeds its gated limit")
    if np.any(der["mtg_heat"] > cfg.mtg.p_hl_max + tol):
        out.append("turbine heat output exceeds its limit")
    if np.any(der["eb_heat"] > cfg.eb.p_hl_rated + tol):
        out.append("boiler heat output exceeds its rating")
    for g, flag, cap in (("ess_ch", u.ess_ch, cfg.ess.ch_max),
                         ("ess_dc", u.ess_dc, cfg.ess.dc_max),
                         ("hsd_ch", u.hsd_ch, cfg.hsd.ch_max),
                         ("hsd_dc", u.hsd_dc, cfg.hsd.dc_max)):
        if np.any(v[g] > flag * cap + tol):
            out.append(f"{g} exceeds its gated limit")

    if abs((v["tse_pos"] - v["tse_neg"]).sum()) > tol:
        out.append("time-shifted load does not net to zero")
    if np.any(v["tse_pos"] > cfg.idr.tsl_band_frac * cfg.base_eload + tol) or \
            np.any(v["tse_neg"] > cfg.idr.tsl_band_frac * cfg.base_eload + tol):
        out.append("time-shifted load leaves its band")
    if np.any(v["eil"] > cfg.idr.eil_frac * cfg.base_eload + tol):
        out.append("interrupted electric load exceeds its cap")
    if np.any(v["hie"] > h0 + tol):
        out.append("interrupted heat exceeds the baseline demand")

    c_ess = der["c_ess"]
    if np.any(c_ess > cfg.ess.c_max + tol) or np.any(c_ess < cfg.ess.c_min - tol):
        out.append("ESS energy leaves its window")
    if abs(c_ess[-1] - cfg.ess.c_init) > tol:
        out.append(f"ESS does not return to its initial state "
                   f"({c_ess[-1]:.6f} vs {cfg.ess.c_init})")

    c_hsd = v["c_hsd"]
    net = (cfg.hsd.eta_ch * v["hsd_ch"] - v["hsd_dc"] / cfg.hsd.eta_dc) * dt
    recon = cfg.hsd.c_init + np.cumsum(net)
    if np.any(np.abs(recon - c_hsd) > 1e-5):
        out.append("HSD state variable disagrees with its recursion")
    if np.any(c_hsd > cfg.hsd.c_max + tol) or np.any(c_hsd < cfg.hsd.c_min - tol):
        out.append("HSD energy leaves its window")

    t_low, t_high = cfg.comfort_bounds()
    if np.any(v["t_in"] < t_low - tol) or np.any(v["t_in"] > t_high + tol):
        out.append("indoor temperature leaves the comfort band")
    # temperature recursion must reproduce the interrupted heat
    cap_dt = cfg.envelope.cap / dt
    prev = np.concatenate(([cfg.envelope.t_in_init], v["t_in"][:-1]))
    h_l = cap_dt * (v["t_in"] - prev) + cfg.envelope.kf * (v["t_in"] - cfg.t_out)
    if np.any(np.abs(h_l - der["heat_load"]) > 1e-4):
        out.append("indoor temperature path inconsistent with the heat load")

    for k in range(1, t):
        if u.on[k] and u.on[k - 1]:
            step = v["mtg_el"][k] - v["mtg_el"][k - 1]
            if step > cfg.mtg.ramp_up + tol or -step > cfg.mtg.ramp_down + tol:
                out.append(f"turbine ramp violated at t={k}")

    both = np.minimum(v["grid_buy"], v["grid_sell"])
    if np.any(both > tol):
        out.append("simultaneous grid purchase and sale")
    return out
