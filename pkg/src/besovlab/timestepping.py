"""Classical RK4 time evolution with CFL step control and trajectory monitors.

The stepper shortens steps to land exactly on requested snapshot times, and
records per-step diagnostics: H1 energy, sup norm, Lipschitz norm and the
Besov norm at the experiment's index.  Blow-up indicators abort the run
instead of silently clipping.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .besov import besov_norm
from .equations import EquationKind, _rhs_values, _spectral_tables, drift
from .errors import BlowUpError, GridMismatchError, ResolutionError
from .spectral import Field

_TIME_EPS = 1e-12


@dataclass(frozen=True)
class SolveConfig:
    """Time-stepping parameters; T <= 1 matching the short-time windows used."""

    t_final: float
    dt_mode: str = "cfl"  # "cfl" or "fixed"
    dt: float = None
    c_cfl: float = 0.5
    snapshot_times: tuple = ()

    def __post_init__(self):
        if not 0 < self.t_final <= 1:
            raise ValueError(f"t_final must lie in (0, 1], got {self.t_final}")
        if self.dt_mode not in ("cfl", "fixed"):
            raise ValueError(f"dt_mode must be 'cfl' or 'fixed', got {self.dt_mode!r}")
        if self.dt_mode == "fixed":
            if self.dt is None or self.dt <= 0:
                raise ValueError("fixed mode needs a positive dt")
        elif not 0 < self.c_cfl <= 1:
            raise ValueError(f"c_cfl must lie in (0, 1], got {self.c_cfl}")
        snaps = tuple(sorted(set(float(t) for t in self.snapshot_times)))
        for t in snaps:
            if not 0 <= t <= self.t_final + _TIME_EPS:
                raise ValueError(f"snapshot time {t} outside [0, {self.t_final}]")
        object.__setattr__(self, "snapshot_times", snaps)


@dataclass
class SolveResult:
    """Snapshots plus per-accepted-step diagnostic series."""

    snapshots: list = field(default_factory=list)  # (t, Field) pairs
    diagnostics: dict = field(default_factory=dict)  # column -> np.ndarray
    initial: tuple = None  # (energy, linf, lipschitz, besov) of the data
    accepted_steps: int = 0
    rejected_steps: int = 0

    def snapshot_at(self, t):
        for ts, f in self.snapshots:
            if abs(ts - t) <= _TIME_EPS:
                return f
        raise ValueError(f"no snapshot recorded at t={t}")


def energy(f):
    """H1 energy integral of u^2 + u_x^2."""
    tab = _spectral_tables(f.grid)
    fh = np.fft.rfft(f.values)
    ux = np.fft.irfft(tab["ik"] * fh, n=f.grid.n_points)
    return float(np.sum(f.values**2 + ux**2) * f.grid.dx)


def _diagnostics_row(grid, u, cs, idx):
    tab = _spectral_tables(grid)
    u_hat = np.fft.rfft(u)
    ux = np.fft.irfft(tab["ik"] * u_hat, n=grid.n_points)
    e = float(np.sum(u**2 + ux**2) * grid.dx)
    linf = float(np.max(np.abs(u)))
    lip = linf + float(np.max(np.abs(ux)))
    bes = besov_norm(Field(grid, u), idx, cs)
    return e, linf, lip, bes


def _top_third_fraction(u):
    n = len(u)
    u_hat = np.fft.rfft(u)
    power = np.abs(u_hat) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    k = np.arange(len(power))
    return float(np.sum(power[k > n / 3])) / total


def solve(kind, u0, cfg, cs, idx):
    """Integrate the transport form from u0 up to cfg.t_final."""
    grid = u0.grid
    if cs.grid != grid:
        raise GridMismatchError("cutoff system grid differs from data grid")
    if _top_third_fraction(u0.values) > 1e-6:
        raise ResolutionError(
            "initial data carries spectral energy in the top third of the modes"
        )

    result = SolveResult()
    result.initial = _diagnostics_row(grid, u0.values, cs, idx)
    u = u0.values.copy()
    t = 0.0
    linf0 = float(np.max(np.abs(u)))
    linf_cap = 10.0 * max(linf0, 1e-300)
    targets = sorted(set(cfg.snapshot_times) | {cfg.t_final})
    if targets and abs(targets[0]) <= _TIME_EPS:
        result.snapshots.append((0.0, u0))
        targets = targets[1:]

    cols = {name: [] for name in ("t", "dt", "energy", "linf", "lipschitz", "besov")}
    dx = grid.dx

    while t < cfg.t_final - _TIME_EPS:
        if cfg.dt_mode == "fixed":
            dt = cfg.dt
        else:
            linf = float(np.max(np.abs(u)))
            speed = linf if kind is EquationKind.CAMASSA_HOLM else linf**2
            dt = cfg.c_cfl * dx / max(1.0, speed)
        next_target = targets[0]
        dt = min(dt, next_target - t)

        k1 = _rhs_values(kind, grid, u)
        k2 = _rhs_values(kind, grid, u + 0.5 * dt * k1)
        k3 = _rhs_values(kind, grid, u + 0.5 * dt * k2)
        k4 = _rhs_values(kind, grid, u + dt * k3)
        u_new = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        if not np.all(np.isfinite(u_new)):
            raise BlowUpError(
                f"non-finite values at t={t + dt:.6g}", last_good_time=t
            )
        if float(np.max(np.abs(u_new))) > linf_cap:
            raise BlowUpError(
                f"sup norm exceeded 10x the initial value at t={t + dt:.6g}",
                last_good_time=t,
            )
        if _top_third_fraction(u_new) > 1e-6:
            raise ResolutionError(
                f"unresolved spectrum (top-third energy fraction > 1e-6) at "
                f"t={t + dt:.6g}"
            )

        u = u_new
        t = next_target if abs(next_target - (t + dt)) <= _TIME_EPS else t + dt
        result.accepted_steps += 1

        e, linf, lip, bes = _diagnostics_row(grid, u, cs, idx)
        for name, val in zip(cols, (t, dt, e, linf, lip, bes)):
            cols[name].append(val)

        if abs(t - next_target) <= _TIME_EPS:
            if next_target in cfg.snapshot_times or (
                any(abs(next_target - st) <= _TIME_EPS for st in cfg.snapshot_times)
            ):
                result.snapshots.append((next_target, Field(grid, u)))
            targets = targets[1:]

    result.diagnostics = {name: np.array(vals) for name, vals in cols.items()}
    return result


def drift_remainder(kind, u0, t, result, idx, cs):
    """w = S_t(u0) - u0 - t * drift(u0) and its Besov norm at idx."""
    if t == 0.0:
        w = Field.zeros(u0.grid)
        return w, 0.0
    st = result.snapshot_at(t)
    w = st - u0 - t * drift(kind, u0)
    return w, besov_norm(w, idx, cs)


def observed_temporal_order(kind, u0, t_final, dt, cs, idx):
    """Self-convergence order from runs at dt, dt/2 against a dt/8 reference."""
    def run(step):
        cfg = SolveConfig(
            t_final=t_final, dt_mode="fixed", dt=step, snapshot_times=(t_final,)
        )
        return solve(kind, u0, cfg, cs, idx).snapshot_at(t_final).values

    ref = run(dt / 8.0)
    e1 = float(np.max(np.abs(run(dt) - ref)))
    e2 = float(np.max(np.abs(run(dt / 2.0) - ref)))
    return math.log2(e1 / e2)


def apriori_ratios(result, eps=1e-300):
    """Empirical constants for the two a-priori growth inequalities.

    Returns (c1_ratio, c2_ratio): the smallest constants C such that along the
    recorded trajectory log(||u(t)||_B / ||u(0)||_B) <= C * int_0^t ||u||_C01
    and log(||u(t)||_C01 / ||u(0)||_C01) <= C * int_0^t ||u_x||_inf.
    """
    d = result.diagnostics
    _, linf0, lip0, bes0 = result.initial
    t = np.concatenate(([0.0], d["t"]))
    bes = np.concatenate(([bes0], d["besov"]))
    lip = np.concatenate(([lip0], d["lipschitz"]))
    uxinf = lip - np.concatenate(([linf0], d["linf"]))
    # cumulative trapezoid integrals
    int_lip = np.concatenate(([0.0], np.cumsum(np.diff(t) * 0.5 * (lip[1:] + lip[:-1]))))
    int_ux = np.concatenate(([0.0], np.cumsum(np.diff(t) * 0.5 * (uxinf[1:] + uxinf[:-1]))))
    c1 = 0.0
    c2 = 0.0
    for i in range(1, len(t)):
        if int_lip[i] > eps:
            c1 = max(c1, math.log(max(bes[i] / bes[0], eps)) / int_lip[i])
        if int_ux[i] > eps:
            c2 = max(c2, math.log(max(lip[i] / lip[0], eps)) / int_ux[i])
    return c1, c2
