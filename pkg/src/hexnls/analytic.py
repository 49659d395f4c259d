"""Closed-form reference quantities: line solitons, the exponential trial
family on the hexagonal grid, and the critical-mass formula."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .calculus import GraphFunction
from .honeycomb import HoneycombLattice


# --- line soliton -----------------------------------------------------------

@dataclass(slots=True)
class SolitonParams:
    p: float
    mu: float
    alpha: float
    beta: float
    C_amp: float
    c_width: float


@lru_cache(maxsize=None)
def _prototype_constants(p: float) -> tuple[float, float]:
    """Amplitude C and width c of the unit-mass sech prototype.

    C is pinned by the unit-mass condition; c minimizes the 1D NLS energy of
    the sech family at fixed unit mass (stationarity), both evaluated by
    adaptive quadrature.  At p = 4 this recovers c = 1/4, C^2 = 1/8 exactly.
    """
    sech2 = quad(lambda t: 1.0 / math.cosh(t) ** 2, -40, 40)[0]           # = 2
    sech2tanh2 = quad(lambda t: (math.tanh(t) / math.cosh(t)) ** 2, -40, 40)[0]  # = 2/3
    sechp = quad(lambda t: 1.0 / math.cosh(t) ** p, -40, 40)[0]

    def energy(log_c: float) -> float:
        c = math.exp(log_c)
        C2 = c / sech2  # unit mass: C^2 * sech2 / c = 1
        kinetic = 0.5 * C2 * c * sech2tanh2
        potential = (C2 ** (p / 2.0)) * sechp / (c * p)
        return kinetic - potential

    res = minimize_scalar(energy, bounds=(-8.0, 4.0), method="bounded",
                          options={"xatol": 1e-12})
    c = math.exp(res.x)
    return math.sqrt(c / sech2), c


def soliton_params(p: float, mu: float) -> SolitonParams:
    if not (2 < p < 6):
        raise ValueError(f"soliton scaling needs 2 < p < 6, got {p}")
    if mu <= 0:
        raise ValueError(f"mass must be positive, got {mu}")
    C, c = _prototype_constants(p)
    # Mass-preserving two-parameter scaling: with a unit-mass prototype,
    # alpha = 2/(6-p) and beta = (p-2)/(6-p) give mass exactly mu.
    return SolitonParams(p=p, mu=mu, alpha=2.0 / (6.0 - p), beta=(p - 2.0) / (6.0 - p),
                         C_amp=C, c_width=c)


def soliton_profile(params: SolitonParams, x):
    x = np.asarray(x, dtype=float)
    scale = params.mu ** params.alpha
    arg = params.c_width * (params.mu ** params.beta) * x
    # 1/cosh via exp keeps the far tail at exactly 0 instead of overflowing.
    a = np.abs(arg)
    sech = np.where(a < 350.0, 2.0 * np.exp(-a) / (1.0 + np.exp(-2.0 * a)), 0.0)
    return scale * params.C_amp * sech


# --- exponential trial family on the hexagonal grid (unit edge length) ------

def trial_lp_integral(eps: float, p: float) -> float:
    """Integral of |u_eps|^p over the grid: 3(e^{p eps}+1) / (p eps (e^{p eps}-1))."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    # (e^x+1)/(e^x-1) = 1/tanh(x/2); stable as eps -> 0.
    return 3.0 / (p * eps * math.tanh(p * eps / 2.0))


def trial_kinetic_integral(eps: float) -> float:
    """Integral of |u_eps'|^2: 3 eps (e^{2 eps}+1) / (2 (e^{2 eps}-1))."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return 3.0 * eps / (2.0 * math.tanh(eps))


def trial_normalization(eps: float, mu: float) -> float:
    """Factor k_eps with k_eps^2 * integral(u_eps^2) = mu, algebraically."""
    if eps <= 0 or mu <= 0:
        raise ValueError(f"eps and mu must be positive, got {eps}, {mu}")
    return math.sqrt(2.0 * eps * math.tanh(eps) / 3.0 * mu)


def trial_energy_terms(eps: float, p: float, mu: float) -> tuple[float, float]:
    """(kinetic, potential) terms of the energy of the mass-mu trial function.

    The kinetic term collapses algebraically to mu * eps^2 / 2; the potential
    term scales like eps^{p-2} as eps -> 0.
    """
    if not (2 < p < 6):
        raise ValueError(f"p must be in (2, 6), got {p}")
    k = trial_normalization(eps, mu)
    kinetic = 0.5 * k ** 2 * trial_kinetic_integral(eps)
    potential = (k ** p) * trial_lp_integral(eps, p) / p
    return kinetic, potential


def trial_energy(eps: float, p: float, mu: float) -> float:
    kinetic, potential = trial_energy_terms(eps, p, mu)
    return kinetic - potential


def critical_mass_from_constant(p: float, C_interp: float) -> float:
    """Mass below which the interpolated GN bound forces nonnegative energy."""
    if not (4 <= p <= 6):
        raise ValueError(f"formula applies for p in [4, 6], got {p}")
    if C_interp <= 0:
        raise ValueError(f"constant must be positive, got {C_interp}")
    return (p / (2.0 * C_interp)) ** (2.0 / (p - 2.0))


# --- discretized trial function --------------------------------------------

def build_trial_function(lat: HoneycombLattice, eps: float,
                         samples_per_edge: int = 33) -> GraphFunction:
    """Sample u_eps on a truncated lattice.

    On an L-path edge the value is exp(-eps*l*(|x| + |i|)) with x the path
    coordinate; on a bridging edge between L_m and L_{m+1} on transversal
    line k it is exp(-eps*l*(t + |k| + m)) for m >= 0 (t = 0 at the L_m end)
    and exp(-eps*l*(t + |k| + |m+1|)) for m < 0 (t = 0 at the L_{m+1} end).
    The edge orientations chosen by build_honeycomb realize exactly these
    coordinates, so t is the arclength fraction tail -> head.  Closed forms
    match the infinite grid verbatim only for edge_length 1.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    E = lat.graph.num_edges
    n = samples_per_edge
    t = np.linspace(0.0, 1.0, n)
    offsets = np.empty(E)      # constant part of the exponent
    x0 = np.zeros(E)           # path coordinate at the tail (L edges only)
    is_path = np.zeros(E, dtype=bool)
    for eid, (kind, a, b) in enumerate(lat.edge_roles):
        if kind == "horizontal":
            is_path[eid] = True
            x0[eid] = 2 * b - a
            offsets[eid] = abs(a)
        elif kind == "up":
            is_path[eid] = True
            x0[eid] = 2 * b - a + 1
            offsets[eid] = abs(a)
        else:  # down: a = m, b = j, line k = 2j - m
            k = 2 * b - a
            offsets[eid] = abs(k) + (a if a >= 0 else -a - 1)
    arg = np.empty((E, n))
    arg[is_path] = np.abs(x0[is_path, None] + t[None, :]) + offsets[is_path, None]
    arg[~is_path] = t[None, :] + offsets[~is_path, None]
    vals = np.exp(-eps * lat.edge_length * arg)
    return GraphFunction(lat.graph, vals)


def trial_truncation_radius(eps: float) -> int:
    """Radius making the neglected exponential tail negligible at 1e-3 scale."""
    return max(2, math.ceil(10.0 / eps))
