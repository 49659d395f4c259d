"""NLS energy and the functional inequalities as computable ratios."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .analytic import build_trial_function
from .calculus import (Discretization, GraphFunction, edge_lengths, from_vertex_values,
                       gradient_norms, integrate_power)
from .graph_core import MetricGraph
from .honeycomb import HoneycombLattice

RATIO_NAMES = ("sobolev2d", "sobolev1d", "gn1d", "gn2d", "gn_interp")


@dataclass(slots=True)
class EnergyReport:
    kinetic: float
    potential: float
    total: float
    mass: float
    p: float


def energy(u: GraphFunction, p: float) -> EnergyReport:
    if not (2 < p <= 6):
        raise ValueError(f"nonlinearity power must be in (2, 6], got {p}")
    _, grad_l2sq = gradient_norms(u)
    kinetic = 0.5 * grad_l2sq
    potential = integrate_power(u, p) / p
    return EnergyReport(kinetic=kinetic, potential=potential, total=kinetic - potential,
                        mass=integrate_power(u, 2), p=p)


@dataclass(slots=True)
class InequalityRatio:
    name: str
    value: float
    witness: dict


def _witness_summary(u: GraphFunction) -> dict:
    grad_l1, grad_l2sq = gradient_norms(u)
    flat = np.abs(u.values)
    eid, k = np.unravel_index(int(flat.argmax()), flat.shape)
    return {
        "mass": integrate_power(u, 2),
        "linf": float(flat.max()),
        "grad_l1": grad_l1,
        "grad_l2sq": grad_l2sq,
        "argmax_edge": int(eid),
        "argmax_sample": int(k),
    }


def inequality_ratio(u: GraphFunction, name: str, p: float = 2.0) -> InequalityRatio:
    """Ratio LHS / (RHS without its constant) for one of the inequalities."""
    if name not in RATIO_NAMES:
        raise ValueError(f"unknown inequality {name!r}")
    grad_l1, grad_l2sq = gradient_norms(u)
    l2 = np.sqrt(integrate_power(u, 2))
    grad_l2 = np.sqrt(grad_l2sq)
    if name == "sobolev2d":
        if grad_l1 == 0:
            raise ZeroDivisionError("sobolev2d ratio undefined for constant functions")
        value = l2 / grad_l1
    elif name == "sobolev1d":
        if grad_l1 == 0:
            raise ZeroDivisionError("sobolev1d ratio undefined for constant functions")
        value = float(np.abs(u.values).max()) / grad_l1
    else:
        if p <= 2:
            raise ValueError(f"Gagliardo-Nirenberg ratios need p > 2, got {p}")
        lpp = integrate_power(u, p)
        if name == "gn1d":
            denom = l2 ** (p / 2 + 1) * grad_l2 ** (p / 2 - 1)
        elif name == "gn2d":
            denom = l2 ** 2 * grad_l2 ** (p - 2)
        else:  # gn_interp
            denom = grad_l2 ** 2 * l2 ** (p - 2)
        if denom == 0:
            raise ZeroDivisionError(f"{name} ratio undefined (zero denominator)")
        value = lpp / denom
    return InequalityRatio(name=name, value=float(value), witness=_witness_summary(u))


# --- randomized corpus ------------------------------------------------------

def vertex_distances(graph: MetricGraph, source: int) -> np.ndarray:
    """Arclength graph distance from source to every vertex."""
    tails = np.array([e.tail for e in graph.edges])
    heads = np.array([e.head for e in graph.edges])
    w = edge_lengths(graph)
    adj = sp.coo_matrix((w, (tails, heads)), shape=(graph.num_vertices,) * 2)
    return dijkstra((adj + adj.T).tocsr(), indices=source)


def random_corpus(lat: HoneycombLattice, count: int, seed: int,
                  samples_per_edge: int = 9,
                  gammas: tuple[float, ...] = (0.05, 0.2, 1.0)) -> list[GraphFunction]:
    """Randomized test functions: i.i.d. uniform vertex values modulated by an
    exponential envelope around the origin, piecewise linear on edges."""
    dist = vertex_distances(lat.graph, lat.origin_vertex)
    out = []
    streams = np.random.SeedSequence(seed).spawn(count)
    for idx in range(count):
        rng = np.random.default_rng(streams[idx])
        gamma = gammas[idx % len(gammas)]
        vv = rng.uniform(-1.0, 1.0, lat.graph.num_vertices) * np.exp(-gamma * dist)
        out.append(from_vertex_values(lat.graph, vv, samples_per_edge))
    return out


# --- empirical sharp constants by ratio ascent ------------------------------

class _RatioObjective:
    """Log of an inequality ratio and its DOF-space (sub)gradient."""

    def __init__(self, dz: Discretization, name: str, p: float):
        self.dz = dz
        self.name = name
        self.p = p
        self.d0 = dz.dof_of[:, :-1].ravel()
        self.d1 = dz.dof_of[:, 1:].ravel()
        self.hinv = np.repeat(1.0 / dz.h, dz.n - 1)

    def _terms(self, v: np.ndarray) -> dict:
        dz = self.dz
        diffs = v[self.d1] - v[self.d0]
        return {
            "mass": float(dz.mass_vec @ v ** 2),
            "grad_l1": float(np.abs(diffs).sum()),
            "grad_l2sq": float(diffs ** 2 @ self.hinv),
            "diffs": diffs,
        }

    def value(self, v: np.ndarray) -> float:
        t = self._terms(v)
        name, p = self.name, self.p
        if name == "sobolev2d":
            return 0.5 * np.log(t["mass"]) - np.log(t["grad_l1"])
        if name == "sobolev1d":
            return np.log(np.abs(v).max()) - np.log(t["grad_l1"])
        lpp = self.dz.lp(v, p)
        if name == "gn1d":
            return np.log(lpp) - (p / 4 + 0.5) * np.log(t["mass"]) \
                - (p / 4 - 0.5) * np.log(t["grad_l2sq"])
        if name == "gn2d":
            return np.log(lpp) - np.log(t["mass"]) - (p / 2 - 1) * np.log(t["grad_l2sq"])
        return np.log(lpp) - np.log(t["grad_l2sq"]) - (p / 2 - 1) * np.log(t["mass"])

    def grad(self, v: np.ndarray) -> np.ndarray:
        dz = self.dz
        t = self._terms(v)
        name, p = self.name, self.p
        g_mass = 2.0 * dz.mass_vec * v / t["mass"]
        s = np.sign(t["diffs"])
        g_l1 = np.zeros_like(v)
        np.add.at(g_l1, self.d1, s)
        np.add.at(g_l1, self.d0, -s)
        g_l1 /= max(t["grad_l1"], 1e-300)
        if name == "sobolev2d":
            return 0.5 * g_mass - g_l1
        if name == "sobolev1d":
            g_inf = np.zeros_like(v)
            i = int(np.abs(v).argmax())
            g_inf[i] = np.sign(v[i]) / abs(v[i])
            return g_inf - g_l1
        lpp = dz.lp(v, p)
        g_lp = p * dz.mass_vec * np.abs(v) ** (p - 2) * v / lpp
        sv = dz.stiffness @ v
        g_kin = 2.0 * sv / t["grad_l2sq"]
        if name == "gn1d":
            return g_lp - (p / 4 + 0.5) * g_mass - (p / 4 - 0.5) * g_kin
        if name == "gn2d":
            return g_lp - g_mass - (p / 2 - 1) * g_kin
        return g_lp - g_kin - (p / 2 - 1) * g_mass


def _ascent_starts(lat_or_graph, dz: Discretization, num_starts: int, seed: int):
    """Mixed start vectors: random envelopes, exponential trial profiles,
    centered bumps.  All normalized later; boundary DOFs zeroed by caller."""
    graph = lat_or_graph.graph if isinstance(lat_or_graph, HoneycombLattice) else lat_or_graph
    origin = lat_or_graph.origin_vertex if isinstance(lat_or_graph, HoneycombLattice) else 0
    dist = vertex_distances(graph, origin)
    streams = np.random.SeedSequence(seed).spawn(num_starts)
    starts = []
    for idx in range(num_starts):
        rng = np.random.default_rng(streams[idx])
        mode = idx % 3
        if mode == 0:
            gamma = (0.05, 0.2, 1.0)[(idx // 3) % 3]
            vv = rng.uniform(-1.0, 1.0, graph.num_vertices) * np.exp(-gamma * dist)
            starts.append(dz.to_dofs(from_vertex_values(graph, vv, dz.n)))
        elif mode == 1 and isinstance(lat_or_graph, HoneycombLattice):
            eps = float(rng.uniform(0.1, 0.8))
            starts.append(dz.to_dofs(build_trial_function(lat_or_graph, eps, dz.n)))
        else:
            width = float(rng.uniform(0.5, 4.0))
            vv = 1.0 / np.cosh(dist / width)
            starts.append(dz.to_dofs(from_vertex_values(graph, vv, dz.n)))
    return starts


def estimate_sharp_constant(name: str, p: float, graph, budget: int, seed: int,
                            samples_per_edge: int = 9, num_starts: int = 50,
                            dz: Discretization | None = None
                            ) -> tuple[float, GraphFunction]:
    """Certified lower bound on the discrete sharp constant of an inequality.

    Projected (sub)gradient ascent on the log-ratio from multiple starts;
    iterates vanish on the truncation boundary so that every witness extends
    by zero to the infinite grid.  Deterministic given the seed; the bound is
    monotone in the budget.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if isinstance(graph, HoneycombLattice):
        boundary = graph.boundary_vertices()
        bare = graph.graph
    else:
        bare = graph
        boundary = bare.leaves()
    if dz is None:
        dz = Discretization(bare, samples_per_edge, boundary_vertices=boundary)
    obj = _RatioObjective(dz, name, p)
    bmask = dz.boundary_dof_mask()

    def project(v):
        v = v.copy()
        v[bmask] = 0.0
        m = dz.mass(v)
        return v / np.sqrt(m) if m > 0 else v

    best_val, best_v = -np.inf, None
    for v0 in _ascent_starts(graph, dz, num_starts, seed):
        v = project(v0)
        if dz.mass(v) == 0:
            continue
        val = obj.value(v)
        tau = 0.1
        for _ in range(budget):
            g = obj.grad(v)
            g[bmask] = 0.0
            gn = np.linalg.norm(g)
            if gn < 1e-14:
                break
            accepted = False
            while tau > 1e-14:
                cand = project(v + tau * g / gn)
                cval = obj.value(cand)
                if cval > val:
                    v, val = cand, cval
                    tau *= 1.5
                    accepted = True
                    break
                tau *= 0.5
            if not accepted:
                break
        if val > best_val:
            best_val, best_v = val, v
    witness = dz.to_function(best_v)
    return float(np.exp(best_val)), witness
