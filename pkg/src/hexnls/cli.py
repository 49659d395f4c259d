"""Batch experiment front-end: `hexnls <kind> --config spec.json [overrides]`.

Each experiment kind writes plot-ready CSV/JSON artifacts plus a manifest
recording the resolved configuration, package version, and timings.  Exit
codes: 0 all embedded assertions pass, 1 assertion failure, 2 usage or I/O
error.  Given a seed, the data files are byte-identical across reruns; the
manifest (which carries timings) is the only non-deterministic artifact.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import (build_trial_function, critical_mass_from_constant, soliton_params,
                       soliton_profile, trial_kinetic_integral, trial_lp_integral,
                       trial_normalization, trial_truncation_radius)
from .calculus import gradient_norms, integrate_power
from .functionals import (energy, estimate_sharp_constant, inequality_ratio,
                          random_corpus)
from .graph_core import build_line
from .honeycomb import build_honeycomb
from .solver import (SolverConfig, bisect_critical_mass, demonstrate_unbounded,
                     make_discretization, minimize, squeezed_profile)

KINDS = ("inequalities", "trial-forms", "phase-diagram", "critical-mass",
         "unbounded-p6", "soliton-check")

DEFAULTS: dict[str, dict] = {
    "inequalities": {
        "radius": 6, "edge_length": 1.0, "seed": 0, "corpus_size": 200,
        "p_list": [3.0, 4.0, 5.0, 6.0], "ascent_starts": 12, "ascent_budget": 60,
        "slack": 1e-2,
    },
    "trial-forms": {
        "eps_list": [0.1, 0.2, 0.5], "p_list": [2.0, 3.0, 4.0],
        "mu_list": [0.5, 1.0, 2.0], "samples_per_edge": 65, "tolerance": 1e-3,
    },
    "phase-diagram": {
        "radius": 20, "edge_length": 1.0, "seed": 0,
        "p_list": [3.0, 5.0], "mu_list": [0.01, 1.0, 100.0],
    },
    "critical-mass": {
        "radius": 20, "edge_length": 1.0, "seed": 0, "p": 5.0,
        "mu_lo": 1e-3, "mu_hi": 100.0, "tolerance": 0.05,
        "ascent_starts": 12, "ascent_budget": 60,
    },
    "unbounded-p6": {
        "radius": 20, "edge_length": 1.0, "mu_list": [0.01, 10.0],
        "width_list": [2.0, 1.0, 0.5, 0.25],
    },
    "soliton-check": {
        "half_length": 30, "p": 4.0, "mu": 2.0, "seed": 0,
        "samples_per_edge": 17, "profile_tolerance": 1e-2, "energy_tolerance": 1e-3,
    },
}


class AssertionFailure(Exception):
    """An embedded experiment assertion did not hold."""


def _load_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS[args.kind])
    if args.config is not None:
        with open(args.config) as fh:
            cfg.update(json.load(fh))
    if args.p is not None:
        cfg["p"] = args.p
        cfg["p_list"] = [args.p]
    if args.mu is not None:
        cfg["mu"] = args.mu
        cfg["mu_list"] = [args.mu]
    if args.radius is not None:
        cfg["radius"] = args.radius
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


# --- experiment bodies ------------------------------------------------------

def run_inequalities(cfg: dict, outdir: Path) -> list[str]:
    lat = build_honeycomb(cfg["radius"], cfg["edge_length"])
    bound_s2 = 2.0 * math.sqrt(2.0 * cfg["edge_length"])
    slack = cfg["slack"]
    corpus = random_corpus(lat, cfg["corpus_size"], cfg["seed"])
    rows = ["name,p,ratio,bound,status"]
    failures = []

    def record(name: str, p: float, value: float, bound: float | None):
        if bound is None:
            rows.append(f"{name},{p!r},{value!r},,reported")
            return
        ok = value <= bound * (1.0 + slack)
        rows.append(f"{name},{p!r},{value!r},{bound!r},{'pass' if ok else 'fail'}")
        if not ok:
            failures.append(f"{name} ratio {value} exceeds {bound}*(1+{slack})")

    for u in corpus:
        record("sobolev2d", 2.0, inequality_ratio(u, "sobolev2d").value, bound_s2)
        for p in cfg["p_list"]:
            record("gn1d", p, inequality_ratio(u, "gn1d", p).value, 1.0)
            record("gn2d", p, inequality_ratio(u, "gn2d", p).value, None)
            record("gn_interp", p, inequality_ratio(u, "gn_interp", p).value, None)
    summary = {}
    for name, p in [("sobolev2d", 2.0)] + [("gn1d", p) for p in cfg["p_list"]] \
            + [("gn_interp", p) for p in cfg["p_list"] if 4.0 <= p <= 6.0]:
        c_hat, _ = estimate_sharp_constant(
            name, p, lat, budget=cfg["ascent_budget"], seed=cfg["seed"],
            num_starts=cfg["ascent_starts"])
        summary[f"{name}_p{p:g}"] = c_hat
        if name == "sobolev2d":
            record(name, p, c_hat, bound_s2)
        elif name == "gn1d":
            record(name, p, c_hat, 1.0)
        else:
            record(name, p, c_hat, None)
    (outdir / "inequality_ratios.csv").write_text("\n".join(rows) + "\n")
    (outdir / "sharp_constants.json").write_text(
        json.dumps(summary, indent=1, sort_keys=True) + "\n")
    return failures


def run_trial_forms(cfg: dict, outdir: Path) -> list[str]:
    tol = cfg["tolerance"]
    rows = ["eps,p,quantity,closed_form,quadrature,rel_error,status"]
    failures = []
    for eps in cfg["eps_list"]:
        lat = build_honeycomb(trial_truncation_radius(eps), 1.0)
        u = build_trial_function(lat, eps, cfg["samples_per_edge"])
        checks = [("kinetic", trial_kinetic_integral(eps), gradient_norms(u)[1])]
        for p in cfg["p_list"]:
            checks.append((f"lp_p{p:g}", trial_lp_integral(eps, p), integrate_power(u, p)))
        for quantity, exact, quad in checks:
            rel = abs(quad - exact) / abs(exact)
            ok = rel < tol
            p_tag = quantity.split("p")[-1] if quantity.startswith("lp") else ""
            rows.append(f"{eps!r},{p_tag},{quantity},{exact!r},{quad!r},{rel!r},"
                        f"{'pass' if ok else 'fail'}")
            if not ok:
                failures.append(f"eps={eps} {quantity}: rel error {rel} >= {tol}")
        for mu in cfg["mu_list"]:
            k = trial_normalization(eps, mu)
            rel = abs(k * k * integrate_power(u, 2) - mu) / mu
            ok = rel < tol
            rows.append(f"{eps!r},,normalization_mu{mu:g},{mu!r},"
                        f"{k * k * integrate_power(u, 2)!r},{rel!r},"
                        f"{'pass' if ok else 'fail'}")
            if not ok:
                failures.append(f"eps={eps} mu={mu} normalization: rel error {rel}")
    (outdir / "trial_forms.csv").write_text("\n".join(rows) + "\n")
    return failures


def render_phase_csv(points: list[dict]) -> str:
    """Plot-ready sweep table, sorted by (p, mu)."""
    rows = ["p,mu,classification,energy,runtime_ms"]
    for pt in sorted(points, key=lambda q: (q["p"], q["mu"])):
        rows.append(f"{pt['p']!r},{pt['mu']!r},{pt['classification']},"
                    f"{pt['energy']!r},{pt['runtime_ms']}")
    return "\n".join(rows) + "\n"


def run_phase_diagram(cfg: dict, outdir: Path) -> list[str]:
    lat = build_honeycomb(cfg["radius"], cfg["edge_length"])
    scfg = SolverConfig(seed=cfg["seed"])
    points = []
    for p in cfg["p_list"]:
        for mu in cfg["mu_list"]:
            t0 = time.perf_counter()
            out = minimize(lat, p, mu, scfg)
            points.append({"p": p, "mu": mu, "classification": out.classification,
                           "energy": out.final_energy,
                           "runtime_ms": int(1000 * (time.perf_counter() - t0))})
    (outdir / "phase_diagram.csv").write_text(render_phase_csv(points))
    failures = []
    for p in cfg["p_list"]:
        tags = [pt["classification"] for pt in
                sorted(points, key=lambda q: q["mu"]) if pt["p"] == p]
        if p < 4 and any(t != "GroundState" for t in tags):
            failures.append(f"p={p}: expected GroundState at every mass, got {tags}")
        if 4 <= p < 6:
            flips = sum(a != b for a, b in zip(tags, tags[1:]))
            if flips > 1:
                failures.append(f"p={p}: {flips} classification flips along mass")
        if p == 6 and "GroundState" in tags:
            failures.append(f"p={p}: ground state reported at the critical power")
    return failures


def run_critical_mass(cfg: dict, outdir: Path) -> list[str]:
    lat = build_honeycomb(cfg["radius"], cfg["edge_length"])
    scfg = SolverConfig(seed=cfg["seed"])
    p = cfg["p"]
    mid, (lo, hi) = bisect_critical_mass(lat, p, cfg["mu_lo"], cfg["mu_hi"], scfg,
                                         tol=cfg["tolerance"])
    dz = make_discretization(lat, scfg.samples_per_edge)
    c_hat, _ = estimate_sharp_constant("gn_interp", p, lat, budget=cfg["ascent_budget"],
                                       seed=cfg["seed"], num_starts=cfg["ascent_starts"],
                                       dz=dz)
    analytic_lo = critical_mass_from_constant(p, c_hat)
    doc = {"p": p, "critical_mass": mid, "bracket": [lo, hi],
           "interp_constant": c_hat, "analytic_lower_bound": analytic_lo}
    (outdir / "critical_mass.json").write_text(
        json.dumps(doc, indent=1, sort_keys=True) + "\n")
    failures = []
    if (hi - lo) > cfg["tolerance"] * 0.5 * (hi + lo):
        failures.append(f"bracket [{lo}, {hi}] wider than {cfg['tolerance']} relative")
    if lo < analytic_lo * 0.95:
        failures.append(f"bracket lower end {lo} below analytic bound {analytic_lo} - 5%")
    return failures


def run_unbounded_p6(cfg: dict, outdir: Path) -> list[str]:
    lat = build_honeycomb(cfg["radius"], cfg["edge_length"])
    rows = ["mu,width,energy"]
    failures = []
    for mu in cfg["mu_list"]:
        energies = demonstrate_unbounded(lat, mu, cfg["width_list"])
        for w, e in zip(cfg["width_list"], energies):
            rows.append(f"{mu!r},{w!r},{e!r}")
        if mu <= 0.1 and any(e < -1e-6 for e in energies):
            failures.append(f"mu={mu}: squeezed probes went below -1e-6 "
                            f"at the critical power")
        if mu >= 10 and not all(a > b for a, b in zip(energies, energies[1:])):
            failures.append(f"mu={mu}: squeezed energies not strictly decreasing")
    (outdir / "unbounded_p6.csv").write_text("\n".join(rows) + "\n")
    return failures


def run_soliton_check(cfg: dict, outdir: Path) -> list[str]:
    graph = build_line(cfg["half_length"])
    p, mu = cfg["p"], cfg["mu"]
    scfg = SolverConfig(seed=cfg["seed"], samples_per_edge=cfg["samples_per_edge"])
    out = minimize(graph, p, mu, scfg, init="soliton-bump")
    failures = []
    if out.classification != "GroundState":
        failures.append(f"expected GroundState on the line, got {out.classification}")
        doc = {"classification": out.classification, "energy": out.final_energy}
    else:
        u = out.minimizer
        params = soliton_params(p, mu)
        dz = make_discretization(graph, scfg.samples_per_edge)
        # Center the reference profile on the numerical maximizer.
        pos = np.array([[v.x, v.y] for v in graph.vertices])
        vv = np.abs(u.vertex_values())
        x_peak = pos[int(vv.argmax()), 0]
        ref = u.copy()
        for e in graph.edges:
            x = pos[e.tail, 0] + np.linspace(0, 1, scfg.samples_per_edge) \
                * (pos[e.head, 0] - pos[e.tail, 0])
            ref.values[e.id] = soliton_profile(params, x - x_peak)
        diff = u.copy()
        diff.values = np.abs(u.values) - ref.values
        l2_rel = math.sqrt(integrate_power(diff, 2) / mu)
        doc = {"classification": out.classification, "energy": out.final_energy,
               "profile_l2_rel_discrepancy": l2_rel, "residual": out.residual,
               "lagrange_multiplier": out.lagrange_multiplier}
        if l2_rel >= cfg["profile_tolerance"]:
            failures.append(f"profile discrepancy {l2_rel} >= {cfg['profile_tolerance']}")
        if out.final_energy >= 0:
            failures.append(f"line ground-state energy not negative: {out.final_energy}")
    (outdir / "soliton_check.json").write_text(
        json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return failures


RUNNERS = {
    "inequalities": run_inequalities,
    "trial-forms": run_trial_forms,
    "phase-diagram": run_phase_diagram,
    "critical-mass": run_critical_mass,
    "unbounded-p6": run_unbounded_p6,
    "soliton-check": run_soliton_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hexnls",
        description="Reproducible NLS-on-graphs experiments (CSV/JSON artifacts).")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--config", help="JSON experiment spec (defaults per kind)")
    parser.add_argument("--p", type=float, help="override the nonlinearity power")
    parser.add_argument("--mu", type=float, help="override the mass")
    parser.add_argument("--radius", type=int, help="override the truncation radius")
    parser.add_argument("--seed", type=int, help="override the random seed")
    parser.add_argument("--out", default=".", help="output directory (default: cwd)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _load_config(args)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        failures = RUNNERS[args.kind](cfg, outdir)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    manifest = {
        "kind": args.kind,
        "config": cfg,
        "version": __version__,
        "runtime_seconds": time.perf_counter() - t0,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
    if failures:
        for line in failures:
            print(f"FAIL: {line}", file=sys.stderr)
        return 1
    print(f"{args.kind}: all assertions passed; artifacts in {outdir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
