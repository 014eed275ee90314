"""Scaling measurement for the chain solver on seeded instances."""

from __future__ import annotations

import statistics
import time

import numpy as np

from . import registry
from .solver import mwis

DEFAULT_SIZES = (50, 100, 200, 400)


def workload(name: str, sizes, reps: int, seed: int):
    """Deterministic part of a bench run: one instance per (size, rep)."""
    for n in sizes:
        for rep in range(reps):
            s = seed * 1_000_003 + n * 101 + rep
            g, o = registry.build(registry.generate(name, n, s))
            yield n, rep, s, g, o


def bench(name: str = "filaments", sizes=DEFAULT_SIZES, reps: int = 3, seed: int = 0, clock=time.perf_counter) -> dict:
    """Median solve time per size and the fitted log-log slope.

    Timing covers the solver only; each orientation is verified once up
    front, outside the timed region.
    """
    rows = {}
    for n, rep, s, g, o in workload(name, sizes, reps, seed):
        mwis(g, o, verify=True)
        start = clock()
        result = mwis(g, o, verify=False)
        elapsed = clock() - start
        row = rows.setdefault(n, {"n": n, "seeds": [], "values": [], "arcs_a": 0, "arcs_b": 0, "times": []})
        row["seeds"].append(s)
        row["values"].append(result.value)
        row["arcs_a"] += o.count("A")
        row["arcs_b"] += o.count("B")
        row["times"].append(elapsed)
    table = []
    for n in sizes:
        row = rows[n]
        row["median_s"] = statistics.median(row["times"])
        table.append(row)
    xs = np.log([r["n"] for r in table])
    ys = np.log([max(r["median_s"], 1e-9) for r in table])
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(table) > 1 else float("nan")
    return {"class": name, "reps": reps, "seed": seed, "rows": table, "slope": slope, "target_slope": 3.0}


def deterministic_record(result: dict) -> dict:
    """The timing-free part of a bench result (byte-stable for fixed seeds)."""
    return {
        "class": result["class"],
        "reps": result["reps"],
        "seed": result["seed"],
        "rows": [
            {k: r[k] for k in ("n", "seeds", "values", "arcs_a", "arcs_b")}
            for r in result["rows"]
        ],
    }


def format_table(result: dict) -> str:
    lines = [f"{'n':>6} {'median_s':>10} {'A-arcs':>8} {'B-arcs':>8}"]
    for r in result["rows"]:
        lines.append(
            f"{r['n']:>6} {r['median_s']:>10.4f} {r['arcs_a'] // result['reps']:>8} {r['arcs_b'] // result['reps']:>8}"
        )
    lines.append(f"log-log slope {result['slope']:.3f} (cubic target {result['target_slope']:.1f})")
    return "\n".join(lines)
