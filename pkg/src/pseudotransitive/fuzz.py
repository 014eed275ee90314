"""Seeded fuzz comparison of the chain solver against the exact oracle."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import registry
from .core import FLAGS, verify_orientation
from .solver import SoundnessViolation, mwis, oracle_mwis


def trial_seed(seed: int, index: int) -> int:
    return random.Random(f"{seed}:{index}").getrandbits(48)


@dataclass
class TrialOutcome:
    index: int
    seed: int
    n: int
    failures: list = field(default_factory=list)
    first_type: bool = False
    value: int | None = None


def run_trial(name: str, index: int, seed: int, n_max: int, weights=(0, 100), params=None) -> TrialOutcome:
    s = trial_seed(seed, index)
    n = random.Random(s).randint(1, n_max)
    out = TrialOutcome(index, s, n)
    fam = registry.family(name)
    try:
        g, o = registry.build(registry.generate(name, n, s, params, weights))
    except Exception as exc:  # generation or build failure is a finding, not a crash
        out.failures.append(f"build:{type(exc).__name__}")
        return out
    report = verify_orientation(g, o, check_cover=True)
    out.first_type = report["first_type"].passed
    for flag in FLAGS:
        if flag == "first_type" and not fam.first_type:
            continue
        if not report[flag].passed:
            out.failures.append(f"verifier:{flag}")
    if out.failures:
        return out
    try:
        result = mwis(g, o)
    except SoundnessViolation:
        out.failures.append("soundness")
        return out
    out.value = result.value
    if sum(g.weights[v] for v in result.members) != result.value:
        out.failures.append("member_weight")
    expected, _ = oracle_mwis(g)
    if result.value != expected:
        out.failures.append("value_mismatch")
    return out


def _run(args):
    return run_trial(*args)


def fuzz_compare(name: str, trials: int, n_max: int, seed: int, weights=(0, 100), params=None, parallel: int = 0) -> dict:
    """Generate, build, verify, solve and cross-check ``trials`` instances.

    Per-trial seeds are derived from ``(seed, index)`` so results do not depend
    on ``parallel``, and trials are merged by index.
    """
    registry.family(name)
    if not 1 <= n_max <= 30:
        raise ValueError("n_max must be in 1..30")
    jobs = [(name, i, seed, n_max, weights, params) for i in range(trials)]
    if parallel and parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            outcomes = list(pool.map(_run, jobs, chunksize=max(1, trials // (4 * parallel))))
    else:
        outcomes = [_run(job) for job in jobs]
    outcomes.sort(key=lambda t: t.index)
    failures = [
        {"trial": t.index, "seed": t.seed, "n": t.n, "kind": kind}
        for t in outcomes
        for kind in t.failures
    ]
    return {
        "class": name,
        "trials": trials,
        "n_max": n_max,
        "seed": seed,
        "failures": failures,
        "first_type_passes": sum(t.first_type for t in outcomes),
    }
