"""Synchronous execution of t-round deciders and all-yes probability reports.

A node's output after t rounds is a function of its radius-t view and its
own random stream, so execution hands each node exactly that pair.  The
all-yes probability of a zero-round independent-coin decider is a product
of per-node probabilities; everything else is estimated by seeded Monte
Carlo with Wilson 99% intervals.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernel
from ._kernel._bits import advance, stream_state
from .core import Instance, Subpath, ball

# Two-sided 99% normal quantile, norm.ppf(0.995).
Z99 = 2.5758293035489004

# Slack for comparisons between exactly computed probabilities.
EXACT_TOL = 1e-12

_TRIAL_CHUNK = 1 << 15


class NodeRandom:
    """Random stream of one node in one trial.

    The stream is a pure function of (master seed, trial index, node
    identity), so trials can be evaluated in any order or in parallel
    without changing a single coin flip.
    """

    __slots__ = ("_state",)

    def __init__(self, master: int, trial: int, node_id: int):
        self._state = stream_state(master, trial, node_id)

    def uniform(self) -> float:
        self._state, u = advance(self._state)
        return u

    def bernoulli(self, p: float) -> bool:
        return self.uniform() < p


@dataclass(frozen=True)
class TrialSeed:
    """Addresses one trial; node streams derive from it by identity."""

    master: int
    trial_index: int = 0

    def stream(self, node_id: int) -> NodeRandom:
        return NodeRandom(self.master, self.trial_index, node_id)


@dataclass(frozen=True)
class OutcomeVector:
    """Per-node verdicts; True means "yes"."""

    outputs: tuple[bool, ...]

    @property
    def accepted(self) -> bool:
        return all(self.outputs)

    def no_sayers(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, out in enumerate(self.outputs) if not out)


@dataclass(frozen=True)
class ProbabilityReport:
    """Exact value or Monte Carlo estimate of an all-yes event."""

    kind: str  # "exact" | "estimated"
    value: float
    trials: int | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    event_nodes: object = "all"  # "all" | Subpath | tuple of positions
    exact_fraction: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "estimated"):
            raise ValueError("kind must be 'exact' or 'estimated'")
        if self.kind == "exact":
            if self.trials is not None or self.ci_low is not None or self.ci_high is not None:
                raise ValueError("exact reports carry no trial fields")
            if not -EXACT_TOL <= self.value <= 1 + EXACT_TOL:
                raise ValueError("probability outside [0, 1]")
        else:
            if self.trials is None or self.trials < 1:
                raise ValueError("estimated reports need trials >= 1")
            if not 0 <= self.ci_low <= self.value + 1e-15 or not self.value <= self.ci_high + 1e-15 or self.ci_high > 1:
                raise ValueError("confidence interval must satisfy 0 <= lo <= value <= hi <= 1")

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "value": self.value}
        if self.kind == "estimated":
            out["trials"] = self.trials
            out["ci"] = [self.ci_low, self.ci_high]
        out["nodes"] = _nodes_to_json(self.event_nodes)
        return out


def _nodes_to_json(nodes: object) -> object:
    if nodes == "all":
        return "all"
    if isinstance(nodes, Subpath):
        return [nodes.lo, nodes.hi]
    return {"set": sorted(nodes)}


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Wilson score interval; well behaved at the 0/1 ends."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _resolve_nodes(inst: Instance, nodes: object) -> tuple[tuple[int, ...], object]:
    """Positions of the event node set, plus its reportable form."""
    if nodes is None or nodes == "all":
        return tuple(range(1, inst.n + 1)), "all"
    if isinstance(nodes, Subpath):
        if not nodes.within(inst.n):
            raise ValueError("subpath exceeds the instance")
        return tuple(nodes.nodes()), nodes
    positions = tuple(sorted(set(int(v) for v in nodes)))
    if not positions:
        raise ValueError("empty node set")
    if positions[0] < 1 or positions[-1] > inst.n:
        raise ValueError("node positions out of range")
    return positions, positions


def _is_independent_coin(decider) -> bool:
    return decider.rounds == 0 and getattr(decider, "yes_prob", None) is not None


def run(decider, inst: Instance, seed: TrialSeed | int) -> OutcomeVector:
    """One synchronous execution; a pure function of (decider, instance, seed)."""
    if decider.rounds < 0:
        raise ValueError("decider round count must be >= 0")
    if isinstance(seed, int):
        seed = TrialSeed(seed)
    outputs = []
    for v in range(1, inst.n + 1):
        view = ball(inst, v, decider.rounds)
        rng = seed.stream(inst.id_of(v))
        outputs.append(bool(decider.node_algorithm(view, rng)))
    return OutcomeVector(tuple(outputs))


def exact_all_yes(decider, inst: Instance, nodes: object = None, rational: bool = False) -> ProbabilityReport:
    """Exact Pr[all of `nodes` say yes] for zero-round independent-coin deciders.

    With rational=True the product is carried as a Fraction, which is exact
    whenever every per-node probability is rational.
    """
    if not _is_independent_coin(decider):
        raise TypeError("exact computation needs a zero-round independent-coin decider")
    positions, reportable = _resolve_nodes(inst, nodes)
    if rational:
        frac = Fraction(1)
        for v in positions:
            frac *= Fraction(decider.yes_prob(inst.symbol(v)))
        return ProbabilityReport("exact", float(frac), event_nodes=reportable, exact_fraction=frac)
    value = 1.0
    for v in positions:
        value *= decider.yes_prob(inst.symbol(v))
    return ProbabilityReport("exact", value, event_nodes=reportable)


def _count_kernel(decider, inst, positions, trials, master, workers) -> int:
    ids = np.array([inst.id_of(v) for v in positions], dtype=np.uint64)
    thresholds = np.array([decider.yes_prob(inst.symbol(v)) for v in positions], dtype=np.float64)
    chunks = [(start, min(_TRIAL_CHUNK, trials - start)) for start in range(0, trials, _TRIAL_CHUNK)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = pool.map(lambda c: _kernel.count_all_yes(master, c[0], c[1], ids, thresholds), chunks)
            return sum(counts)
    return sum(_kernel.count_all_yes(master, start, size, ids, thresholds) for start, size in chunks)


def _count_generic(decider, inst, positions, trials, master) -> int:
    views = {v: ball(inst, v, decider.rounds) for v in positions}
    id_of = {v: inst.id_of(v) for v in positions}
    count = 0
    for trial in range(trials):
        for v in positions:
            rng = NodeRandom(master, trial, id_of[v])
            if not decider.node_algorithm(views[v], rng):
                break
        else:
            count += 1
    return count


def estimate_all_yes(
    decider,
    inst: Instance,
    nodes: object = None,
    trials: int = 100_000,
    master: int = 0,
    workers: int = 1,
) -> ProbabilityReport:
    """Monte Carlo estimate of Pr[all of `nodes` say yes].

    Deterministic given the master seed: each (trial, node) pair draws from
    its own counter-based stream, so the worker count cannot reorder
    randomness.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    positions, reportable = _resolve_nodes(inst, nodes)
    if _is_independent_coin(decider):
        count = _count_kernel(decider, inst, positions, trials, master, workers)
    else:
        count = _count_generic(decider, inst, positions, trials, master)
    lo, hi = wilson_interval(count, trials)
    return ProbabilityReport(
        "estimated", count / trials, trials=trials, ci_low=lo, ci_high=hi, event_nodes=reportable
    )


@dataclass(frozen=True)
class UnionBoundDiagnostic:
    """Union-bound estimate of Pr[some node says no] over a block partition."""

    bound: float
    multiplied: tuple[int, ...]  # report indices combined multiplicatively
    added: tuple[int, ...]  # report indices entering additively
    measured_no: float | None = None
    respected: bool | None = None


def union_bound_check(
    reports: Sequence[ProbabilityReport],
    t: int = 0,
    n: int | None = None,
    full: ProbabilityReport | None = None,
) -> UnionBoundDiagnostic:
    """Upper-bound Pr[some node says no] from per-block all-yes reports.

    Blocks whose pairwise distance is at least 2t+1 host independent events
    for a t-round decider, so a greedy left-to-right choice of such blocks
    enters the bound through its product; the remaining blocks contribute
    their no-probabilities additively.
    """
    if not reports:
        raise ValueError("at least one report required")
    blocks: list[tuple[Subpath, int]] = []
    for idx, rep in enumerate(reports):
        nodes = rep.event_nodes
        if not isinstance(nodes, Subpath):
            raise ValueError("union_bound_check needs Subpath event node sets")
        blocks.append((nodes, idx))
    blocks.sort(key=lambda b: b[0].lo)
    for (a, _), (b, _) in zip(blocks, blocks[1:]):
        if a.hi >= b.lo:
            raise ValueError("blocks must be disjoint")
    if n is not None:
        covered = sum(b.length for b, _ in blocks)
        if covered != n or blocks[0][0].lo != 1 or blocks[-1][0].hi != n:
            raise ValueError("blocks must partition the full node set")
    multiplied: list[int] = []
    added: list[int] = []
    last_hi: int | None = None
    for sp, idx in blocks:
        if last_hi is None or sp.lo - last_hi >= 2 * t + 1:
            multiplied.append(idx)
            last_hi = sp.hi
        else:
            added.append(idx)
    product = 1.0
    for idx in multiplied:
        product *= reports[idx].value
    bound = (1.0 - product) + sum(1.0 - reports[idx].value for idx in added)
    measured = None
    respected = None
    if full is not None:
        measured = 1.0 - full.value
        slack = EXACT_TOL
        if full.kind == "estimated":
            slack = (full.value - full.ci_low) + sum(
                (r.ci_high - r.value) if r.kind == "estimated" else 0.0 for r in reports
            )
        respected = measured <= bound + slack
    return UnionBoundDiagnostic(bound, tuple(multiplied), tuple(added), measured, respected)
