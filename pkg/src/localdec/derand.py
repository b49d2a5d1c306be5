"""Endpoint-marker augmentation, splicing, extendability, and the
deterministic window decider built on it.

A configuration is a bare tuple of input symbols over the augmented
alphabet.  It is extendable when some member instance contains it as a
contiguous sub-assignment; under the marker convention the markers inside
a window pin the window to the ends of any containing member, so the
window content alone carries all boundary information the oracle needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .core import MARKER, PATH, Instance, Subpath, View
from .deciders import Decider, Language
from .engine import NodeRandom


@dataclass(frozen=True)
class AugmentedLanguage:
    """A base path language wrapped with the endpoint-marker convention.

    Members are paths whose endpoints carry the marker, whose interior is
    marker-free, and whose stripped input belongs to the base language.
    """

    base: Language
    marker: str = MARKER
    analytic: Callable[[tuple[str, ...]], bool] | None = None

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.base.alphabet.symbols + (self.marker,)

    def member_x(self, x: tuple[str, ...]) -> bool:
        n = len(x)
        if n == 0:
            return False
        if x[0] != self.marker or x[-1] != self.marker:
            return False
        inner = x[1:-1]
        if self.marker in inner:
            return False
        return self.base.x_member(inner)

    def member(self, inst: Instance) -> bool:
        return inst.topology == PATH and self.member_x(inst.x)


def augment(language: Language) -> AugmentedLanguage:
    """Wrap a path language with the endpoint-marker convention."""
    if language.x_member is None:
        raise TypeError(f"language {language.name!r} has no bare-input membership predicate")
    if MARKER in language.alphabet.symbols:
        raise ValueError("the base alphabet already contains the marker symbol")
    return AugmentedLanguage(base=language, analytic=language.aug_extendable)


def splice(
    left: tuple[tuple[str, ...], Subpath], right: tuple[tuple[str, ...], Subpath]
) -> tuple[tuple[str, ...], Subpath]:
    """Glue the prefix of one marked path onto the suffix of another.

    Both paths must agree on their marked middles; the result keeps the
    left path up to the end of its middle and continues with everything
    after the right path's middle.
    """
    x, s = left
    x2, s2 = right
    if not s.within(len(x)) or not s2.within(len(x2)):
        raise ValueError("marked subpath exceeds its path")
    if s.length != s2.length:
        raise ValueError("marked middles must have equal length")
    if x[s.lo - 1 : s.hi] != x2[s2.lo - 1 : s2.hi]:
        raise ValueError("marked middles disagree")
    spliced = x[: s.hi] + x2[s2.hi :]
    return spliced, Subpath(s.lo, s.hi)


@dataclass(frozen=True)
class PathTriplet:
    """Three marked paths agreeing on a middle, the third splicing the
    outer parts of the first two around it."""

    x: tuple[str, ...]
    s: Subpath
    x2: tuple[str, ...]
    s2: Subpath
    x3: tuple[str, ...]
    s3: Subpath

    def __post_init__(self) -> None:
        if not (self.s.length == self.s2.length == self.s3.length):
            raise ValueError("middles must have equal length")
        mid = self.x[self.s.lo - 1 : self.s.hi]
        if self.x2[self.s2.lo - 1 : self.s2.hi] != mid or self.x3[self.s3.lo - 1 : self.s3.hi] != mid:
            raise ValueError("middles disagree")
        if self.x3[: self.s3.lo - 1] != self.x[: self.s.lo - 1]:
            raise ValueError("left parts disagree")
        if self.x3[self.s3.hi :] != self.x2[self.s2.hi :]:
            raise ValueError("right parts disagree")


@dataclass(frozen=True)
class ClosureReport:
    """Splice-closure verdict with every counterexample found."""

    closed: bool
    lam: int
    max_n: int
    pairs_checked: int
    counterexamples: tuple[PathTriplet, ...]


def triplet_closure_check(language: Language, lam: int, max_n: int) -> ClosureReport:
    """Exhaustively splice member pairs agreeing on a length-lam middle.

    Any agreement of length > lam splices to the same result as its last
    lam columns, so only length-lam middles are enumerated.  Counting the
    closure failures of a language is the practical face of whether its
    members can be glued; locally checkable languages pass, counting-based
    ones do not.
    """
    if language.x_member is None:
        raise TypeError(f"language {language.name!r} has no bare-input membership predicate")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    members: list[tuple[str, ...]] = []
    for n in range(1, max_n + 1):
        for x in itertools.product(language.alphabet.symbols, repeat=n):
            if language.x_member(x):
                members.append(x)
    by_middle: dict[tuple[str, ...], list[tuple[tuple[str, ...], int]]] = {}
    for x in members:
        for j in range(len(x) - lam + 1):
            by_middle.setdefault(x[j : j + lam], []).append((x, j))
    counterexamples: list[PathTriplet] = []
    seen: set[tuple[tuple[str, ...], ...]] = set()
    pairs = 0
    for x in members:
        for i in range(len(x) - lam + 1):
            middle = x[i : i + lam]
            for x2, j in by_middle.get(middle, ()):
                pairs += 1
                spliced = x[: i + lam] + x2[j + lam :]
                key = (x[: i + lam], x2[j + lam :])
                if key in seen:
                    continue
                seen.add(key)
                if not language.x_member(spliced):
                    counterexamples.append(
                        PathTriplet(
                            x=x,
                            s=Subpath(i + 1, i + lam),
                            x2=x2,
                            s2=Subpath(j + 1, j + lam),
                            x3=spliced,
                            s3=Subpath(i + 1, i + lam),
                        )
                    )
    return ClosureReport(not counterexamples, lam, max_n, pairs, tuple(counterexamples))


@lru_cache(maxsize=16)
def _member_catalog(aug: AugmentedLanguage, cap: int) -> tuple[tuple[str, ...], ...]:
    """Every member configuration up to the length cap, by enumeration."""
    found = []
    for n in range(1, cap + 1):
        for x in itertools.product(aug.symbols, repeat=n):
            if aug.member_x(x):
                found.append(x)
    return tuple(found)


def _contains(host: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    if len(needle) > len(host):
        return False
    return any(host[i : i + len(needle)] == needle for i in range(len(host) - len(needle) + 1))


def is_extendable(x: tuple[str, ...], aug: AugmentedLanguage, cap: int) -> bool:
    """Brute-force extendability: does any member of length <= cap contain x?

    Independent of the analytic oracles by design; it only consults the
    membership predicate, over an exhaustively enumerated catalog.
    """
    x = tuple(x)
    if cap < len(x):
        raise ValueError("cap must be at least the configuration length")
    return any(_contains(m, x) for m in _member_catalog(aug, cap))


def default_cap(length: int, radius: int) -> int:
    """Room for two endpoint markers and padding on both sides."""
    return length + 2 * radius + 2


def _oracle_function(
    aug: AugmentedLanguage, radius: int, oracle: str
) -> Callable[[tuple[str, ...]], bool]:
    if oracle == "analytic":
        if aug.analytic is None:
            raise ValueError(f"no analytic extendability oracle for {aug.base.name!r}")
        fn = aug.analytic
    elif oracle == "brute":
        fn = lambda w: is_extendable(w, aug, default_cap(len(w), radius))
    else:
        raise ValueError("oracle must be 'analytic' or 'brute'")
    memo: dict[tuple[str, ...], bool] = {}

    def cached(window: tuple[str, ...]) -> bool:
        # dict get/set are atomic under the GIL; concurrent lookups are safe.
        hit = memo.get(window)
        if hit is None:
            hit = memo[window] = fn(window)
        return hit

    return cached


def extendability_decider(aug: AugmentedLanguage, radius: int, oracle: str = "analytic") -> Decider:
    """Deterministic decider: a marker node says yes iff it is an endpoint;
    any other node says yes iff its radius-`radius` window is extendable."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    oracle_fn = _oracle_function(aug, radius, oracle)
    marker = aug.marker

    def node_algorithm(view: View, rng: NodeRandom) -> bool:
        if view.inputs[view.center] == marker:
            return view.degrees[view.center] <= 1
        return oracle_fn(view.inputs)

    return Decider(
        name=f"extendability:{aug.base.name},radius={radius},oracle={oracle}",
        rounds=radius,
        node_algorithm=node_algorithm,
        declared_p=1.0,
        declared_q=0.0,
    )


class PathDecision:
    """Batch evaluator equivalent to running the extendability decider.

    Shares one window memo across instances, which makes exhaustive sweeps
    over full input spaces cheap.
    """

    def __init__(self, aug: AugmentedLanguage, radius: int, oracle: str = "analytic"):
        self.aug = aug
        self.radius = radius
        self._oracle = _oracle_function(aug, radius, oracle)

    def accepts(self, x: tuple[str, ...]) -> bool:
        n = len(x)
        marker = self.aug.marker
        r = self.radius
        for i, sym in enumerate(x):
            if sym == marker:
                if 0 < i < n - 1:
                    return False
            elif not self._oracle(x[max(0, i - r) : i + r + 1]):
                return False
        return True
