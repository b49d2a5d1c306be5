"""Path and cycle instances, identity assignments, subpaths, and radius-t views.

Nodes carry a position index (1..n, never shown to node algorithms) and a
distinct positive identity (visible).  Everything a node algorithm may read
is packaged into a View.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

EPSILON = "ε"  # empty input symbol
MARKER = "⊗"  # endpoint marker, kept outside base alphabets

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of input symbols, plus an optional endpoint marker."""

    symbols: tuple[str, ...]
    marker: str | None = None

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if not self.symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if self.marker is not None and self.marker in self.symbols:
            raise ValueError("marker must differ from every base symbol")

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols or (self.marker is not None and symbol == self.marker)


BINARY = Alphabet(("0", "1"))
EMPTY_INPUT = Alphabet((EPSILON,))


@dataclass(frozen=True)
class Subpath:
    """Closed interval of positions [lo, hi], 1-based."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1:
            raise ValueError("subpath start must be >= 1")
        if self.hi < self.lo:
            raise ValueError("subpath end must not precede its start")

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    def nodes(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and self.lo <= v <= self.hi

    def overlaps(self, other: "Subpath") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def within(self, n: int) -> bool:
        return self.hi <= n


def _normalize_symbols(x: Iterable[object]) -> tuple[str, ...]:
    return tuple(str(s) for s in x)


@dataclass(frozen=True)
class Instance:
    """A path or cycle with per-node inputs and distinct identities."""

    topology: str
    n: int
    x: tuple[str, ...]
    ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.topology not in (PATH, CYCLE):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.n < 1:
            raise ValueError("instance needs at least one node")
        if self.topology == CYCLE and self.n < 3:
            raise ValueError("cycles need at least three nodes")
        if len(self.x) != self.n:
            raise ValueError("input vector length differs from node count")
        if len(self.ids) != self.n:
            raise ValueError("identity vector length differs from node count")
        if len(set(self.ids)) != self.n:
            raise ValueError("identities must be pairwise distinct")
        for i in self.ids:
            if not isinstance(i, int) or i < 1 or i >= 1 << 63:
                raise ValueError("identities must be positive 64-bit integers")

    def symbol(self, v: int) -> str:
        return self.x[v - 1]

    def id_of(self, v: int) -> int:
        return self.ids[v - 1]

    def degree(self, v: int) -> int:
        if self.topology == CYCLE:
            return 2
        if self.n == 1:
            return 0
        return 1 if v in (1, self.n) else 2

    def ones(self) -> int:
        """Number of selected nodes (input symbol "1")."""
        return sum(1 for s in self.x if s == "1")

    def to_json_dict(self) -> dict:
        return {"topology": self.topology, "n": self.n, "x": list(self.x), "ids": list(self.ids)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Instance":
        return cls(
            topology=data["topology"],
            n=int(data["n"]),
            x=_normalize_symbols(data["x"]),
            ids=tuple(int(i) for i in data["ids"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_json_dict(json.loads(text))


def make_path(n: int, x: Sequence[object], ids: Sequence[int] | None = None) -> Instance:
    """Path on n nodes, indexed 1..n left to right. Default ids are 1..n."""
    if ids is None:
        ids = range(1, n + 1)
    return Instance(PATH, n, _normalize_symbols(x), tuple(ids))


def make_cycle(n: int, x: Sequence[object], ids: Sequence[int] | None = None) -> Instance:
    """Cycle on n >= 3 nodes; node n is additionally adjacent to node 1."""
    if ids is None:
        ids = range(1, n + 1)
    return Instance(CYCLE, n, _normalize_symbols(x), tuple(ids))


@dataclass(frozen=True)
class View:
    """The radius-r neighborhood one node sees.

    `center` is the node's offset inside the window rather than a global
    position, so identical neighborhoods compare equal across instances.
    Cut flags mark truncation by a path endpoint.
    """

    radius: int
    center: int
    inputs: tuple[str, ...]
    ids: tuple[int, ...]
    degrees: tuple[int, ...]
    left_cut: bool
    right_cut: bool

    def __post_init__(self) -> None:
        w = len(self.inputs)
        if not (len(self.ids) == len(self.degrees) == w):
            raise ValueError("view windows must have equal lengths")
        if not 0 <= self.center < w:
            raise ValueError("view center outside the window")

    @property
    def width(self) -> int:
        return len(self.inputs)


def ball(inst: Instance, v: int, r: int) -> View:
    """Exact radius-r neighborhood of node v.

    On a cycle with 2r+1 >= n the window covers each node once, centered
    as evenly as the parity allows.
    """
    if not 1 <= v <= inst.n:
        raise ValueError(f"node {v} out of range 1..{inst.n}")
    if r < 0:
        raise ValueError("radius must be non-negative")
    if inst.topology == PATH:
        lo = max(1, v - r)
        hi = min(inst.n, v + r)
        positions = range(lo, hi + 1)
        center = v - lo
        left_cut = v - r < 1
        right_cut = v + r > inst.n
    else:
        if 2 * r + 1 >= inst.n:
            left = (inst.n - 1) // 2
            right = inst.n - 1 - left
        else:
            left = right = r
        positions = [(v - 1 + off) % inst.n + 1 for off in range(-left, right + 1)]
        center = left
        left_cut = right_cut = False
    return View(
        radius=r,
        center=center,
        inputs=tuple(inst.x[p - 1] for p in positions),
        ids=tuple(inst.ids[p - 1] for p in positions),
        degrees=tuple(inst.degree(p) for p in positions),
        left_cut=left_cut,
        right_cut=right_cut,
    )


def is_internal(s: Subpath, t: int, n: int) -> bool:
    """True when every node of s keeps a full, untruncated radius-t ball."""
    return s.lo >= t + 2 and s.hi <= n - t - 1
