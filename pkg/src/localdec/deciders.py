"""Languages, node deciders, and placement in the boosting hierarchy.

A language with success pair (p, q) sits in class k when p^(1+1/k) + q
exceeds 1; the built-in at-most-k-selected deciders are declared with the
tight q so that classification lands exactly one step above k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .core import BINARY, CYCLE, EMPTY_INPUT, EPSILON, PATH, Instance, View, make_path
from .engine import EXACT_TOL, NodeRandom, estimate_all_yes, exact_all_yes

YES = True
NO = False

CLASSIFY_CAP = 10**6


@dataclass(frozen=True)
class Language:
    """Decidable set of instances, with an optional promise on inputs.

    x_member, when present, decides membership of a bare input tuple on a
    path; it must also answer the empty tuple (used when endpoint markers
    are stripped from two-node paths).
    """

    name: str
    alphabet: Alphabet
    member: Callable[[Instance], bool]
    promise: Callable[[Instance], bool] | None = None
    x_member: Callable[[tuple[str, ...]], bool] | None = None
    aug_extendable: Callable[[tuple[str, ...]], bool] | None = None

    def respects_promise(self, inst: Instance) -> bool:
        return True if self.promise is None else self.promise(inst)


@dataclass(frozen=True)
class Decider:
    """A t-round node algorithm with declared success probabilities.

    yes_prob marks zero-round independent-coin deciders: each node flips
    one coin whose yes-probability depends only on its input symbol, which
    unlocks exact probability computation and the fast trial kernel.
    """

    name: str
    rounds: int
    node_algorithm: Callable[[View, NodeRandom], bool]
    declared_p: float
    declared_q: float
    yes_prob: Callable[[str], float] | None = None


@dataclass(frozen=True)
class ThresholdClass:
    """Smallest admissible k, math.inf above all finite k, None below the line."""

    smallest_k: int | float | None


def _boost_exponent(k: int) -> float:
    # Shared by decider declarations and classification so boundary sums
    # cancel exactly in floating point.
    return 1.0 + 1.0 / k


def _check_probability(p: float, name: str = "p") -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1]")


def _count_ones(x: Iterable[str]) -> int:
    return sum(1 for s in x if s == "1")


def _require_binary(inst: Instance) -> None:
    for s in inst.x:
        if s not in ("0", "1"):
            raise ValueError(f"input symbol {s!r} outside alphabet {{0,1}}")


def amos_k_language(k: int) -> Language:
    """At most k selected nodes over inputs {0,1}."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def member(inst: Instance) -> bool:
        _require_binary(inst)
        return inst.ones() <= k

    def x_member(x: tuple[str, ...]) -> bool:
        return _count_ones(x) <= k

    return Language(
        name=f"amos:k={k}",
        alphabet=BINARY,
        member=member,
        x_member=x_member,
        aug_extendable=_amos_aug_extendable(k),
    )


def amos_promise_language(a: int, b: int) -> Language:
    """At most a selected, under the promise that the count avoids [a+1, a+b-1]."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    if math.gcd(a, b) != 1:
        raise ValueError("a and b must be co-prime")

    def member(inst: Instance) -> bool:
        _require_binary(inst)
        return inst.ones() <= a

    def promise(inst: Instance) -> bool:
        return not (a + 1 <= inst.ones() <= a + b - 1)

    def x_member(x: tuple[str, ...]) -> bool:
        return _count_ones(x) <= a

    return Language(
        name=f"amos-promise:a={a},b={b}",
        alphabet=BINARY,
        member=member,
        promise=promise,
        x_member=x_member,
        aug_extendable=_amos_aug_extendable(a),
    )


def tree_language() -> Language:
    """Acyclic instances with empty input; here: paths yes, cycles no."""

    def member(inst: Instance) -> bool:
        for s in inst.x:
            if s != EPSILON:
                raise ValueError("tree language is defined on empty inputs only")
        return inst.topology == PATH

    return Language(name="tree", alphabet=EMPTY_INPUT, member=member)


def no_two_adjacent_language() -> Language:
    """No two adjacent selected nodes; locally checkable on paths."""

    def x_member(x: tuple[str, ...]) -> bool:
        return not any(x[i] == "1" and x[i + 1] == "1" for i in range(len(x) - 1))

    def member(inst: Instance) -> bool:
        _require_binary(inst)
        if not x_member(inst.x):
            return False
        if inst.topology == CYCLE:
            return not (inst.x[-1] == "1" and inst.x[0] == "1")
        return True

    def aug_extendable(x: tuple[str, ...]) -> bool:
        return _marker_only_at_edges(x) and x_member(x)

    return Language(
        name="no-two-adjacent",
        alphabet=BINARY,
        member=member,
        x_member=x_member,
        aug_extendable=aug_extendable,
    )


def _marker_only_at_edges(x: tuple[str, ...]) -> bool:
    from .core import MARKER

    m = len(x)
    return all(s != MARKER or i in (0, m - 1) for i, s in enumerate(x))


def _amos_aug_extendable(k: int) -> Callable[[tuple[str, ...]], bool]:
    # A window extends into some marker-terminated member iff its markers
    # already sit at the window edges and its selected count fits.
    def oracle(x: tuple[str, ...]) -> bool:
        return _marker_only_at_edges(x) and _count_ones(x) <= k

    return oracle


def _coin_decider(name: str, yes_prob: Callable[[str], float], declared_p: float, declared_q: float) -> Decider:
    def node_algorithm(view: View, rng: NodeRandom) -> bool:
        pr = yes_prob(view.inputs[view.center])
        if pr >= 1.0:
            return YES
        return YES if rng.uniform() < pr else NO

    return Decider(
        name=name,
        rounds=0,
        node_algorithm=node_algorithm,
        declared_p=declared_p,
        declared_q=declared_q,
        yes_prob=yes_prob,
    )


def amos_k_decider(k: int, p: float) -> Decider:
    """Zero rounds: unselected nodes always say yes, selected ones with p^(1/k).

    Declared q is the tight infimum 1 - p^(1+1/k), attained with k+1 selected.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_probability(p)
    p_node = p ** (1.0 / k)

    def yes_prob(symbol: str) -> float:
        if symbol == "1":
            return p_node
        if symbol == "0":
            return 1.0
        raise ValueError(f"symbol {symbol!r} outside alphabet {{0,1}}")

    return _coin_decider(f"amos:k={k},p={p}", yes_prob, p, 1.0 - p ** _boost_exponent(k))


def amos_promise_decider(a: int, p: float, b: int) -> Decider:
    """Zero rounds; selected nodes say yes with p^(1/a).

    Under the promise with parameter b the declared pair is the tight
    (p, 1 - p^((a+b)/a)), attained with a+b selected.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    _check_probability(p)
    p_node = p ** (1.0 / a)

    def yes_prob(symbol: str) -> float:
        if symbol == "1":
            return p_node
        if symbol == "0":
            return 1.0
        raise ValueError(f"symbol {symbol!r} outside alphabet {{0,1}}")

    return _coin_decider(f"amos-promise:a={a},b={b},p={p}", yes_prob, p, 1.0 - p ** ((a + b) / a))


def always_yes_decider() -> Decider:
    """The trivial (1, 0)-decider: every node says yes without communicating."""
    return _coin_decider("always-yes", lambda symbol: 1.0, 1.0, 0.0)


def coin_decider(p: float, name: str | None = None) -> Decider:
    """Zero rounds, every node says yes with probability p regardless of input."""
    _check_probability(p)
    return _coin_decider(name or f"coin:p={p}", lambda symbol: p, p, 0.0)


def classify_threshold(p: float, q: float) -> ThresholdClass:
    """Smallest k with p^(1+1/k) + q > 1; math.inf when only p + q > 1; else None.

    Sums within EXACT_TOL of 1 count as not exceeding it, so tightly
    declared deciders land exactly one class above their parameter.
    """
    _check_probability(p)
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")

    def exceeds(k: int) -> bool:
        return p ** _boost_exponent(k) + q > 1.0 + EXACT_TOL

    if not exceeds(CLASSIFY_CAP):
        return ThresholdClass(math.inf if p + q > 1.0 + EXACT_TOL else None)
    lo, hi = 1, CLASSIFY_CAP
    while lo < hi:  # exceeds is monotone in k
        mid = (lo + hi) // 2
        if exceeds(mid):
            hi = mid
        else:
            lo = mid + 1
    return ThresholdClass(lo)


def threshold_margin(p: float, q: float, r: float) -> float:
    """p^(1+1/r) + q - 1 for real r > 0, the promise-class membership margin."""
    if r <= 0:
        raise ValueError("r must be positive")
    _check_probability(p)
    return p ** (1.0 + 1.0 / r) + q - 1.0


@dataclass(frozen=True)
class VerifyReport:
    """Measured success pair over an instance family, versus the declaration."""

    p_hat: float | None
    q_hat: float | None
    ok: bool
    exact: bool
    members: int
    non_members: int
    skipped_promise: int
    p_witness: Instance | None = None
    q_witness: Instance | None = None


def verify_pq(
    decider: Decider,
    language: Language,
    family: Iterable[Instance],
    trials: int | None = None,
    master: int = 0,
    tol: float = EXACT_TOL,
) -> VerifyReport:
    """Measure worst-case (p, q) of a decider over a family of instances.

    Instances violating the language promise never enter the accounting.
    Exact probabilities are used for independent-coin deciders unless a
    trial count forces Monte Carlo.
    """
    exact = trials is None
    if exact and (decider.rounds != 0 or decider.yes_prob is None):
        raise TypeError("exact verification needs a zero-round independent-coin decider; pass trials")
    p_hat = q_hat = None
    p_witness = q_witness = None
    members = non_members = skipped = 0
    for inst in family:
        if not language.respects_promise(inst):
            skipped += 1
            continue
        if exact:
            all_yes = exact_all_yes(decider, inst).value
        else:
            all_yes = estimate_all_yes(decider, inst, trials=trials, master=master).value
        if language.member(inst):
            members += 1
            if p_hat is None or all_yes < p_hat:
                p_hat, p_witness = all_yes, inst
        else:
            non_members += 1
            some_no = 1.0 - all_yes
            if q_hat is None or some_no < q_hat:
                q_hat, q_witness = some_no, inst
    ok = True
    if p_hat is not None:
        ok = ok and p_hat >= decider.declared_p - tol
    if q_hat is not None:
        ok = ok and q_hat >= decider.declared_q - tol
    return VerifyReport(p_hat, q_hat, ok, exact, members, non_members, skipped, p_witness, q_witness)


def binary_paths(max_n: int, ids: Sequence[int] | None = None) -> Iterator[Instance]:
    """Every {0,1}-input path with 1 <= n <= max_n, in lexicographic order."""
    for n in range(1, max_n + 1):
        node_ids = None if ids is None else ids[:n]
        for code in range(1 << n):
            x = tuple("1" if code >> (n - 1 - i) & 1 else "0" for i in range(n))
            yield make_path(n, x, node_ids)


def with_id_permutations(instances: Iterable[Instance], perms: Sequence[Sequence[int]]) -> Iterator[Instance]:
    """Each instance under its default ids plus the given id assignments."""
    for inst in instances:
        yield inst
        for perm in perms:
            if len(perm) >= inst.n:
                yield Instance(inst.topology, inst.n, inst.x, tuple(perm[: inst.n]))


def parse_decider(spec: str) -> Decider:
    """Build a decider from a CLI spec such as "amos:k=2,p=0.64"."""
    kind, params = _split_spec(spec)
    if kind == "always-yes":
        return always_yes_decider()
    if kind == "coin":
        return coin_decider(float(params["p"]))
    if kind == "amos":
        return amos_k_decider(int(params["k"]), float(params["p"]))
    if kind == "amos-promise":
        return amos_promise_decider(int(params["a"]), float(params["p"]), int(params["b"]))
    raise ValueError(f"unknown decider spec {spec!r}")


def parse_language(spec: str) -> Language:
    """Build a language from a CLI spec such as "amos:k=1" or "tree"."""
    kind, params = _split_spec(spec)
    if kind == "tree":
        return tree_language()
    if kind == "no-two-adjacent":
        return no_two_adjacent_language()
    if kind == "amos":
        return amos_k_language(int(params["k"]))
    if kind == "amos-promise":
        return amos_promise_language(int(params["a"]), int(params["b"]))
    raise ValueError(f"unknown language spec {spec!r}")


def _split_spec(spec: str) -> tuple[str, dict[str, str]]:
    kind, _, rest = spec.partition(":")
    params: dict[str, str] = {}
    if rest:
        for part in rest.split(","):
            key, eq, value = part.partition("=")
            if not eq:
                raise ValueError(f"malformed spec parameter {part!r}")
            params[key.strip()] = value.strip()
    return kind.strip(), params
