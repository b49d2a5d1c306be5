"""Adversarial instance generators: separation pairs and the path/cycle setup.

The separation pair places a+b leaders on one path so that leaderless
segments of length ell(delta) separate them; dropping b leaders makes the
instance legal without changing anything another segment can see.  The
path/cycle setup builds one cycle and two identity-rotated paths whose
designated stretches are locally indistinguishable from the cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import EPSILON, Instance, Subpath, ball, make_cycle, make_path
from .deciders import Decider
from .engine import ProbabilityReport, estimate_all_yes, exact_all_yes
from .secure import SecureParams, scan_secure, security_length


def simplest_rational_in(lo: float, hi: float, max_denominator: int = 10**4) -> tuple[int, int]:
    """Smallest-denominator fraction a/b inside [lo, hi), via mediant descent.

    Fails loudly when the denominator cap is hit; for any non-empty
    interval a rational exists, so the cap only guards degenerate inputs.
    """
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    smallest_int = math.ceil(lo)
    if smallest_int < hi:
        return smallest_int, 1
    ln, ld = 0, 1  # lower bracket, exclusive
    hn, hd = 1, 0  # upper bracket (infinity), exclusive
    while ld + hd <= max_denominator:
        mn, md = ln + hn, ld + hd
        value = mn / md
        if value < lo:
            ln, ld = mn, md
        elif value >= hi:
            hn, hd = mn, md
        else:
            return mn, md
    raise RuntimeError(f"no fraction with denominator <= {max_denominator} found in [{lo}, {hi})")


@dataclass(frozen=True)
class SeparationPair:
    """A legal instance and its illegal sibling with extra leaders.

    The plain at-most-k construction is the b == 1 case with a == k.
    """

    legal: Instance
    illegal: Instance
    leaders: tuple[int, ...]
    segments: tuple[Subpath, ...]
    delta: float
    epsilon: float
    ell: int
    t: int
    a: int
    b: int
    dropped: tuple[int, ...]  # leader indices (1-based) absent from the legal instance

    @property
    def k(self) -> int:
        if self.b != 1:
            raise ValueError("k is only defined for the b == 1 construction")
        return self.a


def _build_pair(
    a: int,
    b: int,
    p: float,
    eps: float,
    t: int,
    delta: float | None,
    decider: Decider | None,
    drop: Sequence[int] | None,
) -> SeparationPair:
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1); p = 1 empties the delta interval")
    if eps <= 0.0:
        raise ValueError("epsilon must be positive")
    m = a + b - 1  # number of leaderless segments
    r_hat = a / b
    bound = p ** (1.0 + 1.0 / r_hat) * (1.0 - p**eps) / m
    if delta is None:
        delta = bound / 2.0
    if not 0.0 < delta < bound:
        raise ValueError(f"delta must lie in (0, {bound})")
    params = SecureParams(delta=delta, t=t, p=p)
    ell = security_length(params)
    n = m * (ell + 1) + 1
    leaders = tuple((i - 1) * (ell + 1) + 1 for i in range(1, a + b + 1))
    segments = tuple(
        Subpath((i - 1) * ell + i + 1, i * ell + i) for i in range(1, m + 1)
    )
    x_illegal = ["0"] * n
    for u in leaders:
        x_illegal[u - 1] = "1"
    illegal = make_path(n, x_illegal)
    if drop is not None:
        dropped = tuple(sorted(set(drop)))
        if len(dropped) != b or any(not 1 <= j <= a + b for j in dropped):
            raise ValueError(f"drop must name {b} distinct leader indices in 1..{a + b}")
    elif decider is not None:
        probs = _segment_probabilities(illegal, segments, params, decider)
        order = sorted(range(1, a + b + 1), key=lambda j: (-probs[j - 1], j))
        dropped = tuple(sorted(order[:b]))
    else:
        dropped = tuple(range(a + 1, a + b + 1))
    x_legal = list(x_illegal)
    for j in dropped:
        x_legal[leaders[j - 1] - 1] = "0"
    legal = make_path(n, x_legal)
    return SeparationPair(legal, illegal, leaders, segments, delta, eps, ell, t, a, b, dropped)


def _leader_blocks(
    illegal: Instance,
    segments: tuple[Subpath, ...],
    params: SecureParams,
    decider: Decider,
) -> tuple[tuple[Subpath, ...], tuple[Subpath, ...]]:
    """Split the path into leader blocks separated by secure windows.

    Inside each leaderless segment the leftmost internal secure window is
    chosen; blocks run between consecutive windows and each holds exactly
    one leader.
    """
    windows = []
    for seg in segments:
        reports = scan_secure(decider, illegal, params, seg)
        secure = [rep for rep in reports if rep.is_secure]
        if not secure:
            raise ValueError(f"segment {seg} contains no secure window for {decider.name}")
        windows.append(secure[0].window)
    blocks = []
    lo = 1
    for w in windows:
        blocks.append(Subpath(lo, w.lo - 1))
        lo = w.hi + 1
    blocks.append(Subpath(lo, illegal.n))
    return tuple(blocks), tuple(windows)


def _segment_probabilities(illegal, segments, params, decider) -> list[float]:
    blocks, _ = _leader_blocks(illegal, segments, params, decider)
    return [exact_all_yes(decider, illegal, blk).value for blk in blocks]


def amos_separation_pair(
    k: int,
    p: float,
    eps: float,
    t: int = 0,
    delta: float | None = None,
    decider: Decider | None = None,
    drop: Sequence[int] | None = None,
) -> SeparationPair:
    """k leaders versus k+1 on the minimal path n = k(ell+1)+1.

    delta defaults to half its open upper bound p^(1+1/k)(1-p^eps)/k.  The
    legal instance drops the leader whose block has maximal all-yes
    probability when a decider is supplied, else the last one.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return _build_pair(k, 1, p, eps, t, delta, decider, drop)


def promise_separation_pair(
    r: float,
    r_prime: float,
    p: float,
    eps: float,
    t: int = 0,
    delta: float | None = None,
    decider: Decider | None = None,
    max_denominator: int = 10**4,
) -> SeparationPair:
    """a leaders versus a+b for the simplest a/b in [r, r'); both sides
    respect the promise that the selected count avoids [a+1, a+b-1]."""
    a, b = simplest_rational_in(r, r_prime, max_denominator)
    return _build_pair(a, b, p, eps, t, delta, decider, None)


@dataclass(frozen=True)
class RatioDiagnostic:
    """Exact acceptance ratio of a pair against its two-sided bounds.

    The lower bound holds for every (p, q)-decider by the independence of
    leader blocks across secure windows; the upper bound follows from the
    claimed success pair.  An empty interval between them is exactly the
    impossibility the construction manufactures.
    """

    rho: float
    pr_yes_legal: float
    pr_yes_illegal: float
    block_probs: tuple[float, ...]
    max_blocks: tuple[int, ...]
    lower_bound: float
    upper_bound: float
    lower_holds: bool
    upper_holds: bool
    consistent_interval: bool
    vacuous: bool  # declared p = 1 empties the delta interval; bounds carry nothing
    contradiction: bool


def separation_ratio_check(pair: SeparationPair, decider: Decider) -> RatioDiagnostic:
    """Evaluate rho = Pr[all yes on illegal] / Pr[all yes on legal] exactly."""
    if decider.rounds != 0 or decider.yes_prob is None:
        raise TypeError("the ratio check needs a zero-round independent-coin decider")
    pr_legal = exact_all_yes(decider, pair.legal).value
    if pr_legal == 0.0:
        raise ValueError("the legal instance is never fully accepted")
    pr_illegal = exact_all_yes(decider, pair.illegal).value
    rho = pr_illegal / pr_legal
    params = SecureParams(delta=pair.delta, t=pair.t, p=decider.declared_p)
    block_probs = tuple(_segment_probabilities(pair.illegal, pair.segments, params, decider))
    order = sorted(range(1, pair.a + pair.b + 1), key=lambda j: (-block_probs[j - 1], j))
    max_blocks = tuple(sorted(order[: pair.b]))
    p = decider.declared_p
    m = pair.a + pair.b - 1
    lower = p ** (pair.b / pair.a) - m * pair.delta / p
    upper = p ** (pair.b / pair.a + pair.epsilon)
    lower_holds = rho >= lower - 1e-12
    upper_holds = rho < upper
    vacuous = p >= 1.0
    return RatioDiagnostic(
        rho=rho,
        pr_yes_legal=pr_legal,
        pr_yes_illegal=pr_illegal,
        block_probs=block_probs,
        max_blocks=max_blocks,
        lower_bound=lower,
        upper_bound=upper,
        lower_holds=lower_holds,
        upper_holds=upper_holds,
        consistent_interval=lower < upper,
        vacuous=vacuous,
        contradiction=not vacuous and lower_holds and not upper_holds,
    )


@dataclass(frozen=True)
class TreeCycleSetup:
    """One cycle and two paths sharing its local structure.

    The first path carries consecutive labels; the second rotates them so
    that the wraparound stretch of the cycle appears contiguously.  s is a
    position interval valid in both path_id1 and the cycle; s_prime is
    given by labels on the cycle and by positions in path_id2.
    """

    path_id1: Instance
    path_id2: Instance
    cycle: Instance
    s: Subpath
    s_prime_labels: tuple[int, ...]
    s_prime_in_path2: Subpath
    x_cut: int
    t: int
    n: int
    delta: float | None = None


def tree_cycle_layout(n: int, t: int) -> TreeCycleSetup:
    """Structural construction for given n and t; needs n >= 4t+4."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if n < max(4 * t + 4, 3):
        raise ValueError(f"n must be at least {max(4 * t + 4, 3)} for t = {t}")
    x_cut = n // 2
    empty = [EPSILON] * n
    ids2 = tuple(x_cut + pos if pos <= n - x_cut else pos - (n - x_cut) for pos in range(1, n + 1))
    s = Subpath(x_cut - t, x_cut + t + 1)
    s_prime_labels = tuple(range(x_cut + t + 2, n + 1)) + tuple(range(1, x_cut - t))
    return TreeCycleSetup(
        path_id1=make_path(n, empty),
        path_id2=make_path(n, empty, ids2),
        cycle=make_cycle(n, empty),
        s=s,
        s_prime_labels=s_prime_labels,
        s_prime_in_path2=Subpath(t + 2, n - t - 1),
        x_cut=x_cut,
        t=t,
        n=n,
    )


def tree_cycle_setup(p: float, q: float, t: int = 0) -> TreeCycleSetup:
    """Minimal admissible setup for a claimed (p, q) with p + q > 1.

    delta is (p+q-1)/2 and n is the smallest count above
    ceil(21*log p / log(1-delta)) that also accommodates t.
    """
    if not 0.0 < p <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError("p must lie in (0, 1] and q in [0, 1]")
    if p + q <= 1.0:
        raise ValueError("the construction needs p + q > 1")
    delta = (p + q - 1.0) / 2.0
    if p == 1.0:
        n_min = 1
    else:
        c = 21.0 * math.log(p) / math.log(1.0 - delta)
        n_min = math.ceil(c) + 1
        if t > 0:
            # t <= n * log(1-delta) / (21 log p), i.e. n >= t * c
            n_min = max(n_min, math.ceil(t * c))
    n = max(n_min, 4 * t + 4, 3)
    layout = tree_cycle_layout(n, t)
    return TreeCycleSetup(
        path_id1=layout.path_id1,
        path_id2=layout.path_id2,
        cycle=layout.cycle,
        s=layout.s,
        s_prime_labels=layout.s_prime_labels,
        s_prime_in_path2=layout.s_prime_in_path2,
        x_cut=layout.x_cut,
        t=t,
        n=n,
        delta=delta,
    )


def tree_cycle_views_equal(setup: TreeCycleSetup) -> tuple[bool, bool]:
    """Bit-for-bit view equality on s (path_id1 vs cycle) and on s_prime
    (path_id2 vs cycle)."""
    t = setup.t
    s_equal = all(
        ball(setup.path_id1, v, t) == ball(setup.cycle, v, t) for v in setup.s.nodes()
    )
    pos2 = {label: pos for pos, label in enumerate(setup.path_id2.ids, start=1)}
    sprime_equal = all(
        ball(setup.path_id2, pos2[label], t) == ball(setup.cycle, label, t)
        for label in setup.s_prime_labels
    )
    return s_equal, sprime_equal


@dataclass(frozen=True)
class TreeCycleDiagnostic:
    """Union-bound accounting of a decider on the cycle via its path runs."""

    s_path: ProbabilityReport
    s_cycle: ProbabilityReport
    s_prime_path2: ProbabilityReport
    s_prime_cycle: ProbabilityReport
    transfer_s_exact: bool  # identical counts, path_id1 vs cycle on s
    transfer_s_prime_exact: bool  # identical counts, path_id2 vs cycle on s_prime
    cycle_full: ProbabilityReport
    union_bound: float
    union_bound_hi: float
    measured_no: float
    declared_p: float
    declared_q: float
    q_consistent: bool
    pq_sum: float
    s_secure: bool | None


def tree_cycle_check(
    setup: TreeCycleSetup,
    decider: Decider,
    trials: int = 10_000,
    master: int = 0,
) -> TreeCycleDiagnostic:
    """Estimate the cycle's rejection probability through the path equalities.

    Path and cycle runs share per-node seeds, so the all-yes counts on the
    designated stretches must agree exactly; the union bound on the cycle
    then caps any claimed q.  A claim with p + q > 1 cannot stay consistent.
    """
    s_path = estimate_all_yes(decider, setup.path_id1, setup.s, trials=trials, master=master)
    s_cycle = estimate_all_yes(decider, setup.cycle, setup.s, trials=trials, master=master)
    sprime_path2 = estimate_all_yes(
        decider, setup.path_id2, setup.s_prime_in_path2, trials=trials, master=master
    )
    sprime_cycle = estimate_all_yes(
        decider, setup.cycle, setup.s_prime_labels, trials=trials, master=master
    )
    cycle_full = estimate_all_yes(decider, setup.cycle, trials=trials, master=master)
    union_bound = (1.0 - s_cycle.value) + (1.0 - sprime_cycle.value)
    union_bound_hi = (1.0 - s_cycle.ci_low) + (1.0 - sprime_cycle.ci_low)
    measured_no = 1.0 - cycle_full.value
    s_secure = None if setup.delta is None else s_path.value >= 1.0 - setup.delta
    return TreeCycleDiagnostic(
        s_path=s_path,
        s_cycle=s_cycle,
        s_prime_path2=sprime_path2,
        s_prime_cycle=sprime_cycle,
        transfer_s_exact=s_path.value == s_cycle.value,
        transfer_s_prime_exact=sprime_path2.value == sprime_cycle.value,
        cycle_full=cycle_full,
        union_bound=union_bound,
        union_bound_hi=union_bound_hi,
        measured_no=measured_no,
        declared_p=decider.declared_p,
        declared_q=decider.declared_q,
        q_consistent=decider.declared_q <= union_bound_hi + 1e-12,
        pq_sum=decider.declared_p + decider.declared_q,
        s_secure=s_secure,
    )
