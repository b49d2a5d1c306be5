"""Secure-subpath machinery: the length bound, window scanning, coverage checks.

A window of a fixed instance is (delta, lambda)-secure when its nodes all
answer yes with probability at least 1-delta.  Member instances of length
at least ell(delta, lambda) = 4(lambda+2t)*ceil(log p / log(1-delta)) are
guaranteed an internal secure window inside every subpath of that length;
the scanner walks the candidate windows of that guarantee's covering
argument and measures each one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .core import Instance, Subpath, is_internal
from .engine import ProbabilityReport, estimate_all_yes, exact_all_yes


@dataclass(frozen=True)
class SecureParams:
    """delta, window length floor lambda (default 2t+1), decider rounds t, and p."""

    delta: float
    t: int
    p: float
    lam: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must lie in (0, 1]")
        if self.lam is not None and self.lam < 1:
            raise ValueError("lambda must be >= 1")

    @property
    def lam_effective(self) -> int:
        return 2 * self.t + 1 if self.lam is None else self.lam

    @property
    def window_radius(self) -> int:
        # ceil((lambda - 1) / 2), which collapses to floor division.
        return self.lam_effective // 2


def _log_ratio(p: float, delta: float) -> float:
    return math.log(p) / math.log(1.0 - delta)


def _ceil_stable(x: float) -> int:
    # Ceiling that returns the integer itself at (numerically) exact integers;
    # dyadic parameter choices land there on purpose.
    nearest = round(x)
    if abs(x - nearest) <= 1e-9:
        return int(nearest)
    return math.ceil(x)


def security_length(params: SecureParams) -> int:
    """4(lambda+2t) * ceil(log p / log(1-delta)); base of the logs cancels."""
    if params.p == 1.0:
        warnings.warn("p = 1 makes the log ratio zero; returning length 0")
        return 0
    ratio = _log_ratio(params.p, params.delta)
    return 4 * (params.lam_effective + 2 * params.t) * _ceil_stable(ratio)


@dataclass(frozen=True)
class SecureReport:
    """One candidate window with its measured all-yes probability."""

    window: Subpath
    probability: ProbabilityReport
    is_secure: bool
    internal: bool


def candidate_centers(region_length: int, params: SecureParams) -> range:
    """Centers (region-relative) whose windows stay internal to the region."""
    r = params.window_radius
    t = params.t
    return range(r + t + 2, region_length - r - t)


def scan_secure(
    decider,
    inst: Instance,
    params: SecureParams,
    region: Subpath | None = None,
    trials: int | None = None,
    master: int = 0,
) -> list[SecureReport]:
    """Measure every candidate window internal to the region.

    Exact window probabilities are used when trials is None (zero-round
    independent-coin deciders only).  A Monte Carlo secure verdict is
    conservative: it requires the CI lower bound to reach 1-delta.
    """
    if region is None:
        region = Subpath(1, inst.n)
    if not region.within(inst.n):
        raise ValueError("region exceeds the instance")
    centers = candidate_centers(region.length, params)
    if len(centers) == 0:
        raise ValueError(
            f"region of length {region.length} has no candidate window "
            f"(needs at least {params.lam_effective + 2 * params.t + 2} nodes)"
        )
    r = params.window_radius
    threshold = 1.0 - params.delta
    reports = []
    for i in centers:
        center = region.lo + i - 1
        window = Subpath(center - r, center + r)
        if trials is None:
            prob = exact_all_yes(decider, inst, window)
            secure = prob.value >= threshold - 1e-12
        else:
            prob = estimate_all_yes(decider, inst, window, trials=trials, master=master)
            secure = prob.ci_low >= threshold
        reports.append(SecureReport(window, prob, secure, is_internal(window, params.t, inst.n)))
    return reports


@dataclass(frozen=True)
class SecureCoverReport:
    """Outcome of scanning every length-ell subpath for a secure window."""

    ok: bool
    ell: int
    witnesses: dict[int, Subpath]  # region start -> leftmost secure window
    failure: tuple[Subpath, list[SecureReport]] | None = None


def verify_secure_cover(
    decider,
    inst: Instance,
    params: SecureParams,
    trials: int | None = None,
    master: int = 0,
    language=None,
) -> SecureCoverReport:
    """Check that every length-ell subpath contains an internal secure window.

    The guarantee holds for member instances of (p, q)-deciders; pass the
    language to assert membership up front.  On a failing region the full
    window report list is returned for diagnosis.
    """
    if language is not None and not language.member(inst):
        raise ValueError("instance is not a member of the given language")
    ell = security_length(params)
    if inst.n < ell:
        raise ValueError(f"instance has {inst.n} nodes but the length bound is {ell}")
    if ell == 0:
        return SecureCoverReport(True, 0, {})
    witnesses: dict[int, Subpath] = {}
    for start in range(1, inst.n - ell + 2):
        region = Subpath(start, start + ell - 1)
        reports = scan_secure(decider, inst, params, region, trials=trials, master=master)
        secure = [rep for rep in reports if rep.is_secure]
        if not secure:
            return SecureCoverReport(False, ell, witnesses, (region, reports))
        witnesses[start] = secure[0].window
    return SecureCoverReport(True, ell, witnesses)
