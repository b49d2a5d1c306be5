"""NumPy fallback for the compiled kernel, bit-identical by construction.

uint64 array arithmetic wraps modulo 2**64 exactly like the C code, and
(z >> 11) < 2**53 converts to float64 without rounding, so counts and
uniforms match the compiled backend bit for bit.
"""

from __future__ import annotations

import numpy as np

from ._bits import GOLDEN, NODE_MULT, SEED_XOR, UNIT, advance, stream_state

_CHUNK = 1 << 15

_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(GOLDEN)
_NODE_MULT = np.uint64(NODE_MULT)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def uniform01(master: int, trial: int, node_id: int) -> float:
    return advance(stream_state(master, trial, node_id))[1]


def count_all_yes(master, trial_start, trials, node_ids, thresholds) -> int:
    ids = np.ascontiguousarray(node_ids, dtype=np.uint64)
    thr = np.ascontiguousarray(thresholds, dtype=np.float64)
    if ids.shape[0] != thr.shape[0]:
        raise ValueError("node_ids and thresholds must have equal length")
    base = np.uint64((master ^ SEED_XOR) & ((1 << 64) - 1))
    count = 0
    start = int(trial_start)
    left = int(trials)
    while left > 0:
        size = min(left, _CHUNK)
        t = np.arange(start, start + size, dtype=np.uint64)
        h = _mix64(base + _GOLDEN * t)[:, None]
        state = _mix64(h ^ (_NODE_MULT * ids)[None, :]) + _GOLDEN
        u = (_mix64(state) >> _S11).astype(np.float64) * UNIT
        count += int(np.count_nonzero(np.all(u < thr, axis=1)))
        start += size
        left -= size
    return count
