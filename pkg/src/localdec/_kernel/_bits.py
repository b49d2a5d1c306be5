"""Scalar reference for the counter-based RNG shared by all backends.

Every per-node random stream is a pure function of (master seed, trial
index, node identity).  The three coordinates are folded into a 64-bit
state with the splitmix64 finalizer; draws then advance the state by the
usual golden-ratio increment.  The compiled kernel and the NumPy fallback
reproduce these exact bit patterns.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SEED_XOR = 0x6A09E667F3BCC909
NODE_MULT = 0xD1B54A32D192ED03
UNIT = 1.0 / 9007199254740992.0  # 2**-53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_state(master: int, trial: int, node_id: int) -> int:
    """Initial state of the (master, trial, node) stream."""
    h = (master ^ SEED_XOR) & MASK64
    h = mix64((h + GOLDEN * trial) & MASK64)
    return mix64(h ^ ((NODE_MULT * node_id) & MASK64))


def advance(state: int) -> tuple[int, float]:
    """One draw: returns (next state, uniform in [0, 1))."""
    state = (state + GOLDEN) & MASK64
    return state, (mix64(state) >> 11) * UNIT
