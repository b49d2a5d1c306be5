# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: first-draw uniforms and all-yes trial counting.

Must stay bit-compatible with _bits.py and _fallback.py.
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * (<uint64_t>0xBF58476D1CE4E5B9)
    z = (z ^ (z >> 27)) * (<uint64_t>0x94D049BB133111EB)
    return z ^ (z >> 31)


cdef inline uint64_t _stream_state(uint64_t master, uint64_t trial, uint64_t node_id) nogil:
    cdef uint64_t h = master ^ (<uint64_t>0x6A09E667F3BCC909)
    h = _mix64(h + (<uint64_t>0x9E3779B97F4A7C15) * trial)
    return _mix64(h ^ ((<uint64_t>0xD1B54A32D192ED03) * node_id))


cdef inline double _first_unit(uint64_t master, uint64_t trial, uint64_t node_id) nogil:
    cdef uint64_t s = _stream_state(master, trial, node_id) + (<uint64_t>0x9E3779B97F4A7C15)
    return (_mix64(s) >> 11) * (1.0 / 9007199254740992.0)


def uniform01(master, trial, node_id):
    """First uniform of the (master, trial, node) stream."""
    return _first_unit(<uint64_t>master, <uint64_t>trial, <uint64_t>node_id)


def count_all_yes(master, trial_start, trials, node_ids, thresholds):
    """Number of trials in [trial_start, trial_start+trials) where every
    node's first uniform falls below its threshold."""
    cdef uint64_t[::1] ids = np.ascontiguousarray(node_ids, dtype=np.uint64)
    cdef double[::1] thr = np.ascontiguousarray(thresholds, dtype=np.float64)
    if ids.shape[0] != thr.shape[0]:
        raise ValueError("node_ids and thresholds must have equal length")
    cdef uint64_t m = <uint64_t>master
    cdef uint64_t t0 = <uint64_t>trial_start
    cdef int64_t n_trials = <int64_t>trials
    cdef Py_ssize_t n_nodes = ids.shape[0]
    cdef int64_t count = 0
    cdef int64_t t
    cdef Py_ssize_t j
    cdef bint ok
    with nogil:
        for t in range(n_trials):
            ok = 1
            for j in range(n_nodes):
                if _first_unit(m, t0 + <uint64_t>t, ids[j]) >= thr[j]:
                    ok = 0
                    break
            count += ok
    return count
