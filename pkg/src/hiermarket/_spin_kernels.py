"""Compiled inner loops for lattice sweeps.

The kernels are intentionally dumb: they consume pre-drawn site indices and
uniforms (one array of each per sweep) so the random stream is owned entirely
by the caller and a sweep can be replayed step by step in plain Python.

The running spin total is carried as an exact integer so magnetization is
bit-identical however sweeps are batched.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def sequential_sweep(spins, strategies, L, j_coupling, alpha, beta,
                     use_strategies, sites, uniforms, spin_sum):
    """One random-sequential heat-bath sweep over a flat periodic lattice.

    ``spins``/``strategies`` are flat int8 views of the L x L grid, mutated in
    place. ``sites`` and ``uniforms`` hold the N pre-drawn update locations
    and thresholds. Returns the updated integer spin total.
    """
    n = L * L
    for k in range(sites.shape[0]):
        i = sites[k]
        row = i // L
        col = i % L
        nn = (spins[((row - 1) % L) * L + col]
              + spins[((row + 1) % L) * L + col]
              + spins[row * L + (col - 1) % L]
              + spins[row * L + (col + 1) % L])
        m = spin_sum / n
        s_i = spins[i]
        if use_strategies:
            h = j_coupling * nn - alpha * strategies[i] * m
        else:
            h = j_coupling * nn - alpha * s_i * abs(m)
        p_plus = 1.0 / (1.0 + math.exp(-2.0 * beta * h))
        new_spin = 1 if uniforms[k] < p_plus else -1
        spin_sum += new_spin - s_i
        spins[i] = new_spin
        if use_strategies:
            if alpha * spins[i] * strategies[i] * spin_sum < 0.0:
                strategies[i] = -strategies[i]
    return spin_sum


@njit(cache=True, nogil=True)
def synchronous_sweep(spins, strategies, L, j_coupling, alpha, beta,
                      use_strategies, uniforms, spin_sum):
    """One parallel-update sweep: every field uses the sweep-start state."""
    n = L * L
    m = spin_sum / n
    new_spins = np.empty(n, dtype=np.int8)
    for i in range(n):
        row = i // L
        col = i % L
        nn = (spins[((row - 1) % L) * L + col]
              + spins[((row + 1) % L) * L + col]
              + spins[row * L + (col - 1) % L]
              + spins[row * L + (col + 1) % L])
        if use_strategies:
            h = j_coupling * nn - alpha * strategies[i] * m
        else:
            h = j_coupling * nn - alpha * spins[i] * abs(m)
        p_plus = 1.0 / (1.0 + math.exp(-2.0 * beta * h))
        new_spins[i] = 1 if uniforms[i] < p_plus else -1
    if use_strategies:
        # Strategy rule evaluated on the pre-sweep configuration, as the
        # synchronous reading of the switching dynamics requires.
        for i in range(n):
            if alpha * spins[i] * strategies[i] * spin_sum < 0.0:
                strategies[i] = -strategies[i]
    new_sum = 0
    for i in range(n):
        spins[i] = new_spins[i]
        new_sum += new_spins[i]
    return new_sum
