"""Adaptive Runge-Kutta kernels for the interaction-picture state equations.

The right-hand side is a sparse sum of oscillating couplings,

    dc[r]/dt = sum_j camp[j] * exp(i * nu[j] * t) * c[col[j]],

with the -i/hbar factor folded into ``camp``.  A Dormand-Prince 5(4) pair
does the stepping; the local error target scales with the step (error per
unit step), which keeps the accumulated norm drift of a whole run at the
order of the requested tolerance rather than tolerance-per-step times the
step count.

Two implementations share one signature: a loop kernel compiled with numba
(default) and a vectorized pure-numpy fallback.  Selection happens at import
time through the environment variable ``OAMRING_BACKEND`` ("numba" or
"numpy"); ``benchmarks/backend_bench.py`` times one against the other.

Status codes: 0 ok, 1 step-size underflow, 2 step budget exhausted.
"""

import os

import numpy as np

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
# fifth-order minus embedded fourth-order weights
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

MAX_STEPS = 50_000_000


def _integrate_numpy(c0, t0, sample_times, rows, cols, camps, nus, tol, t_total):
    """Pure-numpy reference implementation of the stepping loop."""
    dim = c0.shape[0]
    n_samples = sample_times.shape[0]
    out = np.zeros((n_samples, dim), dtype=np.complex128)

    def rhs(t, c):
        dc = np.zeros(dim, dtype=np.complex128)
        if camps.shape[0]:
            np.add.at(dc, rows, camps * np.exp(1j * nus * t) * c[cols])
        return dc

    t = t0
    y = c0.astype(np.complex128).copy()
    k1 = rhs(t, y)
    h = t_total * 1e-6
    h_floor = 16.0 * np.finfo(np.float64).eps * t_total
    isample = 0
    while isample < n_samples and sample_times[isample] <= t:
        out[isample] = y
        isample += 1

    n_steps = 0
    while isample < n_samples:
        n_steps += 1
        if n_steps > MAX_STEPS:
            return out, n_steps, 2
        if h < h_floor:
            return out, n_steps, 1
        target_t = sample_times[isample]
        hit = t + h >= target_t
        h_step = target_t - t if hit else h

        k2 = rhs(t + _C2 * h_step, y + h_step * (_A21 * k1))
        k3 = rhs(t + _C3 * h_step, y + h_step * (_A31 * k1 + _A32 * k2))
        k4 = rhs(t + _C4 * h_step, y + h_step * (_A41 * k1 + _A42 * k2 + _A43 * k3))
        k5 = rhs(t + _C5 * h_step,
                 y + h_step * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4))
        k6 = rhs(t + h_step,
                 y + h_step * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4
                               + _A65 * k5))
        y_new = y + h_step * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        k7 = rhs(t + h_step, y_new)

        err_vec = h_step * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5
                            + _E6 * k6 + _E7 * k7)
        err = np.sqrt(np.mean(np.abs(err_vec) ** 2))
        target = tol * h_step / t_total

        if err <= target:
            t = target_t if hit else t + h_step
            y = y_new
            k1 = k7
            if hit:
                while isample < n_samples and sample_times[isample] <= t:
                    out[isample] = y
                    isample += 1
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * (target / err) ** 0.25))
            h = h_step * factor
        else:
            h = h_step * max(0.1, 0.9 * (target / err) ** 0.25)
    return out, n_steps, 0


def _integrate_loops(c0, t0, sample_times, rows, cols, camps, nus, tol, t_total):
    """Loop form of the same algorithm; this is what numba compiles."""
    dim = c0.shape[0]
    n_terms = rows.shape[0]
    n_samples = sample_times.shape[0]
    out = np.zeros((n_samples, dim), dtype=np.complex128)

    k1 = np.zeros(dim, dtype=np.complex128)
    k2 = np.zeros(dim, dtype=np.complex128)
    k3 = np.zeros(dim, dtype=np.complex128)
    k4 = np.zeros(dim, dtype=np.complex128)
    k5 = np.zeros(dim, dtype=np.complex128)
    k6 = np.zeros(dim, dtype=np.complex128)
    k7 = np.zeros(dim, dtype=np.complex128)
    stage = np.zeros(dim, dtype=np.complex128)
    y = c0.astype(np.complex128).copy()
    y_new = np.zeros(dim, dtype=np.complex128)

    def _rhs(t, c, dc):
        for i in range(dim):
            dc[i] = 0.0 + 0.0j
        for j in range(n_terms):
            dc[rows[j]] += camps[j] * np.exp(1j * nus[j] * t) * c[cols[j]]

    t = t0
    _rhs(t, y, k1)
    h = t_total * 1e-6
    h_floor = 16.0 * 2.220446049250313e-16 * t_total
    isample = 0
    while isample < n_samples and sample_times[isample] <= t:
        out[isample] = y
        isample += 1

    n_steps = 0
    while isample < n_samples:
        n_steps += 1
        if n_steps > MAX_STEPS:
            return out, n_steps, 2
        if h < h_floor:
            return out, n_steps, 1
        target_t = sample_times[isample]
        hit = t + h >= target_t
        h_step = target_t - t if hit else h

        for i in range(dim):
            stage[i] = y[i] + h_step * (_A21 * k1[i])
        _rhs(t + _C2 * h_step, stage, k2)
        for i in range(dim):
            stage[i] = y[i] + h_step * (_A31 * k1[i] + _A32 * k2[i])
        _rhs(t + _C3 * h_step, stage, k3)
        for i in range(dim):
            stage[i] = y[i] + h_step * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
        _rhs(t + _C4 * h_step, stage, k4)
        for i in range(dim):
            stage[i] = y[i] + h_step * (_A51 * k1[i] + _A52 * k2[i]
                                        + _A53 * k3[i] + _A54 * k4[i])
        _rhs(t + _C5 * h_step, stage, k5)
        for i in range(dim):
            stage[i] = y[i] + h_step * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                                        + _A64 * k4[i] + _A65 * k5[i])
        _rhs(t + h_step, stage, k6)
        for i in range(dim):
            y_new[i] = y[i] + h_step * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                        + _B5 * k5[i] + _B6 * k6[i])
        _rhs(t + h_step, y_new, k7)

        err_sq = 0.0
        for i in range(dim):
            ev = h_step * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                           + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
            err_sq += ev.real * ev.real + ev.imag * ev.imag
        err = np.sqrt(err_sq / dim)
        target = tol * h_step / t_total

        if err <= target:
            t = target_t if hit else t + h_step
            for i in range(dim):
                y[i] = y_new[i]
                k1[i] = k7[i]
            if hit:
                while isample < n_samples and sample_times[isample] <= t:
                    out[isample] = y
                    isample += 1
            if err == 0.0:
                factor = 5.0
            else:
                factor = min(5.0, max(0.2, 0.9 * (target / err) ** 0.25))
            h = h_step * factor
        else:
            h = h_step * max(0.1, 0.9 * (target / err) ** 0.25)
    return out, n_steps, 0


try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    njit = None
    _HAVE_NUMBA = False

integrate_numpy = _integrate_numpy
integrate_numba = njit(cache=True)(_integrate_loops) if _HAVE_NUMBA else None

_requested = os.environ.get("OAMRING_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"OAMRING_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
if _requested == "numba" and not _HAVE_NUMBA:
    raise RuntimeError("OAMRING_BACKEND=numba requested but numba is not importable")

_USE_NUMBA = _HAVE_NUMBA and _requested != "numpy"
integrate = integrate_numba if _USE_NUMBA else integrate_numpy


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return "numba" if _USE_NUMBA else "numpy"
