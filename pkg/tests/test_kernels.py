"""Direct checks of the stepping kernels against analytic solutions."""

import os
import subprocess
import sys

import numpy as np
import pytest

from oamring._kernels import (active_backend, integrate, integrate_numba,
                              integrate_numpy)

BACKENDS = [integrate_numpy] + ([integrate_numba] if integrate_numba else [])


def single_mode_problem(kappa, nu, t_final, n_samples):
    """dc/dt = kappa * exp(i nu t) * c, solved by
    c(t) = exp(kappa (exp(i nu t) - 1) / (i nu))."""
    c0 = np.array([1.0 + 0.0j])
    rows = np.array([0], dtype=np.int64)
    cols = np.array([0], dtype=np.int64)
    camps = np.array([kappa], dtype=np.complex128)
    nus = np.array([nu], dtype=np.float64)
    samples = np.linspace(0.0, t_final, n_samples)
    exact = np.exp(kappa * (np.exp(1j * nu * samples) - 1.0) / (1j * nu))
    return (c0, 0.0, samples, rows, cols, camps, nus), exact


def two_level_problem(omega, t_final, n_samples):
    """Static off-diagonal coupling: populations sin^2/cos^2(omega t / 2)."""
    c0 = np.array([1.0, 0.0], dtype=np.complex128)
    rows = np.array([0, 1], dtype=np.int64)
    cols = np.array([1, 0], dtype=np.int64)
    camps = np.array([-1j * omega / 2, -1j * omega / 2], dtype=np.complex128)
    nus = np.zeros(2)
    samples = np.linspace(0.0, t_final, n_samples)
    return (c0, 0.0, samples, rows, cols, camps, nus), samples


@pytest.mark.parametrize("kernel", BACKENDS)
def test_oscillating_scalar_mode(kernel):
    args, exact = single_mode_problem(2.0e9 + 1.5e9j, 4.0e10, 1e-9, 41)
    out, n_steps, status = kernel(*args, 1e-10, 1e-9)
    assert status == 0
    np.testing.assert_allclose(out[:, 0], exact, rtol=0, atol=1e-9)


@pytest.mark.parametrize("kernel", BACKENDS)
def test_two_level_rotation(kernel):
    omega = 2 * np.pi * 1e9
    args, samples = two_level_problem(omega, 3e-9, 61)
    out, n_steps, status = kernel(*args, 1e-11, 3e-9)
    assert status == 0
    np.testing.assert_allclose(np.abs(out[:, 1]) ** 2,
                               np.sin(omega * samples / 2) ** 2,
                               rtol=0, atol=1e-10)
    norms = np.sum(np.abs(out) ** 2, axis=1)
    np.testing.assert_allclose(norms, 1.0, rtol=0, atol=1e-10)


@pytest.mark.parametrize("kernel", BACKENDS)
def test_error_budget_scales_with_tol(kernel):
    errs = []
    for tol in (1e-7, 1e-9, 1e-11):
        args, exact = single_mode_problem(1.0e9 + 0.5e9j, 3.0e10, 1e-9, 11)
        out, _, status = kernel(*args, tol, 1e-9)
        assert status == 0
        errs.append(float(np.max(np.abs(out[:, 0] - exact))))
    # each hundredfold tolerance cut should buy well over tenfold accuracy
    assert errs[1] < errs[0] / 10
    assert errs[2] < errs[1] / 10
    assert errs[0] < 1e-6


@pytest.mark.parametrize("kernel", BACKENDS)
def test_zero_rhs_reaches_samples_exactly(kernel):
    c0 = np.array([0.6 + 0.8j])
    empty_i = np.zeros(0, dtype=np.int64)
    empty_c = np.zeros(0, dtype=np.complex128)
    empty_f = np.zeros(0)
    samples = np.array([0.0, 1e-12, 7e-10, 1e-9])
    out, _, status = kernel(c0, 0.0, samples, empty_i, empty_i, empty_c,
                            empty_f, 1e-9, 1e-9)
    assert status == 0
    assert np.all(out[:, 0] == c0[0])


@pytest.mark.parametrize("kernel", BACKENDS)
def test_underflow_status(kernel):
    # beat far beyond anything resolvable within the requested span
    args, _ = single_mode_problem(1.0e12 + 0j, 1e30, 1.0, 3)
    out, n_steps, status = kernel(*args, 1e-10, 1.0)
    assert status == 1


def test_backends_agree():
    if integrate_numba is None:
        pytest.skip("numba unavailable")
    args, _ = single_mode_problem(2.0e9 + 1.0e9j, 5.0e10, 1e-9, 21)
    out_a, steps_a, _ = integrate_numba(*args, 1e-9, 1e-9)
    out_b, steps_b, _ = integrate_numpy(*args, 1e-9, 1e-9)
    assert steps_a == steps_b
    np.testing.assert_allclose(out_a, out_b, rtol=0, atol=1e-12)


def test_env_flag_selects_fallback():
    code = ("from oamring._kernels import active_backend, integrate, "
            "integrate_numpy; "
            "assert active_backend() == 'numpy'; "
            "assert integrate is integrate_numpy; print('ok')")
    env = dict(os.environ, OAMRING_BACKEND="numpy")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "ok"


def test_env_flag_rejects_unknown():
    env = dict(os.environ, OAMRING_BACKEND="fortran")
    proc = subprocess.run([sys.executable, "-c", "import oamring._kernels"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode != 0
    assert "OAMRING_BACKEND" in proc.stderr


def test_active_backend_reports_selection():
    assert active_backend() in ("numba", "numpy")
    if integrate_numba is not None and os.environ.get("OAMRING_BACKEND", "") != "numpy":
        assert integrate is integrate_numba
