"""Compiled kernels against their interpreted bodies."""

import math

import numpy as np
import pytest

from l2plan import kernels
from l2plan._jit import JIT_ENABLED


def py(fn):
    return getattr(fn, "py_func", fn)


@pytest.mark.parametrize("x", [0.0, 1.0, -1.0, math.pi, -math.pi, 7.0, -7.0, 100.0, 1e-300])
def test_wrap(x):
    y = kernels.wrap(x)
    assert -math.pi < y <= math.pi
    assert math.isclose(math.cos(y), math.cos(x), abs_tol=1e-12)
    assert math.isclose(math.sin(y), math.sin(x), abs_tol=1e-12)


def test_compiled_matches_python():
    rng = np.random.default_rng(0)
    for _ in range(200):
        px, py_ = rng.uniform(-2, 2, 2)
        w = rng.uniform(0.05, 0.9)
        th = rng.uniform(-math.pi, math.pi)
        for fn, args in [(kernels.coast_polish, (th, px, py_, w, 1.0, 12)),
                         (kernels.stop_polish, (th, 1.0, px, py_, w, 40)),
                         (kernels.phi_newton, (th, -px, -py_, w, 0.0, 0.0, 0.0, 1.0, 1.0, 100)),
                         (kernels.newton4, (np.array([th, 1.0, -th, 1.0]), px, py_, w, 0.0, 0.0, 0.0, 0.0,
                                            0.0, 1.0, 1e-12, 100))]:
            a, b = fn(*args), py(fn)(*args)
            a = np.concatenate([np.ravel(x) for x in (a if isinstance(a, tuple) else (a,))])
            b = np.concatenate([np.ravel(x) for x in (b if isinstance(b, tuple) else (b,))])
            assert np.allclose(a, b, rtol=1e-9, atol=1e-12, equal_nan=True)


def test_jit_flag_reflects_environment():
    import os
    disabled = os.environ.get("L2PLAN_DISABLE_JIT", "0").lower() in ("1", "true", "yes")
    assert JIT_ENABLED == (not disabled)
    # compiled dispatchers wrap the plain function; disabled kernels are it
    assert (kernels.stop_polish.py_func is not kernels.stop_polish) == JIT_ENABLED


def test_gauss_solve():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(4, 4))
    b = rng.normal(size=4)
    x = b.copy()
    assert kernels.gauss_solve(A.copy(), x)
    assert np.allclose(A @ x, b)
    assert not kernels.gauss_solve(np.zeros((4, 4)), b.copy())


def test_newton4_solves_symmetric_rendezvous():
    x, res, _ = kernels.newton4(np.array([0.1, 1.2, 3.0, 1.6]), -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
                                1.0, 1e-13, 100)
    assert res < 1e-13
    assert x[1] == pytest.approx(math.sqrt(2)) and x[3] == pytest.approx(math.sqrt(2))
