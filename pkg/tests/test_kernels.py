from __future__ import annotations

import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualcanon import kernels

from .conftest import rationals

BACKENDS = kernels.available_backends()


def rows_strategy(square=False):
    return st.integers(min_value=0, max_value=6).flatmap(
        lambda r: st.integers(min_value=1, max_value=6).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=(r if square else c), max_size=(r if square else c)), min_size=r, max_size=r)
        )
    )


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def test_cython_backend_built():
    # the extension is optional at install time; when it is missing only the fallback is exercised
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernels not built")
    assert kernels.BACKEND == "cython" or os.environ.get("DUALCANON_PURE_PYTHON")


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_det_known(name):
    k = BACKENDS[name]
    F = Fraction
    assert k.det([]) == 1
    assert k.det([[F(2), F(1)], [F(7), F(4)]]) == 1
    assert k.det([[F(0), F(1)], [F(1), F(0)]]) == -1
    assert k.det([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]) == F(1, 60)
    assert k.det([[F(1), F(2)], [F(2), F(4)]]) == 0


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_rref_known(name):
    F = Fraction
    rows, piv = BACKENDS[name].rref([[F(0), F(2), F(4)], [F(1), F(1), F(1)], [F(2), F(4), F(6)]], 3)
    assert piv == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2], [0, 0, 0]]


@given(rows_strategy(square=True))
def test_det_agrees(rows):
    results = {name: k.det([r[:] for r in rows]) for name, k in BACKENDS.items()}
    assert len(set(results.values())) == 1


@given(rows_strategy())
def test_rref_agrees(rows):
    if not rows:
        return
    ncols = len(rows[0])
    results = [k.rref([r[:] for r in rows], ncols) for k in BACKENDS.values()]
    assert all(r == results[0] for r in results)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
def test_matmul_agrees(p, q, r, data):
    a = data.draw(st.lists(st.lists(rationals, min_size=q, max_size=q), min_size=p, max_size=p))
    b = data.draw(st.lists(st.lists(rationals, min_size=r, max_size=r), min_size=q, max_size=q))
    results = [k.matmul(a, b) for k in BACKENDS.values()]
    assert all(x == results[0] for x in results)


def test_env_forces_python():
    code = "import dualcanon.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, DUALCANON_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
