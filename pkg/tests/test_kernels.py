"""Both kernel backends against each other and against plain Fractions."""

import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from gradedflag import _pykernels, kernels
from gradedflag.scalar import Q

BACKENDS = [_pykernels] + ([kernels.compiled_backend] if kernels.compiled_backend else [])


def rand_rows(rng, r, c):
    return [[Q(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]


def frac_matmul(a, b):
    return [[sum((Fraction(a[i][t]) * Fraction(b[t][j]) for t in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


@pytest.mark.parametrize("be", BACKENDS, ids=lambda b: b.NAME)
def test_matmul_matvec(be):
    rng = random.Random(0)
    for _ in range(20):
        a, b = rand_rows(rng, 3, 4), rand_rows(rng, 4, 2)
        got = [list(map(Fraction, row)) for row in be.matmul(a, b, 2)]
        assert got == frac_matmul(a, b)
        v = [row[0] for row in b]
        assert list(map(Fraction, be.matvec(a, v))) == [r[0] for r in frac_matmul(a, [[x] for x in v])]


@pytest.mark.parametrize("be", BACKENDS, ids=lambda b: b.NAME)
def test_rref_det_agree_with_python(be):
    rng = random.Random(1)
    for _ in range(30):
        a = rand_rows(rng, 4, 4)
        if rng.random() < 0.3:
            a[3] = [x + y for x, y in zip(a[0], a[1])]
        assert be.det(a) == _pykernels.det(a)
        assert be.rref(a, 4) == _pykernels.rref(a, 4)


def test_backend_selected():
    forced = os.environ.get("GRADEDFLAG_PURE_PYTHON")
    expected = "compiled" if kernels.compiled_backend is not None and not forced else "python"
    assert kernels.BACKEND == expected


def test_pure_python_switch():
    code = "from gradedflag import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, GRADEDFLAG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == _pykernels.NAME
