import itertools

import numpy as np
import pytest

from prmcodes import linalg
from prmcodes.galois import gf


def _span_size(f, a):
    # brute force: count distinct combinations of the rows
    words = set()
    for coefs in itertools.product(range(f.q), repeat=a.shape[0]):
        words.add(f.vecmat(np.array(coefs, dtype=np.uint8), a).tobytes())
    return len(words)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_rank_matches_span_size(q):
    f = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(20):
        rows, cols = rng.integers(1, 4), rng.integers(1, 5)
        a = rng.integers(0, q, (rows, cols)).astype(np.uint8)
        if rng.random() < 0.3:
            a[-1] = f.vadd(a[0], a[-1]) if rows > 1 else a[-1]
        assert q ** linalg.rank(f, a) == _span_size(f, a)


@pytest.mark.parametrize("q", [2, 5, 8])
def test_nullspace_and_solve(q):
    f = gf(q)
    rng = np.random.default_rng(10 + q)
    a = rng.integers(0, q, (4, 7)).astype(np.uint8)
    ns = linalg.nullspace(f, a)
    assert ns.shape[0] == 7 - linalg.rank(f, a)
    assert not f.matmul(a, ns.T).any()
    x = rng.integers(0, q, 7).astype(np.uint8)
    b = f.matvec(a, x)
    y = linalg.solve(f, a, b)
    assert np.array_equal(f.matvec(a, y), b)


def test_solve_inconsistent():
    f = gf(3)
    a = np.array([[1, 1], [2, 2]], dtype=np.uint8)
    assert linalg.solve(f, a, np.array([1, 1], dtype=np.uint8)) is None


def test_inverse_and_row_space():
    f = gf(16)
    rng = np.random.default_rng(0)
    while True:
        a = rng.integers(0, 16, (5, 5)).astype(np.uint8)
        if linalg.rank(f, a) == 5:
            break
    inv = linalg.inverse(f, a)
    assert np.array_equal(f.matmul(a, inv), np.eye(5, dtype=np.uint8))
    red, pivots = linalg.rref(f, a)
    assert pivots == list(range(5))
    assert linalg.same_row_space(f, a, red)
    assert not linalg.same_row_space(f, a[:4], a[1:])
