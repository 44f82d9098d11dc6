import itertools

import numpy as np
import pytest

from prmcodes.galois import gf
from prmcodes.geometry import (
    chart_points,
    enumerate_affine,
    enumerate_projective,
    format_point,
    normalize,
    parse_point,
    projective_size,
)


@pytest.mark.parametrize("m,q", [(1, 2), (2, 3), (3, 4), (2, 8)])
def test_projective_points_are_the_lines_of_the_vector_space(m, q):
    f = gf(q)
    pts = enumerate_projective(m, f)
    assert len(pts) == projective_size(m, q) == sum(q**j for j in range(m + 1))
    # oracle: classes of nonzero vectors under scaling
    classes = set()
    for v in itertools.product(range(q), repeat=m + 1):
        if any(v):
            classes.add(frozenset(tuple(f.mul(c, x) for x in v) for c in range(1, q)))
    ours = {frozenset(tuple(f.mul(c, x) for x in p) for c in range(1, q)) for p in pts}
    assert ours == classes
    # standard representatives: first nonzero coordinate is 1
    for p in pts:
        assert next(x for x in p if x) == 1


def test_chart_layout():
    f = gf(4)
    pts = enumerate_projective(3, f)
    assert [pts.chart_slice(i) for i in range(4)] == [slice(0, 64), slice(64, 80), slice(80, 84), slice(84, 85)]
    for i in range(4):
        chart = pts.coords[pts.chart_slice(i)]
        assert np.all(pts.charts[pts.chart_slice(i)] == i)
        assert np.array_equal(chart, chart_points(3, f, i).coords)
        assert np.array_equal(chart[:, i + 1 :], enumerate_affine(3 - i, f).coords)
    assert pts[7] == (1, 0, 1, 3)
    assert pts.index((0, 0, 1, 2)) == 82


def test_affine_odometer_order():
    f = gf(3)
    a = enumerate_affine(2, f)
    assert list(a)[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert enumerate_affine(0, f).coords.shape == (1, 0)


def test_normalize_and_text():
    f = gf(4)
    p = normalize((0, 2, 3, 1), f)
    assert p.chart == 1 and p.rep == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        normalize((0, 0, 0), f)
    s = format_point(p.rep, True)
    assert s == "(0:1:2:3)"
    assert parse_point(s) == ((0, 1, 2, 3), True)
    assert parse_point("(1,2)") == ((1, 2), False)
