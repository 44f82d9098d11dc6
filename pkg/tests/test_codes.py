import itertools

import numpy as np
import pytest

from prmcodes import linalg
from prmcodes.codes import (
    chart_syndrome_matrix,
    dual_check,
    dual_monomials,
    encode,
    lifted_syndrome_matrix,
    parameter_table,
    prm_dimension_closed_form,
    prm_params,
    prm_rank,
    random_codeword,
    rm_spec,
)
from prmcodes.galois import gf
from prmcodes.monomials import Polynomial, homogeneous_monomials, monomials_up_to


def test_table_1_values():
    got = [(r["k"], r["d"]) for r in parameter_table(1)]
    assert got == [(21, 192), (45, 144), (78, 96), (120, 48), (168, 15), (207, 12), (237, 9), (258, 6), (270, 3)]


def test_table_3_values():
    rows = parameter_table(3)
    assert [r["t0"] for r in rows] == [87, 63, 39, 15, 6, 5, 3, 2, 0]
    assert [r["t_md"] for r in rows] == [95, 71, 47, 23, 7, 5, 4, 2, 1]
    assert [r["difference"] for r in rows] == [8, 8, 8, 8, 1, 0, 1, 0, 1]


def test_table_4_values_from_the_formula():
    rows = parameter_table(4)
    assert [r["t_md"] for r in rows] == [223, 159, 95, 27, 15, 7, 3, 2]
    assert [r["t0"] for r in rows] == [191, 127, 63, 23, 11, 3, 2, 1]


def test_chart_capacity_for_nu_14_over_gf8_is_three():
    # Two weight-4 error patterns in chart 0 with equal chart-0 syndromes: split
    # the support of (1 - X1^7)(1 - X2^7), a weight-8 word of the chart code.
    spec = prm_params(3, 8, 14)
    f = spec.field
    chart = spec.points.coords[spec.points.chart_slice(0), 1:]
    support = np.nonzero((chart[:, 0] == 0) & (chart[:, 1] == 0))[0]
    assert support.size == 8
    h = chart_syndrome_matrix(spec, 0)
    word = np.zeros(chart.shape[0], dtype=np.uint8)
    word[support] = 1
    assert not f.matvec(h, word).any()
    e1 = np.zeros_like(word)
    e2 = np.zeros_like(word)
    e1[support[:4]] = 1
    e2[support[4:]] = f.neg(1)
    assert np.array_equal(f.matvec(h, e1), f.matvec(h, e2))
    assert spec.t0 == 3


@pytest.mark.parametrize("m,q", [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (2, 5)])
def test_dimension_closed_form_matches_rank(m, q):
    for nu in range(1, m * (q - 1) + 1):
        spec = prm_params(m, q, nu)
        assert prm_dimension_closed_form(m, q, nu) == prm_rank(spec) == spec.k


def _min_distance(spec):
    gen = spec.generator
    best = spec.n
    for msg in itertools.product(range(spec.q), repeat=gen.shape[0]):
        if any(msg):
            w = spec.field.vecmat(np.array(msg, dtype=np.uint8), gen)
            best = min(best, int(np.count_nonzero(w)))
    return best


@pytest.mark.parametrize("m,q", [(1, 3), (1, 4), (2, 2), (2, 3), (3, 2)])
def test_distance_by_enumeration(m, q):
    for nu in range(1, m * (q - 1) + 1):
        spec = prm_params(m, q, nu)
        if spec.q**spec.k > 300000:
            continue
        assert _min_distance(spec) == spec.d, (m, q, nu)


def test_rm_spec():
    s = rm_spec(2, 4, 3)
    assert (s.n, s.k, s.d) == (16, 10, 4)


def test_conventions_stored_separately():
    s = prm_params(2, 16, 17)
    assert (s.r_prm, s.s_prm, s.r_rm, s.s_rm) == (1, 1, 1, 2)
    assert s.i0 == 2 and s.mu == 13


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_dual_check(q):
    for m in (1, 2, 3):
        if q == 8 and m == 3:
            continue
        for nu in range(1, m * (q - 1) + 1):
            rep = dual_check(prm_params(m, q, nu))
            assert rep.ok, (m, q, nu, rep.violations[:3])
            assert rep.case == (2 if nu % (q - 1) == 0 else 1)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        prm_params(2, 4, 0)
    with pytest.raises(ValueError):
        prm_params(2, 4, 7)
    with pytest.raises(ValueError):
        encode(prm_params(2, 4, 2), [1, 2])


def test_polynomial_encoding_lands_in_the_code():
    spec = prm_params(2, 4, 4)
    f = spec.field
    rng = np.random.default_rng(0)
    monos = homogeneous_monomials(3, 4)
    poly = Polynomial(f, 3, {a: int(rng.integers(0, 4)) for a in monos}, offset=0)
    word = encode(spec, poly)
    assert linalg.rank(f, np.vstack([spec.generator, word])) == spec.k
    with pytest.raises(ValueError):
        encode(spec, Polynomial(f, 3, {(1, 0, 0): 1}, offset=0))


def test_message_encoding_is_systematic_on_pivots():
    spec = prm_params(3, 4, 5)
    msg = np.arange(spec.k) % 4
    word = encode(spec, msg)
    _, pivots = linalg.rref(spec.field, spec.generator)
    assert np.array_equal(word[pivots], msg)


def test_syndromes_vanish_on_codewords_and_localize_to_charts():
    spec = prm_params(3, 4, 5)
    f = spec.field
    rng = np.random.default_rng(1)
    c = random_codeword(spec, rng)
    for i in range(spec.m + 1):
        assert not f.matvec(lifted_syndrome_matrix(spec, i), c).any()
        assert dual_monomials(spec, i) == monomials_up_to(spec.m - i, spec.mu - 1, spec.q - 1)
    # an error outside the charts before i is seen by the B_i syndrome through chart i only
    for i in range(spec.m + 1):
        e = np.zeros(spec.n, dtype=np.uint8)
        e[spec.points.chart_slice(i).start :] = rng.integers(0, 4, spec.n - spec.points.chart_slice(i).start)
        lifted = f.matvec(lifted_syndrome_matrix(spec, i), e)
        local = f.matvec(chart_syndrome_matrix(spec, i), e[spec.points.chart_slice(i)])
        assert np.array_equal(lifted, local)
