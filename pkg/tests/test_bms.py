import numpy as np
import pytest

from prmcodes.bms import bms_run, locator_roots
from prmcodes.codes import rm_params
from prmcodes.galois import gf
from prmcodes.geometry import enumerate_affine
from prmcodes.monomials import footprint, is_groebner, monomials_up_to, vanishing_ideal
from prmcodes.transform import dft, monomial_index


def planted(m, q, mu, weight, rng):
    """Random error of the given weight on A_m and its syndromes on degree <= mu-1."""
    f = gf(q)
    e = np.zeros(q**m, dtype=np.uint8)
    supp = rng.choice(q**m, weight, replace=False)
    e[supp] = rng.integers(1, q, weight)
    full = dft(f, e, m)
    idx = monomial_index(m, q)
    known = {h: int(full[idx[h]]) for h in monomials_up_to(m, mu - 1, q - 1)}
    return f, e, known


def capacity(m, q, mu):
    return (rm_params(m, q, m * (q - 1) - mu)[1] - 1) // 2


CASES = [(2, 4, 3), (2, 4, 4), (3, 4, 4), (2, 5, 4), (2, 8, 6), (3, 3, 3), (2, 3, 3), (1, 8, 5)]


@pytest.mark.parametrize("m,q,mu", CASES)
def test_locator_ideal_equals_vanishing_ideal(m, q, mu):
    t = capacity(m, q, mu)
    rng = np.random.default_rng(m * 100 + q * 10 + mu)
    pts = enumerate_affine(m, gf(q)).coords
    for _ in range(15):
        w = int(rng.integers(0, t + 1))
        f, e, known = planted(m, q, mu, w, rng)
        res = bms_run(known, m, f)
        assert res.ok, res.reason
        assert np.array_equal(res.error, e)
        expected = vanishing_ideal(f, pts[e != 0], m)
        assert list(res.basis) == expected
        assert is_groebner(res.basis)
        assert len(footprint(res.basis, q, m)) == w == len(res.delta)
        assert res.z == len(expected)


@pytest.mark.parametrize("m,q,mu", [(2, 4, 4), (3, 4, 4), (2, 5, 4)])
def test_python_and_compiled_engines_agree(m, q, mu):
    rng = np.random.default_rng(5)
    t = capacity(m, q, mu)
    for _ in range(20):
        w = int(rng.integers(0, t + 3))
        f, _, known = planted(m, q, mu, w, rng)
        a = bms_run(known, m, f, engine="python")
        b = bms_run(known, m, f, engine="fast")
        assert (a.ok, a.reason, a.votes, a.z) == (b.ok, b.reason, b.votes, b.z)
        if a.ok:
            assert np.array_equal(a.error, b.error)
            assert list(a.basis) == list(b.basis)


def test_deterministic():
    rng = np.random.default_rng(11)
    f, _, known = planted(3, 4, 4, 3, rng)
    runs = [bms_run(known, 3, f, engine="python", trace=True) for _ in range(2)]
    assert runs[0].trace == runs[1].trace
    assert list(runs[0].basis) == list(runs[1].basis)


def test_trace_format():
    rng = np.random.default_rng(2)
    f, _, known = planted(2, 4, 4, 2, rng)
    res = bms_run(known, 2, f, trace=True)
    assert res.trace and res.trace[0].startswith("u=00 S=")
    assert all(" F=[" in line and " delta=[" in line for line in res.trace)


def test_voting_is_needed_beyond_the_known_degree():
    # counts how often voting fires; with no voting some correctable errors are lost
    m, q, mu = 3, 4, 4
    rng = np.random.default_rng(3)
    voted = lost_without = 0
    for _ in range(40):
        f, e, known = planted(m, q, mu, 3, rng)
        res = bms_run(known, m, f)
        assert res.ok and np.array_equal(res.error, e)
        voted += res.votes > 0
        plain = bms_run(known, m, f, voting=False)
        lost_without += not (plain.ok and np.array_equal(plain.error, e))
    assert voted > 0
    assert lost_without > 0


def test_cap_rejects_larger_patterns():
    rng = np.random.default_rng(4)
    f, e, known = planted(2, 4, 4, 2, rng)
    assert bms_run(known, 2, f, cap=2).ok
    res = bms_run(known, 2, f, cap=1)
    assert not res.ok and res.error is None
    assert res.reason


def test_failure_is_a_value():
    m, q, mu = 2, 4, 3
    rng = np.random.default_rng(9)
    reasons = set()
    for _ in range(60):
        f, e, known = planted(m, q, mu, 5, rng)
        res = bms_run(known, m, f, cap=capacity(m, q, mu))
        if not res.ok:
            reasons.add(res.reason.split(" at ")[0].split(" errors")[0])
    assert reasons


def test_zero_syndrome_gives_the_unit_ideal():
    f = gf(4)
    known = {h: 0 for h in monomials_up_to(2, 3, 3)}
    res = bms_run(known, 2, f)
    assert res.ok and not res.error.any()
    assert [str(g) for g in res.basis] == ["1"]
    assert res.roots == []


def test_groebner_size_bound():
    # the locator basis of a chart of A_m has at most q^(m-1) generators
    m, q, mu = 3, 4, 4
    rng = np.random.default_rng(8)
    for _ in range(30):
        f, e, known = planted(m, q, mu, 3, rng)
        res = bms_run(known, m, f)
        assert res.z <= q ** (m - 1)


def test_bad_input():
    f = gf(4)
    with pytest.raises(ValueError):
        bms_run({(0, 5): 1}, 2, f)
    with pytest.raises(ValueError):
        bms_run({(0, 0): 7}, 2, f)
    with pytest.raises(ValueError):
        bms_run({(0, 0): 1}, 2, f, engine="gpu")


def test_locator_roots():
    f = gf(4)
    pts = [(0, 1), (2, 3)]
    basis = vanishing_ideal(f, pts, 2)
    assert sorted(locator_roots(basis, 2, f)) == pts
