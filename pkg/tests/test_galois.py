import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from prmcodes.galois import FieldError, FieldSpec, default_modulus, format_field, gf, parse_field

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 1), (7, 2), (2, 8)]


def _sympy_mul(field, a, b):
    # sympy polys are high degree first; our encodings are base-p digits, low first
    def to_poly(x):
        digits = [(x // field.p**i) % field.p for i in range(field.e)]
        return [ZZ(c) for c in reversed(digits)]

    mod = [ZZ(c) for c in reversed(field.modulus)]
    prod = gf_rem(gf_mul(to_poly(a), to_poly(b), field.p, ZZ), mod, field.p, ZZ)
    return sum(int(c) * field.p**i for i, c in enumerate(reversed(prod)))


@pytest.mark.parametrize("p,e", FIELDS)
def test_mul_table_matches_polynomial_arithmetic(p, e):
    f = FieldSpec(p, e)
    rng = np.random.default_rng(1)
    pairs = rng.integers(0, f.q, size=(300, 2))
    for a, b in pairs:
        assert f.mul(int(a), int(b)) == _sympy_mul(f, int(a), int(b))


@pytest.mark.parametrize("p,e", FIELDS)
def test_default_modulus_is_irreducible(p, e):
    mod = default_modulus(p, e)
    assert gf_irreducible_p([ZZ(c) for c in reversed(mod)], p, ZZ)


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms(p, e):
    f = FieldSpec(p, e)
    q = f.q
    x = np.arange(q)
    assert np.all(f.add_table[x, 0] == x)
    assert np.all(f.mul_table[x, 1] == x)
    assert np.all(f.add_table[x, f.neg_table] == 0)
    assert np.all(f.mul_table[x[1:], f.inv_table[1:]] == 1)
    assert np.array_equal(f.add_table, f.add_table.T)
    assert np.array_equal(f.mul_table, f.mul_table.T)
    # every nonzero element is a power of the primitive element
    assert sorted(int(f.exp_table[i]) for i in range(q - 1)) == list(range(1, q))


def test_gf4_convention():
    f = gf(4)
    assert f.modulus == (1, 1, 1)
    a = 2
    assert f.add(f.mul(a, a), f.add(a, 1)) == 0
    assert f.mul(a, a) == 3


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
@settings(max_examples=200)
def test_distributive_gf16(a, b, c):
    f = gf(16)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        gf(8).inv(0)


def test_pow_and_elements():
    f = gf(9)
    for a in range(1, 9):
        assert f.pow(a, 8) == 1
        assert f.pow(a, -1) == f.inv(a)
    x = f(2)
    assert int(x * x.inverse()) == 1


def test_vector_ops_agree_with_scalars():
    f = gf(27)
    rng = np.random.default_rng(3)
    a = rng.integers(0, 27, 50).astype(np.uint8)
    b = rng.integers(0, 27, 50).astype(np.uint8)
    assert [f.add(int(x), int(y)) for x, y in zip(a, b)] == f.vadd(a, b).tolist()
    assert [f.sub(int(x), int(y)) for x, y in zip(a, b)] == f.vsub(a, b).tolist()
    assert [f.mul(int(x), int(y)) for x, y in zip(a, b)] == f.vmul(a, b).tolist()


@pytest.mark.parametrize("q", [4, 9, 25])
def test_matmul_against_scalar_loops(q):
    f = gf(q)
    rng = np.random.default_rng(q)
    a = rng.integers(0, q, (5, 7)).astype(np.uint8)
    b = rng.integers(0, q, (7, 4)).astype(np.uint8)
    ref = np.zeros((5, 4), dtype=np.uint8)
    for i in range(5):
        for j in range(4):
            acc = 0
            for k in range(7):
                acc = f.add(acc, f.mul(int(a[i, k]), int(b[k, j])))
            ref[i, j] = acc
    assert np.array_equal(f.matmul(a, b), ref)
    assert np.array_equal(f.matvec(a, b[:, 0]), ref[:, 0])
    assert np.array_equal(f.vecmat(a[0], b), ref[0])


def test_parse_field():
    f = parse_field("2^2:7")
    assert (f.p, f.e, f.modulus) == (2, 2, (1, 1, 1))
    assert parse_field("2^4") == gf(16)
    assert parse_field("5").q == 5
    assert parse_field(format_field(gf(8))) == gf(8)
    for bad in ("6", "2^9", "x", "2^2:5"):
        with pytest.raises(FieldError):
            parse_field(bad)
