import itertools

import numpy as np
import pytest

from prmcodes import decoder
from prmcodes.codes import chart_syndrome_matrix, prm_params, random_codeword
from prmcodes.decoder import chart_syndrome, decode_chart, decode_prm, groebner_bound_ok, mdd_decode
from prmcodes.galois import gf
from prmcodes.transform import dft, spectrum_dict


def random_error(spec, weight, rng, charts=None):
    idx = np.arange(spec.n)
    if charts is not None:
        idx = np.concatenate([np.arange(spec.n)[spec.points.chart_slice(i)] for i in charts])
    e = np.zeros(spec.n, dtype=np.uint8)
    supp = rng.choice(idx, weight, replace=False)
    e[supp] = rng.integers(1, spec.q, weight)
    return e


def test_decodes_up_to_t0():
    spec = prm_params(3, 4, 5)
    rng = np.random.default_rng(0)
    for _ in range(100):
        c = random_codeword(spec, rng)
        e = random_error(spec, int(rng.integers(0, spec.t0 + 1)), rng)
        out = decode_prm(spec, spec.field.vadd(c, e), bounded=True)
        assert out.ok and np.array_equal(out.codeword, c) and np.array_equal(out.error, e)
        assert groebner_bound_ok(spec, out)


def test_outcome_depends_only_on_the_error():
    spec = prm_params(2, 4, 3)
    f = spec.field
    rng = np.random.default_rng(1)
    for _ in range(30):
        e = random_error(spec, int(rng.integers(0, 8)), rng)
        c1, c2 = random_codeword(spec, rng), random_codeword(spec, rng)
        o1 = decode_prm(spec, f.vadd(c1, e))
        o2 = decode_prm(spec, f.vadd(c2, e))
        assert np.array_equal(f.vsub(o1.codeword, c1), f.vsub(o2.codeword, c2))
        assert o1.status == o2.status


def test_later_charts_take_any_pattern():
    spec = prm_params(3, 4, 5)
    assert spec.i0 == 2
    rng = np.random.default_rng(2)
    c = random_codeword(spec, rng)
    e = random_error(spec, 3, rng, charts=[0]) | random_error(spec, 3, rng, charts=[1])
    e[80:] = rng.integers(1, 4, 5)
    out = decode_prm(spec, spec.field.vadd(c, e), bounded=True)
    assert out.ok and np.array_equal(out.error, e)
    assert [ch.mode for ch in out.charts] == ["bms", "bms", "idft_only", "idft_only"]


def test_literal_syndrome_matches_chart_sum_after_earlier_charts_are_cleared():
    spec = prm_params(3, 4, 5)
    f = spec.field
    rng = np.random.default_rng(3)
    e = rng.integers(0, 4, spec.n).astype(np.uint8)
    for i in range(spec.m + 1):
        e_i = e.copy()
        e_i[: spec.points.chart_slice(i).start] = 0
        lit = chart_syndrome(spec, i, e_i)
        local = f.matvec(chart_syndrome_matrix(spec, i), e_i[spec.points.chart_slice(i)])
        assert list(lit.values()) == local.tolist()


def test_chart_modes():
    f = gf(4)
    rng = np.random.default_rng(4)
    e = np.zeros(16, dtype=np.uint8)
    e[[3, 9]] = [1, 2]
    full = spectrum_dict(f, dft(f, e, 2), 2)
    out = decode_chart(f, 2, full, mode="idft_only")
    assert out.ok and np.array_equal(out.error, e)
    with pytest.raises(ValueError):
        decode_chart(f, 2, {(0, 0): 1}, mode="idft_only")
    with pytest.raises(ValueError):
        decode_chart(f, 2, full, mode="guess")
    part = {h: v for h, v in full.items() if sum(h) <= 3}
    out = decode_chart(f, 2, part)
    assert out.ok and np.array_equal(out.error, e) and out.z == len(out.basis)


def test_failure_is_reported_and_later_charts_still_run():
    spec = prm_params(3, 4, 5)
    rng = np.random.default_rng(5)
    seen = False
    for _ in range(200):
        e = random_error(spec, 6, rng, charts=[0])
        e[84] = 1
        out = decode_prm(spec, e, bounded=True)
        if not out.ok:
            seen = True
            assert out.failures[0][0] == 0
            assert out.status.startswith("failure(chart 0:")
            assert len(out.charts) == spec.m + 1
            assert out.error[84] == 1
            d = out.as_dict()
            assert d["status"] == "failure" and d["failures"][0]["chart"] == 0
            break
    assert seen


def test_input_validation():
    spec = prm_params(2, 4, 3)
    with pytest.raises(ValueError):
        decode_prm(spec, np.zeros(5, dtype=np.uint8))
    with pytest.raises(ValueError):
        decode_prm(spec, np.full(spec.n, 9, dtype=np.uint8))


def _nearest_by_enumeration(spec, r):
    best, best_d = None, spec.n + 1
    for msg in itertools.product(range(spec.q), repeat=spec.k):
        w = spec.field.vecmat(np.array(msg, dtype=np.uint8), spec.generator)
        d = int(np.count_nonzero(w != r))
        if d < best_d:
            best, best_d = w, d
    return best_d


def test_mdd_finds_a_nearest_codeword():
    spec = prm_params(2, 3, 2)
    rng = np.random.default_rng(6)
    for _ in range(20):
        r = rng.integers(0, 3, spec.n).astype(np.uint8)
        cw = mdd_decode(spec, r)
        assert int(np.count_nonzero(cw != r)) == _nearest_by_enumeration(spec, r)


def test_coset_leader_path(monkeypatch):
    spec = prm_params(2, 3, 3)  # n = 13, k = 10
    rng = np.random.default_rng(7)
    words = [rng.integers(0, 3, spec.n).astype(np.uint8) for _ in range(20)]
    direct = [mdd_decode(spec, r) for r in words]
    monkeypatch.setattr(decoder, "MDD_LIMIT", 30)
    decoder._LEADERS.clear()
    for r, cw in zip(words, direct):
        alt = mdd_decode(spec, r)
        assert np.count_nonzero(alt != r) == np.count_nonzero(cw != r)
    monkeypatch.setattr(decoder, "MDD_LIMIT", 1)
    with pytest.raises(ValueError):
        mdd_decode(prm_params(3, 4, 5), np.zeros(85, dtype=np.uint8))
