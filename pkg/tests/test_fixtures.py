"""The PRM_5(3,4) worked example over GF(4) (alpha = 2, beta = 3).

The transcribed panels are not fully consistent with each other; the tests
below pin exactly which cells disagree, so any change in transcription or in
the decoder shows up here.  The acceptance module checks the figure as printed.
"""

import numpy as np

from prmcodes import fixtures as fx
from prmcodes.bms import bms_run, locator_roots
from prmcodes.decoder import chart_syndrome, decode_prm
from prmcodes.galois import gf
from prmcodes.monomials import parse_polynomial
from prmcodes.transform import dft, spectrum_dict

ALPHA, BETA = 2, 3
TYPO = 41  # point (1:alpha:alpha:1)


def corrected_received():
    r = fx.received().copy()
    r[TYPO] = 1
    return r


def test_panel_conventions():
    spec = fx.example_spec()
    c = fx.codeword()
    assert (spec.n, spec.k, spec.t0, spec.i0) == (85, 50, 3, 2)
    assert c[spec.points.index((1, 0, 1, BETA))] == ALPHA
    assert c[spec.points.index((0, 0, 1, ALPHA))] == BETA
    assert spec.points[TYPO] == (1, ALPHA, ALPHA, 1)
    f = fx.information_polynomial()
    assert f.coeff((3, 2, 0, 0)) == ALPHA
    assert f.coeff((0, 4, 1, 0)) == BETA
    assert f.is_homogeneous(5)


def test_printed_codeword_is_one_symbol_from_the_code():
    spec = fx.example_spec()
    out = decode_prm(spec, fx.codeword())
    assert out.ok
    assert np.nonzero(out.error)[0].tolist() == [TYPO]
    assert out.codeword[TYPO] == 1
    # the received panel carries the same symbol at that point
    assert fx.received()[TYPO] == fx.codeword()[TYPO] == ALPHA


def test_black_cells_are_the_syndromes_of_the_corrected_received_word():
    spec = fx.example_spec()
    known, _ = fx.syndrome_table()
    assert len(known) == 20
    s = chart_syndrome(spec, 0, corrected_received())
    assert all(s[h] == v for h, v in known.items())
    s_printed = chart_syndrome(spec, 0, fx.received())
    assert any(s_printed[h] != v for h, v in known.items())


def test_first_basis_from_the_black_cells():
    known, _ = fx.syndrome_table()
    res = bms_run(known, 3, gf(4))
    assert res.ok
    assert {frozenset(g.terms.items()) for g in res.basis} == {
        frozenset(g.terms.items()) for g in fx.groebner_bases()["G0"]
    }
    assert sorted(res.roots) == [(0, 2, 2), (1, 1, 3), (1, 3, 0)]


def test_decoding_the_corrected_word_gives_the_error_panel_up_to_one_column():
    spec = fx.example_spec()
    out = decode_prm(spec, corrected_received())
    assert out.ok and out.z[:2] == [4, 3]
    printed = fx.printed_error()
    diff = np.nonzero(out.error != printed)[0].tolist()
    # the panel shows beta at (1:1:alpha:alpha); the decoder and the black cells
    # put it at (1:0:alpha:alpha), one column to the left
    assert diff == [spec.points.index((1, 0, ALPHA, ALPHA)), spec.points.index((1, 1, ALPHA, ALPHA))]
    assert out.error[10] == BETA and printed[26] == BETA


def test_second_basis():
    spec = fx.example_spec()
    f = spec.field
    out = decode_prm(spec, corrected_received())
    g1 = list(out.charts[1].basis)
    expected = [
        parse_polynomial(t, f, 2, offset=2) for t in ("X2^2+3*X3+1", "X2*X3+X3+2", "X3^2+3*X2+3")
    ]
    assert {frozenset(g.terms.items()) for g in g1} == {frozenset(g.terms.items()) for g in expected}
    printed = fx.groebner_bases()["G1"]
    shared = {frozenset(g.terms.items()) for g in printed} & {frozenset(g.terms.items()) for g in g1}
    assert len(shared) == 2
    # the printed third generator X2^2 + beta X2 + 1 has no root in GF(4)
    odd = [g for g in printed if frozenset(g.terms.items()) not in shared][0]
    assert str(odd) == "X2^2+3*X2+1"
    assert all(odd((x, y)) != 0 for x in range(4) for y in range(4))
    # the computed basis vanishes exactly on the three chart-1 error points
    err1 = out.error[spec.points.chart_slice(1)]
    roots = locator_roots(g1, 2, f)
    assert len(roots) == 3 == np.count_nonzero(err1)


def test_extension_table_agrees_except_four_cells():
    spec = fx.example_spec()
    f = spec.field
    out = decode_prm(spec, corrected_received())
    e0 = out.error[spec.points.chart_slice(0)]
    true = spectrum_dict(f, dft(f, e0, 3), 3)
    _, printed = fx.syndrome_table()
    diff = {h: (printed[h], true[h]) for h in printed if printed[h] != true[h]}
    assert diff == {(3, 1, 0): (2, 0), (2, 2, 0): (0, 2), (2, 3, 0): (0, 3), (3, 3, 0): (0, 3)}


def test_fixture_hash_is_stable():
    h = fx.fixture_hash()
    assert len(h) == 12 and h == fx.fixture_hash()
