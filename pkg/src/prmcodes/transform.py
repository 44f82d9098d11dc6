"""Finite-field DFT on F_q^{A_m}, its explicit inverse, and the extension map
that completes a partial spectrum from a Groebner basis of the error locator.

Spectra are indexed by the set M of monomials with exponents <= q-1, listed
in increasing monomial order (``spectrum_monomials``).  Words over A_m use the
odometer point order of :func:`prmcodes.geometry.enumerate_affine`.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .galois import FieldSpec
from .geometry import enumerate_affine
from .monomials import box_monomials, divides, monomial_values, reduced_basis


@lru_cache(maxsize=32)
def spectrum_monomials(m: int, q: int) -> tuple:
    return tuple(box_monomials(m, q))


@lru_cache(maxsize=32)
def monomial_index(m: int, q: int) -> dict:
    return {h: k for k, h in enumerate(spectrum_monomials(m, q))}


@lru_cache(maxsize=16)
def evaluation_matrix(field: FieldSpec, m: int) -> np.ndarray:
    """V[h, P] = h(P) for h in M and P in A_m."""
    pts = enumerate_affine(m, field).coords
    return monomial_values(field, spectrum_monomials(m, field.q), pts)


def reduce_exponents(a, q: int) -> tuple:
    """Representative in M of a monomial as a function on F_q^m."""
    return tuple(0 if x == 0 else (x - 1) % (q - 1) + 1 for x in a)


def dft(field: FieldSpec, word, m: int) -> np.ndarray:
    word = np.asarray(word, dtype=np.uint8)
    if word.shape != (field.q**m,):
        raise ValueError(f"word must be indexed by all {field.q ** m} points of A_{m}")
    return field.matvec(evaluation_matrix(field, m), word)


@lru_cache(maxsize=16)
def idft_matrix(field: FieldSpec, m: int) -> np.ndarray:
    """W[P, h] such that c = W r inverts the DFT.

    For P with support supp(P) of size s, c_P is
    (-1)^s sum over l in [1, q-1]^s and J inside the complement of supp(P) of
    (-1)^|J| r_h * prod_i w_i^(-l_i), where h has exponent l_i on supp(P),
    q-1 on J and 0 elsewhere.  So W[P, h] is nonzero exactly when h has a
    positive exponent on every support coordinate of P and an exponent in
    {0, q-1} on every other coordinate.
    """
    q = field.q
    if m == 0:
        return np.ones((1, 1), dtype=np.uint8)
    pts = enumerate_affine(m, field).coords  # (N, m)
    monos = np.array(spectrum_monomials(m, q), dtype=np.int64).reshape(-1, m)  # (N, m)
    supp = pts != 0  # (N, m)
    logs = field.log_table[np.where(supp, pts, 1)]  # log of coordinates (0 where unused)
    b = monos[None, :, :]
    s = supp[:, None, :]
    ok = np.where(s, b >= 1, (b == 0) | (b == q - 1)).all(axis=2)
    # exponent of the primitive element: -sum over support of log(w_i) * b_i
    expo = (-(np.where(s, logs[:, None, :] * b, 0)).sum(axis=2)) % (q - 1)
    vals = field.exp_table[expo]
    sign_count = supp.sum(axis=1)[:, None] + (np.where(s, False, b == q - 1)).sum(axis=2)
    if field.p != 2:
        odd = (sign_count % 2) == 1
        vals = np.where(odd, field.neg_table[vals], vals)
    return np.where(ok, vals, 0).astype(np.uint8)


def idft(field: FieldSpec, spectrum, m: int) -> np.ndarray:
    spectrum = np.asarray(spectrum, dtype=np.uint8)
    if spectrum.shape != (field.q**m,):
        raise ValueError(f"spectrum must have {field.q ** m} entries")
    return field.matvec(idft_matrix(field, m), spectrum)


def normal_form_table(field: FieldSpec, basis, m: int):
    """Normal forms of every monomial of M modulo a Groebner basis.

    Returns (footprint, table) where table[k] holds the coordinates of the
    normal form of the k-th monomial of M on the footprint monomials.  The
    field equations X_j^q - X_j are used implicitly, so the basis must
    define a set of points of A_m.
    """
    q = field.q
    gens = reduced_basis(list(basis))
    lms = [g.lm() for g in gens]
    monos = spectrum_monomials(m, q)
    index = monomial_index(m, q)
    foot = [h for h in monos if not any(divides(lm, h) for lm in lms)]
    fidx = {h: k for k, h in enumerate(foot)}
    nd = len(foot)
    table = np.zeros((len(monos), nd), dtype=np.uint8)
    by_lm = dict(zip(lms, gens))
    mul, sub = field.mul_table, field.sub_table
    for k, g in enumerate(monos):
        if g in fidx:
            table[k, fidx[g]] = 1
            continue
        f = by_lm.get(g)
        if f is not None:
            row = np.zeros(nd, dtype=np.uint8)
            for a, c in f.terms.items():
                if a != g:
                    row = sub[row, mul[c, table[index[reduce_exponents(a, q)]]]]
            table[k] = row
            continue
        # g = X_j g' with g' outside the footprint: NF(g) = sum NF(g')_h NF(X_j h)
        j = next(j for j in range(m) if g[j] > 0 and (g[:j] + (g[j] - 1,) + g[j + 1 :]) not in fidx)
        prev = table[index[g[:j] + (g[j] - 1,) + g[j + 1 :]]]
        row = np.zeros(nd, dtype=np.uint8)
        for h_k in np.nonzero(prev)[0]:
            h = foot[h_k]
            xh = reduce_exponents(h[:j] + (h[j] + 1,) + h[j + 1 :], q)
            row = field.add_table[row, mul[prev[h_k], table[index[xh]]]]
        table[k] = row
    return foot, table


@lru_cache(maxsize=32)
def _code_tables(m: int, q: int):
    # monomials with exponents < 2q as integers base 2q; red[code] = index in M
    base = 2 * q
    weights = np.array([base**j for j in range(m)], dtype=np.int64)
    monos = np.array(spectrum_monomials(m, q), dtype=np.int64).reshape(-1, m)
    codes = monos @ weights
    red = np.zeros(base**m, dtype=np.int64)
    for t in np.ndindex(*(base,) * m):
        red[int(np.dot(t, weights))] = monomial_index(m, q)[reduce_exponents(t, q)]
    return weights, monos, codes.tolist(), red.tolist()


def extend(field: FieldSpec, syndrome: dict, basis, m: int) -> np.ndarray:
    """E_Phi: the full spectrum r_g = sum_h v_h r_h over M, where v is the
    normal form of g modulo ``basis`` on the footprint D(Phi).

    One division step g = w * LM(f) gives NF(g) = -sum_{a != LM(f)} f_a NF(w a)
    with every w a smaller than g, so r is filled in increasing order.
    ``basis`` must be a Groebner basis of an ideal of points of A_m.
    """
    q = field.q
    # any Groebner basis works: each generator only supplies one division step
    gens = [g.monic() for g in basis if not g.is_zero()]
    weights, monos, codes, red = _code_tables(m, q)
    # first generator whose leading monomial divides each g (-1: footprint)
    which = np.full(len(codes), -1, dtype=np.int64)
    for k in range(len(gens) - 1, -1, -1):
        lm = np.array(gens[k].lm(), dtype=np.int64)
        which[(monos >= lm).all(axis=1)] = k
    lm_codes = [int(np.dot(g.lm(), weights)) for g in gens]
    # exponents >= q are folded back with X^q = X, which holds on every point
    tails = [
        [(int(np.dot(reduce_exponents(a, q), weights)), c) for a, c in g.terms.items() if a != g.lm()]
        for g in gens
    ]
    mul, add, neg = field.mul_rows, field.add_rows, field.neg_list
    r = [0] * len(codes)
    index = spectrum_monomials(m, q)
    for k, w in enumerate(which.tolist()):
        if w < 0:
            h = index[k]
            if h not in syndrome:
                raise ValueError(f"no syndrome value for footprint monomial {h}")
            r[k] = int(syndrome[h])
            continue
        shift = codes[k] - lm_codes[w]
        acc = 0
        if field.p == 2:
            for ca, c in tails[w]:
                acc ^= mul[c][r[red[ca + shift]]]
        else:
            for ca, c in tails[w]:
                acc = add[acc][mul[c][r[red[ca + shift]]]]
        r[k] = neg[acc]
    return np.array(r, dtype=np.uint8)


def spectrum_dict(field: FieldSpec, spectrum, m: int) -> dict:
    return dict(zip(spectrum_monomials(m, field.q), (int(x) for x in spectrum)))
