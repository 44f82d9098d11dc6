"""Compiled engine for the BMS iteration (numba).

It mirrors ``bms.Sakata`` step for step, including every tie-break, on flat
arrays: monomials are integer codes in base ``bs``, polynomials live in
fixed-size pools.  When a pool is too small the caller falls back to the
pure Python engine.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numba import njit

OK, LEAVES_M, CAP, NO_AUX, NO_VOTERS, TIED, EXHAUSTED, OVERFLOW = range(8)

# meta slots
CUR, NF, NG, ND, VOTES, STEPS, CHANGED = range(7)


@njit(cache=True)
def _code(e, w):
    c = 0
    for j in range(e.shape[0]):
        c += e[j] * w[j]
    return c


@njit(cache=True)
def _le(s, a):
    for j in range(s.shape[0]):
        if s[j] > a[j]:
            return False
    return True


@njit(cache=True)
def _key(e, w, top):
    deg = 0
    for j in range(e.shape[0]):
        deg += e[j]
    return deg * top + _code(e, w)


@njit(cache=True)
def _poly_sum(codes, coefs, n, shift, sval, mul, add, skip):
    acc = 0
    for i in range(n):
        c = codes[i]
        if c == skip:
            continue
        acc = add[acc, mul[coefs[i], sval[c + shift]]]
    return acc


@njit(cache=True)
def run_points(
    start, stop, pts, pcode, w, top, q, cap, voting,
    kval, redc, sval, indelta, dl,
    fcode, fcoef, flen, fs, fsc,
    gcode, gcoef, glen, gs, gc, gd,
    meta, info, mul, add, sub, neg, inv,
):
    nv = w.shape[0]
    L = fcode.shape[2]
    FCAP = fcode.shape[1]
    GCAP = gcode.shape[0]
    fail_k = np.empty(FCAP, np.int64)
    fail_d = np.empty(FCAP, np.int64)
    preds = np.empty(FCAP, np.int64)
    counts = np.zeros(q, np.int64)
    a = np.zeros(nv, np.int64)
    b = np.zeros(nv, np.int64)
    v = np.zeros(nv, np.int64)
    t = np.zeros(nv, np.int64)
    newv = np.empty((FCAP, nv), np.int64)
    newi = np.empty(FCAP, np.int64)
    corners = np.empty((dl.shape[0] * nv + 1, nv), np.int64)
    ckeys = np.empty(dl.shape[0] * nv + 1, np.int64)
    tcode = np.empty(2 * L, np.int64)
    tcoef = np.empty(2 * L, np.int64)
    for pi in range(start, stop):
        u = pts[pi]
        uc = pcode[pi]
        cur = meta[CUR]
        nF = meta[NF]
        kv = kval[uc]
        if kv == -2:
            val = sval[redc[uc]]
        elif kv >= 0:
            val = kv
        else:
            if not voting:
                return EXHAUSTED
            # voting over pairs (a, u - a) outside the current delta
            for k in range(nF):
                preds[k] = -1
            counts[:] = 0
            voters = 0
            for j in range(nv):
                a[j] = 0
            while True:
                ac = _code(a, w)
                if indelta[ac] == 0:
                    for j in range(nv):
                        b[j] = u[j] - a[j]
                    if indelta[_code(b, w)] == 0:
                        for k in range(nF):
                            if _le(fs[cur, k], a):
                                break
                        if preds[k] < 0:
                            preds[k] = neg[
                                _poly_sum(fcode[cur, k], fcoef[cur, k], flen[cur, k], uc - fsc[cur, k], sval, mul, add, fsc[cur, k])
                            ]
                        counts[preds[k]] += 1
                        voters += 1
                # odometer, last coordinate fastest
                j = nv - 1
                while j >= 0 and a[j] == u[j]:
                    a[j] = 0
                    j -= 1
                if j < 0:
                    break
                a[j] += 1
            if voters == 0:
                val = -1
                for k in range(nF):
                    if _le(fs[cur, k], u):
                        p = neg[
                            _poly_sum(fcode[cur, k], fcoef[cur, k], flen[cur, k], uc - fsc[cur, k], sval, mul, add, fsc[cur, k])
                        ]
                        if val == -1:
                            val = p
                        elif p != val:
                            val = -3
                            break
                if val < 0:
                    info[:] = u
                    return NO_VOTERS
            else:
                best = 0
                for x in range(1, q):
                    if counts[x] > counts[best]:
                        best = x
                for x in range(q):
                    if x != best and counts[x] == counts[best]:
                        info[:] = u
                        return TIED
                val = best
                meta[VOTES] += 1
        sval[uc] = val
        meta[STEPS] += 1
        nfail = 0
        for k in range(nF):
            if _le(fs[cur, k], u):
                d = _poly_sum(fcode[cur, k], fcoef[cur, k], flen[cur, k], uc - fsc[cur, k], sval, mul, add, -1)
                if d != 0:
                    fail_k[nfail] = k
                    fail_d[nfail] = d
                    nfail += 1
        if nfail == 0:
            continue
        meta[CHANGED] = 1
        # new spans outside the old delta
        nnew = 0
        for i in range(nfail):
            k = fail_k[i]
            for j in range(nv):
                v[j] = u[j] - fs[cur, k, j]
            if indelta[_code(v, w)] == 0:
                for j in range(nv):
                    if v[j] >= q:
                        info[:] = v
                        return LEAVES_M
                newv[nnew] = v
                newi[nnew] = i
                nnew += 1
        old_nd = meta[ND]
        nd = old_nd
        for i in range(nnew):
            for j in range(nv):
                a[j] = 0
            while True:
                ac = _code(a, w)
                if indelta[ac] == 0:
                    if nd >= cap:
                        return CAP
                    indelta[ac] = 1
                    dl[nd] = a
                    nd += 1
                j = nv - 1
                while j >= 0 and a[j] == newv[i, j]:
                    a[j] = 0
                    j -= 1
                if j < 0:
                    break
                a[j] += 1
        meta[ND] = nd
        # corners of the new delta, sorted
        if nd != old_nd:
            nT = 0
            for di in range(nd):
                for j in range(nv):
                    t[:] = dl[di]
                    t[j] += 1
                    if indelta[_code(t, w)] == 1:
                        continue
                    minimal = True
                    for jj in range(nv):
                        if t[jj] > 0:
                            t[jj] -= 1
                            inside = indelta[_code(t, w)] == 1
                            t[jj] += 1
                            if not inside:
                                minimal = False
                                break
                    if not minimal:
                        continue
                    tk = _key(t, w, top)
                    dup = False
                    for x in range(nT):
                        if ckeys[x] == tk:
                            dup = True
                            break
                    if dup:
                        continue
                    # insertion into sorted position
                    pos = nT
                    while pos > 0 and ckeys[pos - 1] > tk:
                        ckeys[pos] = ckeys[pos - 1]
                        corners[pos] = corners[pos - 1]
                        pos -= 1
                    ckeys[pos] = tk
                    corners[pos] = t
                    nT += 1
        else:
            nT = nF
            for x in range(nF):
                corners[x] = fs[cur, x]
        if nT > FCAP:
            return OVERFLOW
        nxt = 1 - cur
        for ti in range(nT):
            tt = corners[ti]
            tc = _code(tt, w)
            sel = -1
            for k in range(nF):
                if fsc[cur, k] == tc:
                    sel = k
                    break
            if sel < 0:
                first = -1
                for k in range(nF):
                    if _le(fs[cur, k], tt):
                        if first < 0:
                            first = k
                        failing = False
                        for i in range(nfail):
                            if fail_k[i] == k:
                                failing = True
                                break
                        if not failing:
                            sel = k
                            break
                if sel < 0:
                    sel = first
            df = 0
            for i in range(nfail):
                if fail_k[i] == sel:
                    df = fail_d[i]
                    break
            shift = tc - fsc[cur, sel]
            n = flen[cur, sel]
            for x in range(n):
                tcode[x] = fcode[cur, sel, x] + shift
                tcoef[x] = fcoef[cur, sel, x]
            if df != 0 and _le(tt, u):
                # auxiliary polynomial with span >= u - t and smallest leading monomial
                for j in range(nv):
                    v[j] = u[j] - tt[j]
                best = -1
                bkey = 0
                for gi in range(meta[NG]):
                    if _le(v, gc[gi]):
                        gk = _key(gs[gi], w, top)
                        if best < 0 or gk < bkey:
                            best = gi
                            bkey = gk
                if best < 0:
                    info[:] = u
                    return NO_AUX
                gshift = _code(gc[best], w) - _code(u, w) + tc
                factor = mul[df, inv[gd[best]]]
                for y in range(glen[best]):
                    kc = gcode[best, y] + gshift
                    prod = mul[factor, gcoef[best, y]]
                    found = -1
                    for x in range(n):
                        if tcode[x] == kc:
                            found = x
                            break
                    if found >= 0:
                        tcoef[found] = sub[tcoef[found], prod]
                    else:
                        tcode[n] = kc
                        tcoef[n] = sub[0, prod]
                        n += 1
                m2 = 0
                for x in range(n):
                    if tcoef[x] != 0:
                        tcode[m2] = tcode[x]
                        tcoef[m2] = tcoef[x]
                        m2 += 1
                n = m2
            if n > L:
                return OVERFLOW
            for x in range(n):
                fcode[nxt, ti, x] = tcode[x]
                fcoef[nxt, ti, x] = tcoef[x]
            flen[nxt, ti] = n
            fs[nxt, ti] = tt
            fsc[nxt, ti] = tc
        # new auxiliary entries are the failing polynomials before the update
        if nnew > 0:
            nG = meta[NG]
            if nG + nnew > GCAP:
                return OVERFLOW
            for i in range(nnew):
                k = fail_k[newi[i]]
                n = flen[cur, k]
                gcode[nG, :n] = fcode[cur, k, :n]
                gcoef[nG, :n] = fcoef[cur, k, :n]
                glen[nG] = n
                gs[nG] = fs[cur, k]
                gc[nG] = newv[i]
                gd[nG] = fail_d[newi[i]]
                nG += 1
            keep = 0
            for i in range(nG):
                dominated = False
                for jx in range(nG):
                    if jx == i:
                        continue
                    same = True
                    for j in range(nv):
                        if gc[i, j] != gc[jx, j]:
                            same = False
                            break
                    if not same and _le(gc[i], gc[jx]):
                        dominated = True
                        break
                if dominated:
                    continue
                dup = False
                for x in range(keep):
                    same = True
                    for j in range(nv):
                        if gc[x, j] != gc[i, j]:
                            same = False
                            break
                    if same:
                        dup = True
                        break
                if dup:
                    continue
                if keep != i:
                    n = glen[i]
                    gcode[keep, :n] = gcode[i, :n]
                    gcoef[keep, :n] = gcoef[i, :n]
                    glen[keep] = n
                    gs[keep] = gs[i]
                    gc[keep] = gc[i]
                    gd[keep] = gd[i]
                keep += 1
            meta[NG] = keep
        meta[CUR] = nxt
        meta[NF] = nT
    return OK


@njit(cache=True)
def extend_codes(fcode, fcoef, flen, fs, nF, monos, mcodes, qidx, sval, q, bs, w, mul, add, neg):
    """Full spectrum over M from a Groebner basis given as code pools.

    qidx maps base-q codes of M to positions in ``monos``; syndromes of the
    footprint are read from sval at their base-bs codes.
    """
    nm, nv = monos.shape
    r = np.zeros(nm, np.int64)
    for k in range(nm):
        g = monos[k]
        sel = -1
        for f in range(nF):
            if _le(fs[f], g):
                sel = f
                break
        if sel < 0:
            r[k] = sval[mcodes[k]]
            continue
        lmc = _code(fs[sel], w)
        acc = 0
        for x in range(flen[sel]):
            c = fcode[sel, x]
            if c == lmc:
                continue
            # exponents of the term, folded into M, then times X^(g - lm), folded again
            rest = c
            qc = 0
            base = 1
            for j in range(nv):
                ex = rest % bs
                rest //= bs
                if ex > 0:
                    ex = (ex - 1) % (q - 1) + 1
                ex += g[j] - fs[sel, j]
                if ex > 0:
                    ex = (ex - 1) % (q - 1) + 1
                qc += ex * base
                base *= q
            acc = add[acc, mul[fcoef[sel, x], r[qidx[qc]]]]
        r[k] = neg[acc]
    return r


@njit(cache=True)
def root_mask(fcode, fcoef, flen, nF, qidx_of_code, vals, mul, add):
    """Points of A_m where every pool polynomial vanishes."""
    npts = vals.shape[1]
    mask = np.ones(npts, np.bool_)
    ev = np.zeros(npts, np.int64)
    for f in range(nF):
        ev[:] = 0
        for x in range(flen[f]):
            row = qidx_of_code[fcode[f, x]]
            c = fcoef[f, x]
            for p in range(npts):
                ev[p] = add[ev[p], mul[c, vals[row, p]]]
        for p in range(npts):
            if ev[p] != 0:
                mask[p] = False
    return mask


@lru_cache(maxsize=16)
def layout(nv: int, q: int):
    """Point order, codes and lookup tables shared by every run over A_nv(F_q)."""
    from .bms import _layer
    from .transform import spectrum_monomials

    max_deg = 2 * nv * (q - 1) + 1
    bs = max_deg + 2
    w = np.array([bs**j for j in range(nv)], dtype=np.int64)
    size = bs**nv
    pts, starts = [], [0]
    for d in range(max_deg + 1):
        pts.extend(_layer(nv, d))
        starts.append(len(pts))
    pts = np.array(pts, dtype=np.int64).reshape(len(pts), nv)
    pcode = pts @ w
    monos = np.array(spectrum_monomials(nv, q), dtype=np.int64).reshape(-1, nv)
    mcodes = monos @ w
    qw = np.array([q**j for j in range(nv)], dtype=np.int64)
    qidx = np.zeros(q**nv, dtype=np.int64)
    qidx[monos @ qw] = np.arange(len(monos))
    # every code of the box: its reduced monomial as a base-bs code and as an index of M
    grid = np.array(np.unravel_index(np.arange(size), (bs,) * nv, order="F")).T.reshape(size, nv)
    red = np.where(grid == 0, 0, (grid - 1) % (q - 1) + 1)
    redc = red @ w
    red_index = qidx[red @ qw]
    inside = (grid < q).all(axis=1)
    kval = np.where(inside, -1, -2).astype(np.int64)
    return {
        "max_deg": max_deg,
        "bs": bs,
        "w": w,
        "top": size,
        "pts": pts,
        "pcode": pcode,
        "starts": starts,
        "monos": monos,
        "mcodes": mcodes,
        "qidx": qidx,
        "qw": qw,
        "redc": redc,
        "red_index": red_index,
        "kval": kval,
    }


def _tables(field):
    return (
        field.mul_table.astype(np.int64),
        field.add_table.astype(np.int64),
        field.sub_table.astype(np.int64),
        field.neg_table.astype(np.int64),
        field.inv_table.astype(np.int64),
    )


_FIELD_TABLES: dict = {}


def field_tables(field):
    if field not in _FIELD_TABLES:
        _FIELD_TABLES[field] = _tables(field)
    return _FIELD_TABLES[field]


@njit(cache=True)
def gf_matvec(mat, vec, mul, add):
    out = np.zeros(mat.shape[0], np.int64)
    for i in range(mat.shape[0]):
        acc = 0
        for j in range(mat.shape[1]):
            if vec[j] != 0 and mat[i, j] != 0:
                acc = add[acc, mul[mat[i, j], vec[j]]]
        out[i] = acc
    return out


@lru_cache(maxsize=16)
def _matrices(field, nv):
    from .transform import evaluation_matrix, idft_matrix

    return evaluation_matrix(field, nv).astype(np.int64), idft_matrix(field, nv).astype(np.int64)


class PoolOverflow(Exception):
    pass


_MESSAGES = {
    LEAVES_M: "footprint leaves M at {}",
    NO_AUX: "no auxiliary polynomial at {}",
    NO_VOTERS: "no voters at {}",
    TIED: "tied vote at {}",
}


class FastSakata:
    """Same interface as ``bms.Sakata``; state lives in numpy pools."""

    max_terms = 128
    max_polys = 256

    def __init__(self, field, nv: int, known: dict, voting=True, cap=None):
        self.field = field
        self.q = q = field.q
        self.nv = nv
        self.known = known
        self.voting = voting
        self.cap = q**nv if cap is None else min(cap, q**nv)
        self.trace = []
        self.known_deg = max((sum(h) for h in known), default=-1)
        lay = self.lay = layout(nv, q)
        self.max_deg = lay["max_deg"]
        size = lay["top"]
        self.kval = lay["kval"].copy()
        qw = lay["qw"]
        if known:
            keys = np.array(list(known), dtype=np.int64).reshape(len(known), nv)
            self.kval[keys @ lay["w"]] = np.array(list(known.values()), dtype=np.int64)
            self.known_idx = lay["qidx"][keys @ qw]
            self.known_vals = np.array(list(known.values()), dtype=np.uint8)
        else:
            self.known_idx = np.zeros(0, dtype=np.int64)
            self.known_vals = np.zeros(0, dtype=np.uint8)
        self.sval = np.zeros(size, dtype=np.int64)
        self.indelta = np.zeros(size, dtype=np.uint8)
        dcap = max(self.cap, 1)
        self.dl = np.zeros((dcap, nv), dtype=np.int64)
        fcap = min(dcap * nv + 1, self.max_polys)
        L = self.max_terms
        self.fcode = np.empty((2, fcap, L), dtype=np.int64)
        self.fcoef = np.empty((2, fcap, L), dtype=np.int64)
        self.flen = np.zeros((2, fcap), dtype=np.int64)
        self.fs = np.zeros((2, fcap, nv), dtype=np.int64)
        self.fsc = np.zeros((2, fcap), dtype=np.int64)
        self.fcode[0, 0, 0] = 0
        self.fcoef[0, 0, 0] = 1
        self.flen[0, 0] = 1
        self.gcode = np.empty((fcap, L), dtype=np.int64)
        self.gcoef = np.empty((fcap, L), dtype=np.int64)
        self.glen = np.zeros(fcap, dtype=np.int64)
        self.gs = np.zeros((fcap, nv), dtype=np.int64)
        self.gc = np.zeros((fcap, nv), dtype=np.int64)
        self.gd = np.zeros(fcap, dtype=np.int64)
        self.meta = np.zeros(8, dtype=np.int64)
        self.meta[NF] = 1
        self.info = np.zeros(nv, dtype=np.int64)
        self.tables = field_tables(field)
        self.vals, self.idft = _matrices(field, nv)

    # -- engine interface --------------------------------------------------------

    @property
    def votes(self) -> int:
        return int(self.meta[VOTES])

    @property
    def steps(self) -> int:
        return int(self.meta[STEPS])

    @property
    def values(self) -> dict:
        lay = self.lay
        n = self.steps
        pts, codes = lay["pts"][:n], lay["pcode"][:n]
        inside = (pts < self.q).all(axis=1)
        return {tuple(int(x) for x in p): int(self.sval[c]) for p, c in zip(pts[inside], codes[inside])}

    def process_layer(self, d: int) -> bool:
        from .bms import BmsFailure, _Exhausted

        lay = self.lay
        mul, add, sub, neg, inv = self.tables
        self.meta[CHANGED] = 0
        status = run_points(
            lay["starts"][d], lay["starts"][d + 1], lay["pts"], lay["pcode"], lay["w"], lay["top"],
            self.q, self.cap, self.voting,
            self.kval, lay["redc"], self.sval, self.indelta, self.dl,
            self.fcode, self.fcoef, self.flen, self.fs, self.fsc,
            self.gcode, self.gcoef, self.glen, self.gs, self.gc, self.gd,
            self.meta, self.info, mul, add, sub, neg, inv,
        )  # fmt: skip
        if status == OK:
            return bool(self.meta[CHANGED])
        if status == EXHAUSTED:
            raise _Exhausted
        if status == OVERFLOW:
            raise PoolOverflow
        if status == CAP:
            raise BmsFailure(f"more than {self.cap} errors")
        raise BmsFailure(_MESSAGES[status].format(tuple(int(x) for x in self.info)))

    def _lms(self):
        cur, nF = self.meta[CUR], self.meta[NF]
        return self.fs[cur, :nF]

    def delta_size(self) -> int:
        return int(self.meta[ND])

    def stop_degree(self) -> int:
        nd = self.meta[ND]
        dmax = int(self.dl[:nd].sum(axis=1).max()) if nd else 0
        cmax = int(self._lms().sum(axis=1).max())
        return min(self.max_deg, dmax + cmax + 1)

    def finite(self) -> bool:
        if self.meta[ND] == 0:
            return True
        lms = self._lms()
        nz = lms > 0
        pure = nz.sum(axis=1) == 1
        return bool(all((pure & nz[:, j]).any() for j in range(self.nv)))

    def try_certify(self):
        if not self.finite():
            return None
        lay = self.lay
        mul, add, sub, neg, inv = self.tables
        cur, nF = self.meta[CUR], self.meta[NF]
        mask = root_mask(self.fcode[cur], self.fcoef[cur], self.flen[cur], nF, lay["red_index"], self.vals, mul, add)
        if int(mask.sum()) != self.meta[ND]:
            return None
        r = extend_codes(
            self.fcode[cur], self.fcoef[cur], self.flen[cur], self.fs[cur], nF,
            lay["monos"], lay["mcodes"], lay["qidx"], self.sval, self.q, lay["bs"], lay["w"], mul, add, neg,
        )  # fmt: skip
        spectrum = r.astype(np.uint8)
        if not np.array_equal(spectrum[self.known_idx], self.known_vals):
            return None
        err = gf_matvec(self.idft, r, mul, add).astype(np.uint8)
        if not np.array_equal(err != 0, mask):
            return None
        return err

    def polynomials(self):
        from .monomials import Polynomial

        cur, nF = self.meta[CUR], self.meta[NF]
        bs = self.lay["bs"]
        out = []
        for k in range(nF):
            n = self.flen[cur, k]
            codes = self.fcode[cur, k, :n]
            exps = np.array(np.unravel_index(codes, (bs,) * self.nv, order="F")).T.reshape(n, self.nv)
            terms = {tuple(int(x) for x in e): int(c) for e, c in zip(exps, self.fcoef[cur, k, :n])}
            out.append(Polynomial(self.field, self.nv, terms))
        return out

    def basis_size(self) -> int:
        return int(self.meta[NF])

    def delta_list(self) -> list:
        from .monomials import order_key

        nd = self.meta[ND]
        return sorted((tuple(int(x) for x in a) for a in self.dl[:nd]), key=order_key)
