"""Berlekamp-Massey-Sakata algorithm with majority voting for unknown syndromes.

The syndrome array lives on all exponent vectors u of N^m: for u with an
exponent >= q the value equals the value at the reduced vector (X^q = X on
F_q), so only monomials of M beyond the known set B are ever unknown.  Those
are determined by a Feng-Rao style vote.

Monomials are handled internally as integers (base ``bs`` digits), so that
shifting a polynomial is an integer addition on its term codes.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .galois import FieldSpec
from .geometry import enumerate_affine
from .monomials import GroebnerSet, Polynomial, divides, order_key, reduced_basis
from .transform import evaluation_matrix, extend, idft, monomial_index, reduce_exponents


class BmsResult:
    """Outcome of one BMS run.

    ``basis``, ``delta``, ``syndrome`` and ``roots`` are built on first
    access, since the decoder usually needs only ``error`` and ``z``.
    """

    def __init__(self, ok, reason="", votes=0, steps=0, error=None, z=0, trace=(), lazy=None):
        self.ok = ok
        self.reason = reason
        self.votes = votes
        self.steps = steps
        self.error = error
        self.z = z  # number of generators of the locator basis
        self.trace = list(trace)
        self._lazy = lazy or {}
        self._cache = {}

    def _get(self, name, default=None):
        if name not in self._cache:
            make = self._lazy.get(name)
            self._cache[name] = make() if make else default
        return self._cache[name]

    @property
    def basis(self) -> GroebnerSet | None:
        return self._get("basis")

    @property
    def delta(self) -> list:
        return self._get("delta", [])

    @property
    def syndrome(self) -> dict:
        return self._get("syndrome", {})

    @property
    def roots(self) -> list:
        if self.error is None:
            return []
        pts = enumerate_affine(self._lazy["m"], self._lazy["field"]).coords
        return [tuple(int(x) for x in p) for p in pts[self.error != 0]]

    def __repr__(self):
        return f"BmsResult(ok={self.ok}, z={self.z}, votes={self.votes}, reason={self.reason!r})"


class BmsFailure(Exception):
    pass


class _Exhausted(Exception):
    """Raised when an unknown syndrome is reached with voting off."""


@lru_cache(maxsize=64)
def _layer(nv: int, d: int) -> tuple:
    """Exponent vectors of total degree d in increasing monomial order."""
    if nv == 0:
        return ((),) if d == 0 else ()
    if nv == 1:
        return ((d,),)
    out = []
    for last in range(d + 1):
        out.extend(rest + (last,) for rest in _layer(nv - 1, d - last))
    return tuple(out)


def _downset(v):
    return itertools.product(*[range(x + 1) for x in v])


def _corners(delta: set, nv: int) -> list:
    """Minimal exponent vectors outside the order ideal delta, sorted."""
    if not delta:
        return [(0,) * nv]
    cands = set()
    for a in delta:
        for j in range(nv):
            t = a[:j] + (a[j] + 1,) + a[j + 1 :]
            if t not in delta:
                cands.add(t)
    out = [t for t in cands if all(t[j] == 0 or (t[:j] + (t[j] - 1,) + t[j + 1 :]) in delta for j in range(nv))]
    out.sort(key=order_key)
    return out


class _Poly:
    __slots__ = ("s", "sc", "terms")

    def __init__(self, s, sc, terms):
        self.s = s  # leading exponent vector
        self.sc = sc  # its code
        self.terms = terms  # dict code -> coefficient, monic at sc


class Sakata:
    """One BMS run over A_nv(F_q) from the syndromes on ``known``."""

    def __init__(self, field: FieldSpec, nv: int, known: dict, voting=True, cap=None, trace=False):
        self.field = field
        self.q = q = field.q
        self.nv = nv
        self.known = known
        self.voting = voting
        self.cap = q**nv if cap is None else min(cap, q**nv)
        self.tracing = trace
        self.trace = []
        self.known_deg = max((sum(h) for h in known), default=-1)
        self.max_deg = 2 * nv * (q - 1) + 1
        self.bs = bs = self.max_deg + 2
        self.weights = [bs**j for j in range(nv)]
        self.sval = [0] * bs**nv
        self.values = {}  # syndromes on M, known and voted
        self.delta = set()
        self.votes = 0
        self.steps = 0
        self.F = [_Poly((0,) * nv, 0, {0: 1})]
        self.G = []  # auxiliary (c, poly, discrepancy)
        mul = field.mul_rows
        self.mul = mul
        self.char2 = field.p == 2

    # -- helpers -------------------------------------------------------------

    def code(self, t) -> int:
        return sum(x * w for x, w in zip(t, self.weights))

    def decode_code(self, c) -> tuple:
        out = []
        for _ in range(self.nv):
            c, x = divmod(c, self.bs)
            out.append(x)
        return tuple(out)

    def _eval(self, poly: _Poly, shift: int) -> int:
        """sum_a f_a S(a + shift) for a code shift."""
        sval, mul = self.sval, self.mul
        if self.char2:
            acc = 0
            for c, v in poly.terms.items():
                acc ^= mul[v][sval[c + shift]]
            return acc
        add = self.field.add_rows
        acc = 0
        for c, v in poly.terms.items():
            acc = add[acc][mul[v][sval[c + shift]]]
        return acc

    def _predict(self, poly: _Poly, u_code: int) -> int:
        """Value of S(u) that makes poly valid at u (poly is monic)."""
        sval, mul, sc = self.sval, self.mul, poly.sc
        shift = u_code - sc
        if self.char2:
            acc = 0
            for c, v in poly.terms.items():
                if c != sc:
                    acc ^= mul[v][sval[c + shift]]
            return acc
        add = self.field.add_rows
        acc = 0
        for c, v in poly.terms.items():
            if c != sc:
                acc = add[acc][mul[v][sval[c + shift]]]
        return self.field.neg_list[acc]

    def _combine(self, f: _Poly, t, g_entry, df: int, u) -> _Poly:
        """X^{t-s} f - (df/dg) X^{c-(u-t)} g."""
        shift = self.code(t) - f.sc
        terms = {c + shift: v for c, v in f.terms.items()}
        if g_entry is not None:
            c, g, dg = g_entry
            gshift = self.code(c) - self.code(u) + self.code(t)
            factor = self.mul[df][self.field.inv_list[dg]]
            sub = self.field.sub_rows
            for cg, v in g.terms.items():
                k = cg + gshift
                nv = sub[terms.get(k, 0)][self.mul[factor][v]]
                if nv:
                    terms[k] = nv
                else:
                    terms.pop(k, None)
        return _Poly(t, self.code(t), terms)

    def _aux_for(self, need):
        best = None
        for entry in self.G:
            c = entry[0]
            if all(x >= y for x, y in zip(c, need)):
                if best is None or order_key(entry[1].s) < order_key(best[1].s):
                    best = entry
        return best

    # -- voting ----------------------------------------------------------------

    def _vote(self, u, u_code) -> int:
        delta = self.delta
        preds = {}
        counts = {}
        voters = 0
        for a in _downset(u):
            if a in delta:
                continue
            b = tuple(x - y for x, y in zip(u, a))
            if b in delta:
                continue
            f = next(f for f in self.F if divides(f.s, a))
            if f.sc not in preds:
                preds[f.sc] = self._predict(f, u_code)
            v = preds[f.sc]
            counts[v] = counts.get(v, 0) + 1
            voters += 1
        if voters == 0:
            vals = {self._predict(f, u_code) for f in self.F if divides(f.s, u)}
            if len(vals) == 1:
                return vals.pop()
            raise BmsFailure(f"no voters at {u}")
        ranked = sorted(counts.items(), key=lambda kv: -kv[1])
        if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
            raise BmsFailure(f"tied vote at {u}")
        self.votes += 1
        return ranked[0][0]

    # -- main step -----------------------------------------------------------------

    def _value(self, u, u_code) -> int | None:
        q = self.q
        if all(x < q for x in u):
            if u in self.known:
                return int(self.known[u])
            return None
        return self.values[reduce_exponents(u, q)]

    def step(self, u):
        u_code = self.code(u)
        val = self._value(u, u_code)
        if val is None:
            if not self.voting:
                raise _Exhausted
            val = self._vote(u, u_code)
        self.sval[u_code] = val
        if all(x < self.q for x in u):
            self.values[u] = val
        self.steps += 1
        failing = []
        for f in self.F:
            if all(x >= y for x, y in zip(u, f.s)):
                d = self._eval(f, u_code - f.sc)
                if d:
                    failing.append((f, d))
        if failing:
            self._update(u, failing)
        if self.tracing:
            self.trace.append(self._trace_line(u, val))

    def _update(self, u, failing):
        q = self.q
        delta = self.delta
        new_delta = set(delta)
        new_aux = []
        disc = {id(f): d for f, d in failing}
        for f, d in failing:
            v = tuple(x - y for x, y in zip(u, f.s))
            if v not in delta:
                if any(x >= q for x in v):
                    raise BmsFailure(f"footprint leaves M at {v}")
                new_delta.update(_downset(v))
                new_aux.append((v, f, d))
        if len(new_delta) > self.cap:
            raise BmsFailure(f"more than {self.cap} errors")
        corners = _corners(new_delta, self.nv) if new_delta != delta else [f.s for f in self.F]
        old_by_s = {f.s: f for f in self.F}
        newF = []
        for t in corners:
            f = old_by_s.get(t)
            if f is None:
                cands = [g for g in self.F if divides(g.s, t)]
                ok = [g for g in cands if id(g) not in disc]
                f = ok[0] if ok else cands[0]
            df = disc.get(id(f), 0)
            if df == 0 or not divides(t, u):
                newF.append(self._combine(f, t, None, 0, u) if f.s != t else f)
                continue
            need = tuple(x - y for x, y in zip(u, t))
            g = self._aux_for(need)
            if g is None:
                raise BmsFailure(f"no auxiliary polynomial at {u}")
            newF.append(self._combine(f, t, g, df, u))
        self.F = newF
        if new_aux:
            aux = self.G + new_aux
            keep = []
            for i, (c, g, dg) in enumerate(aux):
                dominated = any(
                    j != i and c2 != c and all(x <= y for x, y in zip(c, c2)) for j, (c2, _, _) in enumerate(aux)
                )
                if not dominated and all(c != k[0] for k in keep):
                    keep.append((c, g, dg))
            self.G = keep
        self.delta = new_delta

    def _trace_line(self, u, val) -> str:
        lms = " ".join("".join(map(str, f.s)) for f in self.F)
        dl = " ".join("".join(map(str, a)) for a in sorted(self.delta, key=order_key))
        return f"u={''.join(map(str, u))} S={val} F=[{lms}] delta=[{dl}]"

    # -- engine interface -----------------------------------------------------------

    def process_layer(self, d: int) -> bool:
        """Process every exponent vector of degree d; True if F changed."""
        changed = False
        for u in _layer(self.nv, d):
            before = self.F
            self.step(u)
            changed |= self.F is not before
        return changed

    def delta_size(self) -> int:
        return len(self.delta)

    def stop_degree(self) -> int:
        dmax = max((sum(a) for a in self.delta), default=0)
        cmax = max(sum(f.s) for f in self.F)
        return min(self.max_deg, dmax + cmax + 1)

    def finite(self) -> bool:
        if not self.delta:
            return True
        lms = [f.s for f in self.F]
        return all(
            any(s[j] > 0 and all(x == 0 for k, x in enumerate(s) if k != j) for s in lms) for j in range(self.nv)
        )

    def try_certify(self):
        if not self.finite():
            return None
        return certify(self.field, self.nv, self.known, self.polynomials(), self.values)

    def polynomials(self) -> list[Polynomial]:
        out = []
        for f in self.F:
            terms = {}
            for c, v in f.terms.items():
                terms[self.decode_code(c)] = v
            out.append(Polynomial(self.field, self.nv, terms))
        return out

    def delta_list(self) -> list:
        return sorted(self.delta, key=order_key)

    def basis_size(self) -> int:
        return len(self.F)


def _check_known(known: dict, nv: int, q: int):
    if not known:
        return
    try:
        keys = np.array(list(known), dtype=np.int64).reshape(len(known), nv)
    except ValueError:
        raise ValueError(f"syndrome monomials must have {nv} exponents") from None
    if keys.min() < 0 or keys.max() >= q:
        raise ValueError(f"syndrome monomial outside M for {nv} variables")
    vals = np.array(list(known.values()), dtype=np.int64)
    if vals.min() < 0 or vals.max() >= q:
        raise ValueError("syndrome values must be field elements")


def locator_roots(basis, m: int, field: FieldSpec) -> list[tuple]:
    """All points of A_m where every generator vanishes."""
    if field.q**m > 65536:
        raise ValueError("search space too large")
    return [tuple(int(x) for x in p) for p in _root_points(basis, m, field)]


def _root_mask(basis, m: int, field: FieldSpec) -> np.ndarray:
    q = field.q
    vals = evaluation_matrix(field, m)
    index = monomial_index(m, q)
    mask = np.ones(q**m, dtype=bool)
    for g in basis:
        if g.is_zero():
            continue
        rows = [index[reduce_exponents(a, q)] for a in g.terms]
        coefs = np.array(list(g.terms.values()), dtype=np.uint8)
        ev = field.sum(field.mul_table[coefs[:, None], vals[rows]], axis=0)
        mask &= ev == 0
    return mask


def _root_points(basis, m, field):
    pts = enumerate_affine(m, field).coords
    return pts[_root_mask(basis, m, field)]


def certify(field: FieldSpec, m: int, known: dict, basis, values: dict):
    """Error word on A_m if ``basis`` locates an error pattern consistent
    with the known syndromes, else None.

    The roots must be exactly as many as the footprint, the estimate
    restrict(IDFT(E(S))) must be supported on the roots, and it must
    reproduce every known syndrome.
    """
    from .monomials import footprint

    try:
        foot = footprint(basis, field.q, m)
    except ValueError:
        return None
    mask = _root_mask(basis, m, field)
    if int(mask.sum()) != len(foot):
        return None
    spectrum = extend(field, values, basis, m)
    err = idft(field, spectrum, m)
    if not np.array_equal(err != 0, mask):
        return None
    index = monomial_index(m, field.q)
    ks = [index[h] for h in known]
    if not np.array_equal(spectrum[ks], np.array([known[h] for h in known], dtype=np.uint8)):
        return None
    return err


def bms_run(
    syndrome: dict,
    m: int,
    field: FieldSpec,
    voting: bool = True,
    cap: int | None = None,
    trace: bool = False,
    early: bool = True,
    engine: str = "auto",
    reduce: bool = True,
) -> BmsResult:
    """Groebner basis of the error locator ideal from syndromes on B.

    ``syndrome`` maps exponent vectors of M to values; its keys form B.
    ``cap`` bounds the footprint size (the number of errors accepted).
    With ``early`` the run stops as soon as the current basis is certified
    against all known syndromes, otherwise it processes every monomial up to
    the stopping degree.  ``engine`` is "python", "fast" (compiled) or
    "auto" (compiled unless tracing).  With ``reduce`` off the basis is
    returned as computed (minimal but not interreduced).
    Failure is reported in the result, not raised.
    """
    q = field.q
    known = syndrome if all(type(h) is tuple for h in syndrome) else {tuple(h): v for h, v in syndrome.items()}
    _check_known(known, m, q)
    known = {h: int(v) for h, v in known.items()}
    if engine not in ("auto", "python", "fast"):
        raise ValueError(f"unknown engine {engine!r}")
    use_fast = engine == "fast" or (engine == "auto" and not trace and m > 0)
    if use_fast:
        from ._bms_fast import FastSakata, PoolOverflow

        try:
            return _drive(FastSakata(field, m, known, voting=voting, cap=cap), early, reduce)
        except PoolOverflow:
            pass
    return _drive(Sakata(field, m, known, voting=voting, cap=cap, trace=trace), early, reduce)


def _drive(st, early: bool, reduce: bool) -> BmsResult:
    field, m = st.field, st.nv

    def result(ok, reason="", err=None, with_basis=False):
        lazy = {"m": m, "field": field, "delta": st.delta_list}
        lazy["syndrome"] = lambda: dict(st.values)
        z = 0
        if with_basis:
            polys = st.polynomials
            z = st.basis_size()
            lazy["basis"] = lambda: GroebnerSet(reduced_basis(polys()) if reduce else polys())
        return BmsResult(ok, reason, st.votes, st.steps, err, z, st.trace, lazy)

    d = 0
    last_growth = 0
    try:
        while d <= st.max_deg:
            size = st.delta_size()
            changed = st.process_layer(d)
            if st.delta_size() != size:
                last_growth = d
            stop_deg = max(st.known_deg, st.stop_degree())
            if early and (not changed or d == st.known_deg or d >= stop_deg):
                err = st.try_certify()
                if err is not None:
                    return result(True, err=err, with_basis=True)
            if d >= stop_deg and d > last_growth:
                break
            d += 1
    except BmsFailure as exc:
        return result(False, str(exc))
    except _Exhausted:
        pass
    if not st.finite():
        return result(False, "footprint is not finite")
    err = st.try_certify()
    if err is None:
        return result(False, "locator does not match the syndromes", with_basis=True)
    return result(True, err=err, with_basis=True)
