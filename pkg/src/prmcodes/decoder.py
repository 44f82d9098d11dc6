"""Chart decoder (syndromes on one affine chart), the full projective decoder
that runs it chart by chart, and a brute-force nearest-codeword decoder used
as an oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .bms import bms_run
from .codes import CodeSpec, dual_monomials, lifted_syndrome_matrix
from .galois import FieldSpec
from .transform import idft, spectrum_monomials


@dataclass
class ChartOutcome:
    chart: int
    mode: str
    ok: bool
    error: np.ndarray
    reason: str = ""
    z: int = 0  # size of the locator Groebner basis
    votes: int = 0
    bms: object = None  # the BmsResult, for bms mode

    @property
    def basis(self) -> list:
        if self.bms is None or self.bms.basis is None:
            return []
        return list(self.bms.basis)


@dataclass
class DecodeOutcome:
    error: np.ndarray
    codeword: np.ndarray
    charts: list
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.ok:
            return "success"
        i, reason = self.failures[0]
        return f"failure(chart {i}: {reason})"

    @property
    def z(self) -> list[int]:
        return [c.z for c in self.charts]

    def as_dict(self) -> dict:
        return {
            "status": "success" if self.ok else "failure",
            "codeword": [int(x) for x in self.codeword],
            "error": [int(x) for x in self.error],
            "charts": [
                {
                    "chart": c.chart,
                    "mode": c.mode,
                    "ok": c.ok,
                    "reason": c.reason,
                    "weight": int(np.count_nonzero(c.error)),
                    "groebner_size": c.z,
                    "votes": c.votes,
                }
                for c in self.charts
            ],
            "failures": [{"chart": i, "reason": r} for i, r in self.failures],
        }


def decode_chart(
    field: FieldSpec,
    nvars: int,
    syndrome: dict,
    mode: str = "bms",
    voting: bool = True,
    cap: int | None = None,
    trace: bool = False,
    chart: int = 0,
) -> ChartOutcome:
    """Error word on A_nvars from its syndromes.

    mode "idft_only" needs the syndrome on all of M and inverts it directly;
    mode "bms" finds the locator ideal first and completes the spectrum with it.
    """
    q = field.q
    size = q**nvars
    if mode == "idft_only":
        monos = spectrum_monomials(nvars, q)
        missing = [h for h in monos if h not in syndrome]
        if missing:
            raise ValueError("idft_only needs the syndrome on every monomial of M")
        err = idft(field, np.array([syndrome[h] for h in monos], dtype=np.uint8), nvars)
        return ChartOutcome(chart, mode, True, err)
    if mode != "bms":
        raise ValueError(f"unknown chart mode {mode!r}")
    res = bms_run(syndrome, nvars, field, voting=voting, cap=cap, trace=trace)
    err = res.error if res.ok else np.zeros(size, dtype=np.uint8)
    return ChartOutcome(chart, mode, res.ok, err, res.reason, res.z, res.votes, res)


def chart_syndrome(spec: CodeSpec, i: int, word) -> dict:
    """S^(i)_h = sum over all of P_m of word_P h(P) for the lifted B_i monomials."""
    vals = spec.field.matvec(lifted_syndrome_matrix(spec, i), np.asarray(word, dtype=np.uint8))
    return dict(zip(dual_monomials(spec, i), (int(v) for v in vals)))


def decode_prm(
    spec: CodeSpec,
    received,
    voting: bool = True,
    bounded: bool = False,
    trace: bool = False,
) -> DecodeOutcome:
    """Decode a received word of a projective Reed-Muller code chart by chart.

    Charts below i0 go through BMS (with at most t0 errors accepted when
    ``bounded``); the remaining charts are inverted directly.  A failing
    chart contributes no correction and the later charts still run.
    """
    if spec.family != "PRM":
        raise ValueError("decode_prm needs a projective Reed-Muller code")
    field = spec.field
    r = np.asarray(received, dtype=np.uint8)
    if r.shape != (spec.n,):
        raise ValueError(f"received word must have length n = {spec.n}")
    if np.any(r >= spec.q):
        raise ValueError("received word has entries outside the field")
    err = np.zeros(spec.n, dtype=np.uint8)
    charts, failures = [], []
    for i in range(spec.m + 1):
        current = field.vsub(r, err)
        syn = chart_syndrome(spec, i, current)
        mode = "bms" if i < spec.i0 else "idft_only"
        out = decode_chart(
            field,
            spec.m - i,
            syn,
            mode=mode,
            voting=voting,
            cap=spec.t0 if bounded else None,
            trace=trace,
            chart=i,
        )
        charts.append(out)
        if out.ok:
            sl = spec.points.chart_slice(i)
            err[sl] = field.vadd(err[sl], out.error)
        else:
            failures.append((i, out.reason))
    return DecodeOutcome(err, field.vsub(r, err), charts, failures)


def groebner_bound_ok(spec: CodeSpec, outcome: DecodeOutcome) -> bool:
    """z_i <= q^(m-i-1) for every chart that went through BMS."""
    return all(c.z <= spec.q ** (spec.m - c.chart - 1) for c in outcome.charts if c.mode == "bms" and c.ok)


# -- brute-force minimum distance decoding ------------------------------------------

MDD_LIMIT = 2 * 10**6


def _all_messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.uint8)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def mdd_decode(spec: CodeSpec, received, chunk: int = 4096) -> np.ndarray:
    """A nearest codeword; ties go to the first codeword in message order
    (messages counted in base q, first coordinate most significant)."""
    field = spec.field
    r = np.asarray(received, dtype=np.uint8)
    gen = spec.generator
    k = gen.shape[0]
    if spec.q**k <= MDD_LIMIT:
        best, best_d = None, spec.n + 1
        total = spec.q**k
        for start in range(0, total, chunk):
            msgs = _all_messages(spec.q, k, start, min(total, start + chunk))
            words = field.matmul(msgs, gen)
            dist = np.count_nonzero(words != r[None, :], axis=1)
            j = int(np.argmin(dist))
            if dist[j] < best_d:
                best, best_d = words[j], int(dist[j])
        return best
    if spec.q ** (spec.n - k) <= MDD_LIMIT:
        leaders = _coset_leaders(spec)
        h = _parity_check(spec)
        s = field.matvec(h, r)
        return field.vsub(r, leaders[_syndrome_key(s, spec.q)])
    raise ValueError("minimum distance decoding is infeasible for this code")


def _parity_check(spec: CodeSpec) -> np.ndarray:
    return linalg.nullspace(spec.field, spec.generator)


def _syndrome_key(s, q: int) -> int:
    key = 0
    for x in s:
        key = key * q + int(x)
    return key


_LEADERS: dict = {}


def _coset_leaders(spec: CodeSpec) -> dict:
    if spec in _LEADERS:
        return _LEADERS[spec]
    field, q, n = spec.field, spec.q, spec.n
    h = _parity_check(spec)
    ncosets = q ** h.shape[0]
    table = {}
    for w in range(n + 1):
        for supp in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.uint8)
                e[list(supp)] = vals
                key = _syndrome_key(field.matvec(h, e), q)
                if key not in table:
                    table[key] = e
            if len(table) == ncosets:
                _LEADERS[spec] = table
                return table
    _LEADERS[spec] = table
    return table
