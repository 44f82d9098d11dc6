"""q-ary symmetric channel, closed-form codeword error rates and Monte Carlo
estimates for the chart decoder.

PM1 counts a codeword as lost when more than t0 errors occur anywhere; PM2
only needs at most t0 errors in each chart i < i0 (the later charts are
always corrected).  MDD corrects up to floor((d-1)/2) errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec, random_codeword
from .decoder import decode_prm, mdd_decode
from .galois import FieldSpec

METHODS = ("PM1", "PM2", "MDD")


@dataclass(frozen=True)
class ChannelSpec:
    p: float
    field: FieldSpec
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("symbol error rate must lie in [0, 1]")


@dataclass
class CerPoint:
    p: float
    method: str
    cer: float
    stderr: float | None = None
    trials: int | None = None
    seed: int | None = None
    failures: int | None = None

    def row(self) -> str:
        se = "" if self.stderr is None else f"{self.stderr:.6g}"
        tr = "" if self.trials is None else str(self.trials)
        sd = "" if self.seed is None else str(self.seed)
        return f"{self.p:.6g},{self.method},{self.cer:.6g},{se},{tr},{sd}"


def transmit(word, channel: ChannelSpec, rng) -> np.ndarray:
    """Each symbol is replaced with probability p by one of the q-1 others."""
    field = channel.field
    word = np.asarray(word, dtype=np.uint8)
    hit = rng.random(word.shape[0]) < channel.p
    shift = rng.integers(1, field.q, size=word.shape[0]).astype(np.uint8)
    return np.where(hit, field.vadd(word, shift), word).astype(np.uint8)


# -- closed forms ------------------------------------------------------------


def binomial_tail(n: int, t: int, p: float) -> float:
    """P(more than t of n independent events of probability p)."""
    if t >= n:
        return 0.0
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    lo, lq = math.log(p), math.log1p(-p)
    terms = [math.exp(math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1) + j * lo + (n - j) * lq)
             for j in range(max(t + 1, 0), n + 1)]
    return min(1.0, math.fsum(terms))


def cer_pm1(spec: CodeSpec, p: float) -> float:
    return binomial_tail(spec.n, spec.t0, p)


def cer_pm2(spec: CodeSpec, p: float) -> float:
    # 1 - prod P_i with P_i = P(at most t0 errors among the q^(m-i) points of chart i)
    logs = 0.0
    for i in range(spec.i0):
        tail = binomial_tail(spec.q ** (spec.m - i), spec.t0, p)
        if tail >= 1.0:
            return 1.0
        logs += math.log1p(-tail)
    return -math.expm1(logs)


def cer_mdd(spec: CodeSpec, p: float) -> float:
    return binomial_tail(spec.n, spec.t_md, p)


ANALYTIC = {"PM1": cer_pm1, "PM2": cer_pm2, "MDD": cer_mdd}


def analytic(spec: CodeSpec, p: float, method: str) -> CerPoint:
    method = _method(method)
    return CerPoint(p, method, ANALYTIC[method](spec, p))


def _method(method: str) -> str:
    m = method.upper()
    if m not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return m


# -- Monte Carlo ----------------------------------------------------------------


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """PCG64 stream for one trial, derived from (seed, trial) only."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def run_trial(spec: CodeSpec, channel: ChannelSpec, trial: int, methods) -> dict:
    """Outcome (True = codeword lost) of one transmission for each method.

    PM1 and PM2 share one bounded decode: PM2 accepts any successful decode,
    PM1 additionally rejects corrections of more than t0 symbols in total.
    """
    rng = trial_rng(channel.rng_seed, trial)
    c = random_codeword(spec, rng)
    r = transmit(c, channel, rng)
    out = {}
    if "PM1" in methods or "PM2" in methods:
        dec = decode_prm(spec, r, bounded=True)
        right = dec.ok and np.array_equal(dec.codeword, c)
        out["PM2"] = not right
        out["PM1"] = not (right and int(np.count_nonzero(dec.error)) <= spec.t0)
    if "MDD" in methods:
        out["MDD"] = not np.array_equal(mdd_decode(spec, r), c)
    return {m: out[m] for m in methods}


def simulate_many(spec: CodeSpec, channel: ChannelSpec, methods, trials: int) -> dict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    methods = tuple(_method(m) for m in methods)
    lost = dict.fromkeys(methods, 0)
    for t in range(trials):
        for m, bad in run_trial(spec, channel, t, methods).items():
            lost[m] += bad
    out = {}
    for m in methods:
        est = lost[m] / trials
        out[m] = CerPoint(
            channel.p, m, est, math.sqrt(est * (1 - est) / trials), trials, channel.rng_seed, lost[m]
        )
    return out


def simulate_cer(spec: CodeSpec, channel: ChannelSpec, method: str, trials: int) -> CerPoint:
    return simulate_many(spec, channel, [method], trials)[_method(method)]


def log_grid(pmin: float, pmax: float, points: int) -> list[float]:
    if points < 1 or not 0 < pmin <= pmax <= 1:
        raise ValueError("need 0 < pmin <= pmax <= 1 and points >= 1")
    if points == 1:
        return [pmin]
    return [float(x) for x in np.geomspace(pmin, pmax, points)]
