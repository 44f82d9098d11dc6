"""Reed-Muller and projective Reed-Muller codes: parameters, generator
matrices, encoding, duals and the chart syndrome monomials B_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb

import numpy as np

from . import linalg
from .galois import FieldSpec, as_field
from .geometry import PointList, enumerate_affine, enumerate_projective
from .monomials import (
    Polynomial,
    homogeneous_monomials,
    monomial_values,
    monomials_up_to,
)


def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or a < b:
        return 0
    return comb(a, b)


def _distance(q: int, m: int, r: int, s: int) -> int:
    # (q - s) q^(m - r - 1); the exponent is -1 only in the full-space case s = 0
    e = m - r - 1
    if e >= 0:
        return (q - s) * q**e
    return (q - s) // q


def rm_dimension(m: int, q: int, nu: int) -> int:
    """Number of monomials of degree <= nu with exponents <= q-1."""
    total = 0
    for t in range(nu + 1):
        for j in range(m + 1):
            total += (-1) ** j * comb(m, j) * _binom(t - j * q + m - 1, t - j * q)
    return total


def rm_params(m: int, q: int, nu: int) -> tuple[int, int]:
    """(k, d) of RM_nu(m, q)."""
    if not 0 <= nu <= m * (q - 1):
        raise ValueError(f"order {nu} outside 0..{m * (q - 1)}")
    r, s = divmod(nu, q - 1)
    return rm_dimension(m, q, nu), _distance(q, m, r, s)


def prm_dimension_closed_form(m: int, q: int, nu: int) -> int:
    # inner term counts degree-N monomials in m+1 variables with exponents < q,
    # N = s + 1 + t(q-1); the top index is s + m + 1 - t + (t-j)q
    r, s = divmod(nu - 1, q - 1)
    total = 0
    for t in range(r + 1):
        for j in range(m + 2):
            total += (-1) ** j * comb(m + 1, j) * _binom(s + m + 1 - t + (t - j) * q, s + 1 - t + (t - j) * q)
    return total


@dataclass(frozen=True, eq=False)
class CodeSpec:
    family: str
    m: int
    field: FieldSpec
    nu: int
    mu: int
    n: int
    k: int
    d: int
    r_prm: int | None
    s_prm: int | None
    r_rm: int
    s_rm: int
    t0: int
    t_md: int
    i0: int | None

    @property
    def q(self) -> int:
        return self.field.q

    def __eq__(self, other):
        return isinstance(other, CodeSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.family, self.m, self.field, self.nu)

    def __repr__(self):
        return f"{self.family}_{self.nu}({self.m},{self.q})"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "q": self.q,
            "p": self.field.p,
            "e": self.field.e,
            "modulus": list(self.field.modulus),
            "nu": self.nu,
            "mu": self.mu,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "r_prm": self.r_prm,
            "s_prm": self.s_prm,
            "r_rm": self.r_rm,
            "s_rm": self.s_rm,
            "t0": self.t0,
            "t_md": self.t_md,
            "i0": self.i0,
        }

    @cached_property
    def points(self) -> PointList:
        if self.family == "PRM":
            return enumerate_projective(self.m, self.field)
        return enumerate_affine(self.m, self.field)

    @cached_property
    def generator(self) -> np.ndarray:
        if self.family == "PRM":
            return prm_generator(self)
        return rm_generator(self.m, self.field, self.nu)

    def chart_sizes(self) -> list[int]:
        return [self.q ** (self.m - i) for i in range(self.m + 1)]

    def chart_capacity(self, i: int) -> int:
        """Errors always corrected in chart i: t0 before i0, everything after."""
        return self.t0 if i < self.i0 else self.q ** (self.m - i)


def prm_params(m: int, q, nu: int) -> CodeSpec:
    field = as_field(q)
    q = field.q
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 < nu <= m * (q - 1):
        raise ValueError(f"order {nu} outside 1..{m * (q - 1)}")
    mu = m * (q - 1) - nu
    n = (q ** (m + 1) - 1) // (q - 1)
    r_prm, s_prm = divmod(nu - 1, q - 1)
    r_rm, s_rm = divmod(nu, q - 1)
    d = _distance(q, m, r_prm, s_prm)
    t0 = (_distance(q, m, r_rm, s_rm) - 1) // 2
    i0 = m - (mu - 1) // (q - 1)
    return CodeSpec(
        family="PRM",
        m=m,
        field=field,
        nu=nu,
        mu=mu,
        n=n,
        k=prm_dimension_closed_form(m, q, nu),
        d=d,
        r_prm=r_prm,
        s_prm=s_prm,
        r_rm=r_rm,
        s_rm=s_rm,
        t0=t0,
        t_md=(d - 1) // 2,
        i0=i0,
    )


def rm_spec(m: int, q, nu: int) -> CodeSpec:
    field = as_field(q)
    q = field.q
    k, d = rm_params(m, q, nu)
    r_rm, s_rm = divmod(nu, q - 1)
    return CodeSpec(
        family="RM",
        m=m,
        field=field,
        nu=nu,
        mu=m * (q - 1) - nu,
        n=q**m,
        k=k,
        d=d,
        r_prm=None,
        s_prm=None,
        r_rm=r_rm,
        s_rm=s_rm,
        t0=(d - 1) // 2,
        t_md=(d - 1) // 2,
        i0=None,
    )


# -- generator matrices ------------------------------------------------------------


def prm_evaluation_matrix(m: int, field: FieldSpec, deg: int) -> np.ndarray:
    """Rows: all degree-deg monomials in X0..Xm evaluated on projective space."""
    pts = enumerate_projective(m, field).coords
    return monomial_values(field, homogeneous_monomials(m + 1, deg), pts)


def rm_evaluation_matrix(m: int, field: FieldSpec, nu: int) -> np.ndarray:
    pts = enumerate_affine(m, field).coords
    if nu < 0:
        return np.zeros((0, pts.shape[0]), dtype=np.uint8)
    return monomial_values(field, monomials_up_to(m, nu, field.q - 1), pts)


def prm_generator(spec: CodeSpec) -> np.ndarray:
    """Row-reduced echelon basis of the degree-nu evaluation code (k x n)."""
    red, _ = linalg.rref(spec.field, prm_evaluation_matrix(spec.m, spec.field, spec.nu))
    return red


def rm_generator(m: int, field: FieldSpec, nu: int) -> np.ndarray:
    mat = rm_evaluation_matrix(m, field, nu)
    if mat.shape[0] == 0:
        return mat
    return linalg.rref(field, mat)[0]


def prm_rank(spec: CodeSpec) -> int:
    return linalg.rank(spec.field, prm_evaluation_matrix(spec.m, spec.field, spec.nu))


def encode(spec: CodeSpec, message) -> np.ndarray:
    """Codeword from a message of length k, or from a homogeneous polynomial of
    degree nu in X0..Xm (PRM) / a polynomial of degree <= nu (RM)."""
    if isinstance(message, Polynomial):
        return encode_polynomial(spec, message)
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (spec.k,):
        raise ValueError(f"message must have length k = {spec.k}")
    if np.any((msg < 0) | (msg >= spec.q)):
        raise ValueError("message entries must be field elements")
    return spec.field.vecmat(msg.astype(np.uint8), spec.generator)


def encode_polynomial(spec: CodeSpec, f: Polynomial) -> np.ndarray:
    if spec.family == "PRM":
        if f.nvars != spec.m + 1:
            raise ValueError(f"expected a polynomial in X0..X{spec.m}")
        if not f.is_homogeneous(spec.nu):
            raise ValueError(f"polynomial must be homogeneous of degree {spec.nu}")
    else:
        if f.nvars != spec.m or f.degree() > spec.nu:
            raise ValueError(f"expected a polynomial of degree <= {spec.nu} in {spec.m} variables")
    return f.evaluate_many(spec.points.coords)


def random_codeword(spec: CodeSpec, rng) -> np.ndarray:
    msg = rng.integers(0, spec.q, size=spec.k).astype(np.uint8)
    return spec.field.vecmat(msg, spec.generator)


# -- chart syndromes -------------------------------------------------------------------


def dual_monomials(spec: CodeSpec, i: int) -> list[tuple]:
    """B_i reduced modulo the chart: monomials in X_{i+1}..X_m of degree
    <= mu-1 with exponents <= q-1, in increasing order."""
    if not 0 <= i <= spec.m:
        raise ValueError(f"chart index {i} out of range 0..{spec.m}")
    return monomials_up_to(spec.m - i, spec.mu - 1, spec.q - 1)


def lift_monomial(spec: CodeSpec, i: int, b: tuple) -> tuple:
    """Homogeneous degree-mu monomial X_i^(mu-|b|) X^b in X0..Xm."""
    return (0,) * i + (spec.mu - sum(b),) + tuple(b)


@lru_cache(maxsize=64)
def _lifted_values(spec: CodeSpec, i: int) -> np.ndarray:
    monos = [lift_monomial(spec, i, b) for b in dual_monomials(spec, i)]
    if not monos:
        return np.zeros((0, spec.n), dtype=np.uint8)
    return monomial_values(spec.field, monos, spec.points.coords)


def lifted_syndrome_matrix(spec: CodeSpec, i: int) -> np.ndarray:
    """h(P) for the lifted B_i monomials h (rows) and every P in P_m."""
    return _lifted_values(spec, i)


@lru_cache(maxsize=64)
def _chart_values(spec: CodeSpec, i: int) -> np.ndarray:
    chart = spec.points.coords[spec.points.chart_slice(i), i + 1 :]
    monos = dual_monomials(spec, i)
    if not monos:
        return np.zeros((0, chart.shape[0]), dtype=np.uint8)
    return monomial_values(spec.field, monos, chart)


def chart_syndrome_matrix(spec: CodeSpec, i: int) -> np.ndarray:
    """h(P) for reduced B_i monomials and P in chart i only."""
    return _chart_values(spec, i)


# -- duality -----------------------------------------------------------------------------


@dataclass
class DualReport:
    spec: CodeSpec
    case: int
    rank_code: int
    rank_dual: int
    orthogonal: bool
    violations: list

    @property
    def ok(self) -> bool:
        return self.orthogonal and self.rank_code + self.rank_dual == self.spec.n


def dual_generator(spec: CodeSpec) -> tuple[np.ndarray, int]:
    field = spec.field
    if spec.family == "RM":
        return rm_evaluation_matrix(spec.m, field, spec.mu - 1), 0
    mat = prm_evaluation_matrix(spec.m, field, spec.mu)
    if spec.nu % (spec.q - 1) == 0:
        mat = np.concatenate([np.ones((1, spec.n), dtype=np.uint8), mat], axis=0)
        return mat, 2
    return mat, 1


def dual_check(spec: CodeSpec) -> DualReport:
    field = spec.field
    gen = (
        prm_evaluation_matrix(spec.m, field, spec.nu)
        if spec.family == "PRM"
        else rm_evaluation_matrix(spec.m, field, spec.nu)
    )
    dual, case = dual_generator(spec)
    prod = field.matmul(gen, dual.T) if dual.shape[0] else np.zeros((gen.shape[0], 0), dtype=np.uint8)
    bad = [tuple(int(x) for x in ij) for ij in np.argwhere(prod != 0)]
    return DualReport(
        spec=spec,
        case=case,
        rank_code=linalg.rank(field, gen),
        rank_dual=linalg.rank(field, dual) if dual.shape[0] else 0,
        orthogonal=not bad,
        violations=bad,
    )


# -- parameter tables ----------------------------------------------------------------

# (m, q, orders) of the three published parameter tables
TABLES = {
    1: (2, 16, (5, 8, 11, 14, 17, 20, 23, 26, 29)),
    3: (2, 16, (5, 8, 11, 14, 17, 20, 23, 26, 29)),
    4: (3, 8, (2, 4, 6, 9, 12, 14, 16, 18)),
}


def parameter_table(which: int) -> list[dict]:
    """Rows of table 1 (nu, k, d) or tables 3/4 (nu, t0, t_md, difference)."""
    if which not in TABLES:
        raise ValueError(f"no table {which}; choose one of {sorted(TABLES)}")
    m, q, orders = TABLES[which]
    rows = []
    for nu in orders:
        s = prm_params(m, q, nu)
        if which == 1:
            rows.append({"nu": nu, "k": s.k, "d": s.d})
        else:
            rows.append({"nu": nu, "t0": s.t0, "t_md": s.t_md, "difference": s.t_md - s.t0})
    return rows
