"""Affine and projective point sets over GF(q).

Points are stored as rows of integer-encoded coordinates.  Affine spaces are
listed in odometer order (last coordinate fastest, each coordinate running
through 0, 1, 2, ..., q-1).  Projective space is the concatenation of the
charts Psi_0, Psi_1, ..., Psi_m, where Psi_i holds the points whose first
nonzero coordinate sits at index i and equals 1; each chart is listed as the
affine space of its free coordinates.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .galois import FieldSpec


@dataclass(frozen=True)
class ProjectivePoint:
    rep: tuple
    chart: int

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.rep) + ")"


@dataclass
class PointList:
    """Ordered points; ``charts`` is set for projective lists."""

    coords: np.ndarray
    projective: bool = False
    charts: np.ndarray | None = None
    _index: dict = dc_field(default=None, repr=False, compare=False)

    def __len__(self):
        return self.coords.shape[0]

    def __iter__(self):
        return (tuple(int(x) for x in row) for row in self.coords)

    def __getitem__(self, i):
        return tuple(int(x) for x in self.coords[i])

    @property
    def dim(self) -> int:
        return self.coords.shape[1] - (1 if self.projective else 0)

    def index(self, point) -> int:
        if self._index is None:
            self._index = {tuple(int(x) for x in row): k for k, row in enumerate(self.coords)}
        return self._index[tuple(int(x) for x in point)]

    def chart_slice(self, i: int) -> slice:
        if not self.projective:
            raise ValueError("affine point lists have no charts")
        m = self.dim
        q = _q_from_size(len(self), m)
        start = sum(q ** (m - j) for j in range(i))
        return slice(start, start + q ** (m - i))


def _q_from_size(n, m):
    for q in range(2, 257):
        if sum(q**j for j in range(m + 1)) == n:
            return q
    raise ValueError("not a projective point count")


def enumerate_affine(m: int, field: FieldSpec) -> PointList:
    if m < 0:
        raise ValueError("dimension must be >= 0")
    coords = np.array(list(itertools.product(range(field.q), repeat=m)), dtype=np.int64).reshape(field.q**m, m)
    return PointList(coords)


def chart_points(m: int, field: FieldSpec, i: int) -> PointList:
    """The q^(m-i) points (0:..:0:1:w_{i+1}:..:w_m) of chart i."""
    if not 0 <= i <= m:
        raise ValueError(f"chart index {i} out of range 0..{m}")
    free = enumerate_affine(m - i, field).coords
    k = free.shape[0]
    coords = np.concatenate(
        [np.zeros((k, i), dtype=np.int64), np.ones((k, 1), dtype=np.int64), free], axis=1
    )
    return PointList(coords, projective=True, charts=np.full(k, i, dtype=np.int64))


def enumerate_projective(m: int, field: FieldSpec) -> PointList:
    if m < 1:
        raise ValueError("dimension must be >= 1")
    parts = [chart_points(m, field, i) for i in range(m + 1)]
    coords = np.concatenate([p.coords for p in parts], axis=0)
    charts = np.concatenate([p.charts for p in parts])
    return PointList(coords, projective=True, charts=charts)


def projective_size(m: int, q: int) -> int:
    return (q ** (m + 1) - 1) // (q - 1)


def normalize(raw, field: FieldSpec) -> ProjectivePoint:
    """Scale a nonzero vector so that its first nonzero coordinate is 1."""
    vals = [field._v(x) for x in raw]
    for i, v in enumerate(vals):
        if v:
            inv = field.inv(v)
            rep = tuple(field.mul(inv, x) for x in vals)
            return ProjectivePoint(rep, i)
    raise ValueError("the zero vector is not a projective point")


def format_point(point, projective: bool) -> str:
    sep = ":" if projective else ","
    return "(" + sep.join(str(int(c)) for c in point) + ")"


def parse_point(text: str) -> tuple[tuple, bool]:
    m = re.fullmatch(r"\s*\(([\d\s,:]*)\)\s*", text)
    if not m:
        raise ValueError(f"bad point {text!r}")
    body = m.group(1)
    projective = ":" in body
    if projective and "," in body:
        raise ValueError(f"mixed separators in {text!r}")
    parts = [p for p in re.split("[:,]", body) if p.strip()]
    return tuple(int(p) for p in parts), projective
