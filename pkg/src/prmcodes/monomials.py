"""Monomials, the graded order used throughout, sparse polynomials over GF(q),
division by a list of polynomials, footprints and vanishing ideals.

A monomial is a tuple of exponents.  Position 0 of the tuple is the lowest
variable of the context (``X0`` for projective work, ``X1`` for affine work,
``X_{i+1}`` inside chart i); ``offset`` only affects how variables are named.

Order: total degree first, then the exponents compared from the highest
variable down, where the first difference decides and the smaller exponent
is the smaller monomial.  In three variables this gives
1 < X1 < X2 < X3 < X1^2 < X1X2 < X2^2 < X1X3 < ...
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .galois import FieldSpec

LESS, EQUAL, GREATER = -1, 0, 1


class GradedOrder:
    """The graded order described in the module docstring."""

    name = "graded"

    @staticmethod
    def key(a):
        return (sum(a), a[::-1])

    def compare(self, a, b) -> int:
        return compare(a, b)

    def __repr__(self):
        return "GradedOrder()"


GRADED = GradedOrder()


def order_key(a):
    return (sum(a), a[::-1])


def compare(a, b, order=GRADED) -> int:
    if len(a) != len(b):
        raise ValueError(f"monomials have {len(a)} and {len(b)} variables")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return LESS if ka < kb else GREATER if ka > kb else EQUAL


def sort_monomials(monos):
    return sorted(monos, key=order_key)


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomials_up_to(nvars: int, max_deg: int, max_exp: int | None = None):
    """All monomials of degree <= max_deg (exponents <= max_exp), sorted."""
    if nvars == 0:
        return [()] if max_deg >= 0 else []
    top = max_deg if max_exp is None else min(max_deg, max_exp)
    out = [a for a in itertools.product(range(top + 1), repeat=nvars) if sum(a) <= max_deg]
    return sort_monomials(out)


def box_monomials(nvars: int, q: int):
    """The set M of monomials with every exponent <= q-1, sorted."""
    return sort_monomials(itertools.product(range(q), repeat=nvars))


def homogeneous_monomials(nvars: int, deg: int):
    return sort_monomials(a for a in itertools.product(range(deg + 1), repeat=nvars) if sum(a) == deg)


class Polynomial:
    """Sparse polynomial: dict monomial -> nonzero coefficient (int encoding)."""

    __slots__ = ("field", "nvars", "terms", "offset")

    def __init__(self, field: FieldSpec, nvars: int, terms=None, offset: int = 1):
        self.field = field
        self.nvars = nvars
        self.offset = offset
        self.terms = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} variables")
            c = field._v(c)
            if c:
                self.terms[mono] = field.add(self.terms.get(mono, 0), c)
                if not self.terms[mono]:
                    del self.terms[mono]

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, field, nvars, c=1, offset=1):
        return cls(field, nvars, {(0,) * nvars: c}, offset)

    @classmethod
    def monomial(cls, field, mono, c=1, offset=1):
        return cls(field, len(mono), {tuple(mono): c}, offset)

    @classmethod
    def variable(cls, field, nvars, j, offset=1):
        """The variable at tuple position j."""
        mono = [0] * nvars
        mono[j] = 1
        return cls(field, nvars, {tuple(mono): 1}, offset)

    def _new(self, terms):
        p = Polynomial(self.field, self.nvars, offset=self.offset)
        p.terms = terms
        return p

    def copy(self):
        return self._new(dict(self.terms))

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self):
        return sort_monomials(self.terms)

    def lm(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key)

    def lc(self) -> int:
        return self.terms[self.lm()]

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_homogeneous(self, deg=None) -> bool:
        degs = {sum(a) for a in self.terms}
        if deg is not None:
            return degs <= {deg}
        return len(degs) <= 1

    def coeff(self, mono) -> int:
        return self.terms.get(tuple(mono), 0)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        add = self.field.add_rows
        for mono, c in other.terms.items():
            v = add[out.get(mono, 0)][c]
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return self._new(out)

    def __neg__(self):
        neg = self.field.neg_list
        return self._new({a: neg[c] for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field._v(c)
        if c == 0:
            return self._new({})
        row = self.field.mul_rows[c]
        return self._new({a: row[v] for a, v in self.terms.items()})

    def shift(self, mono):
        """Multiply by the monomial ``mono``."""
        return self._new({mono_mul(a, mono): c for a, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out = self._new({})
        for a, c in other.terms.items():
            out = out + self.shift(a).scale(c)
        return out

    __rmul__ = __mul__

    def monic(self):
        return self.scale(self.field.inv(self.lc()))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- evaluation --------------------------------------------------------------

    def __call__(self, point):
        return evaluate(self, point)

    def evaluate_many(self, points) -> np.ndarray:
        """Values at every row of an integer array of points."""
        return evaluate_many(self, points)

    # -- text --------------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def evaluate(f: Polynomial, point) -> int:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    field = f.field
    pt = [field._v(x) for x in point]
    total = 0
    for mono, c in f.terms.items():
        v = c
        for x, k in zip(pt, mono):
            if k:
                v = field.mul_rows[v][field.pow(x, k)]
        total = field.add_rows[total][v]
    return total


def power_table(field: FieldSpec, points, max_exp: int) -> np.ndarray:
    """pw[j, k, P] = points[P, j] ** k for k <= max_exp (0**0 = 1)."""
    points = np.asarray(points, dtype=np.int64).reshape(len(points), -1)
    ks = np.arange(max_exp + 1)
    return np.stack([field.vpow(points[:, j][None, :], ks[:, None]) for j in range(points.shape[1])])


def monomial_values(field: FieldSpec, monos, points, pw=None) -> np.ndarray:
    """Matrix of h(P) for h in monos (rows) and P in points (columns)."""
    points = np.asarray(points, dtype=np.int64)
    monos = np.asarray(list(monos), dtype=np.int64).reshape(len(monos), -1)
    npts = points.shape[0]
    if monos.shape[1] == 0:
        return np.ones((monos.shape[0], npts), dtype=np.uint8)
    if pw is None:
        pw = power_table(field, points, int(monos.max(initial=0)))
    out = np.ones((monos.shape[0], npts), dtype=np.uint8)
    for j in range(monos.shape[1]):
        out = field.mul_table[out, pw[j][monos[:, j]]]
    return out


def evaluate_many(f: Polynomial, points) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64).reshape(-1, f.nvars)
    if not f.terms:
        return np.zeros(points.shape[0], dtype=np.uint8)
    monos = list(f.terms)
    vals = monomial_values(f.field, monos, points)
    coefs = np.array([f.terms[a] for a in monos], dtype=np.uint8)
    return f.field.sum(f.field.mul_table[coefs[:, None], vals], axis=0)


# -- division and Groebner bases ------------------------------------------------


class GroebnerSet:
    """An ordered list of polynomials, used as a Groebner basis."""

    def __init__(self, generators, order=GRADED):
        self.generators = list(generators)
        self.order = order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def leading_monomials(self):
        return [g.lm() for g in self.generators]

    def as_set(self):
        return {frozenset(g.terms.items()) for g in self.generators}

    def __repr__(self):
        return "GroebnerSet([" + ", ".join(str(g) for g in self.generators) + "])"


def divide(g: Polynomial, basis) -> tuple[Polynomial, bool]:
    """Remainder of g on division by ``basis`` and whether g was already reduced.

    When several generators have a leading monomial dividing the current term
    the first one in the list is used.
    """
    gens = [b for b in basis if not b.is_zero()]
    lms = [b.lm() for b in gens]
    invs = [g.field.inv(b.lc()) for b in gens]
    field = g.field
    work = dict(g.terms)
    rem = {}
    normal = True
    while work:
        mono = max(work, key=order_key)
        c = work.pop(mono)
        for b, lm, inv in zip(gens, lms, invs):
            if divides(lm, mono):
                normal = False
                factor = field.mul_rows[c][inv]
                shift = mono_div(mono, lm)
                for a, bc in b.terms.items():
                    if a == lm:
                        continue
                    t = mono_mul(a, shift)
                    v = field.sub_rows[work.get(t, 0)][field.mul_rows[factor][bc]]
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[mono] = c
    return g._new(rem), normal


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lm(), g.lm()
    lcm = tuple(max(x, y) for x, y in zip(lf, lg))
    return f.monic().shift(mono_div(lcm, lf)) - g.monic().shift(mono_div(lcm, lg))


def is_groebner(basis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = [b for b in basis if not b.is_zero()]
    for f, g in itertools.combinations(gens, 2):
        if not divide(s_polynomial(f, g), gens)[0].is_zero():
            return False
    return True


def is_autoreduced(basis) -> bool:
    gens = list(basis)
    for i, g in enumerate(gens):
        lm = g.lm()
        for j, h in enumerate(gens):
            if i != j and any(divides(lm, a) for a in h.terms):
                return False
    return True


def reduced_basis(gens) -> list[Polynomial]:
    """Minimal, monic, fully interreduced version of a Groebner basis, sorted by LM."""
    gens = [g.monic() for g in gens if not g.is_zero()]
    gens.sort(key=lambda g: order_key(g.lm()))
    minimal = []
    for g in gens:
        lm = g.lm()
        if not any(divides(h.lm(), lm) for h in minimal):
            minimal = [h for h in minimal if not divides(lm, h.lm())]
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lm = g.lm()
        rest = g._new({a: c for a, c in g.terms.items() if a != lm})
        r, _ = divide(rest, others)
        out.append(r + Polynomial.monomial(g.field, lm, 1, g.offset))
    out.sort(key=lambda g: order_key(g.lm()))
    return out


def footprint(basis, q: int | None = None, nvars: int | None = None):
    """Monomials not divisible by any leading monomial, sorted.

    The basis must contain a pure power of every variable among its leading
    monomials; otherwise the footprint is infinite and ValueError is raised.
    ``q`` additionally caps exponents at q-1 (the set M).
    """
    gens = [g for g in basis if not g.is_zero()]
    if nvars is None:
        if not gens:
            raise ValueError("cannot infer the number of variables of an empty basis")
        nvars = gens[0].nvars
    lms = [g.lm() for g in gens]
    bounds = []
    for j in range(nvars):
        pure = [lm[j] for lm in lms if all(x == 0 for k, x in enumerate(lm) if k != j)]
        if pure:
            bounds.append(min(pure))
        elif q is not None:
            bounds.append(q)
        else:
            raise ValueError(f"footprint is infinite in variable {j}")
    if q is not None:
        bounds = [min(b, q) for b in bounds]
    out = [a for a in itertools.product(*[range(b) for b in bounds]) if not any(divides(lm, a) for lm in lms)]
    return sort_monomials(out)


def vanishing_ideal(field: FieldSpec, points, nvars: int, offset: int = 1) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal of a finite point set.

    Buchberger-Moeller: walk monomials in increasing order, keep those whose
    value vectors are independent of the earlier kept ones; each dependent
    monomial not divisible by an earlier leading monomial gives a generator.
    """
    points = np.asarray(points, dtype=np.int64).reshape(-1, nvars)
    npts = points.shape[0]
    if npts == 0:
        return [Polynomial.constant(field, nvars, 1, offset)]
    q = field.q
    cand = box_monomials(nvars, q + 1)
    vals = monomial_values(field, cand, points)
    # incremental elimination: echelon rows with pivot column and the combination
    # (over kept monomials) that produced them
    echelon = []  # (pivot, row, combo) with combo a dict kept-index -> coef
    kept = []
    lms = []
    gens = []
    mul, sub, inv = field.mul_table, field.sub_table, field.inv_table
    for idx, mono in enumerate(cand):
        if any(divides(lm, mono) for lm in lms):
            continue
        row = vals[idx].copy()
        combo = np.zeros(npts + 1, dtype=np.uint8)
        combo[len(kept)] = 1  # slot for the new monomial
        for pivot, erow, ecombo in echelon:
            c = row[pivot]
            if c:
                row = sub[row, mul[c, erow]]
                combo = sub[combo, mul[c, ecombo]]
        nz = np.nonzero(row)[0]
        if nz.size:
            pivot = nz[0]
            scale = inv[row[pivot]]
            echelon.append((pivot, mul[scale, row], mul[scale, combo]))
            kept.append(mono)
        else:
            # combo . (kept monomials + this one) vanishes on the points
            terms = {mono: combo[len(kept)]}
            for k, kmono in enumerate(kept):
                if combo[k]:
                    terms[kmono] = combo[k]
            gens.append(Polynomial(field, nvars, terms, offset).monic())
            lms.append(mono)
    return reduced_basis(gens)


# -- text format -------------------------------------------------------------------

_TERM = re.compile(r"^(?:(\d+)\*?)?((?:X\d+(?:\^\d+)?\*?)*)$")


def format_polynomial(f: Polynomial) -> str:
    """``coef*X0^a0*X1^a1`` terms joined by ``+``, highest monomial first."""
    if not f.terms:
        return "0"
    parts = []
    for mono in sorted(f.terms, key=order_key, reverse=True):
        c = f.terms[mono]
        factors = []
        for j, k in enumerate(mono):
            if k == 1:
                factors.append(f"X{j + f.offset}")
            elif k > 1:
                factors.append(f"X{j + f.offset}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return "+".join(parts)


def parse_polynomial(text: str, field: FieldSpec, nvars: int, offset: int = 1) -> Polynomial:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return Polynomial(field, nvars, offset=offset)
    out = Polynomial(field, nvars, offset=offset)
    for term in text.split("+"):
        if not term:
            raise ValueError(f"empty term in {text!r}")
        m = _TERM.match(term)
        if not m or (m.group(1) is None and not m.group(2)) or term.endswith("*"):
            raise ValueError(f"cannot parse term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        mono = [0] * nvars
        for var, exp in re.findall(r"X(\d+)(?:\^(\d+))?", m.group(2) or ""):
            j = int(var) - offset
            if not 0 <= j < nvars:
                raise ValueError(f"variable X{var} out of range")
            mono[j] += int(exp) if exp else 1
        out = out + Polynomial(field, nvars, {tuple(mono): c}, offset)
    return out
