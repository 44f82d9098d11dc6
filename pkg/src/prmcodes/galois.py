"""Table-driven arithmetic in GF(p^e) for q = p^e <= 256.

Elements are integers in ``[0, q)``: the base-``p`` digits of the integer are
the coordinates of the element in the polynomial basis ``1, x, ..., x^(e-1)``.
So ``0`` is zero, ``1`` is one, and in GF(4) built on ``x^2 + x + 1`` the value
``2`` is ``x`` (called alpha below) and ``3`` is ``x + 1 = alpha^2``.

All scalar operations accept plain ints or :class:`FieldElement`; the
``v``-prefixed operations work elementwise on numpy arrays.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

MAX_ORDER = 256


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic, coefficient lists are low-to-high
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    modulus = [c % p for c in modulus]
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(modulus, divisor, p)):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``e``, ordering by the base-p integer."""
    if e == 1:
        return (0, 1)
    for value in range(p**e, 2 * p**e):
        coeffs = [(value // p**i) % p for i in range(e)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """GF(p^e) with dense log/antilog, addition and multiplication tables."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError("extension degree must be >= 1")
        if p**e > MAX_ORDER:
            raise FieldError(f"q = {p}^{e} exceeds {MAX_ORDER}")
        if modulus is None or modulus == "default":
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if e > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.e, self.q = p, e, p**e
        self.modulus = modulus
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        values = np.arange(q)
        digits = np.stack([(values // p**i) % p for i in range(e)], axis=1)
        self.digits = digits.astype(np.int64)
        self._powers = p ** np.arange(e, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (summed @ self._powers).astype(np.uint8)
        self.neg_table = (((-digits) % p) @ self._powers).astype(np.uint8)
        self.sub_table = self.add_table[:, self.neg_table]

        def mul_scalar(a, b):
            pa = [int(c) for c in digits[a]]
            pb = [int(c) for c in digits[b]]
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(pa):
                if x:
                    for j, y in enumerate(pb):
                        prod[i + j] += x * y
            red = _poly_mod(prod, list(self.modulus), p) if e > 1 else [prod[0] % p]
            return int(np.dot(red, self._powers))

        # primitive element: smallest value whose powers exhaust the group
        self.primitive = None
        for g in range(1, q):
            seen, x = 1, g
            while x != 1:
                x = mul_scalar(x, g)
                seen += 1
            if seen == q - 1:
                self.primitive = g
                break
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = mul_scalar(x, self.primitive)
        exp[q - 1 :] = exp[: q - 1]
        self.exp_table, self.log_table = exp, log

        mul = np.zeros((q, q), dtype=np.uint8)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.uint8)
        inv[1:] = exp[(-log[nz]) % (q - 1)]
        self.inv_table = inv
        # python lists for scalar inner loops
        self.add_rows = self.add_table.tolist()
        self.mul_rows = self.mul_table.tolist()
        self.sub_rows = self.sub_table.tolist()
        self.neg_list = self.neg_table.tolist()
        self.inv_list = self.inv_table.tolist()

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __str__(self):
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"

    @property
    def char2(self) -> bool:
        return self.p == 2

    @property
    def minus_one(self) -> int:
        return self.neg_list[1]

    # -- elements ---------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, value)

    def enumerate(self) -> list[FieldElement]:
        """0, 1, then the remaining elements in increasing integer order."""
        return [FieldElement(self, v) for v in range(self.q)]

    def _v(self, a) -> int:
        if isinstance(a, FieldElement):
            if a.field != self:
                raise FieldError(f"element of {a.field} used in {self}")
            return a.value
        a = int(a)
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self}")
        return a

    # -- scalar arithmetic on encodings ------------------------------------

    def add(self, a, b) -> int:
        return self.add_rows[self._v(a)][self._v(b)]

    def sub(self, a, b) -> int:
        return self.sub_rows[self._v(a)][self._v(b)]

    def neg(self, a) -> int:
        return self.neg_list[self._v(a)]

    def mul(self, a, b) -> int:
        return self.mul_rows[self._v(a)][self._v(b)]

    def inv(self, a) -> int:
        a = self._v(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self.inv_list[a]

    def div(self, a, b) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int) -> int:
        a = self._v(a)
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 raised to a negative power")
            return 0
        return int(self.exp_table[(self.log_table[a] * k) % (self.q - 1)])

    # -- vectorised --------------------------------------------------------

    def vadd(self, a, b):
        return self.add_table[a, b]

    def vsub(self, a, b):
        return self.sub_table[a, b]

    def vneg(self, a):
        return self.neg_table[a]

    def vmul(self, a, b):
        return self.mul_table[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def vpow(self, a, k):
        """Elementwise a**k with the convention 0**0 = 1."""
        a = np.asarray(a)
        k = np.asarray(k)
        logs = self.log_table[a]
        out = self.exp_table[(np.maximum(logs, 0) * k) % (self.q - 1)]
        out = np.where(a == 0, np.where(k == 0, 1, 0), out)
        return out.astype(np.uint8)

    def sum(self, arr, axis=None):
        """Field sum of an array of encodings along ``axis``."""
        arr = np.asarray(arr)
        if self.p == 2:
            if axis is None:
                return np.bitwise_xor.reduce(arr.ravel().astype(np.uint8))
            return np.bitwise_xor.reduce(arr.astype(np.uint8), axis=axis)
        if self.e == 1:
            return (arr.astype(np.int64).sum(axis=axis) % self.p).astype(np.uint8)
        d = self.digits[arr]
        if axis is None:
            s = d.reshape(-1, self.e).sum(axis=0) % self.p
        else:
            s = d.sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return (s @ self._powers).astype(np.uint8)

    def matvec(self, a, x):
        a = np.asarray(a)
        x = np.asarray(x)
        if a.shape[1] == 0:
            return np.zeros(a.shape[0], dtype=np.uint8)
        return self.sum(self.mul_table[a, x[None, :]], axis=1)

    def vecmat(self, x, a):
        a = np.asarray(a)
        x = np.asarray(x)
        if a.shape[0] == 0:
            return np.zeros(a.shape[1], dtype=np.uint8)
        return self.sum(self.mul_table[x[:, None], a], axis=0)

    def matmul(self, a, b, chunk: int = 1 << 22):
        a = np.asarray(a)
        b = np.asarray(b)
        rows, inner = a.shape
        cols = b.shape[1]
        out = np.zeros((rows, cols), dtype=np.uint8)
        if inner == 0:
            return out
        step = max(1, chunk // max(1, inner * cols))
        for r0 in range(0, rows, step):
            blk = self.mul_table[a[r0 : r0 + step, :, None], b[None, :, :]]
            out[r0 : r0 + step] = self.sum(blk, axis=1)
        return out

    def random(self, rng, size=None, nonzero=False):
        if nonzero:
            return rng.integers(1, self.q, size=size).astype(np.uint8)
        return rng.integers(0, self.q, size=size).astype(np.uint8)


class FieldElement:
    """A value of a :class:`FieldSpec`, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        if isinstance(value, FieldElement):
            value = field._v(value)
        value = int(value)
        if not 0 <= value < field.q:
            raise FieldError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field} elements")
            return other.value
        return self.field._v(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add_rows[self.value][self._other(other)])

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub_rows[self.value][self._other(other)])

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub_rows[self._other(other)][self.value])

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul_rows[self.value][self._other(other)])

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_list[self.value])

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"


def field_new(p: int, e: int = 1, modulus="default") -> FieldSpec:
    return FieldSpec(p, e, modulus)


_FIELD_CACHE: dict = {}


def gf(q: int) -> FieldSpec:
    """Field of order ``q`` with the default modulus (cached)."""
    if q not in _FIELD_CACHE:
        for p in range(2, q + 1):
            if q % p == 0:
                break
        e, r = 0, q
        while r % p == 0:
            r //= p
            e += 1
        if r != 1:
            raise FieldError(f"{q} is not a prime power")
        _FIELD_CACHE[q] = FieldSpec(p, e)
    return _FIELD_CACHE[q]


def as_field(field_or_q) -> FieldSpec:
    if isinstance(field_or_q, FieldSpec):
        return field_or_q
    return gf(int(field_or_q))


def parse_field(text: str) -> FieldSpec:
    """Parse ``p^e`` or ``p^e:modulus-hex``.

    The hex number is the integer whose base-p digits are the modulus
    coefficients, low degree first, so ``2^2:7`` is x^2 + x + 1.
    """
    m = re.fullmatch(r"\s*(\d+)(?:\^(\d+))?(?::([0-9a-fA-F]+))?\s*", text)
    if not m:
        raise FieldError(f"bad field spec {text!r}; expected p^e or p^e:hex")
    p = int(m.group(1))
    e = int(m.group(2) or 1)
    if m.group(3) is None:
        return FieldSpec(p, e)
    value = int(m.group(3), 16)
    coeffs = []
    while value:
        coeffs.append(value % p)
        value //= p
    return FieldSpec(p, e, coeffs)


def format_field(field: FieldSpec) -> str:
    value = sum(c * field.p**i for i, c in enumerate(field.modulus))
    return f"{field.p}^{field.e}:{value:x}"
