"""Finite fields, finite abelian groups and matrices over fields.

Elements of every alphabet are canonical integer indices in ``[0, order)``.
A group ``Z_{n_1} x ... x Z_{n_d}`` stores element ``(a_1, ..., a_d)`` as the
mixed-radix integer ``a_1 + n_1*a_2 + n_1*n_2*a_3 + ...``.  A field GF(p^r)
stores the polynomial ``c_0 + c_1 x + ... + c_{r-1} x^{r-1}`` as
``c_0 + c_1 p + ... + c_{r-1} p^{r-1}``, so its additive group is exactly the
group ``(Z_p)^r`` under the same encoding.

Multiplication in GF(p^r) is taken modulo the least monic irreducible
polynomial of degree r, where polynomials are ordered by the integer
encoding of their lower coefficients.  This makes every table reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_FIELD_ORDER = 256
MAX_GROUP_ORDER = 4096
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``q == p**r`` and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    return (p, r) if rest == 1 else None


# --- polynomial helpers over GF(p); coefficient lists, lowest degree first ---

def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        if c:
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic(degree: int, low: int, p: int) -> list[int]:
    coeffs = []
    for _ in range(degree):
        coeffs.append(low % p)
        low //= p
    return coeffs + [1]


@lru_cache(maxsize=None)
def least_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Least monic irreducible polynomial of degree r over GF(p).

    Candidates ``x^r + c_{r-1} x^{r-1} + ... + c_0`` are scanned in increasing
    order of ``sum(c_i p^i)``; the first with no monic factor of degree at
    most r/2 is returned as its coefficient tuple (lowest degree first).
    """
    if r == 1:
        return (0, 1)
    for low in range(p ** r):
        cand = _monic(r, low, p)
        if cand[0] == 0:
            continue
        reducible = False
        for d in range(1, r // 2 + 1):
            for dlow in range(p ** d):
                if _poly_mod(cand, _monic(d, dlow, p), p) == []:
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {r} over GF({p})")


@dataclass(frozen=True, eq=False)
class Alphabet:
    """A finite field or finite abelian group with integer-indexed elements.

    Use :func:`alphabet_make` (or :meth:`field` / :meth:`group`) to build one.
    Arithmetic methods accept Python ints or integer numpy arrays.
    """

    kind: str
    factors: tuple[int, ...]
    p: int = 0
    r: int = 0
    modulus: tuple[int, ...] = ()
    order: int = field(init=False)
    _add: np.ndarray | None = field(init=False, repr=False)
    _neg: np.ndarray = field(init=False, repr=False)
    _mul: np.ndarray | None = field(init=False, repr=False)
    _inv: np.ndarray | None = field(init=False, repr=False)

    def __post_init__(self):
        order = int(np.prod(self.factors))
        set_ = object.__setattr__
        set_(self, "order", order)
        elems = np.arange(order)
        digits = self.digits(elems)
        neg = self.compose(np.stack([(-d) % n for d, n in zip(digits, self.factors)]))
        neg.setflags(write=False)
        set_(self, "_neg", neg)
        add = None
        if order <= _TABLE_LIMIT:
            add = self._add_digits(elems[:, None], elems[None, :])
            add.setflags(write=False)
        set_(self, "_add", add)
        mul = inv = None
        if self.kind == "field":
            mul = self._build_mul()
            inv = np.zeros(order, dtype=np.int64)
            for a in range(1, order):
                inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
            mul.setflags(write=False)
            inv.setflags(write=False)
        set_(self, "_mul", mul)
        set_(self, "_inv", inv)

    # construction -------------------------------------------------------

    @classmethod
    def field(cls, p: int, r: int = 1) -> "Alphabet":
        return _field(p, r)

    @classmethod
    def group(cls, factors) -> "Alphabet":
        return _group(tuple(int(f) for f in factors))

    # representation -----------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind == "field"

    @property
    def name(self) -> str:
        if self.is_field:
            return f"gf{self.order}"
        return "x".join(f"z{n}" for n in self.factors)

    def __repr__(self):
        return f"Alphabet({self.name})"

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.kind == other.kind
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.kind, self.factors))

    def digits(self, a) -> np.ndarray:
        """Mixed-radix digits of ``a``; leading axis indexes the factor."""
        a = np.asarray(a, dtype=np.int64)
        out = []
        for n in self.factors:
            out.append(a % n)
            a = a // n
        return np.stack(out)

    def compose(self, digits) -> np.ndarray:
        out = np.zeros(np.shape(digits)[1:], dtype=np.int64)
        scale = 1
        for d, n in zip(digits, self.factors):
            out = out + scale * np.asarray(d, dtype=np.int64)
            scale *= n
        return out

    def _add_digits(self, a, b) -> np.ndarray:
        da, db = self.digits(a), self.digits(b)
        da, db = np.broadcast_arrays(da, db)
        return self.compose(
            np.stack([(x + y) % n for x, y, n in zip(da, db, self.factors)])
        )

    def _build_mul(self) -> np.ndarray:
        p, r, q = self.p, self.r, self.order
        if r == 1:
            e = np.arange(q)
            return (e[:, None] * e[None, :]) % p
        mod = list(self.modulus)
        table = np.zeros((q, q), dtype=np.int64)
        coeffs = [list(self.digits(a)) for a in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * r - 1)
                for i, ca in enumerate(coeffs[a]):
                    if ca:
                        for j, cb in enumerate(coeffs[b]):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                red = _poly_mod(prod, mod, p)
                v = sum(int(c) * p ** i for i, c in enumerate(red))
                table[a, b] = table[b, a] = v
        return table

    # arithmetic ---------------------------------------------------------

    def add(self, a, b):
        if self._add is not None:
            return self._add[a, b]
        return self._add_digits(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self._mul is None:
            raise TypeError(f"{self.name} is a group; multiplication is undefined")
        return self._mul[a, b]

    def inv(self, a):
        if self._inv is None:
            raise TypeError(f"{self.name} is a group; inversion is undefined")
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._inv[a]

    def sum(self, a, axis=0):
        """Group sum of an integer array along ``axis``."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if a.shape[0] == 0:
            return np.zeros(a.shape[1:], dtype=np.int64)
        if self.is_field and self.r == 1:
            return a.sum(axis=0) % self.p
        if self.is_field and self.p == 2:
            return np.bitwise_xor.reduce(a, axis=0)
        acc = a[0]
        for x in a[1:]:
            acc = self.add(acc, x)
        return np.asarray(acc)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Raw product of index arrays of shapes (n, k) and (k, m)."""
        if self.is_field and self.r == 1:
            return (a @ b) % self.p
        n, k = a.shape
        m = b.shape[1]
        if k == 0:
            return np.zeros((n, m), dtype=np.int64)
        terms = self._mul[a[:, :, None], b[None, :, :]]
        return self.sum(terms, axis=1)


@lru_cache(maxsize=None)
def _field(p: int, r: int) -> Alphabet:
    if not is_prime(p):
        raise ValueError(f"field characteristic must be prime, got {p}")
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    if p ** r > MAX_FIELD_ORDER:
        raise ValueError(f"field order {p}^{r} exceeds {MAX_FIELD_ORDER}")
    return Alphabet("field", (p,) * r, p=p, r=r, modulus=least_irreducible(p, r))


@lru_cache(maxsize=None)
def _group(factors: tuple[int, ...]) -> Alphabet:
    if not factors:
        raise ValueError("a group needs at least one cyclic factor")
    if any(n < 2 for n in factors):
        raise ValueError(f"cyclic factors must be >= 2, got {factors}")
    if int(np.prod(factors)) > MAX_GROUP_ORDER:
        raise ValueError(f"group order exceeds {MAX_GROUP_ORDER}")
    return Alphabet("group", factors)


_SPEC_RE = re.compile(r"^(gf|z)(\d+)$")


def alphabet_make(spec) -> Alphabet:
    """Build an alphabet from a spec.

    Accepted forms: ``"gf<q>"`` for the field of prime-power order q,
    ``"z<n>"`` or ``"z<a>xz<b>..."`` for a product of cyclic groups,
    ``("field", p, r)`` and ``("group", [n_1, ..., n_d])``, or an existing
    :class:`Alphabet`.
    """
    if isinstance(spec, Alphabet):
        return spec
    if isinstance(spec, tuple) and spec and spec[0] == "field":
        return Alphabet.field(*spec[1:])
    if isinstance(spec, tuple) and spec and spec[0] == "group":
        return Alphabet.group(spec[1])
    if not isinstance(spec, str):
        raise ValueError(f"unrecognised alphabet spec {spec!r}")
    text = spec.strip().lower()
    if text.startswith("gf"):
        m = _SPEC_RE.match(text)
        if not m:
            raise ValueError(f"unrecognised alphabet spec {spec!r}")
        pr = prime_power(int(m.group(2)))
        if pr is None:
            raise ValueError(f"{m.group(2)} is not a prime power")
        return Alphabet.field(*pr)
    factors = []
    for part in text.split("x"):
        m = _SPEC_RE.match(part)
        if not m or m.group(1) != "z":
            raise ValueError(f"unrecognised alphabet spec {spec!r}")
        factors.append(int(m.group(2)))
    return Alphabet.group(factors)


@dataclass(frozen=True, eq=False)
class FMatrix:
    """An immutable matrix of field-element indices."""

    field: Alphabet
    data: np.ndarray

    def __post_init__(self):
        if not self.field.is_field:
            raise TypeError("matrices are only defined over fields")
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if data.size and (data.min() < 0 or data.max() >= self.field.order):
            raise ValueError("matrix entry outside the field")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, field: Alphabet, rows: int, cols: int) -> "FMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Alphabet, n: int) -> "FMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "FMatrix":
        return FMatrix(self.field, self.data.T)

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "FMatrix") -> "FMatrix":
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return FMatrix(self.field, self.field.add(self.data, other.data))

    def __eq__(self, other):
        return (
            isinstance(other, FMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"FMatrix({self.field.name}, {self.tolist()})"


def _same_field(a: FMatrix, b: FMatrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field.name} vs {b.field.name}")


def mat_mul(a: FMatrix, b: FMatrix) -> FMatrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return FMatrix(a.field, a.field.matmul(a.data, b.data))


def solve_right(F: Alphabet, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Raw-array version of :func:`mat_solve_right`."""
    n, c = A.shape
    M = np.concatenate([A, B], axis=1).astype(np.int64)
    pivots = []
    row = 0
    for col in range(c):
        if row == n:
            break
        nz = np.flatnonzero(M[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        M[row] = F.mul(F.inv(M[row, col]), M[row])
        factors = M[:, col].copy()
        factors[row] = 0
        if factors.any():
            M = F.sub(M, F.mul(factors[:, None], M[row][None, :]))
        pivots.append(col)
        row += 1
    if M[row:, c:].any():
        return None
    X = np.zeros((c, B.shape[1]), dtype=np.int64)
    for i, col in enumerate(pivots):
        X[col] = M[i, c:]
    return X


def mat_solve_right(A: FMatrix, B: FMatrix) -> FMatrix | None:
    """Some X with ``A @ X == B``, or None when the system is inconsistent.

    Gauss-Jordan elimination taking the lowest-index nonzero row as pivot in
    each column; free variables are set to zero, so the result is unique for
    given inputs.
    """
    _same_field(A, B)
    if A.rows != B.rows:
        raise ValueError(f"row mismatch: {A.shape} vs {B.shape}")
    X = solve_right(A.field, A.data, B.data)
    return None if X is None else FMatrix(A.field, X)


def rank(F: Alphabet, A: np.ndarray) -> int:
    n, c = A.shape
    if n == 0 or c == 0:
        return 0
    M = A.astype(np.int64).copy()
    r = 0
    for col in range(c):
        nz = np.flatnonzero(M[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        M[[r, piv]] = M[[piv, r]]
        M[r] = F.mul(F.inv(M[r, col]), M[r])
        factors = M[:, col].copy()
        factors[r] = 0
        M = F.sub(M, F.mul(factors[:, None], M[r][None, :]))
        r += 1
        if r == n:
            break
    return r
