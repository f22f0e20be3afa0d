"""Field-generic exact dense linear algebra over GF(p) and over Q.

Matrices over GF(p) are stored as least nonnegative residues in int64
arrays; matrices over the rationals hold `fractions.Fraction` entries in
object arrays.  Every operation is exact and deterministic.

Basis convention for tensor products: lexicographic with the left factor
varying slowest, i.e. basis vector (i, j) of X (x) Y sits at index
i * dim(Y) + j.  `Mat.kron` and every module in this package share this
convention; cross-module equality tests depend on it.

The trace here is the plain matrix trace.  For representations of a
finite group with the swap braiding the canonical pivotal structure is
the identity, so this agrees with the categorical (spherical) trace used
to define negligible morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class BudgetExceeded(Exception):
    """A computation would materialize more matrix entries than allowed."""


#: Default cap on the number of entries of any dense matrix materialized
#: by the symmetric-power and invariant-algebra routines.
DEFAULT_MAX_ENTRIES = 2**20


def check_budget(entries: int, max_entries: int | None, what: str) -> None:
    limit = DEFAULT_MAX_ENTRIES if max_entries is None else max_entries
    if entries > limit:
        raise BudgetExceeded(
            f"{what} needs {entries} matrix entries, budget is {limit}; "
            f"raise max_entries to allow this"
        )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) for a prime p, or the rationals when characteristic == 0."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 0 or p >= 2**64 or not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime < 2**64, got {p}")

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0

    def __str__(self):
        return f"GF({self.characteristic})" if self.is_modular else "Q"


RATIONALS = Field(0)

_gf_cache: dict[int, Field] = {}


def GF(p: int) -> Field:
    if p not in _gf_cache:
        _gf_cache[p] = Field(p)
    return _gf_cache[p]


# ---------------------------------------------------------------------------
# array-level kernels (int64 mod p fast path, Fraction object path)
# ---------------------------------------------------------------------------


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an int64 array mod p, plus pivot columns."""
    r = a % p
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        if lead == rows:
            break
        nz = np.nonzero(r[lead:, c])[0]
        if nz.size == 0:
            continue
        pr = lead + int(nz[0])
        if pr != lead:
            r[[lead, pr]] = r[[pr, lead]]
        inv = pow(int(r[lead, c]), -1, p)
        r[lead] = (r[lead] * inv) % p
        other = np.nonzero(r[:, c])[0]
        other = other[other != lead]
        if other.size:
            r[other] = (r[other] - np.outer(r[other, c], r[lead])) % p
        pivots.append(c)
        lead += 1
    return r, pivots


def _rref_frac(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    r = a.copy()
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    zero = Fraction(0)
    for c in range(cols):
        if lead == rows:
            break
        pr = -1
        for i in range(lead, rows):
            if r[i, c] != zero:
                pr = i
                break
        if pr < 0:
            continue
        if pr != lead:
            r[[lead, pr]] = r[[pr, lead]]
        r[lead] = r[lead] / r[lead, c]
        for i in range(rows):
            if i != lead and r[i, c] != zero:
                r[i] = r[i] - r[i, c] * r[lead]
        pivots.append(c)
        lead += 1
    return r, pivots


def _kernel_from_rref(r: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Columns spanning the null space, from a reduced echelon form."""
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    if p:
        k = np.zeros((cols, len(free)), dtype=np.int64)
    else:
        k = np.full((cols, len(free)), Fraction(0), dtype=object)
    one = 1 if p else Fraction(1)
    for t, f in enumerate(free):
        k[f, t] = one
        for row, pc in enumerate(pivots):
            v = r[row, f]
            k[pc, t] = (-v) % p if p else -v
    return k


# ---------------------------------------------------------------------------
# Mat
# ---------------------------------------------------------------------------


class Mat:
    """Dense exact matrix over GF(p) or Q."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, entries):
        self.field = field
        if field.is_modular:
            raw = np.asarray(entries)
            if raw.size and (
                np.issubdtype(raw.dtype, np.floating)
                or np.issubdtype(raw.dtype, np.complexfloating)
            ):
                raise ValueError("floating point entries are not allowed")
            a = raw.astype(np.int64)
            if a.ndim != 2:
                raise ValueError("matrix entries must be 2-dimensional")
            self.a = a % field.characteristic
        else:
            a = np.asarray(entries, dtype=object)
            if a.ndim != 2:
                raise ValueError("matrix entries must be 2-dimensional")
            self.a = np.vectorize(Fraction, otypes=[object])(a) if a.size else a
        if self.a.dtype != np.int64 and field.is_modular:
            raise ValueError("modular matrices must be integer valued")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        if field.is_modular:
            return Mat(field, np.zeros((rows, cols), dtype=np.int64))
        return Mat(field, np.full((rows, cols), Fraction(0), dtype=object))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        m = Mat.zeros(field, n, n)
        for i in range(n):
            m.a[i, i] = 1 if field.is_modular else Fraction(1)
        return m

    @staticmethod
    def hstack(mats: list["Mat"]) -> "Mat":
        f = mats[0].field
        return Mat(f, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(mats: list["Mat"]) -> "Mat":
        f = mats[0].field
        return Mat(f, np.vstack([m.a for m in mats]))

    # -- basic structure ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.a.T.copy())

    def copy(self) -> "Mat":
        return Mat(self.field, self.a.copy())

    def is_zero(self) -> bool:
        if self.field.is_modular:
            return not self.a.any()
        return all(x == 0 for x in self.a.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.a.shape == other.a.shape and (
            np.array_equal(self.a, other.a)
            if self.field.is_modular
            else all(x == y for x, y in zip(self.a.flat, other.a.flat))
        )

    def __hash__(self):
        raise TypeError("Mat is mutable, not hashable")

    def __repr__(self):
        return f"Mat({self.field}, {self.a.tolist()!r})"

    def _check_same_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        p = self.field.characteristic
        prod = self.a @ other.a
        return Mat(self.field, prod % p if p else prod)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        p = self.field.characteristic
        s = self.a + other.a
        return Mat(self.field, s % p if p else s)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        p = self.field.characteristic
        s = self.a - other.a
        return Mat(self.field, s % p if p else s)

    def __neg__(self) -> "Mat":
        p = self.field.characteristic
        return Mat(self.field, (-self.a) % p if p else -self.a)

    def scale(self, c) -> "Mat":
        p = self.field.characteristic
        if p:
            return Mat(self.field, (self.a * (int(c) % p)) % p)
        return Mat(self.field, self.a * Fraction(c))

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace requires a square matrix")
        p = self.field.characteristic
        t = sum(self.a[i, i] for i in range(self.rows))
        return int(t) % p if p else Fraction(t)

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; left factor index varies slowest."""
        self._check_same_field(other)
        p = self.field.characteristic
        k = np.kron(self.a, other.a)
        return Mat(self.field, k % p if p else k)

    # -- elimination --------------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and its pivot columns."""
        p = self.field.characteristic
        if p:
            r, piv = _rref_mod(self.a, p)
        else:
            r, piv = _rref_frac(self.a)
        return Mat(self.field, r), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Mat":
        """Columns spanning ker(self); self @ result == 0 exactly."""
        p = self.field.characteristic
        r, piv = self.rref()
        k = _kernel_from_rref(r.a, piv, p)
        return Mat(self.field, k)

    def image_basis(self) -> "Mat":
        """Columns of self forming a basis of the column span."""
        _, piv = self.rref()
        return Mat(self.field, self.a[:, piv].copy())

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse requires a square matrix")
        x = solve(self, Mat.identity(self.field, self.rows))
        if x is None:
            raise ValueError("matrix is singular")
        return x


def solve(a: Mat, b: Mat) -> Mat | None:
    """Exact solution X of a @ X = b, or None if the system is inconsistent.

    When the solution is not unique the free variables are set to zero,
    which makes the output deterministic.
    """
    a._check_same_field(b)
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    aug = Mat.hstack([a, b])
    r, piv = aug.rref()
    if any(c >= a.cols for c in piv):
        return None
    x = Mat.zeros(a.field, a.cols, b.cols)
    for row, pc in enumerate(piv):
        x.a[pc] = r.a[row, a.cols:]
    return x


def quotient_basis(v: Mat, w: Mat) -> tuple[Mat, Mat]:
    """Coset representatives and projection for span(v) / span(w).

    `v` must have independent columns (pass the identity for the ambient
    space).  Raises ValueError when span(w) is not contained in span(v).
    Returns (representatives, projection): representatives are ambient
    columns; projection maps v-coordinates onto quotient coordinates and
    kills the w-coordinates.  Quotient coordinates are read off the
    non-pivot positions of the rref of w expressed in v's basis, so the
    choice is deterministic.
    """
    v._check_same_field(w)
    c = solve(v, w)
    if c is None:
        raise ValueError("w is not contained in the span of v")
    r, piv = c.T.rref()
    nonpiv = [i for i in range(v.cols) if i not in piv]
    reps = Mat(v.field, v.a[:, nonpiv].copy())
    proj = Mat.zeros(v.field, len(nonpiv), v.cols)
    p = v.field.characteristic
    for t, f in enumerate(nonpiv):
        proj.a[t, f] = 1 if p else Fraction(1)
        for row, pc in enumerate(piv):
            val = r.a[row, f]
            proj.a[t, pc] = (-val) % p if p else -val
    return reps, proj


def nilpotent_partition(n: Mat) -> tuple[int, ...]:
    """Jordan block sizes of a nilpotent matrix, weakly decreasing.

    The number of blocks of size exactly k is
    rank(N^(k-1)) - 2 rank(N^k) + rank(N^(k+1)).  Ranks of successive
    powers are obtained by repeatedly multiplying onto a shrinking image
    basis.  Raises ValueError when the input is not nilpotent.
    """
    if n.rows != n.cols:
        raise ValueError("nilpotent_partition requires a square matrix")
    dim = n.rows
    if dim == 0:
        return ()
    ranks = [dim]
    basis = n.image_basis()
    ranks.append(basis.cols)
    while basis.cols > 0:
        if len(ranks) > dim + 1:
            raise ValueError("matrix is not nilpotent")
        nxt = (n @ basis).image_basis()
        if nxt.cols == basis.cols:
            raise ValueError("matrix is not nilpotent")
        basis = nxt
        ranks.append(basis.cols)
    parts: list[int] = []
    ranks.append(0)
    for k in range(1, len(ranks) - 1):
        count = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        parts.extend([k] * count)
    parts.sort(reverse=True)
    assert sum(parts) == dim
    return tuple(parts)
