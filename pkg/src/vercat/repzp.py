"""The category Rep_k(Z/pZ) in characteristic p.

Objects are finite dimensional modules given by the unipotent matrix of
the generator; they decompose into Jordan blocks J_1, ..., J_p and are
classified up to isomorphism by the partition of block sizes.  The
braiding is the plain swap of tensor factors.

Symmetric powers are computed by the relation-quotient definition
S^m(X) = X^(x)m / sum(im(id - swap_i)), never by the averaging
idempotent, whose denominator m! is not invertible once m >= p.  The
quotient is built one degree at a time: S^m is the cokernel of the
degree-m relations pushed into S^(m-1) (x) X, which keeps every
materialized matrix at desk scale while producing the same space as the
dense tensor-power quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlin import GF, Mat, check_budget, nilpotent_partition, quotient_basis


@dataclass(frozen=True)
class JordanType:
    """A partition of Jordan block sizes, weakly decreasing, parts <= p."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(x < 1 for x in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicity(self, k: int) -> int:
        return sum(1 for x in self.parts if x == k)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.parts) + "]"


@dataclass(frozen=True, eq=False)
class ZpModule:
    """A Z/pZ-module in characteristic p: the generator acts by `g`."""

    p: int
    dim: int
    g: Mat

    def __post_init__(self):
        if self.g.rows != self.dim or self.g.cols != self.dim:
            raise ValueError("generator matrix shape does not match dim")
        if self.g.field != GF(self.p):
            raise ValueError("generator matrix must live over GF(p)")

    def nilpotent(self) -> Mat:
        """g - 1, the nilpotent part of the generator action."""
        return self.g - Mat.identity(self.g.field, self.dim)

    def validate(self) -> None:
        """Check g^p = 1; O(p dim^3), intended for tests and user input."""
        n = self.nilpotent()
        acc = Mat.identity(self.g.field, self.dim)
        for _ in range(self.p):
            acc = acc @ n
        if not acc.is_zero():
            raise ValueError("generator is not unipotent of order dividing p")


@dataclass(frozen=True, eq=False)
class HomSpace:
    """A basis of the intertwiners source -> target."""

    source: ZpModule
    target: ZpModule
    basis: tuple[Mat, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def jordan_block(p: int, size: int) -> Mat:
    """Unipotent upper triangular Jordan block of the given size."""
    f = GF(p)
    m = Mat.identity(f, size)
    for i in range(size - 1):
        m.a[i, i + 1] = 1
    return m


def jordan_module(p: int, parts: list[int] | tuple[int, ...]) -> ZpModule:
    """Direct sum of Jordan blocks J_{parts[0]} (+) J_{parts[1]} (+) ..."""
    for x in parts:
        if not 1 <= x <= p:
            raise ValueError(f"block size {x} out of range [1, {p}]")
    dim = sum(parts)
    f = GF(p)
    g = Mat.identity(f, dim)
    off = 0
    for x in parts:
        for i in range(x - 1):
            g.a[off + i, off + i + 1] = 1
        off += x
    return ZpModule(p, dim, g)


def trivial_module(p: int, n: int = 1) -> ZpModule:
    return jordan_module(p, [1] * n)


def jordan_type(m: ZpModule) -> JordanType:
    """Partition classifying the module up to isomorphism."""
    return JordanType(nilpotent_partition(m.nilpotent()))


def _check_same_prime(a: ZpModule, b: ZpModule) -> None:
    if a.p != b.p:
        raise ValueError(f"prime mismatch: {a.p} vs {b.p}")


def tensor(a: ZpModule, b: ZpModule) -> ZpModule:
    """Tensor product; the generator acts diagonally by g_a (x) g_b."""
    _check_same_prime(a, b)
    return ZpModule(a.p, a.dim * b.dim, a.g.kron(b.g))


def direct_sum(a: ZpModule, b: ZpModule) -> ZpModule:
    _check_same_prime(a, b)
    g = Mat.zeros(a.g.field, a.dim + b.dim, a.dim + b.dim)
    g.a[: a.dim, : a.dim] = a.g.a
    g.a[a.dim :, a.dim :] = b.g.a
    return ZpModule(a.p, a.dim + b.dim, g)


def dual(a: ZpModule) -> ZpModule:
    """Dual module; the generator acts by (g^-1)^T."""
    return ZpModule(a.p, a.dim, a.g.inverse().T)


def swap_matrix(p: int, da: int, db: int) -> Mat:
    """Permutation matrix of v (x) w -> w (x) v in the shared basis order."""
    m = Mat.zeros(GF(p), da * db, da * db)
    for i in range(da):
        for j in range(db):
            m.a[j * da + i, i * db + j] = 1
    return m


def braiding(a: ZpModule, b: ZpModule) -> Mat:
    """The braiding of Rep(Z/pZ): the plain swap A (x) B -> B (x) A."""
    _check_same_prime(a, b)
    return swap_matrix(a.p, a.dim, b.dim)


def hom_space(a: ZpModule, b: ZpModule) -> HomSpace:
    """All intertwiners T with T g_a = g_b T, as a basis of matrices.

    T is flattened row-major; the intertwining condition becomes
    (I (x) g_a^T - g_b (x) I) vec(T) = 0.
    """
    _check_same_prime(a, b)
    f = a.g.field
    ib = Mat.identity(f, b.dim)
    ia = Mat.identity(f, a.dim)
    system = ib.kron(a.g.T) - b.g.kron(ia)
    ker = system.kernel_basis()
    basis = tuple(
        Mat(f, ker.a[:, t].reshape(b.dim, a.dim).copy()) for t in range(ker.cols)
    )
    return HomSpace(a, b, basis)


def fixed_points(m: ZpModule) -> Mat:
    """Basis of the invariant subspace ker(g - 1), as columns."""
    return m.nilpotent().kernel_basis()


def tensor_power_apply(a: Mat, m: int, v: Mat) -> Mat:
    """Compute (a^(x)m) @ v without materializing the Kronecker power."""
    p = a.field.characteristic
    n = a.rows
    cols = v.cols
    t = v.a.reshape((n,) * m + (cols,))
    for axis in range(m):
        t = np.tensordot(a.a, t, axes=([1], [axis]))
        t = np.moveaxis(t, 0, axis) % p
    return Mat(a.field, t.reshape(n**m, cols))


def sym_power(
    m: ZpModule, degree: int, max_entries: int | None = None
) -> tuple[ZpModule, Mat]:
    """The symmetric power S^degree(M) and the projection X^(x)degree -> S^degree.

    Returns the quotient module with its induced generator action.  The
    projection intertwines the actions: proj @ g^(x)degree = g_S @ proj.
    """
    check_budget(m.dim**degree, max_entries, f"S^{degree} of a {m.dim}-dim module")
    f = m.g.field
    p = m.p
    if degree == 0:
        return trivial_module(p, 1), Mat.identity(f, 1)
    if degree == 1:
        return m, Mat.identity(f, m.dim)

    n = m.dim
    rel = Mat.identity(f, n * n) - swap_matrix(p, n, n)
    s_prev = m  # S^(k-1)
    s_prevprev_dim = 1
    q_prev = Mat.identity(f, n)  # S^(k-1) as quotient of S^(k-2) (x) X
    proj = Mat.identity(f, n)  # X^(x)(k-1) -> S^(k-1)
    for _ in range(2, degree + 1):
        b_dim = s_prev.dim * n
        # degree-k relations pushed into S^(k-1) (x) X
        rho = q_prev.kron(Mat.identity(f, n)) @ Mat.identity(f, s_prevprev_dim).kron(rel)
        rel_img = rho.image_basis()
        reps, q = quotient_basis(Mat.identity(f, b_dim), rel_img)
        g_b = s_prev.g.kron(m.g)
        g_s = q @ g_b @ reps
        s_prevprev_dim = s_prev.dim
        s_prev = ZpModule(p, q.rows, g_s)
        q_prev = q
        # proj_k = q @ (proj_(k-1) (x) I): contract without the big kron
        q3 = q.a.reshape(q.rows, s_prevprev_dim, n)
        pr = np.einsum("itb,ta->iab", q3, proj.a).reshape(q.rows, proj.cols * n)
        proj = Mat(f, pr % p)
    return s_prev, proj
