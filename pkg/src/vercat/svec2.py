"""The characteristic-2 supervector category sVec_2 = Rep(k[d]/(d^2)).

Objects are GF(2) spaces with a square-zero endomorphism d; the braiding
twists the swap by the R-matrix 1 (x) 1 + d (x) d:

    c(v (x) w) = w (x) v + d(w) (x) d(v).

Commutative algebras here are d-commutative: ab + ba = d(a) d(b).
Symmetric algebras are degreewise quotients of tensor powers by the
braiding relations, with induced derivation and multiplication tables;
everything is an honest GF(2) quotient (no negligibles in sight).

The base field is exactly GF(2); nothing here needs algebraic closure.
Up to isomorphism there are two indecomposables, the unit and the
two-dimensional module W with d(x) = y, d(y) = 0.  That classification
only bounds test grids; no algorithm assumes it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .exactlin import GF, Mat, check_budget, quotient_basis

GF2 = GF(2)


@dataclass(frozen=True, eq=False)
class DModule:
    """A GF(2) space with a differential d satisfying d^2 = 0."""

    dim: int
    d: Mat

    def __post_init__(self):
        if self.d.rows != self.dim or self.d.cols != self.dim:
            raise ValueError("d must be square of size dim")
        if self.d.field != GF2:
            raise ValueError("d must live over GF(2)")
        if not (self.d @ self.d).is_zero():
            raise ValueError("d^2 must vanish")


def trivial(n: int = 1) -> DModule:
    return DModule(n, Mat.zeros(GF2, n, n))


def module_w() -> DModule:
    """The indecomposable W with basis (x, y), d(x) = y, d(y) = 0."""
    return DModule(2, Mat(GF2, [[0, 0], [1, 0]]))


def direct_sum(a: DModule, b: DModule) -> DModule:
    d = Mat.zeros(GF2, a.dim + b.dim, a.dim + b.dim)
    d.a[: a.dim, : a.dim] = a.d.a
    d.a[a.dim :, a.dim :] = b.d.a
    return DModule(a.dim + b.dim, d)


def tensor(a: DModule, b: DModule) -> DModule:
    """Tensor product; d is primitive, acting by d (x) 1 + 1 (x) d."""
    ia = Mat.identity(GF2, a.dim)
    ib = Mat.identity(GF2, b.dim)
    return DModule(a.dim * b.dim, a.d.kron(ib) + ia.kron(b.d))


def _swap(da: int, db: int) -> Mat:
    m = Mat.zeros(GF2, da * db, da * db)
    for i in range(da):
        for j in range(db):
            m.a[j * da + i, i * db + j] = 1
    return m


def braiding(a: DModule, b: DModule) -> Mat:
    """Matrix of c: A (x) B -> B (x) A, the swap twisted by d (x) d."""
    r_action = Mat.identity(GF2, a.dim * b.dim) + a.d.kron(b.d)
    return _swap(a.dim, b.dim) @ r_action


class DGradedAlgebra:
    """The symmetric algebra of a DModule, truncated in degree.

    Built degree by degree: degree m is the quotient of
    (degree m-1) (x) X by the image of the braiding relations.  Holds
    per-degree dimensions, the quotient and lift maps, the induced
    derivation, and (lazily) the multiplication maps between degrees.
    Elements of the truncated algebra are dicts degree -> coordinate
    vector; products drop components beyond the truncation.
    """

    def __init__(self, x: DModule, depth: int, max_entries: int | None = None):
        check_budget(x.dim**depth, max_entries, f"S^{depth} of a {x.dim}-dim module")
        self.x = x
        self.depth = depth
        self.dims: list[int] = [1]
        self.q: list[Mat] = [Mat.identity(GF2, 1)]
        self.lift: list[Mat] = [Mat.identity(GF2, 1)]
        self.dmat: list[Mat] = [Mat.zeros(GF2, 1, 1)]
        self._mu: dict[tuple[int, int], Mat] = {}
        if depth >= 1:
            self.dims.append(x.dim)
            self.q.append(Mat.identity(GF2, x.dim))
            self.lift.append(Mat.identity(GF2, x.dim))
            self.dmat.append(x.d.copy())
        n = x.dim
        if n and depth >= 2:
            rel = Mat.identity(GF2, n * n) + braiding(x, x)
            for m in range(2, depth + 1):
                prev_dim = self.dims[m - 1]
                prevprev_dim = self.dims[m - 2]
                rho = self.q[m - 1].kron(Mat.identity(GF2, n)) @ Mat.identity(
                    GF2, prevprev_dim
                ).kron(rel)
                reps, qm = quotient_basis(
                    Mat.identity(GF2, prev_dim * n), rho.image_basis()
                )
                d_b = self.dmat[m - 1].kron(Mat.identity(GF2, n)) + Mat.identity(
                    GF2, prev_dim
                ).kron(x.d)
                self.dims.append(qm.rows)
                self.q.append(qm)
                self.lift.append(reps)
                self.dmat.append(qm @ d_b @ reps)
        elif depth >= 2:
            for _ in range(2, depth + 1):
                self.dims.append(0)
                self.q.append(Mat.zeros(GF2, 0, 0))
                self.lift.append(Mat.zeros(GF2, 0, 0))
                self.dmat.append(Mat.zeros(GF2, 0, 0))

    def mu(self, a: int, b: int) -> Mat:
        """Multiplication map (degree a) (x) (degree b) -> degree a+b."""
        if a + b > self.depth:
            raise ValueError("product degree exceeds truncation")
        if b == 0:
            return Mat.identity(GF2, self.dims[a])
        if a == 0:
            return Mat.identity(GF2, self.dims[b])
        key = (a, b)
        if key not in self._mu:
            if b == 1:
                out = self.q[a + 1]
            else:
                prev = self.mu(a, b - 1)
                out = (
                    self.q[a + b]
                    @ prev.kron(Mat.identity(GF2, self.x.dim))
                    @ Mat.identity(GF2, self.dims[a]).kron(self.lift[b])
                )
            self._mu[key] = out
        return self._mu[key]

    # -- elements of the truncated algebra ------------------------------------

    def zero(self) -> dict[int, np.ndarray]:
        return {}

    def one(self) -> dict[int, np.ndarray]:
        return {0: np.array([1], dtype=np.int64)}

    def from_vector(self, degree: int, vec) -> dict[int, np.ndarray]:
        v = np.asarray(vec, dtype=np.int64) % 2
        return {degree: v} if v.any() else {}

    def add(self, u: dict, v: dict) -> dict:
        out = {}
        for m in set(u) | set(v):
            c = (u.get(m, 0) + v.get(m, 0)) % 2
            if np.any(c):
                out[m] = np.asarray(c, dtype=np.int64)
        return out

    def mul(self, u: dict, v: dict) -> dict:
        out: dict[int, np.ndarray] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                if a + b > self.depth:
                    continue
                prod = (self.mu(a, b).a @ np.kron(ca, cb)) % 2
                if a + b in out:
                    out[a + b] = (out[a + b] + prod) % 2
                else:
                    out[a + b] = prod
        return {m: c for m, c in out.items() if np.any(c)}

    def power(self, u: dict, k: int) -> dict:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def dmap(self, u: dict) -> dict:
        out = {}
        for m, c in u.items():
            dc = (self.dmat[m].a @ c) % 2
            if np.any(dc):
                out[m] = dc
        return out

    def equal(self, u: dict, v: dict) -> bool:
        for m in set(u) | set(v):
            cu = u.get(m)
            cv = v.get(m)
            if cu is None:
                if np.any(np.asarray(cv) % 2):
                    return False
            elif cv is None:
                if np.any(np.asarray(cu) % 2):
                    return False
            elif not np.array_equal(cu % 2, cv % 2):
                return False
        return True

    def random_element(
        self, rng: random.Random, max_degree: int, homogeneous: bool = False
    ) -> dict[int, np.ndarray]:
        out = {}
        degrees = (
            [rng.randint(0, max_degree)]
            if homogeneous
            else range(min(max_degree, self.depth) + 1)
        )
        for m in degrees:
            if self.dims[m] == 0:
                continue
            c = np.array([rng.randrange(2) for _ in range(self.dims[m])], dtype=np.int64)
            if np.any(c):
                out[m] = c
        return out


def sym_algebra(x: DModule, depth: int, max_entries: int | None = None) -> DGradedAlgebra:
    """S(X) in sVec_2, truncated at the given degree."""
    return DGradedAlgebra(x, depth, max_entries)


def injectivity_check(
    u: DModule, w: DModule, inclusion: Mat, depth: int
) -> int | None:
    """First degree where S(U) -> S(W) fails to be injective, else None.

    The inclusion must be an injective map of DModules; the induced maps
    on symmetric powers are compared degree by degree against the source
    dimensions.
    """
    if inclusion.rows != w.dim or inclusion.cols != u.dim:
        raise ValueError("inclusion shape mismatch")
    if not (inclusion @ u.d - w.d @ inclusion).is_zero():
        raise ValueError("inclusion is not an intertwiner of d")
    if inclusion.rank() != u.dim:
        raise ValueError("inclusion is not injective")
    su = sym_algebra(u, depth)
    sw = sym_algebra(w, depth)
    f = Mat.identity(GF2, 1)
    for m in range(1, depth + 1):
        if m == 1:
            f = inclusion.copy()
        else:
            f = sw.q[m] @ f.kron(inclusion) @ su.lift[m]
        if f.rank() < su.dims[m]:
            return m
    return None


def invariants_d(alg: DGradedAlgebra) -> list[Mat]:
    """Per-degree bases of the invariant part, the kernel of d.

    Subobjects isomorphic to the unit are exactly the lines killed by d,
    so the invariant part of each degree is ker(d); it is closed under
    products by the derivation rule.
    """
    return [alg.dmat[m].kernel_basis() for m in range(alg.depth + 1)]


def fourth_power_checks(
    x: DModule, depth: int, trials: int, seed: int
) -> dict[str, bool | int]:
    """Randomized verification of the fourth-power identities in S(X).

    For seeded random elements a, b (homogeneous and not), checks
    d(a)^2 = 0, d(a^4) = 0, centrality of a^4, (ab)^4 = a^4 b^4,
    (a1+...+ak)^4 = sum a_i^4, and the square rule
    (ab)^2 = a^2 b^2 + ab d(a) d(b).  Elements are sampled in degrees
    <= depth // 4 so fourth powers stay inside the truncation; the
    identities hold verbatim in the truncated quotient algebra.
    Per-trial seeds are derived as seed + trial index.
    """
    if depth < 4:
        raise ValueError("truncation must admit at least one fourth power")
    alg = sym_algebra(x, depth)
    max_deg = depth // 4
    names = [
        "d_square_zero",
        "d_of_fourth_power",
        "fourth_power_central",
        "product_fourth_power",
        "sum_fourth_power",
        "square_rule",
    ]
    results = {name: True for name in names}
    for trial in range(trials):
        rng = random.Random(seed + trial)
        a = alg.random_element(rng, max_deg, homogeneous=bool(trial % 2))
        b = alg.random_element(rng, max_deg)
        da, db = alg.dmap(a), alg.dmap(b)
        if not alg.equal(alg.mul(da, da), alg.zero()):
            results["d_square_zero"] = False
        a4 = alg.power(a, 4)
        if not alg.equal(alg.dmap(a4), alg.zero()):
            results["d_of_fourth_power"] = False
        if not alg.equal(alg.mul(a4, b), alg.mul(b, a4)):
            results["fourth_power_central"] = False
        ab4 = alg.power(alg.mul(a, b), 4)
        if not alg.equal(ab4, alg.mul(a4, alg.power(b, 4))):
            results["product_fourth_power"] = False
        terms = [alg.random_element(rng, max_deg) for _ in range(3)]
        total = alg.zero()
        for t in terms:
            total = alg.add(total, t)
        lhs = alg.power(total, 4)
        rhs = alg.zero()
        for t in terms:
            rhs = alg.add(rhs, alg.power(t, 4))
        if not alg.equal(lhs, rhs):
            results["sum_fourth_power"] = False
        ab2 = alg.power(alg.mul(a, b), 2)
        rule = alg.add(
            alg.mul(alg.power(a, 2), alg.power(b, 2)),
            alg.mul(alg.mul(a, b), alg.mul(da, db)),
        )
        if not alg.equal(ab2, rule):
            results["square_rule"] = False
    results["trials"] = trials
    results["seed"] = seed
    return results
