"""The Verlinde category Ver_p: the semisimple quotient of Rep(Z/pZ) by
negligible morphisms.

Two independent realizations of the tensor product of simples are kept
permanently: the closed fusion rule

    L_r (x) L_s = sum_{i=1}^{min(r,s,p-r,p-s)} L_{|r-s|+2i-1}

and the slow oracle that decomposes J_r (x) J_s in Rep(Z/pZ) and drops
the size-p Jordan blocks.  Their agreement is the central correctness
anchor of the whole artifact; the CLI exposes `--oracle` to force the
slow path.

Hom spaces in Ver_p are Hom(A, B) modulo the radical of the trace
pairing (f, u) -> tr(f u).  For a map into a single Jordan block J_j an
intertwiner is determined by its first row w (the remaining rows are
w N, w N^2, ...), and the pairing against Hom(J_j, A) reduces to
j * (w N^(j-1) v) on kernel vectors v of N^j.  All quotient-category
computations below run on that first-row representation, block by
block, which keeps them fast.

Symmetric powers inside Ver_p are computed degreewise: S^m is the
cokernel, taken in the quotient category, of the degree-m relations
pushed into S^(m-1) (x) X.  Every S^m is realized as a literal direct
sum of Jordan blocks with no size-p summand; that representative choice
is canonical throughout the package.

p = 2 is supported and degenerate: Ver_2 has the single simple L_1 and
the fusion product is trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactlin import (
    GF,
    Mat,
    _kernel_from_rref,
    _rref_mod,
    check_budget,
    quotient_basis,
    solve,
)
from .repzp import ZpModule, hom_space, jordan_block, jordan_type


# ---------------------------------------------------------------------------
# objects of the fusion ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerObject:
    """An element of the fusion ring: multiplicities of L_1, ..., L_{p-1}."""

    p: int
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.p - 1:
            raise ValueError(f"need {self.p - 1} multiplicities, got {len(self.mult)}")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    @staticmethod
    def zero(p: int) -> "VerObject":
        return VerObject(p, (0,) * (p - 1))

    @staticmethod
    def unit(p: int) -> "VerObject":
        return VerObject.simple(p, 1)

    @staticmethod
    def simple(p: int, i: int) -> "VerObject":
        if not 1 <= i <= p - 1:
            raise ValueError(f"simple index {i} out of range [1, {p - 1}]")
        m = [0] * (p - 1)
        m[i - 1] = 1
        return VerObject(p, tuple(m))

    def mult_of(self, i: int) -> int:
        return self.mult[i - 1]

    @property
    def dim(self) -> int:
        """Dimension of the canonical Jordan-block representative."""
        return sum((i + 1) * m for i, m in enumerate(self.mult))

    def categorical_dim(self) -> int:
        return self.dim % self.p

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.mult)

    def __add__(self, other: "VerObject") -> "VerObject":
        if self.p != other.p:
            raise ValueError("prime mismatch")
        return VerObject(self.p, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def scale(self, k: int) -> "VerObject":
        if k < 0:
            raise ValueError("multiplicities must stay nonnegative")
        return VerObject(self.p, tuple(k * m for m in self.mult))

    def block_sizes(self) -> tuple[int, ...]:
        """Sizes of the canonical J_p-free representative, descending."""
        out: list[int] = []
        for i in range(self.p - 1, 0, -1):
            out.extend([i] * self.mult_of(i))
        return tuple(out)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(1, self.p):
            m = self.mult_of(i)
            if m == 1:
                terms.append(f"L{i}")
            elif m > 1:
                terms.append(f"{m}*L{i}")
        return " + ".join(terms)


def fusion_rule(p: int, r: int, s: int) -> tuple[int, ...]:
    """Multiplicity vector of L_r (x) L_s by the closed formula."""
    if not (1 <= r <= p - 1 and 1 <= s <= p - 1):
        raise ValueError("simple indices out of range")
    out = [0] * (p - 1)
    for i in range(1, min(r, s, p - r, p - s) + 1):
        out[abs(r - s) + 2 * i - 1 - 1] += 1
    return tuple(out)


def fusion(a: VerObject, b: VerObject) -> VerObject:
    """Fusion product, extended bilinearly from the rule on simples."""
    if a.p != b.p:
        raise ValueError("prime mismatch")
    p = a.p
    out = np.zeros(p - 1, dtype=np.int64)
    for r in range(1, p):
        mr = a.mult_of(r)
        if mr == 0:
            continue
        for s in range(1, p):
            ms = b.mult_of(s)
            if ms == 0:
                continue
            out += mr * ms * np.asarray(fusion_rule(p, r, s), dtype=np.int64)
    return VerObject(p, tuple(int(x) for x in out))


def quotient(m: ZpModule) -> VerObject:
    """Image of a Z/pZ-module under the quotient functor to Ver_p.

    Jordan blocks of size i < p map to L_i; size-p blocks are negligible
    and are discarded.  This is the slow independent oracle for fusion.
    """
    jt = jordan_type(m)
    mult = [0] * (m.p - 1)
    for part in jt.parts:
        if part < m.p:
            mult[part - 1] += 1
    return VerObject(m.p, tuple(mult))


# ---------------------------------------------------------------------------
# hom spaces of the quotient category (generic, matrix-level)
# ---------------------------------------------------------------------------


def negligible_radical(a: ZpModule, b: ZpModule) -> list[Mat]:
    """Basis of the negligible morphisms N(a, b) inside Hom(a, b).

    f is negligible iff tr(f u) = 0 for every u: b -> a; the radical of
    that pairing is computed on hom-space bases.
    """
    fwd = hom_space(a, b).basis
    bwd = hom_space(b, a).basis
    if not fwd:
        return []
    field = GF(a.p)
    gram = Mat.zeros(field, len(fwd), max(len(bwd), 1))
    for i, f in enumerate(fwd):
        for j, u in enumerate(bwd):
            gram.a[i, j] = (f @ u).trace()
    coeffs = gram.T.kernel_basis()  # columns: coefficient vectors over fwd
    rad = []
    for t in range(coeffs.cols):
        acc = Mat.zeros(field, b.dim, a.dim)
        for i, f in enumerate(fwd):
            acc = acc + f.scale(int(coeffs.a[i, t]))
        rad.append(acc)
    return rad


@dataclass(frozen=True, eq=False)
class VerHom:
    """Hom(a, b) / N(a, b) with chosen lift matrices for the classes."""

    source: ZpModule
    target: ZpModule
    classes: tuple[Mat, ...]
    _hom_basis: tuple[Mat, ...]
    _class_proj: Mat  # hom coordinates -> class coordinates

    @property
    def dim(self) -> int:
        return len(self.classes)

    def reduce(self, f: Mat) -> tuple[int, ...]:
        """Coordinates of the class of f over the chosen class basis."""
        if not self._hom_basis:
            if not f.is_zero():
                raise ValueError("f is not an intertwiner")
            return ()
        field = f.field
        stacked = Mat(
            field,
            np.column_stack([h.a.reshape(-1) for h in self._hom_basis]),
        )
        coords = solve(stacked, Mat(field, f.a.reshape(-1, 1)))
        if coords is None:
            raise ValueError("f is not an intertwiner")
        out = self._class_proj @ coords
        return tuple(int(x) for x in out.a[:, 0])


def ver_hom(a: ZpModule, b: ZpModule) -> VerHom:
    """The hom space of Ver_p between the images of a and b."""
    fwd = hom_space(a, b).basis
    bwd = hom_space(b, a).basis
    field = GF(a.p)
    h = len(fwd)
    if h == 0:
        return VerHom(a, b, (), (), Mat.zeros(field, 0, 0))
    gram = Mat.zeros(field, h, max(len(bwd), 1))
    for i, f in enumerate(fwd):
        for j, u in enumerate(bwd):
            gram.a[i, j] = (f @ u).trace()
    rad_coeffs = gram.T.kernel_basis()  # h x r columns
    _, proj = quotient_basis(Mat.identity(field, h), rad_coeffs)
    _, piv = rad_coeffs.T.rref()
    classes = tuple(fwd[i] for i in range(h) if i not in piv)
    return VerHom(a, b, classes, tuple(fwd), proj)


# ---------------------------------------------------------------------------
# blocked modules and first-row hom classes (internal machinery)
# ---------------------------------------------------------------------------


def _matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ a) % p
    return out


class _Blocks:
    """A module presented as a direct sum of blocks; each block carries the
    global indices of its basis vectors and the local generator matrix."""

    __slots__ = ("p", "dim", "blocks")

    def __init__(self, p: int, dim: int, blocks: list[tuple[np.ndarray, np.ndarray]]):
        self.p = p
        self.dim = dim
        self.blocks = blocks

    @staticmethod
    def from_sizes(p: int, sizes: tuple[int, ...]) -> "_Blocks":
        blocks = []
        off = 0
        for s in sizes:
            blocks.append(
                (np.arange(off, off + s, dtype=np.int64), jordan_block(p, s).a)
            )
            off += s
        return _Blocks(p, off, blocks)

    def tensor(self, other: "_Blocks") -> "_Blocks":
        blocks = []
        for idx_a, g_a in self.blocks:
            for idx_b, g_b in other.blocks:
                idx = (idx_a[:, None] * other.dim + idx_b[None, :]).reshape(-1)
                blocks.append((idx, np.kron(g_a, g_b) % self.p))
        return _Blocks(self.p, self.dim * other.dim, blocks)

    @staticmethod
    def disjoint_union(parts: list["_Blocks"]) -> "_Blocks":
        p = parts[0].p
        blocks = []
        off = 0
        for part in parts:
            for idx, g in part.blocks:
                blocks.append((idx + off, g))
            off += part.dim
        return _Blocks(p, off, blocks)

    def nilpotent_full(self) -> np.ndarray:
        n = np.zeros((self.dim, self.dim), dtype=np.int64)
        for idx, g in self.blocks:
            n[np.ix_(idx, idx)] = (g - np.eye(g.shape[0], dtype=np.int64)) % self.p
        return n


def _np_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ker(a) over GF(p), on raw arrays."""
    r, piv = _rref_mod(a, p)
    return _kernel_from_rref(r, piv, p)


class _SolveData:
    """Precomputed exact solver for A x = b with A of full column rank."""

    __slots__ = ("top", "bottom", "rank")

    def __init__(self, a: np.ndarray, p: int):
        rows, cols = a.shape
        aug = np.hstack([a, np.eye(rows, dtype=np.int64)])
        r, piv = _rref_mod(aug, p)
        if len([c for c in piv if c < cols]) != cols:
            raise ValueError("matrix does not have full column rank")
        e = r[:, cols:]
        self.rank = cols
        self.top = e[:cols]
        self.bottom = e[cols:]

    def solve(self, b: np.ndarray, p: int) -> np.ndarray:
        if self.bottom.size and ((self.bottom @ b) % p).any():
            raise ValueError("inconsistent system")
        return (self.top @ b) % p


class _HomClasses:
    """Hom(B, J_j) modulo negligibles, in the first-row representation.

    `reps` holds one full-length row vector per class; `reduce` takes the
    first rows of arbitrary intertwiners into J_j and returns their class
    coordinates over `reps`.
    """

    __slots__ = ("j", "p", "reps", "_per_block", "total")

    def __init__(self, blocks: _Blocks, j: int):
        p = blocks.p
        self.j = j
        self.p = p
        rep_rows: list[np.ndarray] = []
        per_block = []
        for idx, g in blocks.blocks:
            n_loc = g.shape[0]
            nil = (g - np.eye(n_loc, dtype=np.int64)) % p
            njm1 = _matpow(nil, j - 1, p)
            nj = (njm1 @ nil) % p
            w = _np_kernel(nj.T, p).T  # rows spanning the left kernel of N^j
            ker = _np_kernel(nj, p)  # columns spanning ker N^j
            if w.shape[0] == 0 or ker.shape[1] == 0:
                per_block.append((idx, None, None, 0))
                continue
            pair = (w @ njm1 @ ker) % p  # pairing rows against kernel vectors
            _, piv = _rref_mod(pair.T, p)
            reps_local = w[piv]
            count = len(piv)
            if count:
                solver = _SolveData(pair[piv].T, p)
                njm1k = (njm1 @ ker) % p
                per_block.append((idx, njm1k, solver, count))
                scat = np.zeros((count, blocks.dim), dtype=np.int64)
                scat[:, idx] = reps_local
                rep_rows.append(scat)
            else:
                per_block.append((idx, None, None, 0))
        self._per_block = per_block
        self.reps = (
            np.vstack(rep_rows)
            if rep_rows
            else np.zeros((0, blocks.dim), dtype=np.int64)
        )
        self.total = self.reps.shape[0]

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Class coordinates of first-row vectors (t x dim) -> (t x total)."""
        t = rows.shape[0]
        out = np.zeros((t, self.total), dtype=np.int64)
        pos = 0
        for idx, njm1k, solver, count in self._per_block:
            if count == 0:
                continue
            pw = (rows[:, idx] @ njm1k) % self.p
            out[:, pos : pos + count] = solver.solve(pw.T, self.p).T
            pos += count
        return out


def _ver_cokernel(
    a_blk: _Blocks,
    b_blk: _Blocks,
    apply_phi,
    max_entries: int | None = None,
) -> tuple[tuple[int, ...], np.ndarray]:
    """Cokernel in Ver_p of the morphism class of phi: A -> B.

    `apply_phi(rows)` must return rows @ phi for a stack of row vectors
    over B; passing a callback lets callers precompose with structured
    maps without materializing them.  Returns the block sizes of the
    canonical J_p-free realization of the cokernel (descending) and the
    projection matrix B -> C representing the quotient class.  Rows of
    the projection are grouped per block, ordered [w, wN, ..., wN^(j-1)]
    for the class row w.
    """
    p = b_blk.p
    check_budget(b_blk.dim * b_blk.dim, max_entries, "cokernel source module")
    nb = b_blk.nilpotent_full()
    sizes: list[int] = []
    q_rows: list[np.ndarray] = []
    for j in range(p - 1, 0, -1):
        hb = _HomClasses(b_blk, j)
        if hb.total == 0:
            continue
        ha = _HomClasses(a_blk, j)
        if ha.total == 0 or a_blk.dim == 0:
            kernel = np.eye(hb.total, dtype=np.int64)
        else:
            check_budget(
                hb.total * a_blk.dim, max_entries, "precomposed class rows"
            )
            coords = ha.reduce(apply_phi(hb.reps) % p)
            kernel = _np_kernel(coords.T, p).T  # rows: kernels of precomposition
        for c in kernel:
            w = (c @ hb.reps) % p
            chain = np.empty((j, b_blk.dim), dtype=np.int64)
            chain[0] = w
            for k in range(1, j):
                chain[k] = (chain[k - 1] @ nb) % p
            q_rows.append(chain)
            sizes.append(j)
    q = (
        np.vstack(q_rows)
        if q_rows
        else np.zeros((0, b_blk.dim), dtype=np.int64)
    )
    return tuple(sizes), q


def _swap_np(p: int, da: int, db: int) -> np.ndarray:
    m = np.zeros((da * db, da * db), dtype=np.int64)
    for i in range(da):
        for j in range(db):
            m[j * da + i, i * db + j] = 1
    return m


# ---------------------------------------------------------------------------
# symmetric powers inside Ver_p
# ---------------------------------------------------------------------------


class SymTower:
    """Degree-by-degree realization of the symmetric algebra of X in Ver_p.

    For each degree m <= D the tower holds a literal Jordan-block
    realization V_m of S^m(X), the projection class q_m: V_(m-1) (x) X ->
    V_m, and, on demand, sections of the projections and the induced
    multiplication classes mu_(a,b): V_a (x) V_b -> V_(a+b).  Once a
    degree vanishes all higher degrees vanish (each S^m is a quotient of
    S^(m-1) (x) X), so construction stops early.
    """

    def __init__(self, x: VerObject, depth: int, max_entries: int | None = None):
        self.x = x
        self.p = x.p
        self.depth = depth
        self.max_entries = max_entries
        sizes_x = x.block_sizes()
        self.nx = sum(sizes_x)
        self.xblk = _Blocks.from_sizes(self.p, sizes_x)
        self.sizes: list[tuple[int, ...]] = [(1,)]
        self.q: list[np.ndarray | None] = [None]
        self.zero_from: int | None = None
        if depth >= 1:
            self.sizes.append(sizes_x)
            self.q.append(np.eye(self.nx, dtype=np.int64))
            if self.nx == 0:
                self.zero_from = 1
        self._rel = None
        if self.nx:
            swap = _swap_np(self.p, self.nx, self.nx)
            self._rel = (np.eye(self.nx * self.nx, dtype=np.int64) - swap) % self.p
        self._blocked_cache: dict[int, _Blocks] = {}
        self._sections: dict[int, np.ndarray] = {}
        self._mu: dict[tuple[int, int], np.ndarray] = {}
        for m in range(2, depth + 1):
            self._build_degree(m)

    def dim(self, m: int) -> int:
        return sum(self.sizes[m])

    def realized(self, m: int) -> _Blocks:
        if m not in self._blocked_cache:
            self._blocked_cache[m] = _Blocks.from_sizes(self.p, self.sizes[m])
        return self._blocked_cache[m]

    def multiplicities(self, m: int) -> VerObject:
        mult = [0] * (self.p - 1)
        for s in self.sizes[m]:
            mult[s - 1] += 1
        return VerObject(self.p, tuple(mult))

    def _build_degree(self, m: int) -> None:
        if self.zero_from is not None:
            self.sizes.append(())
            self.q.append(np.zeros((0, self.dim(m - 1) * self.nx), dtype=np.int64))
            return
        b_blk = self.realized(m - 1).tensor(self.xblk)
        a_blk = self.realized(m - 2).tensor(self.xblk).tensor(self.xblk)
        p, nx = self.p, self.nx
        q_prev = self.q[m - 1]
        dim_pp = self.dim(m - 2)
        rel = self._rel

        def apply_phi(rows: np.ndarray) -> np.ndarray:
            # rows @ [ (q_(m-1) (x) I_X) . (I (x) (id - swap)) ], contracted
            # factor by factor so the relation map is never materialized.
            t = rows.shape[0]
            r3 = rows.reshape(t, self.dim(m - 1), nx)
            out = np.einsum("tvx,vk->tkx", r3, q_prev) % p
            out = out.reshape(t, dim_pp, nx * nx)
            out = np.einsum("tuz,zy->tuy", out, rel) % p
            return out.reshape(t, dim_pp * nx * nx)

        sizes, q = _ver_cokernel(a_blk, b_blk, apply_phi, self.max_entries)
        self.sizes.append(sizes)
        self.q.append(q)
        if not sizes:
            self.zero_from = m

    # -- sections and multiplication classes --------------------------------

    def section(self, b: int) -> np.ndarray:
        """A class-level section s_b: V_b -> V_(b-1) (x) X of q_b."""
        if b in self._sections:
            return self._sections[b]
        if b == 1:
            s = np.eye(self.nx, dtype=np.int64)
            self._sections[1] = s
            return s
        p = self.p
        field = GF(p)
        b_blk = self.realized(b - 1).tensor(self.xblk)
        nb = b_blk.nilpotent_full()
        qm = self.q[b]
        s = np.zeros((b_blk.dim, self.dim(b)), dtype=np.int64)
        sizes = self.sizes[b]
        for j in sorted(set(sizes), reverse=True):
            offsets = []
            pos = 0
            for sz in sizes:
                if sz == j:
                    offsets.append(pos)
                pos += sz
            nj = _matpow(nb, j, p)
            ker = _np_kernel(nj, p)
            njm1 = _matpow(nb, j - 1, p)
            # class vector of q_b . u(v) over the size-j blocks of V_b
            mclass = ((qm @ ((njm1 @ ker) % p)) % p)[offsets, :]
            coeff = solve(
                Mat(field, mclass), Mat.identity(field, len(offsets))
            )
            if coeff is None:
                raise AssertionError("projection classes are not surjective")
            vhat = (ker @ coeff.a) % p  # one column per size-j block
            for t, o in enumerate(offsets):
                col = vhat[:, t]
                for k in range(j):
                    s[:, o + k] = (_matpow(nb, j - 1 - k, p) @ col) % p
        self._sections[b] = s
        return s

    def mu(self, a: int, b: int) -> np.ndarray:
        """Multiplication class V_a (x) V_b -> V_(a+b), degrees a+b <= depth."""
        if a + b > self.depth:
            raise ValueError("product degree exceeds the tower depth")
        if b == 0:
            return np.eye(self.dim(a), dtype=np.int64)
        if a == 0:
            return np.eye(self.dim(b), dtype=np.int64)
        key = (a, b)
        if key in self._mu:
            return self._mu[key]
        if b == 1:
            out = self.q[a + 1]
        else:
            prev = self.mu(a, b - 1)
            out = (
                self.q[a + b]
                @ np.kron(prev, np.eye(self.nx, dtype=np.int64))
                @ np.kron(np.eye(self.dim(a), dtype=np.int64), self.section(b))
            ) % self.p
        self._mu[key] = out
        return out

    def block_offsets(self, m: int, j: int) -> list[int]:
        """Offsets of the size-j literal blocks inside V_m."""
        out = []
        pos = 0
        for sz in self.sizes[m]:
            if sz == j:
                out.append(pos)
            pos += sz
        return out


def ver_sym_power(
    x: VerObject, m: int, max_entries: int | None = None
) -> VerObject:
    """S^m(X) computed inside Ver_p (not via the ambient category)."""
    tower = SymTower(x, m, max_entries)
    return tower.multiplicities(m)


def _ver_sym_power_direct(x: VerObject, m: int) -> VerObject:
    """S^m(X) by the one-shot definition: the Ver_p cokernel of the full
    relation map (+)_(i=1..m-1) (id - swap_i) on X^(x)m.  Exponential in m;
    kept as an independent cross-check for the degreewise recursion."""
    p = x.p
    if m == 0:
        return VerObject.unit(p)
    xblk = _Blocks.from_sizes(p, x.block_sizes())
    if m == 1:
        return quotient_from_blocks(xblk)
    t_blk = xblk
    for _ in range(m - 1):
        t_blk = t_blk.tensor(xblk)
    n = xblk.dim
    taus = []
    swap = _swap_np(p, n, n)
    for i in range(1, m):
        tau = np.kron(
            np.eye(n ** (i - 1), dtype=np.int64),
            np.kron(swap, np.eye(n ** (m - i - 1), dtype=np.int64)),
        )
        taus.append((np.eye(n**m, dtype=np.int64) - tau) % p)
    phi = np.hstack(taus)
    a_blk = _Blocks.disjoint_union([t_blk] * (m - 1))
    sizes, _ = _ver_cokernel(a_blk, t_blk, lambda rows: rows @ phi, None)
    mult = [0] * (p - 1)
    for s in sizes:
        mult[s - 1] += 1
    return VerObject(p, tuple(mult))


def quotient_from_blocks(blk: _Blocks) -> VerObject:
    """Semisimplification multiplicities of a blocked module."""
    sizes, _ = _ver_cokernel(
        _Blocks(blk.p, 0, []),
        blk,
        lambda rows: np.zeros((rows.shape[0], 0), dtype=np.int64),
        None,
    )
    mult = [0] * (blk.p - 1)
    for s in sizes:
        mult[s - 1] += 1
    return VerObject(blk.p, tuple(mult))


# ---------------------------------------------------------------------------
# multiplicity series of symmetric algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultSeries:
    """Degreewise multiplicities of a graded object, up to a truncation."""

    p: int
    degrees: tuple[VerObject, ...]
    finite: bool
    total: VerObject | None

    @property
    def truncation(self) -> int:
        return len(self.degrees) - 1

    def __getitem__(self, m: int) -> VerObject:
        return self.degrees[m]


def sym_alg_series(
    x: VerObject, depth: int, max_entries: int | None = None
) -> MultSeries:
    """Degrees 0..depth of S(X) in Ver_p.

    When X has no trivial summand, the first vanishing degree certifies
    all higher degrees (each S^a is a quotient of X^(x)(a-b) (x) S^b), so
    the series is flagged finite and the tail is filled with zeros.
    """
    tower = SymTower(x, depth, max_entries)
    degrees = tuple(tower.multiplicities(m) for m in range(depth + 1))
    finite = tower.zero_from is not None
    if finite:
        assert x.mult_of(1) == 0, "a trivial summand cannot vanish in S(X)"
    total = None
    if finite:
        total = VerObject.zero(x.p)
        for d in degrees:
            total = total + d
    return MultSeries(x.p, degrees, finite, total)


def series_product(s: MultSeries, t: MultSeries) -> MultSeries:
    """Degreewise Cauchy convolution in the fusion ring."""
    if s.p != t.p:
        raise ValueError("prime mismatch")
    if s.truncation != t.truncation:
        raise ValueError("truncation mismatch")
    p = s.p
    degrees = []
    for m in range(s.truncation + 1):
        acc = VerObject.zero(p)
        for a in range(m + 1):
            acc = acc + fusion(s[a], t[m - a])
        degrees.append(acc)
    finite = s.finite and t.finite
    total = None
    if finite:
        total = VerObject.zero(p)
        for d in degrees:
            total = total + d
    return MultSeries(p, tuple(degrees), finite, total)


def poly_factor_check(
    s: MultSeries, n: int
) -> tuple[bool, VerObject | None]:
    """Test whether s factors as (series of k[x_1..x_n]) * (finite series).

    Deconvolves degree by degree; the polynomial factor contributes
    binom(n+m-1, m) copies of the unit in degree m.  Multiplicities live
    in a free commutative monoid, so any negative intermediate
    coefficient fails the check immediately.  Passing requires the
    quotient series to vanish from some degree on through the truncation.
    Returns (passes, Y) with Y the sum of the quotient series.
    """
    p = s.p
    depth = s.truncation
    quot: list[np.ndarray] = []
    for m in range(depth + 1):
        coeff = np.asarray(s[m].mult, dtype=object)
        for k in range(1, m + 1):
            coeff = coeff - math.comb(n + k - 1, k) * quot[m - k]
        if any(c < 0 for c in coeff):
            return False, None
        quot.append(coeff)
    nonzero = [m for m, c in enumerate(quot) if any(x != 0 for x in c)]
    last = nonzero[-1] if nonzero else 0
    if last >= depth:
        return False, None  # no certified zero tail within the truncation
    first_zero = next(m for m in range(depth + 1) if m not in nonzero)
    if any(m > first_zero for m in nonzero):
        return False, None  # a valid S(Z) series cannot restart after a zero
    total = VerObject.zero(p)
    for c in quot:
        total = total + VerObject(p, tuple(int(x) for x in c))
    return True, total
