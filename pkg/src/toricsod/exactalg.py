"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of rows of Python ints, so there is no overflow and
no floating point anywhere.  The central tool is the Smith normal form
``U @ A @ V == S``; cokernels, kernels and integer solutions are all read off
from it.

Conventions: a matrix ``A`` with ``m`` rows and ``n`` columns is the linear map
``Z^n -> Z^m`` acting on column vectors.  ``cokernel(A)`` is ``Z^m / A Z^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import Optional, Sequence

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# matrix helpers


def as_matrix(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Copy ``rows`` into a fresh list-of-lists of ints.

    ``ncols`` is only needed to give an empty matrix a column count.
    """
    out = [[int(x) for x in row] for row in rows]
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    if ncols is not None and out and len(out[0]) != ncols:
        raise ValueError("column count mismatch")
    return out


def shape(A: Matrix, ncols: int = 0) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else ncols)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Matrix, ncols: int = 0) -> Matrix:
    m, n = shape(A, ncols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError("dimension mismatch in matmul")
    ncols = len(B[0]) if B else 0
    Bt = [[B[k][j] for k in range(inner)] for j in range(ncols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def _smallest_nonzero(S: Matrix, t: int, m: int, n: int) -> Optional[tuple[int, int]]:
    best = None
    best_val = 0
    for i in range(t, m):
        row = S[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U A V == S``, ``U`` and ``V`` unimodular.

    ``S`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.  Pivots
    are chosen of smallest absolute value to keep coefficients small.
    """
    S = as_matrix(A)
    m, n = shape(S, ncols or 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        if q:
            rs, rd = S[src], S[dst]
            for j in range(n):
                if rs[j]:
                    rd[j] -= q * rs[j]
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        if q:
            for row in S:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        pos = _smallest_nonzero(S, t, m, n)
        if pos is None:
            break
        i, j = pos
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    if S[t][j]:
                        clean = False
            if not clean:
                # a remainder is now smaller than the pivot; move it in
                best = (t, t)
                for i in range(t + 1, m):
                    if S[i][t] and abs(S[i][t]) < abs(S[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if S[t][j] and abs(S[t][j]) < abs(S[best[0]][best[1]]):
                        best = (t, j)
                if best[0] != t:
                    swap_rows(t, best[0])
                elif best[1] != t:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


def diagonal(S: Matrix) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def rank(A: Sequence[Sequence[int]]) -> int:
    _, S, _ = smith_normal_form(A)
    return sum(1 for d in diagonal(S) if d)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/n_1 + ... + Z/n_t`` with ``n_1 | n_2 | ...``.

    ``projection`` maps an ambient vector (length ``ambient_dim``) to raw
    coordinates, torsion coordinates first; ``lifts`` are ambient vectors
    representing the standard generators.  Both are optional for groups built
    abstractly (from invariants only); in that case the ambient space is the
    coordinate space itself.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()
    presentation: Matrix = field(default_factory=list, compare=False, repr=False)
    projection: Matrix = field(default_factory=list, compare=False, repr=False)
    lifts: Matrix = field(default_factory=list, compare=False, repr=False)
    ambient: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Sequence[int] = ()) -> "FgAbelianGroup":
        """Abstract group; ambient coordinates are its own normal form."""
        fs = canonical_factors(factors)
        k = len(fs) + free_rank
        pres = [[0] * len(fs) for _ in range(k)]
        for i, f in enumerate(fs):
            pres[i][i] = f
        return cls(free_rank, tuple(fs), pres, identity(k), identity(k), k)

    # -- basic invariants
    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def ambient_dim(self) -> int:
        if self.ambient is not None:
            return self.ambient
        return len(self.projection[0]) if self.projection else self.ngens

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        return None if self.free_rank else self.torsion_order

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    def same_invariants(self, other: "FgAbelianGroup") -> bool:
        return (self.free_rank, self.invariant_factors) == (other.free_rank, other.invariant_factors)

    # -- elements
    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self._reduce(coords))

    def zero(self) -> "GroupElement":
        return self.element([0] * self.ngens)

    def gens(self) -> list["GroupElement"]:
        return [self.element([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def project(self, vector: Sequence[int]) -> "GroupElement":
        """Class of an ambient vector."""
        if len(vector) != self.ambient_dim:
            raise ValueError(f"expected ambient vector of length {self.ambient_dim}")
        return self.element(matvec(self.projection, vector))

    def lift(self, g: "GroupElement") -> list[int]:
        """An ambient vector projecting to ``g``."""
        out = [0] * self.ambient_dim
        for c, v in zip(g.coords, self.lifts):
            for j, x in enumerate(v):
                out[j] += c * x
        return out

    def _reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        coords = [int(c) for c in coords]
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        t = len(self.invariant_factors)
        return tuple([c % f for c, f in zip(coords[:t], self.invariant_factors)] + coords[t:])

    def torsion_part(self) -> "FgAbelianGroup":
        return FgAbelianGroup.from_invariants(0, self.invariant_factors)

    def flip_free(self, k: int) -> "FgAbelianGroup":
        """Same group with the sign of the ``k``-th free coordinate reversed."""
        t = len(self.invariant_factors)
        proj = [row[:] for row in self.projection]
        lifts = [row[:] for row in self.lifts]
        proj[t + k] = [-x for x in proj[t + k]]
        lifts[t + k] = [-x for x in lifts[t + k]]
        return FgAbelianGroup(self.free_rank, self.invariant_factors, self.presentation, proj, lifts, self.ambient)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.invariant_factors]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    """Element in normal-form coordinates: torsion residues, then free part."""

    group: FgAbelianGroup = field(compare=False, repr=False)
    coords: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group is not self.group:
            if not (isinstance(other, GroupElement) and other.group.same_invariants(self.group)):
                raise TypeError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.coords])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        return self.group.element([k * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> Optional[int]:
        """Order of the element; None if it has infinite order."""
        t = len(self.group.invariant_factors)
        if any(self.coords[t:]):
            return None
        out = 1
        for c, f in zip(self.coords, self.group.invariant_factors):
            out = lcm(out, f // gcd(c, f))
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coords": list(self.coords)}


def canonical_factors(diag: Sequence[int]) -> list[int]:
    """Invariant factors (each >= 2, divisibility chain) of a diagonal group.

    Works for arbitrary positive diagonals by re-diagonalising.
    """
    ds = [abs(int(d)) for d in diag if abs(int(d)) != 1]
    if any(d == 0 for d in ds):
        raise ValueError("zero entry: use free rank instead")
    if all(b % a == 0 for a, b in zip(ds, ds[1:])):
        return ds
    _, S, _ = smith_normal_form([[d if i == j else 0 for j in range(len(ds))] for i, d in enumerate(ds)])
    return [d for d in diagonal(S) if d > 1]


def cokernel(A: Sequence[Sequence[int]], nrows: Optional[int] = None) -> FgAbelianGroup:
    """``Z^m / A Z^n`` for an ``m x n`` matrix ``A``.

    ``nrows`` gives the ambient dimension when ``A`` has no columns, e.g.
    ``cokernel([[], []])`` is ``Z^2``; pass it for a matrix with zero rows too.
    """
    A = as_matrix(A)
    m = len(A) if A else (nrows or 0)
    if A and not A[0]:
        # no columns: nothing to quotient by
        return FgAbelianGroup(m, (), [[] for _ in range(m)], identity(m), identity(m), m)
    if m == 0:
        return FgAbelianGroup(0, (), [], [], [], 0)
    U, S, _ = smith_normal_form(A)
    d = diagonal(S)
    Uinv = inverse_unimodular(U)
    proj, lifts, factors = [], [], []
    free_proj, free_lifts = [], []
    for i in range(m):
        di = d[i] if i < len(d) else 0
        col = [Uinv[r][i] for r in range(m)]
        if di == 1:
            continue
        if di == 0:
            free_proj.append(U[i])
            free_lifts.append(col)
        else:
            factors.append(di)
            proj.append(U[i])
            lifts.append(col)
    return FgAbelianGroup(len(free_proj), tuple(factors), A, proj + free_proj, lifts + free_lifts, m)


def inverse_unimodular(U: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Z)."""
    n = len(U)
    M = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        # gcd-reduce column c below the diagonal onto row c
        while True:
            rows = [r for r in range(c, n) if M[r][c]]
            if not rows:
                raise ValueError("matrix is singular")
            piv = min(rows, key=lambda r: abs(M[r][c]))
            M[c], M[piv] = M[piv], M[c]
            done = True
            for r in range(c + 1, n):
                if M[r][c]:
                    q = M[r][c] // M[c][c]
                    M[r] = [a - q * b for a, b in zip(M[r], M[c])]
                    if M[r][c]:
                        done = False
            if done:
                break
        if abs(M[c][c]) != 1:
            raise ValueError("matrix is not unimodular")
        if M[c][c] < 0:
            M[c] = [-a for a in M[c]]
    for c in range(n - 1, -1, -1):
        for r in range(c):
            if M[r][c]:
                q = M[r][c]
                M[r] = [a - q * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of ``{x in Z^n : A x = 0}`` as the columns of the returned matrix.

    The result has ``n`` rows; with a trivial kernel it has zero columns
    (each row is empty).
    """
    A = as_matrix(A)
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    _, S, V = smith_normal_form(A)
    r = sum(1 for d in diagonal(S) if d)
    return [row[r:] for row in V]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """An integer ``x`` with ``A x == b``, or None if there is none."""
    A = as_matrix(A)
    b = [int(v) for v in b]
    if len(b) != len(A):
        raise ValueError("right-hand side length must equal the number of rows")
    if not A:
        return []
    n = len(A[0])
    if n == 0:
        return [] if not any(b) else None
    U, S, V = smith_normal_form(A)
    c = matvec(U, b)
    d = diagonal(S)
    y = [0] * n
    for i, ci in enumerate(c):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if ci:
                return None
        elif ci % di:
            return None
        else:
            y[i] = ci // di
    x = matvec(V, y)
    assert matvec(A, x) == b
    return x


def ext1_torsion(G: FgAbelianGroup) -> FgAbelianGroup:
    """``Ext^1(G, Z)``, abstractly the torsion subgroup of ``G``."""
    return G.torsion_part()


def quotient_by_element(G: FgAbelianGroup, g: GroupElement) -> FgAbelianGroup:
    """``G / <g>`` in invariant-factor form."""
    if len(g.coords) != G.ngens:
        raise ValueError("element does not belong to the group")
    k = G.ngens
    t = len(G.invariant_factors)
    rel = [[0] * (t + 1) for _ in range(k)]
    for i, f in enumerate(G.invariant_factors):
        rel[i][i] = f
    for i, c in enumerate(g.coords):
        rel[i][t] = c
    return cokernel(rel, nrows=k)


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    """Abstract direct sum in canonical form."""
    factors: list[int] = []
    free = 0
    for G in groups:
        factors.extend(G.invariant_factors)
        free += G.free_rank
    return FgAbelianGroup.from_invariants(free, canonical_factors(factors) if factors else [])


def hermite_basis(vectors: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Returns basis rows in echelon form with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis: Matrix = []
    col = 0
    while rows and col < dim:
        while True:
            nz = [r for r in rows if r[col]]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            others = []
            for r in rows:
                if r is piv:
                    continue
                if r[col]:
                    q = r[col] // piv[col]
                    r = [a - q * b for a, b in zip(r, piv)]
                if any(r):
                    others.append(r)
            if all(r[col] == 0 for r in others):
                if piv[col] < 0:
                    piv = [-a for a in piv]
                basis.append(piv)
                rows = others
                break
            rows = others + [piv]
        col += 1
    for i, row in enumerate(basis):
        p = next(j for j, a in enumerate(row) if a)
        for k in range(i):
            q = basis[k][p] // row[p]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], row)]
    return basis


def reduce_mod_lattice(x: Sequence[int], hnf: Matrix) -> list[int]:
    """Canonical representative of ``x`` modulo the lattice with basis ``hnf``.

    Only pivot coordinates are reduced (into ``[0, pivot)``), so for a
    full-rank lattice the result is the unique point of the fundamental box.
    """
    x = list(x)
    for row in hnf:
        p = next(j for j, a in enumerate(row) if a)
        q = x[p] // row[p]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x
