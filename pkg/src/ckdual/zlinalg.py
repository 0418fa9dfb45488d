"""Exact integer linear algebra: Smith normal form, kernels, cokernels.

Everything here runs over Python's arbitrary-precision integers; there is no
floating point in this module.  Intermediate Smith-form entries can grow far
beyond machine words, and a silent overflow would corrupt the K-groups
computed from these presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular matrix of exact integers."""

    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        data = tuple(tuple(int(e) for e in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                row.append(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)))
            out.append(tuple(row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = S with U, V unimodular and S diagonal with a divisibility chain."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list:
        return [self.S.entry(i, i) for i in range(min(self.S.rows, self.S.cols))]


@dataclass(frozen=True)
class FGAbelianGroup:
    """A finitely generated abelian group in invariant-factor form.

    free_rank copies of Z plus Z/d_1 + ... + Z/d_t with every d_i >= 2 and
    d_i | d_{i+1}.  Factors equal to 1 are never stored.
    """

    free_rank: int
    torsion: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be non-negative")
        prev = 1
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
            if d % prev != 0:
                raise ValueError("torsion factors must form a divisibility chain")
            prev = d

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite group has no order")
        o = 1
        for d in self.torsion:
            o *= d
        return o

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _pivot(s, t, rows, cols):
    """Smallest nonzero absolute value in the trailing submatrix, row-major tie-break."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = s[i][j]
            if v and (best is None or abs(v) < abs(s[best[0]][best[1]])):
                best = (i, j)
    return best


def _swap_rows(s, u, a, b):
    if a != b:
        s[a], s[b] = s[b], s[a]
        u[a], u[b] = u[b], u[a]


def _swap_cols(s, v, a, b):
    if a != b:
        for row in s:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]


def _add_row(s, u, dst, src, c):
    # row dst += c * row src
    sd, ss = s[dst], s[src]
    for j in range(len(sd)):
        sd[j] += c * ss[j]
    ud, us = u[dst], u[src]
    for j in range(len(ud)):
        ud[j] += c * us[j]


def _add_col(s, v, dst, src, c):
    for row in s:
        row[dst] += c * row[src]
    for row in v:
        row[dst] += c * row[src]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Diagonalize over Z by elementary (unimodular) row and column operations.

    Deterministic: the pivot is always the entry of smallest nonzero absolute
    value in the active submatrix, ties broken in row-major order.  The
    diagonal is made non-negative and satisfies d_i | d_{i+1}.
    """
    rows, cols = m.rows, m.cols
    s = m.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()
    t = 0
    while t < min(rows, cols):
        piv = _pivot(s, t, rows, cols)
        if piv is None:
            break
        _swap_rows(s, u, t, piv[0])
        _swap_cols(s, v, t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    if q:
                        _add_row(s, u, i, t, -q)
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    if q:
                        _add_col(s, v, j, t, -q)
                    if s[t][j]:
                        dirty = True
            if not dirty:
                break
            # leftover remainders are strictly smaller than the pivot; re-center
            piv = _pivot(s, t, rows, cols)
            _swap_rows(s, u, t, piv[0])
            _swap_cols(s, v, t, piv[1])
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            # fold the offending row into row t so the next pivot divides it
            _add_row(s, u, t, bad, 1)
            continue
        if s[t][t] < 0:
            for j in range(cols):
                s[t][j] = -s[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1
    return SmithForm(IntMatrix.from_rows(u) if rows else IntMatrix(0, 0, ()),
                     IntMatrix.from_rows(s) if rows else IntMatrix(0, cols, ()),
                     IntMatrix.from_rows(v) if cols else IntMatrix(0, 0, ()))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(m: IntMatrix) -> list:
    """A Z-basis of the integer kernel {v : Mv = 0}, as tuples.

    Basis vectors are the columns of V (from the Smith form) that pair with a
    zero diagonal entry; each is primitive because V is unimodular.  Empty
    list when the kernel is trivial.
    """
    snf = smith_normal_form(m)
    diag = snf.diagonal()
    basis = []
    for j in range(m.cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append(tuple(snf.V.entry(i, j) for i in range(m.cols)))
    return basis


def cokernel(m: IntMatrix, ambient_rank: int) -> FGAbelianGroup:
    """The group Z^rows / image(M) via the invariant factors of the Smith form."""
    if m.rows != ambient_rank:
        raise ValueError(f"matrix has {m.rows} rows, expected ambient rank {ambient_rank}")
    diag = smith_normal_form(m).diagonal()
    nonzero = [d for d in diag if d]
    torsion = tuple(d for d in nonzero if d >= 2)
    return FGAbelianGroup(m.rows - len(nonzero), torsion)
