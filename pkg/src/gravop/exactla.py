"""Exact integer linear algebra.

Everything here works over Z with Python integers; ranks and kernels are
taken over Q. The workhorse is :class:`Echelon`, a sparse fraction-free
row echelon form whose rows are kept primitive (content 1), which keeps
entries small on the very sparse relation matrices the rest of the
package produces. Dense Bareiss elimination is kept alongside as an
independent check and for determinants.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

SparseVec = dict  # column index -> nonzero int


class IntegralityError(ArithmeticError):
    """A change of basis that should be integral produced a fraction."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if any(not isinstance(x, int) for x in self.entries):
            raise TypeError("IntMatrix entries must be int")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)]
             for j in range(self.cols)],
            cols=self.rows,
        )

    def sparse_rows(self) -> list[SparseVec]:
        return [{j: x for j, x in enumerate(self.row(i)) if x} for i in range(self.rows)]

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows)]


def _content(v: Mapping[int, int]) -> int:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


def primitive(v: Mapping[int, int]) -> SparseVec:
    """Divide out the content and make the leading entry positive."""
    if not v:
        return {}
    g = _content(v)
    if v[min(v)] < 0:
        g = -g
    return {j: x // g for j, x in v.items()}


class Echelon:
    """Incremental sparse row echelon form over Z.

    Each stored row is primitive with a positive leading entry; rows are
    indexed by their leading (smallest) column. Reduction is
    fraction-free: ``v <- p*v - v[c]*row`` followed by content removal.
    """

    def __init__(self):
        self.pivots: dict[int, SparseVec] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, int]) -> SparseVec:
        """Return a primitive vector equal, up to a nonzero scalar, to
        ``vec`` minus its projection onto the row span. Zero iff in span."""
        v = {j: x for j, x in vec.items() if x}
        if not self.pivots:
            return primitive(v)
        heap = [j for j in v if j in self.pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            row = self.pivots[c]
            p = row[c]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            if mp != 1:
                for j in v:
                    v[j] *= mp
            for j, x in row.items():
                y = v.get(j, 0) - ma * x
                if y:
                    if j not in v and j in self.pivots:
                        heapq.heappush(heap, j)
                    v[j] = y
                else:
                    v.pop(j, None)
            if v:
                g = _content(v)
                if g > 1:
                    for j in v:
                        v[j] //= g
        return primitive(v)

    def add(self, vec: Mapping[int, int]) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(vec)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)

    def rref_rows(self) -> dict[int, SparseVec]:
        """Fully reduced integer echelon form: each pivot row vanishes in
        every other pivot column."""
        rows = {c: dict(r) for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            prow = rows[c]
            p = prow[c]
            for c2, r in rows.items():
                if c2 == c or c not in r:
                    continue
                a = r[c]
                g = gcd(p, a)
                mp, ma = p // g, a // g
                new = {j: x * mp for j, x in r.items()}
                for j, x in prow.items():
                    y = new.get(j, 0) - ma * x
                    if y:
                        new[j] = y
                    else:
                        new.pop(j, None)
                rows[c2] = primitive(new)
        return rows


def echelon_of(rows: Iterable[Mapping[int, int]]) -> Echelon:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech


def _as_sparse_rows(m) -> tuple[list[SparseVec], int]:
    if isinstance(m, IntMatrix):
        return m.sparse_rows(), m.cols
    raise TypeError(f"expected IntMatrix, got {type(m).__name__}")


def rank(m: IntMatrix) -> int:
    rows, _ = _as_sparse_rows(m)
    return echelon_of(rows).rank


def sparse_rank(rows: Iterable[Mapping[int, int]]) -> int:
    return echelon_of(rows).rank


def kernel_basis_sparse(rows: Iterable[Mapping[int, int]], cols: int) -> list[list[int]]:
    rref = echelon_of(rows).rref_rows()
    pivot_cols = set(rref)
    basis = []
    for f in range(cols):
        if f in pivot_cols:
            continue
        # v[f] = L, v[c] = -row_c[f] * L / row_c[c]
        involved = [(c, r) for c, r in rref.items() if f in r]
        lcm = 1
        for c, r in involved:
            p = r[c]
            lcm = lcm * p // gcd(lcm, p)
        v = {f: lcm}
        for c, r in involved:
            v[c] = -r[f] * (lcm // r[c])
        v = primitive(v)
        basis.append([v.get(j, 0) for j in range(cols)])
    return basis


def kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Primitive integer basis of the rational null space of ``m``."""
    rows, cols = _as_sparse_rows(m)
    return kernel_basis_sparse(rows, cols)


def in_span(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    n = len(v)
    if any(len(b) != n for b in basis):
        raise ValueError("all vectors must have the same length")
    ech = echelon_of({j: x for j, x in enumerate(b) if x} for b in basis)
    return ech.contains({j: x for j, x in enumerate(v) if x})


def solve_many(
    vectors: Sequence[Sequence[int]],
    basis: Sequence[Sequence[int]],
    *,
    integral: bool = False,
) -> list[list[Fraction] | None]:
    """Coefficients expressing each vector in the independent ``basis``.

    Entries are None for vectors outside the span. With ``integral=True`` a
    non-integral solution raises :class:`IntegralityError`.
    """
    n = len(basis[0]) if basis else (len(vectors[0]) if vectors else 0)
    k = len(basis)
    if any(len(b) != n for b in basis) or any(len(v) != n for v in vectors):
        raise ValueError("all vectors must have the same length")
    # basis row i carries a tag e_i in column n+i; targets carry 1 in column n+k
    ech = Echelon()
    for i, b in enumerate(basis):
        row = {j: x for j, x in enumerate(b) if x}
        row[n + i] = 1
        ech.add(row)
    if any(c >= n for c in ech.pivots):
        raise ValueError("basis vectors are linearly dependent")
    tag = n + k
    out: list[list[Fraction] | None] = []
    for v in vectors:
        row = {j: x for j, x in enumerate(v) if x}
        row[tag] = 1
        r = ech.reduce(row)
        if any(j < n for j in r):
            out.append(None)
            continue
        lam = r[tag]
        coeffs = [Fraction(-r.get(n + i, 0), lam) for i in range(k)]
        if integral and any(c.denominator != 1 for c in coeffs):
            raise IntegralityError(f"non-integral coefficients {coeffs}")
        out.append(coeffs)
    return out


def solve_in_span(
    v: Sequence[int], basis: Sequence[Sequence[int]], *, integral: bool = False
) -> list[Fraction] | None:
    return solve_many([v], basis, integral=integral)[0]


def bareiss_rank(m: IntMatrix) -> int:
    """Dense Bareiss elimination; independent of :class:`Echelon`."""
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def determinant(m: IntMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class GradedRankProfile:
    """Ranks indexed by degree; absent degrees have rank 0."""

    __slots__ = ("_ranks",)

    def __init__(self, ranks: Mapping[int, int] | None = None):
        ranks = dict(ranks or {})
        for q, r in ranks.items():
            if r < 0:
                raise ValueError(f"negative rank {r} in degree {q}")
        self._ranks = {int(q): int(r) for q, r in ranks.items() if r}

    def __getitem__(self, q: int) -> int:
        return self._ranks.get(q, 0)

    def __eq__(self, other):
        if not isinstance(other, GradedRankProfile):
            return NotImplemented
        return self._ranks == other._ranks

    def __hash__(self):
        return hash(frozenset(self._ranks.items()))

    def __repr__(self):
        return f"GradedRankProfile({dict(sorted(self._ranks.items()))})"

    def degrees(self) -> list[int]:
        return sorted(self._ranks)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._ranks.items())

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def total(self) -> int:
        return sum(self._ranks.values())

    def shift(self, k: int) -> GradedRankProfile:
        return GradedRankProfile({q + k: r for q, r in self._ranks.items()})

    def convolve(self, other: GradedRankProfile) -> GradedRankProfile:
        out: dict[int, int] = {}
        for q1, r1 in self._ranks.items():
            for q2, r2 in other._ranks.items():
                out[q1 + q2] = out.get(q1 + q2, 0) + r1 * r2
        return GradedRankProfile(out)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[int], step: int = 1) -> GradedRankProfile:
        return cls({i * step: c for i, c in enumerate(coeffs)})

    def format(self, var: str = "t") -> str:
        if not self._ranks:
            return "0"
        parts = []
        for q, r in self.items():
            if q == 0:
                mono = str(r)
            else:
                power = var if q == 1 else f"{var}^{q}"
                mono = power if r == 1 else f"{r}{power}"
            parts.append(mono)
        return " + ".join(parts)
