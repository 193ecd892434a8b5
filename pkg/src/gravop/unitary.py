"""The dual action of H_*(U(d)) on H*(Conf_n(C^d)).

Only the top class acts: its dual Delta_d^* is the odd derivation with
Delta_d^*(x_ij) = 1; the lower classes act by zero. On an admissible
monomial the derivation deletes one factor at a time,

    Delta(x_1 ... x_k) = sum_s (-1)^(s-1) x_1 ... ^x_s ... x_k,

and a subsequence of an admissible monomial is admissible, so no rewriting
is needed. The kernel is the subalgebra Y generated by y_ij = x_ij - x_12
and the ring splits as Y + Y.x_12; the ``verify_*`` functions check both
statements degree by degree with exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import exactla
from .arnold import Key, RingDescriptor, RingElement, RingError, basis_in_degree, y_element
from .exactla import GradedRankProfile, IntMatrix


@dataclass(frozen=True)
class DerivationOperator:
    k: int
    ring: RingDescriptor

    def __post_init__(self):
        if self.ring.flavor != "conf":
            raise RingError("Delta_k^* acts on the conf flavour")
        if not 1 <= self.k <= self.ring.d:
            raise RingError(f"k must lie in 1..{self.ring.d}, got {self.k}")

    @property
    def degree_shift(self) -> int:
        return -(2 * self.k - 1)

    def __call__(self, e: RingElement) -> RingElement:
        return apply_delta_star(self, e)


def top_operator(n: int, d: int) -> DerivationOperator:
    return DerivationOperator(d, RingDescriptor(n, d, "conf"))


def apply_delta_star(op: DerivationOperator, e: RingElement) -> RingElement:
    if e.ring != op.ring:
        raise RingError(f"descriptor mismatch: {e.ring} vs {op.ring}")
    if op.k < op.ring.d:
        return op.ring.zero()
    out: dict[Key, int] = {}
    for (a, mono), v in e.terms.items():
        for s in range(len(mono)):
            key = (a, mono[:s] + mono[s + 1:])
            out[key] = out.get(key, 0) + (-v if s % 2 else v)
    return RingElement(op.ring, out)


def delta_star_matrix(n: int, d: int, degree: int) -> tuple[IntMatrix, list[Key], list[Key]]:
    """Matrix of Delta_d^* from ``degree`` to ``degree - (2d-1)``; columns
    index the source basis."""
    op = top_operator(n, d)
    src = basis_in_degree(op.ring, degree)
    tgt = basis_in_degree(op.ring, degree - op.ring.x_degree)
    cols = [apply_delta_star(op, RingElement(op.ring, {k: 1})).coordinates(tgt) for k in src]
    rows = [[col[i] for col in cols] for i in range(len(tgt))]
    return IntMatrix.from_rows(rows, cols=len(src)), src, tgt


def kernel_basis_degree(n: int, d: int, degree: int) -> list[RingElement]:
    ring = RingDescriptor(n, d, "conf")
    m, src, _ = delta_star_matrix(n, d, degree)
    if not src:
        return []
    if m.rows == 0:
        return [RingElement(ring, {k: 1}) for k in src]
    return [RingElement.from_coordinates(ring, src, v) for v in exactla.kernel_basis(m)]


def kernel_rank_profile(n: int, d: int) -> GradedRankProfile:
    h = 2 * d - 1
    ranks = {}
    for k in range(n):
        m, src, _ = delta_star_matrix(n, d, k * h)
        ranks[k * h] = len(src) - exactla.rank(m)
    return GradedRankProfile(ranks)


def image_rank_profile(n: int, d: int) -> GradedRankProfile:
    """Rank of the image of Delta_d^* landing in each degree."""
    h = 2 * d - 1
    ranks = {}
    for k in range(1, n):
        m, _, _ = delta_star_matrix(n, d, k * h)
        ranks[(k - 1) * h] = exactla.rank(m)
    return GradedRankProfile(ranks)


@lru_cache(maxsize=None)
def _y_monomials(n: int, d: int, k: int) -> tuple[RingElement, ...]:
    """The products y_{i1 j1} ... y_{ik jk} over admissible patterns avoiding x_12."""
    ring = RingDescriptor(n, d, "conf")
    fiber = RingDescriptor(n, d, "fiber")
    out = []
    for _, mono in basis_in_degree(fiber, k * ring.x_degree):
        e = ring.one()
        for i, j in mono:
            e = e * y_element(i, j, ring)
        out.append(e)
    return tuple(out)


def y_monomials(n: int, d: int, degree: int) -> list[RingElement]:
    h = 2 * d - 1
    if degree < 0 or degree % h:
        return []
    return list(_y_monomials(n, d, degree // h))


def verify_kernel_equals_Y(n: int, d: int) -> list[dict]:
    ring = RingDescriptor(n, d, "conf")
    fiber = RingDescriptor(n, d, "fiber")
    op = top_operator(n, d)
    h = ring.x_degree
    rows = []
    for k in range(n):
        q = k * h
        basis = basis_in_degree(ring, q)
        ys = y_monomials(n, d, q)
        contained = all(not apply_delta_star(op, y) for y in ys)
        y_vecs = [y.coordinates(basis) for y in ys]
        rank_y = exactla.rank(IntMatrix.from_rows(y_vecs, cols=len(basis))) if ys else 0
        kernel = kernel_basis_degree(n, d, q)
        rank_fiber = len(basis_in_degree(fiber, q))
        integral = True
        if contained and rank_y == len(kernel) == len(ys):
            try:
                exactla.solve_many([kv.coordinates(basis) for kv in kernel], y_vecs, integral=True)
            except exactla.IntegralityError:
                integral = False
        ok = contained and integral and rank_y == len(kernel) == rank_fiber == len(ys)
        rows.append({
            "degree": q,
            "rank_kernel": len(kernel),
            "rank_Y": rank_y,
            "rank_ring": rank_fiber,
            "contained": contained,
            "integral": integral,
            "pass": ok,
        })
    return rows


def verify_free_splitting(n: int, d: int) -> list[dict]:
    """Y_q together with x_12 * Y_{q-(2d-1)} is a Z-basis of the degree-q part."""
    ring = RingDescriptor(n, d, "conf")
    h = ring.x_degree
    x12 = ring.x(1, 2)
    rows = []
    for k in range(n):
        q = k * h
        basis = basis_in_degree(ring, q)
        low = y_monomials(n, d, q)
        high = [x12 * y for y in y_monomials(n, d, q - h)]
        vecs = [e.coordinates(basis) for e in low + high]
        square = len(vecs) == len(basis)
        det = exactla.determinant(IntMatrix.from_rows(vecs, cols=len(basis))) if square else 0
        rank = exactla.rank(IntMatrix.from_rows(vecs, cols=len(basis))) if vecs else 0
        rows.append({
            "degree": q,
            "rank_Y": len(low),
            "rank_Y_x12": len(high),
            "rank_ring": len(basis),
            "rank_span": rank,
            "determinant": det,
            "pass": square and rank == len(basis) and abs(det) == 1,
        })
    return rows
