"""Cohomology rings of configuration spaces in the Arnold presentation.

Three flavours share one implementation:

``conf``
    H*(Conf_n(C^d)): exterior algebra on x_ij (degree 2d-1, x_ij = x_ji)
    modulo the Arnold relations.
``fiber``
    The quotient by the ideal (x_12), i.e. H*(Conf_{n-2}(C^d - {a, b})).
``th``
    Z[c]/(c^d) tensor the fiber ring, c in degree 2.

Elements are stored in the admissible basis: products x_{i1 j1} ... x_{ik jk}
with i_t < j_t and j_1 < ... < j_k. The rewriter in :func:`normal_form`
reaches it by sorting factors (anticommuting) and applying the Arnold rule
x_ik x_jk -> x_ij x_jk - x_ij x_ik for i < j < k.

:func:`presentation_rank` and :class:`PresentationOracle` compute the same
ranks straight from the presentation by linear algebra, without the rewriter.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import exactla
from .exactla import GradedRankProfile

FLAVORS = ("conf", "fiber", "th")

Pair = tuple[int, int]
Monomial = tuple[Pair, ...]
Key = tuple[int, Monomial]  # (c exponent, admissible monomial)


class RingError(ValueError):
    pass


def canonical_pair(i: int, j: int) -> Pair:
    if i == j:
        raise RingError(f"x({i},{j}) is not a generator")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class RingDescriptor:
    n: int
    d: int
    flavor: str = "conf"

    def __post_init__(self):
        if self.n < 2:
            raise RingError(f"need n >= 2 points, got {self.n}")
        if self.d < 1:
            raise RingError(f"need d >= 1, got {self.d}")
        if self.flavor not in FLAVORS:
            raise RingError(f"unknown flavor {self.flavor!r}")

    @property
    def x_degree(self) -> int:
        return 2 * self.d - 1

    @property
    def kills_x12(self) -> bool:
        return self.flavor != "conf"

    @property
    def max_c(self) -> int:
        return self.d - 1 if self.flavor == "th" else 0

    def degree(self, key: Key) -> int:
        a, mono = key
        return 2 * a + len(mono) * self.x_degree

    def check_pair(self, i: int, j: int) -> Pair:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise RingError(f"x({i},{j}) out of range for n={self.n}")
        return canonical_pair(i, j)

    # constructors
    def zero(self) -> RingElement:
        return RingElement(self, {})

    def one(self) -> RingElement:
        return RingElement(self, {(0, ()): 1})

    def scalar(self, k: int) -> RingElement:
        return RingElement(self, {(0, ()): k} if k else {})

    def x(self, i: int, j: int) -> RingElement:
        return normal_form([(1, 0, [(i, j)])], self)

    def c(self, power: int = 1) -> RingElement:
        if self.flavor != "th":
            raise RingError("the class c only exists in the th flavour")
        if power < 0:
            raise RingError("negative power of c")
        return RingElement(self, {(power, ()): 1} if power < self.d else {})

    def basis(self, degree: int) -> list[Key]:
        return basis_in_degree(self, degree)

    def top_degree(self) -> int:
        k = self.n - 1 if self.flavor == "conf" else self.n - 2
        return k * self.x_degree + 2 * self.max_c


class RingElement:
    """Exact integer combination of (c^a, admissible monomial) basis keys."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Key, int]):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}

    def __repr__(self):
        return f"RingElement({self.ring}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> RingElement:
        if isinstance(other, int):
            return self.ring.scalar(other)
        if not isinstance(other, RingElement):
            raise TypeError(f"cannot combine RingElement with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError(f"descriptor mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, {k: v * other for k, v in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def sorted_terms(self) -> list[tuple[Key, int]]:
        return sorted(self.terms.items())

    def degrees(self) -> set[int]:
        return {self.ring.degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise RingError("degree of an inhomogeneous or zero element")
        return degs.pop()

    def component(self, degree: int) -> RingElement:
        return RingElement(
            self.ring, {k: v for k, v in self.terms.items() if self.ring.degree(k) == degree}
        )

    def coordinates(self, basis: Sequence[Key]) -> list[int]:
        index = {k: i for i, k in enumerate(basis)}
        vec = [0] * len(basis)
        for k, v in self.terms.items():
            if k not in index:
                raise RingError(f"term {k} not in the supplied basis")
            vec[index[k]] = v
        return vec

    @classmethod
    def from_coordinates(cls, ring: RingDescriptor, basis: Sequence[Key], vec: Sequence[int]) -> RingElement:
        return cls(ring, {k: v for k, v in zip(basis, vec) if v})

    def to_json(self) -> dict:
        return {
            "n": self.ring.n,
            "d": self.ring.d,
            "flavor": self.ring.flavor,
            "terms": [
                {"coeff": v, "c": a, "monomial": [list(p) for p in mono]}
                for (a, mono), v in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RingElement:
        ring = RingDescriptor(int(data["n"]), int(data["d"]), data.get("flavor", "conf"))
        raw = [
            (int(t["coeff"]), int(t.get("c", 0)), [tuple(p) for p in t["monomial"]])
            for t in data["terms"]
        ]
        return normal_form(raw, ring)


# ---------------------------------------------------------------------------
# rewriting


def _sort_factors(factors: list[Pair]) -> tuple[int, list[Pair]] | None:
    """Sort by (larger, smaller) index; odd generators anticommute."""
    f = list(factors)
    sign = 1
    for a in range(1, len(f)):
        b = a
        while b > 0 and (f[b - 1][1], f[b - 1][0]) > (f[b][1], f[b][0]):
            f[b - 1], f[b] = f[b], f[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(f)):
        if f[a] == f[a - 1]:
            return None
    return sign, f


def _reduce(coeff: int, factors: list[Pair], ring: RingDescriptor, out: dict, rng) -> None:
    work = [(coeff, factors)]
    while work:
        coeff, factors = work.pop()
        res = _sort_factors(factors)
        if res is None:
            continue
        sign, f = res
        coeff *= sign
        if ring.kills_x12 and (1, 2) in f:
            continue
        redexes = [p for p in range(len(f) - 1) if f[p][1] == f[p + 1][1]]
        if not redexes:
            key = tuple(f)
            out[key] = out.get(key, 0) + coeff
            continue
        p = redexes[0] if rng is None else rng.choice(redexes)
        (a, j), (b, _) = f[p], f[p + 1]  # a < b < j
        head, tail = f[:p], f[p + 2:]
        work.append((coeff, head + [(a, b), (b, j)] + tail))
        work.append((-coeff, head + [(a, b), (a, j)] + tail))


RawTerm = tuple[int, int, Sequence[Pair]]  # (coefficient, c exponent, factors)


def normal_form(raw: Iterable[RawTerm], ring: RingDescriptor, rng: random.Random | None = None) -> RingElement:
    """Reduce a sum of raw products to the admissible basis.

    ``raw`` is an iterable of ``(coeff, c_exponent, factors)`` where factors
    is a sequence of index pairs in any order and orientation. ``rng``
    randomises the choice of Arnold redex; the result must not depend on it.
    """
    acc: dict[Key, int] = {}
    for coeff, a, factors in raw:
        if a and ring.flavor != "th":
            raise RingError(f"c used in the {ring.flavor} flavour")
        if a < 0:
            raise RingError("negative power of c")
        pairs = [ring.check_pair(i, j) for i, j in factors]
        if not coeff or a >= ring.d and ring.flavor == "th":
            continue
        part: dict[Monomial, int] = {}
        _reduce(coeff, pairs, ring, part, rng)
        for mono, v in part.items():
            key = (a, mono)
            acc[key] = acc.get(key, 0) + v
    return RingElement(ring, acc)


def multiply(x: RingElement, y: RingElement, rng: random.Random | None = None) -> RingElement:
    if x.ring != y.ring:
        raise RingError(f"descriptor mismatch: {x.ring} vs {y.ring}")
    raw = [
        (u * v, a + b, list(m) + list(n))
        for (a, m), u in x.terms.items()
        for (b, n), v in y.terms.items()
    ]
    return normal_form(raw, x.ring, rng)


def product_by_association(
    factors: Sequence[Pair], ring: RingDescriptor, rng: random.Random, c_power: int = 0
) -> RingElement:
    """Multiply generators along a random binary bracketing, normalising
    every partial product."""
    items = [ring.x(*p) for p in factors]
    if c_power:
        items.append(ring.c(c_power))
    if not items:
        return ring.one()
    while len(items) > 1:
        k = rng.randrange(len(items) - 1)
        items[k:k + 2] = [multiply(items[k], items[k + 1], rng)]
    return items[0]


def y_element(i: int, j: int, ring: RingDescriptor) -> RingElement:
    """y_ij = x_ij - x_12."""
    if ring.flavor != "conf":
        raise RingError("y elements live in the conf flavour")
    if ring.check_pair(i, j) == (1, 2):
        raise RingError("y_12 is not defined")
    return ring.x(i, j) - ring.x(1, 2)


# ---------------------------------------------------------------------------
# bases and Poincare polynomials


@lru_cache(maxsize=None)
def _admissible(n: int, k: int, kill_x12: bool) -> tuple[Monomial, ...]:
    larger = range(3 if kill_x12 else 2, n + 1)
    out = []
    for js in itertools.combinations(larger, k):
        for small in itertools.product(*(range(1, j) for j in js)):
            out.append(tuple(zip(small, js)))
    return tuple(sorted(out))


def basis_in_degree(ring: RingDescriptor, degree: int) -> list[Key]:
    h = ring.x_degree
    out = []
    for a in range(ring.max_c + 1):
        rest = degree - 2 * a
        if rest < 0 or rest % h:
            continue
        k = rest // h
        if k > ring.n - 1:
            continue
        out.extend((a, m) for m in _admissible(ring.n, k, ring.kills_x12))
    return sorted(out)


def poincare(ring: RingDescriptor) -> GradedRankProfile:
    ranks: dict[int, int] = {}
    for k in range(ring.n):
        count = len(_admissible(ring.n, k, ring.kills_x12))
        for a in range(ring.max_c + 1):
            q = 2 * a + k * ring.x_degree
            ranks[q] = ranks.get(q, 0) + count
    return GradedRankProfile(ranks)


def product_formula_profile(n: int, d: int, start: int = 1) -> GradedRankProfile:
    """Coefficients of prod_{i=start}^{n-1} (1 + i q) with q in degree 2d-1."""
    coeffs = [1]
    for i in range(start, n):
        coeffs = [a + i * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return GradedRankProfile.from_polynomial(coeffs, step=2 * d - 1)


def truncated_polynomial_profile(d: int) -> GradedRankProfile:
    """Ranks of Z[c]/(c^d), c in degree 2."""
    return GradedRankProfile({2 * a: 1 for a in range(d)})


# ---------------------------------------------------------------------------
# presentation oracle: exterior algebra modulo the ideal, by linear algebra


class PresentationOracle:
    """Degree-k part of Lambda[x_ij] / (Arnold relations [, x_12]).

    The ambient space is the exterior algebra on the generators x_ij
    (i < j), with basis the increasing subsets of generators. The ideal in
    degree k is spanned by every Arnold relation (and x_12 for the
    quotient flavours) multiplied by every ambient monomial of the
    complementary degree. None of the admissible-basis machinery is used.
    """

    def __init__(self, n: int, k: int, kill_x12: bool = False):
        self.n, self.k, self.kill_x12 = n, k, kill_x12
        self.gens = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self.gen_index = {g: t for t, g in enumerate(self.gens)}
        self.cols = list(itertools.combinations(range(len(self.gens)), k))
        self.col_index = {s: t for t, s in enumerate(self.cols)}
        self.ideal = exactla.echelon_of(self._relations())

    def wedge(self, factors: Sequence[Pair]) -> dict[int, int]:
        """Ambient coordinates of a product of generators."""
        idx = [self.gen_index[canonical_pair(*p)] for p in factors]
        if len(set(idx)) < len(idx):
            return {}
        inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        return {self.col_index[tuple(sorted(idx))]: -1 if inversions % 2 else 1}

    def vector(self, terms: Iterable[tuple[int, Sequence[Pair]]]) -> dict[int, int]:
        out: dict[int, int] = {}
        for coeff, factors in terms:
            for c, s in self.wedge(factors).items():
                out[c] = out.get(c, 0) + coeff * s
        return {c: v for c, v in out.items() if v}

    def _relations(self):
        k, n = self.k, self.n
        rels: list[list[tuple[int, list[Pair]]]] = []
        if k >= 2:
            for i, j, l in itertools.combinations(range(1, n + 1), 3):
                rels.append([(1, [(i, j), (j, l)]), (1, [(j, l), (l, i)]), (1, [(l, i), (i, j)])])
        rel_deg = 2
        out = []
        for rel in rels:
            for extra in itertools.combinations(self.gens, k - rel_deg):
                v = self.vector((c, f + list(extra)) for c, f in rel)
                if v:
                    out.append(v)
        if self.kill_x12 and k >= 1:
            for extra in itertools.combinations(self.gens, k - 1):
                v = self.vector([(1, [(1, 2)] + list(extra))])
                if v:
                    out.append(v)
        return out

    @property
    def quotient_rank(self) -> int:
        return len(self.cols) - self.ideal.rank

    def equivalent(self, lhs: Iterable[tuple[int, Sequence[Pair]]], rhs: Iterable[tuple[int, Sequence[Pair]]]) -> bool:
        """Do two combinations of products agree in the quotient?"""
        diff = self.vector(lhs)
        for c, v in self.vector(rhs).items():
            diff[c] = diff.get(c, 0) - v
        return self.ideal.contains({c: v for c, v in diff.items() if v})

    def express(self, terms: Iterable[tuple[int, Sequence[Pair]]], basis: Sequence[Monomial]) -> list[int]:
        """Integer coordinates of a combination of products in ``basis``,
        solving the linear system modulo the ideal."""
        size = len(self.cols)
        rows = [self.vector([(1, list(m))]) for m in basis] + list(self.ideal.pivots.values())
        vecs = [[r.get(c, 0) for c in range(size)] for r in rows]
        goal = self.vector(terms)
        sol = exactla.solve_in_span([goal.get(c, 0) for c in range(size)], vecs)
        if sol is None:
            raise RingError("element is not in the span of the supplied basis")
        coeffs = sol[:len(basis)]
        if any(c.denominator != 1 for c in coeffs):
            raise exactla.IntegralityError(f"non-integral coordinates {coeffs}")
        return [int(c) for c in coeffs]


@lru_cache(maxsize=None)
def presentation_oracle(n: int, k: int, kill_x12: bool = False) -> PresentationOracle:
    return PresentationOracle(n, k, kill_x12)


def presentation_rank(n: int, k: int, kill_x12: bool = False) -> int:
    return presentation_oracle(n, k, kill_x12).quotient_rank


def presentation_profile(ring: RingDescriptor) -> GradedRankProfile:
    """Poincare profile computed from the presentation alone."""
    if ring.flavor == "th":
        fiber = presentation_profile(RingDescriptor(ring.n, ring.d, "fiber"))
        return truncated_polynomial_profile(ring.d).convolve(fiber)
    kill = ring.kills_x12
    return GradedRankProfile(
        {k * ring.x_degree: presentation_rank(ring.n, k, kill) for k in range(ring.n + 1)}
    )


# ---------------------------------------------------------------------------
# formatting


def format_key(key: Key) -> str:
    a, mono = key
    parts = []
    if a:
        parts.append("c" if a == 1 else f"c^{a}")
    parts.extend(f"x({i},{j})" for i, j in mono)
    return "*".join(parts) if parts else "1"


def format_element(e: RingElement) -> str:
    if not e.terms:
        return "0"
    out = ""
    for key, v in e.sorted_terms():
        body = format_key(key)
        mag = abs(v)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out = text if v > 0 else f"-{text}"
        else:
            out += f" + {text}" if v > 0 else f" - {text}"
    return out
